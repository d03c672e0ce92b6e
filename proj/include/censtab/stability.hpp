#ifndef CENSTAB_STABILITY_HPP
#define CENSTAB_STABILITY_HPP

#include <censtab/kan.hpp>

#include <string>
#include <vector>

namespace censtab {

struct DegreeVerdict {
  int degree = 0;
  bool iso = false;
  // witnesses, populated when iso is false
  std::vector<Int> kernel_invariants;
  std::vector<Int> cokernel_invariants;
  // when requested, the tensor and colimit constructions were compared
  bool cross_checked = false;
  bool cross_check_ok = true;
};

struct StabilityReport {
  std::string mode;  // "central" or "d-step"
  int window_lo = 0, window_hi = 0;
  int d = 0;  // 0 in central mode
  int n_max = 0;
  bool all_iso = true;
  bool complete = true;  // false when a resource cap stopped the scan early
  std::string cap_detail;
  int first_failure_degree = -1;
  std::vector<DegreeVerdict> degrees;
};

// Tests, for every degree n <= n_max, whether the window-[0, N] tensor maps
// isomorphically onto the value at n.
StabilityReport check_central_stability(const ModulePresentation& p, int N, int n_max,
                                        bool cross_check = false);

// Same with the d-step window [N-(d-1), N]; degrees below the window are not
// part of the claim and are skipped.  Requires d >= 1 and N >= d-1.
StabilityReport check_d_step(const ModulePresentation& p, int d, int N, int n_max,
                             bool cross_check = false);

struct PrdFailure {
  int window_hi = 0;  // the N that failed
  int degree = 0;     // first degree with a non-iso canonical map
  std::vector<Int> kernel_invariants;
  std::vector<Int> cokernel_invariants;
};

struct PrdReport {
  int N_max = 0, n_max = 0;
  bool found = false;
  int prd = -1;  // least all-iso window top, valid for the tested degrees only
  bool complete = true;
  std::string cap_detail;
  std::vector<PrdFailure> failures;  // one per window top below the returned value
};

// Searches N = 0..N_max for the least window top whose canonical maps are
// isomorphisms for every degree <= n_max, recording a concrete failure for
// each smaller window top.
PrdReport empirical_prd(const ModulePresentation& p, int N_max, int n_max);

struct ReducingIdempotentReport {
  int m = 0, N = 0, n = 0, d = 0;
  bool well_defined = false;
  bool iso = false;
  std::vector<Int> kernel_invariants;
  std::vector<Int> cokernel_invariants;
};

// Compares the window-[m+1, N] tensor with the window-[m, N] tensor at degree
// n through the natural inclusion.  Requires n > N >= m + d with d >= 1 (d is
// the relation degree the surrounding theory assumes for the category).
ReducingIdempotentReport check_reducing_idempotent(const ModulePresentation& p, int m, int N,
                                                   int n, int d = 2);

}  // namespace censtab

#endif
