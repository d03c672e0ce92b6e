#include <censtab/stability.hpp>

#include <utility>

namespace censtab {

namespace {

DegreeVerdict check_one_degree(const ModulePresentation& p, int window_lo, int window_hi,
                               int degree, bool cross_check) {
  DegreeVerdict v;
  v.degree = degree;
  KanValue tensor = kan_value_tensor(p, window_lo, window_hi, degree);
  IsoVerdict iso = is_isomorphism(tensor.canonical);
  v.iso = iso.iso;
  v.kernel_invariants = std::move(iso.kernel_invariants);
  v.cokernel_invariants = std::move(iso.cokernel_invariants);
  if (cross_check) {
    v.cross_checked = true;
    KanValue colimit = kan_value_colimit(p, window_lo, window_hi, degree);
    v.cross_check_ok = is_isomorphism(comparison_map(tensor, colimit)).iso;
  }
  return v;
}

StabilityReport scan_degrees(const ModulePresentation& p, std::string mode, int window_lo,
                             int window_hi, int d, int n_first, int n_max, bool cross_check) {
  StabilityReport r;
  r.mode = std::move(mode);
  r.window_lo = window_lo;
  r.window_hi = window_hi;
  r.d = d;
  r.n_max = n_max;
  for (int n = n_first; n <= n_max; ++n) {
    DegreeVerdict v;
    try {
      v = check_one_degree(p, window_lo, window_hi, n, cross_check);
    } catch (const ResourceLimit& e) {
      r.complete = false;
      r.cap_detail = "degree " + std::to_string(n) + ": " + e.what();
      break;
    }
    if (!v.iso && r.first_failure_degree < 0) r.first_failure_degree = n;
    r.all_iso = r.all_iso && v.iso;
    r.degrees.push_back(std::move(v));
  }
  return r;
}

}  // namespace

StabilityReport check_central_stability(const ModulePresentation& p, int N, int n_max,
                                        bool cross_check) {
  if (N < 0 || n_max < 0) throw InvalidInput("check_central_stability: N and n_max must be >= 0");
  return scan_degrees(p, "central", 0, N, 0, 0, n_max, cross_check);
}

StabilityReport check_d_step(const ModulePresentation& p, int d, int N, int n_max,
                             bool cross_check) {
  if (d < 1) throw InvalidInput("check_d_step: d must be >= 1");
  if (N < d - 1) throw InvalidInput("check_d_step: requires N >= d - 1");
  if (n_max < 0) throw InvalidInput("check_d_step: n_max must be >= 0");
  const int lo = N - (d - 1);
  return scan_degrees(p, "d-step", lo, N, d, lo, n_max, cross_check);
}

PrdReport empirical_prd(const ModulePresentation& p, int N_max, int n_max) {
  if (N_max < 0 || n_max < 0) throw InvalidInput("empirical_prd: N_max and n_max must be >= 0");
  PrdReport r;
  r.N_max = N_max;
  r.n_max = n_max;
  for (int N = 0; N <= N_max; ++N) {
    bool failed = false;
    for (int n = 0; n <= n_max; ++n) {
      DegreeVerdict v;
      try {
        v = check_one_degree(p, 0, N, n, /*cross_check=*/false);
      } catch (const ResourceLimit& e) {
        r.complete = false;
        r.cap_detail = "window [0," + std::to_string(N) + "], degree " + std::to_string(n) +
                       ": " + e.what();
        return r;
      }
      if (!v.iso) {
        PrdFailure f;
        f.window_hi = N;
        f.degree = n;
        f.kernel_invariants = std::move(v.kernel_invariants);
        f.cokernel_invariants = std::move(v.cokernel_invariants);
        r.failures.push_back(std::move(f));
        failed = true;
        break;
      }
    }
    if (!failed) {
      r.found = true;
      r.prd = N;
      return r;
    }
  }
  return r;
}

ReducingIdempotentReport check_reducing_idempotent(const ModulePresentation& p, int m, int N,
                                                   int n, int d) {
  if (d < 1) throw InvalidInput("check_reducing_idempotent: d must be >= 1");
  if (m < 0) throw InvalidInput("check_reducing_idempotent: m must be >= 0");
  if (!(n > N && N >= m + d))
    throw InvalidInput("check_reducing_idempotent: requires n > N >= m + d");
  ReducingIdempotentReport r;
  r.m = m;
  r.N = N;
  r.n = n;
  r.d = d;
  KanValue narrow = kan_value_tensor(p, m + 1, N, n);
  KanValue wide = kan_value_tensor(p, m, N, n);
  ModuleMap phi = window_inclusion_map(narrow, wide);
  r.well_defined = is_well_defined(phi);
  IsoVerdict v = is_isomorphism(phi);
  r.iso = r.well_defined && v.iso;
  r.kernel_invariants = std::move(v.kernel_invariants);
  r.cokernel_invariants = std::move(v.cokernel_invariants);
  return r;
}

}  // namespace censtab
