#ifndef CENSTAB_PRESENTED_MODULE_HPP
#define CENSTAB_PRESENTED_MODULE_HPP

#include <censtab/matrix.hpp>
#include <censtab/normal_forms.hpp>
#include <censtab/span.hpp>

#include <vector>

namespace censtab {

// Cokernel presentation: R^ambient modulo the span of the relation columns.
struct PresentedModule {
  RingSpec ring;
  std::int64_t ambient = 0;
  std::vector<SparseVec> relations;

  static PresentedModule free(RingSpec ring, std::int64_t rank) {
    return PresentedModule{ring, rank, {}};
  }
};

// Map of presented modules, stored on ambient generators (one sparse column
// per domain generator).  Well-definedness (relations land in relations) is
// a precondition for the algebraic operations and can be checked explicitly.
struct ModuleMap {
  PresentedModule domain;
  PresentedModule codomain;
  std::vector<SparseVec> cols;  // size == domain.ambient
};

struct IsoVerdict {
  bool iso = false;
  // populated when iso is false (kernel/cokernel of the failed map)
  std::vector<Int> kernel_invariants;
  std::vector<Int> cokernel_invariants;
};

// Invariant factors of the presented module: the nontrivial diagonal of the
// Smith form of the relation matrix (entries > 1, in divisibility order)
// followed by one 0 per free rank.  Over F_p: one 0 per dimension.  The list
// is a complete isomorphism invariant.
std::vector<Int> invariant_factors(const PresentedModule& m);

PresentedModule cokernel(const ModuleMap& f);

// Generating set of {x in domain ambient : f(x) = 0 in codomain}, i.e. the
// projection of the kernel of [F | codomain relations].  Columns are
// sign-normalized; zero columns are dropped.
std::vector<SparseVec> kernel_generators(const ModuleMap& f);

// Invariant factors of the kernel *module* ker(f) = P / (domain relations),
// with P as above.
std::vector<Int> kernel_invariants(const ModuleMap& f);

IsoVerdict is_isomorphism(const ModuleMap& f);

bool is_well_defined(const ModuleMap& f);

// Equality of the submodules of m spanned by gens_a and gens_b (ambient
// relations are included on both sides).
bool submodule_equal(const PresentedModule& m, const std::vector<SparseVec>& gens_a,
                     const std::vector<SparseVec>& gens_b);

// Image of a sparse vector under the map.
SparseVec apply(const ModuleMap& f, const SparseVec& x);

// g o f on ambient generators; f.codomain and g.domain must have the same
// ambient rank.
ModuleMap compose_maps(const ModuleMap& g, const ModuleMap& f);

}  // namespace censtab

#endif
