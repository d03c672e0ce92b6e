#ifndef CENSTAB_NORMAL_FORMS_HPP
#define CENSTAB_NORMAL_FORMS_HPP

#include <censtab/matrix.hpp>

namespace censtab {

// Smith normal form: U * M * V = D with U, V unimodular and D diagonal with
// D(0,0) | D(1,1) | ... ; diagonal entries are nonnegative.
struct SmithResult {
  MatZ U, D, V;
};

SmithResult smith_normal_form(const MatZ& M);

// Diagonal of the Smith form only (no transforms); cheaper for invariant
// factor computations.
std::vector<Int> smith_diagonal(MatZ M);

// Row-style Hermite normal form: canonical upper-echelon form of the row
// lattice.  Pivots are positive, entries above a pivot lie in [0, pivot),
// zero rows are trailing.  Column positions are never permuted.
MatZ hermite_normal_form(const MatZ& M);

// Reduced row echelon form over F_p (entries reduced into [0, p)).
MatZ rref_mod_p(const MatZ& M, std::int64_t p);

// Basis of the integral kernel {x : M x = 0}, returned as matrix columns.
// The basis is the set of trailing transform columns of a column echelon
// reduction, so it is deterministic.
MatZ kernel_basis(const MatZ& M);

// Basis of the kernel over F_p, as matrix columns with entries in [0, p).
MatZ kernel_basis_mod_p(const MatZ& M, std::int64_t p);

// gcd(a, b) = s*a + t*b with the gcd nonnegative.
Int xgcd(const Int& a, const Int& b, Int& s, Int& t);

}  // namespace censtab

#endif
