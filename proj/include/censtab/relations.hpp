#ifndef CENSTAB_RELATIONS_HPP
#define CENSTAB_RELATIONS_HPP

#include <censtab/category.hpp>
#include <censtab/presented_module.hpp>

#include <cstdint>
#include <vector>

namespace censtab {

// The chain tensor between two levels: hom(n-1, n) balanced against the
// endomorphisms of every interior level down to hom(m, m+1).  Its value is
// free on the balancing classes of composable chains; composing a chain gives
// the multiplication map onto the hom-span at (m, n).
//
// Stages are exposed for every intermediate level: stage j holds the classes
// of the (m, j) chain tensor, so one object answers all bottom-anchored
// questions.  Stage m is the endomorphism span of m itself.
class TensorChain {
 public:
  TensorChain(CategoryPtr cat, int m, int n);

  const CategoryPtr& cat() const { return cat_; }
  int m() const { return m_; }
  int n() const { return n_; }

  // number of chain classes at stage j (m <= j <= n)
  std::int64_t rank(int j) const;
  std::int64_t rank() const { return rank(n_); }

  // index into hom(m, j) of the composite of any chain in the class
  std::int32_t composite(int j, std::int32_t cls) const;

  // representative chain, top-down: hom indices at levels j-1, ..., m
  const std::vector<std::int32_t>& rep(int j, std::int32_t cls) const;

  // class at stage j of (xi : j-1 -> j) stacked on a stage-(j-1) class
  std::int32_t fold_up(int j, std::int32_t xi, std::int32_t cls) const;

  // class reached from `cls` at stage j by stacking `chain` (top-down hom
  // indices for levels j + chain.size() - 1, ..., j) on top of it
  std::int32_t extend(int j, std::int32_t cls, const std::vector<std::int32_t>& chain) const;

 private:
  struct Stage {
    std::int64_t classes = 0;
    std::vector<std::int32_t> fold;       // [xi * classes_below + cls] -> class
    std::vector<std::int32_t> composite;  // class -> hom(m, j) index
    std::vector<std::vector<std::int32_t>> rep;
  };
  CategoryPtr cat_;
  int m_ = 0, n_ = 0;
  std::vector<Stage> stages_;  // index j - m
};

// The multiplication map from the chain tensor onto the free span of
// hom(m, n): each class goes to its composite.
ModuleMap chain_multiplication(const TensorChain& t, RingSpec ring);

// whether every morphism m -> n is the composite of some chain
bool multiplication_surjective(const TensorChain& t);

// Generators of the kernel of the multiplication map: one difference per
// extra class in each fiber.  Valid over any coefficient ring.
std::vector<SparseVec> multiplication_kernel(const TensorChain& t);

struct GenerationVerdict {
  int d = 0, m = 0, n = 0;
  RingSpec ring;
  bool surjective = false;      // multiplication onto hom(m, n)
  bool lhs_in_rhs = false;      // kernel inside the degree-d window products
  bool rhs_in_lhs = false;      // window products inside the kernel
  bool generated = false;       // surjective && both inclusions
  bool saturated_equal = false; // spans agree after inverting scalars
  std::int64_t kernel_generators = 0;
  std::int64_t window_span_rank = 0;
};

// Decides whether the kernel of the multiplication map at (m, n) is spanned
// by chains stacked around kernels of width-d multiplications, i.e. by the
// window products  chains(r+d, n) * kernel(r, r+d) * chains(m, r)  for
// m <= r <= n-d.  Requires n >= m + d, d >= 1.
GenerationVerdict check_degree_generation(CategoryPtr cat, RingSpec ring, int d, int m, int n);

struct SurjectivityCell {
  int m = 0, l = 0, n = 0;
  bool surjective = false;
  int unhit = -1;  // hom(m, n) index missed by composition, -1 when onto
};

// Composition surjectivity hom(l, n) x hom(m, l) -> hom(m, n) for every
// m < l < n with m <= m_max, n <= n_max.
std::vector<SurjectivityCell> check_condition_i(const Category& cat, int m_max, int n_max);

struct FactorizationReport {
  int d = 0, m = 0, n = 0;
  bool holds = true;
  std::int64_t quadruples = 0;  // pairs examined with equal composites
  // first failing quadruple in index order, when holds is false
  int alpha1 = -1, alpha2 = -1, beta1 = -1, beta2 = -1;
  // solution found for the first examined quadruple, when holds is true
  int gamma = -1, delta1 = -1, delta2 = -1;
};

// For every alpha1, alpha2 : m+1 -> n and beta1, beta2 : m -> m+1 with
// alpha1 beta1 = alpha2 beta2, searches for gamma : m+d -> n and
// delta1, delta2 : m+1 -> m+d with gamma delta_i = alpha_i and
// delta1 beta1 = delta2 beta2.  Requires n > m + d, d >= 1.
FactorizationReport check_condition_ii(const Category& cat, int d, int m, int n);

}  // namespace censtab

#endif
