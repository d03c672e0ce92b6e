#ifndef CENSTAB_MODULE_HPP
#define CENSTAB_MODULE_HPP

#include <censtab/category.hpp>
#include <censtab/presented_module.hpp>

#include <vector>

namespace censtab {

// One summand of a relation: coeff times (generator `gen` pushed forward
// along hom(deg(gen), degree)[hom_index]).
struct RelationTerm {
  int gen = 0;
  int hom_index = 0;
  Int coeff = 0;
};

struct ModuleRelation {
  int degree = 0;
  std::vector<RelationTerm> terms;
};

// Finitely presented functor from the category to R-modules: a chosen
// generator in each listed degree, modulo the translates of the relations.
struct ModulePresentation {
  CategoryPtr cat;
  RingSpec ring = RingSpec::integers();
  std::vector<int> gen_degrees;
  std::vector<ModuleRelation> relations;

  // largest degree appearing among generators and relations (0 when empty)
  int presentation_degree() const;

  static ModulePresentation free_module(CategoryPtr cat, RingSpec ring,
                                        std::vector<int> degrees);
};

// Throws InvalidInput when a generator or relation is out of range for the
// category, or a relation term indexes a morphism that does not exist.
void validate_presentation(const ModulePresentation& p);

// Basis bookkeeping for one degree: the value of the free cover at `degree`
// has one basis vector per pair (generator i, morphism in hom(deg_i, degree)),
// blocks laid out generator by generator.
struct DegreeBasis {
  int degree = 0;
  std::vector<std::int64_t> offsets;  // one per generator
  std::int64_t total = 0;
  std::int64_t index(int gen, int hom_idx) const {
    return offsets[static_cast<std::size_t>(gen)] + hom_idx;
  }
};

DegreeBasis degree_basis(const ModulePresentation& p, int degree);

// The value of the functor at one degree, as an explicit cokernel: the free
// cover at `degree` modulo every morphism-translate of every relation.
PresentedModule evaluate_degree(const ModulePresentation& p, int degree);

// Action of a single morphism f: the induced map evaluate(p, f.src) ->
// evaluate(p, f.tgt), sending basis vector (i, alpha) to (i, f o alpha).
ModuleMap induced_map(const ModulePresentation& p, const Morphism& f);

}  // namespace censtab

#endif
