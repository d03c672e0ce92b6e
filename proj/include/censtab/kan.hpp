#ifndef CENSTAB_KAN_HPP
#define CENSTAB_KAN_HPP

#include <censtab/module.hpp>

#include <cstdint>
#include <vector>

namespace censtab {

// Objects are pairs (s, alpha) with window_lo <= s <= window_hi and alpha a
// morphism s -> target, ordered by (s, alpha index).  Arrows (s, a) -> (s', a')
// are morphisms phi: s -> s' with a' o phi = a; identity arrows are included.
struct CommaCategory {
  struct Object {
    int s = 0;
    int alpha = 0;  // index into hom(s, target)
  };
  struct Arrow {
    int src = 0, tgt = 0;  // object indices
    int phi = 0;           // index into hom(objects[src].s, objects[tgt].s)
  };
  int window_lo = 0, window_hi = 0, target = 0;
  std::vector<Object> objects;
  std::vector<Arrow> arrows;
  int object_index(int s, int alpha) const;  // -1 when absent
};

CommaCategory comma_category(const Category& cat, int window_lo, int window_hi, int target);

// Ambient decomposition shared by the windowed constructions: one block per
// pair (s, alpha: s -> target), blocks ordered by (s, alpha), each of the
// ambient rank of the evaluation at s.
struct BlockLayout {
  struct Block {
    int s = 0;
    int alpha = 0;
    std::int64_t offset = 0;
    std::int64_t size = 0;
  };
  std::vector<Block> blocks;
  std::int64_t total = 0;
  int block_index(int s, int alpha) const;  // -1 when absent
};

// A windowed approximation of the module at `degree`, together with the
// canonical comparison map into the honest value at that degree.
struct KanValue {
  int window_lo = 0, window_hi = 0, degree = 0;
  BlockLayout layout;
  PresentedModule value;
  ModuleMap canonical;  // value -> evaluate_degree(p, degree)
};

// Colimit of the evaluation diagram over the comma category: blocks modulo
// per-block module relations and one difference column per non-identity
// comma arrow and block basis vector.
KanValue kan_value_colimit(const ModulePresentation& p, int window_lo, int window_hi,
                           int degree);

// The induction product against the windowed idempotent: same blocks modulo
// per-block module relations and the bilinear exchange columns
// (alpha o gamma) x v - alpha x (gamma . v) for every window morphism gamma.
KanValue kan_value_tensor(const ModulePresentation& p, int window_lo, int window_hi,
                          int degree);

// The natural map from the tensor construction to the colimit construction.
// Both share one block layout, so the map is the ambient identity; whether it
// is an isomorphism of the presented values is checked downstream.
ModuleMap comparison_map(const KanValue& tensor, const KanValue& colimit);

// Unit-column embedding of a narrower-window value into a wider one at the
// same degree (narrow.window range must be contained in wide's).
ModuleMap window_inclusion_map(const KanValue& narrow, const KanValue& wide);

// Independent oracle for the plain-injection category: the colimit over the
// poset of subsets S of [degree] with window_lo <= |S| <= window_hi, where S
// carries the evaluation at |S| and inclusions act through the unique
// order-preserving position maps.  Only valid for Category::fi().
KanValue fi_subset_colimit_oracle(const ModulePresentation& p, int window_lo,
                                  int window_hi, int degree);

}  // namespace censtab

#endif
