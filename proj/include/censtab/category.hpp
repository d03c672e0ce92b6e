#ifndef CENSTAB_CATEGORY_HPP
#define CENSTAB_CATEGORY_HPP

#include <censtab/ring.hpp>

#include <cstdint>
#include <memory>
#include <mutex>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <censtab/integers.hpp>

namespace censtab {

// Morphism m -> n with a family-specific canonical payload:
//   fi      image tuple f(1)..f(m), 1-based values in [n]
//   fi_a    image tuple, then colors (0..a-1) on the complement of the image,
//           complement positions in increasing order
//   oi_a    as fi_a with strictly increasing image tuple
//   fs_op   a morphism m -> n is stored as the underlying surjection
//           [n] ->> [m]: value list of length n, 1-based values in [m]
//   vi      n x m matrix over F_q of rank m, column-major entries 0..q-1
//   plactic Knuth-normal word, letters 1..|alphabet|, first-applied letter
//           first
//   presented / counterexample
//           lexicographically least word of the congruence class; entry j is
//           the local generator index at level tgt-1-j (outermost first)
struct Morphism {
  int src = 0, tgt = 0;
  std::vector<std::int32_t> data;
  friend bool operator==(const Morphism& a, const Morphism& b) = default;
};

// Composable word in a presented category; gens[j] is the local generator
// index at level tgt-1-j (outermost factor first).
struct Word {
  int src = 0, tgt = 0;
  std::vector<std::int32_t> gens;
};

struct GeneratorSpec {
  std::string name;
  int source = 0, target = 0;  // target must be source + 1
};

struct CatPresentation {
  int objects_max = 0;                          // morphisms exist on 0..objects_max
  std::vector<GeneratorSpec> generators;        // declaration order
  std::vector<std::pair<Word, Word>> relations;  // both sides same src/tgt
};

// Schensted row insertion; returns the row word of the insertion tableau
// (bottom row first), the canonical representative of the Knuth class.
std::vector<std::int32_t> rsk_normal_form(const std::vector<std::int32_t>& word);

class Category {
 public:
  enum class Family { FI, FIa, OIa, FSop, VI, Plactic, Presented };

  Family family() const { return family_; }
  const std::string& id() const { return id_; }
  // family parameter (colors / q / alphabet size), 0 when not applicable
  int param() const { return param_; }
  const CatPresentation& presentation() const { return pres_; }
  std::int64_t hom_cap() const { return hom_cap_; }
  void set_hom_cap(std::int64_t cap) { hom_cap_ = cap; }

  // |Hom(m, n)| without materializing when a counting formula exists.
  Int hom_size(int m, int n) const;

  // Materialized hom set in deterministic (payload-lexicographic) order.
  // Throws ResourceLimit when the size exceeds the hom cap.
  const std::vector<Morphism>& hom(int m, int n) const;

  // Position of a canonical morphism in hom(src, tgt).
  int hom_index(const Morphism& f) const;

  Morphism identity(int n) const;
  bool is_identity(const Morphism& f) const { return f.src == f.tgt && f == identity(f.src); }

  // g o f (apply f first); src/tgt must match.
  Morphism compose(const Morphism& g, const Morphism& f) const;

  // Flattened composition-index table for hom(l, n) x hom(m, l) -> hom(m, n):
  // entry [gi * |hom(m, l)| + fi] = hom_index(g o f).
  const std::vector<std::int32_t>& compose_table(int m, int l, int n) const;
  std::int32_t compose_index(int m, int l, int n, int gi, int fi) const {
    return compose_table(m, l, n)[static_cast<std::size_t>(gi) * hom(m, l).size() +
                                  static_cast<std::size_t>(fi)];
  }

  // Indices of a generating set of the endomorphism monoid of n (greedy,
  // deterministic; empty when End(n) is trivial).
  std::vector<int> end_generators(int n) const;

  // Canonical form of a composable word (presented categories only).
  Morphism word_to_morphism(const Word& w) const;

  // Human-readable payload.
  std::string describe(const Morphism& f) const;

  static std::shared_ptr<const Category> fi();
  static std::shared_ptr<const Category> fi_a(int colors);
  static std::shared_ptr<const Category> oi_a(int colors);
  static std::shared_ptr<const Category> fs_op();
  static std::shared_ptr<const Category> vi(int q);
  static std::shared_ptr<const Category> plactic(int alphabet_size);
  static std::shared_ptr<const Category> presented(CatPresentation pres,
                                                   const std::string& id = "presented");

 private:
  Category() = default;

  std::vector<Morphism> enumerate(int m, int n) const;
  std::vector<Morphism> enumerate_fi_family(int m, int n) const;
  std::vector<Morphism> enumerate_fs(int m, int n) const;
  std::vector<Morphism> enumerate_vi(int m, int n) const;
  std::vector<Morphism> enumerate_plactic(int m, int n) const;
  std::vector<Morphism> enumerate_presented(int m, int n) const;
  void check_objects(int m, int n) const;

  Family family_ = Family::FI;
  std::string id_ = "fi";
  int param_ = 0;
  CatPresentation pres_;
  std::vector<std::vector<int>> gens_at_;  // level -> generator ids
  std::int64_t hom_cap_ = 100000;

  struct VecHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (std::int32_t x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, int>, std::vector<Morphism>> hom_memo_;
  mutable std::map<std::pair<int, int>, std::unordered_map<std::vector<std::int32_t>, int, VecHash>>
      index_memo_;
  // presented categories: raw word -> class representative payload
  mutable std::map<std::pair<int, int>,
                   std::unordered_map<std::vector<std::int32_t>, std::int32_t, VecHash>>
      word_class_memo_;
  mutable std::map<std::tuple<int, int, int>, std::vector<std::int32_t>> table_memo_;
  mutable std::map<int, std::vector<int>> end_gen_memo_;
};

using CategoryPtr = std::shared_ptr<const Category>;

// The smallest length-graded example with quadratic relations whose
// factorization square (condition on gamma, delta_1, delta_2) fails: three
// arrows b1 b2 b3 at level 0, four arrows c1..c4 at level 1, two arrows d1 d2
// at level 2, with c1 b1 = c3 b3, c2 b2 = c4 b3 and d1 c3 = d2 c4.
CategoryPtr counterexample_category();

}  // namespace censtab

#endif
