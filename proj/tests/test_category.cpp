#include <doctest.h>

#include <censtab/category.hpp>
#include <censtab/laws.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

using namespace censtab;

namespace {

// brute-force morphism counters, independent of the library's enumeration
std::int64_t count_injections(int m, int n) {
  std::int64_t r = 1;
  for (int i = 0; i < m; ++i) r *= n - i;
  return r;
}

std::int64_t count_choose(int n, int m) {
  if (m < 0 || m > n) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < m; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::int64_t count_pow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// surjections [n] ->> [m] via the Stirling-number recurrence S(n,m) * m!
std::int64_t count_surjections(int n, int m) {
  if (m == 0) return n == 0 ? 1 : 0;
  std::vector<std::vector<std::int64_t>> s(static_cast<std::size_t>(n) + 1,
                                           std::vector<std::int64_t>(static_cast<std::size_t>(m) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          j * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
          s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
  }
  std::int64_t fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] * fact;
}

std::vector<std::int32_t> vec(std::initializer_list<std::int32_t> xs) { return xs; }

}  // namespace

TEST_CASE("injection families match independent counts and stay sorted") {
  auto fi = Category::fi();
  auto fi2 = Category::fi_a(2);
  auto oi3 = Category::oi_a(3);
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= n; ++m) {
      CHECK(fi->hom_size(m, n) == Int(count_injections(m, n)));
      CHECK(fi2->hom_size(m, n) == Int(count_injections(m, n) * count_pow(2, n - m)));
      CHECK(oi3->hom_size(m, n) == Int(count_choose(n, m) * count_pow(3, n - m)));
      if (fi->hom_size(m, n) < Int(3000)) {
        const auto& H = fi->hom(m, n);
        CHECK(static_cast<std::int64_t>(H.size()) == count_injections(m, n));
        CHECK(std::is_sorted(H.begin(), H.end(), [](const Morphism& a, const Morphism& b) {
          return a.data < b.data;
        }));
        std::set<std::vector<std::int32_t>> uniq;
        for (const auto& f : H) uniq.insert(f.data);
        CHECK(uniq.size() == H.size());
      }
    }
  }
  CHECK(fi->hom_size(2, 4) == Int(12));
  CHECK(fi2->hom_size(0, 1) == Int(2));
  CHECK(fi->hom_size(4, 2) == Int(0));
  CHECK(fi->hom(4, 2).empty());
}

TEST_CASE("surjection-valued morphisms: counts, empties, composition") {
  auto fs = Category::fs_op();
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) {
      CHECK(fs->hom_size(m, n) == Int(m > n ? 0 : count_surjections(n, m)));
    }
  }
  CHECK(fs->hom_size(2, 3) == Int(6));
  // degree 0 maps only to degree 0: there is no map of an empty set onto [n]
  CHECK(fs->hom_size(0, 0) == Int(1));
  CHECK(fs->hom(0, 3).empty());

  Morphism f{1, 2, vec({1, 1})};
  Morphism g{2, 3, vec({2, 1, 2})};
  Morphism h = fs->compose(g, f);
  CHECK(h.data == vec({1, 1, 1}));
  // all stored payloads are genuine surjections
  for (const auto& s : fs->hom(2, 4)) {
    std::set<std::int32_t> values(s.data.begin(), s.data.end());
    CHECK(values == std::set<std::int32_t>{1, 2});
  }
}

TEST_CASE("linear injections over small fields") {
  auto v2 = Category::vi(2);
  auto v3 = Category::vi(3);
  auto v4 = Category::vi(4);
  CHECK(v2->hom_size(1, 2) == Int(3));
  CHECK(v2->hom_size(2, 2) == Int(6));    // |GL_2(F_2)|
  CHECK(v3->hom_size(2, 2) == Int(48));   // |GL_2(F_3)|
  CHECK(v4->hom_size(1, 1) == Int(3));
  CHECK(v2->hom_size(2, 3) == Int((8 - 1) * (8 - 2)));

  // stored matrices have full column rank: composing with nothing collapses
  const auto& H = v2->hom(2, 3);
  CHECK(H.size() == 42);
  CHECK(std::is_sorted(H.begin(), H.end(), [](const Morphism& a, const Morphism& b) {
    return a.data < b.data;
  }));
  for (const auto& f : H) {
    // columns distinct and the second not equal to the first (rank 2 over F_2
    // means: both nonzero and distinct)
    std::vector<std::int32_t> c0(f.data.begin(), f.data.begin() + 3);
    std::vector<std::int32_t> c1(f.data.begin() + 3, f.data.end());
    CHECK(c0 != vec({0, 0, 0}));
    CHECK(c1 != vec({0, 0, 0}));
    CHECK(c0 != c1);
  }

  Morphism f{1, 2, vec({1, 1})};
  Morphism g{2, 3, vec({1, 0, 0, 0, 1, 1})};
  CHECK(v2->compose(g, f).data == vec({1, 1, 1}));

  // GF(4) multiplication through 1x1 composition: w * w = w + 1, w * (w+1) = 1
  Morphism w{1, 1, vec({2})};
  Morphism w1{1, 1, vec({3})};
  CHECK(v4->compose(w, w).data == vec({3}));
  CHECK(v4->compose(w, w1).data == vec({1}));
  CHECK(v4->compose(w1, w1).data == vec({2}));
}

TEST_CASE("row insertion normal form") {
  CHECK(rsk_normal_form(vec({2, 1, 1})) == vec({2, 1, 1}));
  CHECK(rsk_normal_form(vec({1, 2, 1})) == vec({2, 1, 1}));
  CHECK(rsk_normal_form(vec({2, 1, 2})) == vec({2, 1, 2}));
  CHECK(rsk_normal_form(vec({2, 2, 1})) == vec({2, 1, 2}));
  CHECK(rsk_normal_form(vec({1, 2, 3})) == vec({1, 2, 3}));
  CHECK(rsk_normal_form(vec({3, 2, 1})) == vec({3, 2, 1}));
  CHECK(rsk_normal_form({}) == std::vector<std::int32_t>{});

  std::mt19937_64 rng(20240818);
  for (int trial = 0; trial < 200; ++trial) {
    int len = static_cast<int>(rng() % 8);
    std::vector<std::int32_t> w(static_cast<std::size_t>(len));
    for (auto& x : w) x = static_cast<std::int32_t>(rng() % 3) + 1;
    auto nf = rsk_normal_form(w);
    CHECK(rsk_normal_form(nf) == nf);
    CHECK(nf.size() == w.size());
    // content (letter multiset) is preserved
    auto ws = w;
    auto ns = nf;
    std::sort(ws.begin(), ws.end());
    std::sort(ns.begin(), ns.end());
    CHECK(ws == ns);
  }
}

TEST_CASE("plactic homs collapse words into Knuth classes") {
  auto pl = Category::plactic(2);
  CHECK(pl->hom_size(0, 3) == Int(6));
  CHECK(pl->hom_size(1, 4) == Int(6));  // only the length matters
  CHECK(pl->hom_size(0, 4) == Int(9));
  CHECK(pl->hom_size(2, 2) == Int(1));

  Morphism g{2, 3, vec({2})};
  Morphism f{0, 2, vec({1, 1})};
  CHECK(pl->compose(g, f).data == vec({2, 1, 1}));

  // composition agrees with concatenation up to Knuth equivalence
  std::mt19937_64 rng(555001);
  for (int trial = 0; trial < 100; ++trial) {
    int la = static_cast<int>(rng() % 4), lb = static_cast<int>(rng() % 4);
    std::vector<std::int32_t> wa(static_cast<std::size_t>(la)), wb(static_cast<std::size_t>(lb));
    for (auto& x : wa) x = static_cast<std::int32_t>(rng() % 2) + 1;
    for (auto& x : wb) x = static_cast<std::int32_t>(rng() % 2) + 1;
    Morphism a{lb, lb + la, rsk_normal_form(wa)};
    Morphism b{0, lb, rsk_normal_form(wb)};
    std::vector<std::int32_t> cat_word = wa;
    cat_word.insert(cat_word.end(), wb.begin(), wb.end());
    CHECK(pl->compose(a, b).data == rsk_normal_form(cat_word));
  }
}

TEST_CASE("two-color composition threads colors through both factors") {
  auto fi2 = Category::fi_a(2);
  Morphism f{1, 2, vec({2, 1})};           // 1 -> 2, complement {1} colored 1
  Morphism g{2, 4, vec({3, 1, 0, 1})};     // 2 -> 4, complement {2, 4} colored 0, 1
  Morphism h = fi2->compose(g, f);
  CHECK(h.data == vec({1, 0, 1, 1}));
  CHECK(fi2->hom_index(h) >= 0);

  auto oi2 = Category::oi_a(2);
  Morphism fo{1, 2, vec({1, 0})};
  Morphism go{2, 3, vec({1, 3, 1})};
  CHECK(oi2->compose(go, fo).data == vec({1, 1, 0}));
}

TEST_CASE("plain injection composition and identities") {
  auto fi = Category::fi();
  Morphism f{2, 3, vec({3, 1})};
  Morphism g{3, 5, vec({2, 5, 4})};
  CHECK(fi->compose(g, f).data == vec({4, 2}));
  CHECK(fi->identity(3).data == vec({1, 2, 3}));
  CHECK(fi->is_identity(fi->identity(4)));
  CHECK_FALSE(fi->is_identity(Morphism{3, 3, vec({1, 3, 2})}));
  CHECK_THROWS_AS(fi->compose(f, g), InvalidInput);
  CHECK_THROWS_AS((void)fi->hom_index(Morphism{2, 3, vec({1, 1})}), InvalidInput);
}

TEST_CASE("presented category merges words along its relations") {
  auto cx = counterexample_category();
  CHECK(cx->hom_size(0, 1) == Int(3));
  CHECK(cx->hom_size(1, 2) == Int(4));
  CHECK(cx->hom_size(2, 3) == Int(2));
  CHECK(cx->hom_size(0, 2) == Int(10));
  CHECK(cx->hom_size(1, 3) == Int(7));
  CHECK(cx->hom_size(0, 3) == Int(17));
  CHECK(cx->hom_size(1, 1) == Int(1));  // endomorphisms are trivial

  // c1 b1 and c3 b3 are the same morphism; c1 b2 is different
  Morphism b1{0, 1, vec({0})}, b2{0, 1, vec({1})}, b3{0, 1, vec({2})};
  Morphism c1{1, 2, vec({0})}, c3{1, 2, vec({2})};
  CHECK(cx->compose(c1, b1) == cx->compose(c3, b3));
  CHECK(cx->compose(c1, b1).data == vec({0, 0}));
  CHECK(cx->compose(c1, b2) != cx->compose(c3, b3));

  // d1 c3 = d2 c4 through the word interface
  Morphism lhs = cx->word_to_morphism(Word{1, 3, {0, 2}});
  Morphism rhs = cx->word_to_morphism(Word{1, 3, {1, 3}});
  CHECK(lhs == rhs);
  CHECK(cx->describe(lhs) == "d1*c3");

  // but d1 c1 and d2 c2 stay distinct
  CHECK(cx->word_to_morphism(Word{1, 3, {0, 0}}) != cx->word_to_morphism(Word{1, 3, {1, 1}}));

  CHECK_THROWS_AS((void)cx->hom(0, 4), InvalidInput);
  CHECK_THROWS_AS((void)cx->word_to_morphism(Word{1, 3, {0}}), InvalidInput);
}

TEST_CASE("presented category rejects malformed input") {
  CatPresentation bad;
  bad.objects_max = 2;
  bad.generators = {{"x", 0, 2}};
  CHECK_THROWS_AS((void)Category::presented(bad), InvalidInput);

  CatPresentation mismatched;
  mismatched.objects_max = 2;
  mismatched.generators = {{"x", 0, 1}, {"y", 1, 2}};
  mismatched.relations = {{Word{0, 1, {0}}, Word{0, 2, {0, 0}}}};
  CHECK_THROWS_AS((void)Category::presented(mismatched), InvalidInput);
}

TEST_CASE("endomorphism generators close under composition") {
  auto fi = Category::fi();
  auto gens = fi->end_generators(3);
  CHECK(gens == std::vector<int>{1, 2});  // a transposition and an adjacent one

  for (auto cat : {Category::fi(), Category::fi_a(2), Category::fs_op(), Category::vi(2)}) {
    for (int n = 0; n <= 3; ++n) {
      auto gs = cat->end_generators(n);
      const auto& ends = cat->hom(n, n);
      // breadth-first closure of the generators reaches the whole monoid
      std::set<int> reached{cat->hom_index(cat->identity(n))};
      std::vector<int> frontier(reached.begin(), reached.end());
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int fi_idx : frontier) {
          for (int g : gs) {
            int pi = cat->hom_index(
                cat->compose(ends[static_cast<std::size_t>(g)], ends[static_cast<std::size_t>(fi_idx)]));
            if (reached.insert(pi).second) next.push_back(pi);
          }
        }
        frontier = std::move(next);
      }
      CHECK(reached.size() == ends.size());
      CHECK(cat->end_generators(n) == gs);  // deterministic
    }
  }

  CHECK(Category::plactic(2)->end_generators(2).empty());
  CHECK(counterexample_category()->end_generators(1).empty());
}

TEST_CASE("hom caps stop oversized enumerations") {
  auto fi = Category::fi();
  fi->hom(0, 4);
  auto capped = Category::fi();
  const_cast<Category&>(*capped).set_hom_cap(10);
  CHECK_THROWS_AS((void)capped->hom(2, 4), ResourceLimit);
  CHECK(capped->hom_size(2, 4) == Int(12));  // counting still works

  auto pl = Category::plactic(2);
  CHECK_THROWS_AS((void)pl->hom(0, 40), ResourceLimit);
}

TEST_CASE("category laws hold on small degrees for every family") {
  for (auto [cat, deg] : std::vector<std::pair<CategoryPtr, int>>{
           {Category::fi(), 4},
           {Category::fi_a(2), 3},
           {Category::oi_a(2), 4},
           {Category::fs_op(), 4},
           {Category::vi(2), 2},
           {Category::vi(3), 2},
           {Category::plactic(2), 4},
           {counterexample_category(), 3},
       }) {
    auto rep = check_category_laws(*cat, deg);
    INFO(cat->id(), ": ", rep.detail);
    CHECK(rep.ok);
    CHECK(rep.pairs_checked > 0);
  }
}

TEST_CASE("morphism descriptions") {
  CHECK(Category::fi()->describe(Morphism{2, 4, vec({3, 1})}) == "[3,1]");
  CHECK(Category::fi_a(2)->describe(Morphism{1, 2, vec({2, 1})}) == "[2|1]");
  CHECK(Category::fs_op()->describe(Morphism{2, 3, vec({2, 1, 2})}) == "[2,1,2]");
  CHECK(Category::vi(2)->describe(Morphism{2, 2, vec({1, 0, 0, 1})}) == "[1,0;0,1]");
  CHECK(Category::plactic(2)->describe(Morphism{0, 3, vec({2, 1, 1})}) == "211");
  auto cx = counterexample_category();
  CHECK(cx->describe(cx->identity(2)) == "id_2");
  CHECK(cx->describe(Morphism{0, 2, vec({0, 0})}) == "c1*b1");
}
