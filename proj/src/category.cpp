#include <censtab/category.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace censtab {

namespace {

// ---------------------------------------------------------------------------
// small finite-field arithmetic (q in {2, 3, 4}); GF(4) = F_2[w]/(w^2+w+1)
// with elements 0, 1, w = 2, w+1 = 3, addition = xor.
// ---------------------------------------------------------------------------

int gf_add(int q, int a, int b) {
  if (q == 4) return a ^ b;
  return (a + b) % q;
}

int gf_mul(int q, int a, int b) {
  if (q == 4) {
    static const int tab[4][4] = {
        {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return tab[a][b];
  }
  return (a * b) % q;
}

int gf_inv(int q, int a) {
  for (int x = 1; x < q; ++x) {
    if (gf_mul(q, a, x) == 1) return x;
  }
  throw InvalidInput("field inverse of zero");
}

Int falling_factorial(int n, int m) {
  Int r = 1;
  for (int i = 0; i < m; ++i) r *= Int(n - i);
  return r;
}

Int binomial(int n, int m) {
  if (m < 0 || m > n) return 0;
  Int r = 1;
  for (int i = 0; i < m; ++i) {
    r *= Int(n - i);
    r /= Int(i + 1);
  }
  return r;
}

Int int_pow(Int base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Number of surjections [n] ->> [m] by inclusion-exclusion.
Int surjection_count(int n, int m) {
  Int total = 0;
  for (int k = 0; k <= m; ++k) {
    Int term = binomial(m, k) * int_pow(Int(m - k), n);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Schensted insertion
// ---------------------------------------------------------------------------

std::vector<std::int32_t> rsk_normal_form(const std::vector<std::int32_t>& word) {
  std::vector<std::vector<std::int32_t>> rows;
  for (std::int32_t x : word) {
    if (x < 1) throw InvalidInput("plactic letters must be >= 1");
    std::int32_t carry = x;
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.push_back({carry});
        break;
      }
      auto& row = rows[r];
      // bump the leftmost entry strictly larger than the carried letter
      auto it = std::upper_bound(row.begin(), row.end(), carry);
      if (it == row.end()) {
        row.push_back(carry);
        break;
      }
      std::swap(*it, carry);
    }
  }
  std::vector<std::int32_t> out;
  out.reserve(word.size());
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out.insert(out.end(), it->begin(), it->end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// factories
// ---------------------------------------------------------------------------

CategoryPtr Category::fi() {
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::FI;
  c->id_ = "fi";
  return c;
}

CategoryPtr Category::fi_a(int colors) {
  if (colors < 1) throw InvalidInput("fi_a needs at least one color");
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::FIa;
  c->id_ = "fi_a";
  c->param_ = colors;
  return c;
}

CategoryPtr Category::oi_a(int colors) {
  if (colors < 1) throw InvalidInput("oi_a needs at least one color");
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::OIa;
  c->id_ = "oi_a";
  c->param_ = colors;
  return c;
}

CategoryPtr Category::fs_op() {
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::FSop;
  c->id_ = "fs_op";
  return c;
}

CategoryPtr Category::vi(int q) {
  if (q != 2 && q != 3 && q != 4) throw InvalidInput("vi supports q in {2, 3, 4}");
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::VI;
  c->id_ = "vi";
  c->param_ = q;
  return c;
}

CategoryPtr Category::plactic(int alphabet_size) {
  if (alphabet_size < 1) throw InvalidInput("plactic alphabet must be nonempty");
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::Plactic;
  c->id_ = "plactic";
  c->param_ = alphabet_size;
  return c;
}

CategoryPtr Category::presented(CatPresentation pres, const std::string& id) {
  if (pres.objects_max < 0) throw InvalidInput("objects_max must be >= 0");
  auto c = std::shared_ptr<Category>(new Category());
  c->family_ = Family::Presented;
  c->id_ = id;
  c->gens_at_.assign(static_cast<std::size_t>(pres.objects_max) + 1, {});
  for (std::size_t i = 0; i < pres.generators.size(); ++i) {
    const auto& g = pres.generators[i];
    if (g.target != g.source + 1) {
      throw InvalidInput("generator '" + g.name + "' must raise degree by exactly 1");
    }
    if (g.source < 0 || g.target > pres.objects_max) {
      throw InvalidInput("generator '" + g.name + "' out of object range");
    }
    c->gens_at_[static_cast<std::size_t>(g.source)].push_back(static_cast<int>(i));
  }
  auto validate_word = [&](const Word& w) {
    if (w.src < 0 || w.tgt > pres.objects_max || w.src > w.tgt) {
      throw InvalidInput("relation word out of object range");
    }
    if (static_cast<int>(w.gens.size()) != w.tgt - w.src) {
      throw InvalidInput("relation word length does not match its endpoints");
    }
    for (std::size_t j = 0; j < w.gens.size(); ++j) {
      int level = w.tgt - 1 - static_cast<int>(j);
      if (w.gens[j] < 0 ||
          w.gens[j] >= static_cast<std::int32_t>(c->gens_at_[static_cast<std::size_t>(level)].size())) {
        throw InvalidInput("relation word uses an unknown generator");
      }
    }
  };
  for (const auto& [lhs, rhs] : pres.relations) {
    if (lhs.src != rhs.src || lhs.tgt != rhs.tgt) {
      throw InvalidInput("relation sides must be parallel");
    }
    validate_word(lhs);
    validate_word(rhs);
  }
  c->pres_ = std::move(pres);
  return c;
}

CategoryPtr counterexample_category() {
  CatPresentation p;
  p.objects_max = 3;
  p.generators = {{"b1", 0, 1}, {"b2", 0, 1}, {"b3", 0, 1}, {"c1", 1, 2},
                  {"c2", 1, 2}, {"c3", 1, 2}, {"c4", 1, 2}, {"d1", 2, 3},
                  {"d2", 2, 3}};
  // words are outermost-first: {c, b} means c o b
  p.relations = {
      {Word{0, 2, {0, 0}}, Word{0, 2, {2, 2}}},  // c1 b1 = c3 b3
      {Word{0, 2, {1, 1}}, Word{0, 2, {3, 2}}},  // c2 b2 = c4 b3
      {Word{1, 3, {0, 2}}, Word{1, 3, {1, 3}}},  // d1 c3 = d2 c4
  };
  return Category::presented(std::move(p), "counterexample");
}

// ---------------------------------------------------------------------------
// counting
// ---------------------------------------------------------------------------

void Category::check_objects(int m, int n) const {
  if (m < 0 || n < 0) throw InvalidInput("objects must be nonnegative");
  if (family_ == Family::Presented && (m > pres_.objects_max || n > pres_.objects_max)) {
    throw InvalidInput("object exceeds objects_max of the presented category");
  }
}

Int Category::hom_size(int m, int n) const {
  check_objects(m, n);
  if (m > n) return 0;
  switch (family_) {
    case Family::FI:
      return falling_factorial(n, m);
    case Family::FIa:
      return falling_factorial(n, m) * int_pow(Int(param_), n - m);
    case Family::OIa:
      return binomial(n, m) * int_pow(Int(param_), n - m);
    case Family::FSop:
      return surjection_count(n, m);
    case Family::VI: {
      Int r = 1;
      for (int i = 0; i < m; ++i) r *= int_pow(Int(param_), n) - int_pow(Int(param_), i);
      return r;
    }
    case Family::Plactic:
    case Family::Presented:
      return Int(static_cast<std::int64_t>(hom(m, n).size()));
  }
  throw InvalidInput("unknown family");
}

// ---------------------------------------------------------------------------
// enumeration (payload-lexicographic)
// ---------------------------------------------------------------------------

std::vector<Morphism> Category::enumerate_fi_family(int m, int n) const {
  const bool ordered = family_ == Family::OIa;
  const int colors = family_ == Family::FI ? 1 : param_;
  std::vector<Morphism> out;
  std::vector<std::int32_t> img(static_cast<std::size_t>(m));
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);

  auto emit_colors = [&]() {
    const int free_slots = n - m;
    std::vector<std::int32_t> col(static_cast<std::size_t>(free_slots), 0);
    while (true) {
      Morphism f;
      f.src = m;
      f.tgt = n;
      f.data = img;
      if (family_ != Family::FI) {
        f.data.insert(f.data.end(), col.begin(), col.end());
      }
      out.push_back(std::move(f));
      int j = free_slots - 1;
      while (j >= 0 && col[static_cast<std::size_t>(j)] == colors - 1) {
        col[static_cast<std::size_t>(j)] = 0;
        --j;
      }
      if (j < 0) break;
      ++col[static_cast<std::size_t>(j)];
    }
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      emit_colors();
      return;
    }
    int lo = ordered && i > 0 ? img[static_cast<std::size_t>(i - 1)] + 1 : 1;
    for (int v = lo; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      img[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Morphism> Category::enumerate_fs(int m, int n) const {
  std::vector<Morphism> out;
  if (m == 0) {
    if (n == 0) out.push_back(Morphism{0, 0, {}});
    return out;
  }
  std::vector<std::int32_t> val(static_cast<std::size_t>(n));
  std::vector<int> count(static_cast<std::size_t>(m) + 1, 0);
  int missing = m;
  auto rec = [&](auto&& self, int i) -> void {
    // every value in [m] must still be reachable from the remaining slots
    if (missing > n - i) return;
    if (i == n) {
      out.push_back(Morphism{m, n, val});
      return;
    }
    for (int v = 1; v <= m; ++v) {
      val[static_cast<std::size_t>(i)] = v;
      if (count[static_cast<std::size_t>(v)]++ == 0) --missing;
      self(self, i + 1);
      if (--count[static_cast<std::size_t>(v)] == 0) ++missing;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Morphism> Category::enumerate_vi(int m, int n) const {
  const int q = param_;
  std::vector<Morphism> out;
  if (m == 0) {
    out.push_back(Morphism{0, n, {}});
    return out;
  }
  std::int64_t pn = 1;
  for (int i = 0; i < n; ++i) {
    pn *= q;
    if (pn > (std::int64_t(1) << 40)) {
      throw ResourceLimit("vector space too large to enumerate");
    }
  }
  std::vector<std::vector<std::int32_t>> cols;
  // by_lead[L]: an echelon vector whose first nonzero entry sits at row L
  std::vector<std::vector<std::int32_t>> by_lead(static_cast<std::size_t>(n));

  // reduce v against the echelon set in increasing lead order; returns the
  // first unmatched lead position, or -1 when v lies in the span
  auto reduce_lead = [&](std::vector<std::int32_t>& v) -> int {
    for (int lead = 0; lead < n; ++lead) {
      if (v[static_cast<std::size_t>(lead)] == 0) continue;
      const auto& b = by_lead[static_cast<std::size_t>(lead)];
      if (b.empty()) return lead;
      int c = gf_mul(q, v[static_cast<std::size_t>(lead)],
                     gf_inv(q, b[static_cast<std::size_t>(lead)]));
      for (int r = lead; r < n; ++r) {
        int sub = gf_mul(q, c, b[static_cast<std::size_t>(r)]);
        // a - b = a + (q - 1) * b in odd characteristic; xor in char 2
        int neg = q == 4 ? sub : (q - sub) % q;
        v[static_cast<std::size_t>(r)] = gf_add(q, v[static_cast<std::size_t>(r)], neg);
      }
    }
    return -1;
  };

  auto rec = [&](auto&& self, int c) -> void {
    if (c == m) {
      Morphism f;
      f.src = m;
      f.tgt = n;
      for (const auto& col : cols) f.data.insert(f.data.end(), col.begin(), col.end());
      out.push_back(std::move(f));
      return;
    }
    std::vector<std::int32_t> v(static_cast<std::size_t>(n));
    for (std::int64_t code = 0; code < pn; ++code) {
      std::int64_t rest = code;
      for (int r = n - 1; r >= 0; --r) {
        v[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(rest % q);
        rest /= q;
      }
      std::vector<std::int32_t> reduced = v;
      int lead = reduce_lead(reduced);
      if (lead < 0) continue;
      cols.push_back(v);
      by_lead[static_cast<std::size_t>(lead)] = std::move(reduced);
      self(self, c + 1);
      by_lead[static_cast<std::size_t>(lead)].clear();
      cols.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Morphism> Category::enumerate_plactic(int m, int n) const {
  const int len = n - m;
  const int a = param_;
  std::int64_t raw = 1;
  for (int i = 0; i < len; ++i) {
    raw *= a;
    if (raw > 4000000) {
      throw ResourceLimit("plactic word enumeration exceeds the resource budget");
    }
  }
  std::vector<std::vector<std::int32_t>> reps;
  std::vector<std::int32_t> w(static_cast<std::size_t>(len), 1);
  for (std::int64_t code = 0; code < raw; ++code) {
    std::int64_t rest = code;
    for (int i = len - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rest % a) + 1;
      rest /= a;
    }
    auto nf = rsk_normal_form(w);
    if (nf == w) reps.push_back(nf);
  }
  std::sort(reps.begin(), reps.end());
  std::vector<Morphism> out;
  out.reserve(reps.size());
  for (auto& r : reps) out.push_back(Morphism{m, n, std::move(r)});
  return out;
}

std::vector<Morphism> Category::enumerate_presented(int m, int n) const {
  // enumerate all composable words, then merge Knuth-style along the
  // defining relations with a union-find; representatives are lex-least
  const int len = n - m;
  std::int64_t raw = 1;
  for (int level = n - 1; level >= m; --level) {
    raw *= static_cast<std::int64_t>(gens_at_[static_cast<std::size_t>(level)].size());
    if (raw > 4000000) {
      throw ResourceLimit("word enumeration exceeds the resource budget");
    }
  }
  std::vector<std::vector<std::int32_t>> words;
  if (raw == 0) {
    word_class_memo_[{m, n}] = {};
    return {};
  }
  std::vector<std::int32_t> w(static_cast<std::size_t>(len), 0);
  auto rec = [&](auto&& self, int j) -> void {
    if (j == len) {
      words.push_back(w);
      return;
    }
    int level = n - 1 - j;
    int k = static_cast<int>(gens_at_[static_cast<std::size_t>(level)].size());
    for (int g = 0; g < k; ++g) {
      w[static_cast<std::size_t>(j)] = g;
      self(self, j + 1);
    }
  };
  rec(rec, 0);

  std::unordered_map<std::vector<std::int32_t>, std::int32_t, VecHash> word_id;
  word_id.reserve(words.size() * 2);
  for (std::size_t i = 0; i < words.size(); ++i) {
    word_id.emplace(words[i], static_cast<std::int32_t>(i));
  }

  UnionFind uf(words.size());
  auto apply = [&](const std::vector<std::int32_t>& w0, std::size_t at, const Word& from,
                   const Word& to, std::int32_t self_id) {
    if (!std::equal(from.gens.begin(), from.gens.end(), w0.begin() + static_cast<std::ptrdiff_t>(at))) {
      return;
    }
    std::vector<std::int32_t> w1 = w0;
    std::copy(to.gens.begin(), to.gens.end(), w1.begin() + static_cast<std::ptrdiff_t>(at));
    uf.unite(self_id, word_id.at(w1));
  };
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const auto& [lhs, rhs] : pres_.relations) {
      if (lhs.src < m || lhs.tgt > n) continue;
      // levels [lhs.src, lhs.tgt) occupy word positions n - tgt .. n - 1 - src
      std::size_t at = static_cast<std::size_t>(n - lhs.tgt);
      apply(words[i], at, lhs, rhs, static_cast<std::int32_t>(i));
      apply(words[i], at, rhs, lhs, static_cast<std::int32_t>(i));
    }
  }

  std::map<std::int32_t, std::vector<std::int32_t>> rep;  // root -> lex-least word
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::int32_t r = uf.find(static_cast<std::int32_t>(i));
    auto it = rep.find(r);
    if (it == rep.end() || words[i] < it->second) rep[r] = words[i];
  }
  std::vector<std::vector<std::int32_t>> reps;
  reps.reserve(rep.size());
  for (auto& [root, w0] : rep) reps.push_back(w0);
  std::sort(reps.begin(), reps.end());

  std::unordered_map<std::vector<std::int32_t>, std::int32_t, VecHash> rep_pos;
  rep_pos.reserve(reps.size() * 2);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    rep_pos.emplace(reps[i], static_cast<std::int32_t>(i));
  }

  auto& classes = word_class_memo_[{m, n}];
  classes.reserve(words.size() * 2);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::int32_t r = uf.find(static_cast<std::int32_t>(i));
    classes.emplace(words[i], rep_pos.at(rep.at(r)));
  }
  std::vector<Morphism> out;
  out.reserve(reps.size());
  for (auto& r : reps) out.push_back(Morphism{m, n, std::move(r)});
  return out;
}

std::vector<Morphism> Category::enumerate(int m, int n) const {
  switch (family_) {
    case Family::FI:
    case Family::FIa:
    case Family::OIa:
      return enumerate_fi_family(m, n);
    case Family::FSop:
      return enumerate_fs(m, n);
    case Family::VI:
      return enumerate_vi(m, n);
    case Family::Plactic:
      return enumerate_plactic(m, n);
    case Family::Presented:
      return enumerate_presented(m, n);
  }
  throw InvalidInput("unknown family");
}

const std::vector<Morphism>& Category::hom(int m, int n) const {
  check_objects(m, n);
  std::scoped_lock lock(mu_);
  auto it = hom_memo_.find({m, n});
  if (it != hom_memo_.end()) return it->second;
  if (m > n) {
    return hom_memo_.emplace(std::pair(m, n), std::vector<Morphism>{}).first->second;
  }
  switch (family_) {
    case Family::FI:
    case Family::FIa:
    case Family::OIa:
    case Family::FSop:
    case Family::VI: {
      Int count = hom_size(m, n);
      if (count > Int(hom_cap_)) {
        throw ResourceLimit("hom(" + std::to_string(m) + ", " + std::to_string(n) +
                            ") has " + count.str() + " morphisms, above the cap of " +
                            std::to_string(hom_cap_));
      }
      break;
    }
    default:
      break;
  }
  auto morphisms = enumerate(m, n);
  if (static_cast<std::int64_t>(morphisms.size()) > hom_cap_) {
    throw ResourceLimit("hom(" + std::to_string(m) + ", " + std::to_string(n) + ") has " +
                        std::to_string(morphisms.size()) + " morphisms, above the cap of " +
                        std::to_string(hom_cap_));
  }
  auto& stored = hom_memo_.emplace(std::pair(m, n), std::move(morphisms)).first->second;
  auto& index = index_memo_[{m, n}];
  index.reserve(stored.size() * 2);
  for (std::size_t i = 0; i < stored.size(); ++i) {
    index.emplace(stored[i].data, static_cast<int>(i));
  }
  return stored;
}

int Category::hom_index(const Morphism& f) const {
  std::scoped_lock lock(mu_);
  hom(f.src, f.tgt);
  const auto& index = index_memo_.at({f.src, f.tgt});
  auto it = index.find(f.data);
  if (it == index.end()) throw InvalidInput("morphism is not in canonical form");
  return it->second;
}

// ---------------------------------------------------------------------------
// identity / composition
// ---------------------------------------------------------------------------

Morphism Category::identity(int n) const {
  check_objects(n, n);
  Morphism f;
  f.src = n;
  f.tgt = n;
  switch (family_) {
    case Family::FI:
    case Family::FIa:
    case Family::OIa:
    case Family::FSop:
      f.data.resize(static_cast<std::size_t>(n));
      std::iota(f.data.begin(), f.data.end(), 1);
      break;
    case Family::VI:
      f.data.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        f.data[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(i)] = 1;
      }
      break;
    case Family::Plactic:
    case Family::Presented:
      break;  // the empty word
  }
  return f;
}

Morphism Category::compose(const Morphism& g, const Morphism& f) const {
  if (f.tgt != g.src) throw InvalidInput("morphisms are not composable");
  const int m = f.src, n = f.tgt, p = g.tgt;
  Morphism h;
  h.src = m;
  h.tgt = p;
  switch (family_) {
    case Family::FI:
    case Family::FIa:
    case Family::OIa: {
      h.data.resize(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        h.data[static_cast<std::size_t>(i)] =
            g.data[static_cast<std::size_t>(f.data[static_cast<std::size_t>(i)] - 1)];
      }
      if (family_ == Family::FI) break;
      // colors on [p] \ im(g o f): inherited from g off im(g), pulled back
      // through g on im(g) \ im(g o f)
      std::vector<std::int32_t> g_preimage(static_cast<std::size_t>(p) + 1, 0);
      for (int j = 0; j < n; ++j) {
        g_preimage[static_cast<std::size_t>(g.data[static_cast<std::size_t>(j)])] =
            static_cast<std::int32_t>(j + 1);
      }
      std::vector<std::int32_t> g_color(static_cast<std::size_t>(p) + 1, -1);
      {
        int slot = n;  // g's colors start after its image tuple
        for (int x = 1; x <= p; ++x) {
          if (g_preimage[static_cast<std::size_t>(x)] == 0) {
            g_color[static_cast<std::size_t>(x)] = g.data[static_cast<std::size_t>(slot++)];
          }
        }
      }
      std::vector<std::int32_t> f_color(static_cast<std::size_t>(n) + 1, -1);
      {
        std::vector<bool> in_f(static_cast<std::size_t>(n) + 1, false);
        for (int i = 0; i < m; ++i) in_f[static_cast<std::size_t>(f.data[static_cast<std::size_t>(i)])] = true;
        int slot = m;
        for (int j = 1; j <= n; ++j) {
          if (!in_f[static_cast<std::size_t>(j)]) {
            f_color[static_cast<std::size_t>(j)] = f.data[static_cast<std::size_t>(slot++)];
          }
        }
      }
      std::vector<bool> in_h(static_cast<std::size_t>(p) + 1, false);
      for (int i = 0; i < m; ++i) in_h[static_cast<std::size_t>(h.data[static_cast<std::size_t>(i)])] = true;
      for (int x = 1; x <= p; ++x) {
        if (in_h[static_cast<std::size_t>(x)]) continue;
        std::int32_t j = g_preimage[static_cast<std::size_t>(x)];
        h.data.push_back(j == 0 ? g_color[static_cast<std::size_t>(x)]
                                : f_color[static_cast<std::size_t>(j)]);
      }
      break;
    }
    case Family::FSop: {
      // stored surjections compose the other way around: s_{g o f} = s_f o s_g
      h.data.resize(static_cast<std::size_t>(p));
      for (int i = 0; i < p; ++i) {
        h.data[static_cast<std::size_t>(i)] =
            f.data[static_cast<std::size_t>(g.data[static_cast<std::size_t>(i)] - 1)];
      }
      break;
    }
    case Family::VI: {
      const int q = param_;
      h.data.assign(static_cast<std::size_t>(p) * static_cast<std::size_t>(m), 0);
      for (int c = 0; c < m; ++c) {
        for (int r = 0; r < p; ++r) {
          int acc = 0;
          for (int k = 0; k < n; ++k) {
            acc = gf_add(q, acc,
                         gf_mul(q,
                                g.data[static_cast<std::size_t>(k) * static_cast<std::size_t>(p) +
                                       static_cast<std::size_t>(r)],
                                f.data[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                                       static_cast<std::size_t>(k)]));
          }
          h.data[static_cast<std::size_t>(c) * static_cast<std::size_t>(p) +
                 static_cast<std::size_t>(r)] = static_cast<std::int32_t>(acc);
        }
      }
      break;
    }
    case Family::Plactic: {
      h.data = g.data;
      h.data.insert(h.data.end(), f.data.begin(), f.data.end());
      h.data = rsk_normal_form(h.data);
      break;
    }
    case Family::Presented: {
      h.data = g.data;
      h.data.insert(h.data.end(), f.data.begin(), f.data.end());
      std::scoped_lock lock(mu_);
      const auto& target = hom(m, p);
      const auto& classes = word_class_memo_.at({m, p});
      auto it = classes.find(h.data);
      if (it == classes.end()) throw InvalidInput("word does not exist in the category");
      h.data = target[static_cast<std::size_t>(it->second)].data;
      break;
    }
  }
  return h;
}

Morphism Category::word_to_morphism(const Word& w) const {
  if (family_ != Family::Presented) {
    throw InvalidInput("word_to_morphism applies to presented categories only");
  }
  if (static_cast<int>(w.gens.size()) != w.tgt - w.src) {
    throw InvalidInput("word length does not match its endpoints");
  }
  std::scoped_lock lock(mu_);
  const auto& target = hom(w.src, w.tgt);
  const auto& classes = word_class_memo_.at({w.src, w.tgt});
  auto it = classes.find(w.gens);
  if (it == classes.end()) throw InvalidInput("word does not exist in the category");
  return target[static_cast<std::size_t>(it->second)];
}

// ---------------------------------------------------------------------------
// composition tables and endomorphism generators
// ---------------------------------------------------------------------------

const std::vector<std::int32_t>& Category::compose_table(int m, int l, int n) const {
  std::scoped_lock lock(mu_);
  auto key = std::tuple(m, l, n);
  auto it = table_memo_.find(key);
  if (it != table_memo_.end()) return it->second;
  const auto& inner = hom(m, l);
  const auto& outer = hom(l, n);
  const auto& target = hom(m, n);
  (void)target;
  std::size_t entries = inner.size() * outer.size();
  if (entries > 20000000) {
    throw ResourceLimit("composition table too large");
  }
  std::vector<std::int32_t> table(entries);
  for (std::size_t gi = 0; gi < outer.size(); ++gi) {
    for (std::size_t fi = 0; fi < inner.size(); ++fi) {
      table[gi * inner.size() + fi] =
          static_cast<std::int32_t>(hom_index(compose(outer[gi], inner[fi])));
    }
  }
  return table_memo_.emplace(key, std::move(table)).first->second;
}

std::vector<int> Category::end_generators(int n) const {
  std::scoped_lock lock(mu_);
  auto it = end_gen_memo_.find(n);
  if (it != end_gen_memo_.end()) return it->second;
  const auto& ends = hom(n, n);
  const int id_idx = hom_index(identity(n));
  std::vector<bool> reached(ends.size(), false);
  reached[static_cast<std::size_t>(id_idx)] = true;
  std::size_t reached_count = 1;
  std::vector<int> gens;

  auto close = [&]() {
    // saturate under left multiplication by the chosen generators
    std::vector<int> frontier;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (reached[i]) frontier.push_back(static_cast<int>(i));
    }
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int fi : frontier) {
        for (int g : gens) {
          Morphism prod = compose(ends[static_cast<std::size_t>(g)], ends[static_cast<std::size_t>(fi)]);
          int pi = hom_index(prod);
          if (!reached[static_cast<std::size_t>(pi)]) {
            reached[static_cast<std::size_t>(pi)] = true;
            ++reached_count;
            next.push_back(pi);
          }
        }
      }
      frontier = std::move(next);
    }
  };

  for (std::size_t i = 0; i < ends.size() && reached_count < ends.size(); ++i) {
    if (reached[i]) continue;
    gens.push_back(static_cast<int>(i));
    close();
  }
  end_gen_memo_[n] = gens;
  return gens;
}

// ---------------------------------------------------------------------------
// description
// ---------------------------------------------------------------------------

std::string Category::describe(const Morphism& f) const {
  std::ostringstream os;
  switch (family_) {
    case Family::FI:
    case Family::FSop: {
      os << '[';
      for (std::size_t i = 0; i < f.data.size(); ++i) {
        if (i) os << ',';
        os << f.data[i];
      }
      os << ']';
      break;
    }
    case Family::FIa:
    case Family::OIa: {
      os << '[';
      for (int i = 0; i < f.src; ++i) {
        if (i) os << ',';
        os << f.data[static_cast<std::size_t>(i)];
      }
      os << '|';
      for (std::size_t i = static_cast<std::size_t>(f.src); i < f.data.size(); ++i) {
        if (i > static_cast<std::size_t>(f.src)) os << ',';
        os << f.data[i];
      }
      os << ']';
      break;
    }
    case Family::VI: {
      os << '[';
      for (int c = 0; c < f.src; ++c) {
        if (c) os << ';';
        for (int r = 0; r < f.tgt; ++r) {
          if (r) os << ',';
          os << f.data[static_cast<std::size_t>(c) * static_cast<std::size_t>(f.tgt) +
                       static_cast<std::size_t>(r)];
        }
      }
      os << ']';
      break;
    }
    case Family::Plactic: {
      if (f.data.empty()) {
        os << "()";
      } else {
        for (std::int32_t x : f.data) os << x;
      }
      break;
    }
    case Family::Presented: {
      if (f.data.empty()) {
        os << "id_" << f.src;
      } else {
        for (std::size_t j = 0; j < f.data.size(); ++j) {
          int level = f.tgt - 1 - static_cast<int>(j);
          int global = gens_at_[static_cast<std::size_t>(level)][static_cast<std::size_t>(f.data[j])];
          if (j) os << '*';
          os << pres_.generators[static_cast<std::size_t>(global)].name;
        }
      }
      break;
    }
  }
  return os.str();
}

}  // namespace censtab
