#include <censtab/relations.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

namespace censtab {

namespace {

constexpr std::int64_t kMaxChainPairs = 5'000'000;

struct ClassUnionFind {
  std::vector<std::int32_t> parent;
  explicit ClassUnionFind(std::int64_t n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // keeps the smaller index as root, so roots are least orbit members
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

TensorChain::TensorChain(CategoryPtr cat, int m, int n) : cat_(std::move(cat)), m_(m), n_(n) {
  if (m < 0 || n < m) throw InvalidInput("TensorChain: need 0 <= m <= n");

  // stage m: the endomorphism span of the bottom object
  {
    Stage s;
    s.classes = static_cast<std::int64_t>(cat_->hom(m, m).size());
    s.composite.resize(static_cast<std::size_t>(s.classes));
    std::iota(s.composite.begin(), s.composite.end(), 0);
    s.rep.assign(static_cast<std::size_t>(s.classes), {});
    stages_.push_back(std::move(s));
  }
  if (n == m) return;

  // stage m+1: free on hom(m, m+1); stacking on an endomorphism composes it in
  {
    Stage s;
    const auto& h = cat_->hom(m, m + 1);
    s.classes = static_cast<std::int64_t>(h.size());
    s.composite.resize(static_cast<std::size_t>(s.classes));
    std::iota(s.composite.begin(), s.composite.end(), 0);
    s.rep.resize(static_cast<std::size_t>(s.classes));
    for (std::int32_t i = 0; i < s.classes; ++i) s.rep[static_cast<std::size_t>(i)] = {i};
    if (s.classes > 0 && stages_[0].classes > 0) s.fold = cat_->compose_table(m, m, m + 1);
    stages_.push_back(std::move(s));
  }

  // left action of the End(j) generators on the classes of stage j, needed to
  // balance the next stage; refreshed per level
  std::vector<std::int32_t> left_act;
  std::vector<int> end_gens = cat_->end_generators(m + 1);
  {
    const std::int64_t nc = stages_[1].classes;
    left_act.resize(static_cast<std::size_t>(nc * static_cast<std::int64_t>(end_gens.size())));
    if (!end_gens.empty() && nc > 0) {
      const auto& tbl = cat_->compose_table(m, m + 1, m + 1);  // g o xi
      for (std::size_t gi = 0; gi < end_gens.size(); ++gi) {
        const std::int32_t g = static_cast<std::int32_t>(end_gens[gi]);
        for (std::int64_t c = 0; c < nc; ++c)
          left_act[static_cast<std::size_t>(c) * end_gens.size() + gi] =
              tbl[static_cast<std::size_t>(g) * static_cast<std::size_t>(nc) +
                  static_cast<std::size_t>(c)];
      }
    }
  }

  for (int j = m + 2; j <= n; ++j) {
    const Stage& below = stages_[static_cast<std::size_t>(j - 1 - m)];
    const auto& step = cat_->hom(j - 1, j);
    const std::int64_t nxi = static_cast<std::int64_t>(step.size());
    const std::int64_t nb = below.classes;
    const std::int64_t pairs = nxi * nb;
    if (pairs > kMaxChainPairs)
      throw ResourceLimit("TensorChain: stage " + std::to_string(j) + " needs " +
                          std::to_string(pairs) + " raw chains (cap " +
                          std::to_string(kMaxChainPairs) + ")");

    Stage s;
    if (pairs == 0) {
      s.classes = 0;
      stages_.push_back(std::move(s));
      end_gens = cat_->end_generators(j);
      left_act.clear();
      continue;
    }

    // balancing: (xi o g) stacked on c equals xi stacked on (g . c)
    ClassUnionFind uf(pairs);
    if (!end_gens.empty()) {
      const auto& xi_g = cat_->compose_table(j - 1, j - 1, j);  // xi o g
      const std::int64_t ne = static_cast<std::int64_t>(cat_->hom(j - 1, j - 1).size());
      for (std::int64_t xi = 0; xi < nxi; ++xi) {
        for (std::int64_t c = 0; c < nb; ++c) {
          for (std::size_t gi = 0; gi < end_gens.size(); ++gi) {
            const std::int32_t g = static_cast<std::int32_t>(end_gens[gi]);
            const std::int32_t xig =
                xi_g[static_cast<std::size_t>(xi) * static_cast<std::size_t>(ne) +
                     static_cast<std::size_t>(g)];
            const std::int32_t gc =
                left_act[static_cast<std::size_t>(c) * end_gens.size() + gi];
            uf.unite(static_cast<std::int32_t>(xig * nb + c),
                     static_cast<std::int32_t>(xi * nb + gc));
          }
        }
      }
    }

    s.fold.resize(static_cast<std::size_t>(pairs));
    const auto& comp_tbl = cat_->compose_table(m, j - 1, j);
    const std::int64_t hmj1 = static_cast<std::int64_t>(cat_->hom(m, j - 1).size());
    std::vector<std::int32_t> rep_xi, rep_below;  // representative pair per class
    for (std::int64_t p = 0; p < pairs; ++p) {
      const std::int32_t root = uf.find(static_cast<std::int32_t>(p));
      if (root == p) {
        const std::int32_t xi = static_cast<std::int32_t>(p / nb);
        const std::int32_t c = static_cast<std::int32_t>(p % nb);
        s.fold[static_cast<std::size_t>(p)] = static_cast<std::int32_t>(s.classes++);
        rep_xi.push_back(xi);
        rep_below.push_back(c);
        s.composite.push_back(
            comp_tbl[static_cast<std::size_t>(xi) * static_cast<std::size_t>(hmj1) +
                     static_cast<std::size_t>(below.composite[static_cast<std::size_t>(c)])]);
        std::vector<std::int32_t> chain;
        chain.reserve(below.rep[static_cast<std::size_t>(c)].size() + 1);
        chain.push_back(xi);
        chain.insert(chain.end(), below.rep[static_cast<std::size_t>(c)].begin(),
                     below.rep[static_cast<std::size_t>(c)].end());
        s.rep.push_back(std::move(chain));
      } else {
        s.fold[static_cast<std::size_t>(p)] = s.fold[static_cast<std::size_t>(root)];
      }
    }

    // left action on the new classes, for the next level's balancing: an
    // endomorphism of j composes into the top letter of the chain
    end_gens = cat_->end_generators(j);
    left_act.assign(
        static_cast<std::size_t>(s.classes * static_cast<std::int64_t>(end_gens.size())), 0);
    if (!end_gens.empty()) {
      const auto& g_xi = cat_->compose_table(j - 1, j, j);  // g o xi
      for (std::size_t gi = 0; gi < end_gens.size(); ++gi) {
        const std::int32_t g = static_cast<std::int32_t>(end_gens[gi]);
        for (std::int32_t cls = 0; cls < s.classes; ++cls) {
          const std::int32_t gxi =
              g_xi[static_cast<std::size_t>(g) * static_cast<std::size_t>(nxi) +
                   static_cast<std::size_t>(rep_xi[static_cast<std::size_t>(cls)])];
          left_act[static_cast<std::size_t>(cls) * end_gens.size() + gi] =
              s.fold[static_cast<std::size_t>(gxi) * static_cast<std::size_t>(nb) +
                     static_cast<std::size_t>(rep_below[static_cast<std::size_t>(cls)])];
        }
      }
    }
    stages_.push_back(std::move(s));
  }
}

std::int64_t TensorChain::rank(int j) const {
  if (j < m_ || j > n_) throw InvalidInput("TensorChain::rank: stage out of range");
  return stages_[static_cast<std::size_t>(j - m_)].classes;
}

std::int32_t TensorChain::composite(int j, std::int32_t cls) const {
  return stages_[static_cast<std::size_t>(j - m_)].composite[static_cast<std::size_t>(cls)];
}

const std::vector<std::int32_t>& TensorChain::rep(int j, std::int32_t cls) const {
  return stages_[static_cast<std::size_t>(j - m_)].rep[static_cast<std::size_t>(cls)];
}

std::int32_t TensorChain::fold_up(int j, std::int32_t xi, std::int32_t cls) const {
  const Stage& s = stages_[static_cast<std::size_t>(j - m_)];
  const std::int64_t below = stages_[static_cast<std::size_t>(j - 1 - m_)].classes;
  return s.fold[static_cast<std::size_t>(xi) * static_cast<std::size_t>(below) +
                static_cast<std::size_t>(cls)];
}

std::int32_t TensorChain::extend(int j, std::int32_t cls,
                                 const std::vector<std::int32_t>& chain) const {
  std::int32_t acc = cls;
  for (std::size_t i = chain.size(); i-- > 0;) {
    const int level = j + static_cast<int>(chain.size() - 1 - i);
    acc = fold_up(level + 1, chain[i], acc);
  }
  return acc;
}

ModuleMap chain_multiplication(const TensorChain& t, RingSpec ring) {
  ModuleMap f;
  f.domain = PresentedModule::free(ring, t.rank());
  f.codomain = PresentedModule::free(
      ring, static_cast<std::int64_t>(t.cat()->hom(t.m(), t.n()).size()));
  f.cols.resize(static_cast<std::size_t>(t.rank()));
  for (std::int32_t c = 0; c < t.rank(); ++c)
    f.cols[static_cast<std::size_t>(c)] = {{t.composite(t.n(), c), Int(1)}};
  return f;
}

bool multiplication_surjective(const TensorChain& t) {
  const std::int64_t nh = static_cast<std::int64_t>(t.cat()->hom(t.m(), t.n()).size());
  std::vector<char> hit(static_cast<std::size_t>(nh), 0);
  for (std::int32_t c = 0; c < t.rank(); ++c) hit[static_cast<std::size_t>(t.composite(t.n(), c))] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

std::vector<SparseVec> multiplication_kernel(const TensorChain& t) {
  const std::int64_t nh = static_cast<std::int64_t>(t.cat()->hom(t.m(), t.n()).size());
  std::vector<std::int32_t> first(static_cast<std::size_t>(nh), -1);
  std::vector<SparseVec> out;
  for (std::int32_t c = 0; c < t.rank(); ++c) {
    std::int32_t& f = first[static_cast<std::size_t>(t.composite(t.n(), c))];
    if (f < 0) {
      f = c;
    } else {
      out.push_back({{f, Int(-1)}, {c, Int(1)}});
    }
  }
  return out;
}

namespace {

// in-fiber difference pairs (a < b) of the multiplication kernel at stage j
std::vector<std::pair<std::int32_t, std::int32_t>> kernel_pairs_at(const TensorChain& t, int j) {
  const std::int64_t nh = static_cast<std::int64_t>(t.cat()->hom(t.m(), j).size());
  std::vector<std::int32_t> first(static_cast<std::size_t>(nh), -1);
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  for (std::int32_t c = 0; c < t.rank(j); ++c) {
    std::int32_t& f = first[static_cast<std::size_t>(t.composite(j, c))];
    if (f < 0)
      f = c;
    else
      out.emplace_back(f, c);
  }
  return out;
}

}  // namespace

GenerationVerdict check_degree_generation(CategoryPtr cat, RingSpec ring, int d, int m, int n) {
  if (d < 1) throw InvalidInput("check_degree_generation: d must be >= 1");
  if (m < 0 || n < m + d)
    throw InvalidInput("check_degree_generation: requires 0 <= m and n >= m + d");
  GenerationVerdict v;
  v.d = d;
  v.m = m;
  v.n = n;
  v.ring = ring;

  TensorChain tc(cat, m, n);
  const std::int64_t rank = tc.rank();
  const std::int64_t nh = static_cast<std::int64_t>(cat->hom(m, n).size());

  std::vector<std::vector<std::int32_t>> fibers(static_cast<std::size_t>(nh));
  for (std::int32_t c = 0; c < rank; ++c)
    fibers[static_cast<std::size_t>(tc.composite(n, c))].push_back(c);
  v.surjective = true;
  std::int64_t nonempty = 0;
  for (const auto& f : fibers) {
    if (f.empty())
      v.surjective = false;
    else
      ++nonempty;
  }
  v.kernel_generators = rank - nonempty;

  // level-by-level span of the window products, kept as a set of difference
  // pairs (every generator of the span is a difference of two chain classes,
  // and stacking a morphism on a difference yields another difference)
  std::unordered_set<std::int64_t> prev;
  auto key = [](std::int64_t width, std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::int64_t>(a) * width + b;
  };
  for (int j = m + 1; j <= n; ++j) {
    std::unordered_set<std::int64_t> next;
    const std::int64_t width = tc.rank(j);
    const std::int64_t prev_width = tc.rank(j - 1);
    const std::int64_t nxi = static_cast<std::int64_t>(cat->hom(j - 1, j).size());
    for (std::int64_t k : prev) {
      const std::int32_t a = static_cast<std::int32_t>(k / prev_width);
      const std::int32_t b = static_cast<std::int32_t>(k % prev_width);
      for (std::int32_t xi = 0; xi < nxi; ++xi) {
        const std::int32_t a2 = tc.fold_up(j, xi, a);
        const std::int32_t b2 = tc.fold_up(j, xi, b);
        if (a2 != b2) next.insert(key(width, a2, b2));
      }
    }
    const int r = j - d;
    if (r >= m) {
      if (r == m) {
        // kernel of the own stage, multiplied by every bottom endomorphism
        auto pairs = kernel_pairs_at(tc, j);
        const std::int64_t ne = tc.rank(m);
        for (const auto& [c0, c1] : pairs) {
          for (std::int32_t g = 0; g < ne; ++g) {
            const std::int32_t a = tc.extend(m, g, tc.rep(j, c0));
            const std::int32_t b = tc.extend(m, g, tc.rep(j, c1));
            if (a != b) next.insert(key(width, a, b));
          }
        }
      } else {
        TensorChain tcr(cat, r, j);
        auto pairs = kernel_pairs_at(tcr, j);
        const std::int64_t ny = tc.rank(r);
        for (const auto& [c0, c1] : pairs) {
          const auto& rep0 = tcr.rep(j, c0);
          const auto& rep1 = tcr.rep(j, c1);
          for (std::int32_t y = 0; y < ny; ++y) {
            const std::int32_t a = tc.extend(r, y, rep0);
            const std::int32_t b = tc.extend(r, y, rep1);
            if (a != b) next.insert(key(width, a, b));
          }
        }
      }
    }
    prev = std::move(next);
  }

  // every product stays inside one fiber of the multiplication map
  v.rhs_in_lhs = true;
  for (std::int64_t k : prev) {
    const std::int32_t a = static_cast<std::int32_t>(k / rank);
    const std::int32_t b = static_cast<std::int32_t>(k % rank);
    if (tc.composite(n, a) != tc.composite(n, b)) {
      v.rhs_in_lhs = false;
      break;
    }
  }

  // the difference span of a pair set is determined by its connectivity: the
  // kernel is spanned by the products exactly when every fiber is connected
  ClassUnionFind uf(std::max<std::int64_t>(rank, 1));
  for (std::int64_t k : prev)
    uf.unite(static_cast<std::int32_t>(k / rank), static_cast<std::int32_t>(k % rank));
  v.lhs_in_rhs = true;
  std::int64_t span_rank = 0;
  for (const auto& f : fibers) {
    if (f.empty()) continue;
    std::unordered_set<std::int32_t> roots;
    for (std::int32_t c : f) roots.insert(uf.find(c));
    if (roots.size() > 1) v.lhs_in_rhs = false;
    span_rank += static_cast<std::int64_t>(f.size()) - static_cast<std::int64_t>(roots.size());
  }
  v.window_span_rank = span_rank;
  v.generated = v.surjective && v.lhs_in_rhs && v.rhs_in_lhs;
  v.saturated_equal = v.rhs_in_lhs && (span_rank == v.kernel_generators);
  return v;
}

std::vector<SurjectivityCell> check_condition_i(const Category& cat, int m_max, int n_max) {
  if (m_max < 0 || n_max < 0) throw InvalidInput("check_condition_i: bounds must be >= 0");
  std::vector<SurjectivityCell> out;
  for (int m = 0; m <= m_max; ++m) {
    for (int l = m + 1; l < n_max; ++l) {
      for (int n = l + 1; n <= n_max; ++n) {
        SurjectivityCell cell;
        cell.m = m;
        cell.l = l;
        cell.n = n;
        const std::int64_t nmn = static_cast<std::int64_t>(cat.hom(m, n).size());
        if (nmn == 0) {
          cell.surjective = true;
        } else {
          const std::int64_t a = static_cast<std::int64_t>(cat.hom(l, n).size());
          const std::int64_t b = static_cast<std::int64_t>(cat.hom(m, l).size());
          std::vector<char> hit(static_cast<std::size_t>(nmn), 0);
          if (a > 0 && b > 0) {
            for (std::int32_t e : cat.compose_table(m, l, n)) hit[static_cast<std::size_t>(e)] = 1;
          }
          cell.surjective = true;
          for (std::int64_t i = 0; i < nmn; ++i) {
            if (!hit[static_cast<std::size_t>(i)]) {
              cell.surjective = false;
              cell.unhit = static_cast<int>(i);
              break;
            }
          }
        }
        out.push_back(cell);
      }
    }
  }
  return out;
}

FactorizationReport check_condition_ii(const Category& cat, int d, int m, int n) {
  if (d < 1) throw InvalidInput("check_condition_ii: d must be >= 1");
  if (m < 0 || n <= m + d) throw InvalidInput("check_condition_ii: requires n > m + d >= d");
  FactorizationReport r;
  r.d = d;
  r.m = m;
  r.n = n;
  const std::int64_t na = static_cast<std::int64_t>(cat.hom(m + 1, n).size());
  const std::int64_t nb = static_cast<std::int64_t>(cat.hom(m, m + 1).size());
  const std::int64_t ng = static_cast<std::int64_t>(cat.hom(m + d, n).size());
  const std::int64_t nd = static_cast<std::int64_t>(cat.hom(m + 1, m + d).size());
  if (na == 0 || nb == 0) return r;  // no quadruples to examine

  const auto& t_ab = cat.compose_table(m, m + 1, n);
  const std::vector<std::int32_t>* t_db = nullptr;
  if (nd > 0) t_db = &cat.compose_table(m, m + 1, m + d);

  // factorizations through level m+d, indexed two ways:
  //   by_alpha[alpha] = (gamma, delta) pairs with gamma o delta = alpha
  //   by_ga[gamma][alpha] = deltas, CSR layout
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> by_alpha(
      static_cast<std::size_t>(na));
  std::vector<std::int64_t> ga_off(static_cast<std::size_t>(ng * (na + 1) + 1), 0);
  std::vector<std::int32_t> ga_ent;
  if (ng > 0 && nd > 0) {
    const auto& t_gd = cat.compose_table(m + 1, m + d, n);
    for (std::int64_t g = 0; g < ng; ++g)
      for (std::int64_t dd = 0; dd < nd; ++dd) {
        const std::int32_t a = t_gd[static_cast<std::size_t>(g * nd + dd)];
        by_alpha[static_cast<std::size_t>(a)].emplace_back(static_cast<std::int32_t>(g),
                                                           static_cast<std::int32_t>(dd));
        ++ga_off[static_cast<std::size_t>(g * (na + 1) + a + 1)];
      }
    for (std::size_t i = 1; i < ga_off.size(); ++i) ga_off[i] += ga_off[i - 1];
    ga_ent.resize(static_cast<std::size_t>(ng * nd));
    std::vector<std::int64_t> cursor(ga_off.begin(), ga_off.end() - 1);
    for (std::int64_t g = 0; g < ng; ++g)
      for (std::int64_t dd = 0; dd < nd; ++dd) {
        const std::int32_t a = t_gd[static_cast<std::size_t>(g * nd + dd)];
        ga_ent[static_cast<std::size_t>(cursor[static_cast<std::size_t>(g * (na + 1) + a)]++)] =
            static_cast<std::int32_t>(dd);
      }
  }
  auto deltas_for = [&](std::int32_t gamma, std::int32_t alpha) {
    const std::size_t base = static_cast<std::size_t>(
        static_cast<std::int64_t>(gamma) * (na + 1) + alpha);
    return std::make_pair(ga_off[base], ga_off[base + 1]);
  };

  for (std::int32_t a1 = 0; a1 < na; ++a1) {
    for (std::int32_t a2 = 0; a2 < na; ++a2) {
      const auto& facs1 = by_alpha[static_cast<std::size_t>(a1)];
      for (std::int32_t b1 = 0; b1 < nb; ++b1) {
        const std::int32_t mu = t_ab[static_cast<std::size_t>(
            static_cast<std::int64_t>(a1) * nb + b1)];
        for (std::int32_t b2 = 0; b2 < nb; ++b2) {
          if (t_ab[static_cast<std::size_t>(static_cast<std::int64_t>(a2) * nb + b2)] != mu)
            continue;
          ++r.quadruples;
          bool found = false;
          for (const auto& [gamma, d1] : facs1) {
            const std::int32_t c1 =
                (*t_db)[static_cast<std::size_t>(static_cast<std::int64_t>(d1) * nb + b1)];
            const auto [lo, hi] = deltas_for(gamma, a2);
            for (std::int64_t idx = lo; idx < hi && !found; ++idx) {
              const std::int32_t d2 = ga_ent[static_cast<std::size_t>(idx)];
              if ((*t_db)[static_cast<std::size_t>(static_cast<std::int64_t>(d2) * nb + b2)] ==
                  c1) {
                found = true;
                if (r.quadruples == 1) {
                  r.gamma = gamma;
                  r.delta1 = d1;
                  r.delta2 = d2;
                }
              }
            }
            if (found) break;
          }
          if (!found) {
            r.holds = false;
            r.alpha1 = a1;
            r.alpha2 = a2;
            r.beta1 = b1;
            r.beta2 = b2;
            r.gamma = r.delta1 = r.delta2 = -1;
            return r;
          }
        }
      }
    }
  }
  return r;
}

}  // namespace censtab
