#include <censtab/presented_module.hpp>

#include <algorithm>
#include <optional>

namespace censtab {

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = a % p, r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  s0 %= p;
  if (s0 < 0) s0 += p;
  return s0;
}

// Sparse Gaussian elimination, column major.  Over Z (p == 0) only +-1 pivots
// are used and the non-eliminable residue is returned for a dense Smith pass;
// over F_p every nonzero entry is a pivot and elimination runs to completion.
template <class T>
struct SparseElim {
  std::int64_t p;
  std::int32_t nrows;
  std::vector<SparseVecT<T>> cols;
  std::vector<char> col_alive, row_alive;
  std::vector<std::vector<std::int32_t>> row_cols;  // row -> cols that touched it (may be stale)
  long pivots = 0;

  SparseElim(std::int64_t p_, std::int64_t nrows_, std::vector<SparseVecT<T>> cols_)
      : p(p_), nrows(static_cast<std::int32_t>(nrows_)), cols(std::move(cols_)) {
    col_alive.assign(this->cols.size(), 1);
    row_alive.assign(static_cast<std::size_t>(nrows), 1);
    row_cols.assign(static_cast<std::size_t>(nrows), {});
    for (std::size_t j = 0; j < this->cols.size(); ++j) {
      sparse_normalize(this->cols[j]);
      if (p != 0) reduce_col(this->cols[j]);
      if (this->cols[j].empty())
        col_alive[j] = 0;
      else
        for (auto& e : this->cols[j]) row_cols[static_cast<std::size_t>(e.first)].push_back(static_cast<std::int32_t>(j));
    }
  }

  void reduce_col(SparseVecT<T>& v) {
    for (auto& e : v) {
      e.second = static_cast<T>(e.second % static_cast<T>(p));
      if (e.second < 0) e.second = static_cast<T>(e.second + static_cast<T>(p));
    }
    v.erase(std::remove_if(v.begin(), v.end(), [](const auto& e) { return e.second == 0; }),
            v.end());
  }

  static T value_at(const SparseVecT<T>& c, std::int32_t row) {
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const auto& e, std::int32_t r) { return e.first < r; });
    if (it != c.end() && it->first == row) return it->second;
    return T(0);
  }

  bool pick_pivot(const SparseVecT<T>& c, std::int32_t& row, T& val) const {
    bool found = false;
    std::size_t best_sz = 0;
    for (const auto& e : c) {
      if (p == 0 && !(e.second == 1 || e.second == -1)) continue;
      std::size_t sz = row_cols[static_cast<std::size_t>(e.first)].size();
      if (!found || sz < best_sz) {
        found = true;
        best_sz = sz;
        row = e.first;
        val = e.second;
      }
    }
    return found;
  }

  // target += f * piv; the entry at pivot_row cancels exactly.
  void axpy_into(std::int32_t cidx, const T& f, const SparseVecT<T>& piv) {
    SparseVecT<T>& v = cols[static_cast<std::size_t>(cidx)];
    SparseVecT<T> out;
    out.reserve(v.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < piv.size()) {
      if (j >= piv.size() || (i < v.size() && v[i].first < piv[j].first)) {
        out.push_back(v[i++]);
      } else if (i >= v.size() || piv[j].first < v[i].first) {
        T val = ScalarOps<T>::mul(f, piv[j].second);
        if (p != 0) val = mod_p(val);
        if (val != 0) {
          out.emplace_back(piv[j].first, val);
          row_cols[static_cast<std::size_t>(piv[j].first)].push_back(cidx);
        }
        ++j;
      } else {
        T val = ScalarOps<T>::add(v[i].second, ScalarOps<T>::mul(f, piv[j].second));
        if (p != 0) val = mod_p(val);
        if (val != 0) out.emplace_back(v[i].first, val);
        ++i; ++j;
      }
    }
    v = std::move(out);
  }

  T mod_p(T a) const {
    T r = static_cast<T>(a % static_cast<T>(p));
    if (r < 0) r = static_cast<T>(r + static_cast<T>(p));
    return r;
  }

  void eliminate(std::int32_t j, std::int32_t r, const T& pval) {
    SparseVecT<T> piv = std::move(cols[static_cast<std::size_t>(j)]);
    cols[static_cast<std::size_t>(j)].clear();
    col_alive[static_cast<std::size_t>(j)] = 0;
    row_alive[static_cast<std::size_t>(r)] = 0;
    ++pivots;
    std::vector<std::int32_t> at_r = std::move(row_cols[static_cast<std::size_t>(r)]);
    row_cols[static_cast<std::size_t>(r)].clear();
    T neg_inv = (p != 0) ? mod_p(static_cast<T>(static_cast<T>(p) - T(mod_inverse(static_cast<std::int64_t>(pval), p))))
                         : pval;  // over Z pval is +-1 and -1/pval = -pval; sign handled below
    for (std::int32_t c : at_r) {
      if (c == j || !col_alive[static_cast<std::size_t>(c)]) continue;
      T v = value_at(cols[static_cast<std::size_t>(c)], r);
      if (v == 0) continue;  // stale entry
      T f;
      if (p != 0)
        f = mod_p(ScalarOps<T>::mul(v, neg_inv));
      else
        f = ScalarOps<T>::neg(ScalarOps<T>::mul(v, pval));
      axpy_into(c, f, piv);
      if (cols[static_cast<std::size_t>(c)].empty()) col_alive[static_cast<std::size_t>(c)] = 0;
    }
  }

  void run() {
    bool progress = true;
    while (progress) {
      progress = false;
      // thin columns first: eliminating a 2-entry column just merges two rows
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (!col_alive[j] || cols[j].size() > 2) continue;
        std::int32_t r = -1;
        T val{};
        if (pick_pivot(cols[j], r, val)) {
          eliminate(static_cast<std::int32_t>(j), r, val);
          progress = true;
        }
      }
      if (progress) continue;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (!col_alive[j]) continue;
        std::int32_t r = -1;
        T val{};
        if (pick_pivot(cols[j], r, val)) {
          eliminate(static_cast<std::int32_t>(j), r, val);
          progress = true;
        }
      }
    }
  }

  // residual entries on alive rows/cols, as a compact dense matrix; duplicate
  // columns (up to sign) are dropped first, which shrinks the Smith pass a lot
  // when many copies of one relation survive
  MatZ residual() const {
    std::vector<std::int32_t> row_map(static_cast<std::size_t>(nrows), -1);
    std::int32_t nr = 0;
    std::vector<SparseVecT<T>> live;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!col_alive[j] || cols[j].empty()) continue;
      SparseVecT<T> c = cols[j];
      if (p == 0 && c.front().second < 0)
        for (auto& e : c) e.second = ScalarOps<T>::neg(e.second);
      live.push_back(std::move(c));
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    for (const auto& c : live)
      for (const auto& e : c)
        if (row_map[static_cast<std::size_t>(e.first)] < 0) row_map[static_cast<std::size_t>(e.first)] = nr++;
    MatZ core = MatZ::Zero(nr, static_cast<Eigen::Index>(live.size()));
    for (std::size_t k = 0; k < live.size(); ++k)
      for (const auto& e : live[k])
        core(row_map[static_cast<std::size_t>(e.first)], static_cast<Eigen::Index>(k)) = Int(e.second);
    return core;
  }
};

template <class T>
std::vector<SparseVecT<T>> narrow_cols(const std::vector<SparseVec>& cols);

template <>
std::vector<SparseVecT<Int>> narrow_cols<Int>(const std::vector<SparseVec>& cols) {
  return cols;
}

template <>
std::vector<SparseVecT<std::int64_t>> narrow_cols<std::int64_t>(const std::vector<SparseVec>& cols) {
  static const Int kLimit = Int(1) << 40;
  std::vector<SparseVecT<std::int64_t>> out(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out[j].reserve(cols[j].size());
    for (const auto& e : cols[j]) {
      if (abs(e.second) > kLimit) throw Int64Overflow{};
      out[j].emplace_back(e.first, static_cast<std::int64_t>(e.second));
    }
  }
  return out;
}

template <class T>
std::vector<Int> ifac_z_engine(std::int64_t ambient, const std::vector<SparseVec>& relations) {
  SparseElim<T> elim(0, ambient, narrow_cols<T>(relations));
  elim.run();
  MatZ core = elim.residual();
  if (core.rows() > 2048 || core.cols() > 8192)
    throw ResourceLimit("residual dense block too large: " + std::to_string(core.rows()) +
                        "x" + std::to_string(core.cols()));
  std::vector<Int> diag = smith_diagonal(std::move(core));
  std::vector<Int> factors;
  Eigen::Index core_rank = 0;
  for (const Int& d : diag) {
    if (d == 0) continue;
    ++core_rank;
    if (d > 1) factors.push_back(d);
  }
  const std::int64_t free_rank = ambient - elim.pivots - core_rank;
  for (std::int64_t i = 0; i < free_rank; ++i) factors.emplace_back(0);
  return factors;
}

long fp_rank(std::int64_t p, std::int64_t ambient, const std::vector<SparseVec>& relations) {
  SparseElim<std::int64_t> elim(p, ambient, narrow_cols<std::int64_t>(relations));
  elim.run();
  return elim.pivots;
}

}  // namespace

std::vector<Int> invariant_factors(const PresentedModule& m) {
  if (m.ring.is_field()) {
    // all columns fit int64 after reduction mod p; reduce first
    std::vector<SparseVec> reduced = m.relations;
    for (auto& c : reduced) reduce_mod_p(c, m.ring.p);
    long rank = fp_rank(m.ring.p, m.ambient, reduced);
    return std::vector<Int>(static_cast<std::size_t>(m.ambient - rank), Int(0));
  }
  try {
    return ifac_z_engine<std::int64_t>(m.ambient, m.relations);
  } catch (const Int64Overflow&) {
    return ifac_z_engine<Int>(m.ambient, m.relations);
  }
}

PresentedModule cokernel(const ModuleMap& f) {
  PresentedModule out = f.codomain;
  out.relations.reserve(out.relations.size() + f.cols.size());
  for (const auto& c : f.cols) out.relations.push_back(c);
  return out;
}

SparseVec apply(const ModuleMap& f, const SparseVec& x) {
  SparseVec out;
  for (const auto& [i, c] : x) {
    const SparseVec& col = f.cols.at(static_cast<std::size_t>(i));
    for (const auto& [r, v] : col) out.emplace_back(r, c * v);
  }
  sparse_normalize(out);
  if (f.codomain.ring.is_field()) reduce_mod_p(out, f.codomain.ring.p);
  return out;
}

ModuleMap compose_maps(const ModuleMap& g, const ModuleMap& f) {
  if (f.codomain.ambient != g.domain.ambient) {
    throw InvalidInput("maps are not composable: ambient ranks differ");
  }
  ModuleMap h;
  h.domain = f.domain;
  h.codomain = g.codomain;
  h.cols.reserve(f.cols.size());
  for (const auto& col : f.cols) h.cols.push_back(apply(g, col));
  return h;
}

namespace {

// Dense [F | RW] matrix whose kernel projects onto {x : f(x) = 0}.
MatZ combined_matrix(const ModuleMap& f) {
  const Eigen::Index rows = f.codomain.ambient;
  const Eigen::Index nf = f.domain.ambient;
  const Eigen::Index nw = static_cast<Eigen::Index>(f.codomain.relations.size());
  if (rows * (nf + nw) > 8'000'000)
    throw ResourceLimit("kernel computation too large: " + std::to_string(rows) + "x" +
                        std::to_string(nf + nw));
  MatZ M = MatZ::Zero(rows, nf + nw);
  for (Eigen::Index j = 0; j < nf; ++j)
    for (const auto& [r, v] : f.cols[static_cast<std::size_t>(j)]) M(r, j) = v;
  for (Eigen::Index j = 0; j < nw; ++j)
    for (const auto& [r, v] : f.codomain.relations[static_cast<std::size_t>(j)]) M(r, nf + j) = v;
  return M;
}

std::vector<SparseVec> kernel_submodule_gens(const ModuleMap& f) {
  MatZ M = combined_matrix(f);
  MatZ K = f.domain.ring.is_field() ? kernel_basis_mod_p(M, f.domain.ring.p) : kernel_basis(M);
  std::vector<SparseVec> gens;
  for (Eigen::Index j = 0; j < K.cols(); ++j) {
    SparseVec col;
    for (Eigen::Index i = 0; i < f.domain.ambient; ++i)
      if (K(i, j) != 0) col.emplace_back(static_cast<std::int32_t>(i), K(i, j));
    if (col.empty()) continue;
    if (col.front().second < 0 && !f.domain.ring.is_field())
      for (auto& e : col) e.second = -e.second;
    gens.push_back(std::move(col));
  }
  return gens;
}

}  // namespace

std::vector<SparseVec> kernel_generators(const ModuleMap& f) {
  return kernel_submodule_gens(f);
}

std::vector<Int> kernel_invariants(const ModuleMap& f) {
  std::vector<SparseVec> gens = kernel_submodule_gens(f);
  if (f.domain.ring.is_field()) {
    SpanBuilder<std::int64_t> span(f.domain.ring.p);
    for (const auto& g : gens) {
      SparseVecT<std::int64_t> v;
      for (const auto& [r, c] : g) v.emplace_back(r, static_cast<std::int64_t>(c % f.domain.ring.p));
      span.insert(std::move(v));
    }
    SpanBuilder<std::int64_t> rel_coords_span(f.domain.ring.p);
    long rel_rank = 0;
    {
      for (const auto& rl : f.domain.relations) {
        SparseVecT<std::int64_t> v;
        for (const auto& [r, c] : rl) v.emplace_back(r, static_cast<std::int64_t>(c % f.domain.ring.p));
        auto coords = span.coordinates(std::move(v));
        if (!coords) throw InvalidInput("map is not well-defined: relation outside kernel span");
        if (rel_coords_span.insert(std::move(*coords))) ++rel_rank;
      }
    }
    return std::vector<Int>(span.size() - static_cast<std::size_t>(rel_rank), Int(0));
  }
  SpanBuilder<Int> span;
  for (const auto& g : gens) span.insert(g);
  std::vector<SparseVec> rel_coords;
  for (const auto& rl : f.domain.relations) {
    auto coords = span.coordinates(rl);
    if (!coords) throw InvalidInput("map is not well-defined: relation outside kernel span");
    rel_coords.push_back(std::move(*coords));
  }
  PresentedModule ker{f.domain.ring, static_cast<std::int64_t>(span.size()), std::move(rel_coords)};
  return invariant_factors(ker);
}

IsoVerdict is_isomorphism(const ModuleMap& f) {
  if (f.domain.ring != f.codomain.ring)
    throw InvalidInput("is_isomorphism: mismatched coefficient rings");
  IsoVerdict v;
  v.cokernel_invariants = invariant_factors(cokernel(f));
  if (v.cokernel_invariants.empty()) {
    // surjective; a surjection between modules with equal invariant factors
    // over Z (or equal dimension over F_p) is an isomorphism
    std::vector<Int> dom = invariant_factors(f.domain);
    std::vector<Int> cod = invariant_factors(f.codomain);
    if (dom == cod) {
      v.iso = true;
      return v;
    }
  }
  v.iso = false;
  v.kernel_invariants = kernel_invariants(f);
  return v;
}

bool is_well_defined(const ModuleMap& f) {
  if (static_cast<std::int64_t>(f.cols.size()) != f.domain.ambient) return false;
  SpanBuilder<Int> target;
  for (const auto& r : f.codomain.relations) {
    SparseVec v = r;
    if (f.codomain.ring.is_field()) reduce_mod_p(v, f.codomain.ring.p);
    target.insert(std::move(v));
  }
  if (f.codomain.ring.is_field()) {
    // work mod p: add p * e_i rows
    for (std::int32_t i = 0; i < f.codomain.ambient; ++i)
      target.insert(SparseVec{{i, Int(f.codomain.ring.p)}});
  }
  for (const auto& rl : f.domain.relations)
    if (!target.contains(apply(f, rl))) return false;
  return true;
}

bool submodule_equal(const PresentedModule& m, const std::vector<SparseVec>& gens_a,
                     const std::vector<SparseVec>& gens_b) {
  const std::int64_t p = m.ring.is_field() ? m.ring.p : 0;
  SpanBuilder<Int> a(p), b(p);
  for (const auto& r : m.relations) {
    a.insert(r);
    b.insert(r);
  }
  for (const auto& g : gens_a) a.insert(g);
  for (const auto& g : gens_b) b.insert(g);
  return a.contains_all(b) && b.contains_all(a);
}

}  // namespace censtab
