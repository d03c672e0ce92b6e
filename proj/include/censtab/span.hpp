#ifndef CENSTAB_SPAN_HPP
#define CENSTAB_SPAN_HPP

#include <censtab/matrix.hpp>

#include <map>
#include <optional>

namespace censtab {

// Incrementally maintained triangular generating set of a submodule of R^n.
//
// Over Z the rows form a lattice basis in (non-reduced) echelon form: one
// vector per leading index, positive leading coefficient.  Membership is the
// greedy exact-division reduction, which is sound for triangular bases.
// Over F_p leading coefficients are scaled to 1.
template <class T>
class SpanBuilder {
 public:
  using Vec = SparseVecT<T>;

  explicit SpanBuilder(std::int64_t p = 0) : p_(p) {}  // p == 0 means Z

  // Adds v to the span; returns true when the span grew.
  bool insert(Vec v) {
    reduce_mod(v);
    bool grew = false;
    while (!v.empty()) {
      const std::int32_t lead = v.front().first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        normalize_leading(v);
        pivots_.emplace(lead, std::move(v));
        return true;
      }
      Vec& piv = it->second;
      if (p_ != 0) {
        // pivot lead is 1: cancel directly
        v = axpy(v, neg_mod(v.front().second), piv);
        continue;
      }
      const T a = piv.front().second;  // > 0
      const T b = v.front().second;
      if (b % a == 0) {
        v = axpy(v, ScalarOps<T>::neg(b / a), piv);
        continue;
      }
      // replace the pivot by the gcd combination; the complementary row of
      // the unimodular 2x2 transform keeps the lattice unchanged:
      //   [ s      t   ] [piv]   [combo]
      //   [-b/g   a/g  ] [ v ] = [ v'  ]
      T s, t, g;
      g = xgcd_t(a, b, s, t);
      Vec combo = lin(s, piv, t, v);  // leading coeff g > 0
      Vec vnext = lin(a / g, v, ScalarOps<T>::neg(b / g), piv);
      v = std::move(vnext);
      piv = std::move(combo);
      grew = true;
    }
    return grew;
  }

  // True when v lies in the span.
  bool contains(Vec v) const {
    reduce_mod(v);
    while (!v.empty()) {
      auto it = pivots_.find(v.front().first);
      if (it == pivots_.end()) return false;
      const Vec& piv = it->second;
      if (p_ == 0) {
        const T a = piv.front().second;
        const T b = v.front().second;
        if (b % a != 0) return false;
        v = axpy(v, ScalarOps<T>::neg(b / a), piv);
      } else {
        v = axpy(v, neg_mod(v.front().second), piv);
      }
    }
    return true;
  }

  std::size_t size() const { return pivots_.size(); }

  // Basis vectors ordered by leading index.
  std::vector<const Vec*> basis() const {
    std::vector<const Vec*> out;
    out.reserve(pivots_.size());
    for (const auto& [lead, vec] : pivots_) out.push_back(&vec);
    return out;
  }

  // Coordinates of v in the triangular basis, as (basis position, multiplier)
  // pairs, or nullopt when v is not in the span.
  std::optional<SparseVecT<T>> coordinates(Vec v) const {
    std::map<std::int32_t, std::int32_t> pos;  // leading index -> basis position
    {
      std::int32_t k = 0;
      for (const auto& [lead, vec] : pivots_) pos[lead] = k++;
    }
    reduce_mod(v);
    SparseVecT<T> out;
    while (!v.empty()) {
      auto it = pivots_.find(v.front().first);
      if (it == pivots_.end()) return std::nullopt;
      const Vec& piv = it->second;
      T q;
      if (p_ == 0) {
        const T a = piv.front().second;
        const T b = v.front().second;
        if (b % a != 0) return std::nullopt;
        q = b / a;
      } else {
        q = v.front().second;  // pivot lead is 1
      }
      out.emplace_back(pos.at(it->first), q);
      v = axpy(v, ScalarOps<T>::neg(q), piv);
    }
    sparse_normalize(out);
    return out;
  }

  bool contains_all(const SpanBuilder& other) const {
    for (const auto& [lead, vec] : other.pivots_)
      if (!contains(vec)) return false;
    return true;
  }

 private:
  static T xgcd_t(T a, T b, T& s, T& t) {
    T r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      T q = r0 / r1;
      T r2 = ScalarOps<T>::sub(r0, ScalarOps<T>::mul(q, r1));
      T s2 = ScalarOps<T>::sub(s0, ScalarOps<T>::mul(q, s1));
      T t2 = ScalarOps<T>::sub(t0, ScalarOps<T>::mul(q, t1));
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
      t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = ScalarOps<T>::neg(r0); s0 = ScalarOps<T>::neg(s0); t0 = ScalarOps<T>::neg(t0); }
    s = s0; t = t0;
    return r0;
  }

  void reduce_mod(Vec& v) const {
    if (p_ == 0) return;
    for (auto& e : v) {
      e.second = static_cast<T>(e.second % static_cast<T>(p_));
      if (e.second < 0) e.second = static_cast<T>(e.second + static_cast<T>(p_));
    }
    v.erase(std::remove_if(v.begin(), v.end(), [](const auto& e) { return e.second == 0; }),
            v.end());
  }

  T neg_mod(T a) const { return static_cast<T>(static_cast<T>(p_) - a); }

  // out = v + c * w, sorted-merge; entries reduced mod p when applicable.
  Vec axpy(const Vec& v, const T& c, const Vec& w) const {
    Vec out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
      if (j >= w.size() || (i < v.size() && v[i].first < w[j].first)) {
        out.push_back(v[i++]);
      } else if (i >= v.size() || w[j].first < v[i].first) {
        T val = ScalarOps<T>::mul(c, w[j].second);
        if (p_ != 0) val = mod_p(val);
        if (val != 0) out.emplace_back(w[j].first, val);
        ++j;
      } else {
        T val = ScalarOps<T>::add(v[i].second, ScalarOps<T>::mul(c, w[j].second));
        if (p_ != 0) val = mod_p(val);
        if (val != 0) out.emplace_back(v[i].first, val);
        ++i; ++j;
      }
    }
    return out;
  }

  Vec lin(const T& a, const Vec& v, const T& b, const Vec& w) const {
    Vec av;
    av.reserve(v.size());
    for (const auto& e : v) {
      T val = ScalarOps<T>::mul(a, e.second);
      if (p_ != 0) val = mod_p(val);
      if (val != 0) av.emplace_back(e.first, val);
    }
    return axpy(av, b, w);
  }

  T mod_p(T a) const {
    T r = static_cast<T>(a % static_cast<T>(p_));
    if (r < 0) r = static_cast<T>(r + static_cast<T>(p_));
    return r;
  }

  void normalize_leading(Vec& v) const {
    if (p_ == 0) {
      if (v.front().second < 0)
        for (auto& e : v) e.second = ScalarOps<T>::neg(e.second);
      return;
    }
    // scale so the leading coefficient is 1
    T s, t;
    xgcd_t(v.front().second, static_cast<T>(p_), s, t);
    s = mod_p(s);
    if (s != 1)
      for (auto& e : v) e.second = mod_p(ScalarOps<T>::mul(e.second, s));
  }

  std::int64_t p_;
  std::map<std::int32_t, Vec> pivots_;
};

}  // namespace censtab

#endif
