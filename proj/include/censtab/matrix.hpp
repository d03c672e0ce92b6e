#ifndef CENSTAB_MATRIX_HPP
#define CENSTAB_MATRIX_HPP

#include <censtab/integers.hpp>
#include <censtab/ring.hpp>

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace censtab {

using MatZ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// Sparse column vector: (row, coefficient) pairs, sorted by row, coefficients
// nonzero.  This is the workhorse representation for the large presentations
// produced by the colimit and tensor constructions.
template <class T>
using SparseVecT = std::vector<std::pair<std::int32_t, T>>;

using SparseVec = SparseVecT<Int>;

template <class T>
void sparse_normalize(SparseVecT<T>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVecT<T> out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(e);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second == 0; }),
            out.end());
  v = std::move(out);
}

// Plain triple-loop product.  Eigen's operator* overload set probes
// std::is_convertible<Matrix, Scalar>, which blows up inside cpp_int's
// byte-container constructor trait (non-vector matrices have
// const_iterator = void); matrix products must go through here.
inline MatZ mat_mul(const MatZ& a, const MatZ& b) {
  MatZ out = MatZ::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline MatZ columns_to_dense(Eigen::Index rows, const std::vector<SparseVec>& cols) {
  MatZ m = MatZ::Zero(rows, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (const auto& [r, c] : cols[static_cast<std::size_t>(j)]) m(r, j) = c;
  return m;
}

inline std::vector<SparseVec> dense_to_columns(const MatZ& m) {
  std::vector<SparseVec> cols(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) cols[static_cast<std::size_t>(j)].emplace_back(static_cast<std::int32_t>(i), m(i, j));
  return cols;
}

// Reduce a column modulo p into [0, p).
inline void reduce_mod_p(SparseVec& v, std::int64_t p) {
  for (auto& e : v) e.second = floormod(e.second, Int(p));
  v.erase(std::remove_if(v.begin(), v.end(), [](const auto& e) { return e.second == 0; }),
          v.end());
}

}  // namespace censtab

#endif
