#include <censtab/normal_forms.hpp>

#include <cstdlib>

namespace censtab {

Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int r0 = a, r1 = b;
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    Int t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  s = s0; t = t0;
  return r0;
}

namespace {

// Smallest nonzero |entry| in the trailing submatrix starting at (t, t).
bool find_pivot(const MatZ& R, Eigen::Index t, Eigen::Index& pi, Eigen::Index& pj) {
  bool found = false;
  Int best = 0;
  for (Eigen::Index j = t; j < R.cols(); ++j)
    for (Eigen::Index i = t; i < R.rows(); ++i) {
      if (R(i, j) == 0) continue;
      Int a = abs(R(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace

SmithResult smith_normal_form(const MatZ& M) {
  const Eigen::Index rows = M.rows(), cols = M.cols();
  SmithResult res;
  res.D = M;
  res.U = MatZ::Identity(rows, rows);
  res.V = MatZ::Identity(cols, cols);
  MatZ& R = res.D;
  MatZ& U = res.U;
  MatZ& V = res.V;

  Eigen::Index t = 0;
  const Eigen::Index rank_bound = std::min(rows, cols);
  while (t < rank_bound) {
    Eigen::Index pi = 0, pj = 0;
    if (!find_pivot(R, t, pi, pj)) break;
    if (pi != t) { R.row(pi).swap(R.row(t)); U.row(pi).swap(U.row(t)); }
    if (pj != t) { R.col(pj).swap(R.col(t)); V.col(pj).swap(V.col(t)); }

    bool clean = false;
    while (!clean) {
      clean = true;
      // clear column t
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (R(i, t) == 0) continue;
        Int q = R(i, t) / R(t, t);
        if (q != 0) { R.row(i) -= q * R.row(t); U.row(i) -= q * U.row(t); }
        if (R(i, t) != 0) {  // remainder smaller than pivot: swap up and restart
          R.row(i).swap(R.row(t));
          U.row(i).swap(U.row(t));
          clean = false;
        }
      }
      if (!clean) continue;
      // clear row t
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (R(t, j) == 0) continue;
        Int q = R(t, j) / R(t, t);
        if (q != 0) { R.col(j) -= q * R.col(t); V.col(j) -= q * V.col(t); }
        if (R(t, j) != 0) {
          R.col(j).swap(R.col(t));
          V.col(j).swap(V.col(t));
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      for (Eigen::Index i = t + 1; i < rows && clean; ++i)
        for (Eigen::Index j = t + 1; j < cols && clean; ++j)
          if (R(i, j) % R(t, t) != 0) {
            R.row(t) += R.row(i);
            U.row(t) += U.row(i);
            clean = false;
          }
    }
    if (R(t, t) < 0) { R.row(t) = -R.row(t); U.row(t) = -U.row(t); }
    ++t;
  }
  return res;
}

std::vector<Int> smith_diagonal(MatZ M) {
  MatZ& R = M;
  const Eigen::Index rows = R.rows(), cols = R.cols();
  std::vector<Int> diag;
  Eigen::Index t = 0;
  const Eigen::Index rank_bound = std::min(rows, cols);
  while (t < rank_bound) {
    Eigen::Index pi = 0, pj = 0;
    if (!find_pivot(R, t, pi, pj)) break;
    if (pi != t) R.row(pi).swap(R.row(t));
    if (pj != t) R.col(pj).swap(R.col(t));
    bool clean = false;
    while (!clean) {
      clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (R(i, t) == 0) continue;
        Int q = R(i, t) / R(t, t);
        if (q != 0) R.row(i).tail(cols - t) -= q * R.row(t).tail(cols - t);
        if (R(i, t) != 0) {
          R.row(i).swap(R.row(t));
          clean = false;
        }
      }
      if (!clean) continue;
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (R(t, j) == 0) continue;
        Int q = R(t, j) / R(t, t);
        if (q != 0) R.col(j).tail(rows - t) -= q * R.col(t).tail(rows - t);
        if (R(t, j) != 0) {
          R.col(j).swap(R.col(t));
          clean = false;
        }
      }
      if (!clean) continue;
      for (Eigen::Index i = t + 1; i < rows && clean; ++i)
        for (Eigen::Index j = t + 1; j < cols && clean; ++j)
          if (R(i, j) % R(t, t) != 0) {
            R.row(t) += R.row(i);
            clean = false;
          }
    }
    diag.push_back(abs(R(t, t)));
    ++t;
  }
  return diag;
}

MatZ hermite_normal_form(const MatZ& M) {
  MatZ H = M;
  const Eigen::Index rows = H.rows(), cols = H.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    // gcd-out column c using rows >= r
    while (true) {
      Eigen::Index best = -1;
      Int bestAbs = 0;
      for (Eigen::Index i = r; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        Int a = abs(H(i, c));
        if (best < 0 || a < bestAbs) { best = i; bestAbs = a; }
      }
      if (best < 0) break;
      if (best != r) H.row(best).swap(H.row(r));
      bool done = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        Int q = H(i, c) / H(r, c);
        if (q != 0) H.row(i) -= q * H.row(r);
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) != 0) {
      if (H(r, c) < 0) H.row(r) = -H.row(r);
      for (Eigen::Index i = 0; i < r; ++i) {
        Int q = floordiv(H(i, c), H(r, c));
        if (q != 0) H.row(i) -= q * H.row(r);
      }
      ++r;
    }
  }
  return H;
}

MatZ rref_mod_p(const MatZ& M, std::int64_t p) {
  RingSpec ring = RingSpec::prime_field(p);  // validates p
  (void)ring;
  MatZ A = M;
  const Eigen::Index rows = A.rows(), cols = A.cols();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = floormod(A(i, j), Int(p));

  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (A(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) A.row(piv).swap(A.row(r));
    // scale pivot to 1
    Int s, t;
    xgcd(A(r, c), Int(p), s, t);
    s = floormod(s, Int(p));
    for (Eigen::Index j = c; j < cols; ++j) A(r, j) = floormod(A(r, j) * s, Int(p));
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || A(i, c) == 0) continue;
      Int f = A(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        A(i, j) = floormod(A(i, j) - f * A(r, j), Int(p));
    }
    ++r;
  }
  return A;
}

MatZ kernel_basis(const MatZ& M) {
  const Eigen::Index rows = M.rows(), cols = M.cols();
  MatZ B = M;
  MatZ T = MatZ::Identity(cols, cols);
  Eigen::Index r = 0;  // columns consumed as pivots
  for (Eigen::Index i = 0; i < rows && r < cols; ++i) {
    // gcd-out row i across columns >= r
    bool has_pivot = false;
    while (true) {
      Eigen::Index best = -1;
      Int bestAbs = 0;
      for (Eigen::Index j = r; j < cols; ++j) {
        if (B(i, j) == 0) continue;
        Int a = abs(B(i, j));
        if (best < 0 || a < bestAbs) { best = j; bestAbs = a; }
      }
      if (best < 0) break;  // row already zero beyond pivots
      has_pivot = true;
      if (best != r) { B.col(best).swap(B.col(r)); T.col(best).swap(T.col(r)); }
      bool done = true;
      for (Eigen::Index j = r + 1; j < cols; ++j) {
        if (B(i, j) == 0) continue;
        Int q = B(i, j) / B(i, r);
        if (q != 0) { B.col(j) -= q * B.col(r); T.col(j) -= q * T.col(r); }
        if (B(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (has_pivot) ++r;
  }
  return T.rightCols(cols - r);
}

MatZ kernel_basis_mod_p(const MatZ& M, std::int64_t p) {
  MatZ R = rref_mod_p(M, p);
  const Eigen::Index rows = R.rows(), cols = R.cols();
  std::vector<Eigen::Index> pivot_col;
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c)
    if (R(r, c) != 0) {
      pivot_col.push_back(c);
      is_pivot[static_cast<std::size_t>(c)] = true;
      ++r;
    }
  MatZ K = MatZ::Zero(cols, cols - static_cast<Eigen::Index>(pivot_col.size()));
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    K(c, k) = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (R(static_cast<Eigen::Index>(i), c) != 0)
        K(pivot_col[i], k) = floormod(-R(static_cast<Eigen::Index>(i), c), Int(p));
    ++k;
  }
  return K;
}

}  // namespace censtab
