#include "qvir/matrix.hpp"

namespace qvir {

namespace {

// Returns the row index >= r with a nonzero entry in column c, or -1.
// Entries from earlier eliminations are not auto-simplified, so use semantic
// zero tests.
int find_pivot(const RatMatrix& a, Eigen::Index r, Eigen::Index c) {
  for (Eigen::Index i = r; i < a.rows(); ++i)
    if (!a(i, c).is_zero() && !a(i, c).eq(Rat::zero(a(i, c).reg()))) return i;
  return -1;
}

}  // namespace

RatVector gauss_solve(RatMatrix a, RatVector b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw Error("gauss_solve: shape mismatch");
  for (Eigen::Index c = 0; c < n; ++c) {
    int p = find_pivot(a, c, c);
    if (p < 0) throw Error("gauss_solve: singular matrix");
    if (p != c) {
      a.row(p).swap(a.row(c));
      std::swap(b(p), b(c));
    }
    Rat inv = Rat::one(a(c, c).reg()) / a(c, c);
    for (Eigen::Index j = c; j < n; ++j) a(c, j) = a(c, j) * inv;
    b(c) = b(c) * inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      Rat f = a(i, c);
      for (Eigen::Index j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
      b(i) = b(i) - f * b(c);
    }
  }
  return b;
}

RatMatrix gauss_inverse(const RatMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error("gauss_inverse: not square");
  const RegistryPtr reg = a(0, 0).reg();
  RatMatrix m(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, n + j) = i == j ? Rat::one(reg) : Rat::zero(reg);
    }
  for (Eigen::Index c = 0; c < n; ++c) {
    int p = find_pivot(m, c, c);
    if (p < 0) throw Error("gauss_inverse: singular matrix");
    if (p != c) m.row(p).swap(m.row(c));
    Rat inv = Rat::one(reg) / m(c, c);
    for (Eigen::Index j = c; j < 2 * n; ++j) m(c, j) = m(c, j) * inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      Rat f = m(i, c);
      for (Eigen::Index j = c; j < 2 * n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return m.rightCols(n);
}

int gauss_rank(RatMatrix a) {
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = find_pivot(a, r, c);
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    Rat inv = Rat::one(a(r, c).reg()) / a(r, c);
    for (Eigen::Index j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rat f = a(i, c);
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace qvir
