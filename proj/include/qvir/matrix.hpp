#ifndef QVIR_MATRIX_HPP
#define QVIR_MATRIX_HPP

#include <Eigen/Core>

#include "qvir/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<qvir::Rat> : GenericNumTraits<qvir::Rat> {
  typedef qvir::Rat Real;
  typedef qvir::Rat NonInteger;
  typedef qvir::Rat Nested;
  typedef qvir::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 64,
    MulCost = 64
  };
  static inline qvir::Rat epsilon() { return qvir::Rat(); }
  static inline qvir::Rat dummy_precision() { return qvir::Rat(); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qvir {

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

inline RatMatrix rat_matrix(Eigen::Index rows, Eigen::Index cols,
                            const RegistryPtr& reg) {
  RatMatrix m(rows, cols);
  m.setConstant(Rat::zero(reg));
  return m;
}

inline RatVector rat_vector(Eigen::Index n, const RegistryPtr& reg) {
  RatVector v(n);
  v.setConstant(Rat::zero(reg));
  return v;
}

// Fraction-free-ish Gaussian elimination with first-nonzero pivoting. Exact;
// no magnitude comparisons, so it works over any rational-function field.
// Throws Error on a singular system.
RatVector gauss_solve(RatMatrix a, RatVector b);

RatMatrix gauss_inverse(const RatMatrix& a);

// Rank of a (possibly non-square) matrix by exact elimination.
int gauss_rank(RatMatrix a);

inline bool matrix_eq(const RatMatrix& a, const RatMatrix& b,
                      bool fingerprint_first = true) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).eq(b(i, j), fingerprint_first)) return false;
  return true;
}

inline bool matrix_is_zero(const RatMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !a(i, j).eq(Rat::zero(a(i, j).reg()))) return false;
  return true;
}

}  // namespace qvir

#endif
