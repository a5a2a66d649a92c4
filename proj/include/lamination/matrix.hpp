// Dense matrix/vector aliases over Eigen plus exact integer kernels.
//
// The exact kernels (product, Bareiss determinant) are written as explicit
// loops instead of Eigen expressions: Eigen's expression templates do not
// instantiate cleanly for boost::multiprecision scalars with this toolchain,
// while plain element access on Eigen storage does. Double-precision callers
// can still pass arbitrary Eigen expressions to the MatrixBase overloads.
#ifndef LAMINATION_MATRIX_HPP
#define LAMINATION_MATRIX_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>

namespace lamination {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Int = boost::multiprecision::cpp_int;

// Incidence matrices hold small nonnegative integers; products of many of
// them are taken in Mat<Int> to stay exact.
using IncidenceMatrix = Mat<std::int64_t>;

template <class Scalar>
Mat<Scalar> exact_product(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("exact_product: shape mismatch");
  Mat<Scalar> out = Mat<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class Scalar>
Vec<Scalar> exact_apply(const Mat<Scalar>& a, const Vec<Scalar>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("exact_apply: shape mismatch");
  Vec<Scalar> out = Vec<Scalar>::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i) += a(i, j) * v(j);
  return out;
}

// Fraction-free Gaussian elimination; exact over Int, no rounding ever.
template <class Scalar>
Scalar bareiss_determinant(Mat<Scalar> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_determinant: not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1), prev(1);
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return Scalar(0);
      for (Eigen::Index j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline Mat<Int> to_exact(const IncidenceMatrix& m) {
  Mat<Int> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Int(m(i, j));
  return out;
}

inline double to_double(const Int& v) { return v.convert_to<double>(); }

inline Mat<double> to_double_matrix(const Mat<Int>& m) {
  Mat<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline Mat<double> to_double_matrix(const IncidenceMatrix& m) {
  return m.cast<double>();
}

inline Int exact_determinant(const IncidenceMatrix& m) {
  return bareiss_determinant<Int>(to_exact(m));
}

}  // namespace lamination

#endif
