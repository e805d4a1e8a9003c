// matrix.hpp
// Dense matrix aliases. Eigen is the only matrix library.
#ifndef FINITYPE_MATRIX_HPP
#define FINITYPE_MATRIX_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "finitype/exactfield.hpp"

namespace finitype {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalMatrix = Matrix<Rational>;

template <class Scalar>
Matrix<double> to_double(const Matrix<Scalar>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = static_cast<double>(m(i, j));
  return out;
}

}  // namespace finitype

#endif  // FINITYPE_MATRIX_HPP
