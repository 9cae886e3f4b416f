#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ptnoise {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Matrices whose condition number exceeds this are treated as singular.
inline constexpr double kDefaultConditionCap = 1e12;

/// 2N x 2N scattering matrix with rows/columns ordered (left modes, right
/// modes):
///
///     S = | r   t' |
///         | t   r' |
///
/// r, t' act on waves arriving from the left/right and leaving to the left;
/// t, r' leave to the right.
class ScatteringMatrix {
 public:
  explicit ScatteringMatrix(CMatrix data);

  static ScatteringMatrix from_blocks(const CMatrix& r, const CMatrix& tp,
                                      const CMatrix& t, const CMatrix& rp);

  int n_modes() const noexcept { return n_; }
  const CMatrix& data() const noexcept { return data_; }

  CMatrix r() const { return data_.topLeftCorner(n_, n_); }
  CMatrix tp() const { return data_.topRightCorner(n_, n_); }
  CMatrix t() const { return data_.bottomLeftCorner(n_, n_); }
  CMatrix rp() const { return data_.bottomRightCorner(n_, n_); }

  cdouble operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

 private:
  int n_;
  CMatrix data_;
};

double max_abs(const CMatrix& m);
double max_abs_diff(const ScatteringMatrix& a, const ScatteringMatrix& b);

// Ratio of largest to smallest singular value; +inf for exactly singular.
double condition_number(const CMatrix& m);

// Smallest/largest singular value.
double min_singular_value(const CMatrix& m);
double max_singular_value(const CMatrix& m);

// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const CMatrix& m);

// Inverse via full-pivot LU; throws SingularMatrix past the cap.
CMatrix checked_inverse(const CMatrix& m, double condition_cap = kDefaultConditionCap);

// Pauli sigma_x acting on the two N-blocks.
CMatrix sigma_x(int n_modes);

}  // namespace ptnoise
