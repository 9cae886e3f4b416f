#include "ptnoise/smatrix.hpp"

#include <limits>
#include <string>

#include "ptnoise/errors.hpp"

namespace ptnoise {

ScatteringMatrix::ScatteringMatrix(CMatrix data) : n_(0), data_(std::move(data)) {
  if (data_.rows() != data_.cols() || data_.rows() == 0 || data_.rows() % 2 != 0) {
    throw InvalidParam("scattering matrix must be 2N x 2N with N >= 1, got " +
                       std::to_string(data_.rows()) + " x " + std::to_string(data_.cols()));
  }
  n_ = static_cast<int>(data_.rows() / 2);
}

ScatteringMatrix ScatteringMatrix::from_blocks(const CMatrix& r, const CMatrix& tp,
                                               const CMatrix& t, const CMatrix& rp) {
  const auto n = r.rows();
  for (const CMatrix* b : {&r, &tp, &t, &rp}) {
    if (b->rows() != n || b->cols() != n) {
      throw InvalidParam("scattering matrix blocks must all be N x N");
    }
  }
  CMatrix data(2 * n, 2 * n);
  data << r, tp, t, rp;
  return ScatteringMatrix(std::move(data));
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ScatteringMatrix& a, const ScatteringMatrix& b) {
  if (a.n_modes() != b.n_modes()) {
    throw InvalidParam("mode count mismatch");
  }
  return max_abs(a.data() - b.data());
}

double condition_number(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return smax / smin;
}

double min_singular_value(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double max_singular_value(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMatrix checked_inverse(const CMatrix& m, double condition_cap) {
  const double cond = condition_number(m);
  if (!(cond <= condition_cap)) {
    throw SingularMatrix("matrix inversion: condition number above cap", cond);
  }
  return m.fullPivLu().inverse();
}

CMatrix sigma_x(int n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  CMatrix sx = CMatrix::Zero(2 * n, 2 * n);
  sx.topRightCorner(n, n).setIdentity();
  sx.bottomLeftCorner(n, n).setIdentity();
  return sx;
}

}  // namespace ptnoise
