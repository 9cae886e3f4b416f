#include "ptnoise/compose.hpp"

#include <cmath>
#include <string>

#include "ptnoise/errors.hpp"

namespace ptnoise {

void MirrorSpec::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidParam("mirror transmission gamma must lie in (0, 1], got " +
                       std::to_string(gamma));
  }
}

ScatteringMatrix mirror_matrix(const MirrorSpec& spec, int n_modes) {
  if (!(spec.gamma >= 0.0 && spec.gamma <= 1.0)) {
    throw InvalidParam("mirror transmission gamma must lie in [0, 1]");
  }
  if (n_modes < 1) {
    throw InvalidParam("mirror needs n_modes >= 1");
  }
  const auto n = static_cast<Eigen::Index>(n_modes);
  const cdouble refl = -std::sqrt(1.0 - spec.gamma);
  const cdouble trans = -cdouble(0.0, std::sqrt(spec.gamma));
  const CMatrix id = CMatrix::Identity(n, n);
  return ScatteringMatrix::from_blocks(refl * id, trans * id, trans * id, refl * id);
}

JunctionMaps join_regions(const ScatteringMatrix& a, const ScatteringMatrix& b,
                          double condition_cap) {
  if (a.n_modes() != b.n_modes()) {
    throw InvalidParam("cannot join regions with different mode counts");
  }
  const auto n = static_cast<Eigen::Index>(a.n_modes());
  const CMatrix id = CMatrix::Identity(n, n);

  // Unknowns z = (a0_right, a0_left):
  //   a0_right = t_A a_L^in + r'_A a0_left + n_A(lower)
  //   a0_left  = r_B a0_right + t'_B a_R^in + n_B(upper)
  CMatrix k(2 * n, 2 * n);
  k << id, -a.rp(), -b.r(), id;
  const double cond = condition_number(k);
  if (!(cond <= condition_cap)) {
    throw NearResonance(cond);
  }

  CMatrix rhs = CMatrix::Zero(2 * n, 6 * n);
  rhs.block(0, 0, n, n) = a.t();
  rhs.block(n, n, n, n) = b.tp();
  rhs.block(0, 3 * n, n, n) = id;  // lower half of n_A
  rhs.block(n, 4 * n, n, n) = id;  // upper half of n_B
  const CMatrix z = k.partialPivLu().solve(rhs);

  // a_out = diag(r_A, r'_B) a_in + [[0, t'_A], [t_B, 0]] z + direct noise.
  CMatrix g = CMatrix::Zero(2 * n, 2 * n);
  g.topRightCorner(n, n) = a.tp();
  g.bottomLeftCorner(n, n) = b.t();
  CMatrix direct = CMatrix::Zero(2 * n, 6 * n);
  direct.block(0, 0, n, n) = a.r();
  direct.block(n, n, n, n) = b.rp();
  direct.block(0, 2 * n, n, n) = id;
  direct.block(n, 5 * n, n, n) = id;
  const CMatrix out = direct + g * z;

  // Reorder interface rows to (a0_left, a0_right).
  CMatrix w(2 * n, 6 * n);
  w << z.bottomRows(n), z.topRows(n);

  return JunctionMaps{
      ScatteringMatrix(out.leftCols(2 * n)),
      out.middleCols(2 * n, 2 * n),
      out.rightCols(2 * n),
      w.leftCols(2 * n),
      w.middleCols(2 * n, 2 * n),
      w.rightCols(2 * n),
      cond,
  };
}

CompositionResult star_compose(const ScatteringMatrix& a, const ScatteringMatrix& b,
                               double condition_cap) {
  JunctionMaps j = join_regions(a, b, condition_cap);
  const auto n = a.n_modes();
  return CompositionResult{
      std::move(j.s_total),
      j.w_in.topRows(n),
      j.w_in.bottomRows(n),
      j.condition_number,
  };
}

double composition_residual(const ScatteringMatrix& a, const ScatteringMatrix& b,
                            const CompositionResult& res) {
  const auto n = static_cast<Eigen::Index>(a.n_modes());
  const CMatrix id = CMatrix::Identity(2 * n, 2 * n);
  const CMatrix& y = res.interface_left_map;
  const CMatrix& x = res.interface_right_map;
  const CMatrix& s = res.s_total.data();

  // Region A: (a_L^out, a0_right) = S_A (a_L^in, a0_left).
  CMatrix a_in(2 * n, 2 * n), a_out(2 * n, 2 * n);
  a_in << id.topRows(n), y;
  a_out << s.topRows(n), x;
  // Region B: (a0_left, a_R^out) = S_B (a0_right, a_R^in).
  CMatrix b_in(2 * n, 2 * n), b_out(2 * n, 2 * n);
  b_in << x, id.bottomRows(n);
  b_out << y, s.bottomRows(n);

  return std::max(max_abs(a_out - a.data() * a_in), max_abs(b_out - b.data() * b_in));
}

ScatteringMatrix attach_mirror(const ScatteringMatrix& region, const MirrorSpec& spec,
                               Side side, double condition_cap) {
  spec.validate();
  const ScatteringMatrix mirror = mirror_matrix(spec, region.n_modes());
  if (side == Side::left) {
    return star_compose(mirror, region, condition_cap).s_total;
  }
  return star_compose(region, mirror, condition_cap).s_total;
}

}  // namespace ptnoise
