#include "ptnoise/symmetry.hpp"

#include <optional>

#include "ptnoise/errors.hpp"

namespace ptnoise {

namespace {

bool invertible(const CMatrix& m, double cap) { return condition_number(m) <= cap; }

// Inverse of the conjugated matrix M = S*, via the Schur complements over
// the diagonal blocks A = r*, D = r'*.
std::optional<ScatteringMatrix> reflection_route(const ScatteringMatrix& s, double cap,
                                                 std::string* offending) {
  const CMatrix a = s.r().conjugate();
  const CMatrix b = s.tp().conjugate();
  const CMatrix c = s.t().conjugate();
  const CMatrix d = s.rp().conjugate();
  if (!invertible(a, cap)) {
    *offending = "r";
    return std::nullopt;
  }
  if (!invertible(d, cap)) {
    *offending = "r'";
    return std::nullopt;
  }
  const CMatrix a_inv = a.fullPivLu().inverse();
  const CMatrix d_inv = d.fullPivLu().inverse();
  const CMatrix schur_a = a - b * d_inv * c;  // (r - t' r'^{-1} t)*
  const CMatrix schur_d = d - c * a_inv * b;  // (r' - t r^{-1} t')*
  if (!invertible(schur_a, cap)) {
    *offending = "r - t' r'^-1 t";
    return std::nullopt;
  }
  if (!invertible(schur_d, cap)) {
    *offending = "r' - t r^-1 t'";
    return std::nullopt;
  }
  const CMatrix inv_schur_a = schur_a.fullPivLu().inverse();
  const CMatrix inv_schur_d = schur_d.fullPivLu().inverse();
  // [S*]^{-1} blocks, then sigma_x swaps (X11, X12, X21, X22) -> (X22, X21, X12, X11).
  const CMatrix x11 = inv_schur_a;
  const CMatrix x12 = -a_inv * b * inv_schur_d;
  const CMatrix x21 = -d_inv * c * inv_schur_a;
  const CMatrix x22 = inv_schur_d;
  return ScatteringMatrix::from_blocks(x22, x21, x12, x11);
}

// Same inverse with the off-diagonal blocks as pivots: needs B = t'* and
// C - D B^{-1} A invertible. Covers reflectionless regions.
std::optional<ScatteringMatrix> transmission_route(const ScatteringMatrix& s, double cap,
                                                   std::string* offending) {
  const CMatrix a = s.r().conjugate();
  const CMatrix b = s.tp().conjugate();
  const CMatrix c = s.t().conjugate();
  const CMatrix d = s.rp().conjugate();
  if (!invertible(b, cap)) {
    *offending = "t'";
    return std::nullopt;
  }
  const CMatrix b_inv = b.fullPivLu().inverse();
  const CMatrix schur = c - d * b_inv * a;
  if (!invertible(schur, cap)) {
    *offending = "t - r' t'^-1 r";
    return std::nullopt;
  }
  const CMatrix inv_schur = schur.fullPivLu().inverse();
  const auto n = s.n_modes();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix x12 = inv_schur;
  const CMatrix x11 = -inv_schur * d * b_inv;
  const CMatrix x22 = -b_inv * a * inv_schur;
  const CMatrix x21 = b_inv * (id - a * x11);
  return ScatteringMatrix::from_blocks(x22, x21, x12, x11);
}

}  // namespace

std::string_view to_string(BlockPivot p) {
  switch (p) {
    case BlockPivot::automatic: return "automatic";
    case BlockPivot::reflection: return "reflection";
    case BlockPivot::transmission: return "transmission";
    case BlockPivot::full_inverse: return "full_inverse";
  }
  return "unknown";
}

ScatteringMatrix parity_transform(const ScatteringMatrix& s) {
  return ScatteringMatrix::from_blocks(s.rp(), s.t(), s.tp(), s.r());
}

ScatteringMatrix pt_transform(const ScatteringMatrix& s, double condition_cap) {
  const CMatrix inv = checked_inverse(s.data().conjugate(), condition_cap);
  const auto n = s.n_modes();
  CMatrix out(2 * n, 2 * n);
  out << inv.bottomRightCorner(n, n), inv.bottomLeftCorner(n, n),
      inv.topRightCorner(n, n), inv.topLeftCorner(n, n);
  return ScatteringMatrix(std::move(out));
}

BlockwisePtResult pt_transform_blockwise(const ScatteringMatrix& s, BlockPivot pivot,
                                         double condition_cap) {
  std::string offending;
  switch (pivot) {
    case BlockPivot::reflection:
      if (auto r = reflection_route(s, condition_cap, &offending)) {
        return {std::move(*r), BlockPivot::reflection};
      }
      throw SingularBlock(offending);
    case BlockPivot::transmission:
      if (auto r = transmission_route(s, condition_cap, &offending)) {
        return {std::move(*r), BlockPivot::transmission};
      }
      throw SingularBlock(offending);
    case BlockPivot::full_inverse:
      return {pt_transform(s, condition_cap), BlockPivot::full_inverse};
    case BlockPivot::automatic:
      break;
  }
  if (auto r = reflection_route(s, condition_cap, &offending)) {
    return {std::move(*r), BlockPivot::reflection};
  }
  if (auto r = transmission_route(s, condition_cap, &offending)) {
    return {std::move(*r), BlockPivot::transmission};
  }
  return {pt_transform(s, condition_cap), BlockPivot::full_inverse};
}

double onsager_residual(const ScatteringMatrix& s) {
  return max_abs(s.data() - s.data().transpose());
}

double pt_residual(const ScatteringMatrix& s, double condition_cap) {
  return max_abs_diff(s, pt_transform(s, condition_cap));
}

double microreversibility_residual(const ScatteringMatrix& s_gamma,
                                   const ScatteringMatrix& s_minus_gamma,
                                   double condition_cap) {
  const CMatrix inv = checked_inverse(s_gamma.data().adjoint(), condition_cap);
  return max_abs(s_minus_gamma.data() - inv);
}

SymmetryReport analyze_symmetry(const ScatteringMatrix& s_gamma,
                                const ScatteringMatrix& s_minus_gamma) {
  SymmetryReport rep;
  rep.onsager_residual = onsager_residual(s_gamma);
  rep.microrev_residual = microreversibility_residual(s_gamma, s_minus_gamma);
  rep.pt_residual = pt_residual(s_gamma);
  return rep;
}

}  // namespace ptnoise
