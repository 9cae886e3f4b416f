#pragma once

#include "ptnoise/smatrix.hpp"

namespace ptnoise {

/// Semitransparent mirror with transmission probability gamma in (0, 1].
/// The same gamma applies to every mode.
struct MirrorSpec {
  double gamma = 1.0;

  void validate() const;
};

enum class Side { left, right };

// -[[sqrt(1-G), i sqrt(G)], [i sqrt(G), sqrt(1-G)]] (x) I_N. Also accepts
// gamma = 0 (perfect mirror) for closed-system limits.
ScatteringMatrix mirror_matrix(const MirrorSpec& spec, int n_modes);

/// Linear maps produced by joining region A (left) to region B (right).
///
/// The interface carries a0_right (travelling right, out of A into B) and
/// a0_left (travelling left, out of B into A). All maps are expressed in the
/// inputs (a_L^in, a_R^in) and, for the noise maps, in additive source terms
/// n_A, n_B entering A's and B's outgoing amplitudes:
///
///     a_out            = s_total a_in + m_a n_A + m_b n_B
///     (a0_left, a0_right) = w_in a_in  + w_a n_A + w_b n_B
struct JunctionMaps {
  ScatteringMatrix s_total;
  CMatrix m_a, m_b;
  CMatrix w_in, w_a, w_b;
  double condition_number = 0.0;
};

// Throws NearResonance if the interface matrix [[I, -r'_A], [-r_B, I]] has
// condition number above the cap.
JunctionMaps join_regions(const ScatteringMatrix& a, const ScatteringMatrix& b,
                          double condition_cap = kDefaultConditionCap);

struct CompositionResult {
  ScatteringMatrix s_total;
  CMatrix interface_left_map;   // a0_left  = map * (a_L^in, a_R^in)
  CMatrix interface_right_map;  // a0_right = map * (a_L^in, a_R^in)
  double condition_number = 0.0;
};

// Star product: eliminates the shared interface amplitudes of A (left) and
// B (right).
CompositionResult star_compose(const ScatteringMatrix& a, const ScatteringMatrix& b,
                               double condition_cap = kDefaultConditionCap);

// Max violation of the two region relations after substituting the
// interface maps back in.
double composition_residual(const ScatteringMatrix& a, const ScatteringMatrix& b,
                            const CompositionResult& result);

ScatteringMatrix attach_mirror(const ScatteringMatrix& region, const MirrorSpec& spec,
                               Side side, double condition_cap = kDefaultConditionCap);

}  // namespace ptnoise
