#pragma once

#include <string_view>

#include "ptnoise/smatrix.hpp"

namespace ptnoise {

// (r, t', t, r') -> (r', t, t', r).
ScatteringMatrix parity_transform(const ScatteringMatrix& s);

// sigma_x [S*]^{-1} sigma_x. Maps an absorbing region to its amplifying
// mirror image at real energy.
ScatteringMatrix pt_transform(const ScatteringMatrix& s,
                              double condition_cap = kDefaultConditionCap);

enum class BlockPivot {
  automatic,     // reflection, then transmission, then full inverse
  reflection,    // Schur complements over r, r' (needs r, r' invertible)
  transmission,  // Schur complements over t, t' (needs t' invertible)
  full_inverse,  // direct conjugate-inverse-swap
};

std::string_view to_string(BlockPivot p);

struct BlockwisePtResult {
  ScatteringMatrix s;
  BlockPivot path;  // the route that actually produced s
};

// Explicit four-block form of the PT conjugate. With BlockPivot::automatic
// the reflection-block formula is tried first and the fallbacks are used
// when one of its inverses is singular. An explicitly requested pivot that
// cannot be taken throws SingularBlock naming the block.
BlockwisePtResult pt_transform_blockwise(const ScatteringMatrix& s,
                                         BlockPivot pivot = BlockPivot::automatic,
                                         double condition_cap = kDefaultConditionCap);

double onsager_residual(const ScatteringMatrix& s);
double pt_residual(const ScatteringMatrix& s, double condition_cap = kDefaultConditionCap);

// max |S(-gamma) - [S(gamma)^dagger]^{-1}|.
double microreversibility_residual(const ScatteringMatrix& s_gamma,
                                   const ScatteringMatrix& s_minus_gamma,
                                   double condition_cap = kDefaultConditionCap);

struct SymmetryReport {
  double onsager_residual = 0.0;
  double microrev_residual = 0.0;
  double pt_residual = 0.0;
};

SymmetryReport analyze_symmetry(const ScatteringMatrix& s_gamma,
                                const ScatteringMatrix& s_minus_gamma);

}  // namespace ptnoise
