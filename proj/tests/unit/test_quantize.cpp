#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ptnoise/compose.hpp"
#include "ptnoise/errors.hpp"
#include "ptnoise/quantize.hpp"
#include "ptnoise/symmetry.hpp"

using namespace ptnoise;
using oracle::pi;

TEST(QuantizationDeterminant, BallisticIsMinusImTSquared) {
  const auto m = RegionModel::ballistic(1.0, 0.05, 1.0);
  for (double e : {0.3, 1.0, 2.2, 4.0}) {
    const double expected = -std::exp(-2 * 0.05 * e) * std::sin(2 * e);
    EXPECT_NEAR(quantization_determinant(m, e), expected, 1e-15);
  }
}

TEST(QuantizationDeterminant, HermitianAnalyticZero) {
  const auto m = RegionModel::ballistic(1.0, 0.0, 1.0);
  EXPECT_NEAR(quantization_determinant(m, pi / 2), 0.0, 1e-15);
}

TEST(QuantizationDeterminant, SingularOnePlusR) {
  CMatrix s(2, 2);
  s << -1.0, 0.0, 0.0, 0.5;
  EXPECT_THROW(quantization_determinant(ScatteringMatrix(s)), SingularMatrix);
}

TEST(BoundStates, BallisticRootsAtMultiplesOfHalfPi) {
  const auto m = RegionModel::ballistic(1.0, 0.05, 1.0);
  const auto roots = find_bound_states(m, 0.1, 5.0, 4.9e-4);
  ASSERT_EQ(roots.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(roots[k].energy, (k + 1) * pi / 2, 1e-9);
    EXPECT_LT(roots[k].e_lo, roots[k].energy);
    EXPECT_GT(roots[k].e_hi, roots[k].energy);
    EXPECT_LT(roots[k].residual, 1e-10);
    EXPECT_GT(roots[k].iterations, 0);
  }
}

TEST(BoundStates, EmptyRange) {
  const auto m = RegionModel::ballistic(1.0, 0.05, 1.0);
  EXPECT_TRUE(find_bound_states(m, 0.1, 1.4, 1e-3).empty());
}

TEST(BoundStates, DoublingLengthHalvesRoots) {
  const auto m1 = RegionModel::ballistic(1.0, 0.05, 1.0);
  const auto m2 = RegionModel::ballistic(1.0, 0.05, 2.0);
  const auto r1 = find_bound_states(m1, 0.1, 5.0, 4.9e-4);
  const auto r2 = find_bound_states(m2, 0.05, 2.5, 2.45e-4);
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_NEAR(r2[i].energy, 0.5 * r1[i].energy, 1e-9);
    EXPECT_NEAR(r2[i].energy, (i + 1) * pi / 4, 1e-9);
  }
}

TEST(BoundStates, RootSetInvariantUnderScaling) {
  const auto m = RegionModel::slab(1.0, 0.05, 1.0, 0.3);
  auto det = [&](double e) { return quantization_determinant(m, e); };
  const auto base = find_bound_states(det, 0.2, 6.0, 5.8e-4);
  ASSERT_FALSE(base.empty());
  for (double c : {-1.0, 3.5, -1e-6}) {
    const auto scaled = find_bound_states([&](double e) { return c * det(e); }, 0.2, 6.0, 5.8e-4);
    ASSERT_EQ(scaled.size(), base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_NEAR(scaled[i].energy, base[i].energy, 1e-9);
    }
  }
}

TEST(BoundStates, MultimodeAgreesWithDenseScan) {
  const auto m = RegionModel::multimode({1.0, 1.3, 0.8}, {0.04, 0.02, 0.06}, 1.0, 5);
  auto det = [&](double e) { return quantization_determinant(m, e); };
  const auto scan = oracle::dense_scan_roots(det, 0.1, 4.0, 1e-4);
  const auto roots = find_bound_states(m, 0.1, 4.0, 3.9e-4);
  ASSERT_FALSE(scan.empty());
  ASSERT_EQ(roots.size(), scan.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    EXPECT_NEAR(roots[i].energy, scan[i], 1e-4);
    EXPECT_LT(std::abs(det(roots[i].energy)), 1e-10);
  }
}

TEST(BoundStates, PtPartnerParityImageGivesSameRoots) {
  for (const auto& m : {RegionModel::ballistic(1.0, 0.05, 1.0),
                        RegionModel::slab(1.0, 0.05, 1.0, 0.3),
                        RegionModel::multimode({1.0, 1.3}, {0.04, 0.02}, 1.0, 3)}) {
    const auto partner = pt_partner(m);
    const auto left = find_bound_states(m, 0.2, 5.0, 4.8e-4);
    const auto right = find_bound_states(
        [&](double e) { return quantization_determinant(parity_transform(evaluate(partner, e))); },
        0.2, 5.0, 4.8e-4);
    ASSERT_EQ(left.size(), right.size()) << m.descriptor();
    for (std::size_t i = 0; i < left.size(); ++i) {
      EXPECT_NEAR(left[i].energy, right[i].energy, 1e-9) << m.descriptor();
    }
  }
}

TEST(BoundStates, ClosedInterfaceIsSingularAtRoots) {
  for (const auto& m : {RegionModel::ballistic(1.0, 0.05, 1.0),
                        RegionModel::slab(1.0, 0.05, 1.0, 0.3)}) {
    const auto roots = find_bound_states(m, 0.2, 5.0, 4.8e-4);
    ASSERT_FALSE(roots.empty());
    const auto perfect = mirror_matrix(MirrorSpec{0.0}, 1);
    for (const auto& b : roots) {
      const auto left = star_compose(perfect, evaluate(m, b.energy)).s_total;
      const auto right = star_compose(evaluate(pt_partner(m), b.energy), perfect).s_total;
      try {
        const auto res = star_compose(left, right, 1e18);
        EXPECT_GT(res.condition_number, 1e8) << b.energy;
      } catch (const NearResonance& e) {
        EXPECT_GT(e.condition_number(), 1e8);
      }
    }
  }
}

TEST(BoundStates, ParallelScanIsDeterministic) {
  const auto m = RegionModel::slab(1.0, 0.05, 1.0, 0.3);
  RootSearchOptions serial, threaded;
  threaded.jobs = 4;
  const auto a = find_bound_states(m, 0.2, 6.0, 5.8e-4, serial);
  const auto b = find_bound_states(m, 0.2, 6.0, 5.8e-4, threaded);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].energy, b[i].energy);
}

TEST(BoundStates, InvalidArguments) {
  const auto m = RegionModel::ballistic(1.0, 0.05, 1.0);
  EXPECT_THROW(find_bound_states(m, 0.0, 1.0, 1e-3), InvalidParam);
  EXPECT_THROW(find_bound_states(m, 2.0, 1.0, 1e-3), InvalidParam);
  EXPECT_THROW(find_bound_states(m, 0.1, 1.0, 0.0), InvalidParam);
}
