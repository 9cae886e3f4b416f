#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptnoise/errors.hpp"
#include "ptnoise/qnoise.hpp"
#include "ptnoise/symmetry.hpp"

using namespace ptnoise;
using oracle::cd;
using oracle::pi;

namespace {

const RegionModel kBallistic = RegionModel::ballistic(1.0, 0.05, 1.0);

NoiseSystem ballistic_system(double gamma, double e, double kappa = 0.05) {
  const auto m = RegionModel::ballistic(1.0, kappa, 1.0);
  return build_noise_system(m, pt_partner(m), gamma, e);
}

// Principal square root of a PSD Hermitian matrix.
CMatrix sqrt_factor(const CMatrix& qq) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(qq);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

// Lower-triangular factor from a pivoted LDL^T.
CMatrix ldlt_factor(const CMatrix& qq) {
  Eigen::LDLT<CMatrix> ldlt(qq);
  const Eigen::VectorXd d = ldlt.vectorD().real().cwiseMax(0.0).cwiseSqrt();
  CMatrix l = ldlt.matrixL();
  CMatrix f = ldlt.transpositionsP().transpose() * (l * d.cast<cd>().asDiagonal());
  return f;
}

IntensityPair from_factor(const CMatrix& m, const CMatrix& q, int n) {
  const CMatrix mq = m * q;
  IntensityPair p;
  for (int i = 0; i < 2 * n; ++i) {
    const double row = mq.row(i).squaredNorm();
    (i < n ? p.left : p.right) += row / (2 * pi);
  }
  return p;
}

}  // namespace

TEST(NoiseSystem, TotalScatteringMatchesClosedForm) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> ue(0.2, 5.0), ug(1e-3, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double e = ue(gen), g = ug(gen);
    const auto ns = ballistic_system(g, e);
    const auto [r, t] = oracle::ballistic_total(oracle::ballistic_t(1.0, 0.05, 1.0, e), g);
    EXPECT_LT(std::abs(ns.s_total(0, 0) - r), 1e-10);
    EXPECT_LT(std::abs(ns.s_total(1, 1) - r), 1e-10);
    EXPECT_LT(std::abs(ns.s_total(0, 1) - t), 1e-10);
    EXPECT_LT(std::abs(ns.s_total(1, 0) - t), 1e-10);
  }
}

TEST(NoiseSystem, TotalIsPtSymmetric) {
  for (const auto& m : {kBallistic, RegionModel::slab(1.0, 0.05, 1.0, 0.3),
                        RegionModel::multimode({1.0, 1.2}, {0.05, 0.01}, 1.0, 4)}) {
    for (double e : {0.7, 1.3, 2.9}) {
      const auto ns = build_noise_system(m, pt_partner(m), 0.2, e);
      EXPECT_LT(pt_residual(ns.s_total), 1e-10) << m.descriptor();
    }
  }
}

TEST(NoiseSystem, OpenHermitianHasNoNoise) {
  const auto ns = ballistic_system(1.0, 1.3, 0.0);
  EXPECT_LT(oracle::max_abs(ns.qq_left), 1e-15);
  EXPECT_LT(oracle::max_abs(ns.qq_right), 1e-15);
  EXPECT_TRUE(ns.m_left.allFinite());
  EXPECT_TRUE(ns.m_right.allFinite());
  const auto p = emitted_intensities(ns);
  EXPECT_LT(std::abs(p.left), 1e-15);
  EXPECT_LT(std::abs(p.right), 1e-15);
}

TEST(NoiseSystem, BackSubstitutionWithNoiseSources) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ue(0.2, 5.0), ug(1e-3, 1.0);
  const std::vector<RegionModel> models = {kBallistic, RegionModel::slab(1.0, 0.08, 1.3, 0.5),
                                           RegionModel::multimode({1.0, 1.2, 0.7},
                                                                  {0.05, 0.01, 0.03}, 1.0, 9)};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto& m = models[k % models.size()];
    const int n = m.n_modes;
    const auto ns = build_noise_system(m, pt_partner(m), ug(gen), ue(gen));
    const Eigen::VectorXcd a_in = oracle::random_complex(2 * n, 1, gen);
    const Eigen::VectorXcd n_l = oracle::random_complex(2 * n, 1, gen);
    const Eigen::VectorXcd n_r = oracle::random_complex(2 * n, 1, gen);
    const Eigen::VectorXcd out = ns.s_total.data() * a_in + ns.m_left * n_l + ns.m_right * n_r;
    const Eigen::VectorXcd iface = ns.w_in * a_in + ns.w_left * n_l + ns.w_right * n_r;
    const Eigen::VectorXcd a0_left = iface.head(n), a0_right = iface.tail(n);

    Eigen::VectorXcd left_in(2 * n), left_out(2 * n), right_in(2 * n), right_out(2 * n);
    left_in << a_in.head(n), a0_left;
    left_out << out.head(n), a0_right;
    right_in << a0_right, a_in.tail(n);
    right_out << a0_left, out.tail(n);
    worst = std::max(worst, oracle::max_abs(left_out - ns.s_left.data() * left_in - n_l));
    worst = std::max(worst, oracle::max_abs(right_out - ns.s_right.data() * right_in - n_r));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(NoiseSystem, CorrelatorsArePositive) {
  for (double e : {0.5, pi / 2, 2.0}) {
    const auto ns = ballistic_system(0.3, e);
    EXPECT_GE(min_hermitian_eigenvalue(ns.qq_left), -1e-12);
    EXPECT_GE(min_hermitian_eigenvalue(ns.qq_right), -1e-12);
  }
}

TEST(NoiseSystem, WrongMediumIsNotPassive) {
  const auto s = evaluate(kBallistic, 1.0);
  const auto amp = evaluate(pt_partner(kBallistic), 1.0);
  EXPECT_THROW(build_noise_system(amp, Medium::absorbing, s, Medium::amplifying, 0.3),
               NotPassive);
}

TEST(NoiseSystem, InvalidGamma) {
  EXPECT_THROW(ballistic_system(0.0, 1.0), InvalidParam);
  EXPECT_THROW(ballistic_system(1.5, 1.0), InvalidParam);
}

TEST(NoiseSystem, NearResonanceCarriesConditionNumber) {
  const auto m = RegionModel::ballistic(1.0, 0.0, 1.0);
  NoiseOptions opts;
  opts.condition_cap = 1e3;
  try {
    build_noise_system(m, pt_partner(m), 1e-6, pi / 2, opts);
    FAIL() << "expected NearResonance";
  } catch (const NearResonance& e) {
    EXPECT_GT(e.condition_number(), 1e3);
  }
}

TEST(Emission, BallisticAtRootMatchesClosedForm) {
  const auto p = emitted_intensities(ballistic_system(0.1, pi / 2));
  const cd t = oracle::ballistic_t(1.0, 0.05, 1.0, pi / 2);
  EXPECT_NEAR(p.left, oracle::emission_left(t, 0.1), 1e-12);
  EXPECT_NEAR(p.right, oracle::emission_right(t, 0.1), 1e-12);
  EXPECT_NEAR(p.left, 0.475, 5e-4);
  EXPECT_NEAR(p.right, 0.479, 5e-4);
  EXPECT_NEAR(p.right - p.left, oracle::emission_difference(t, 0.1), 1e-12);
  EXPECT_NEAR(p.right - p.left, 0.00394, 1e-5);
}

TEST(Emission, HermitianEmitsNothing) {
  for (double e : {0.5, pi / 2, 2.0}) {
    const auto p = emitted_intensities(ballistic_system(0.1, e, 0.0));
    EXPECT_LT(std::abs(p.left), 1e-12);
    EXPECT_LT(std::abs(p.right), 1e-12);
  }
}

TEST(Emission, FactorizationIndependence) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> ue(0.2, 5.0), ug(1e-2, 1.0);
  const std::vector<RegionModel> models = {kBallistic, RegionModel::slab(1.0, 0.05, 1.0, 0.3),
                                           RegionModel::multimode({1.0, 1.2}, {0.05, 0.02},
                                                                  1.0, 2)};
  for (int k = 0; k < 60; ++k) {
    const auto& m = models[k % models.size()];
    const auto ns = build_noise_system(m, pt_partner(m), ug(gen), ue(gen));
    const int n = m.n_modes;
    const CMatrix q1 = sqrt_factor(ns.qq_right);
    const CMatrix q2 = ldlt_factor(ns.qq_right);
    const CMatrix q3 = q1 * oracle::random_unitary(2 * n, gen);
    ASSERT_LT(oracle::max_abs(q2 * q2.adjoint() - ns.qq_right), 1e-12);
    const auto a = from_factor(ns.m_right, q1, n);
    const auto b = from_factor(ns.m_right, q2, n);
    const auto c = from_factor(ns.m_right, q3, n);
    const auto ref = emitted_intensities(ns);
    const double scale = std::max(1.0, ref.left + ref.right);
    EXPECT_LT(std::abs(a.left - b.left) / scale, 1e-12);
    EXPECT_LT(std::abs(a.right - b.right) / scale, 1e-12);
    EXPECT_LT(std::abs(a.left - c.left) / scale, 1e-12);
    EXPECT_LT(std::abs(a.left - ref.left) / scale, 1e-12);
    EXPECT_LT(std::abs(a.right - ref.right) / scale, 1e-12);
  }
}

TEST(Emission, AbsorberChannelWouldChangeResult) {
  // Guards the normal-ordering bookkeeping: adding the absorber channel
  // breaks agreement with the closed form.
  const auto ns = ballistic_system(0.1, 1.2);
  const CMatrix c = ns.m_left * ns.qq_left * ns.m_left.adjoint();
  EXPECT_GT(c(0, 0).real() / (2 * pi), 1e-3);
}

TEST(Emission, ParitySwappedConstructionExchangesSides) {
  for (const auto& m : {kBallistic, RegionModel::slab(1.0, 0.05, 1.0, 0.3)}) {
    for (double e : {0.8, 1.4, 2.6}) {
      const auto a = emitted_intensities(build_noise_system(m, pt_partner(m), 0.1, e));
      const auto b = emitted_intensities(build_noise_system(pt_partner(m), m, 0.1, e));
      EXPECT_NEAR(a.left, b.right, 1e-10);
      EXPECT_NEAR(a.right, b.left, 1e-10);
    }
  }
}

TEST(Internal, ScalesAsInverseGammaSquaredPointwise) {
  // The spectral density at the root grows as 1/gamma^2; the line width
  // shrinks as gamma, so the line-integrated occupation grows as 1/gamma.
  const auto a = internal_intensities(ballistic_system(1e-2, pi / 2));
  const auto b = internal_intensities(ballistic_system(1e-3, pi / 2));
  const double ratio = (b.left + b.right) / (a.left + a.right);
  EXPECT_GT(ratio, 95.0);
  EXPECT_LT(ratio, 105.0);
}

TEST(Internal, HermitianIsZero) {
  const auto p = internal_intensities(ballistic_system(0.1, pi / 2, 0.0));
  EXPECT_LT(std::abs(p.left), 1e-12);
  EXPECT_LT(std::abs(p.right), 1e-12);
}

TEST(Internal, SmoothOffResonance) {
  double prev = -1.0;
  for (int k = 0; k <= 50; ++k) {
    const double e = 2.0 + 0.002 * k;  // between the roots at pi/2 and pi
    const auto p = internal_intensities(ballistic_system(0.05, e));
    const double v = p.left + p.right;
    ASSERT_TRUE(std::isfinite(v));
    if (prev > 0.0) EXPECT_LT(std::abs(v - prev) / prev, 0.05);
    prev = v;
  }
}

TEST(DelayTime, BallisticIsTwiceLength) {
  EXPECT_NEAR(delay_time(kBallistic, pi / 2), 2.0, 1e-8);
  EXPECT_NEAR(delay_time(RegionModel::ballistic(1.0, 0.05, 3.0), pi / 2), 6.0, 1e-8);
  EXPECT_NEAR(delay_time(RegionModel::ballistic(1.0, 0.05, 1.0), 12.0), 2.0, 1e-8);
}

TEST(DelayTime, MultimodePerMode) {
  const auto m = RegionModel::multimode({1.0, 1.0, 1.0}, {0.05, 0.02, 0.07}, 1.0, 3);
  const auto taus = delay_times(m, 1.1);
  ASSERT_EQ(taus.size(), 3u);
  for (double t : taus) EXPECT_NEAR(t, 2.0, 1e-8);
  EXPECT_NEAR(delay_time(m, 1.1), 2.0, 1e-8);
  const auto mixed = RegionModel::multimode({1.0, 1.5}, {0.05, 0.02}, 1.0, 3);
  const auto t2 = delay_times(mixed, 1.1);
  EXPECT_NEAR(t2[0], 2.0, 1e-8);
  EXPECT_NEAR(t2[1], 3.0, 1e-8);
}

TEST(Backscatter, BallisticReducesToLorentzianPeak) {
  const double g = 1e-3;
  const auto ns = ballistic_system(g, pi / 2);
  const auto p = emitted_intensities(ns);
  const double formula = backscatter_peak_intensity(ns);
  EXPECT_NEAR(formula / (0.5 * (p.left + p.right)), 1.0, 1e-3);
}

TEST(Backscatter, RegimeChecks) {
  EXPECT_THROW(backscatter_peak_intensity(ballistic_system(0.1, 1.0)), RegimeViolation);
  const auto m = RegionModel::multimode({1.0, 1.2}, {0.05, 0.02}, 1.0, 2);
  EXPECT_THROW(backscatter_peak_intensity(build_noise_system(m, pt_partner(m), 1e-3, 1.0)),
               RegimeViolation);
}
