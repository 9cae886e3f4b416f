#include "ptnoise/models.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ptnoise/compose.hpp"
#include "ptnoise/errors.hpp"
#include "ptnoise/symmetry.hpp"

namespace ptnoise {

std::string_view to_string(RegionKind k) {
  switch (k) {
    case RegionKind::ballistic: return "ballistic";
    case RegionKind::slab_scatterer: return "slab_scatterer";
    case RegionKind::multimode: return "multimode";
  }
  return "unknown";
}

RegionKind region_kind_from_string(std::string_view s) {
  if (s == "ballistic") return RegionKind::ballistic;
  if (s == "slab_scatterer") return RegionKind::slab_scatterer;
  if (s == "multimode") return RegionKind::multimode;
  throw InvalidParam("unknown region kind '" + std::string(s) + "'");
}

RegionModel RegionModel::ballistic(double n_re, double kappa, double length, GainSign sign) {
  RegionModel m;
  m.kind = RegionKind::ballistic;
  m.n_re = {n_re};
  m.kappa = {kappa};
  m.length = length;
  m.gamma_sign = sign;
  m.validate();
  return m;
}

RegionModel RegionModel::slab(double n_re, double kappa, double length, double rho,
                              GainSign sign) {
  RegionModel m = ballistic(n_re, kappa, length, sign);
  m.kind = RegionKind::slab_scatterer;
  m.rho = rho;
  m.validate();
  return m;
}

RegionModel RegionModel::multimode(std::vector<double> n_re, std::vector<double> kappa,
                                   double length, std::uint64_t seed, GainSign sign) {
  RegionModel m;
  m.kind = RegionKind::multimode;
  m.n_modes = static_cast<int>(std::max(n_re.size(), kappa.size()));
  m.n_re = std::move(n_re);
  m.kappa = std::move(kappa);
  m.length = length;
  m.mixing_seed = seed;
  m.gamma_sign = sign;
  m.validate();
  return m;
}

void RegionModel::validate() const {
  if (n_modes < 1) throw InvalidParam("n_modes must be >= 1");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidParam("length must be > 0");
  if (gamma_sign != GainSign::absorbing && gamma_sign != GainSign::amplifying) {
    throw InvalidParam("gamma_sign must be +1 or -1");
  }
  const auto per_mode_ok = [&](const std::vector<double>& v) {
    if (kind == RegionKind::multimode) {
      return v.size() == 1 || v.size() == static_cast<std::size_t>(n_modes);
    }
    return v.size() == 1;
  };
  if (!per_mode_ok(n_re)) throw InvalidParam("n_re has the wrong number of entries");
  if (!per_mode_ok(kappa)) throw InvalidParam("kappa has the wrong number of entries");
  for (double v : n_re) {
    if (!std::isfinite(v)) throw InvalidParam("n_re must be finite");
  }
  for (double v : kappa) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidParam("kappa must be >= 0");
  }
  if (kind == RegionKind::slab_scatterer) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParam("rho must lie in [0, 1)");
  } else if (rho != 0.0) {
    throw InvalidParam("rho applies to slab_scatterer only");
  }
}

double RegionModel::mode_n_re(int j) const { return n_re.size() == 1 ? n_re[0] : n_re[j]; }
double RegionModel::mode_kappa(int j) const { return kappa.size() == 1 ? kappa[0] : kappa[j]; }

std::string RegionModel::descriptor() const {
  std::ostringstream os;
  os.precision(15);
  os << to_string(kind) << "(N=" << n_modes << ", n_re=";
  for (std::size_t i = 0; i < n_re.size(); ++i) os << (i ? "/" : "") << n_re[i];
  os << ", kappa=";
  for (std::size_t i = 0; i < kappa.size(); ++i) os << (i ? "/" : "") << kappa[i];
  os << ", L=" << length;
  if (kind == RegionKind::slab_scatterer) os << ", rho=" << rho;
  if (kind == RegionKind::multimode) os << ", seed=" << mixing_seed;
  os << ", gamma_sign=" << static_cast<int>(gamma_sign) << ")";
  return os.str();
}

namespace {

cdouble propagation(double n_re, double kappa, GainSign sign, double energy, double length) {
  const cdouble index(n_re, static_cast<int>(sign) * kappa);
  return std::exp(cdouble(0.0, 1.0) * index * energy * length);
}

ScatteringMatrix reflectionless(const CMatrix& t) {
  const CMatrix zero = CMatrix::Zero(t.rows(), t.cols());
  return ScatteringMatrix::from_blocks(zero, t, t, zero);
}

// Uniform in (0, 1) from the top 53 bits; never returns 0.
double unit_uniform(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

RMatrix mixing_matrix(int n_modes, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  RMatrix g(n_modes, n_modes);
  for (int j = 0; j < n_modes; ++j) {
    for (int i = 0; i < n_modes; ++i) {
      const double u1 = unit_uniform(gen);
      const double u2 = unit_uniform(gen);
      g(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  }
  Eigen::HouseholderQR<RMatrix> qr(g);
  RMatrix q = qr.householderQ() * RMatrix::Identity(n_modes, n_modes);
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n_modes; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

CMatrix transmission(const RegionModel& model, double energy) {
  const auto n = static_cast<Eigen::Index>(model.n_modes);
  switch (model.kind) {
    case RegionKind::ballistic:
      return propagation(model.n_re[0], model.kappa[0], model.gamma_sign, energy, model.length) *
             CMatrix::Identity(n, n);
    case RegionKind::multimode: {
      Eigen::VectorXcd d(n);
      for (int j = 0; j < model.n_modes; ++j) {
        d(j) = propagation(model.mode_n_re(j), model.mode_kappa(j), model.gamma_sign, energy,
                           model.length);
      }
      const CMatrix v = mixing_matrix(model.n_modes, model.mixing_seed).cast<cdouble>();
      return v * d.asDiagonal() * v.transpose();
    }
    case RegionKind::slab_scatterer:
      return evaluate(model, energy).t();
  }
  throw InvalidParam("unknown region kind");
}

ScatteringMatrix evaluate(const RegionModel& model, double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw InvalidParam("energy must be > 0");
  }
  model.validate();
  switch (model.kind) {
    case RegionKind::ballistic:
    case RegionKind::multimode:
      return reflectionless(transmission(model, energy));
    case RegionKind::slab_scatterer: {
      const auto n = static_cast<Eigen::Index>(model.n_modes);
      const cdouble half = propagation(model.n_re[0], model.kappa[0], model.gamma_sign, energy,
                                       0.5 * model.length);
      const ScatteringMatrix segment = reflectionless(half * CMatrix::Identity(n, n));
      const ScatteringMatrix scatterer = mirror_matrix(MirrorSpec{1.0 - model.rho}, model.n_modes);
      // Reflectionless segments keep both interface solves nonsingular.
      const ScatteringMatrix left = star_compose(segment, scatterer).s_total;
      return star_compose(left, segment).s_total;
    }
  }
  throw InvalidParam("unknown region kind");
}

RegionModel pt_partner(const RegionModel& model) {
  RegionModel p = model;
  p.gamma_sign = model.gamma_sign == GainSign::absorbing ? GainSign::amplifying
                                                         : GainSign::absorbing;
  return p;
}

RegionModel detuned_partner(const RegionModel& model, double epsilon) {
  if (!(epsilon > -1.0) || !std::isfinite(epsilon)) {
    throw InvalidParam("detuning epsilon must be > -1");
  }
  RegionModel p = pt_partner(model);
  for (double& k : p.kappa) k *= (1.0 + epsilon);
  return p;
}

double microreversibility_residual(const RegionModel& model, double energy) {
  return microreversibility_residual(evaluate(model, energy),
                                     evaluate(pt_partner(model), energy));
}

}  // namespace ptnoise
