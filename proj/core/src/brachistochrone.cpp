#include "spinopt/brachistochrone.hpp"

#include <algorithm>
#include <cmath>

namespace spinopt {

ControlSplit::ControlSplit(GeneratorBasis basis, std::vector<std::size_t> hamiltonian_indices)
    : basis_(std::move(basis)), hamiltonian_(std::move(hamiltonian_indices)) {
  if (hamiltonian_.empty()) throw DomainError("ControlSplit: Hamiltonian span S must be nonempty");
  std::sort(hamiltonian_.begin(), hamiltonian_.end());
  if (std::adjacent_find(hamiltonian_.begin(), hamiltonian_.end()) != hamiltonian_.end()) {
    throw DomainError("ControlSplit: duplicate Hamiltonian label");
  }
  if (hamiltonian_.back() >= basis_.size()) throw DomainError("ControlSplit: index out of range");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (!std::binary_search(hamiltonian_.begin(), hamiltonian_.end(), k)) constraint_.push_back(k);
  }
}

ControlSplit ControlSplit::from_labels(GeneratorBasis basis, std::span<const std::string> hamiltonian_labels) {
  std::vector<std::size_t> indices;
  indices.reserve(hamiltonian_labels.size());
  for (const auto& label : hamiltonian_labels) indices.push_back(basis.index_of(label));
  return ControlSplit(std::move(basis), std::move(indices));
}

std::vector<std::string> ControlSplit::hamiltonian_labels() const {
  std::vector<std::string> out;
  for (auto k : hamiltonian_) out.push_back(basis_.label(k));
  return out;
}

std::vector<std::string> ControlSplit::constraint_labels() const {
  std::vector<std::string> out;
  for (auto k : constraint_) out.push_back(basis_.label(k));
  return out;
}

namespace {

Matrix combine(const GeneratorBasis& basis, std::span<const std::size_t> indices, std::span<const double> coeffs) {
  if (coeffs.size() != indices.size()) {
    throw DimensionError("ControlSplit: expected " + std::to_string(indices.size()) + " coefficients, got " +
                         std::to_string(coeffs.size()));
  }
  Matrix out(basis.dim());
  for (std::size_t k = 0; k < indices.size(); ++k)
    if (coeffs[k] != 0.0) out += basis[indices[k]] * coeffs[k];
  return out;
}

std::vector<double> gather(const std::vector<double>& full, std::span<const std::size_t> indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (auto k : indices) out.push_back(full[k]);
  return out;
}

}  // namespace

Matrix ControlSplit::hamiltonian(std::span<const double> h_coeffs) const {
  return combine(basis_, hamiltonian_, h_coeffs);
}

Matrix ControlSplit::constraint(std::span<const double> f_coeffs) const {
  return combine(basis_, constraint_, f_coeffs);
}

ControlSplit su2_split() {
  const std::vector<std::string> labels{"sx", "sy"};
  return ControlSplit::from_labels(build_basis(GroupId::su2), labels);
}

ControlSplit dirac_split() {
  const std::vector<std::string> labels{"s30", "s21", "s22", "s23"};
  return ControlSplit::from_labels(build_basis(GroupId::su4), labels);
}

OperatorPair pair_from_matrices(const Matrix& hamiltonian, const Matrix& constraint, const ControlSplit& split,
                                double time) {
  const auto& basis = split.basis();
  const auto hc = project_coefficients(hamiltonian, basis).coefficients;
  const auto fc = project_coefficients(constraint, basis).coefficients;
  OperatorPair pair{gather(hc, split.hamiltonian_indices()), gather(fc, split.constraint_indices()), time};

  constexpr double kSpanTolerance = 1e-10;
  if (max_abs_diff(split.hamiltonian(pair.h), hamiltonian) > kSpanTolerance) {
    throw DomainError("pair_from_matrices: Hamiltonian is not contained in the span of S");
  }
  if (max_abs_diff(split.constraint(pair.f), constraint) > kSpanTolerance) {
    throw DomainError("pair_from_matrices: constraint is not contained in the span of S^c");
  }
  return pair;
}

PairRate brachistochrone_rhs(const OperatorPair& state, const ControlSplit& split) {
  const Matrix h = split.hamiltonian(state.h);
  const Matrix f = split.constraint(state.f);
  const Matrix k = bracket(h, f) * (-kI);
  const auto rate = project_coefficients(k, split.basis()).coefficients;
  return {gather(rate, split.hamiltonian_indices()), gather(rate, split.constraint_indices())};
}

Monitors monitors(const OperatorPair& state, const ControlSplit& split) {
  const Matrix h = split.hamiltonian(state.h);
  const Matrix f = split.constraint(state.f);
  return {(h * h).trace().real(), (f * f).trace().real(), (h * f).trace().real()};
}

Monitors Trajectory::max_drift() const {
  Monitors drift;
  if (samples.empty()) return drift;
  const Monitors& first = samples.front().monitors;
  for (const auto& s : samples) {
    drift.tr_h2 = std::max(drift.tr_h2, std::abs(s.monitors.tr_h2 - first.tr_h2));
    drift.tr_f2 = std::max(drift.tr_f2, std::abs(s.monitors.tr_f2 - first.tr_f2));
    drift.tr_hf = std::max(drift.tr_hf, std::abs(s.monitors.tr_hf - first.tr_hf));
  }
  return drift;
}

namespace {

// Flattened state [h..., f...] so RK4 stages are plain vector arithmetic.
std::vector<double> flat_rate(const std::vector<double>& y, std::size_t nh, const ControlSplit& split) {
  OperatorPair pair{{y.begin(), y.begin() + static_cast<std::ptrdiff_t>(nh)},
                    {y.begin() + static_cast<std::ptrdiff_t>(nh), y.end()}};
  PairRate r = brachistochrone_rhs(pair, split);
  r.h.insert(r.h.end(), r.f.begin(), r.f.end());
  return r.h;
}

std::vector<double> axpy(const std::vector<double>& y, double a, const std::vector<double>& k) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

}  // namespace

Trajectory integrate(const OperatorPair& initial, const ControlSplit& split, const IntegrationSettings& settings) {
  if (!(settings.step > 0.0)) throw DomainError("integrate: step h must be positive");
  if (!(settings.horizon > 0.0)) throw DomainError("integrate: horizon T must be positive");
  if (settings.sample_stride == 0) throw DomainError("integrate: sample stride must be >= 1");
  if (initial.h.size() != split.hamiltonian_indices().size() ||
      initial.f.size() != split.constraint_indices().size()) {
    throw DimensionError("integrate: initial coefficients do not match the split");
  }

  const double h = settings.step;
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(settings.horizon / h)));
  const std::size_t nh = initial.h.size();

  std::vector<double> y = initial.h;
  y.insert(y.end(), initial.f.begin(), initial.f.end());

  Trajectory traj;
  traj.samples.reserve(steps / settings.sample_stride + 2);
  auto record = [&](double t) {
    OperatorPair pair{{y.begin(), y.begin() + static_cast<std::ptrdiff_t>(nh)},
                      {y.begin() + static_cast<std::ptrdiff_t>(nh), y.end()}, t};
    const Monitors m = monitors(pair, split);
    traj.samples.push_back({t, std::move(pair.h), std::move(pair.f), m});
  };
  record(initial.time);

  for (std::size_t n = 1; n <= steps; ++n) {
    const auto k1 = flat_rate(y, nh, split);
    const auto k2 = flat_rate(axpy(y, 0.5 * h, k1), nh, split);
    const auto k3 = flat_rate(axpy(y, 0.5 * h, k2), nh, split);
    const auto k4 = flat_rate(axpy(y, h, k3), nh, split);
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(y[i])) {
        throw IntegrationError("integrate: non-finite state at step " + std::to_string(n), n);
      }
    }
    if (n % settings.sample_stride == 0 || n == steps) record(initial.time + static_cast<double>(n) * h);
  }
  return traj;
}

double energy_squared(const DiracSplitState& s) noexcept {
  return s.m * s.m + s.p[0] * s.p[0] + s.p[1] * s.p[1] + s.p[2] * s.p[2];
}

DiracSplitState dirac_split_rhs(const DiracSplitState& s) {
  const double m = s.m;
  const auto& p = s.p;
  const auto& w0 = s.omega0;
  const auto& w2 = s.omega2;
  const auto& w3 = s.omega3;

  DiracSplitState d;
  // dOmega_0j = dOmega_2j = 0 (zero-initialized)
  d.omega10 = -2.0 * m;
  for (int j = 0; j < 3; ++j) d.omega3[j] = 2.0 * p[j];

  d.m = 2.0 * (w2[0] * p[0] + w2[1] * p[1] + w2[2] * p[2]);
  d.p[0] = 2.0 * (-w2[0] * m + w0[2] * p[1] - w0[1] * p[2]);
  d.p[1] = 2.0 * (-w2[1] * m - w0[2] * p[0] + w0[0] * p[2]);
  d.p[2] = 2.0 * (-w2[2] * m + w0[1] * p[0] - w0[0] * p[1]);

  d.omega20 = 2.0 * (m * s.omega10 - p[0] * w3[0] - p[1] * w3[1] - p[2] * w3[2]);
  return d;
}

DiracSplitState dirac_vector_rhs(const DiracSplitState& s) {
  Vec3 n_plus, n_minus, n_sum;
  for (int j = 0; j < 3; ++j) {
    n_plus[j] = s.omega0[j] + s.omega3[j];
    n_minus[j] = s.omega0[j] - s.omega3[j];
    n_sum[j] = n_plus[j] + n_minus[j];
  }
  const auto& p = s.p;
  const Vec3 cross{n_sum[1] * p[2] - n_sum[2] * p[1], n_sum[2] * p[0] - n_sum[0] * p[2],
                   n_sum[0] * p[1] - n_sum[1] * p[0]};

  DiracSplitState d;
  for (int j = 0; j < 3; ++j) {
    d.p[j] = -s.m * n_sum[j] - cross[j];
    // dn+ + dn- = 4p with dn+ = dn-: each equals 2p, so dOmega_0 = 2p and dOmega_3 = 0.
    d.omega0[j] = 2.0 * p[j];
    d.omega3[j] = 0.0;
    d.omega2[j] = 0.0;
  }
  d.omega10 = -s.m;
  d.omega20 = s.m * s.omega10 + (p[0] * (n_plus[0] - n_minus[0]) + p[1] * (n_plus[1] - n_minus[1]) +
                                 p[2] * (n_plus[2] - n_minus[2]));
  d.m = s.omega2[0] * p[0] + s.omega2[1] * p[1] + s.omega2[2] * p[2];
  return d;
}

namespace {

// Canonical su4 label and sign for each component-labelled coefficient.
struct LabelMap {
  const char* label;
  double sign;
};

constexpr LabelMap kMass{"s30", 1.0};
constexpr LabelMap kMomentum[3] = {{"s21", 1.0}, {"s22", 1.0}, {"s23", 1.0}};
constexpr LabelMap kOmega0[3] = {{"s01", 1.0}, {"s02", 1.0}, {"s03", 1.0}};
constexpr LabelMap kOmega2[3] = {{"s11", -1.0}, {"s12", -1.0}, {"s13", -1.0}};
constexpr LabelMap kOmega3[3] = {{"s31", 1.0}, {"s32", 1.0}, {"s33", 1.0}};
constexpr LabelMap kOmega10{"s20", 1.0};
constexpr LabelMap kOmega20{"s10", -1.0};

const ControlSplit& cached_dirac_split() {
  static const ControlSplit split = dirac_split();
  return split;
}

std::size_t slot(std::span<const std::size_t> indices, std::size_t basis_index) {
  return static_cast<std::size_t>(std::find(indices.begin(), indices.end(), basis_index) - indices.begin());
}

}  // namespace

OperatorPair to_operator_pair(const DiracSplitState& s) {
  const ControlSplit& split = cached_dirac_split();
  const auto& basis = split.basis();
  OperatorPair pair{std::vector<double>(split.hamiltonian_indices().size()),
                    std::vector<double>(split.constraint_indices().size()), 0.0};
  auto put_h = [&](const LabelMap& lm, double v) {
    pair.h[slot(split.hamiltonian_indices(), basis.index_of(lm.label))] = lm.sign * v;
  };
  auto put_f = [&](const LabelMap& lm, double v) {
    pair.f[slot(split.constraint_indices(), basis.index_of(lm.label))] = lm.sign * v;
  };
  put_h(kMass, s.m);
  for (int j = 0; j < 3; ++j) {
    put_h(kMomentum[j], s.p[j]);
    put_f(kOmega0[j], s.omega0[j]);
    put_f(kOmega2[j], s.omega2[j]);
    put_f(kOmega3[j], s.omega3[j]);
  }
  put_f(kOmega10, s.omega10);
  put_f(kOmega20, s.omega20);
  return pair;
}

DiracSplitState from_coefficients(std::span<const double> h, std::span<const double> f) {
  const ControlSplit& split = cached_dirac_split();
  const auto& basis = split.basis();
  if (h.size() != split.hamiltonian_indices().size() || f.size() != split.constraint_indices().size()) {
    throw DimensionError("from_coefficients: coefficient counts do not match the Dirac split");
  }
  auto get_h = [&](const LabelMap& lm) {
    return lm.sign * h[slot(split.hamiltonian_indices(), basis.index_of(lm.label))];
  };
  auto get_f = [&](const LabelMap& lm) {
    return lm.sign * f[slot(split.constraint_indices(), basis.index_of(lm.label))];
  };
  DiracSplitState s;
  s.m = get_h(kMass);
  for (int j = 0; j < 3; ++j) {
    s.p[j] = get_h(kMomentum[j]);
    s.omega0[j] = get_f(kOmega0[j]);
    s.omega2[j] = get_f(kOmega2[j]);
    s.omega3[j] = get_f(kOmega3[j]);
  }
  s.omega10 = get_f(kOmega10);
  s.omega20 = get_f(kOmega20);
  return s;
}

DiracSplitState generic_dirac_rhs(const DiracSplitState& s) {
  const PairRate rate = brachistochrone_rhs(to_operator_pair(s), cached_dirac_split());
  return from_coefficients(rate.h, rate.f);
}

}  // namespace spinopt
