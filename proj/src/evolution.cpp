#include "vnlw/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vnlw/forms.hpp"

namespace vnlw {

namespace {

void validate_config(const EvolutionConfig& cfg) {
  if (!(cfg.hbar > 0.0)) throw ValidationError("EvolutionConfig: hbar must be positive");
  for (std::size_t i = 1; i < cfg.times.size(); ++i)
    if (!(cfg.times[i] > cfg.times[i - 1]))
      throw ValidationError("EvolutionConfig: times must be strictly ascending");
}

double uniform_spacing(const std::vector<double>& times) {
  if (times.size() < 64)
    throw NonuniformTimes("extract_gaps: need at least 64 uniformly spaced samples");
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i + 1 < times.size(); ++i)
    if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * dt)
      throw NonuniformTimes("extract_gaps: sample times are not uniformly spaced");
  return dt;
}

}  // namespace

Trajectory propagate_vnlw(const BipartiteField& psi0, const EvolutionConfig& cfg) {
  validate_config(cfg);
  if (!(psi0.domain == cfg.op.domain()))
    throw GridMismatch("propagate_vnlw: state not on the operator's domain");

  const int m = cfg.op.size();
  const Eigen::MatrixXd& q = cfg.op.eigenvectors();
  const Eigen::VectorXd& lam = cfg.op.eigenvalues();
  const Eigen::MatrixXcd c0 = q.transpose() * psi0.values * q;

  Eigen::MatrixXd gaps(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gaps(i, j) = lam(i) - lam(j);

  Trajectory traj;
  traj.times = cfg.times;
  traj.states.reserve(cfg.times.size());
  traj.norms.reserve(cfg.times.size());
  for (const double t : cfg.times) {
    Eigen::MatrixXcd ct(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        ct(i, j) = c0(i, j) * std::polar(1.0, -gaps(i, j) * t / cfg.hbar);
    BipartiteField state{psi0.domain, q * ct * q.transpose()};
    traj.norms.push_back(l2_norm(state));
    traj.states.push_back(std::move(state));
  }
  return traj;
}

WaveTrajectory propagate_schrodinger(const WaveFunction& psi0,
                                     const EvolutionConfig& cfg) {
  validate_config(cfg);
  if (!(psi0.domain == cfg.op.domain()))
    throw GridMismatch("propagate_schrodinger: state not on the operator's domain");
  if (psi0.values.size() != cfg.op.size())
    throw GridMismatch("propagate_schrodinger: state size mismatch");

  const Eigen::MatrixXd& q = cfg.op.eigenvectors();
  const Eigen::VectorXd& lam = cfg.op.eigenvalues();
  const Eigen::VectorXcd a0 = q.transpose() * psi0.values;

  WaveTrajectory traj;
  traj.times = cfg.times;
  for (const double t : cfg.times) {
    Eigen::VectorXcd at(a0.size());
    for (Eigen::Index k = 0; k < a0.size(); ++k)
      at(k) = a0(k) * std::polar(1.0, -lam(k) * t / cfg.hbar);
    WaveFunction state{psi0.domain, q * at};
    traj.norms.push_back(l2_norm(state));
    traj.states.push_back(std::move(state));
  }
  return traj;
}

namespace {

template <typename T>
double drift_of(const T& traj) {
  if (traj.states.empty()) throw EmptyTrajectory("norm_drift: empty trajectory");
  const double n0 = traj.norms.front() * traj.norms.front();
  const double denom = n0 > 0.0 ? n0 : 1.0;
  double worst = 0.0;
  for (const double n : traj.norms)
    worst = std::max(worst, std::abs(n * n - n0) / denom);
  return worst;
}

}  // namespace

double norm_drift(const Trajectory& traj) { return drift_of(traj); }
double norm_drift(const WaveTrajectory& traj) { return drift_of(traj); }

double product_form_check(const WaveFunction& psi0, const EvolutionConfig& cfg) {
  BipartiteField big{psi0.domain, psi0.values * psi0.values.adjoint()};
  const Trajectory traj = propagate_vnlw(big, cfg);
  const WaveTrajectory wave = propagate_schrodinger(psi0, cfg);

  double worst = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const Eigen::MatrixXcd product =
        wave.states[i].values * wave.states[i].values.adjoint();
    worst = std::max(worst,
                     (traj.states[i].values - product).cwiseAbs().maxCoeff());
  }
  return worst;
}

double factorization_defect(const BipartiteField& psi0) {
  const Eigen::MatrixXcd herm = 0.5 * (psi0.values + psi0.values.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const Eigen::Index top = es.eigenvalues().size() - 1;
  const double mu = std::max(es.eigenvalues()(top), 0.0);
  const Eigen::VectorXcd psi = std::sqrt(mu) * es.eigenvectors().col(top);
  return (psi0.values - psi * psi.adjoint()).cwiseAbs().maxCoeff();
}

double product_form_check(const BipartiteField& psi0, const EvolutionConfig& cfg) {
  const Eigen::MatrixXcd herm = 0.5 * (psi0.values + psi0.values.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const Eigen::Index top = es.eigenvalues().size() - 1;
  const double mu = std::max(es.eigenvalues()(top), 0.0);
  WaveFunction psi{psi0.domain, std::sqrt(mu) * es.eigenvectors().col(top)};

  const Trajectory traj = propagate_vnlw(psi0, cfg);
  const WaveTrajectory wave = propagate_schrodinger(psi, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const Eigen::MatrixXcd product =
        wave.states[i].values * wave.states[i].values.adjoint();
    worst = std::max(worst,
                     (traj.states[i].values - product).cwiseAbs().maxCoeff());
  }
  return worst;
}

double fourier_bin_width(const Trajectory& traj) {
  const double dt = uniform_spacing(traj.times);
  return 2.0 * std::numbers::pi / (static_cast<double>(traj.times.size()) * dt);
}

std::vector<double> extract_gaps(const Trajectory& traj,
                                 const BipartiteField& probe,
                                 double peak_threshold) {
  const double dt = uniform_spacing(traj.times);
  const int n = static_cast<int>(traj.times.size());

  Eigen::VectorXcd signal(n);
  for (int i = 0; i < n; ++i) signal(i) = functional_l(probe, traj.states[i]);

  // Plain DFT; n is a few hundred samples.
  Eigen::VectorXcd spectrum(n);
  const double step = -2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      acc += signal(j) * std::polar(1.0, step * static_cast<double>(j) * k);
    spectrum(k) = acc;
  }

  const Eigen::VectorXd mag = spectrum.cwiseAbs();
  const double peak_floor = peak_threshold * mag.maxCoeff();
  const double base = 2.0 * std::numbers::pi / (n * dt);

  std::vector<double> freqs;
  for (int k = 0; k < n; ++k) {
    const double prev = mag((k + n - 1) % n);
    const double next = mag((k + 1) % n);
    if (mag(k) >= prev && mag(k) >= next && mag(k) > peak_floor && mag(k) > 0.0) {
      const int signed_k = k <= n / 2 ? k : k - n;
      freqs.push_back(base * signed_k);
    }
  }
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

}  // namespace vnlw
