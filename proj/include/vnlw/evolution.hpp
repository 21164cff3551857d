#pragma once

#include <vector>

#include "vnlw/field.hpp"
#include "vnlw/grid.hpp"

namespace vnlw {

struct EvolutionConfig {
  DirichletOperator op;
  double hbar = 1.0;
  std::vector<double> times;  // strictly ascending sample times
};

struct Trajectory {
  std::vector<double> times;
  std::vector<BipartiteField> states;
  std::vector<double> norms;  // L2 norms at the sample times
};

struct WaveTrajectory {
  std::vector<double> times;
  std::vector<WaveFunction> states;
  std::vector<double> norms;
};

/// Exact spectral propagator for i*hbar dPsi/dt = (H_x - H_y) Psi:
/// c_ij(t) = exp(-i (lambda_i - lambda_j) t / hbar) c_ij(0) in the
/// eigen-tensor basis.
Trajectory propagate_vnlw(const BipartiteField& psi0, const EvolutionConfig& cfg);

/// Exact spectral propagator for i*hbar dpsi/dt = H psi:
/// a_k(t) = exp(-i lambda_k t / hbar) a_k(0).
WaveTrajectory propagate_schrodinger(const WaveFunction& psi0,
                                     const EvolutionConfig& cfg);

/// max_t |  ||Psi(t)||^2 - ||Psi(0)||^2 | / ||Psi(0)||^2.
double norm_drift(const Trajectory& traj);
double norm_drift(const WaveTrajectory& traj);

/// Evolves Psi0 = psi0 (x) conj(psi0) and psi0 side by side and returns
/// max_t || Psi(t) - psi(t) (x) conj(psi(t)) ||_inf. Zero (to rounding) is
/// the reduction of the bipartite equation to the one-particle equation.
double product_form_check(const WaveFunction& psi0, const EvolutionConfig& cfg);

/// Same check for a bipartite initial state: the best product factor is
/// extracted from the top eigenpair of the Hermitian part of Psi0, so a
/// non-product Psi0 reports a positive defect.
double product_form_check(const BipartiteField& psi0, const EvolutionConfig& cfg);

/// Rank diagnostic: ||Psi0 - (top eigenpair product)||_inf; zero iff Psi0 is
/// of the form psi (x) conj(psi).
double factorization_defect(const BipartiteField& psi0);

/// Discrete Fourier analysis of t -> h^d sum probe .* conj(Psi(t)). Returns
/// the angular frequencies of the spectral peaks (local maxima above
/// peak_threshold * max magnitude). Requires >= 64 uniformly spaced sample
/// times (throws NonuniformTimes).
std::vector<double> extract_gaps(const Trajectory& traj,
                                 const BipartiteField& probe,
                                 double peak_threshold = 0.05);

/// Angular frequency resolution of the analysis: 2*pi / (n * dt).
double fourier_bin_width(const Trajectory& traj);

}  // namespace vnlw
