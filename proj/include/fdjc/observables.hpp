#pragma once

#include "fdjc/dynamics.hpp"

#include <string>
#include <vector>

namespace fdjc {

/// A named real-valued time series on the run's time grid.
struct ObservableSeries {
    std::string name;
    std::vector<double> t;        // seconds
    std::vector<double> scaled_t; // lambda t
    std::vector<double> value;
};

/// Atomic population inversion <sigma_z>(t). The uncoupled |g,0> amplitude
/// contributes to the ground term.
ObservableSeries population_inversion(const AmplitudeTrajectory& traj);

/// Slowly varying dipole expectations <sigma_x>(t), <sigma_y>(t). The
/// e^{-i omega t} factor of the quadrature operators cancels the restored
/// free atomic phase exactly; what remains is the Doppler/gravity phase of
/// each momentum node.
std::pair<ObservableSeries, ObservableSeries> dipole_expectations(const AmplitudeTrajectory& traj,
                                                                  double omega);

/// Dipole squeezing indicators F_i(t) = 1 - 4 <sigma_i>^2 - |<sigma_z>|,
/// negative values signal squeezing.
std::pair<ObservableSeries, ObservableSeries> dipole_squeezing(const AmplitudeTrajectory& traj,
                                                               double omega);

/// Momentum spread sqrt(<p^2> - <p>^2) in recoil units. Physical momenta
/// carry the branch recoil offsets (p + 1/2 on the excited branch, p - 1/2
/// on the ground branch) that the transformed frame hides.
ObservableSeries momentum_diffusion(const AmplitudeTrajectory& traj);

/// Photon-number distribution p(n, t) at one stored time, n = 0..n_max+1.
std::vector<double> photon_distribution(const AmplitudeTrajectory& traj, int t_index);

/// Equal-time second-order correlation (<n^2> - <n>) / <n>^2.
/// Throws DegenerateField if <n> < 1e-12 at some time.
ObservableSeries g2(const AmplitudeTrajectory& traj);

/// Field moments xi = <A+A>, eta = <A> e^{i nu t}, zeta = <A^2> e^{2 i nu t},
/// with Schroedinger-picture phases restored before the e^{i nu t} factors
/// (the interaction picture drops the n-dependent phases of the free
/// deformed field, which matter for moments that mix photon numbers).
struct FieldMoments {
    std::vector<double> t, scaled_t;
    std::vector<double> xi;
    std::vector<Complex> eta, zeta;
};
FieldMoments field_moments(const AmplitudeTrajectory& traj, double nu);

/// Quadrature squeezing parameters of the deformed field quadratures:
///   S1 = 2 xi + 2 Re zeta - 4 (Re eta)^2,
///   S2 = 2 xi - 2 Re zeta - 4 (Im eta)^2;
/// S_j < 0 means fluctuations below the deformed-commutator floor.
std::pair<ObservableSeries, ObservableSeries> quadrature_squeezing(const AmplitudeTrajectory& traj,
                                                                   double nu);

/// Expectation of the deformed commutator diagonal
/// (n+1) f^2(n+1) - n f^2(n) at one stored time. Used by the uncertainty
/// checks around the squeezing parameters.
double deformed_commutator_mean(const AmplitudeTrajectory& traj, int t_index);

} // namespace fdjc
