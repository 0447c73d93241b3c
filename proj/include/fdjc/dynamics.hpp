#pragma once

#include "fdjc/deformation.hpp"
#include "fdjc/special_functions.hpp"

#include <span>
#include <utility>
#include <vector>

namespace fdjc {

/// All physical constants, initial-state coefficients, grids and tolerances
/// for one simulation run. Angular frequencies in rad/s, times in seconds,
/// momenta dimensionless in photon-recoil units (hbar k).
struct ModelParams {
    double lambda_c = 0.0;     // atom-field coupling
    double delta_k_bar = 0.0;  // central detuning at p = 0 (pins omega - nu)
    double kg = 0.0;           // gravitational chirp k.g, 1/s^2
    double nu = 0.0;           // field frequency entering the deformed detuning
    double omega = 0.0;        // atomic frequency; omega - nu = delta_k_bar
    double recoil_rate = 0.0;  // hbar k^2 / M: Doppler shift per unit momentum
    Complex c_e{1.0, 0.0};     // initial excited amplitude
    Complex c_g{0.0, 0.0};     // initial ground amplitude
    PhotonWeights weights;
    DeformationSpec spec;
    int p_nodes = 1;
    std::vector<double> t_grid; // strictly increasing, starts at 0
    SeriesControl tol;

    void validate() const;
    double bare_detuning() const { return omega - nu; } // Delta = omega - nu
};

/// Gauss-Hermite quadrature matched to the momentum density |phi(p)|^2
/// ~ exp(-2 p^2); weights renormalized to a probability measure.
struct MomentumGrid {
    std::vector<double> p;
    std::vector<double> weight;
    int nodes() const { return int(p.size()); }
};

MomentumGrid make_momentum_grid(int nodes);

/// Deformed number-dependent detuning
///   Delta(n) = Delta + nu { n f^2(n) - (n+1) f^2(n+1) + 1 },  Delta = omega - nu.
double detuning_n(const ModelParams& params, int n);

/// Time- and momentum-dependent detuning Delta(n) + recoil_rate p + kg t / 2.
/// This is the phase-averaged form: the accumulated interaction phase is
/// time_detuning(..., t) * t, and the instantaneous detuning carries the
/// full chirp kg t.
double time_detuning(const ModelParams& params, int n, double p, double t);

/// Parameters of the chirped-detuning closed-form solution for one
/// (n, p) block. The solution order is nu_order = -2i a^2 with
/// a^2 = lambda^2 (n+1) f^2(n+1) / (2 kg), and
/// b(t) = e^{i pi/4} (kg t + Delta_k) / sqrt(2 kg).
struct RabiParams {
    Complex a_sq;      // a^2(n)
    Complex nu_order;  // -2i a^2
    double delta_k;    // Delta_k = Delta(n) + recoil_rate p
    double kg;
    double coupling;   // lambda sqrt(n+1) f(n+1)

    Complex b(double t) const;
};

/// Throws DegenerateBranch when kg = 0 (use the flat branch there).
RabiParams rabi_params(const ModelParams& params, int n, double p);

/// Deformed gravity-dependent Rabi frequency squared:
/// Omega^2(p,n,0) = lambda^2 (n+1) f^2(n+1) + Delta_k^2, plus i kg when
/// with_gravity is set.
Complex deformed_rabi_sq(const ModelParams& params, int n, double p, bool with_gravity);

/// Interaction-picture amplitudes of the block (|e,n>, |g,n+1>).
using AmplitudePair = std::pair<Complex, Complex>;

/// Branch-dependent recoil envelopes of the initial wavepacket on a grid:
/// the excited/ground branches carry momentum offsets of -+ hbar k / 2 in
/// the transformed frame, so they sample phi at p +- 1/2. Normalized under
/// the discrete quadrature measure.
struct BranchEnvelopes {
    std::vector<double> e, g;
};
BranchEnvelopes branch_envelopes(const MomentumGrid& grid);

/// Initial amplitudes of block n at momentum value p (continuum-normalized
/// envelopes; evolve_state uses the grid-normalized ones).
AmplitudePair initial_amplitudes(const ModelParams& params, int n, double p);

/// Closed-form amplitudes for kg > 0. Uses the direct Hermite / 1F1
/// two-solution formula with initial-value matching where its power series
/// are certified against cancellation, and analytic continuation of the same
/// second-order equation by locally convergent series elsewhere.
AmplitudePair amplitudes_closed_form(const ModelParams& params, int n, double p, double t);

/// Constant-detuning branch (kg = 0): exact generalized Rabi solution with
/// Omega_R = sqrt(4 lambda^2 (n+1) f^2(n+1) + Delta_k^2) and phases
/// e^{+- i Delta_k t / 2}.
AmplitudePair amplitudes_flat_branch(const ModelParams& params, int n, double p, double t);

/// Classic fixed-step RK4 integration of the block equations of motion;
/// the ground-truth oracle for every closed-form branch. The step is chosen
/// from a quartic error model such that halving it changes results by less
/// than 1e-9 (verified in the test suite).
struct OracleResult {
    std::vector<Complex> psi1, psi2; // over t_grid
};
OracleResult amplitudes_ode_oracle(const ModelParams& params, int n, double p,
                                   std::span<const double> t_grid);

/// Low-level single-block propagators shared by the public operations.
/// g: coupling, delta: constant detuning part, kg: chirp rate. Times must be
/// sorted ascending.
namespace blocks {

AmplitudePair propagate_flat(double g, double delta, AmplitudePair psi0, double t);

void propagate_chirped_series(double g, double delta, double kg, AmplitudePair psi0,
                              std::span<const double> times, Complex* out1, Complex* out2,
                              int stride = 1);

/// Direct evaluation of the Hermite / 1F1 closed form. Returns false when the
/// cancellation certificate fails at any requested time (caller falls back to
/// the series continuation).
bool propagate_chirped_direct(double g, double delta, double kg, AmplitudePair psi0,
                              std::span<const double> times, Complex* out1, Complex* out2,
                              int stride, const SeriesControl& ctl);

void propagate_rk4(double g, double delta, double kg, AmplitudePair psi0,
                   std::span<const double> times, Complex* out1, Complex* out2,
                   int stride = 1, double eps = 1e-8);

} // namespace blocks

/// Complex amplitudes on the (photon number x momentum x time) grid.
/// psi1 rows cover n = 0..n_max (excited branch |e,n>), psi2 rows cover
/// n = 0..n_max+1 (ground branch |g,n>); row 0 of psi2 is the uncoupled
/// |g,0> amplitude, constant in the interaction picture.
struct AmplitudeTrajectory {
    ModelParams params;
    MomentumGrid grid;
    int n_max = 0;

    std::vector<Complex> psi1; // [(n)(ip)(it)]
    std::vector<Complex> psi2;

    int times() const { return int(params.t_grid.size()); }
    int pnodes() const { return grid.nodes(); }

    const Complex& psi1_at(int n, int ip, int it) const {
        return psi1[(size_t(n) * size_t(pnodes()) + size_t(ip)) * size_t(times()) + size_t(it)];
    }
    const Complex& psi2_at(int n, int ip, int it) const {
        return psi2[(size_t(n) * size_t(pnodes()) + size_t(ip)) * size_t(times()) + size_t(it)];
    }
    Complex& psi1_at(int n, int ip, int it) {
        return psi1[(size_t(n) * size_t(pnodes()) + size_t(ip)) * size_t(times()) + size_t(it)];
    }
    Complex& psi2_at(int n, int ip, int it) {
        return psi2[(size_t(n) * size_t(pnodes()) + size_t(ip)) * size_t(times()) + size_t(it)];
    }

    double norm_at(int it) const;
    double max_norm_defect() const; // max |norm(t) - 1| over the grid
};

enum class EvolveMode { ClosedForm, Oracle };

struct EvolveOptions {
    EvolveMode mode = EvolveMode::ClosedForm;
    int threads = 0; // 0: hardware concurrency
};

/// Fills the full (n, p, t) grid: closed form when kg > 0, flat branch when
/// kg = 0, or the RK4 oracle when requested. Parallel over (n, p) blocks with
/// per-block output slots, so results are bit-identical for any thread count.
/// Per-block failures are aggregated with block coordinates.
AmplitudeTrajectory evolve_state(const ModelParams& params, const EvolveOptions& opts = {});

} // namespace fdjc
