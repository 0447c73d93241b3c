#include "fdjc/observables.hpp"
#include "fdjc/errors.hpp"

#include <cmath>

namespace fdjc {

namespace {

ObservableSeries make_series(const AmplitudeTrajectory& traj, std::string name) {
    ObservableSeries s;
    s.name = std::move(name);
    s.t = traj.params.t_grid;
    s.scaled_t.resize(s.t.size());
    for (size_t i = 0; i < s.t.size(); ++i) s.scaled_t[i] = traj.params.lambda_c * s.t[i];
    s.value.assign(s.t.size(), 0.0);
    return s;
}

// n f^2(n) for n = 0..count-1.
std::vector<double> number_eigenvalues(const DeformationSpec& spec, int count) {
    std::vector<double> x(static_cast<size_t>(count));
    for (int n = 0; n < count; ++n) {
        double f = f_value(spec, n);
        x[size_t(n)] = double(n) * f * f;
    }
    return x;
}

// Doppler/gravity phase common to the dipole pairing at node p.
inline double doppler_phase(const ModelParams& mp, double p, double t) {
    return (mp.recoil_rate * p + 0.5 * mp.kg * t) * t;
}

} // namespace

ObservableSeries population_inversion(const AmplitudeTrajectory& traj) {
    ObservableSeries s = make_series(traj, "W");
    const int N = traj.n_max, P = traj.pnodes(), T = traj.times();
    for (int it = 0; it < T; ++it) {
        double acc = 0.0;
        for (int ip = 0; ip < P; ++ip) {
            double loc = 0.0;
            for (int n = 0; n <= N; ++n) loc += std::norm(traj.psi1_at(n, ip, it));
            for (int n = 0; n <= N + 1; ++n) loc -= std::norm(traj.psi2_at(n, ip, it));
            acc += traj.grid.weight[size_t(ip)] * loc;
        }
        s.value[size_t(it)] = acc;
    }
    return s;
}

std::pair<ObservableSeries, ObservableSeries> dipole_expectations(const AmplitudeTrajectory& traj,
                                                                  double omega) {
    ObservableSeries sx = make_series(traj, "sx");
    ObservableSeries sy = make_series(traj, "sy");
    const auto& mp = traj.params;
    const int N = traj.n_max, P = traj.pnodes(), T = traj.times();
    for (int it = 0; it < T; ++it) {
        double t = mp.t_grid[size_t(it)];
        Complex acc = 0.0;
        for (int ip = 0; ip < P; ++ip) {
            Complex pair = 0.0;
            for (int n = 0; n <= N; ++n)
                pair += std::conj(traj.psi1_at(n, ip, it)) * traj.psi2_at(n, ip, it);
            acc += traj.grid.weight[size_t(ip)] *
                   std::polar(1.0, doppler_phase(mp, traj.grid.p[size_t(ip)], t)) * pair;
        }
        // Residual rotation if the caller's frame differs from the run's omega.
        acc *= std::polar(1.0, (mp.omega - omega) * t);
        sx.value[size_t(it)] = acc.real();
        sy.value[size_t(it)] = acc.imag();
    }
    return {sx, sy};
}

std::pair<ObservableSeries, ObservableSeries> dipole_squeezing(const AmplitudeTrajectory& traj,
                                                               double omega) {
    auto [sx, sy] = dipole_expectations(traj, omega);
    ObservableSeries w = population_inversion(traj);
    ObservableSeries fx = make_series(traj, "Fx");
    ObservableSeries fy = make_series(traj, "Fy");
    for (size_t i = 0; i < fx.value.size(); ++i) {
        double aw = std::abs(w.value[i]);
        fx.value[i] = 1.0 - 4.0 * sx.value[i] * sx.value[i] - aw;
        fy.value[i] = 1.0 - 4.0 * sy.value[i] * sy.value[i] - aw;
    }
    return {fx, fy};
}

ObservableSeries momentum_diffusion(const AmplitudeTrajectory& traj) {
    ObservableSeries s = make_series(traj, "dp");
    const int N = traj.n_max, P = traj.pnodes(), T = traj.times();
    for (int it = 0; it < T; ++it) {
        double m1 = 0.0, m2 = 0.0;
        for (int ip = 0; ip < P; ++ip) {
            double w = traj.grid.weight[size_t(ip)];
            double pe = traj.grid.p[size_t(ip)] + 0.5;
            double pg = traj.grid.p[size_t(ip)] - 0.5;
            double rho_e = 0.0, rho_g = 0.0;
            for (int n = 0; n <= N; ++n) rho_e += std::norm(traj.psi1_at(n, ip, it));
            for (int n = 0; n <= N + 1; ++n) rho_g += std::norm(traj.psi2_at(n, ip, it));
            m1 += w * (pe * rho_e + pg * rho_g);
            m2 += w * (pe * pe * rho_e + pg * pg * rho_g);
        }
        s.value[size_t(it)] = std::sqrt(std::max(0.0, m2 - m1 * m1));
    }
    return s;
}

std::vector<double> photon_distribution(const AmplitudeTrajectory& traj, int t_index) {
    const int N = traj.n_max, P = traj.pnodes();
    if (t_index < 0 || t_index >= traj.times())
        throw DomainError("photon_distribution: t_index out of range");
    std::vector<double> pn(size_t(N) + 2, 0.0);
    for (int ip = 0; ip < P; ++ip) {
        double w = traj.grid.weight[size_t(ip)];
        for (int n = 0; n <= N; ++n) pn[size_t(n)] += w * std::norm(traj.psi1_at(n, ip, t_index));
        for (int n = 0; n <= N + 1; ++n)
            pn[size_t(n)] += w * std::norm(traj.psi2_at(n, ip, t_index));
    }
    return pn;
}

ObservableSeries g2(const AmplitudeTrajectory& traj) {
    ObservableSeries s = make_series(traj, "g2");
    for (int it = 0; it < traj.times(); ++it) {
        std::vector<double> pn = photon_distribution(traj, it);
        double m1 = 0.0, m2 = 0.0;
        for (size_t n = 0; n < pn.size(); ++n) {
            m1 += double(n) * pn[n];
            m2 += double(n) * double(n) * pn[n];
        }
        if (m1 < 1e-12) throw DegenerateField("g2: mean photon number below 1e-12");
        s.value[size_t(it)] = (m2 - m1) / (m1 * m1);
    }
    return s;
}

FieldMoments field_moments(const AmplitudeTrajectory& traj, double nu) {
    const auto& mp = traj.params;
    const int N = traj.n_max, P = traj.pnodes(), T = traj.times();

    FieldMoments fm;
    fm.t = mp.t_grid;
    fm.scaled_t.resize(fm.t.size());
    for (size_t i = 0; i < fm.t.size(); ++i) fm.scaled_t[i] = mp.lambda_c * fm.t[i];
    fm.xi.assign(size_t(T), 0.0);
    fm.eta.assign(size_t(T), Complex(0.0));
    fm.zeta.assign(size_t(T), Complex(0.0));

    // Ladder amplitudes and number eigenvalues up to the psi2 top row.
    std::vector<double> X = number_eigenvalues(mp.spec, N + 2);
    std::vector<double> amp(size_t(N) + 1); // <n|A|n+1>
    for (int n = 0; n <= N; ++n)
        amp[size_t(n)] = std::sqrt(double(n + 1)) * f_value(mp.spec, n + 1);

    for (int it = 0; it < T; ++it) {
        double t = mp.t_grid[size_t(it)];
        double xi_acc = 0.0;
        Complex eta_acc = 0.0, zeta_acc = 0.0;
        for (int ip = 0; ip < P; ++ip) {
            double w = traj.grid.weight[size_t(ip)];
            double xr = 0.0;
            Complex er = 0.0, zr = 0.0;
            for (int n = 0; n <= N + 1; ++n) {
                double dens = std::norm(traj.psi2_at(n, ip, it)) +
                              (n <= N ? std::norm(traj.psi1_at(n, ip, it)) : 0.0);
                xr += X[size_t(n)] * dens;
            }
            for (int n = 0; n <= N; ++n) {
                Complex pair = std::conj(traj.psi2_at(n, ip, it)) * traj.psi2_at(n + 1, ip, it);
                if (n + 1 <= N)
                    pair += std::conj(traj.psi1_at(n, ip, it)) * traj.psi1_at(n + 1, ip, it);
                // Restored free-field phase of the (n, n+1) coherence.
                er += amp[size_t(n)] * pair *
                      std::polar(1.0, -mp.nu * (X[size_t(n) + 1] - X[size_t(n)]) * t);
            }
            for (int n = 0; n + 2 <= N + 1; ++n) {
                Complex pair = std::conj(traj.psi2_at(n, ip, it)) * traj.psi2_at(n + 2, ip, it);
                if (n + 2 <= N)
                    pair += std::conj(traj.psi1_at(n, ip, it)) * traj.psi1_at(n + 2, ip, it);
                zr += amp[size_t(n)] * amp[size_t(n) + 1] * pair *
                      std::polar(1.0, -mp.nu * (X[size_t(n) + 2] - X[size_t(n)]) * t);
            }
            xi_acc += w * xr;
            eta_acc += w * er;
            zeta_acc += w * zr;
        }
        fm.xi[size_t(it)] = xi_acc;
        fm.eta[size_t(it)] = eta_acc * std::polar(1.0, nu * t);
        fm.zeta[size_t(it)] = zeta_acc * std::polar(1.0, 2.0 * nu * t);
    }
    return fm;
}

std::pair<ObservableSeries, ObservableSeries> quadrature_squeezing(const AmplitudeTrajectory& traj,
                                                                   double nu) {
    FieldMoments fm = field_moments(traj, nu);
    ObservableSeries s1 = make_series(traj, "S1");
    ObservableSeries s2 = make_series(traj, "S2");
    for (size_t i = 0; i < fm.xi.size(); ++i) {
        double re = fm.eta[i].real(), im = fm.eta[i].imag();
        s1.value[i] = 2.0 * fm.xi[i] + 2.0 * fm.zeta[i].real() - 4.0 * re * re;
        s2.value[i] = 2.0 * fm.xi[i] - 2.0 * fm.zeta[i].real() - 4.0 * im * im;
    }
    return {s1, s2};
}

double deformed_commutator_mean(const AmplitudeTrajectory& traj, int t_index) {
    std::vector<double> pn = photon_distribution(traj, t_index);
    double acc = 0.0;
    for (size_t n = 0; n < pn.size(); ++n) {
        double fn = f_value(traj.params.spec, int(n));
        double fn1 = f_value(traj.params.spec, int(n) + 1);
        acc += pn[n] * (double(n + 1) * fn1 * fn1 - double(n) * fn * fn);
    }
    return acc;
}

} // namespace fdjc
