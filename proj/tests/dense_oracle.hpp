// Test-only brute-force observable computation: rebuilds the full
// Schroedinger-picture state vector per momentum node and evaluates every
// observable through dense operator matrices. Independent of the streaming
// formulas in src/observables.cpp; shares only the trajectory data.
#pragma once

#include "fdjc/dynamics.hpp"
#include "fdjc/fock_algebra.hpp"

#include <cmath>
#include <vector>

namespace dense {

using fdjc::AmplitudeTrajectory;
using fdjc::CMatrix;
using fdjc::Complex;

struct Snapshot {
    double W = 0.0;
    double sx = 0.0, sy = 0.0;
    double Fx = 0.0, Fy = 0.0;
    double dp = 0.0;
    std::vector<double> pn;
    double g2 = 0.0;
    double xi = 0.0;
    Complex eta{0.0}, zeta{0.0};
    double S1 = 0.0, S2 = 0.0;
    double S1_var = 0.0, S2_var = 0.0; // via 4 Var(X_j) - <B>
    double commutator_mean = 0.0;
    double var_x1 = 0.0, var_x2 = 0.0;
};

inline Snapshot snapshot(const AmplitudeTrajectory& traj, int it) {
    const auto& mp = traj.params;
    // Field levels 0..n_max+1 hold the state; two empty pad levels keep
    // operator products (e.g. the squared quadratures) exact on the support.
    const int NS = traj.n_max + 2;
    const int NF = NS + 2;
    const double t = mp.t_grid[size_t(it)];

    // Field operators on the truncated space.
    CMatrix A(NF, NF), N(NF, NF), B(NF, NF);
    for (int n = 0; n + 1 < NF; ++n)
        A(n, n + 1) = std::sqrt(double(n + 1)) * f_value(mp.spec, n + 1);
    for (int n = 0; n < NF; ++n) {
        double fn = f_value(mp.spec, n), fn1 = f_value(mp.spec, n + 1);
        N(n, n) = double(n) * fn * fn;
        B(n, n) = double(n + 1) * fn1 * fn1 - double(n) * fn * fn;
    }
    CMatrix Adag = A.adjoint();
    CMatrix AdA = Adag * A;
    CMatrix AA = A * A;
    Complex enu = std::polar(1.0, mp.nu * t);
    // Quadratures built from the rotated ladder operator a~ = A e^{i nu t}.
    CMatrix X1(NF, NF), X2(NF, NF);
    for (int i = 0; i < NF; ++i)
        for (int j = 0; j < NF; ++j) {
            Complex up = A(i, j) * enu, dn = Adag(i, j) * std::conj(enu);
            X1(i, j) = 0.5 * (up + dn);
            X2(i, j) = (up - dn) / Complex(0.0, 2.0);
        }
    CMatrix X1sq = X1 * X1, X2sq = X2 * X2;

    Snapshot s;
    s.pn.assign(size_t(NF), 0.0);
    Complex coh = 0.0;
    double m1 = 0.0, m2 = 0.0;
    double ex1 = 0.0, ex2 = 0.0, ex1sq = 0.0, ex2sq = 0.0;

    for (int ip = 0; ip < traj.pnodes(); ++ip) {
        const double p = traj.grid.p[size_t(ip)];
        const double w = traj.grid.weight[size_t(ip)];
        const double D = (mp.recoil_rate * p + 0.5 * mp.kg * t) * t;

        // Restored Schroedinger-picture branch amplitudes.
        std::vector<Complex> pe(size_t(NF), Complex(0.0)), pg(size_t(NF), Complex(0.0));
        for (int n = 0; n < NS; ++n) {
            double X = N(n, n).real();
            if (n <= traj.n_max) {
                double th_e = mp.nu * X * t + 0.5 * mp.omega * t + 0.5 * D;
                pe[size_t(n)] = traj.psi1_at(n, ip, it) * std::polar(1.0, -th_e);
            }
            double th_g = mp.nu * X * t - 0.5 * mp.omega * t - 0.5 * D;
            pg[size_t(n)] = traj.psi2_at(n, ip, it) * std::polar(1.0, -th_g);
        }

        auto expect = [&](const CMatrix& op, const std::vector<Complex>& v) {
            Complex acc = 0.0;
            auto ov = op.apply(v);
            for (int n = 0; n < NF; ++n) acc += std::conj(v[size_t(n)]) * ov[size_t(n)];
            return acc;
        };

        double rho_e = 0.0, rho_g = 0.0;
        for (int n = 0; n < NF; ++n) {
            rho_e += std::norm(pe[size_t(n)]);
            rho_g += std::norm(pg[size_t(n)]);
            s.pn[size_t(n)] += w * (std::norm(pe[size_t(n)]) + std::norm(pg[size_t(n)]));
        }
        s.W += w * (rho_e - rho_g);
        for (int n = 0; n < NF; ++n) coh += w * std::conj(pe[size_t(n)]) * pg[size_t(n)];
        m1 += w * ((p + 0.5) * rho_e + (p - 0.5) * rho_g);
        m2 += w * ((p + 0.5) * (p + 0.5) * rho_e + (p - 0.5) * (p - 0.5) * rho_g);

        for (const auto* v : {&pe, &pg}) {
            s.xi += w * expect(AdA, *v).real();
            s.eta += w * expect(A, *v) * enu;
            s.zeta += w * expect(AA, *v) * enu * enu;
            s.commutator_mean += w * expect(B, *v).real();
            ex1 += w * expect(X1, *v).real();
            ex2 += w * expect(X2, *v).real();
            ex1sq += w * expect(X1sq, *v).real();
            ex2sq += w * expect(X2sq, *v).real();
        }
    }

    Complex rot = std::polar(1.0, -mp.omega * t);
    s.sx = (coh * rot).real();
    s.sy = (coh * rot).imag();
    s.Fx = 1.0 - 4.0 * s.sx * s.sx - std::abs(s.W);
    s.Fy = 1.0 - 4.0 * s.sy * s.sy - std::abs(s.W);
    s.dp = std::sqrt(std::max(0.0, m2 - m1 * m1));
    double n1 = 0.0, n2 = 0.0;
    for (int n = 0; n < NF; ++n) {
        n1 += double(n) * s.pn[size_t(n)];
        n2 += double(n) * double(n) * s.pn[size_t(n)];
    }
    s.g2 = (n2 - n1) / (n1 * n1);
    s.S1 = 2.0 * s.xi + 2.0 * s.zeta.real() - 4.0 * s.eta.real() * s.eta.real();
    s.S2 = 2.0 * s.xi - 2.0 * s.zeta.real() - 4.0 * s.eta.imag() * s.eta.imag();
    s.var_x1 = ex1sq - ex1 * ex1;
    s.var_x2 = ex2sq - ex2 * ex2;
    s.S1_var = 4.0 * s.var_x1 - s.commutator_mean;
    s.S2_var = 4.0 * s.var_x2 - s.commutator_mean;
    return s;
}

} // namespace dense
