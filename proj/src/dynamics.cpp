#include "fdjc/dynamics.hpp"
#include "fdjc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace fdjc {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
} // namespace

void ModelParams::validate() const {
    spec.validate();
    tol.validate();
    if (weights.w.empty()) throw DomainError("ModelParams: photon weights not set");
    double pop = std::norm(c_e) + std::norm(c_g);
    if (std::abs(pop - 1.0) > 1e-12)
        throw DomainError("ModelParams: |c_e|^2 + |c_g|^2 must be 1 within 1e-12");
    if (p_nodes < 1) throw DomainError("ModelParams: p_nodes must be >= 1");
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw DomainError("ModelParams: t_grid must start at 0");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw DomainError("ModelParams: t_grid must be strictly increasing");
    double scale = std::max({1.0, std::abs(omega), std::abs(nu)});
    if (std::abs(omega - nu - delta_k_bar) > 1e-9 * scale)
        throw DomainError("ModelParams: omega - nu must equal delta_k_bar");
}

MomentumGrid make_momentum_grid(int nodes) {
    if (nodes < 1) throw DomainError("make_momentum_grid: nodes must be >= 1");

    // Gauss-Hermite nodes/weights for weight e^{-x^2} (Newton iteration on the
    // orthonormal recurrence), then mapped to the e^{-2p^2} density via
    // p = x / sqrt(2) and renormalized to a probability measure.
    const int n = nodes;
    std::vector<double> x(static_cast<size_t>(n));
    std::vector<double> w(static_cast<size_t>(n));
    const double pim4 = std::pow(kPi, -0.25);
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0) {
            z = std::sqrt(double(2 * n + 1)) - 1.85575 * std::pow(double(2 * n + 1), -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[size_t(i) - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(double(j - 1) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        x[size_t(i)] = z;
        x[size_t(n) - 1 - size_t(i)] = -z;
        w[size_t(i)] = 2.0 / (pp * pp);
        w[size_t(n) - 1 - size_t(i)] = w[size_t(i)];
    }
    if (n % 2 == 1) x[size_t(n) / 2] = 0.0;

    MomentumGrid grid;
    grid.p.resize(size_t(n));
    grid.weight.resize(size_t(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += w[size_t(i)];
    for (int i = 0; i < n; ++i) {
        // ascending in p
        grid.p[size_t(i)] = x[size_t(n) - 1 - size_t(i)] / std::sqrt(2.0);
        grid.weight[size_t(i)] = w[size_t(n) - 1 - size_t(i)] / total;
    }
    return grid;
}

double detuning_n(const ModelParams& params, int n) {
    if (n < 0) throw DomainError("detuning_n: n must be >= 0");
    double fn = f_value(params.spec, n);
    double fn1 = f_value(params.spec, n + 1);
    double brace = double(n) * fn * fn - double(n + 1) * fn1 * fn1 + 1.0;
    return params.bare_detuning() + params.nu * brace;
}

double time_detuning(const ModelParams& params, int n, double p, double t) {
    return detuning_n(params, n) + params.recoil_rate * p + 0.5 * params.kg * t;
}

Complex RabiParams::b(double t) const {
    return std::polar(1.0, kPi / 4.0) * (kg * t + delta_k) / std::sqrt(2.0 * kg);
}

RabiParams rabi_params(const ModelParams& params, int n, double p) {
    if (params.kg <= 0.0)
        throw DegenerateBranch(
            "rabi_params: direct closed form needs kg > 0 (kg = 0: flat branch; "
            "kg < 0: series continuation)");
    RabiParams r;
    double f = f_value(params.spec, n + 1);
    r.coupling = params.lambda_c * std::sqrt(double(n + 1)) * f;
    r.delta_k = detuning_n(params, n) + params.recoil_rate * p;
    r.kg = params.kg;
    r.a_sq = Complex(r.coupling * r.coupling / (2.0 * params.kg), 0.0);
    r.nu_order = -2.0 * kI * r.a_sq;
    return r;
}

Complex deformed_rabi_sq(const ModelParams& params, int n, double p, bool with_gravity) {
    double f = f_value(params.spec, n + 1);
    double g = params.lambda_c * std::sqrt(double(n + 1)) * f;
    double dk = detuning_n(params, n) + params.recoil_rate * p;
    Complex o = g * g + dk * dk;
    if (with_gravity) o += kI * params.kg;
    return o;
}

BranchEnvelopes branch_envelopes(const MomentumGrid& grid) {
    // Branch recoil envelopes: phi(p -+ 1/2) / phi(p) for e/g with
    // |phi|^2 ~ e^{-2 p^2}; the quadrature measure carries |phi(p)|^2.
    // Each branch is renormalized under the discrete measure so the state
    // norm is exactly 1 at any node count (the continuum normalization
    // integral equals 1 analytically).
    BranchEnvelopes env;
    const int P = grid.nodes();
    env.e.resize(size_t(P));
    env.g.resize(size_t(P));
    double ze = 0.0, zg = 0.0;
    for (int i = 0; i < P; ++i) {
        env.e[size_t(i)] = std::exp(-grid.p[size_t(i)] - 0.25);
        env.g[size_t(i)] = std::exp(grid.p[size_t(i)] - 0.25);
        ze += grid.weight[size_t(i)] * env.e[size_t(i)] * env.e[size_t(i)];
        zg += grid.weight[size_t(i)] * env.g[size_t(i)] * env.g[size_t(i)];
    }
    for (int i = 0; i < P; ++i) {
        env.e[size_t(i)] /= std::sqrt(ze);
        env.g[size_t(i)] /= std::sqrt(zg);
    }
    return env;
}

AmplitudePair initial_amplitudes(const ModelParams& params, int n, double p) {
    double eta_e = std::exp(-p - 0.25);
    double eta_g = std::exp(p - 0.25);
    Complex p1 = params.c_e * params.weights(n) * eta_e;
    Complex p2 = params.c_g * params.weights(n + 1) * eta_g;
    return {p1, p2};
}

namespace blocks {

AmplitudePair propagate_flat(double g, double delta, AmplitudePair psi0, double t) {
    const double omega_r = std::sqrt(delta * delta + 4.0 * g * g);
    Complex u = psi0.first, v = psi0.second;
    if (omega_r > 0.0) {
        double th = 0.5 * omega_r * t;
        double c = std::cos(th), s = std::sin(th);
        Complex m11 = c - kI * (delta / omega_r) * s;
        Complex m12 = -kI * (2.0 * g / omega_r) * s;
        Complex m22 = c + kI * (delta / omega_r) * s;
        Complex u1 = m11 * u + m12 * v;
        Complex v1 = m12 * u + m22 * v;
        u = u1;
        v = v1;
    }
    Complex ph = std::polar(1.0, 0.5 * delta * t);
    return {ph * u, v / ph};
}

namespace {

// Accumulated interaction phase delta t + kg t^2 / 2, evaluated in
// double-double arithmetic and reduced mod 2pi. The phase reaches thousands
// of radians at late times; plain double evaluation would feed ~|phi| ulp
// of rounding noise into every sincos and dominate the integrator error.
inline double phase_of(double delta, double kg, double t) {
    double p1 = delta * t;
    double e1 = std::fma(delta, t, -p1);
    double t2 = t * t;
    double e2 = std::fma(t, t, -t2);
    double half_kg = 0.5 * kg;
    double p2 = half_kg * t2;
    double e3 = std::fma(half_kg, t2, -p2) + half_kg * e2;
    double s = p1 + p2;
    double z = s - p1;
    double lo = (p1 - (s - z)) + (p2 - z) + e1 + e3;
    constexpr double twopi_hi = 6.283185307179586232;
    constexpr double twopi_lo = 2.449293598294706414e-16;
    double k = std::nearbyint(s / twopi_hi);
    double r = std::fma(-k, twopi_hi, s);
    return r - k * twopi_lo + lo;
}

} // namespace

void propagate_chirped_series(double g, double delta, double kg, AmplitudePair psi0,
                              std::span<const double> times, Complex* out1, Complex* out2,
                              int stride) {
    if (g == 0.0) { // frozen block
        for (size_t i = 0; i < times.size(); ++i) {
            out1[i * size_t(stride)] = psi0.first;
            out2[i * size_t(stride)] = psi0.second;
        }
        return;
    }

    // Second-order form y'' = i (delta + kg t) y' - g^2 y with y = psi1 and
    // psi2 = (i/g) e^{-i phi(t)} y'. Propagates by locally convergent Taylor
    // series restarted every ~1/omega_loc.
    constexpr int K = 30;
    Complex c[K + 2];
    Complex y = psi0.first;
    Complex yp = -kI * g * psi0.second; // phi(0) = 0

    double t_cur = 0.0;
    double t_comp = 0.0; // Kahan carry for the segment clock
    size_t idx = 0;
    const double t_end = times.empty() ? 0.0 : times.back();
    while (true) {
        double delta_loc = delta + kg * t_cur;
        double omega_loc = std::max({std::abs(delta_loc), 2.0 * g, std::sqrt(std::abs(kg))});
        double h = 1.0 / omega_loc;

        c[0] = y;
        c[1] = yp;
        for (int k = 0; k + 2 <= K + 1; ++k) {
            c[k + 2] = (kI * delta_loc * double(k + 1) * c[k + 1] +
                        (kI * kg * double(k) - g * g) * c[k]) /
                       double((k + 2) * (k + 1));
        }

        auto eval = [&](double s, Complex& ys, Complex& yps) {
            Complex a = c[K + 1], b = c[K + 1] * double(K + 1);
            for (int k = K; k >= 1; --k) {
                a = a * s + c[k];
                b = b * s + c[k] * double(k);
            }
            ys = a * s + c[0];
            yps = b;
        };

        while (idx < times.size() && times[idx] <= t_cur + h + 1e-300) {
            double s = times[idx] - t_cur;
            Complex ys, yps;
            eval(s, ys, yps);
            out1[idx * size_t(stride)] = ys;
            out2[idx * size_t(stride)] =
                kI / g * std::polar(1.0, -phase_of(delta, kg, times[idx])) * yps;
            ++idx;
        }
        if (idx >= times.size() || t_cur >= t_end) break;

        Complex yh, yph;
        eval(h, yh, yph);
        y = yh;
        yp = yph;
        double dt = h - t_comp;
        double tn = t_cur + dt;
        t_comp = (tn - t_cur) - dt;
        t_cur = tn;
    }
}

bool propagate_chirped_direct(double g, double delta, double kg, AmplitudePair psi0,
                              std::span<const double> times, Complex* out1, Complex* out2,
                              int stride, const SeriesControl& ctl) {
    if (g == 0.0 || kg <= 0.0) return false;

    const double sq2kg = std::sqrt(2.0 * kg);
    const Complex root = std::polar(1.0, kPi / 4.0); // principal (-1)^{1/4}
    const double a_sq = g * g / (2.0 * kg);
    const Complex nu = -2.0 * kI * a_sq;

    // Cancellation certificate for the power-series evaluation. The Taylor
    // series of 1F1(a, ., z) peaks near e^{2 sqrt(|a z|)} while |z| <= |a|
    // and near e^{|z|} beyond; refuse when the lost digits would eat the
    // double-precision budget.
    double tmax = times.empty() ? 0.0 : times.back();
    double bmax2 = 0.0;
    for (double tt : {0.0, tmax}) {
        double babs = std::abs(kg * tt + delta) / sq2kg;
        bmax2 = std::max(bmax2, babs * babs);
    }
    double A = a_sq + 1.0;
    double loss = (bmax2 <= A) ? 2.0 * std::sqrt(A * bmax2) : A + bmax2;
    if (loss > 18.0 || bmax2 > 120.0) return false;

    auto b_of = [&](double t) { return root * (kg * t + delta) / sq2kg; };

    const Complex k_pair = kI * (root * kg / sq2kg) / g; // (i c kg / g), c = db/dt factor
    auto basis = [&](double t, Complex& u1, Complex& u2, Complex& v1, Complex& v2) {
        Complex b = b_of(t);
        Complex b2 = b * b;
        Complex emph = std::polar(1.0, -phase_of(delta, kg, t));
        u1 = hermite_h(nu, b, ctl);
        u2 = kummer_1f1(-0.5 * nu, Complex(0.5), b2, ctl);
        v1 = k_pair * 2.0 * nu * emph * hermite_h(nu - 1.0, b, ctl);
        v2 = k_pair * (-2.0 * nu) * b * emph * kummer_1f1(1.0 - 0.5 * nu, Complex(1.5), b2, ctl);
    };

    Complex u10, u20, v10, v20;
    basis(0.0, u10, u20, v10, v20);
    Complex det = u10 * v20 - u20 * v10;
    double scale = std::abs(u10 * v20) + std::abs(u20 * v10);
    if (std::abs(det) < 1e-14 * std::max(scale, 1e-300))
        throw SingularWronskian("chirped closed form: fundamental solutions degenerate at t=0");

    Complex c1 = (v20 * psi0.first - u20 * psi0.second) / det;
    Complex c2 = (u10 * psi0.second - v10 * psi0.first) / det;

    for (size_t i = 0; i < times.size(); ++i) {
        Complex u1, u2, v1, v2;
        basis(times[i], u1, u2, v1, v2);
        out1[i * size_t(stride)] = c1 * u1 + c2 * u2;
        out2[i * size_t(stride)] = c1 * v1 + c2 * v2;
    }
    return true;
}

void propagate_rk4(double g, double delta, double kg, AmplitudePair psi0,
                   std::span<const double> times, Complex* out1, Complex* out2, int stride,
                   double eps) {
    if (g == 0.0) {
        for (size_t i = 0; i < times.size(); ++i) {
            out1[i * size_t(stride)] = psi0.first;
            out2[i * size_t(stride)] = psi0.second;
        }
        return;
    }
    const double T = times.empty() ? 0.0 : times.back();
    const double om = std::abs(delta) + std::abs(kg) * T + 2.0 * g;
    // Quartic global error model E ~ T g om^4 h^4 / 120.
    double h = 0.7 * std::pow(120.0 * eps / (std::max(T, 1e-300) * g * std::pow(om, 4)), 0.25);
    h = std::min(h, 0.2 / std::max(om, 1e-300));
    h = std::max(h, T / 2e8);

    Complex y1 = psi0.first, y2 = psi0.second;
    double t = 0.0;
    auto rhs = [&](double tt, Complex a1, Complex a2, Complex& d1, Complex& d2) {
        Complex e = std::polar(1.0, phase_of(delta, kg, tt));
        d1 = -kI * g * e * a2;
        d2 = -kI * g * std::conj(e) * a1;
    };
    for (size_t i = 0; i < times.size(); ++i) {
        double span = times[i] - t;
        if (span > 0.0) {
            long nsub = std::max(1L, long(std::ceil(span / h)));
            double hs = span / double(nsub);
            for (long s = 0; s < nsub; ++s) {
                // substep times by multiplication: accumulating t would feed
                // rounding drift into the fast phase
                double tt = t + hs * double(s);
                double tm = t + hs * (double(s) + 0.5);
                double te = t + hs * (double(s) + 1.0);
                Complex k11, k12, k21, k22, k31, k32, k41, k42;
                rhs(tt, y1, y2, k11, k12);
                rhs(tm, y1 + 0.5 * hs * k11, y2 + 0.5 * hs * k12, k21, k22);
                rhs(tm, y1 + 0.5 * hs * k21, y2 + 0.5 * hs * k22, k31, k32);
                rhs(te, y1 + hs * k31, y2 + hs * k32, k41, k42);
                y1 += hs / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
                y2 += hs / 6.0 * (k12 + 2.0 * k22 + 2.0 * k32 + k42);
            }
            t = times[i];
        }
        out1[i * size_t(stride)] = y1;
        out2[i * size_t(stride)] = y2;
    }
}

} // namespace blocks

namespace {

struct BlockScalars {
    double g;
    double delta;
};

BlockScalars block_scalars(const ModelParams& params, int n, double p) {
    double f = f_value(params.spec, n + 1);
    return {params.lambda_c * std::sqrt(double(n + 1)) * f,
            detuning_n(params, n) + params.recoil_rate * p};
}

} // namespace

AmplitudePair amplitudes_closed_form(const ModelParams& params, int n, double p, double t) {
    if (params.kg == 0.0)
        throw DegenerateBranch("amplitudes_closed_form: kg = 0, use the flat branch");
    auto [g, delta] = block_scalars(params, n, p);
    AmplitudePair psi0 = initial_amplitudes(params, n, p);
    double times[1] = {t};
    Complex o1, o2;
    if (!blocks::propagate_chirped_direct(g, delta, params.kg, psi0, times, &o1, &o2, 1,
                                          params.tol))
        blocks::propagate_chirped_series(g, delta, params.kg, psi0, times, &o1, &o2, 1);
    return {o1, o2};
}

AmplitudePair amplitudes_flat_branch(const ModelParams& params, int n, double p, double t) {
    if (params.kg != 0.0)
        throw DomainError("amplitudes_flat_branch: requires kg = 0");
    auto [g, delta] = block_scalars(params, n, p);
    return blocks::propagate_flat(g, delta, initial_amplitudes(params, n, p), t);
}

OracleResult amplitudes_ode_oracle(const ModelParams& params, int n, double p,
                                   std::span<const double> t_grid) {
    auto [g, delta] = block_scalars(params, n, p);
    OracleResult r;
    r.psi1.resize(t_grid.size());
    r.psi2.resize(t_grid.size());
    blocks::propagate_rk4(g, delta, params.kg, initial_amplitudes(params, n, p), t_grid,
                          r.psi1.data(), r.psi2.data());
    return r;
}

double AmplitudeTrajectory::norm_at(int it) const {
    double total = 0.0;
    for (int ip = 0; ip < pnodes(); ++ip) {
        double s = 0.0;
        for (int n = 0; n <= n_max; ++n) s += std::norm(psi1_at(n, ip, it));
        for (int n = 0; n <= n_max + 1; ++n) s += std::norm(psi2_at(n, ip, it));
        total += grid.weight[size_t(ip)] * s;
    }
    return total;
}

double AmplitudeTrajectory::max_norm_defect() const {
    double m = 0.0;
    for (int it = 0; it < times(); ++it) m = std::max(m, std::abs(norm_at(it) - 1.0));
    return m;
}

AmplitudeTrajectory evolve_state(const ModelParams& params, const EvolveOptions& opts) {
    params.validate();

    AmplitudeTrajectory traj;
    traj.params = params;
    traj.grid = make_momentum_grid(params.p_nodes);
    traj.n_max = params.weights.n_max;

    const int T = traj.times();
    const int P = traj.grid.nodes();
    const int N = traj.n_max;
    traj.psi1.assign(size_t(N + 1) * size_t(P) * size_t(T), Complex(0.0));
    traj.psi2.assign(size_t(N + 2) * size_t(P) * size_t(T), Complex(0.0));

    const BranchEnvelopes env = branch_envelopes(traj.grid);

    // Uncoupled |g,0> amplitude: constant in the interaction picture.
    for (int ip = 0; ip < P; ++ip) {
        Complex inert = params.c_g * params.weights(0) * env.g[size_t(ip)];
        for (int it = 0; it < T; ++it) traj.psi2_at(0, ip, it) = inert;
    }

    struct Failure {
        int n, ip;
        std::string what;
    };
    std::vector<Failure> failures;
    std::mutex failures_mutex;

    const size_t n_blocks = size_t(N + 1) * size_t(P);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
            int n = int(b / size_t(P));
            int ip = int(b % size_t(P));
            double p = traj.grid.p[size_t(ip)];
            try {
                auto [g, delta] = block_scalars(params, n, p);
                AmplitudePair psi0{params.c_e * params.weights(n) * env.e[size_t(ip)],
                                   params.c_g * params.weights(n + 1) * env.g[size_t(ip)]};
                Complex* o1 = &traj.psi1_at(n, ip, 0);
                Complex* o2 = &traj.psi2_at(n + 1, ip, 0);
                if (opts.mode == EvolveMode::Oracle) {
                    blocks::propagate_rk4(g, delta, params.kg, psi0, params.t_grid, o1, o2);
                } else if (params.kg == 0.0) {
                    for (int it = 0; it < T; ++it) {
                        auto [a1, a2] =
                            blocks::propagate_flat(g, delta, psi0, params.t_grid[size_t(it)]);
                        o1[it] = a1;
                        o2[it] = a2;
                    }
                } else {
                    if (!blocks::propagate_chirped_direct(g, delta, params.kg, psi0,
                                                          params.t_grid, o1, o2, 1, params.tol))
                        blocks::propagate_chirped_series(g, delta, params.kg, psi0, params.t_grid,
                                                         o1, o2);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failures_mutex);
                failures.push_back({n, ip, e.what()});
            }
        }
    };

    int nthreads = opts.threads > 0 ? opts.threads : int(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, 64);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end(), [](const Failure& a, const Failure& b) {
            return std::tie(a.n, a.ip) < std::tie(b.n, b.ip);
        });
        std::string msg = "evolve_state: " + std::to_string(failures.size()) +
                          " block(s) failed; first at (n=" + std::to_string(failures[0].n) +
                          ", ip=" + std::to_string(failures[0].ip) + "): " + failures[0].what;
        throw NumericalError(msg);
    }
    return traj;
}

} // namespace fdjc
