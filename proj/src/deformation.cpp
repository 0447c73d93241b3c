#include "fdjc/deformation.hpp"
#include "fdjc/errors.hpp"

#include <cmath>
#include <string>

namespace fdjc {

void DeformationSpec::validate() const {
    switch (kind) {
        case DeformationKind::Identity:
            break;
        case DeformationKind::QType:
            if (!(q > 0.0) || q == 1.0)
                throw DomainError("DeformationSpec: q_type requires q > 0, q != 1");
            break;
        case DeformationKind::Kerr:
            if (!(kappa >= 0.0))
                throw DomainError("DeformationSpec: kerr requires kappa >= 0");
            break;
    }
}

double f_value(const DeformationSpec& spec, int n) {
    if (n < 0) throw DomainError("f_value: n must be >= 0");
    if (n == 0) return 1.0; // convention, see header
    switch (spec.kind) {
        case DeformationKind::Identity:
            return 1.0;
        case DeformationKind::QType: {
            // (1-q^n)/(n(1-q)), written with q^n-1 for q > 1 to avoid
            // sign cancellation in both numerator and denominator.
            double r = (spec.q > 1.0) ? (std::pow(spec.q, n) - 1.0) / (double(n) * (spec.q - 1.0))
                                      : (1.0 - std::pow(spec.q, n)) / (double(n) * (1.0 - spec.q));
            if (r < 0.0) throw DomainError("f_value: negative radicand for q_type at n=" + std::to_string(n));
            return std::sqrt(r);
        }
        case DeformationKind::Kerr: {
            double r = 1.0 + spec.kappa * (double(n) - 1.0);
            if (r < 0.0) throw DomainError("f_value: negative radicand for kerr at n=" + std::to_string(n));
            return std::sqrt(r);
        }
    }
    throw DomainError("f_value: unknown deformation kind");
}

double deformed_factorial_log(const DeformationSpec& spec, int n) {
    if (n < 0) throw DomainError("deformed_factorial_log: n must be >= 0");
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        double f = f_value(spec, k);
        acc += std::log(double(k) * f * f);
    }
    return acc;
}

double deformed_factorial(const DeformationSpec& spec, int n) {
    return std::exp(deformed_factorial_log(spec, n));
}

double PhotonWeights::mean_photon_number() const {
    double m = 0.0;
    for (int n = 0; n <= n_max; ++n) m += double(n) * w[size_t(n)] * w[size_t(n)];
    return m;
}

PhotonWeights q_coherent_weights(const DeformationSpec& spec, double alpha, double tail_tol) {
    spec.validate();
    if (alpha < 0.0) throw DomainError("q_coherent_weights: alpha must be >= 0");
    if (!(tail_tol > 0.0)) throw DomainError("q_coherent_weights: tail_tol must be > 0");

    const int window = 4 * int(std::ceil(alpha * alpha)) + 200;

    // Unnormalized squared weights in log space: 2n ln(alpha) - ln([n f^2]!).
    std::vector<double> logw2(size_t(window) + 1);
    double logfact = 0.0;
    double logalpha = (alpha > 0.0) ? std::log(alpha) : 0.0;
    for (int n = 0; n <= window; ++n) {
        if (n > 0) {
            double f = f_value(spec, n);
            logfact += std::log(double(n) * f * f);
        }
        logw2[size_t(n)] = (alpha > 0.0) ? 2.0 * double(n) * logalpha - logfact
                                         : (n == 0 ? 0.0 : -1e300);
    }

    // Scale by the max to avoid overflow, then normalize.
    double peak = logw2[0];
    for (double v : logw2) peak = std::max(peak, v);
    std::vector<double> w2(size_t(window) + 1);
    double total = 0.0;
    for (int n = 0; n <= window; ++n) {
        w2[size_t(n)] = std::exp(logw2[size_t(n)] - peak);
        total += w2[size_t(n)];
    }

    // Non-normalizable states (possible for q < 1 with alpha past the
    // convergence radius) have weights still growing at the window edge.
    if (w2[size_t(window)] > w2[size_t(window) - 1])
        throw NoConvergence("q_coherent_weights: weights diverge, state not normalizable");

    // Smallest n with tail mass below tail_tol. The window has 200 terms of
    // slack past 4*ceil(alpha^2), so a convergent distribution meets the
    // bound well before the edge; the last 50 terms act as a guard band.
    double tail = total;
    int n_max = -1;
    for (int n = 0; n <= window - 50; ++n) {
        tail -= w2[size_t(n)];
        if (tail < tail_tol * total) {
            n_max = n;
            break;
        }
    }
    if (n_max < 0)
        throw NoConvergence("q_coherent_weights: tail bound not met within scan window");

    PhotonWeights out;
    out.alpha = alpha;
    out.n_max = n_max;
    out.w.resize(size_t(n_max) + 1);
    double head = 0.0;
    for (int n = 0; n <= n_max; ++n) head += w2[size_t(n)];
    for (int n = 0; n <= n_max; ++n) out.w[size_t(n)] = std::sqrt(w2[size_t(n)] / head);
    return out;
}

} // namespace fdjc
