#include "fdjc/special_functions.hpp"
#include "fdjc/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fdjc {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool near_nonpositive_integer(Complex z, double tol) {
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

// Valid for Re(z) >= 0.5.
Complex gamma_lanczos(Complex z) {
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    Complex t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace

void SeriesControl::validate() const {
    if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("SeriesControl: tolerances must be > 0");
}

Complex complex_gamma(Complex z) {
    if (near_nonpositive_integer(z, 1e-12))
        throw PoleError("complex_gamma: argument within 1e-12 of a non-positive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (std::sin(kPi * z) * gamma_lanczos(1.0 - z));
    }
    return gamma_lanczos(z);
}

Complex reciprocal_gamma(Complex z) {
    if (z.real() < 0.5) {
        // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi, finite everywhere
        return std::sin(kPi * z) * gamma_lanczos(1.0 - z) / kPi;
    }
    return 1.0 / gamma_lanczos(z);
}

Complex kummer_1f1(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
    ctl.validate();
    if (near_nonpositive_integer(b, 1e-12))
        throw PoleError("kummer_1f1: b within 1e-12 of a non-positive integer");

    if (z.real() < 0.0) {
        // Kummer transformation keeps the summed argument in the stable half-plane.
        return std::exp(z) * kummer_1f1(b - a, b, -z, ctl);
    }

    // Compensated (Kahan) summation of sum_k (a)_k/(b)_k z^k/k!
    Complex sum = 1.0;
    Complex comp = 0.0;
    Complex term = 1.0;
    int small_run = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        term *= (a + double(k)) / (b + double(k)) * z / double(k + 1);
        Complex y = term - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < ctl.abs_tol + ctl.rel_tol * std::abs(sum)) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
    }
    throw NoConvergence("kummer_1f1: series did not converge in " +
                        std::to_string(ctl.max_terms) + " terms");
}

Complex hermite_h(Complex nu, Complex z, const SeriesControl& ctl) {
    Complex z2 = z * z;
    Complex even = kummer_1f1(-0.5 * nu, Complex(0.5), z2, ctl) *
                   reciprocal_gamma(0.5 * (1.0 - nu));
    Complex odd = 2.0 * z * kummer_1f1(0.5 * (1.0 - nu), Complex(1.5), z2, ctl) *
                  reciprocal_gamma(-0.5 * nu);
    return std::pow(2.0, nu) * std::sqrt(kPi) * (even - odd);
}

} // namespace fdjc
