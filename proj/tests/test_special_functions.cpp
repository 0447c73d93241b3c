#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdjc/errors.hpp"
#include "fdjc/special_functions.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using fdjc::Complex;
using fdjc::complex_gamma;
using fdjc::hermite_h;
using fdjc::kummer_1f1;
using fdjc::SeriesControl;

namespace {

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Hermite polynomials by the three-term recurrence, the independent
// reference for integer order.
double hermite_poly(int n, double z) {
    double h0 = 1.0, h1 = 2.0 * z;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int k = 1; k < n; ++k) {
        double h2 = 2.0 * z * h1 - 2.0 * double(k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// Independent oracle for complex order with Re(nu) < 0: the integral
// representation H(nu,z) = (1/Gamma(-nu)) int_0^inf e^{-t^2-2tz} t^{-nu-1} dt,
// evaluated on the log axis t = e^u by the trapezoid rule (the integrand
// decays double-exponentially at +inf and like e^{Re(-nu) u} at -inf).
Complex hermite_integral_oracle(Complex nu, Complex z) {
    const double lo = -70.0, hi = 4.0, h = 1e-3;
    Complex acc = 0.0;
    long steps = std::lround((hi - lo) / h);
    for (long i = 0; i <= steps; ++i) {
        double u = lo + h * double(i);
        double eu = std::exp(u);
        Complex val = std::exp(Complex(-eu * eu, 0.0) - 2.0 * z * eu - nu * u);
        acc += (i == 0 || i == steps) ? 0.5 * val : val;
    }
    return acc * h / complex_gamma(-nu);
}

} // namespace

TEST_CASE("gamma at classic points") {
    CHECK(rel_err(complex_gamma(Complex(1.0)), Complex(1.0)) < 1e-14);
    CHECK(rel_err(complex_gamma(Complex(0.5)), Complex(std::sqrt(std::numbers::pi))) < 1e-13);
    CHECK(rel_err(complex_gamma(Complex(5.0)), Complex(24.0)) < 1e-13);
    // frozen 40-digit oracle values (Stirling series + recurrence)
    CHECK(rel_err(complex_gamma(Complex(1.0, 1.0)),
                  Complex(0.4980156681183560427, -0.1549498283018106851)) < 1e-12);
    CHECK(rel_err(complex_gamma(Complex(0.5, 3.0)),
                  Complex(0.0214456705524306460596, 0.0068653648372616779142)) < 1e-12);
}

TEST_CASE("gamma reflection identity") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> re(-8.0, 8.0), im(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        Complex z(re(rng), im(rng));
        if (std::abs(z.real() - std::round(z.real())) < 0.05 && std::abs(z.imag()) < 0.05)
            continue;
        Complex lhs = complex_gamma(z) * complex_gamma(1.0 - z);
        Complex rhs = std::numbers::pi / std::sin(std::numbers::pi * z);
        CHECK(rel_err(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("gamma pole handling") {
    CHECK_THROWS_AS(complex_gamma(Complex(0.0)), fdjc::PoleError);
    CHECK_THROWS_AS(complex_gamma(Complex(-3.0, 1e-13)), fdjc::PoleError);
    CHECK(std::abs(fdjc::reciprocal_gamma(Complex(-3.0))) < 1e-12);
    CHECK(rel_err(fdjc::reciprocal_gamma(Complex(3.0)), Complex(0.5)) < 1e-13);
}

TEST_CASE("1f1 basics") {
    CHECK(kummer_1f1(Complex(0.7, 0.3), Complex(1.2), Complex(0.0)) == Complex(1.0));
    // 1F1(1,2,z) = (e^z - 1)/z
    CHECK(rel_err(kummer_1f1(Complex(1.0), Complex(2.0), Complex(1.0)),
                  Complex(std::numbers::e - 1.0)) < 1e-14);
    // frozen 40-digit direct-summation oracle
    CHECK(rel_err(kummer_1f1(Complex(0.5, 1.0), Complex(0.5), Complex(0.3, 0.2)),
                  Complex(0.7144531219076502295, 0.8299049184177376422)) < 1e-13);
}

TEST_CASE("1f1 kummer transformation self-consistency") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        Complex a(u(rng), u(rng));
        Complex b(u(rng), u(rng));
        if (b.real() < 0.5 && std::abs(b.imag()) < 0.2) continue; // keep away from poles
        Complex z(u(rng), u(rng));
        Complex lhs = kummer_1f1(a, b, z);
        Complex rhs = std::exp(z) * kummer_1f1(b - a, b, -z);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("1f1 contiguous relation") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        Complex a(u(rng), u(rng));
        Complex b(2.5 + std::abs(u(rng)), u(rng));
        Complex z(u(rng), u(rng));
        Complex r = (b - a) * kummer_1f1(a - 1.0, b, z) +
                    (2.0 * a - b + z) * kummer_1f1(a, b, z) - a * kummer_1f1(a + 1.0, b, z);
        double scale = std::abs(kummer_1f1(a, b, z)) * (std::abs(a) + std::abs(b) + std::abs(z));
        CHECK(std::abs(r) < 1e-8 * std::max(1.0, scale));
    }
}

TEST_CASE("1f1 error paths") {
    CHECK_THROWS_AS(kummer_1f1(Complex(1.0), Complex(-2.0), Complex(0.5)), fdjc::PoleError);
    SeriesControl tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(kummer_1f1(Complex(1.0), Complex(2.0), Complex(30.0), tight),
                    fdjc::NoConvergence);
}

TEST_CASE("hermite function reduces to hermite polynomials") {
    for (int n = 0; n <= 10; ++n) {
        for (double z = -3.0; z <= 3.0 + 1e-9; z += 0.25) {
            double want = hermite_poly(n, z);
            Complex got = hermite_h(Complex(double(n)), Complex(z));
            CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
            CHECK(std::abs(got.imag()) < 1e-9 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("hermite special values") {
    CHECK(rel_err(hermite_h(Complex(2.0), Complex(1.5)), Complex(7.0)) < 1e-12);
    // H(nu, 0) = 2^nu sqrt(pi) / Gamma((1-nu)/2)
    Complex nu(-1.0, -2.0);
    Complex want = std::pow(Complex(2.0), nu) * std::sqrt(std::numbers::pi) *
                   fdjc::reciprocal_gamma(0.5 * (1.0 - nu));
    CHECK(rel_err(hermite_h(nu, Complex(0.0)), want) < 1e-12);
    CHECK(rel_err(want, Complex(0.7938846860509177816, -1.5023088712273095022)) < 1e-12);
}

TEST_CASE("hermite complex order against integral-representation oracle") {
    Complex nu(-1.0, -2.0);
    Complex z(0.4, 0.4);
    Complex frozen(-0.6905232203347465615, -1.2642814490238210404); // 40-digit quadrature
    Complex got = hermite_h(nu, z);
    CHECK(rel_err(got, frozen) < 1e-12);
    CHECK(rel_err(hermite_integral_oracle(nu, z), frozen) < 1e-9);

    Complex nu2(-0.6, 1.3), z2(-0.2, 0.7);
    CHECK(rel_err(hermite_h(nu2, z2), hermite_integral_oracle(nu2, z2)) < 1e-9);
}
