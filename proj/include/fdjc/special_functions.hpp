#pragma once

#include <complex>

namespace fdjc {

using Complex = std::complex<double>;

/// Termination policy for power-series evaluation.
/// A series stops once |term| < abs_tol + rel_tol*|partial sum| holds for
/// three consecutive terms (guards against transient small terms in
/// alternating complex series).
struct SeriesControl {
    int max_terms = 4000;
    double abs_tol = 1e-16;
    double rel_tol = 1e-16;

    void validate() const;
};

/// Gamma function for complex argument. Lanczos approximation, with the
/// reflection formula applied for Re(z) < 0.5. Relative error below 1e-12
/// for |z| <= 50.
///
/// Throws PoleError when z is within 1e-12 of a non-positive integer.
Complex complex_gamma(Complex z);

/// 1/Gamma(z). Entire function: evaluates to 0 at the poles of Gamma
/// instead of throwing, which is what the Hermite-function decomposition
/// relies on to switch off a branch at integer order.
Complex reciprocal_gamma(Complex z);

/// Confluent hypergeometric function 1F1(a; b; z) (Kummer's M).
/// Direct Taylor series with compensated summation; for Re(z) < 0 the
/// Kummer transformation 1F1(a,b,z) = e^z 1F1(b-a,b,-z) is applied first
/// to avoid cancellation.
///
/// Throws PoleError when b is within 1e-12 of a non-positive integer and
/// NoConvergence when ctl.max_terms is exhausted.
Complex kummer_1f1(Complex a, Complex b, Complex z, const SeriesControl& ctl = {});

/// Hermite function of (possibly complex) order nu, evaluated through
///   H(nu,z) = 2^nu sqrt(pi) [ 1F1(-nu/2, 1/2, z^2)/Gamma((1-nu)/2)
///                             - 2z 1F1((1-nu)/2, 3/2, z^2)/Gamma(-nu/2) ].
/// For non-negative integer nu the Gamma poles null the corresponding
/// branch and the value reduces to the Hermite polynomial H_nu(z).
Complex hermite_h(Complex nu, Complex z, const SeriesControl& ctl = {});

} // namespace fdjc
