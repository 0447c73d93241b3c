#pragma once

#include <vector>

namespace fdjc {

enum class DeformationKind { Identity, QType, Kerr };

/// Selects and parameterizes the nonlinearity function f(n).
///   identity : f(n) = 1
///   q_type   : f(n) = sqrt((1-q^n)/(n(1-q))),  q > 0, q != 1
///   kerr     : f(n) = sqrt(1 + kappa(n-1)),    kappa >= 0
struct DeformationSpec {
    DeformationKind kind = DeformationKind::Identity;
    double q = 1.04;
    double kappa = 0.0;

    void validate() const;

    static DeformationSpec identity() { return {DeformationKind::Identity, 1.0, 0.0}; }
    static DeformationSpec q_type(double q) { return {DeformationKind::QType, q, 0.0}; }
    static DeformationSpec kerr(double kappa) { return {DeformationKind::Kerr, 1.0, kappa}; }
};

/// f(n). Convention f(0) = 1: the q formula is 0/0 at n = 0 and the value
/// there never multiplies a nonzero amplitude (the deformed lowering
/// operator annihilates the vacuum).
double f_value(const DeformationSpec& spec, int n);

/// ln of the deformed factorial [n f^2(n)]! = prod_{k=1..n} k f^2(k)
/// (empty product = 1). Log space keeps n up to 500 representable: the
/// q-type bracket factorial grows super-factorially and overflows linear
/// doubles near n = 170.
double deformed_factorial_log(const DeformationSpec& spec, int n);

/// exp(deformed_factorial_log); strictly positive.
double deformed_factorial(const DeformationSpec& spec, int n);

/// Photon-number weights w(n) of the q-deformed coherent state
/// |alpha, f> = sum_n w(n) |n>, truncated and renormalized.
struct PhotonWeights {
    std::vector<double> w; // indexed 0..n_max
    int n_max = 0;
    double alpha = 0.0;

    double operator()(int n) const {
        return (n >= 0 && n <= n_max) ? w[size_t(n)] : 0.0;
    }
    double mean_photon_number() const;
};

/// Builds w(n) = N_alpha alpha^n / sqrt([n f^2(n)]!), with n_max chosen as
/// the smallest n whose squared tail mass falls below tail_tol (scanned over
/// a 4*ceil(alpha^2)+200 term window), then renormalized on the truncated
/// support so that sum w(n)^2 = 1.
///
/// Throws NoConvergence if the scan window never satisfies the tail bound.
PhotonWeights q_coherent_weights(const DeformationSpec& spec, double alpha, double tail_tol);

} // namespace fdjc
