#pragma once

#include "fdjc/deformation.hpp"
#include "fdjc/special_functions.hpp"

#include <vector>

namespace fdjc {

/// Minimal dense complex matrix, row-major. Sized for truncated Fock-space
/// checks (dims of a few tens), not for serious linear algebra.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Complex& operator()(int i, int j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    const Complex& operator()(int i, int j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator+(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;
    CMatrix adjoint() const;
    std::vector<Complex> apply(const std::vector<Complex>& v) const;

    static CMatrix commutator(const CMatrix& x, const CMatrix& y); // xy - yx

    /// Max |entry| over the leading block of size (rows-mask) x (cols-mask):
    /// truncated-space commutators are only meaningful away from the
    /// truncation boundary.
    double max_abs_masked(int mask) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

/// Truncated matrix representations of the bare and deformed ladder
/// operators on an n-photon Fock basis 0..dim-1.
struct FockMatrices {
    int dim = 0;
    CMatrix a;      // lowering, sqrt(n) superdiagonal
    CMatrix a_dag;  // raising
    CMatrix A;      // a f(n)
    CMatrix A_dag;  // f(n) a^dag, exact conjugate transpose of A
    CMatrix n_op;   // diagonal 0..dim-1
};

/// Builds the matrices entrywise from the defining formulas (not by
/// products where avoidable).
FockMatrices build_fock_matrices(const DeformationSpec& spec, int dim);

/// Max residual over the truncation-safe block of
///   [A, A+] - diag((n+1)f^2(n+1) - n f^2(n)),
///   [A, n] - A   and   [A+, n] + A+.
double verify_deformed_commutator(const DeformationSpec& spec, int dim);

/// Builds the deformed su(2) generators on the (atom x field) product basis
/// and returns the max residual of
///   [S-, S+] + 2 xi S0   and   [S0, S+-] -+ S+-
/// on the truncation-safe block. The excitation-number operator
/// c = n + |e><e| enters through c^(-1/2), defined as 0 on the c = 0 state.
double verify_su2_deformed(const DeformationSpec& spec, int dim);

/// Max residual of [c, V] on the safe block, where V is the deformed
/// coupling sigma+ a f(n) + f(n) a+ sigma- and c = n + |e><e|.
double constant_of_motion_residual(const DeformationSpec& spec, int dim);

} // namespace fdjc
