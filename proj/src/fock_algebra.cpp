#include "fdjc/fock_algebra.hpp"
#include "fdjc/errors.hpp"

#include <cmath>

namespace fdjc {

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    CMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Complex v = (*this)(i, k);
            if (v == Complex(0.0)) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += v * rhs(k, j);
        }
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
    CMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    CMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
    std::vector<Complex> out(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[size_t(j)];
        out[size_t(i)] = s;
    }
    return out;
}

CMatrix CMatrix::commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

double CMatrix::max_abs_masked(int mask) const {
    double m = 0.0;
    for (int i = 0; i < rows_ - mask; ++i)
        for (int j = 0; j < cols_ - mask; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

FockMatrices build_fock_matrices(const DeformationSpec& spec, int dim) {
    if (dim < 2) throw DomainError("build_fock_matrices: dim must be >= 2");
    spec.validate();
    FockMatrices m;
    m.dim = dim;
    m.a = CMatrix(dim, dim);
    m.A = CMatrix(dim, dim);
    m.n_op = CMatrix(dim, dim);
    for (int n = 0; n < dim; ++n) m.n_op(n, n) = double(n);
    // a |n+1> = sqrt(n+1)|n>;  A |n+1> = sqrt(n+1) f(n+1) |n>
    for (int n = 0; n + 1 < dim; ++n) {
        double s = std::sqrt(double(n + 1));
        m.a(n, n + 1) = s;
        m.A(n, n + 1) = s * f_value(spec, n + 1);
    }
    m.a_dag = m.a.adjoint();
    m.A_dag = m.A.adjoint();
    return m;
}

double verify_deformed_commutator(const DeformationSpec& spec, int dim) {
    if (dim < 3) throw DomainError("verify_deformed_commutator: dim must be >= 3");
    FockMatrices m = build_fock_matrices(spec, dim);

    CMatrix target(dim, dim);
    for (int n = 0; n < dim; ++n) {
        double fn1 = f_value(spec, n + 1);
        double fn = f_value(spec, n);
        target(n, n) = double(n + 1) * fn1 * fn1 - double(n) * fn * fn;
    }
    double r = (CMatrix::commutator(m.A, m.A_dag) - target).max_abs_masked(1);

    r = std::max(r, (CMatrix::commutator(m.A, m.n_op) - m.A).max_abs_masked(1));
    r = std::max(r, (CMatrix::commutator(m.A_dag, m.n_op) + m.A_dag).max_abs_masked(1));
    return r;
}

namespace {

// Product-basis index: atom branch (0 = excited, 1 = ground) x field level.
struct ProductSpace {
    int dim; // field levels
    int idx(int branch, int n) const { return branch * dim + n; }
    int size() const { return 2 * dim; }
};

// Masked max over entries whose bra or ket touches the top field level.
double masked_residual(const CMatrix& r, const ProductSpace& ps) {
    double m = 0.0;
    for (int bi = 0; bi < 2; ++bi)
        for (int ni = 0; ni + 1 < ps.dim; ++ni)
            for (int bj = 0; bj < 2; ++bj)
                for (int nj = 0; nj + 1 < ps.dim; ++nj)
                    m = std::max(m, std::abs(r(ps.idx(bi, ni), ps.idx(bj, nj))));
    return m;
}

} // namespace

double verify_su2_deformed(const DeformationSpec& spec, int dim) {
    if (dim < 3) throw DomainError("verify_su2_deformed: dim must be >= 3");
    spec.validate();
    ProductSpace ps{dim};
    const int N = ps.size();

    // S+ = sigma+ a f(n) c^(-1/2):  |g,n> -> sqrt(n) f(n) / sqrt(n) |e,n-1>
    // (c = n on the ground branch; c^(-1/2) = 0 on |g,0>).
    CMatrix Sp(N, N);
    for (int n = 1; n < dim; ++n) {
        double amp = std::sqrt(double(n)) * f_value(spec, n) / std::sqrt(double(n));
        Sp(ps.idx(0, n - 1), ps.idx(1, n)) = amp;
    }
    CMatrix Sm = Sp.adjoint();

    CMatrix S0(N, N);
    for (int n = 0; n < dim; ++n) {
        S0(ps.idx(0, n), ps.idx(0, n)) = 0.5;
        S0(ps.idx(1, n), ps.idx(1, n)) = -0.5;
    }

    // xi = (1/c) { (n+1) f^2(n+1) |e><e| + n f^2(n) |g><g| }
    CMatrix xi(N, N);
    for (int n = 0; n < dim; ++n) {
        double fe = f_value(spec, n + 1);
        xi(ps.idx(0, n), ps.idx(0, n)) = double(n + 1) * fe * fe / double(n + 1);
        if (n >= 1) {
            double fg = f_value(spec, n);
            xi(ps.idx(1, n), ps.idx(1, n)) = double(n) * fg * fg / double(n);
        }
    }

    double r = 0.0;
    CMatrix xiS0 = xi * S0;
    r = std::max(r, masked_residual(CMatrix::commutator(Sm, Sp) + xiS0 + xiS0, ps));
    r = std::max(r, masked_residual(CMatrix::commutator(S0, Sp) - Sp, ps));
    r = std::max(r, masked_residual(CMatrix::commutator(S0, Sm) + Sm, ps));
    return r;
}

double constant_of_motion_residual(const DeformationSpec& spec, int dim) {
    ProductSpace ps{dim};
    const int N = ps.size();
    FockMatrices fm = build_fock_matrices(spec, dim);

    // V = sigma+ A + A+ sigma-
    CMatrix V(N, N);
    for (int n = 0; n + 1 < dim; ++n) {
        Complex amp = fm.A(n, n + 1);
        V(ps.idx(0, n), ps.idx(1, n + 1)) = amp;
        V(ps.idx(1, n + 1), ps.idx(0, n)) = std::conj(amp);
    }

    // c = n + |e><e|
    CMatrix c(N, N);
    for (int n = 0; n < dim; ++n) {
        c(ps.idx(0, n), ps.idx(0, n)) = double(n) + 1.0;
        c(ps.idx(1, n), ps.idx(1, n)) = double(n);
    }
    return masked_residual(CMatrix::commutator(c, V), ps);
}

} // namespace fdjc
