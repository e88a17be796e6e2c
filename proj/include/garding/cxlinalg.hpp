#pragma once

// Dense complex matrix kernels for small dimensions (<= ~16): Hermitian
// eigendecomposition by cyclic Jacobi, singular value decomposition by
// one-sided Jacobi on columns, polar decomposition, and the structural
// test for scaled row-orthonormal matrices.
//
// Jacobi is chosen for its high relative accuracy at these sizes; see
// Demmel & Veselic, "Jacobi's method is more accurate than QR" (LAWN 15).

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "garding/errors.hpp"
#include "garding/symcone.hpp"

namespace garding {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(std::size_t(rows) * std::size_t(cols), Complex(0.0, 0.0)) {
        if (rows < 1 || cols < 1) throw domain_error("ComplexMatrix: non-positive dimension");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    Complex& operator()(int r, int c) { return a_[std::size_t(r) * std::size_t(cols_) + std::size_t(c)]; }
    const Complex& operator()(int r, int c) const {
        return a_[std::size_t(r) * std::size_t(cols_) + std::size_t(c)];
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix m(rows_, cols_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(r, c) = std::conj((*this)(r, c));
        return m;
    }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols_ != o.rows_) throw domain_error("ComplexMatrix: dimension mismatch in product");
        ComplexMatrix m(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r) {
            for (int k = 0; k < cols_; ++k) {
                const Complex v = (*this)(r, k);
                if (v == Complex(0.0, 0.0)) continue;
                for (int c = 0; c < o.cols_; ++c) m(r, c) += v * o(k, c);
            }
        }
        return m;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw domain_error("ComplexMatrix: dimension mismatch in difference");
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
        return m;
    }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw domain_error("ComplexMatrix: dimension mismatch in sum");
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
        return m;
    }

    ComplexMatrix scaled(Complex f) const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * f;
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (const Complex& v : a_) s = std::max(s, std::abs(v));
        return s;
    }

    bool all_finite() const {
        for (const Complex& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

private:
    int rows_, cols_;
    std::vector<Complex> a_;
};

inline double unitarity_residual(const ComplexMatrix& U) {
    return (U.adjoint() * U - ComplexMatrix::identity(U.cols())).frobenius_norm();
}

/// Hermitian matrix; construction symmetrizes (A + A*)/2 and rejects
/// inputs whose deviation from Hermitian symmetry exceeds the tolerance
/// (an FD Hessian that far from Hermitian signals a non-smooth point).
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& A, double tol = 1e-6) : m_(A) {
        if (A.rows() != A.cols()) throw domain_error("HermitianMatrix: not square");
        if (!A.all_finite()) throw domain_error("HermitianMatrix: non-finite entry");
        double dev = 0.0;
        for (int j = 0; j < A.rows(); ++j)
            for (int k = 0; k <= j; ++k)
                dev = std::max(dev, std::abs(A(j, k) - std::conj(A(k, j))));
        if (dev > tol * (1.0 + A.max_abs()))
            throw numerical_error("HermitianMatrix: deviation from Hermitian symmetry", dev);
        for (int j = 0; j < A.rows(); ++j) {
            m_(j, j) = Complex(A(j, j).real(), 0.0);
            for (int k = 0; k < j; ++k) {
                const Complex avg = 0.5 * (A(j, k) + std::conj(A(k, j)));
                m_(j, k) = avg;
                m_(k, j) = std::conj(avg);
            }
        }
    }

    static HermitianMatrix from_real_diagonal(const std::vector<double>& d) {
        ComplexMatrix m(int(d.size()), int(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
        return HermitianMatrix(m);
    }

    int dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& mat() const noexcept { return m_; }
    const Complex& operator()(int r, int c) const { return m_(r, c); }

    HermitianMatrix conjugated() const { return HermitianMatrix(m_.conjugate()); }

private:
    ComplexMatrix m_;
};

namespace detail {

// Unitary J with J* [[a, b],[conj(b), d]] J = diag(l1, l2), l1 >= l2.
struct Rotation2 {
    Complex j00, j01, j10, j11;
    bool trivial;
};

inline Rotation2 hermitian_rotation(double a, Complex b, double d) {
    const double g = std::abs(b);
    if (g == 0.0) return {1.0, 0.0, 0.0, 1.0, true};
    const double mid_delta = 0.5 * (a - d);
    const double rad = std::hypot(mid_delta, g);
    // l1 - a = rad - delta, computed without cancellation.
    const double r1 = (mid_delta >= 0.0) ? (g * g) / (rad + mid_delta) : (rad - mid_delta);
    const double n1 = std::hypot(g, r1);
    const Complex phase = b / g;
    Rotation2 rot;
    rot.j00 = b / n1;
    rot.j10 = r1 / n1;
    rot.j01 = -(r1 / n1) * phase;
    rot.j11 = g / n1;
    rot.trivial = false;
    return rot;
}

// Mix columns p and q of M on the right by the 2x2 rotation.
inline void apply_on_columns(ComplexMatrix& M, int p, int q, const Rotation2& r) {
    for (int row = 0; row < M.rows(); ++row) {
        const Complex mp = M(row, p), mq = M(row, q);
        M(row, p) = mp * r.j00 + mq * r.j10;
        M(row, q) = mp * r.j01 + mq * r.j11;
    }
}

// Mix rows p and q of M on the left by the adjoint of the rotation.
inline void apply_on_rows(ComplexMatrix& M, int p, int q, const Rotation2& r) {
    for (int col = 0; col < M.cols(); ++col) {
        const Complex mp = M(p, col), mq = M(q, col);
        M(p, col) = std::conj(r.j00) * mp + std::conj(r.j10) * mq;
        M(q, col) = std::conj(r.j01) * mp + std::conj(r.j11) * mq;
    }
}

inline double off_diagonal_norm(const ComplexMatrix& M) {
    double s = 0.0;
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c)
            if (r != c) s += std::norm(M(r, c));
    return std::sqrt(s);
}

// Fill the columns of U flagged missing with vectors completing the present
// ones to a unitary basis, by Gram-Schmidt over the standard basis.
inline void complete_unitary_columns(ComplexMatrix& U, std::vector<bool>& present) {
    const int n = U.rows();
    int next_basis = 0;
    for (int j = 0; j < U.cols(); ++j) {
        if (present[std::size_t(j)]) continue;
        bool placed = false;
        while (next_basis < n && !placed) {
            std::vector<Complex> v(std::size_t(n), Complex(0.0, 0.0));
            v[std::size_t(next_basis)] = 1.0;
            ++next_basis;
            for (int pass = 0; pass < 2; ++pass) {
                for (int c = 0; c < U.cols(); ++c) {
                    if (!present[std::size_t(c)]) continue;
                    Complex proj(0.0, 0.0);
                    for (int r = 0; r < n; ++r) proj += std::conj(U(r, c)) * v[std::size_t(r)];
                    for (int r = 0; r < n; ++r) v[std::size_t(r)] -= proj * U(r, c);
                }
            }
            double nrm = 0.0;
            for (const Complex& x : v) nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (nrm > 0.3) {
                for (int r = 0; r < n; ++r) U(r, j) = v[std::size_t(r)] / nrm;
                present[std::size_t(j)] = true;
                placed = true;
            }
        }
        if (!placed) throw numerical_error("complete_unitary_columns: no basis vector left");
    }
}

} // namespace detail

struct HermEigs {
    RealSpectrum values;   // non-increasing
    ComplexMatrix vectors; // columns, A * V = V * diag(values)
};

/// Cyclic Jacobi for Hermitian matrices. Sweep budget 30; failure to
/// converge raises numerical_error carrying the remaining off-diagonal mass.
inline HermEigs herm_eigs(const HermitianMatrix& A) {
    const int n = A.dim();
    ComplexMatrix M = A.mat();
    ComplexMatrix V = ComplexMatrix::identity(n);
    const double frob = std::max(M.frobenius_norm(), 1e-300);
    const double stop = 1e-14 * frob;
    const int max_sweeps = 30;

    double off = detail::off_diagonal_norm(M);
    int sweep = 0;
    while (off > stop && sweep < max_sweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(M(p, q)) <= 1e-2 * stop / double(n)) continue;
                const auto rot =
                    detail::hermitian_rotation(M(p, p).real(), M(p, q), M(q, q).real());
                if (rot.trivial) continue;
                detail::apply_on_columns(M, p, q, rot);
                detail::apply_on_rows(M, p, q, rot);
                // Exact zeros by construction; suppress rounding drift.
                M(p, q) = 0.0;
                M(q, p) = 0.0;
                M(p, p) = Complex(M(p, p).real(), 0.0);
                M(q, q) = Complex(M(q, q).real(), 0.0);
                detail::apply_on_columns(V, p, q, rot);
            }
        }
        off = detail::off_diagonal_norm(M);
        ++sweep;
    }
    if (off > stop)
        throw numerical_error("herm_eigs: Jacobi did not converge in 30 sweeps", off);

    std::vector<int> order(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return M(i, i).real() > M(j, j).real(); });
    std::vector<double> vals(std::size_t(n), 0.0);
    ComplexMatrix Vs(n, n);
    for (int j = 0; j < n; ++j) {
        vals[std::size_t(j)] = M(order[std::size_t(j)], order[std::size_t(j)]).real();
        for (int r = 0; r < n; ++r) Vs(r, j) = V(r, order[std::size_t(j)]);
    }
    return {RealSpectrum(std::move(vals)), std::move(Vs)};
}

/// tr(A^j) for j = 1..kmax.
inline std::vector<double> power_traces(const HermitianMatrix& A, int kmax) {
    if (kmax < 1) throw domain_error("power_traces: need kmax >= 1");
    std::vector<double> t;
    t.reserve(std::size_t(kmax));
    ComplexMatrix P = A.mat();
    for (int j = 1; j <= kmax; ++j) {
        Complex tr(0.0, 0.0);
        for (int i = 0; i < P.rows(); ++i) tr += P(i, i);
        t.push_back(tr.real());
        if (j < kmax) P = P * A.mat();
    }
    return t;
}

struct SVDResult {
    ComplexMatrix U; // rows x rows
    RealSpectrum s;  // min(rows, cols) singular values, non-increasing
    ComplexMatrix W; // cols x cols, A = U * S * W^*
    int rank;        // count of s_j > rank_tol * s_1
};

inline constexpr double kDefaultRankTol = 1e-8;

/// One-sided Jacobi SVD: orthogonalize the columns of A by plane rotations
/// derived from 2x2 Gram blocks; the right factor W accumulates the
/// rotations, left vectors are the normalized columns, completed to a
/// unitary basis where singular values vanish.
inline SVDResult svd(const ComplexMatrix& A, double rank_tol = kDefaultRankTol) {
    if (!A.all_finite()) throw domain_error("svd: non-finite entry");
    const int m = A.rows(), n = A.cols();
    ComplexMatrix B = A;
    ComplexMatrix W = ComplexMatrix::identity(n);

    auto col_dot = [&](int i, int j) {
        Complex s(0.0, 0.0);
        for (int r = 0; r < m; ++r) s += std::conj(B(r, i)) * B(r, j);
        return s;
    };

    const int max_sweeps = 60;
    const double conv = 1e-14;
    // Columns this far below the matrix scale are rotation residue; pairing
    // them against each other never converges in the relative criterion.
    const double negligible = std::pow(1e-15 * A.frobenius_norm(), 2);
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double gii = col_dot(i, i).real();
                const double gjj = col_dot(j, j).real();
                if (gii <= negligible || gjj <= negligible) continue;
                const Complex gij = col_dot(i, j);
                const double scale = std::sqrt(gii * gjj);
                if (scale <= 0.0 || std::abs(gij) <= conv * scale) continue;
                worst = std::max(worst, std::abs(gij) / scale);
                const auto rot = detail::hermitian_rotation(gii, gij, gjj);
                if (rot.trivial) continue;
                detail::apply_on_columns(B, i, j, rot);
                detail::apply_on_columns(W, i, j, rot);
            }
        }
        converged = worst <= conv;
    }
    if (!converged) throw numerical_error("svd: one-sided Jacobi did not converge");

    std::vector<double> norms(std::size_t(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += std::norm(B(r, j));
        norms[std::size_t(j)] = std::sqrt(s);
    }
    // Sort columns by singular value, descending.
    std::vector<int> order(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return norms[std::size_t(i)] > norms[std::size_t(j)]; });
    ComplexMatrix Bs(m, n), Ws(n, n);
    std::vector<double> sall(std::size_t(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const int src = order[std::size_t(j)];
        sall[std::size_t(j)] = norms[std::size_t(src)];
        for (int r = 0; r < m; ++r) Bs(r, j) = B(r, src);
        for (int r = 0; r < n; ++r) Ws(r, j) = W(r, src);
    }

    const int t = std::min(m, n);
    std::vector<double> svals(sall.begin(), sall.begin() + t);
    const double s1 = svals.empty() ? 0.0 : svals[0];

    ComplexMatrix U(m, m);
    std::vector<bool> present(std::size_t(m), false);
    const double build_cut = s1 * 1e-13;
    for (int j = 0; j < std::min(m, t); ++j) {
        if (sall[std::size_t(j)] > build_cut && sall[std::size_t(j)] > 0.0) {
            for (int r = 0; r < m; ++r) U(r, j) = Bs(r, j) / sall[std::size_t(j)];
            present[std::size_t(j)] = true;
        }
    }
    detail::complete_unitary_columns(U, present);

    int rank = 0;
    for (double sv : svals)
        if (s1 > 0.0 && sv > rank_tol * s1) ++rank;

    return {std::move(U), RealSpectrum(std::move(svals)), std::move(Ws), rank};
}

/// Rebuild U * S * W^* from an SVDResult against the original shape.
inline ComplexMatrix svd_reconstruct(const SVDResult& r, int rows, int cols) {
    ComplexMatrix S(rows, cols);
    const int t = std::min(rows, cols);
    for (int i = 0; i < t; ++i) S(i, i) = r.s.as_given()[std::size_t(i)];
    return r.U * S * r.W.adjoint();
}

struct PolarResult {
    HermitianMatrix B; // positive semi-definite
    ComplexMatrix U;   // unitary, input = B * U
};

/// Polar decomposition A = B U of a square matrix. B is assembled from the
/// SVD rather than as sqrt(A A^*): forming the Gram matrix squares the
/// condition number and costs half the digits on small singular values.
inline PolarResult polar(const ComplexMatrix& A) {
    if (A.rows() != A.cols()) throw domain_error("polar: matrix must be square");
    const int n = A.rows();
    const SVDResult r = svd(A);
    ComplexMatrix S(n, n);
    for (int i = 0; i < n; ++i) S(i, i) = r.s.as_given()[std::size_t(i)];
    const ComplexMatrix B = r.U * S * r.U.adjoint();
    const ComplexMatrix U = r.U * r.W.adjoint();
    const double resid = (A - B * U).frobenius_norm();
    if (resid > 1e-8 * (1.0 + A.frobenius_norm()))
        throw numerical_error("polar: reconstruction residual too large", resid);
    return {HermitianMatrix(B), U};
}

struct RowOrthoResult {
    bool yes;
    double c;         // common row norm when yes
    double deviation; // max relative Gram deviation otherwise
};

/// Test whether the rows X_1..X_M are mutually orthogonal with a common
/// norm c (the matrix form of a homothetic orthogonal projection).
/// Equivalent to all singular values being equal to c.
inline RowOrthoResult is_scaled_row_orthonormal(const ComplexMatrix& A, double tol = 1e-6) {
    if (A.rows() > A.cols())
        throw domain_error("is_scaled_row_orthonormal: more rows than columns");
    const ComplexMatrix G = A * A.adjoint();
    const int M = G.rows();
    double max_diag = 0.0, mean_diag = 0.0;
    for (int j = 0; j < M; ++j) {
        max_diag = std::max(max_diag, G(j, j).real());
        mean_diag += G(j, j).real() / double(M);
    }
    if (max_diag <= 0.0) return {true, 0.0, 0.0};
    double dev = 0.0;
    for (int j = 0; j < M; ++j) {
        dev = std::max(dev, std::abs(G(j, j).real() - mean_diag));
        for (int k = 0; k < M; ++k)
            if (j != k) dev = std::max(dev, std::abs(G(j, k)));
    }
    const double rel = dev / max_diag;
    if (rel <= tol) return {true, std::sqrt(mean_diag), rel};
    return {false, 0.0, rel};
}

} // namespace garding
