#pragma once

// Wirtinger calculus by central differences over the real coordinates
// (x_j, y_j) of z_j = x_j + i y_j:
//
//   d/dz_j    = (d/dx_j - i d/dy_j) / 2
//   d/dzbar_j = (d/dx_j + i d/dy_j) / 2
//
// plus the catalog of built-in fields (the radial boundary functions G_k,
// pluriharmonic probes, Hermitian quadratic forms) that carry analytic
// Hessians for cross-checking the difference schemes.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "garding/cxlinalg.hpp"
#include "garding/errors.hpp"

namespace garding {

using CPoint = std::vector<Complex>;

inline double norm2(const CPoint& z) {
    double s = 0.0;
    for (const Complex& v : z) s += std::norm(v);
    return s;
}

/// Central difference step and order (2 or 4). Order 4 is for fields whose
/// higher derivatives blow up near a singular locus.
struct FDScheme {
    double h = 1e-4;
    int order = 2;

    FDScheme() = default;
    FDScheme(double h_, int order_) : h(h_), order(order_) {
        if (!(h > 0.0)) throw domain_error("FDScheme: step must be positive");
        if (order != 2 && order != 4) throw domain_error("FDScheme: order must be 2 or 4");
    }
};

/// Real-valued function of a point in C^N. The evaluator must be stateless;
/// the optional domain predicate guards singular loci, and catalog entries
/// attach their analytic complex Hessian.
struct ScalarField {
    int n = 0;
    std::function<double(const CPoint&)> eval;
    std::function<bool(const CPoint&)> domain;                     // may be empty
    std::function<HermitianMatrix(const CPoint&)> analytic_hessian; // may be empty
    std::string name;

    double operator()(const CPoint& z) const { return eval(z); }
    bool in_domain(const CPoint& z) const { return !domain || domain(z); }
};

/// Map C^N -> C^M. `conjugated` marks anti-holomorphic intent for affine
/// maps whose evaluator already applies the conjugation.
struct MapField {
    int n = 0;
    int m = 0;
    std::function<CPoint(const CPoint&)> eval;
    bool conjugated = false;
    std::string name;

    CPoint operator()(const CPoint& z) const { return eval(z); }
};

/// phi composed with f, as a scalar field on the domain of f.
inline ScalarField compose(const ScalarField& phi, const MapField& f) {
    if (phi.n != f.m) throw domain_error("compose: dimension mismatch");
    ScalarField out;
    out.n = f.n;
    out.name = phi.name + "∘" + f.name;
    auto peval = phi.eval;
    auto pdom = phi.domain;
    auto feval = f.eval;
    out.eval = [peval, feval](const CPoint& z) { return peval(feval(z)); };
    if (pdom) out.domain = [pdom, feval](const CPoint& z) { return pdom(feval(z)); };
    return out;
}

namespace detail {

inline CPoint shifted(CPoint z, int axis, double delta) {
    const int j = axis / 2;
    if (axis % 2 == 0)
        z[std::size_t(j)] += delta;
    else
        z[std::size_t(j)] += Complex(0.0, delta);
    return z;
}

using CFunc = std::function<Complex(const CPoint&)>;

struct FDContext {
    const CFunc& g;
    const std::function<bool(const CPoint&)>& domain;
    FDScheme scheme;

    Complex at(const CPoint& p) const {
        if (domain && !domain(p)) throw domain_error("finite difference stencil left the domain");
        return g(p);
    }
};

// Require the 2h cross neighbourhood of z to be inside the domain.
inline void check_interior(const CPoint& z, const std::function<bool(const CPoint&)>& domain,
                           double h, int n) {
    if (!domain) return;
    if (!domain(z)) throw domain_error("point outside the field domain");
    for (int axis = 0; axis < 2 * n; ++axis) {
        if (!domain(shifted(z, axis, 2.0 * h)) || !domain(shifted(z, axis, -2.0 * h)))
            throw domain_error("point closer than 2h to the domain boundary");
    }
}

inline Complex fd1(const FDContext& c, const CPoint& z, int axis) {
    const double h = c.scheme.h;
    if (c.scheme.order == 2)
        return (c.at(shifted(z, axis, h)) - c.at(shifted(z, axis, -h))) / (2.0 * h);
    return (-c.at(shifted(z, axis, 2 * h)) + 8.0 * c.at(shifted(z, axis, h)) -
            8.0 * c.at(shifted(z, axis, -h)) + c.at(shifted(z, axis, -2 * h))) /
           (12.0 * h);
}

inline Complex fd2(const FDContext& c, const CPoint& z, int axis_a, int axis_b) {
    const double h = c.scheme.h;
    if (axis_a == axis_b) {
        if (c.scheme.order == 2)
            return (c.at(shifted(z, axis_a, h)) - 2.0 * c.at(z) + c.at(shifted(z, axis_a, -h))) /
                   (h * h);
        return (-c.at(shifted(z, axis_a, 2 * h)) + 16.0 * c.at(shifted(z, axis_a, h)) -
                30.0 * c.at(z) + 16.0 * c.at(shifted(z, axis_a, -h)) -
                c.at(shifted(z, axis_a, -2 * h))) /
               (12.0 * h * h);
    }
    if (c.scheme.order == 2) {
        const Complex pp = c.at(shifted(shifted(z, axis_a, h), axis_b, h));
        const Complex pm = c.at(shifted(shifted(z, axis_a, h), axis_b, -h));
        const Complex mp = c.at(shifted(shifted(z, axis_a, -h), axis_b, h));
        const Complex mm = c.at(shifted(shifted(z, axis_a, -h), axis_b, -h));
        return (pp - pm - mp + mm) / (4.0 * h * h);
    }
    // Product of two fourth-order first-derivative stencils.
    static const int off[4] = {-2, -1, 1, 2};
    static const double w[4] = {1.0 / 12.0, -2.0 / 3.0, 2.0 / 3.0, -1.0 / 12.0};
    Complex acc(0.0, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            acc += w[i] * w[j] * c.at(shifted(shifted(z, axis_a, off[i] * h), axis_b, off[j] * h));
    return acc / (h * h);
}

// [d^2 g / dz_j dzbar_k]_{j,k} for a complex-valued g on C^n:
//   ((d_xj d_xk + d_yj d_yk) + i (d_xj d_yk - d_yj d_xk)) g / 4
inline ComplexMatrix mixed_hessian_zzbar(const CFunc& g,
                                         const std::function<bool(const CPoint&)>& domain,
                                         const CPoint& z, const FDScheme& scheme) {
    const int n = int(z.size());
    check_interior(z, domain, scheme.h, n);
    FDContext c{g, domain, scheme};
    ComplexMatrix H(n, n);
    const Complex I(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const Complex xx = fd2(c, z, 2 * j, 2 * k);
            const Complex yy = fd2(c, z, 2 * j + 1, 2 * k + 1);
            const Complex xy = fd2(c, z, 2 * j, 2 * k + 1);
            const Complex yx = fd2(c, z, 2 * j + 1, 2 * k);
            H(j, k) = 0.25 * ((xx + yy) + I * (xy - yx));
        }
    }
    return H;
}

// [d^2 g / dz_j dz_k]_{j,k}: ((d_xj d_xk - d_yj d_yk) - i (d_xj d_yk + d_yj d_xk)) g / 4
inline ComplexMatrix hessian_zz(const CFunc& g, const std::function<bool(const CPoint&)>& domain,
                                const CPoint& z, const FDScheme& scheme) {
    const int n = int(z.size());
    check_interior(z, domain, scheme.h, n);
    FDContext c{g, domain, scheme};
    ComplexMatrix H(n, n);
    const Complex I(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const Complex xx = fd2(c, z, 2 * j, 2 * k);
            const Complex yy = fd2(c, z, 2 * j + 1, 2 * k + 1);
            const Complex xy = fd2(c, z, 2 * j, 2 * k + 1);
            const Complex yx = fd2(c, z, 2 * j + 1, 2 * k);
            H(j, k) = 0.25 * ((xx - yy) - I * (xy + yx));
        }
    }
    return H;
}

inline CFunc complexified(const ScalarField& u) {
    auto f = u.eval;
    return [f](const CPoint& p) { return Complex(f(p), 0.0); };
}

} // namespace detail

struct WirtingerDerivs {
    ComplexMatrix dz;    // (r, j) = df_r / dz_j      (M x N)
    ComplexMatrix dzbar; // (r, j) = df_r / dzbar_j   (M x N)
};

/// First Wirtinger derivatives of every component of f at z, sharing the
/// map evaluations across components.
inline WirtingerDerivs wirtinger_derivs(const MapField& f, const CPoint& z,
                                        const FDScheme& scheme = {}) {
    if (int(z.size()) != f.n) throw domain_error("wirtinger_derivs: point dimension mismatch");
    detail::check_interior(z, {}, scheme.h, f.n);
    const double h = scheme.h;
    auto at = [&](int axis, double delta) { return f.eval(detail::shifted(z, axis, delta)); };

    WirtingerDerivs out{ComplexMatrix(f.m, f.n), ComplexMatrix(f.m, f.n)};
    const Complex I(0.0, 1.0);
    for (int j = 0; j < f.n; ++j) {
        for (int part = 0; part < 2; ++part) {
            const int axis = 2 * j + part;
            CPoint d;
            if (scheme.order == 2) {
                const CPoint p = at(axis, h), m = at(axis, -h);
                d.resize(std::size_t(f.m));
                for (int r = 0; r < f.m; ++r) d[std::size_t(r)] = (p[std::size_t(r)] - m[std::size_t(r)]) / (2.0 * h);
            } else {
                const CPoint p2 = at(axis, 2 * h), p1 = at(axis, h), m1 = at(axis, -h), m2 = at(axis, -2 * h);
                d.resize(std::size_t(f.m));
                for (int r = 0; r < f.m; ++r)
                    d[std::size_t(r)] = (-p2[std::size_t(r)] + 8.0 * p1[std::size_t(r)] -
                                         8.0 * m1[std::size_t(r)] + m2[std::size_t(r)]) /
                                        (12.0 * h);
            }
            for (int r = 0; r < f.m; ++r) {
                if (part == 0) { // x derivative
                    out.dz(r, j) += 0.5 * d[std::size_t(r)];
                    out.dzbar(r, j) += 0.5 * d[std::size_t(r)];
                } else { // y derivative
                    out.dz(r, j) -= 0.5 * I * d[std::size_t(r)];
                    out.dzbar(r, j) += 0.5 * I * d[std::size_t(r)];
                }
            }
        }
    }
    return out;
}

/// The bracket [grad_C f_1 ... grad_C f_M]: N x M, column r holding the
/// complex gradient of f_r.
inline ComplexMatrix complex_gradient_matrix(const WirtingerDerivs& d) {
    return d.dz.transpose();
}

/// Complex Hessian H_u(z) = [d^2 u / dz_j dzbar_k] by central differences.
/// A deviation from Hermitian symmetry beyond tolerance raises
/// numerical_error, signalling a non-smooth point.
inline HermitianMatrix complex_hessian(const ScalarField& u, const CPoint& z,
                                       const FDScheme& scheme = {}) {
    if (int(z.size()) != u.n) throw domain_error("complex_hessian: point dimension mismatch");
    return HermitianMatrix(detail::mixed_hessian_zzbar(detail::complexified(u), u.domain, z, scheme));
}

/// Levi form X^* H_u(a) X. The imaginary residue of the quadratic form is
/// checked against 1e-10 and discarded.
inline double levi_form(const ScalarField& u, const CPoint& a, const CPoint& X,
                        const FDScheme& scheme = {}) {
    if (int(X.size()) != u.n) throw domain_error("levi_form: direction dimension mismatch");
    const HermitianMatrix H = complex_hessian(u, a, scheme);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < u.n; ++j)
        for (int k = 0; k < u.n; ++k) acc += std::conj(X[std::size_t(j)]) * H(j, k) * X[std::size_t(k)];
    if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real())))
        throw numerical_error("levi_form: imaginary residue", std::abs(acc.imag()));
    return acc.real();
}

/// Push a Hessian through a holomorphic map: J * H_phi * J^*, where J is
/// the N x M complex gradient bracket. Hermitian by construction.
inline HermitianMatrix chain_hessian(const ComplexMatrix& J, const HermitianMatrix& Hphi) {
    if (J.cols() != Hphi.dim()) throw domain_error("chain_hessian: dimension mismatch");
    return HermitianMatrix(J * Hphi.mat() * J.adjoint());
}

enum class Holomorphy { holomorphic, anti_holomorphic, neither };

inline const char* to_string(Holomorphy h) {
    switch (h) {
        case Holomorphy::holomorphic: return "holomorphic";
        case Holomorphy::anti_holomorphic: return "anti_holomorphic";
        case Holomorphy::neither: return "neither";
    }
    return "?";
}

struct CRReport {
    Holomorphy kind;
    double max_dzbar;         // max |df_r/dzbar_j| over the grid
    double max_dz;            // max |df_r/dz_j| over the grid
    double max_mixed_product; // max |df_r/dz_j * df_s/dzbar_k|
    double tol;
};

/// Cauchy-Riemann residuals over a grid. A map is holomorphic when all
/// conjugate derivatives vanish, anti-holomorphic when all plain ones do;
/// the mixed products are the obstruction terms when neither family dies.
inline CRReport cr_residuals(const MapField& f, const std::vector<CPoint>& grid,
                             const FDScheme& scheme = {}) {
    if (grid.empty()) throw domain_error("cr_residuals: empty grid");
    double max_dz = 0.0, max_dzbar = 0.0, max_mixed = 0.0;
    for (const CPoint& z : grid) {
        const WirtingerDerivs d = wirtinger_derivs(f, z, scheme);
        double pdz = 0.0, pdzbar = 0.0;
        for (int r = 0; r < f.m; ++r) {
            for (int j = 0; j < f.n; ++j) {
                pdz = std::max(pdz, std::abs(d.dz(r, j)));
                pdzbar = std::max(pdzbar, std::abs(d.dzbar(r, j)));
            }
        }
        max_dz = std::max(max_dz, pdz);
        max_dzbar = std::max(max_dzbar, pdzbar);
        max_mixed = std::max(max_mixed, pdz * pdzbar);
    }
    const double tol = 1e-7 * (1.0 + std::max(max_dz, max_dzbar));
    Holomorphy kind = Holomorphy::neither;
    if (max_dzbar <= tol)
        kind = Holomorphy::holomorphic;
    else if (max_dz <= tol)
        kind = Holomorphy::anti_holomorphic;
    return {kind, max_dzbar, max_dz, max_mixed, tol};
}

struct LeviDecomposition {
    double direct;      // Levi form of the composition, by FD
    Complex expansion;  // six-term chain expansion
    double residual;
};

/// Compare the Levi form of phi∘f against its expansion into the U/V
/// pushforward directions plus the holomorphic-holomorphic, mixed, and
/// second-derivative terms of the composition formula.
inline LeviDecomposition levi_decomposition_check(const ScalarField& phi, const MapField& f,
                                                  const CPoint& z, const CPoint& X,
                                                  const FDScheme& scheme = {}) {
    if (phi.n != f.m) throw domain_error("levi_decomposition_check: dimension mismatch");

    // The expansion pairs indices as sum_{j,k} H(j,k) X_j conj(X_k); the
    // sesquilinear X^* H X pairing is the same form at the conjugate
    // direction, so everything here sticks to the first convention.
    auto form = [](const ComplexMatrix& H, const CPoint& dir) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < H.rows(); ++j)
            for (int k = 0; k < H.cols(); ++k)
                acc += H(j, k) * dir[std::size_t(j)] * std::conj(dir[std::size_t(k)]);
        return acc;
    };

    const double direct = form(complex_hessian(compose(phi, f), z, scheme).mat(), X).real();

    const CPoint w = f.eval(z);
    const WirtingerDerivs d = wirtinger_derivs(f, z, scheme);
    CPoint U(std::size_t(f.m), Complex(0.0, 0.0));
    CPoint V(std::size_t(f.m), Complex(0.0, 0.0));
    for (int r = 0; r < f.m; ++r) {
        for (int j = 0; j < f.n; ++j) {
            U[std::size_t(r)] += d.dz(r, j) * X[std::size_t(j)];
            V[std::size_t(r)] += std::conj(d.dzbar(r, j)) * X[std::size_t(j)];
        }
    }

    // The U term pairs as sum H(r,s) U_r conj(U_s); expanding the chain rule
    // puts the V term in the conjugate pairing, sum H(r,s) conj(V_r) V_s.
    // Both are real, which is why the split is easy to miss.
    const HermitianMatrix Hphi = complex_hessian(phi, w, scheme);
    auto levi_of = [&](const CPoint& dir) { return form(Hphi.mat(), dir).real(); };
    CPoint Vbar(std::size_t(f.m), Complex(0.0, 0.0));
    for (int r = 0; r < f.m; ++r) Vbar[std::size_t(r)] = std::conj(V[std::size_t(r)]);

    const ComplexMatrix phi_ww =
        detail::hessian_zz(detail::complexified(phi), phi.domain, w, scheme);
    Complex term_ww(0.0, 0.0);
    for (int r = 0; r < f.m; ++r)
        for (int s = 0; s < f.m; ++s)
            term_ww += phi_ww(r, s) * U[std::size_t(r)] * std::conj(V[std::size_t(s)]);

    // First Wirtinger derivatives of phi at w (phi real, so the conjugate
    // family is the conjugate).
    MapField phi_as_map{phi.n, 1,
                        [phi](const CPoint& p) { return CPoint{Complex(phi.eval(p), 0.0)}; },
                        false, phi.name};
    const WirtingerDerivs dphi = wirtinger_derivs(phi_as_map, w, scheme);

    Complex second_order(0.0, 0.0);
    for (int r = 0; r < f.m; ++r) {
        auto fr = [r, &f](const CPoint& p) { return f.eval(p)[std::size_t(r)]; };
        const ComplexMatrix Hr =
            detail::mixed_hessian_zzbar(detail::CFunc(fr), {}, z, scheme);
        Complex levi_fr(0.0, 0.0), levi_fr_bar(0.0, 0.0);
        for (int j = 0; j < f.n; ++j) {
            for (int k = 0; k < f.n; ++k) {
                levi_fr += Hr(j, k) * X[std::size_t(j)] * std::conj(X[std::size_t(k)]);
                levi_fr_bar += std::conj(Hr(k, j)) * X[std::size_t(j)] * std::conj(X[std::size_t(k)]);
            }
        }
        second_order += std::conj(dphi.dz(0, r)) * levi_fr_bar + dphi.dz(0, r) * levi_fr;
    }

    const Complex expansion =
        levi_of(U) + levi_of(Vbar) + term_ww + std::conj(term_ww) + second_order;
    return {direct, expansion, std::abs(Complex(direct, 0.0) - expansion)};
}

// ---------------------------------------------------------------------------
// Built-in catalog

/// |z|^2; complex Hessian is the identity.
inline ScalarField make_abs2(int n) {
    ScalarField u;
    u.n = n;
    u.name = "abs2";
    u.eval = [](const CPoint& z) { return norm2(z); };
    u.analytic_hessian = [n](const CPoint&) {
        return HermitianMatrix(ComplexMatrix::identity(n));
    };
    return u;
}

/// The radial function marking the boundary of k-subharmonicity in C^n:
/// -|z|^(2 - 2n/k) for k < n, log|z| for k = n. Singular at the origin;
/// the domain excludes |z| < 1e-3.
inline ScalarField make_gk(int k, int n) {
    if (k < 1 || k > n) throw domain_error("make_gk: need 1 <= k <= n");
    ScalarField u;
    u.n = n;
    u.name = "G" + std::to_string(k);
    u.domain = [](const CPoint& z) { return norm2(z) >= 1e-6; };
    if (k == n) {
        u.eval = [](const CPoint& z) { return 0.5 * std::log(norm2(z)); };
    } else {
        const double p = 1.0 - double(n) / double(k);
        u.eval = [p](const CPoint& z) { return -std::pow(norm2(z), p); };
    }
    // For u = g(rho), rho = |z|^2:  H(j,k) = g'(rho) delta_jk + g''(rho) conj(z_j) z_k.
    u.analytic_hessian = [k, n](const CPoint& z) {
        const double rho = norm2(z);
        double g1 = 0.0, g2 = 0.0;
        if (k == n) {
            g1 = 0.5 / rho;
            g2 = -0.5 / (rho * rho);
        } else {
            const double p = 1.0 - double(n) / double(k);
            g1 = -p * std::pow(rho, p - 1.0);
            g2 = -p * (p - 1.0) * std::pow(rho, p - 2.0);
        }
        ComplexMatrix H(n, n);
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                H(j, l) = g2 * std::conj(z[std::size_t(j)]) * z[std::size_t(l)];
                if (j == l) H(j, l) += g1;
            }
        }
        return HermitianMatrix(H);
    };
    return u;
}

namespace detail {

inline ScalarField pluriharmonic_probe(int n, std::string name,
                                       std::function<double(const CPoint&)> eval) {
    ScalarField u;
    u.n = n;
    u.name = std::move(name);
    u.eval = std::move(eval);
    u.analytic_hessian = [n](const CPoint&) { return HermitianMatrix(ComplexMatrix(n, n)); };
    return u;
}

} // namespace detail

/// Re(a w_r); pluriharmonic. Index r is 1-based.
inline ScalarField make_re_coordinate(int n, int r, Complex a = 1.0) {
    if (r < 1 || r > n) throw domain_error("make_re_coordinate: index out of range");
    return detail::pluriharmonic_probe(n, "re_w" + std::to_string(r), [r, a](const CPoint& z) {
        return (a * z[std::size_t(r - 1)]).real();
    });
}

/// Im(a w_r); pluriharmonic.
inline ScalarField make_im_coordinate(int n, int r, Complex a = 1.0) {
    if (r < 1 || r > n) throw domain_error("make_im_coordinate: index out of range");
    return detail::pluriharmonic_probe(n, "im_w" + std::to_string(r), [r, a](const CPoint& z) {
        return (a * z[std::size_t(r - 1)]).imag();
    });
}

/// Re(a w_r w_s); pluriharmonic.
inline ScalarField make_re_pair(int n, int r, int s, Complex a = 1.0) {
    if (r < 1 || r > n || s < 1 || s > n) throw domain_error("make_re_pair: index out of range");
    return detail::pluriharmonic_probe(
        n, "re_w" + std::to_string(r) + "w" + std::to_string(s), [r, s, a](const CPoint& z) {
            return (a * z[std::size_t(r - 1)] * z[std::size_t(s - 1)]).real();
        });
}

/// Im(a w_r w_s); pluriharmonic.
inline ScalarField make_im_pair(int n, int r, int s, Complex a = 1.0) {
    if (r < 1 || r > n || s < 1 || s > n) throw domain_error("make_im_pair: index out of range");
    return detail::pluriharmonic_probe(
        n, "im_w" + std::to_string(r) + "w" + std::to_string(s), [r, s, a](const CPoint& z) {
            return (a * z[std::size_t(r - 1)] * z[std::size_t(s - 1)]).imag();
        });
}

/// (w - c)^* -quadratic with prescribed complex Hessian H:
/// u(w) = sum_{j,k} H(j,k) v_j conj(v_k), v = w - c. Real since H is Hermitian.
inline ScalarField make_quadratic_form(const HermitianMatrix& H, CPoint center) {
    const int n = H.dim();
    if (int(center.size()) != n) throw domain_error("make_quadratic_form: center dimension");
    ScalarField u;
    u.n = n;
    u.name = "quadratic_form";
    u.eval = [H, center, n](const CPoint& w) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const Complex vj = w[std::size_t(j)] - center[std::size_t(j)];
            for (int k = 0; k < n; ++k) {
                const Complex vk = w[std::size_t(k)] - center[std::size_t(k)];
                acc += H(j, k) * vj * std::conj(vk);
            }
        }
        return acc.real();
    };
    u.analytic_hessian = [H](const CPoint&) { return H; };
    return u;
}

} // namespace garding
