#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "garding/cxcalc.hpp"
#include "garding/grid.hpp"
#include "garding/rng.hpp"

using namespace garding;

namespace {

CPoint random_point(Rng& rng, int n, double scale = 1.0) {
    CPoint z(std::size_t(n), Complex(0.0, 0.0));
    for (auto& v : z) v = Complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
    return z;
}

CPoint random_point_in_shell(Rng& rng, int n, double lo, double hi) {
    for (;;) {
        CPoint z = random_point(rng, n, hi);
        const double r = std::sqrt(norm2(z));
        if (r >= lo && r <= hi) return z;
    }
}

HermitianMatrix random_hermitian(Rng& rng, int n) {
    ComplexMatrix G(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) G(r, c) = rng.cnormal();
    return HermitianMatrix((G + G.adjoint()).scaled(0.5));
}

MapField monomial_square(int) {
    return MapField{1, 1, [](const CPoint& z) { return CPoint{z[0] * z[0]}; }, false, "z^2"};
}

} // namespace

TEST_CASE("wirtinger derivatives of elementary maps") {
    const auto d = wirtinger_derivs(monomial_square(1), {Complex(1.0, 0.0)});
    CHECK(std::abs(d.dz(0, 0) - Complex(2.0, 0.0)) < 1e-9);
    CHECK(std::abs(d.dzbar(0, 0)) < 1e-9);

    MapField conj_map{1, 1, [](const CPoint& z) { return CPoint{std::conj(z[0])}; }, true, "zbar"};
    const auto dc = wirtinger_derivs(conj_map, {Complex(0.3, -0.7)});
    CHECK(std::abs(dc.dz(0, 0)) < 1e-9);
    CHECK(std::abs(dc.dzbar(0, 0) - Complex(1.0, 0.0)) < 1e-9);

    MapField scaling{3, 3,
                     [](const CPoint& z) {
                         return CPoint{z[0], 2.0 * z[1], 3.0 * z[2]};
                     },
                     false, "diag123"};
    Rng rng(1, "wirtinger");
    const auto ds = wirtinger_derivs(scaling, random_point(rng, 3));
    for (int r = 0; r < 3; ++r) {
        for (int j = 0; j < 3; ++j) {
            const Complex want = (r == j) ? Complex(double(r + 1), 0.0) : Complex(0.0, 0.0);
            CHECK(std::abs(ds.dz(r, j) - want) < 1e-9);
            CHECK(std::abs(ds.dzbar(r, j)) < 1e-9);
        }
    }
}

TEST_CASE("complex Hessians of fixed fields") {
    Rng rng(2, "hessian");
    const CPoint z = random_point(rng, 3);

    const auto h_abs2 = complex_hessian(make_abs2(3), z);
    CHECK((h_abs2.mat() - ComplexMatrix::identity(3)).max_abs() < 1e-7);

    ScalarField re_sq{1, [](const CPoint& p) { return (p[0] * p[0]).real(); }, {}, {}, "re_z1^2"};
    const auto h_ph = complex_hessian(re_sq, {Complex(0.4, 0.2)});
    CHECK(h_ph.mat().max_abs() < 1e-7);

    ScalarField u{3,
                  [](const CPoint& p) {
                      return std::norm(p[0]) + std::norm(p[1]) - 0.5 * std::norm(p[2]);
                  },
                  {},
                  {},
                  "example41"};
    const auto hu = complex_hessian(u, z);
    CHECK((hu.mat() - HermitianMatrix::from_real_diagonal({1.0, 1.0, -0.5}).mat()).max_abs() <
          1e-7);
}

TEST_CASE("FD Hessians agree with analytic catalog Hessians") {
    Rng rng(3, "catalog");
    const FDScheme scheme; // h = 1e-4, order 2
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(2, 3);
        std::vector<ScalarField> fields = {
            make_abs2(n),
            make_gk(rng.uniform_int(1, n), n),
            make_re_coordinate(n, rng.uniform_int(1, n), rng.cnormal()),
            make_im_pair(n, rng.uniform_int(1, n), rng.uniform_int(1, n), rng.cnormal()),
            make_quadratic_form(random_hermitian(rng, n), random_point(rng, n)),
        };
        const CPoint z = random_point_in_shell(rng, n, 0.9, 1.5);
        for (const auto& u : fields) {
            const auto fd = complex_hessian(u, z, scheme);
            const auto an = u.analytic_hessian(z);
            INFO(u.name);
            CHECK((fd.mat() - an.mat()).max_abs() < 1e-6);
        }
    }
}

TEST_CASE("raw FD Hessian is Hermitian to 1e-8 on smooth fields") {
    Rng rng(4, "hermiticity");
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        const ScalarField u = make_quadratic_form(random_hermitian(rng, n), random_point(rng, n));
        const CPoint z = random_point(rng, n);
        const ComplexMatrix raw =
            detail::mixed_hessian_zzbar(detail::complexified(u), u.domain, z, FDScheme{});
        CHECK((raw - raw.adjoint()).max_abs() < 1e-8);
    }
}

TEST_CASE("order-2 halving shrinks the truncation error about 4x") {
    const ScalarField g2 = make_gk(2, 3);
    const CPoint z = {Complex(0.8, 0.1), Complex(-0.5, 0.4), Complex(0.2, -0.6)};
    const auto an = g2.analytic_hessian(z);
    auto err = [&](double h) {
        return (complex_hessian(g2, z, FDScheme{h, 2}).mat() - an.mat()).max_abs();
    };
    const double e1 = err(2e-3);
    const double e2 = err(1e-3);
    CHECK(e1 / e2 == Catch::Approx(4.0).margin(1.5));
}

TEST_CASE("levi form") {
    Rng rng(5, "levi");
    const CPoint a = random_point(rng, 3);
    const CPoint X = random_point(rng, 3);
    CHECK(levi_form(make_abs2(3), a, X) == Catch::Approx(norm2(X)).margin(1e-6));

    ScalarField re_sq{3, [](const CPoint& p) { return (p[0] * p[0]).real(); }, {}, {}, "re_z1^2"};
    CHECK(levi_form(re_sq, a, X) == Catch::Approx(0.0).margin(1e-6));

    // radial boundary function against its analytic Hessian
    const ScalarField g2 = make_gk(2, 3);
    const CPoint at = {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
    const CPoint e1 = {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
    const auto an = g2.analytic_hessian(at);
    Complex want(0.0, 0.0);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) want += std::conj(e1[std::size_t(j)]) * an(j, k) * e1[std::size_t(k)];
    CHECK(levi_form(g2, at, e1) == Catch::Approx(want.real()).margin(1e-6));
}

TEST_CASE("gk spectrum sits on the sigma_k boundary") {
    Rng rng(6, "gk-boundary");
    const FDScheme scheme{1e-3, 4}; // heavy tails near the singularity
    for (int k = 1; k <= 3; ++k) {
        const ScalarField gk = make_gk(k, 3);
        for (int trial = 0; trial < 50; ++trial) {
            const CPoint z = random_point_in_shell(rng, 3, 0.5, 2.0);
            const auto lam = herm_eigs(complex_hessian(gk, z, scheme)).values;
            const auto sig = sigma_all(lam.sorted());
            INFO("k=" << k << " |z|=" << std::sqrt(norm2(z)));
            CHECK(std::abs(sig[std::size_t(k)]) <= 1e-4);
            for (int l = 1; l < k; ++l) CHECK(sig[std::size_t(l)] > 0.0);
        }
    }
}

TEST_CASE("gk domain guards the singular origin") {
    const ScalarField g1 = make_gk(1, 3);
    const CPoint origin(3, Complex(0.0, 0.0));
    CHECK_THROWS_AS(complex_hessian(g1, origin), domain_error);
    const CPoint near = {Complex(1.05e-3, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS(complex_hessian(g1, near, FDScheme{1e-4, 2}), domain_error);
}

TEST_CASE("chain_hessian basics") {
    Rng rng(7, "chain");
    const HermitianMatrix Hphi = random_hermitian(rng, 3);
    CHECK((chain_hessian(ComplexMatrix::identity(3), Hphi).mat() - Hphi.mat()).max_abs() <
          1e-14);

    ComplexMatrix J(3, 3);
    J(0, 0) = 1.0;
    J(1, 1) = 2.0;
    J(2, 2) = 3.0;
    const auto out = chain_hessian(J, HermitianMatrix::from_real_diagonal({1.0, 1.0, -0.5}));
    CHECK((out.mat() - HermitianMatrix::from_real_diagonal({1.0, 4.0, -4.5}).mat()).max_abs() <
          1e-14);

    CHECK_THROWS_AS(chain_hessian(ComplexMatrix(3, 2), Hphi), domain_error);
}

TEST_CASE("chain rule matches the FD Hessian of the composition") {
    Rng rng(8, "chain-fd");
    for (int trial = 0; trial < 10; ++trial) {
        const int N = rng.uniform_int(2, 3);
        const int M = rng.uniform_int(2, 3);
        // Entries kept O(1)-small: the agreement tolerance is absolute and
        // the FD rounding floor scales with the function values.
        ComplexMatrix A(M, N);
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < N; ++c) A(r, c) = 0.5 * rng.cnormal();
        CPoint w0(std::size_t(M), Complex(0.0, 0.0));
        for (auto& v : w0) v = 0.5 * rng.cnormal();
        MapField f{N, M,
                   [A, w0, M, N](const CPoint& z) {
                       CPoint w = w0;
                       for (int r = 0; r < M; ++r)
                           for (int c = 0; c < N; ++c) w[std::size_t(r)] += A(r, c) * z[std::size_t(c)];
                       return w;
                   },
                   false, "linear"};
        const ScalarField phi =
            make_quadratic_form(random_hermitian(rng, M), random_point(rng, M));
        const CPoint z = random_point(rng, N);

        const auto d = wirtinger_derivs(f, z);
        const auto pushed = chain_hessian(complex_gradient_matrix(d), phi.analytic_hessian(z));
        const auto direct = complex_hessian(compose(phi, f), z);
        CHECK((pushed.mat() - direct.mat()).max_abs() < 1e-6);
    }
}

TEST_CASE("cr_residuals classifies the reference maps") {
    const auto grid = make_lattice(2, GridSpec{0.5, 2});

    MapField holo{2, 2,
                  [](const CPoint& z) {
                      return CPoint{z[0] * z[0], z[0] * z[1]};
                  },
                  false, "holo"};
    CHECK(cr_residuals(holo, grid).kind == Holomorphy::holomorphic);

    MapField anti{2, 2,
                  [](const CPoint& z) {
                      return CPoint{std::conj(z[0]), std::conj(z[1])};
                  },
                  true, "anti"};
    CHECK(cr_residuals(anti, grid).kind == Holomorphy::anti_holomorphic);

    MapField mixed{2, 2,
                   [](const CPoint& z) {
                       return CPoint{z[0], std::conj(z[1])};
                   },
                   false, "mixed"};
    const auto rep = cr_residuals(mixed, grid);
    CHECK(rep.kind == Holomorphy::neither);
    CHECK(rep.max_mixed_product > 0.1);
}

TEST_CASE("levi decomposition expansion") {
    Rng rng(9, "levi-decomp");

    // constant map: both sides vanish
    MapField constant{2, 2,
                      [](const CPoint&) {
                          return CPoint{Complex(0.3, 0.1), Complex(-0.2, 0.5)};
                      },
                      false, "const"};
    const ScalarField phi = make_quadratic_form(random_hermitian(rng, 2), CPoint(2, Complex()));
    const auto rc = levi_decomposition_check(phi, constant, random_point(rng, 2), random_point(rng, 2));
    CHECK(std::abs(rc.direct) < 1e-7);
    CHECK(rc.residual < 1e-7);

    for (int trial = 0; trial < 12; ++trial) {
        const bool anti = trial % 3 == 1;
        const bool nonholo = trial % 3 == 2;
        MapField f{2, 2,
                   [anti, nonholo](const CPoint& z) {
                       if (anti)
                           return CPoint{std::conj(z[0]) * std::conj(z[0]),
                                         std::conj(z[0] * z[1])};
                       if (nonholo)
                           return CPoint{z[0] * std::conj(z[1]), std::norm(z[0]) * z[1]};
                       return CPoint{z[0] * z[1], z[1] * z[1]};
                   },
                   anti, "poly"};
        const ScalarField q = make_quadratic_form(random_hermitian(rng, 2), random_point(rng, 2));
        const CPoint z = random_point(rng, 2);
        const CPoint X = random_point(rng, 2);
        const auto r = levi_decomposition_check(q, f, z, X);
        INFO("variant " << trial % 3);
        CHECK(r.residual <= 1e-5);
    }

    // holomorphic f: the expansion collapses onto the pushforward direction
    MapField holo{2, 2,
                  [](const CPoint& z) {
                      return CPoint{z[0] * z[1], z[1] * z[1]};
                  },
                  false, "holo"};
    const ScalarField q = make_quadratic_form(random_hermitian(rng, 2), random_point(rng, 2));
    const CPoint z = random_point(rng, 2);
    const CPoint X = random_point(rng, 2);
    const auto d = wirtinger_derivs(holo, z);
    CPoint U(2, Complex(0.0, 0.0));
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 2; ++j) U[std::size_t(r)] += d.dz(r, j) * X[std::size_t(j)];
    const auto rep = levi_decomposition_check(q, holo, z, X);
    const auto Hq = q.analytic_hessian(z);
    Complex reduced(0.0, 0.0); // the expansion's pairing: sum H(r,s) U_r conj(U_s)
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) reduced += Hq(r, s) * U[std::size_t(r)] * std::conj(U[std::size_t(s)]);
    CHECK(rep.residual <= 1e-5);
    CHECK(std::abs(rep.direct - reduced.real()) <= 1e-5);
}

TEST_CASE("grid spec parsing and lattice generation") {
    const GridSpec g = parse_grid_spec("lattice:0.5:3");
    CHECK(g.radius == Catch::Approx(0.5));
    CHECK(g.points_per_axis == 3);
    CHECK_THROWS_AS(parse_grid_spec("mesh:1:2"), domain_error);
    CHECK_THROWS_AS(parse_grid_spec("lattice:abc:2"), domain_error);

    const auto grid = make_lattice(2, GridSpec{0.5, 3});
    CHECK(grid.size() == 81); // 3^(2*2)
    for (const auto& z : grid)
        for (const auto& c : z) {
            CHECK(std::abs(c.real()) <= 0.5 + 1e-12);
            CHECK(std::abs(c.imag()) <= 0.5 + 1e-12);
        }
    CHECK_THROWS_AS(make_lattice(6, GridSpec{0.5, 3}), domain_error);

    const auto interior = interior_points(make_lattice(1, GridSpec{0.5, 3}), make_gk(1, 1), 1e-4);
    CHECK(interior.size() == 8); // the origin is excluded
}
