#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "garding/rng.hpp"
#include "garding/symcone.hpp"

using namespace garding;

namespace {

// Independent oracle: sum over all k-subsets by bitmask. Only viable for
// small L, which is the point.
double sigma_enum(int k, const std::vector<double>& x) {
    const int L = int(x.size());
    double acc = 0.0;
    for (unsigned mask = 0; mask < (1u << L); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        double prod = 1.0;
        for (int j = 0; j < L; ++j)
            if (mask & (1u << j)) prod *= x[std::size_t(j)];
        acc += prod;
    }
    return acc;
}

std::vector<double> random_vector(Rng& rng, int L, double lo, double hi) {
    std::vector<double> v(std::size_t(L), 0.0);
    for (auto& e : v) e = rng.uniform(lo, hi);
    return v;
}

// Rejection sampling of cone members from a symmetric box, with the last
// coordinate occasionally shifted onto the sigma_k = 0 boundary.
std::vector<double> sample_cone_member(Rng& rng, const ConeSpec& cone, bool enrich_boundary) {
    for (int tries = 0; tries < 20000; ++tries) {
        std::vector<double> x = random_vector(rng, cone.N, -1.0, 1.0);
        if (enrich_boundary && tries % 2 == 1 && cone.N >= 2) {
            // sigma_k(x) = sigma_k(head) + x_N * sigma_{k-1}(head); shift the
            // last coordinate to put x on the sigma_k = 0 boundary.
            std::vector<double> head(x.begin(), x.end() - 1);
            const double sk = cone.k <= int(head.size()) ? sigma(cone.k, head) : 0.0;
            const double skm1 = cone.k == 1 ? 1.0 : sigma(cone.k - 1, head);
            if (std::abs(skm1) > 1e-9) x.back() = -sk / skm1;
        }
        if (cone_member(x, cone).verdict != ConeVerdict::outside) return x;
    }
    FAIL("sample_cone_member: rejection sampling exhausted");
    return {};
}

} // namespace

TEST_CASE("sigma matches direct expansions") {
    CHECK(sigma(2, std::vector<double>{1.0, 1.0, -0.5}) == Catch::Approx(0.0).margin(1e-15));
    CHECK(sigma(1, std::vector<double>{1.0, 4.0, 9.0}) == Catch::Approx(14.0));
    CHECK(sigma(2, std::vector<double>{1.0, 4.0, 9.0}) == Catch::Approx(49.0));
    CHECK(sigma_enum(2, {1.0, 4.0, 9.0}) == Catch::Approx(49.0));
}

TEST_CASE("sigma rejects out-of-range k") {
    CHECK_THROWS_AS(sigma(0, std::vector<double>{1.0}), domain_error);
    CHECK_THROWS_AS(sigma(3, std::vector<double>{1.0, 2.0}), domain_error);
}

TEST_CASE("sigma recurrence equals subset enumeration") {
    Rng rng(42, "sigma-oracle");
    for (int trial = 0; trial < 500; ++trial) {
        const int L = rng.uniform_int(1, 10);
        const auto x = random_vector(rng, L, -2.0, 2.0);
        for (int k = 1; k <= L; ++k) {
            const double got = sigma(k, x);
            const double want = sigma_enum(k, x);
            CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("sigma_pattern closed form") {
    CHECK(sigma_pattern(2, 3, -0.5) == Catch::Approx(0.0).margin(1e-15));
    CHECK(sigma_pattern(1, 5, 1.0) == Catch::Approx(5.0));
    CHECK(sigma_pattern(3, 4, 0.0) == Catch::Approx(1.0));

    Rng rng(7, "sigma-pattern");
    for (int trial = 0; trial < 200; ++trial) {
        const int N = rng.uniform_int(1, 9);
        const int l = rng.uniform_int(1, N);
        const double x = rng.uniform(-4.0, 4.0);
        std::vector<double> v(std::size_t(N), 1.0);
        v.back() = x;
        CHECK(sigma_pattern(l, N, x) == Catch::Approx(sigma(l, v)).margin(1e-12));
    }
}

TEST_CASE("sigma_flv from power traces") {
    CHECK(sigma_flv(2, {14.0, 98.0}) == Catch::Approx(49.0));
    CHECK(sigma_flv(3, {3.0, 3.0, 3.0}) == Catch::Approx(1.0));
    CHECK(sigma_flv(1, {-2.5}) == Catch::Approx(-2.5));
    CHECK_THROWS_AS(sigma_flv(0, {}), domain_error);

    // Traces of a diagonal matrix are power sums of its entries.
    Rng rng(11, "flv");
    for (int trial = 0; trial < 100; ++trial) {
        const int L = rng.uniform_int(1, 8);
        const auto x = random_vector(rng, L, -2.0, 2.0);
        std::vector<double> traces(std::size_t(L), 0.0);
        for (int j = 1; j <= L; ++j)
            for (double e : x) traces[std::size_t(j - 1)] += std::pow(e, j);
        for (int k = 1; k <= L; ++k) {
            const double want = sigma(k, x);
            CHECK(std::abs(sigma_flv(k, traces) - want) <= 1e-9 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("cone_member verdicts") {
    const auto b = cone_member(std::vector<double>{1.0, 1.0, -0.5}, ConeSpec(2, 3));
    CHECK(b.verdict == ConeVerdict::boundary);
    REQUIRE(b.sigmas.size() == 2);
    CHECK(b.sigmas[0] == Catch::Approx(1.5));
    CHECK(b.sigmas[1] == Catch::Approx(0.0).margin(1e-15));

    for (int k = 1; k <= 3; ++k)
        CHECK(cone_member(std::vector<double>{1.0, 4.0, 9.0}, ConeSpec(k, 3)).verdict ==
              ConeVerdict::inside);

    const auto e = cone_member(std::vector<double>{2.0, 2.0, -1.0}, ConeSpec(2, 3));
    CHECK(e.verdict == ConeVerdict::boundary);
    CHECK(e.sigmas[0] == Catch::Approx(3.0));
    CHECK(e.sigmas[1] == Catch::Approx(0.0).margin(1e-15));

    CHECK_THROWS_AS(cone_member(std::vector<double>{1.0, 2.0}, ConeSpec(1, 3)), domain_error);
}

TEST_CASE("hadamard product") {
    CHECK(hadamard({1.0, 2.0}, {3.0, 4.0}) == std::vector<double>{3.0, 8.0});
    const std::vector<double> x{0.3, -1.2, 5.0};
    CHECK(hadamard(x, {1.0, 1.0, 1.0}) == x);
    CHECK(hadamard({1.0, 4.0, 9.0}, {1.0, 1.0, -0.5}) == std::vector<double>{1.0, 4.0, -4.5});
    CHECK_THROWS_AS(hadamard({1.0}, {1.0, 2.0}), domain_error);
}

TEST_CASE("cone_extremals carries the boundary patterns") {
    const auto fam = cone_extremals(2, 3);
    auto contains = [&](const std::vector<double>& v) {
        for (const auto& e : fam.vectors) {
            bool same = true;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (std::abs(e.values[i] - v[i]) > 1e-12) same = false;
            if (same) return true;
        }
        return false;
    };
    CHECK(contains({1.0, 1.0, -0.5}));
    CHECK(contains({-0.5, 1.0, 1.0}));

    const auto fam12 = cone_extremals(1, 2);
    bool has = false;
    for (const auto& e : fam12.vectors)
        if (std::abs(e.values[0] - 1.0) < 1e-12 && std::abs(e.values[1] + 1.0) < 1e-12) has = true;
    CHECK(has);

    CHECK_THROWS_AS(cone_extremals(3, 3), domain_error);
}

TEST_CASE("every extremal vector sits on the level-k boundary") {
    for (int K = 2; K <= 7; ++K) {
        for (int k = 1; k < K; ++k) {
            const auto fam = cone_extremals(k, K);
            CHECK(!fam.vectors.empty());
            for (const auto& e : fam.vectors) {
                const auto cm = cone_member(e.values, ConeSpec(k, K));
                INFO("k=" << k << " K=" << K << " construction=" << e.construction);
                CHECK(cm.verdict != ConeVerdict::outside);
                CHECK(std::abs(cm.sigmas.back()) <= 1e-9); // sigma_k = 0 by construction
            }
        }
    }
}

TEST_CASE("zero_pad basics and membership preservation") {
    CHECK(zero_pad({1.0, 1.0, -0.5}, 1) == std::vector<double>{1.0, 1.0, -0.5, 0.0});
    CHECK(cone_member(zero_pad({1.0, 1.0, -0.5}, 1), ConeSpec(2, 4)).verdict !=
          ConeVerdict::outside);
    CHECK(cone_member(zero_pad({-1.0}, 2), ConeSpec(1, 3)).verdict == ConeVerdict::outside);

    Rng rng(3, "zero-pad");
    for (int trial = 0; trial < 300; ++trial) {
        const int N = rng.uniform_int(2, 6);
        const int k = rng.uniform_int(1, N);
        const ConeSpec cone(k, N);
        const auto x = sample_cone_member(rng, cone, true);
        const int l = rng.uniform_int(0, 3);
        CHECK(cone_member(zero_pad(x, l), ConeSpec(k, N + l)).verdict != ConeVerdict::outside);
    }
}

TEST_CASE("cone nesting") {
    Rng rng(5, "nesting");
    for (int trial = 0; trial < 500; ++trial) {
        const int N = rng.uniform_int(2, 8);
        const int k = rng.uniform_int(2, N);
        const auto x = sample_cone_member(rng, ConeSpec(k, N), true);
        for (int kk = k - 1; kk >= 1; --kk)
            CHECK(cone_member(x, ConeSpec(kk, N)).verdict != ConeVerdict::outside);
    }
}

TEST_CASE("convex cone closure under non-negative combinations") {
    Rng rng(9, "convexity");
    for (int trial = 0; trial < 500; ++trial) {
        const int N = rng.uniform_int(2, 7);
        const int k = rng.uniform_int(1, N);
        const ConeSpec cone(k, N);
        const auto x = sample_cone_member(rng, cone, true);
        const auto y = sample_cone_member(rng, cone, true);
        const double a = rng.uniform(0.0, 2.0), b = rng.uniform(0.0, 2.0);
        std::vector<double> z(std::size_t(N), 0.0);
        for (int i = 0; i < N; ++i) z[std::size_t(i)] = a * x[std::size_t(i)] + b * y[std::size_t(i)];
        // Combined slack: each input may be up to tolerance below zero per level.
        const ConeSpec loose(k, N, kDefaultConeTol * (1.0 + a + b) * 10.0);
        CHECK(cone_member(z, loose).verdict != ConeVerdict::outside);
    }
}

TEST_CASE("threshold flip of (1,...,1,x) at 1 - N/k") {
    Rng rng(13, "threshold");
    for (int trial = 0; trial < 300; ++trial) {
        const int N = rng.uniform_int(2, 8);
        const int k = rng.uniform_int(1, N);
        const double xstar = 1.0 - double(N) / double(k);
        auto probe = [&](double x) {
            std::vector<double> v(std::size_t(N), 1.0);
            v.back() = x;
            return cone_member(v, ConeSpec(k, N)).verdict;
        };
        CHECK(probe(xstar + 1e-3) != ConeVerdict::outside);
        CHECK(probe(xstar - 1e-3) == ConeVerdict::outside);
        CHECK(probe(xstar + 1e-12) == ConeVerdict::boundary);
    }
}
