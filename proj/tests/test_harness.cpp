#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "garding/harness.hpp"

using namespace garding;

TEST_CASE("cone sampling produces members and is seed-stable") {
    Rng a(99, "sampling");
    Rng b(99, "sampling");
    for (int t = 0; t < 50; ++t) {
        const ConeSpec cone(2, 4);
        const auto x = sample_cone_member(a, cone);
        const auto y = sample_cone_member(b, cone);
        CHECK(x == y);
        CHECK(cone_member(x, cone).verdict != ConeVerdict::outside);
    }
}

TEST_CASE("lemma35 campaign: equal multipliers are safe when L >= K and k = l") {
    const auto out = campaign_lemma35(2, 2, 4, 4, 1000, 5);
    CHECK(out.pass);
    CHECK(out.violations_forward == 0);
    CHECK(out.missing_refutations == 0);
}

TEST_CASE("lemma35 campaign: truncation (L < K) refutes any non-zero multiplier") {
    // includes y = a*(1,1,1): for L < K the conclusion forces y = 0
    const auto out = campaign_lemma35(2, 2, 4, 3, 500, 6);
    CHECK(out.pass);
}

TEST_CASE("lemma35 campaign: k < l refutes equal non-zero multipliers") {
    const auto out = campaign_lemma35(2, 3, 4, 6, 500, 7);
    CHECK(out.pass);
}

TEST_CASE("lemma35 campaign rejects bad cone indices") {
    CHECK_THROWS_AS(campaign_lemma35(3, 2, 4, 4, 10, 1), domain_error);
    CHECK_THROWS_AS(campaign_lemma35(2, 2, 2, 4, 10, 1), domain_error);
    CHECK_THROWS_AS(campaign_lemma35(2, 5, 6, 4, 10, 1), domain_error);
}

TEST_CASE("lemma35 campaign is a pure function of config and seed") {
    const auto a = campaign_lemma35(1, 2, 3, 4, 200, 42);
    const auto b = campaign_lemma35(1, 2, 3, 4, 200, 42);
    CHECK(a.pass == b.pass);
    CHECK(a.trials_run == b.trials_run);
    CHECK(a.violations_forward == b.violations_forward);
    CHECK(a.missing_refutations == b.missing_refutations);
}

TEST_CASE("paper suite passes on the default seed") {
    const SuiteReport rep = run_paper_suite();
    REQUIRE(rep.items.size() == 10);
    for (const auto& it : rep.items) {
        INFO(it.name << ": " << it.detail);
        CHECK(it.pass);
    }
    CHECK(rep.all_pass);
}

TEST_CASE("paper suite verdicts are seed-robust and deterministic") {
    SuiteOptions other;
    other.seed = 987654321;
    const SuiteReport rep = run_paper_suite(other);
    for (const auto& it : rep.items) {
        INFO(it.name << ": " << it.detail);
        CHECK(it.pass);
    }

    const SuiteReport again = run_paper_suite(other);
    REQUIRE(again.items.size() == rep.items.size());
    for (std::size_t i = 0; i < rep.items.size(); ++i) {
        CHECK(rep.items[i].pass == again.items[i].pass);
        CHECK(rep.items[i].margin == again.items[i].margin);
    }
}

TEST_CASE("tightening FD tolerances fails FD items and says so") {
    SuiteOptions tight;
    tight.fd_tol_scale = 0.003;
    const SuiteReport rep = run_paper_suite(tight);
    bool fd_failure_attributed = false;
    for (const auto& it : rep.items) {
        if (!it.pass) {
            CHECK(it.fd_limited); // only the FD-bound items may fail
            if (it.detail.find("finite-difference") != std::string::npos)
                fd_failure_attributed = true;
        }
    }
    CHECK_FALSE(rep.all_pass);
    CHECK(fd_failure_attributed);
}
