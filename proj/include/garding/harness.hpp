#pragma once

// Seeded refutation campaigns and the regression suite reproducing every
// proposition, lemma, and worked example in scope. Campaigns are pure
// functions of (config, seed); identical inputs give identical outcomes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "garding/classify.hpp"
#include "garding/cxcalc.hpp"
#include "garding/cxlinalg.hpp"
#include "garding/expression.hpp"
#include "garding/grid.hpp"
#include "garding/rng.hpp"
#include "garding/symcone.hpp"

namespace garding {

inline constexpr std::uint64_t kDefaultSuiteSeed = 20230427ull;

// ---------------------------------------------------------------------------
// Cone sampling

inline std::vector<double> sample_box(Rng& rng, int L, double radius = 1.0) {
    std::vector<double> x(std::size_t(L), 0.0);
    for (double& v : x) v = rng.uniform(-radius, radius);
    return x;
}

/// Rejection-sample a member of Lambda_{k,N} from a symmetric box. Every
/// other attempt shifts the last coordinate onto the sigma_k = 0 boundary
/// (pure rejection almost never lands there).
inline std::vector<double> sample_cone_member(Rng& rng, const ConeSpec& cone,
                                              bool enrich_boundary = true,
                                              int max_tries = 50000) {
    const ConeSpec strict(cone.k, cone.N, 0.0);
    for (int tries = 0; tries < max_tries; ++tries) {
        std::vector<double> x = sample_box(rng, cone.N, 1.0);
        if (enrich_boundary && tries % 2 == 1 && cone.N >= 2) {
            // sigma_k(x) = sigma_k(head) + x_N sigma_{k-1}(head)
            std::vector<double> head(x.begin(), x.end() - 1);
            const double sk = cone.k <= int(head.size()) ? sigma(cone.k, head) : 0.0;
            const double skm1 = cone.k == 1 ? 1.0 : sigma(cone.k - 1, head);
            if (std::abs(skm1) > 1e-9) x.back() = -sk / skm1;
        }
        if (cone_member(x, strict).verdict != ConeVerdict::outside) return x;
    }
    throw numerical_error("sample_cone_member: rejection sampling exhausted");
}

// ---------------------------------------------------------------------------
// Hadamard-multiplier campaign

struct Lemma35Outcome {
    bool pass;
    int trials_run = 0;
    int violations_forward = 0; // direction (i): conclusion-shaped y must stay in the cone
    int missing_refutations = 0; // direction (ii): breaking y with no extremal witness
    std::string detail;
};

namespace detail {

// y (length L) acting on x (length K), padded or truncated to length L.
inline std::vector<double> multiplier_product(const std::vector<double>& y,
                                              const std::vector<double>& x, int K, int L) {
    std::vector<double> prod(std::size_t(L), 0.0);
    for (int j = 0; j < std::min(K, L); ++j)
        prod[std::size_t(j)] = y[std::size_t(j)] * x[std::size_t(j)];
    return prod;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

} // namespace detail

/// Two-direction campaign for the multiplier lemma. Direction (i): for y of
/// the conclusion shape (all entries equal when k = l and L >= K, zero
/// otherwise), no sampled or extremal x in Lambda_{k,K} pushes y ⊙ x out of
/// Lambda_{l,L}. Direction (ii): for y breaking the conclusion, some
/// extremal witness escapes. Violations are re-tested in isolation before
/// being reported.
inline Lemma35Outcome campaign_lemma35(int k, int l, int K, int L, int trials,
                                       std::uint64_t seed) {
    if (k < 1 || k > l || k >= K) throw domain_error("campaign_lemma35: need 1 <= k <= l, k < K");
    if (l > L) throw domain_error("campaign_lemma35: need l <= L for the target cone");
    std::ostringstream name;
    name << "lemma35:" << k << ":" << l << ":" << K << ":" << L;
    Rng rng(seed, name.str());
    Lemma35Outcome out{true, 0, 0, 0, {}};
    const ConeSpec source(k, K, 0.0);
    const ExtremalFamily fam = cone_extremals(k, K);

    const bool conclusion_equal = (L >= K && k == l); // otherwise the conclusion is y = 0
    auto check_in_target = [&](const std::vector<double>& y, const std::vector<double>& x) {
        const auto prod = detail::multiplier_product(y, x, K, L);
        const double tol = kDefaultConeTol * (1.0 + detail::max_abs(prod));
        return cone_member(prod, ConeSpec(l, L, tol)).verdict != ConeVerdict::outside;
    };

    // direction (i)
    for (int t = 0; t < trials; ++t) {
        std::vector<double> y(std::size_t(L), 0.0);
        if (conclusion_equal) {
            const double a = rng.uniform(0.0, 2.0);
            for (double& v : y) v = a;
        }
        const std::vector<double> x =
            (t % 4 == 3) ? fam.vectors[std::size_t(t / 4) % fam.vectors.size()].values
                         : sample_cone_member(rng, source);
        if (!check_in_target(y, x) && !check_in_target(y, x)) { // re-test before reporting
            ++out.violations_forward;
            if (out.detail.empty()) {
                std::ostringstream os;
                os << "forward violation at trial " << t;
                out.detail = os.str();
            }
        }
        ++out.trials_run;
    }

    // direction (ii)
    const int eff = std::min(K, L);
    std::vector<std::vector<double>> breaking;
    if (conclusion_equal) {
        for (int v = 0; v < 6; ++v) {
            std::vector<double> y(std::size_t(L), 0.0);
            for (int j = 0; j < eff; ++j) y[std::size_t(j)] = rng.uniform(0.2, 2.0);
            if (eff >= 2) y[1] = y[0] * rng.uniform(1.5, 3.0); // force unequal
            if (v % 3 == 2 && eff >= 2) y[std::size_t(eff - 1)] = 0.0; // a vanishing entry
            breaking.push_back(std::move(y));
        }
    } else {
        // conclusion forces y = 0: any non-zero y breaks it
        for (int v = 0; v < 6; ++v) {
            std::vector<double> y(std::size_t(L), 0.0);
            const double a = rng.uniform(0.2, 2.0);
            for (int j = 0; j < eff; ++j)
                y[std::size_t(j)] = (v % 2 == 0) ? a : rng.uniform(0.2, 2.0);
            breaking.push_back(std::move(y));
        }
    }
    for (const auto& y : breaking) {
        bool found = false;
        for (const auto& ex : fam.vectors) {
            const auto prod = detail::multiplier_product(y, ex.values, K, L);
            const double tol = kDefaultConeTol * (1.0 + detail::max_abs(prod));
            if (cone_member(prod, ConeSpec(l, L, tol)).verdict == ConeVerdict::outside) {
                found = true;
                break;
            }
        }
        if (!found) {
            ++out.missing_refutations;
            if (out.detail.empty()) out.detail = "no extremal witness for a breaking multiplier";
        }
    }

    out.pass = out.violations_forward == 0 && out.missing_refutations == 0;
    return out;
}

// ---------------------------------------------------------------------------
// The acceptance suite

struct SuiteItem {
    std::string name;
    bool pass = false;
    double margin = 0.0; // distance to the pass/fail line, positive = slack
    bool fd_limited = false; // accuracy bounded by the difference scheme, not the theorem
    std::string detail;
    double ms = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = kDefaultSuiteSeed;
    double fd_tol_scale = 1.0; // tighten (<1) or loosen (>1) FD-based tolerances
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<SuiteItem> items;
    bool all_pass = false;
};

namespace suite {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Criterion 1: the worked composition example, end to end through the
// expression parser and FD Hessians.
inline SuiteItem example41_end_to_end(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"example41_end_to_end"};
    item.fd_limited = true;
    const double tol = 1e-6 * opt.fd_tol_scale;

    const ScalarField u =
        expr::to_scalar_field(expr::parse("abs2(z1)+abs2(z2)-0.5*abs2(z3)", 3));
    auto grid = make_lattice(3, GridSpec{0.5, 2});
    grid.resize(20);

    ComplexMatrix Ag(3, 3), Af(3, 3);
    Ag(0, 0) = 1.0; Ag(1, 1) = 1.0; Ag(2, 2) = 3.0;
    Af(0, 0) = 1.0; Af(1, 1) = 2.0; Af(2, 2) = 3.0;
    const MapField g = to_map_field(AffineHoloMap(Ag, CPoint(3, Complex())));
    const MapField f = to_map_field(AffineHoloMap(Af, CPoint(3, Complex())));

    double dev = 0.0;
    bool verdicts_ok = true;
    for (const CPoint& z : grid) {
        const auto vu = k_subharmonic_at(u, z, 2, {}, tol);
        dev = std::max({dev, std::abs(vu.membership.sigmas[0] - 1.5),
                        std::abs(vu.membership.sigmas[1])});
        verdicts_ok = verdicts_ok && vu.membership.verdict == ConeVerdict::boundary;

        const auto vg = k_subharmonic_at(compose(u, g), z, 1, {}, tol);
        dev = std::max(dev, std::abs(vg.membership.sigmas[0] + 2.5));
        verdicts_ok = verdicts_ok && vg.membership.verdict == ConeVerdict::outside;

        const auto vf = k_subharmonic_at(compose(u, f), z, 1, {}, tol);
        dev = std::max(dev, std::abs(vf.membership.sigmas[0] - 0.5));
        verdicts_ok = verdicts_ok && vf.membership.verdict != ConeVerdict::outside;
    }
    item.pass = verdicts_ok && dev <= tol;
    item.margin = tol - dev;
    std::ostringstream os;
    os << "max sigma deviation " << dev << " over " << grid.size() << " points (tol " << tol
       << (opt.fd_tol_scale == 1.0 ? ")" : ", finite-difference limited)");
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 2: minimum conditions on the sigma cone in R^3.
inline SuiteItem example36_min_conditions(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"example36_min_conditions"};

    const auto r149 = brute_min_boundary({1.0, 4.0, 9.0}, 20000, opt.seed);
    const double nref = std::sqrt(49.0);
    const double dot =
        (6.0 * r149.argmin[0] + 3.0 * r149.argmin[1] - 2.0 * r149.argmin[2]) / nref;
    const double angle = std::acos(std::min(1.0, std::max(-1.0, dot)));

    const auto r119 = brute_min_boundary({1.0, 1.0, 9.0}, 20000, opt.seed);
    const auto c149 = lemma42_condition({1.0, 4.0, 9.0}, 3, 3);
    const auto c119 = lemma42_condition({1.0, 1.0, 9.0}, 3, 3);

    const bool ok = r149.min_value >= -1e-6 && angle <= 1e-3 && r119.min_value <= -0.1 &&
                    r119.sigma1 >= 0.0 && r119.sigma2 >= -1e-9 &&
                    c149.which == Lemma42Case::min_zero_via_identity &&
                    c149.identity_lhs == 196.0 && c149.identity_rhs == 196.0 &&
                    c119.which == Lemma42Case::no_zero_min;
    item.pass = ok;
    item.margin = 1e-3 - angle;
    std::ostringstream os;
    os << "min(1,4,9)=" << r149.min_value << " angle=" << angle << " min(1,1,9)=" << r119.min_value
       << " sigma=(" << r119.sigma1 << "," << r119.sigma2 << ")";
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 3: both readings of the singular-value identity.
inline SuiteItem thm44_variants(const SuiteOptions&) {
    const auto t0 = Clock::now();
    SuiteItem item{"thm44_variants"};
    const auto d = thm44_check({1.0, 2.0, 3.0}, 3, Thm44Variant::derived_correct);
    const auto p = thm44_check({1.0, 2.0, 3.0}, 3, Thm44Variant::as_printed);
    item.pass = d.holds && d.lhs == 196.0 && d.rhs == 196.0 && !p.holds && (p.lhs - p.rhs) > 5.0;
    item.margin = p.lhs - p.rhs - 5.0;
    std::ostringstream os;
    os << "derived: " << d.lhs << " = " << d.rhs << "; as printed: " << p.lhs << " vs " << p.rhs
       << " (the printed variant fails; both are reported)";
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

namespace oracle {

// Subset-enumeration oracle, independent of the recurrence path.
inline double sigma_subsets(int k, const std::vector<double>& x) {
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

} // namespace oracle

// Criterion 4: recurrence vs enumeration, Faddeev-LeVerrier vs spectra,
// SVD reconstruction and unitarity.
inline SuiteItem oracle_equivalences(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"oracle_equivalences"};
    Rng rng(opt.seed, "oracles");
    double worst = 0.0; // worst normalized deviation across all three families
    int checks = 0;

    for (int trial = 0; trial < 500; ++trial) {
        const int L = rng.uniform_int(1, 10);
        std::vector<double> x = sample_box(rng, L, 2.0);
        for (int k = 1; k <= L; ++k) {
            const double want = oracle::sigma_subsets(k, x);
            const double rel =
                std::abs(sigma(k, x) - want) / (1e-12 * (1.0 + std::abs(want)));
            worst = std::max(worst, rel);
            ++checks;
        }
    }

    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(1, 8);
        ComplexMatrix G(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) G(r, c) = rng.cnormal();
        const HermitianMatrix A((G + G.adjoint()).scaled(0.5));
        const auto eig = herm_eigs(A);
        const auto traces = power_traces(A, n);
        for (int k = 1; k <= n; ++k) {
            const double want = sigma(k, eig.values.sorted());
            const double rel =
                std::abs(sigma_flv(k, traces) - want) / (1e-9 * (1.0 + std::abs(want)));
            worst = std::max(worst, rel);
            ++checks;
        }
    }

    for (int trial = 0; trial < 200; ++trial) {
        const int m = rng.uniform_int(1, 6);
        const int n = rng.uniform_int(1, 8);
        ComplexMatrix A(m, n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c) A(r, c) = rng.cnormal();
        const auto r = svd(A);
        const double resid = (svd_reconstruct(r, m, n) - A).frobenius_norm() /
                             (1e-9 * (1.0 + A.frobenius_norm()));
        const double ures = unitarity_residual(r.U) / 1e-9;
        const double wres = unitarity_residual(r.W) / 1e-9;
        worst = std::max({worst, resid, ures, wres});
        checks += 3;
    }

    item.pass = worst <= 1.0;
    item.margin = 1.0 - worst;
    std::ostringstream os;
    os << checks << " oracle checks, worst normalized deviation " << worst;
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 5: cone nesting, convexity, zero padding, and the threshold
// flip of (1,...,1,x).
inline SuiteItem prop34_cone_campaign(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"prop34_cone_campaign"};
    Rng rng(opt.seed, "prop34");
    int violations = 0;
    const int trials = 1000;

    for (int t = 0; t < trials; ++t) { // nesting
        const int N = rng.uniform_int(2, 8);
        const int k = rng.uniform_int(2, N);
        const auto x = sample_cone_member(rng, ConeSpec(k, N));
        for (int kk = k - 1; kk >= 1; --kk)
            if (cone_member(x, ConeSpec(kk, N)).verdict == ConeVerdict::outside) ++violations;
    }
    for (int t = 0; t < trials; ++t) { // convex combinations
        const int N = rng.uniform_int(2, 8);
        const int k = rng.uniform_int(1, N);
        const auto x = sample_cone_member(rng, ConeSpec(k, N));
        const auto y = sample_cone_member(rng, ConeSpec(k, N));
        const double a = rng.uniform(0.0, 2.0), b = rng.uniform(0.0, 2.0);
        std::vector<double> z(std::size_t(N), 0.0);
        for (int i = 0; i < N; ++i)
            z[std::size_t(i)] = a * x[std::size_t(i)] + b * y[std::size_t(i)];
        if (cone_member(z, ConeSpec(k, N)).verdict == ConeVerdict::outside) ++violations;
    }
    for (int t = 0; t < trials; ++t) { // zero padding
        const int N = rng.uniform_int(2, 8);
        const int k = rng.uniform_int(1, N);
        const int l = rng.uniform_int(0, 3);
        const auto x = sample_cone_member(rng, ConeSpec(k, N));
        if (cone_member(zero_pad(x, l), ConeSpec(k, N + l)).verdict == ConeVerdict::outside)
            ++violations;
    }
    for (int t = 0; t < trials; ++t) { // threshold flip at 1 - N/k
        const int N = rng.uniform_int(2, 8);
        const int k = rng.uniform_int(1, N);
        const double xstar = 1.0 - double(N) / double(k);
        auto verdict_at = [&](double v) {
            std::vector<double> x(std::size_t(N), 1.0);
            x.back() = v;
            return cone_member(x, ConeSpec(k, N)).verdict;
        };
        if (verdict_at(xstar - 1e-3) != ConeVerdict::outside) ++violations;
        if (verdict_at(xstar + 1e-3) == ConeVerdict::outside) ++violations;
        if (verdict_at(xstar + 1e-12) != ConeVerdict::boundary) ++violations;
    }

    item.pass = violations == 0;
    item.margin = double(-violations);
    std::ostringstream os;
    os << "4 x " << trials << " trials, " << violations << " violations at tolerance 1e-9";
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 6: the multiplier lemma campaign over random cone indices.
inline SuiteItem lemma35_campaign(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"lemma35_campaign"};
    Rng rng(opt.seed, "lemma35-configs");
    int failed = 0;
    int configs = 0;
    for (int c = 0; c < 50; ++c) {
        const int K = rng.uniform_int(2, 6);
        const int k = rng.uniform_int(1, K - 1);
        const int l = rng.uniform_int(k, 6);
        const int L = rng.uniform_int(l, 6);
        const auto out = campaign_lemma35(k, l, K, L, 1000, opt.seed + std::uint64_t(c));
        if (!out.pass) {
            ++failed;
            if (item.detail.empty()) {
                std::ostringstream os;
                os << "k=" << k << " l=" << l << " K=" << K << " L=" << L << ": " << out.detail;
                item.detail = os.str();
            }
        }
        ++configs;
    }
    item.pass = failed == 0;
    item.margin = double(-failed);
    if (item.detail.empty()) {
        std::ostringstream os;
        os << configs << " configurations, both directions clean";
        item.detail = os.str();
    }
    item.ms = ms_since(t0);
    return item;
}

// Criterion 7: projection classification, witness soundness under
// perturbation, and signature monotonicity.
inline SuiteItem classifier_witness_campaign(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"classifier_witness_campaign"};
    Rng rng(opt.seed, "classifier");
    int bad = 0;
    double worst_margin = 1.0;

    auto random_projection = [&](int M, int N, double c) {
        for (;;) {
            ComplexMatrix A(M, N);
            for (int r = 0; r < M; ++r)
                for (int j = 0; j < N; ++j) A(r, j) = rng.cnormal();
            bool ok = true;
            for (int r = 0; r < M && ok; ++r) {
                for (int pass = 0; pass < 2; ++pass)
                    for (int p = 0; p < r; ++p) {
                        Complex proj(0.0, 0.0);
                        for (int j = 0; j < N; ++j) proj += std::conj(A(p, j)) * A(r, j);
                        for (int j = 0; j < N; ++j) A(r, j) -= proj * A(p, j);
                    }
                double nrm = 0.0;
                for (int j = 0; j < N; ++j) nrm += std::norm(A(r, j));
                nrm = std::sqrt(nrm);
                if (nrm < 1e-6) {
                    ok = false;
                    break;
                }
                for (int j = 0; j < N; ++j) A(r, j) = A(r, j) / nrm;
            }
            if (ok) return A.scaled(c);
        }
    };

    for (int trial = 0; trial < 200; ++trial) {
        const int N = rng.uniform_int(2, 6);
        const int M = rng.uniform_int(2, N);
        const int m = rng.uniform_int(1, M - 1);
        const Signature sig(m, m, M, N);
        const double c = rng.uniform(0.3, 2.0);
        const ComplexMatrix A = random_projection(M, N, c);
        const AffineHoloMap map(A, CPoint(std::size_t(M), Complex()));

        const auto v = classify_affine(map, sig);
        if (v.kind != MorphismKind::projection_type) ++bad;

        ComplexMatrix B = A;
        for (int r = 0; r < M; ++r)
            for (int j = 0; j < N; ++j) B(r, j) += 1e-2 * c * rng.cnormal();
        const AffineHoloMap pmap(B, CPoint(std::size_t(M), Complex()));
        const auto vb = classify_affine(pmap, sig);
        if (vb.kind != MorphismKind::not_morphism || !vb.witness.has_value()) {
            ++bad;
        } else {
            const auto& w = *vb.witness;
            const auto cm = cone_member(w.composed_spectrum, ConeSpec(sig.n, sig.N));
            const auto hm = cone_member(herm_eigs(w.H).values.sorted(), ConeSpec(sig.m, sig.M));
            if (cm.verdict != ConeVerdict::outside || cm.margin >= -1e-8 ||
                hm.verdict == ConeVerdict::outside)
                ++bad;
            worst_margin = std::min(worst_margin, -cm.margin);
        }

        // monotonicity over every admissible signature pair for this map
        if (trial % 10 == 0) {
            std::vector<Signature> sigs;
            for (int m1 = 1; m1 < M; ++m1)
                for (int n1 = m1; n1 <= N; ++n1) sigs.emplace_back(m1, n1, M, N);
            std::vector<MorphismKind> kinds;
            for (const auto& s : sigs) kinds.push_back(classify_affine(map, s).kind);
            for (std::size_t i = 0; i < sigs.size(); ++i) {
                if (kinds[i] == MorphismKind::not_morphism) continue;
                for (std::size_t j = 0; j < sigs.size(); ++j) {
                    const bool admissible = sigs[j].m >= sigs[i].m && sigs[j].n <= sigs[i].n &&
                                            sigs[j].m <= sigs[j].n;
                    if (admissible && kinds[j] == MorphismKind::not_morphism) ++bad;
                }
            }
        }
    }

    item.pass = bad == 0;
    item.margin = worst_margin - 1e-8;
    std::ostringstream os;
    os << "200 projection/perturbation pairs, " << bad
       << " defects; smallest witness exit margin " << worst_margin;
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 8: chain rule against FD composition, and the Levi expansion.
inline SuiteItem chain_levi_agreement(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"chain_levi_agreement"};
    item.fd_limited = true;
    Rng rng(opt.seed, "chain-levi");
    const double chain_tol = 1e-6 * opt.fd_tol_scale;
    const double levi_tol = 1e-5 * opt.fd_tol_scale;
    double worst_chain = 0.0, worst_levi = 0.0;

    auto random_hermitian = [&](int n) {
        ComplexMatrix G(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) G(r, c) = rng.cnormal();
        return HermitianMatrix((G + G.adjoint()).scaled(0.5));
    };
    auto random_point = [&](int n, double scale) {
        CPoint z(std::size_t(n), Complex(0.0, 0.0));
        for (auto& v : z) v = Complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
        return z;
    };

    for (int trial = 0; trial < 50; ++trial) {
        const int N = rng.uniform_int(2, 3);
        const int M = rng.uniform_int(2, 3);
        ComplexMatrix A(M, N);
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < N; ++c) A(r, c) = 0.5 * rng.cnormal();
        CPoint w0(std::size_t(M), Complex(0.0, 0.0));
        for (auto& v : w0) v = 0.5 * rng.cnormal();
        const MapField f = to_map_field(AffineHoloMap(A, w0));
        const ScalarField phi = make_quadratic_form(random_hermitian(M), random_point(M, 0.5));
        const CPoint z = random_point(N, 0.5);
        const auto d = wirtinger_derivs(f, z);
        const auto pushed = chain_hessian(complex_gradient_matrix(d), phi.analytic_hessian(z));
        const auto direct = complex_hessian(compose(phi, f), z);
        worst_chain = std::max(worst_chain, (pushed.mat() - direct.mat()).max_abs());
    }

    for (int trial = 0; trial < 50; ++trial) {
        const int variant = trial % 3; // holomorphic / anti-holomorphic / mixed
        MapField f{2, 2,
                   [variant](const CPoint& z) {
                       if (variant == 1)
                           return CPoint{std::conj(z[0]) * std::conj(z[0]),
                                         std::conj(z[0] * z[1])};
                       if (variant == 2)
                           return CPoint{z[0] * std::conj(z[1]), std::norm(z[0]) * z[1]};
                       return CPoint{z[0] * z[1], z[1] * z[1]};
                   },
                   variant == 1, "poly"};
        const ScalarField phi = make_quadratic_form(random_hermitian(2), random_point(2, 0.5));
        const auto r = levi_decomposition_check(phi, f, random_point(2, 0.5), random_point(2, 0.7));
        worst_levi = std::max(worst_levi, r.residual);
    }

    item.pass = worst_chain <= chain_tol && worst_levi <= levi_tol;
    item.margin = std::min(chain_tol - worst_chain, levi_tol - worst_levi);
    std::ostringstream os;
    os << "worst chain deviation " << worst_chain << " (tol " << chain_tol
       << "), worst Levi residual " << worst_levi << " (tol " << levi_tol << ")"
       << (opt.fd_tol_scale == 1.0 ? "" : " [finite-difference limited]");
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 9: the radial catalog functions sit on the sigma_k boundary.
inline SuiteItem gk_boundary_spectrum(const SuiteOptions& opt) {
    const auto t0 = Clock::now();
    SuiteItem item{"gk_boundary_spectrum"};
    item.fd_limited = true;
    Rng rng(opt.seed, "gk");
    const double tol = 1e-4 * opt.fd_tol_scale;
    const FDScheme scheme{1e-3, 4};
    double worst = 0.0;
    bool positivity = true;
    for (int k = 1; k <= 3; ++k) {
        const ScalarField gk = make_gk(k, 3);
        for (int trial = 0; trial < 50; ++trial) {
            CPoint z;
            for (;;) {
                z = CPoint(3, Complex(0.0, 0.0));
                for (auto& v : z) v = Complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
                const double r = std::sqrt(norm2(z));
                if (r >= 0.5 && r <= 2.0) break;
            }
            const auto lam = herm_eigs(complex_hessian(gk, z, scheme)).values;
            const auto sig = sigma_all(lam.sorted());
            worst = std::max(worst, std::abs(sig[std::size_t(k)]));
            for (int l = 1; l < k; ++l) positivity = positivity && sig[std::size_t(l)] > 0.0;
        }
    }
    item.pass = worst <= tol && positivity;
    item.margin = tol - worst;
    std::ostringstream os;
    os << "max |sigma_k| " << worst << " over 150 shell points (tol " << tol
       << "), lower levels positive: " << (positivity ? "yes" : "no")
       << (opt.fd_tol_scale == 1.0 ? "" : " [finite-difference limited]");
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

// Criterion 10: residual families and Cauchy-Riemann classification.
inline SuiteItem holomorphy_probes(const SuiteOptions&) {
    const auto t0 = Clock::now();
    SuiteItem item{"holomorphy_probes"};
    const auto grid = make_lattice(2, GridSpec{0.5, 2});

    MapField holo{2, 2,
                  [](const CPoint& z) {
                      return CPoint{z[0] * z[0], z[0] * z[1]};
                  },
                  false, "holo"};
    MapField anti{2, 2,
                  [](const CPoint& z) {
                      return CPoint{std::conj(z[0]), std::conj(z[1])};
                  },
                  true, "anti"};
    MapField mixed{2, 2,
                   [](const CPoint& z) {
                       return CPoint{z[0], std::conj(z[1])};
                   },
                   false, "mixed"};

    const auto rh = holomorphy_probe(holo, grid);
    const auto ra = holomorphy_probe(anti, grid);
    const auto rm = holomorphy_probe(mixed, grid);

    const double pure_resid = std::max(
        {rh.cr.max_mixed_product, rh.r_mixed_hessian, ra.cr.max_mixed_product, ra.r_mixed_hessian});
    const double mixed_resid = std::max(rm.cr.max_mixed_product, rm.r_mixed_hessian);
    item.pass = rh.cr.kind == Holomorphy::holomorphic && ra.cr.kind == Holomorphy::anti_holomorphic &&
                rm.cr.kind == Holomorphy::neither && pure_resid <= 1e-6 && mixed_resid > 0.1;
    item.margin = mixed_resid - 0.1;
    std::ostringstream os;
    os << "pure residual " << pure_resid << " (<= 1e-6), mixed obstruction " << mixed_resid
       << " (> 0.1)";
    item.detail = os.str();
    item.ms = ms_since(t0);
    return item;
}

} // namespace suite

/// Run every acceptance criterion; failures are data, not errors.
inline SuiteReport run_paper_suite(const SuiteOptions& opt = {}) {
    SuiteReport rep;
    rep.seed = opt.seed;
    rep.items = {
        suite::example41_end_to_end(opt),   suite::example36_min_conditions(opt),
        suite::thm44_variants(opt),         suite::oracle_equivalences(opt),
        suite::prop34_cone_campaign(opt),   suite::lemma35_campaign(opt),
        suite::classifier_witness_campaign(opt), suite::chain_levi_agreement(opt),
        suite::gk_boundary_spectrum(opt),   suite::holomorphy_probes(opt),
    };
    rep.all_pass = true;
    for (const auto& it : rep.items) rep.all_pass = rep.all_pass && it.pass;
    return rep;
}

} // namespace garding
