// Command-line surface: sigma/cone vector queries, FD Hessians of parsed
// expressions, k-subharmonicity over grids, the affine morphism classifier
// with witnesses, holomorphy probes, the singular-value conditions, and the
// full verification suite. Every subcommand can emit a JSON report.
//
// Exit codes: 0 success/pass, 1 verdict-negative (not a morphism, cone
// exit, suite failure), 2 usage or parse error, 3 numerical error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "garding/classify.hpp"
#include "garding/expression.hpp"
#include "garding/grid.hpp"
#include "garding/harness.hpp"
#include "garding/report.hpp"

using namespace garding;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw domain_error("could not parse '" + item + "' as a real number");
        }
    }
    if (out.empty()) throw domain_error("empty number list");
    return out;
}

// Inline JSON if the argument starts with '[' or '{', otherwise a file path.
json load_json_arg(const std::string& arg) {
    std::string text = arg;
    const auto first = arg.find_first_not_of(" \t");
    if (first == std::string::npos || (arg[first] != '[' && arg[first] != '{')) {
        std::ifstream in(arg);
        if (!in) throw domain_error("could not open file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw domain_error(std::string("JSON parse error: ") + e.what());
    }
}

struct Emitter {
    std::string command;
    std::vector<std::string> argv;
    std::string json_path; // empty: none, "-": stdout (suppresses the summary)
    Clock::time_point t0 = Clock::now();

    bool quiet() const { return json_path == "-"; }

    void emit(const json& result) const {
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        const json rep = report::make_report(command, argv, result, ms);
        if (json_path == "-") {
            std::cout << rep.dump(2) << "\n";
        } else if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out) throw domain_error("could not write '" + json_path + "'");
            out << rep.dump(2) << "\n";
        }
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GARDING_SEED")) return std::strtoull(env, nullptr, 10);
    return kDefaultSuiteSeed;
}

int run_sigma(Emitter& em, int k, const std::string& vec) {
    const auto x = parse_reals(vec);
    const double sk = sigma(k, x);
    const auto all = sigma_all(x);
    if (!em.quiet()) {
        std::printf("sigma_%d = %.17g\n", k, sk);
        std::printf("sigma_1..%zu:", x.size());
        for (std::size_t i = 1; i < all.size(); ++i) std::printf(" %.17g", all[i]);
        std::printf("\n");
    }
    em.emit(json{{"k", k},
                 {"vec", x},
                 {"sigma_k", sk},
                 {"sigma_all", std::vector<double>(all.begin() + 1, all.end())}});
    return 0;
}

int run_cone(Emitter& em, int k, const std::string& vec, double tol) {
    const auto x = parse_reals(vec);
    const ConeSpec cone(k, int(x.size()), tol);
    const auto cm = cone_member(x, cone);
    if (!em.quiet()) {
        std::printf("verdict: %s (margin %.3g)\n", to_string(cm.verdict), cm.margin);
        for (std::size_t l = 0; l < cm.sigmas.size(); ++l)
            std::printf("  sigma_%zu = %.17g\n", l + 1, cm.sigmas[l]);
    }
    em.emit(json{{"k", k}, {"N", int(x.size())}, {"tolerance", tol},
                 {"membership", report::to_json(cm)}});
    return cm.verdict == ConeVerdict::outside ? 1 : 0;
}

int run_hessian(Emitter& em, int dim, const std::string& expr_text, const std::string& at,
                double h, int order) {
    const auto e = expr::parse(expr_text, dim);
    const ScalarField u = expr::to_scalar_field(e);
    const CPoint z = report::cpoint_from_json(load_json_arg(at));
    if (int(z.size()) != dim) throw domain_error("--at point has the wrong dimension");
    const FDScheme scheme(h, order);
    const HermitianMatrix H = complex_hessian(u, z, scheme);
    const auto eig = herm_eigs(H);
    if (!em.quiet()) {
        std::printf("complex Hessian of %s:\n", expr_text.c_str());
        for (int r = 0; r < H.dim(); ++r) {
            for (int c = 0; c < H.dim(); ++c)
                std::printf("  (%10.6g,%10.6g)", H(r, c).real(), H(r, c).imag());
            std::printf("\n");
        }
        std::printf("spectrum:");
        for (double v : eig.values.sorted()) std::printf(" %.10g", v);
        std::printf("\n");
    }
    em.emit(json{{"dim", dim}, {"expr", expr_text}, {"at", report::to_json(z)}, {"h", h},
                 {"order", order}, {"hessian", report::to_json(H.mat())},
                 {"spectrum", eig.values.sorted()}});
    return 0;
}

int run_classify_fn(Emitter& em, int dim, const std::string& expr_text, int k,
                    const std::string& grid_spec, double h, int order) {
    const ScalarField u = expr::to_scalar_field(expr::parse(expr_text, dim));
    const FDScheme scheme(h, order);
    const auto grid = interior_points(make_lattice(dim, parse_grid_spec(grid_spec)), u, scheme.h);
    if (grid.empty()) throw domain_error("grid has no interior points for this field");
    const auto rep = k_subharmonic_on_grid(u, grid, k, scheme);
    if (!em.quiet()) {
        std::printf("verdict over %zu points: %s\n", rep.points, to_string(rep.verdict));
        std::printf("worst margin %.6g; sigmas at the worst point:", rep.worst_margin);
        for (double s : rep.sigmas_at_worst) std::printf(" %.10g", s);
        std::printf("\n");
    }
    em.emit(json{{"dim", dim},
                 {"expr", expr_text},
                 {"k", k},
                 {"grid", grid_spec},
                 {"points", int(rep.points)},
                 {"verdict", to_string(rep.verdict)},
                 {"worst", json{{"point", report::to_json(rep.worst_point)},
                                {"margin", rep.worst_margin},
                                {"sigmas", rep.sigmas_at_worst},
                                {"spectrum", rep.spectrum_at_worst}}}});
    return rep.verdict == ConeVerdict::outside ? 1 : 0;
}

int run_classify_map(Emitter& em, const std::string& matrix, int m, int n,
                     const std::string& offset, bool conjugated, double tol) {
    const ComplexMatrix A = report::matrix_from_json(load_json_arg(matrix));
    CPoint w0(std::size_t(A.rows()), Complex(0.0, 0.0));
    if (!offset.empty()) {
        w0 = report::cpoint_from_json(load_json_arg(offset));
        if (int(w0.size()) != A.rows()) throw domain_error("--offset has the wrong dimension");
    }
    const AffineHoloMap map(A, w0, conjugated);
    const Signature sig(m, n, A.rows(), A.cols());
    ClassifyTolerances tols;
    tols.ortho_tol = tol;

    const SVDResult sa = svd(A);
    MorphismVerdict verdict{MorphismKind::not_morphism, 0.0, sa.s, sa.rank, std::nullopt, '-'};
    if (m <= n) {
        verdict = classify_affine(map, sig, tols);
    } else {
        // Beyond the classification theorem: a verified witness still
        // disproves the morphism property; absence of one proves nothing.
        verdict.witness = morphism_witness(map, sig, tols);
    }

    if (!em.quiet()) {
        std::printf("verdict: %s (branch %c)\n", to_string(verdict.kind), verdict.theorem_branch);
        std::printf("singular values:");
        for (double s : verdict.singular_values.as_given()) std::printf(" %.10g", s);
        std::printf("  rank %d\n", verdict.rank);
        if (verdict.kind == MorphismKind::projection_type)
            std::printf("homothety scale c = %.10g\n", verdict.scale);
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            std::printf("witness: sigma_%d of the composed spectrum = %.6g (construction %s)\n",
                        w.certificate.level, w.certificate.sigma_value, w.construction.c_str());
        }
    }
    em.emit(json{{"matrix", report::to_json(A)}, {"m", m}, {"n", n}, {"M", A.rows()},
                 {"N", A.cols()}, {"offset", report::to_json(w0)}, {"conjugated", conjugated},
                 {"verdict", report::to_json(verdict)}});
    return verdict.kind == MorphismKind::not_morphism ? 1 : 0;
}

int run_probe_map(Emitter& em, const std::string& exprs, const std::string& dims,
                  const std::string& grid_spec, double h, int order) {
    const auto nm = parse_reals(dims);
    if (nm.size() != 2) throw domain_error("--dims must be N,M");
    const int N = int(nm[0]), M = int(nm[1]);
    std::vector<expr::Expression> comps;
    std::stringstream ss(exprs);
    std::string item;
    while (std::getline(ss, item, ';')) comps.push_back(expr::parse(item, N));
    if (int(comps.size()) != M)
        throw domain_error("expected " + std::to_string(M) + " expressions separated by ';'");
    const MapField F = expr::to_map_field(comps, N);
    const FDScheme scheme(h, order);
    const auto grid = make_lattice(N, parse_grid_spec(grid_spec));
    const auto probe = holomorphy_probe(F, grid, scheme);
    if (!em.quiet()) {
        std::printf("cr: %s (|df/dzbar| %.3g, |df/dz| %.3g, mixed %.3g)\n",
                    to_string(probe.cr.kind), probe.cr.max_dzbar, probe.cr.max_dz,
                    probe.cr.max_mixed_product);
        std::printf("residual families: trace %.3g, grad-sym %.3g, mixed-hessian %.3g, pairs %.3g"
                    " (tol %.3g)\n",
                    probe.r_harmonic, probe.r_grad_sym, probe.r_mixed_hessian, probe.r_pairs,
                    probe.tol);
    }
    std::vector<std::string> texts;
    for (const auto& c : comps) texts.push_back(c.source);
    em.emit(json{{"exprs", texts}, {"N", N}, {"M", M}, {"grid", grid_spec},
                 {"cr", report::to_json(probe.cr)}, {"probe", report::to_json(probe)}});
    return probe.cr.kind == Holomorphy::neither ? 1 : 0;
}

int run_thm44(Emitter& em, const std::string& singvals, int rank, const std::string& variant) {
    const auto s = parse_reals(singvals);
    const int r = rank > 0 ? rank : int(s.size());
    const auto printed = thm44_check(s, r, Thm44Variant::as_printed);
    const auto derived = thm44_check(s, r, Thm44Variant::derived_correct);
    const bool use_printed = variant == "printed";
    const auto& chosen = use_printed ? printed : derived;
    if (!em.quiet()) {
        std::printf("as printed:      (sum sqrt(s_j))^2 = %.10g vs (r-1) sum s_j   = %.10g  [%s]\n",
                    printed.lhs, printed.rhs, printed.holds ? "holds" : "fails");
        std::printf("derived variant: (sum s_j^2)^2     = %.10g vs (r-1) sum s_j^4 = %.10g  [%s]\n",
                    derived.lhs, derived.rhs, derived.holds ? "holds" : "fails");
        std::printf("equal-values branch s_1 = ... = s_r: %s\n",
                    chosen.equal_values ? "yes" : "no");
    }
    auto side = [](const Thm44Result& t) {
        return json{{"lhs", t.lhs}, {"rhs", t.rhs}, {"holds", t.holds}};
    };
    em.emit(json{{"singular_values", s}, {"rank", r},
                 {"variant", use_printed ? "printed" : "derived"},
                 {"holds", chosen.holds || chosen.equal_values},
                 {"equal_values", chosen.equal_values},
                 {"as_printed", side(printed)}, {"derived_correct", side(derived)}});
    return (chosen.holds || chosen.equal_values) ? 0 : 1;
}

int run_verify(Emitter& em, std::uint64_t seed, double fd_scale) {
    SuiteOptions opt;
    opt.seed = seed;
    opt.fd_tol_scale = fd_scale;
    const SuiteReport rep = run_paper_suite(opt);
    if (!em.quiet()) {
        int idx = 0;
        for (const auto& it : rep.items)
            std::printf("[%s] %2d %-28s %8.1f ms  %s\n", it.pass ? "PASS" : "FAIL", ++idx,
                        it.name.c_str(), it.ms, it.detail.c_str());
        std::printf("%s (seed %llu)\n", rep.all_pass ? "all items passed" : "SUITE FAILED",
                    static_cast<unsigned long long>(seed));
    }
    em.emit(report::to_json(rep));
    return rep.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-subharmonicity cones, Wirtinger Hessians, and the classification of "
                 "subharmonicity-preserving affine maps"};
    app.require_subcommand(1);
    std::vector<std::string> argv_echo(argv + 1, argv + argc);

    std::string json_path, vec, expr_text, at, matrix, offset, grid_spec = "lattice:0.5:3";
    std::string exprs, dims, singvals, variant = "derived";
    int k = 1, dim = 1, m = 1, n = 1, order = 2, rank = 0;
    double tol = kDefaultConeTol, h = 1e-4, ortho_tol = 1e-6, fd_scale = 1.0;
    std::uint64_t seed = default_seed();
    bool conjugated = false;

    auto add_json = [&](CLI::App* sub) {
        sub->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
    };
    // '--h' (the FD step) collides with the default '-h' help short flag.
    auto add_fd_options = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--h", h, "finite-difference step");
        sub->add_option("--order", order, "difference order (2 or 4)");
    };

    auto* c_sigma = app.add_subcommand("sigma", "elementary symmetric polynomial of a vector");
    c_sigma->add_option("--k", k, "level")->required();
    c_sigma->add_option("--vec", vec, "comma-separated reals")->required();
    add_json(c_sigma);

    auto* c_cone = app.add_subcommand("cone", "membership in Lambda_{k,N}");
    c_cone->add_option("--k", k, "cone level")->required();
    c_cone->add_option("--vec", vec, "comma-separated reals")->required();
    c_cone->add_option("--tol", tol, "absolute slack per sigma level");
    add_json(c_cone);

    auto* c_hess = app.add_subcommand("hessian", "complex Hessian of an expression at a point");
    c_hess->add_option("--dim", dim, "complex dimension N")->required();
    c_hess->add_option("--expr", expr_text, "field expression in z1..zN")->required();
    c_hess->add_option("--at", at, "point as JSON [[re,im],...] (inline or a file)")->required();
    add_fd_options(c_hess);
    add_json(c_hess);

    auto* c_fn = app.add_subcommand("classify-fn", "k-subharmonicity of a field over a grid");
    c_fn->add_option("--dim", dim, "complex dimension N")->required();
    c_fn->add_option("--expr", expr_text, "field expression")->required();
    c_fn->add_option("--k", k, "subharmonicity level")->required();
    c_fn->add_option("--grid", grid_spec, "lattice:RADIUS:POINTS_PER_AXIS");
    add_fd_options(c_fn);
    add_json(c_fn);

    auto* c_map = app.add_subcommand("classify-map", "classify an affine map as a morphism");
    c_map->add_option("--matrix", matrix, "M x N matrix as JSON [re,im] pairs (inline or file)")
        ->required();
    c_map->add_option("--m", m, "source subharmonicity level")->required();
    c_map->add_option("--n", n, "target subharmonicity level")->required();
    c_map->add_option("--offset", offset, "w0 as JSON [[re,im],...]");
    c_map->add_flag("--conjugated", conjugated, "treat the map as anti-holomorphic");
    c_map->add_option("--tol", ortho_tol, "row-orthonormality tolerance");
    add_json(c_map);

    auto* c_probe = app.add_subcommand("probe-map", "holomorphy probes for an expression map");
    c_probe->add_option("--exprs", exprs, "components separated by ';'")->required();
    c_probe->add_option("--dims", dims, "N,M")->required();
    c_probe->add_option("--grid", grid_spec, "lattice:RADIUS:POINTS_PER_AXIS");
    add_fd_options(c_probe);
    add_json(c_probe);

    auto* c_thm = app.add_subcommand("thm44", "singular-value condition, both variants");
    c_thm->add_option("--singvals", singvals, "comma-separated singular values")->required();
    c_thm->add_option("--rank", rank, "rank r (default: all values)");
    c_thm->add_option("--variant", variant, "printed|derived")
        ->check(CLI::IsMember({"printed", "derived"}));
    add_json(c_thm);

    auto* c_verify = app.add_subcommand("verify", "run the full verification suite");
    c_verify->add_option("--seed", seed, "campaign seed (env GARDING_SEED overrides the default)");
    c_verify->add_option("--fd-scale", fd_scale, "scale FD-based tolerances (diagnostic)");
    add_json(c_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Emitter em;
    em.json_path = json_path;
    em.argv = argv_echo;
    try {
        if (app.got_subcommand(c_sigma)) {
            em.command = "sigma";
            return run_sigma(em, k, vec);
        }
        if (app.got_subcommand(c_cone)) {
            em.command = "cone";
            return run_cone(em, k, vec, tol);
        }
        if (app.got_subcommand(c_hess)) {
            em.command = "hessian";
            return run_hessian(em, dim, expr_text, at, h, order);
        }
        if (app.got_subcommand(c_fn)) {
            em.command = "classify-fn";
            return run_classify_fn(em, dim, expr_text, k, grid_spec, h, order);
        }
        if (app.got_subcommand(c_map)) {
            em.command = "classify-map";
            return run_classify_map(em, matrix, m, n, offset, conjugated, ortho_tol);
        }
        if (app.got_subcommand(c_probe)) {
            em.command = "probe-map";
            return run_probe_map(em, exprs, dims, grid_spec, h, order);
        }
        if (app.got_subcommand(c_thm)) {
            em.command = "thm44";
            return run_thm44(em, singvals, rank, variant);
        }
        em.command = "verify";
        return run_verify(em, seed, fd_scale);
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
