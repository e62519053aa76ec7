// Command-line front end: order queries on matrix files, conic solvers,
// the verification pipeline, and debug SVG rendering.
//
// Exit codes: 0 success / order holds, 1 property-or-order negative,
// 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "minusorder/conic.hpp"
#include "minusorder/matrix_io.hpp"
#include "minusorder/order.hpp"
#include "minusorder/reconstruct.hpp"
#include "minusorder/rng.hpp"
#include "minusorder/suites.hpp"
#include "minusorder/svg.hpp"

namespace {

using namespace minusorder;

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct CliConfig {
    TolerancePolicy policy;
    std::uint64_t seed = kDefaultSeed;
    std::size_t trials = 200;
    std::size_t n = 3;
    std::string format = "text";
    std::string output;
    bool inverse = false;
    std::string fault = "none";
};

std::uint64_t seed_from_env() {
    const char* env = std::getenv("MINUSORDER_SEED");
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 0);
    if (end == nullptr || *end != '\0')
        throw ParseError(std::string("MINUSORDER_SEED is not a number: ") + env);
    return static_cast<std::uint64_t>(value);
}

int emit(const CliConfig& cfg, const std::string& payload) {
    if (cfg.output.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << cfg.output << "\n";
        return 2;
    }
    out << payload;
    return 0;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void add_common(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--tol-rank", cfg.policy.rank_rel_tol, "relative rank cutoff");
    cmd->add_option("--tol-sym", cfg.policy.sym_abs_tol, "symmetry/equality tolerance");
    cmd->add_option("--tol-psd", cfg.policy.psd_eig_tol, "PSD eigenvalue allowance");
    cmd->add_option("--seed", cfg.seed, "PRNG seed (overrides MINUSORDER_SEED)");
    cmd->add_option("--trials", cfg.trials, "trial count for suites");
    cmd->add_option("--n", cfg.n, "matrix dimension for suites");
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", cfg.output, "write the report to PATH instead of stdout");
}

int run_check_order(const CliConfig& cfg, const std::string& path_a,
                    const std::string& path_b) {
    const DenseMatrix a = read_matrix_file(path_a);
    const DenseMatrix b = read_matrix_file(path_b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ParseError(path_a + ", " + path_b + ": shapes differ");

    const bool by_rank = minus_leq_rank(a, b, cfg.policy);
    const bool by_image = a.is_square() ? minus_leq_image(a, b, cfg.policy) : by_rank;
    OrderVerdict rank_verdict{by_rank, OrderMethod::RankSubtractivity, 0.0, {}};
    OrderVerdict image_verdict{by_image, OrderMethod::ImageDirectSum, 0.0, {}};
    OrderVerdict inner_verdict;
    if (a.is_square()) {
        inner_verdict = minus_leq_inner(a, b, cfg.policy);
    } else {
        inner_verdict = rank_verdict;
        inner_verdict.method = OrderMethod::InnerInverseFeasibility;
    }
    const bool agreement = by_rank == by_image && by_rank == inner_verdict.holds;

    std::string payload;
    if (cfg.format == "json") {
        nlohmann::ordered_json j{{"command", "check-order"},
                                 {"a", path_a},
                                 {"b", path_b},
                                 {"rank_subtractivity", to_json(rank_verdict)},
                                 {"image_direct_sum", to_json(image_verdict)},
                                 {"inner_inverse_feasibility", to_json(inner_verdict)},
                                 {"agreement", agreement},
                                 {"holds", by_rank}};
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "rank-subtractivity:        " << (by_rank ? "holds" : "fails") << "\n";
        out << "image-direct-sum:          " << (by_image ? "holds" : "fails") << "\n";
        out << "inner-inverse-feasibility: " << (inner_verdict.holds ? "holds" : "fails")
            << "  (residual " << fmt(inner_verdict.residual) << ")\n";
        out << "agreement:                 " << (agreement ? "yes" : "NO") << "\n";
        payload = out.str();
    }
    const int io_rc = emit(cfg, payload);
    if (io_rc != 0) return io_rc;
    return by_rank ? 0 : 1;
}

int run_pinv(const CliConfig& cfg, const std::string& path) {
    const DenseMatrix a = read_matrix_file(path);
    const DenseMatrix pinv = moore_penrose(a, cfg.policy);

    const double scale = 1.0 + a.frobenius_norm();
    const double r1 = (a * pinv * a - a).frobenius_norm() / scale;
    const double r2 = (pinv * a * pinv - pinv).frobenius_norm() / scale;
    const double r3 = ((a * pinv) - (a * pinv).transpose()).frobenius_norm() / scale;
    const double r4 = ((pinv * a) - (pinv * a).transpose()).frobenius_norm() / scale;

    std::string payload;
    if (cfg.format == "json") {
        nlohmann::ordered_json j = matrix_to_json(pinv);
        j["penrose_residuals"] = {r1, r2, r3, r4};
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << write_matrix_text(pinv);
        out << "penrose residuals: " << fmt(r1) << ' ' << fmt(r2) << ' ' << fmt(r3) << ' '
            << fmt(r4) << "\n";
        payload = out.str();
    }
    return emit(cfg, payload);
}

int run_touching(const CliConfig& cfg, double a, double b, double phi) {
    const double closed_r = touching_r_closed_form(a, b, phi);
    const TouchingSolution sol = touching_ellipse(Conic2::standard(a, b), phi, cfg.policy);
    const Conic2 entrywise = touching_conic_matrix(a, b, phi);
    const double gap = std::abs(closed_r - sol.r);

    std::string payload;
    if (cfg.format == "json") {
        nlohmann::ordered_json j{{"command", "touching"},
                                 {"a", a},
                                 {"b", b},
                                 {"phi", phi},
                                 {"r_closed_form", closed_r},
                                 {"r_determinant_root", sol.r},
                                 {"discrepancy", gap},
                                 {"conic", to_json(entrywise)},
                                 {"touch_point", {{"x", sol.touch_point.x},
                                                  {"y", sol.touch_point.y}}}};
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "r (closed form):      " << fmt(closed_r) << "\n";
        out << "r (determinant root): " << fmt(sol.r) << "\n";
        out << "discrepancy:          " << fmt(gap) << "\n";
        out << "conic: q11=" << fmt(entrywise.q11()) << " q12=" << fmt(entrywise.q12())
            << " q22=" << fmt(entrywise.q22()) << "\n";
        out << "touch point: (" << fmt(sol.touch_point.x) << ", " << fmt(sol.touch_point.y)
            << ")\n";
        payload = out.str();
    }
    return emit(cfg, payload);
}

int run_phi_hat(const CliConfig& cfg, double a0, double gamma, double x, double y) {
    const Vec2 image = cfg.inverse ? phi_hat_inverse(a0, gamma, {x, y})
                                   : phi_hat(a0, gamma, {x, y});
    std::string payload;
    if (cfg.format == "json") {
        nlohmann::ordered_json j{{"command", "phi-hat"}, {"a0", a0},
                                 {"gamma", gamma},      {"inverse", cfg.inverse},
                                 {"x", image.x},        {"y", image.y}};
        payload = j.dump(2) + "\n";
    } else {
        payload = "(" + fmt(image.x) + ", " + fmt(image.y) + ")\n";
    }
    return emit(cfg, payload);
}

int run_verify(const CliConfig& cfg) {
    if (cfg.n < 3) throw DomainError("verify requires n >= 3");
    const FaultKind fault = fault_from_string(cfg.fault);

    // All randomness flows from the one seed through per-suite streams.
    const RigidityReport rigidity =
        rigidity_suite(cfg.n, cfg.trials, Rng::substream(cfg.seed, 1).next_u64(),
                       cfg.policy, fault);
    std::vector<SuiteReport> suites;
    suites.push_back(predicate_agreement_suite(cfg.n, cfg.trials,
                                               Rng::substream(cfg.seed, 2).next_u64(),
                                               cfg.policy));
    suites.push_back(partial_order_axioms_suite(cfg.n, cfg.trials,
                                                Rng::substream(cfg.seed, 3).next_u64(),
                                                cfg.policy));
    suites.push_back(congruence_invariance_suite(cfg.n, cfg.trials,
                                                 Rng::substream(cfg.seed, 4).next_u64(),
                                                 cfg.policy));
    suites.push_back(rank_one_domination_suite(cfg.n, cfg.trials,
                                               Rng::substream(cfg.seed, 5).next_u64(),
                                               cfg.policy));

    bool all_pass = rigidity.pass;
    for (const auto& s : suites) all_pass = all_pass && s.pass;

    std::string payload;
    if (cfg.format == "json") {
        nlohmann::ordered_json suites_json = nlohmann::ordered_json::array();
        for (const auto& s : suites) suites_json.push_back(to_json(s));
        nlohmann::ordered_json j{{"command", "verify"},
                                 {"n", cfg.n},
                                 {"trials", cfg.trials},
                                 {"seed", cfg.seed},
                                 {"fault", cfg.fault},
                                 {"rigidity", to_json(rigidity)},
                                 {"suites", std::move(suites_json)},
                                 {"verdict", all_pass}};
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "rigidity: " << (rigidity.pass ? "pass" : "FAIL") << "\n";
        if (!rigidity.pass) out << "  failed stage: " << rigidity.failed_stage << "\n";
        for (const auto& st : rigidity.stages)
            out << "  stage " << st.stage << ": " << (st.pass ? "pass" : "FAIL")
                << "  max residual " << fmt(st.max_residual) << "\n";
        for (const auto& s : suites)
            out << "suite " << s.name << ": " << (s.pass ? "pass" : "FAIL") << "  ("
                << s.failures << "/" << s.trials << " failures, max residual "
                << fmt(s.max_residual) << ")\n";
        out << "verdict: " << (all_pass ? "pass" : "FAIL") << "\n";
        payload = out.str();
    }
    const int io_rc = emit(cfg, payload);
    if (io_rc != 0) return io_rc;
    return all_pass ? 0 : 1;
}

int run_svg(const CliConfig& cfg, const std::string& scene_path) {
    std::ifstream in(scene_path);
    if (!in) throw ParseError(scene_path + ": cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(scene_path + ": invalid JSON (" + std::string(e.what()) + ")");
    }
    return emit(cfg, render_svg(scene_from_json(j)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minus partial order on PSD matrices: predicates, conic "
                 "tangency geometry, and congruence recovery"};
    app.require_subcommand(1);

    CliConfig cfg;

    std::string path_a, path_b, scene_path;
    double arg_a = 0, arg_b = 0, arg_phi = 0, arg_a0 = 0, arg_gamma = 0, arg_x = 0,
           arg_y = 0;

    CLI::App* check_order = app.add_subcommand(
        "check-order", "decide A <=- B for two matrix files (all three predicates)");
    check_order->add_option("A", path_a, "left matrix file")->required();
    check_order->add_option("B", path_b, "right matrix file")->required();
    add_common(check_order, cfg);

    CLI::App* pinv = app.add_subcommand("pinv", "Moore-Penrose inverse of a matrix file");
    pinv->add_option("A", path_a, "matrix file")->required();
    add_common(pinv, cfg);

    CLI::App* touching = app.add_subcommand(
        "touching", "ellipse at angle phi touching the unit circle and diag(a, b)");
    touching->add_option("a", arg_a, "first diagonal entry (> 1)")->required();
    touching->add_option("b", arg_b, "second diagonal entry (> 1)")->required();
    touching->add_option("phi", arg_phi, "angle in (0, pi/2)")->required();
    add_common(touching, cfg);

    CLI::App* phihat = app.add_subcommand("phi-hat", "evaluate the planar rigidity map");
    phihat->add_option("a0", arg_a0, "a0 parameter (> 1)")->required();
    phihat->add_option("gamma", arg_gamma, "gamma parameter (> 0)")->required();
    phihat->add_option("x", arg_x, "point x coordinate")->required();
    phihat->add_option("y", arg_y, "point y coordinate")->required();
    phihat->add_flag("--inverse", cfg.inverse, "apply the inverse map");
    add_common(phihat, cfg);

    CLI::App* verify = app.add_subcommand(
        "verify", "run the recovery pipeline and the order property suites");
    verify->add_option("--fault", cfg.fault, "inject a defect")
        ->check(CLI::IsMember({"none", "projector", "rank", "zero"}));
    add_common(verify, cfg);

    CLI::App* svg = app.add_subcommand("svg", "render a conic scene to SVG");
    svg->add_option("scene", scene_path, "scene JSON file")->required();
    add_common(svg, cfg);

    try {
        cfg.seed = seed_from_env();
    } catch (const minusorder::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.policy.validate();
        if (check_order->parsed()) return run_check_order(cfg, path_a, path_b);
        if (pinv->parsed()) return run_pinv(cfg, path_a);
        if (touching->parsed()) return run_touching(cfg, arg_a, arg_b, arg_phi);
        if (phihat->parsed()) return run_phi_hat(cfg, arg_a0, arg_gamma, arg_x, arg_y);
        if (verify->parsed()) return run_verify(cfg);
        if (svg->parsed()) return run_svg(cfg, scene_path);
    } catch (const minusorder::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
