#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geodiv/classical_complexity.hpp"
#include "geodiv/log.hpp"
#include "geodiv/quantum.hpp"
#include "geodiv/quantum_complexity.hpp"
#include "geodiv/selftest.hpp"
#include "geodiv/simplex.hpp"
#include "geodiv/state_io.hpp"

namespace {

using geodiv::LoadedState;
using geodiv::StateKind;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitSelftestFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNotConverged = 3;

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Report {
    std::string quantity;
    double value = 0.0;
    std::optional<double> oracle;
    std::optional<int> iterations;
    std::optional<double> residual;
    json config = json::object();
    bool with_timestamp = true;

    void print() const {
        if (!std::isfinite(value))
            throw geodiv::DomainError("report: computed value is not finite");
        json doc{{"quantity", quantity}, {"value", value}, {"config", config}};
        if (oracle) {
            doc["oracle"] = *oracle;
            doc["abs_error"] = std::abs(value - *oracle);
        }
        if (iterations) doc["iterations"] = *iterations;
        if (residual) doc["residual"] = *residual;
        if (with_timestamp) doc["timestamp"] = utc_timestamp();
        std::cout << doc.dump() << "\n";
    }
};

const geodiv::ProbabilityVector& as_simplex(const LoadedState& s, const std::string& which) {
    if (s.kind != StateKind::Simplex)
        throw geodiv::DomainError(which + ": classical divergences need a simplex state file");
    return *s.simplex;
}

const geodiv::DensityMatrix& as_density(const LoadedState& s, const std::string& which) {
    if (s.kind == StateKind::Density) return *s.density;
    if (s.kind == StateKind::MultiQubit) return s.multiqubit->state;
    throw geodiv::DomainError(which + ": quantum divergences need a density or multiqubit state file");
}

struct DivergenceArgs {
    std::string kind;
    std::string file_a;
    std::string file_b;
    double tol = 1e-9;
    int points = 48;
    bool compare_oracle = false;
    bool no_timestamp = false;
};

int run_divergence(const DivergenceArgs& args) {
    const LoadedState a = geodiv::load_state_file(args.file_a);
    const LoadedState b = geodiv::load_state_file(args.file_b);
    geodiv::QuadratureConfig cfg{args.points, args.tol, 20};

    Report report;
    report.with_timestamp = !args.no_timestamp;
    report.config = {{"kind", args.kind}, {"a", args.file_a},   {"b", args.file_b},
                     {"tol", args.tol},   {"points", args.points}};

    if (args.kind == "kl" || args.kind == "canonical" || args.kind == "dual") {
        const geodiv::ProbabilityVector& p = as_simplex(a, "--a");
        const geodiv::ProbabilityVector& q = as_simplex(b, "--b");
        geodiv::log_info("simplex pair of length " + std::to_string(p.size()));
        if (args.kind == "kl") {
            report.quantity = "kl";
            report.value = geodiv::kl(p, q);
            if (args.compare_oracle) report.oracle = report.value;
        } else if (args.kind == "canonical") {
            report.quantity = "canonical_divergence_simplex";
            report.value = geodiv::canonical_divergence_simplex(p, q, cfg);
            if (args.compare_oracle) report.oracle = geodiv::kl(p, q);
        } else {
            report.quantity = "dual_divergence_simplex";
            report.value = geodiv::dual_divergence_simplex(p, q, cfg);
            if (args.compare_oracle) report.oracle = geodiv::kl(q, p);
        }
    } else if (args.kind == "qre" || args.kind == "canonical-q" || args.kind == "dual-q") {
        const geodiv::DensityMatrix& r1 = as_density(a, "--a");
        const geodiv::DensityMatrix& r2 = as_density(b, "--b");
        geodiv::log_info("density pair of dimension " + std::to_string(r1.dim()));
        if (args.kind == "qre") {
            report.quantity = "quantum_relative_entropy";
            report.value = geodiv::quantum_relative_entropy(r1, r2);
            if (args.compare_oracle) report.oracle = report.value;
        } else if (args.kind == "canonical-q") {
            report.quantity = "canonical_divergence_quantum";
            report.value = geodiv::canonical_divergence_quantum(r1, r2, cfg);
            if (args.compare_oracle) report.oracle = geodiv::quantum_relative_entropy(r1, r2);
        } else {
            report.quantity = "dual_divergence_quantum";
            report.value = geodiv::dual_divergence_quantum(r1, r2, cfg);
            if (args.compare_oracle) report.oracle = geodiv::quantum_relative_entropy(r2, r1);
        }
    } else {
        throw geodiv::DomainError("divergence: unknown --kind \"" + args.kind + "\"");
    }
    report.print();
    return kExitOk;
}

struct ComplexityArgs {
    bool classical = false;
    bool quantum = false;
    std::string state_file;
    std::vector<std::string> family;
    std::size_t k = 1;
    double tol = -1.0;  // negative selects the per-mode default
    int max_iter = -1;
    bool bits = false;
    bool no_timestamp = false;
};

geodiv::MarginalFamily family_from_args(const std::vector<std::string>& family,
                                        std::size_t n_sites) {
    if (family.empty())
        throw geodiv::DomainError("complexity: --family is required in classical mode");
    if (family[0] == "singletons") return geodiv::MarginalFamily::singletons(n_sites);
    if (family[0] == "pairs") return geodiv::MarginalFamily::pairs(n_sites);
    if (family[0] == "subsets") {
        if (family.size() != 2)
            throw geodiv::DomainError("complexity: --family subsets needs a file argument");
        std::ifstream in(family[1]);
        if (!in) throw geodiv::DomainError("complexity: cannot open " + family[1]);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw geodiv::DomainError(std::string("complexity: invalid subsets file: ") +
                                      e.what());
        }
        auto subsets = doc.at("subsets").get<std::vector<std::vector<std::size_t>>>();
        return geodiv::MarginalFamily(n_sites, std::move(subsets));
    }
    throw geodiv::DomainError("complexity: unknown family \"" + family[0] + "\"");
}

int run_complexity(const ComplexityArgs& args) {
    if (args.classical == args.quantum)
        throw geodiv::DomainError("complexity: pass exactly one of --classical / --quantum");
    const LoadedState state = geodiv::load_state_file(args.state_file);
    const double to_unit = args.bits ? 1.0 / std::log(2.0) : 1.0;

    Report report;
    report.with_timestamp = !args.no_timestamp;
    bool converged = true;

    if (args.classical) {
        if (state.kind != StateKind::Joint)
            throw geodiv::DomainError("complexity: classical mode needs a joint state file");
        const geodiv::JointDistribution& p = *state.joint;
        geodiv::OptimizerConfig cfg;
        if (args.tol > 0.0) cfg.tolerance = args.tol;
        if (args.max_iter >= 0) cfg.max_iterations = args.max_iter;
        const geodiv::MarginalFamily family = family_from_args(args.family, p.space().n_sites());
        geodiv::log_info("classical projection over " + std::to_string(family.subsets().size()) +
                         " marginal constraints");
        const geodiv::ProjectionReport rep = geodiv::complexity_classical(p, family, cfg);
        converged = rep.converged;
        report.quantity = "kl_complexity";
        report.value = rep.divergence * to_unit;
        report.iterations = rep.iterations;
        report.residual = rep.residual;
        report.config = {{"mode", "classical"},
                         {"state", args.state_file},
                         {"family", args.family},
                         {"tol", cfg.tolerance},
                         {"max_iter", cfg.max_iterations},
                         {"bits", args.bits}};
    } else {
        if (state.kind != StateKind::MultiQubit)
            throw geodiv::DomainError("complexity: quantum mode needs a multiqubit state file");
        const geodiv::MultiQubitState& rho = *state.multiqubit;
        geodiv::OptimizerConfig cfg{1e-7, 20000};
        if (args.tol > 0.0) cfg.tolerance = args.tol;
        if (args.max_iter >= 0) cfg.max_iterations = args.max_iter;
        geodiv::log_info("quantum projection of " + std::to_string(rho.n_sites) +
                         " qubits onto the " + std::to_string(args.k) + "-local Gibbs family");
        const geodiv::QuantumProjectionReport rep =
            geodiv::many_party_correlation(rho, args.k, cfg);
        converged = rep.converged;
        report.quantity = "many_party_correlation";
        report.value = rep.divergence * to_unit;
        report.iterations = rep.iterations;
        report.residual = rep.gradient_residual;
        report.config = {{"mode", "quantum"},
                         {"state", args.state_file},
                         {"k", args.k},
                         {"tol", cfg.tolerance},
                         {"max_iter", cfg.max_iterations},
                         {"bits", args.bits}};
    }
    report.print();
    if (!converged) {
        std::cerr << "geodiv: projection did not converge (residual " << *report.residual
                  << ")\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

struct SelftestArgs {
    std::uint64_t seed = 20250810;
    int trials = -1;
};

int run_selftest(const SelftestArgs& args) {
    const std::vector<geodiv::SuiteResult> results =
        geodiv::run_selftest_suites({args.seed, args.trials});
    std::printf("%-24s %8s %16s   %s\n", "suite", "checks", "worst(err/tol)", "result");
    for (const geodiv::SuiteResult& r : results) {
        std::printf("%-24s %8d %16.3e   %s\n", r.name.c_str(), r.checks, r.worst_ratio,
                    r.passed ? "PASS" : "FAIL");
        if (!r.passed) std::fputs(r.detail.c_str(), stdout);
    }
    const bool ok = geodiv::all_passed(results);
    std::printf("%s\n", ok ? "all suites passed" : "selftest FAILED");
    return ok ? kExitOk : kExitSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical divergence and complexity measures on the probability simplex "
                 "and the manifold of positive density matrices"};
    app.require_subcommand(1);

    DivergenceArgs div_args;
    CLI::App* div = app.add_subcommand("divergence", "divergence between two states");
    div->add_option("--kind", div_args.kind, "kl|canonical|dual|qre|canonical-q|dual-q")
        ->required();
    div->add_option("--a", div_args.file_a, "first state file")->required();
    div->add_option("--b", div_args.file_b, "second state file")->required();
    div->add_option("--tol", div_args.tol, "quadrature tolerance");
    div->add_option("--points", div_args.points, "Gauss-Legendre base points");
    div->add_flag("--compare-oracle", div_args.compare_oracle,
                  "also report the closed-form counterpart and the absolute error");
    div->add_flag("--no-timestamp", div_args.no_timestamp, "omit the timestamp field");

    ComplexityArgs cx_args;
    CLI::App* cx = app.add_subcommand("complexity", "divergence from a non-complex family");
    cx->add_flag("--classical", cx_args.classical, "KL projection onto a marginal family");
    cx->add_flag("--quantum", cx_args.quantum, "projection onto the k-local Gibbs family");
    cx->add_option("--state", cx_args.state_file, "state file")->required();
    cx->add_option("--family", cx_args.family,
                   "singletons | pairs | subsets FILE (classical mode)")
        ->expected(1, 2);
    cx->add_option("--k", cx_args.k, "locality of the Gibbs family (quantum mode)");
    cx->add_option("--tol", cx_args.tol, "convergence tolerance");
    cx->add_option("--max-iter", cx_args.max_iter, "iteration cap");
    cx->add_flag("--bits", cx_args.bits, "report in bits instead of nats");
    cx->add_flag("--no-timestamp", cx_args.no_timestamp, "omit the timestamp field");

    SelftestArgs st_args;
    CLI::App* st = app.add_subcommand("selftest", "run the oracle and duality suites");
    st->add_option("--seed", st_args.seed, "random seed");
    st->add_option("--trials", st_args.trials,
                   "random cases per suite (default: full acceptance counts)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "geodiv: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (div->parsed()) return run_divergence(div_args);
        if (cx->parsed()) return run_complexity(cx_args);
        return run_selftest(st_args);
    } catch (const geodiv::QuadratureNotConvergedError& e) {
        std::cerr << "geodiv: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "geodiv: " << e.what() << "\n";
        return kExitValidation;
    }
}
