#include "redlb/cli_ops.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "redlb/analytic.hpp"
#include "redlb/config.hpp"
#include "redlb/csv.hpp"
#include "redlb/simulate.hpp"
#include "redlb/sweep.hpp"

namespace redlb {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIoOrParse = 1;
constexpr int kExitDomain = 2;

bool is_domain_error(const std::runtime_error& e) {
    return dynamic_cast<const UnstableSystem*>(&e) != nullptr ||
           dynamic_cast<const SingularSystem*>(&e) != nullptr ||
           dynamic_cast<const DegenerateLoss*>(&e) != nullptr ||
           dynamic_cast<const OutOfDomain*>(&e) != nullptr;
}

template <class Body>
int guarded(std::ostream& diag, const Body& body) {
    try {
        body();
        return kExitOk;
    } catch (const std::runtime_error& e) {
        diag << "error: " << e.what() << '\n';
        return is_domain_error(e) ? kExitDomain : kExitIoOrParse;
    } catch (const std::exception& e) {  // e.g. JSON type errors
        diag << "error: " << e.what() << '\n';
        return kExitIoOrParse;
    }
}

void warn_closed_forms(const WorkloadLaw& law, const ServiceLaw& service,
                       std::ostream& diag) {
    std::set<std::string> seen;
    for (const FormulaMismatch& m : check_closed_forms(law, service)) {
        if (seen.insert(m.formula).second) {
            diag << "warning: closed form '" << m.formula
                 << "' disagrees with the general path (e.g. " << m.closed_value << " vs "
                 << m.general_value << " at x=" << m.x << "); general values used\n";
        }
    }
}

}  // namespace

int cmd_analytic(const std::string& config_text, std::ostream& out, std::ostream& diag) {
    return guarded(diag, [&] {
        const PolicyParams params = parse_params_json(config_text);
        const WorkloadLaw law = make_workload_law(params);
        const ServiceLaw service = ServiceLaw::exponential(params.mu);
        warn_closed_forms(law, service, diag);
        const ResponseMetrics metrics = mean_response_time(law, service);

        csv_row(out, {"lambda", "mu", "d", "p", "t1", "t2", "lambda_bar", "f0", "fbar_t1",
                      "fbar_t2", "p_loss", "tau", "quadrature_error"});
        csv_row(out, {csv_number(params.lambda), csv_number(params.mu), csv_number(params.d),
                      csv_number(params.p), csv_number(params.t1), csv_number(params.t2),
                      csv_number(law.lambda_bar), csv_number(law.constants.f0),
                      csv_number(law.constants.fbar_t1), csv_number(law.constants.fbar_t2),
                      csv_number(metrics.p_loss), csv_number(metrics.tau),
                      csv_number(metrics.quadrature_error)});
        if (!out) throw InvalidConfig("failed writing output");
    });
}

int cmd_simulate(const std::string& config_text, std::ostream& out, std::ostream& diag,
                 std::optional<std::uint64_t> seed_override, int threads) {
    return guarded(diag, [&] {
        SimConfig cfg = parse_sim_config_json(config_text);
        if (seed_override) cfg.seed = *seed_override;
        const SimStats stats = run(cfg, threads);

        csv_row(out, {"lambda", "mu", "n_servers", "d", "p", "t1", "t2", "n_arrivals",
                      "n_replications", "warmup_fraction", "seed", "tau_hat", "tau_ci",
                      "p_loss_hat", "p_loss_ci", "n_admitted", "n_lost"});
        csv_row(out, {csv_number(cfg.params.lambda), csv_number(cfg.params.mu),
                      csv_number(cfg.params.n_servers), csv_number(cfg.params.d),
                      csv_number(cfg.params.p), csv_number(cfg.params.t1),
                      csv_number(cfg.params.t2),
                      csv_number(static_cast<long long>(cfg.n_arrivals)),
                      csv_number(cfg.n_replications), csv_number(cfg.warmup_fraction),
                      std::to_string(cfg.seed), csv_number(stats.tau_hat),
                      csv_number(stats.tau_ci_halfwidth), csv_number(stats.p_loss_hat),
                      csv_number(stats.p_loss_ci_halfwidth),
                      csv_number(static_cast<long long>(stats.n_admitted)),
                      csv_number(static_cast<long long>(stats.n_lost))});
        if (!out) throw InvalidConfig("failed writing output");
    });
}

int cmd_sweep(const std::string& config_text, std::ostream& out, std::ostream& diag,
              std::optional<std::uint64_t> seed_override, int threads) {
    int code = kExitOk;
    const int rc = guarded(diag, [&] {
        SweepSpec spec = parse_sweep_spec_json(config_text);
        if (seed_override && spec.sim) spec.sim->seed = *seed_override;
        const SweepTable table = run_sweep(spec, threads);
        for (const std::string& w : table.warnings) diag << "warning: " << w << '\n';
        csv_row(out, table.header);
        for (const auto& row : table.rows) csv_row(out, row);
        if (!out) throw InvalidConfig("failed writing output");
        if (table.points_succeeded == 0) code = kExitDomain;  // no point succeeded
    });
    return rc != kExitOk ? rc : code;
}

int cmd_validate(const std::string& config_text, std::ostream& out, std::ostream& diag,
                 std::optional<std::uint64_t> seed_override, int threads) {
    return guarded(diag, [&] {
        ValidateSpec spec = parse_validate_spec_json(config_text);
        if (seed_override) spec.sim.seed = *seed_override;
        const auto points = convergence_study(spec.params, spec.n_grid, spec.sim, threads);

        csv_row(out, {"n", "tau_sim", "tau_ci", "tau_analytic", "gap"});
        for (const ConvergencePoint& pt : points) {
            csv_row(out, {csv_number(pt.n_servers), csv_number(pt.tau_hat),
                          csv_number(pt.tau_ci_halfwidth), csv_number(pt.tau_analytic),
                          csv_number(pt.rel_gap)});
        }
        if (!out) throw InvalidConfig("failed writing output");
    });
}

int run_command(const std::string& subcommand, const std::string& config_path,
                const std::string& out_path, std::optional<std::uint64_t> seed_override,
                int threads, std::ostream& diag) {
    std::string config_text;
    try {
        config_text = read_file(config_path);
    } catch (const std::runtime_error& e) {
        diag << "error: " << e.what() << '\n';
        return kExitIoOrParse;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) {
            diag << "error: cannot open output file: " << out_path << '\n';
            return kExitIoOrParse;
        }
        out = &file;
    }

    if (subcommand == "analytic") return cmd_analytic(config_text, *out, diag);
    if (subcommand == "simulate") {
        return cmd_simulate(config_text, *out, diag, seed_override, threads);
    }
    if (subcommand == "sweep") return cmd_sweep(config_text, *out, diag, seed_override, threads);
    if (subcommand == "validate") {
        return cmd_validate(config_text, *out, diag, seed_override, threads);
    }
    diag << "error: unknown subcommand: " << subcommand << '\n';
    return kExitIoOrParse;
}

}  // namespace redlb
