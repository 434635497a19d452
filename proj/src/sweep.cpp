#include "redlb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "redlb/analytic.hpp"
#include "redlb/csv.hpp"

namespace redlb {

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Lambda: return "lambda";
        case SweepAxis::T: return "t";
        case SweepAxis::T2: return "t2";
        case SweepAxis::D: return "d";
        case SweepAxis::P: return "p";
        case SweepAxis::NServers: return "n_servers";
    }
    return "?";
}

std::string output_name(SweepOutput output) {
    switch (output) {
        case SweepOutput::Tau: return "tau";
        case SweepOutput::PLoss: return "p_loss";
        case SweepOutput::TauAnalytic: return "tau_analytic";
        case SweepOutput::TauSim: return "tau_sim";
        case SweepOutput::Gap: return "gap";
        case SweepOutput::Improvement: return "improvement";
    }
    return "?";
}

SweepAxis axis_from_name(const std::string& name) {
    if (name == "lambda") return SweepAxis::Lambda;
    if (name == "t") return SweepAxis::T;
    if (name == "t2") return SweepAxis::T2;
    if (name == "d") return SweepAxis::D;
    if (name == "p") return SweepAxis::P;
    if (name == "n_servers") return SweepAxis::NServers;
    throw InvalidConfig("unknown sweep axis: " + name);
}

SweepOutput output_from_name(const std::string& name) {
    if (name == "tau") return SweepOutput::Tau;
    if (name == "p_loss") return SweepOutput::PLoss;
    if (name == "tau_analytic") return SweepOutput::TauAnalytic;
    if (name == "tau_sim") return SweepOutput::TauSim;
    if (name == "gap") return SweepOutput::Gap;
    if (name == "improvement") return SweepOutput::Improvement;
    throw InvalidConfig("unknown sweep output: " + name);
}

PolicyParams apply_axis(const PolicyParams& base, SweepAxis axis, double value) {
    PolicyParams q = base;
    switch (axis) {
        case SweepAxis::Lambda: q.lambda = value; break;
        case SweepAxis::T:
            q.t1 = value;
            q.t2 = value;
            break;
        case SweepAxis::T2: q.t2 = value; break;
        case SweepAxis::D: q.d = static_cast<int>(value); break;
        case SweepAxis::P: q.p = value; break;
        case SweepAxis::NServers: q.n_servers = static_cast<int>(value); break;
    }
    return q;
}

void SweepSpec::validate() const {
    if (values.empty()) throw InvalidConfig("sweep values must be non-empty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw InvalidConfig("sweep values must be strictly increasing");
        }
    }
    if (outputs.empty()) throw InvalidConfig("sweep outputs must be non-empty");
    const bool needs_sim =
        std::any_of(outputs.begin(), outputs.end(), [](SweepOutput o) {
            return o == SweepOutput::TauSim || o == SweepOutput::Gap;
        });
    if (needs_sim && !sim.has_value()) {
        throw InvalidConfig("tau_sim/gap outputs require a sim config");
    }
    if ((axis == SweepAxis::D || axis == SweepAxis::NServers)) {
        for (double v : values) {
            if (v != std::floor(v)) throw InvalidConfig("integer axis requires integer values");
        }
    }
    // every substituted point must be a valid parameterization
    for (double v : values) apply_axis(base, axis, v).validate();
}

namespace {

struct PointResult {
    std::vector<std::string> cells;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool succeeded = false;
};

PointResult eval_point(const SweepSpec& spec, std::size_t index) {
    const PolicyParams params = apply_axis(spec.base, spec.axis, spec.values[index]);
    PointResult out;
    out.cells.push_back(csv_number(spec.values[index]));

    const bool wants_analytic =
        std::any_of(spec.outputs.begin(), spec.outputs.end(), [](SweepOutput o) {
            return o != SweepOutput::TauSim;
        });
    const bool wants_sim =
        std::any_of(spec.outputs.begin(), spec.outputs.end(), [](SweepOutput o) {
            return o == SweepOutput::TauSim || o == SweepOutput::Gap;
        });

    double tau_analytic = std::nan("");
    double p_loss = std::nan("");
    double tau_sim = std::nan("");
    if (wants_analytic) {
        try {
            const WorkloadLaw law = make_workload_law(params);
            const ServiceLaw service = ServiceLaw::exponential(params.mu);
            for (const FormulaMismatch& m : check_closed_forms(law, service)) {
                out.warnings.push_back(m.formula);
            }
            const ResponseMetrics metrics = mean_response_time(law, service);
            tau_analytic = metrics.tau;
            p_loss = metrics.p_loss;
        } catch (const std::runtime_error& e) {
            out.errors.push_back(e.what());
        }
    }
    if (wants_sim) {
        try {
            SimConfig cfg = *spec.sim;
            cfg.params = params;
            cfg.seed = cfg.seed + 0x9E3779B97F4A7C15ULL * index;  // per-point stream
            tau_sim = run(cfg).tau_hat;
        } catch (const std::runtime_error& e) {
            out.errors.push_back(e.what());
        }
    }

    for (SweepOutput o : spec.outputs) {
        double v = std::nan("");
        switch (o) {
            case SweepOutput::Tau:
            case SweepOutput::TauAnalytic: v = tau_analytic; break;
            case SweepOutput::PLoss: v = p_loss; break;
            case SweepOutput::TauSim: v = tau_sim; break;
            case SweepOutput::Gap:
                v = std::fabs(tau_sim - tau_analytic) / tau_analytic;
                break;
            case SweepOutput::Improvement: {
                if (params.lambda < params.mu) {
                    const double tau_random = 1.0 / (params.mu - params.lambda);
                    v = 100.0 * (tau_random - tau_analytic) / tau_random;
                } else {
                    out.errors.push_back("random-routing baseline unstable");
                }
                break;
            }
        }
        out.cells.push_back(std::isnan(v) ? "" : csv_number(v));
    }
    out.succeeded = out.errors.empty();
    std::string joined;
    for (const auto& e : out.errors) {
        if (!joined.empty()) joined += "; ";
        joined += e;
    }
    out.cells.push_back(joined);
    return out;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();

    SweepTable table;
    table.header.push_back(axis_name(spec.axis));
    for (SweepOutput o : spec.outputs) table.header.push_back(output_name(o));
    table.header.push_back("error");

    const int count = static_cast<int>(spec.values.size());
    std::vector<PointResult> results(count);
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) results[i] = eval_point(spec, i);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                results[i] = eval_point(spec, static_cast<std::size_t>(i));
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads - 1; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    std::set<std::string> seen;
    for (PointResult& r : results) {
        table.rows.push_back(std::move(r.cells));
        if (r.succeeded) ++table.points_succeeded;
        for (const std::string& w : r.warnings) {
            if (seen.insert(w).second) {
                table.warnings.push_back(
                    "closed form '" + w +
                    "' disagrees with the general path; general values used");
            }
        }
    }
    return table;
}

}  // namespace redlb
