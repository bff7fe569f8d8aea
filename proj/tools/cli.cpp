#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "dicke/errors.hpp"
#include "dicke/scaling.hpp"
#include "dicke/thermolimit.hpp"
#include "validate.hpp"

namespace dicke::cli {
namespace {

using nlohmann::json;

struct RunConfig {
    double omega{1.0};
    double omega0{1.0};
    std::string lambda_spec;      // empty: [0, 2 lambda_c] in steps of 0.02 lambda_c
    std::vector<int> n_atoms;
    int cutoff{16};
    double cutoff_tol{1e-8};
    int cutoff_max{1024};
    bool cat{false};
    double cutoff_length{0.0};    // 0: not set
    std::string out;
    std::string summary;
    std::string maxima_out;
    std::string format;
    std::string sector{"even"};
    bool synthetic{false};
    double coarse_max{2.0};
    unsigned threads{1};
};

unsigned threads_from_env() {
    const char* raw = std::getenv("DICKE_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 1) throw ValidationError("DICKE_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
}

void emit_errors(std::ostream& err, const std::vector<std::pair<std::string, std::string>>& errors) {
    json list = json::array();
    for (const auto& [kind, message] : errors) list.push_back({{"type", kind}, {"message", message}});
    err << json{{"errors", list}}.dump() << '\n';
}

/// Output stream that is either the caller's stream or a file.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) throw ValidationError("cannot open output file '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::vector<double> lambda_grid(const RunConfig& cfg, bool snap_critical) {
    const double lambda_c = critical_coupling(cfg.omega, cfg.omega0);
    std::vector<double> grid = cfg.lambda_spec.empty() ? linear_grid(0.0, 2.0 * lambda_c + 1e-12, 0.02 * lambda_c)
                                                       : parse_grid(cfg.lambda_spec);
    if (snap_critical) {
        for (double& l : grid) {
            if (std::abs(l - lambda_c) <= 1e-12 * lambda_c) l = lambda_c;
        }
    }
    return grid;
}

CutoffPolicy cutoff_policy(const RunConfig& cfg) {
    CutoffPolicy policy;
    policy.tol = cfg.cutoff_tol;
    policy.ceiling = cfg.cutoff_max;
    policy.sector = parity_from_string(cfg.sector);
    return policy;
}

void validate_common(const RunConfig& cfg) {
    ModelParams{cfg.omega, cfg.omega0, 0.0, 1, 1}.validate();
    if (cfg.cutoff < 1) throw ValidationError("--cutoff must be at least 1");
    if (!(cfg.cutoff_tol > 0.0)) throw ValidationError("--cutoff-tol must be positive");
    if (cfg.cutoff_max < cfg.cutoff) throw ValidationError("--cutoff-max must not be below --cutoff");
    if (cfg.cutoff_length < 0.0) throw ValidationError("--cutoff-length must be positive");
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    validate_common(cfg);
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    SweepConfig sc;
    sc.omega = cfg.omega;
    sc.omega0 = cfg.omega0;
    sc.lambdas = lambda_grid(cfg, false);
    sc.n_atoms = cfg.n_atoms.empty() ? std::vector<int>{8} : cfg.n_atoms;
    sc.initial_cutoff = cfg.cutoff;
    sc.policy = cutoff_policy(cfg);
    sc.threads = cfg.threads;

    Sink table(cfg.out, out);
    std::string summary_path = cfg.summary;
    if (summary_path.empty() && !cfg.out.empty() && cfg.out != "-") summary_path = cfg.out + ".summary.json";
    Sink summary_sink(summary_path, err);

    const SweepResult result = sweep(sc);

    const auto& columns = observable_csv_columns();
    if (format == "csv") {
        write_csv_row(*table, columns);
        for (const auto& row : result.rows) {
            if (!row.ok) continue;
            std::vector<std::string> cells;
            for (double v : observable_csv_values(row.record)) cells.push_back(format_double(v));
            write_csv_row(*table, cells);
        }
    } else {
        json rows = json::array();
        for (const auto& row : result.rows) {
            if (!row.ok) continue;
            json obj;
            const auto values = observable_csv_values(row.record);
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = values[i];
            rows.push_back(obj);
        }
        *table << rows.dump(2) << '\n';
    }

    json errors = json::array();
    json per_n = json::array();
    for (int n : sc.n_atoms) {
        int lo = 0, hi = 0, solves = 0;
        bool first = true;
        for (const auto* row : result.rows_for(n)) {
            if (!row->ok) {
                errors.push_back({{"N", n}, {"lambda", row->lambda}, {"message", row->error}});
                continue;
            }
            const int n_max = row->record.params.boson_cutoff;
            lo = first ? n_max : std::min(lo, n_max);
            hi = first ? n_max : std::max(hi, n_max);
            solves += row->solves;
            first = false;
        }
        per_n.push_back({{"N", n}, {"min_n_max", lo}, {"max_n_max", hi}, {"solves", solves}});
    }
    const json summary{{"rows", result.rows.size()},
                       {"failed", result.failures()},
                       {"errors", errors},
                       {"convergence", per_n},
                       {"cutoff_tol", cfg.cutoff_tol},
                       {"cutoff_max", cfg.cutoff_max},
                       {"sector", cfg.sector}};
    *summary_sink << summary.dump(2) << '\n';

    const bool too_many = result.failures() * 10 > result.rows.size();
    return too_many ? kNumericalFailure : kSuccess;
}

int cmd_analytic(const RunConfig& cfg, std::ostream& out) {
    validate_common(cfg);
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    const std::vector<double> grid = lambda_grid(cfg, true);
    std::optional<double> length;
    if (cfg.cutoff_length > 0.0) length = cfg.cutoff_length;

    std::vector<thermo::AnalyticRow> rows;
    for (double l : grid) rows.push_back(thermo::analytic_row(cfg.omega, cfg.omega0, l, cfg.cat, length));

    Sink sink(cfg.out, out);
    std::vector<std::string> header{"lambda",  "x",       "phase",       "eps_minus", "eps_plus",
                                    "gamma",   "entropy", "concurrence", "squeezing"};
    if (length) header.emplace_back("entropy_cutoff");
    if (format == "csv") {
        write_csv_row(*sink, header);
        for (const auto& r : rows) {
            std::vector<std::string> cells{format_double(r.pp.lambda),    format_double(r.pp.x),
                                           std::string(thermo::to_string(r.pp.phase)),
                                           format_double(r.pp.eps_minus), format_double(r.pp.eps_plus),
                                           format_double(r.pp.gamma),
                                           r.entropy ? format_double(*r.entropy) : "divergent",
                                           format_double(r.concurrence),  format_double(r.squeezing)};
            if (length) cells.push_back(format_double(*r.entropy_cutoff));
            write_csv_row(*sink, cells);
        }
    } else {
        json list = json::array();
        for (const auto& r : rows) {
            json obj{{"lambda", r.pp.lambda},
                     {"x", r.pp.x},
                     {"phase", thermo::to_string(r.pp.phase)},
                     {"eps_minus", r.pp.eps_minus},
                     {"eps_plus", r.pp.eps_plus},
                     {"gamma", r.pp.gamma},
                     {"concurrence", r.concurrence},
                     {"squeezing", r.squeezing}};
            obj["entropy"] = r.entropy ? json(*r.entropy) : json("divergent");
            if (length) obj["entropy_cutoff"] = *r.entropy_cutoff;
            list.push_back(obj);
        }
        *sink << list.dump(2) << '\n';
    }
    return kSuccess;
}

json fit_json(const NamedFit& f) {
    return {{"quantity", f.window.name},
            {"exponent", f.estimate},
            {"stderr", f.stderr_},
            {"prefactor", f.prefactor},
            {"samples", f.samples},
            {"window", {f.window.low, f.window.high}},
            {"reference", f.window.reference},
            {"reference_uncertainty", f.window.reference_uncertainty},
            {"in_window", f.in_window()}};
}

// Maxima following exact power laws, for closed-loop checks of the fitting path.
std::vector<MaximumRow> synthetic_maxima(const std::vector<int>& ladder, double lambda_c, double c_limit) {
    std::vector<MaximumRow> maxima;
    for (int n : ladder) {
        const double nn = n;
        maxima.push_back({n, Quantity::entropy, {lambda_c + 0.3 * std::pow(nn, -0.75), 0.14 * std::log2(nn) + 0.5}});
        maxima.push_back({n, Quantity::scaled_concurrence, {lambda_c + 0.2 * std::pow(nn, -0.68), c_limit - 0.1 * std::pow(nn, -0.25)}});
    }
    return maxima;
}

int cmd_scaling(const RunConfig& cfg, std::ostream& out) {
    validate_common(cfg);
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    ScalingConfig sc;
    sc.omega = cfg.omega;
    sc.omega0 = cfg.omega0;
    if (!cfg.n_atoms.empty()) sc.ladder = cfg.n_atoms;
    sc.coarse_max = cfg.coarse_max;
    sc.initial_cutoff = cfg.cutoff;
    sc.policy = cutoff_policy(cfg);
    sc.threads = cfg.threads;

    ScalingReport report;
    if (cfg.synthetic) {
        report.lambda_c = critical_coupling(sc.omega, sc.omega0);
        report.concurrence_limit = thermo::concurrence_infinite(thermo::phase_params(sc.omega, sc.omega0, report.lambda_c));
        report.maxima = synthetic_maxima(sc.ladder, report.lambda_c, report.concurrence_limit);
        report.fits = fit_maxima(report.maxima, report.lambda_c, report.concurrence_limit);
    } else {
        try {
            report = run_scaling(sc);
        } catch (const BoundaryMaximumError& e) {
            throw BoundaryMaximumError(std::string(e.what()) + " (hint: raise --coarse-max or extend the N ladder)");
        }
    }

    if (!cfg.maxima_out.empty()) {
        Sink maxima(cfg.maxima_out, out);
        write_csv_row(*maxima, {"N", "lambda_M", "value_M", "quantity"});
        for (const auto& m : report.maxima) {
            write_csv_row(*maxima, {std::to_string(m.n_atoms), format_double(m.maximum.lambda),
                                    format_double(m.maximum.value), std::string(to_string(m.quantity))});
        }
    }

    Sink sink(cfg.out, out);
    if (format == "csv") {
        write_csv_row(*sink, {"quantity", "exponent", "stderr", "prefactor"});
        for (const auto& f : report.fits) {
            write_csv_row(*sink, {std::string(f.window.name), format_double(f.estimate), format_double(f.stderr_),
                                  format_double(f.prefactor)});
        }
    } else {
        json fits = json::array();
        for (const auto& f : report.fits) fits.push_back(fit_json(f));
        json maxima = json::array();
        for (const auto& m : report.maxima) {
            maxima.push_back({{"N", m.n_atoms},
                              {"lambda_M", m.maximum.lambda},
                              {"value_M", m.maximum.value},
                              {"quantity", to_string(m.quantity)}});
        }
        json doc{{"lambda_c", report.lambda_c},
                 {"concurrence_limit", report.concurrence_limit},
                 {"synthetic", cfg.synthetic},
                 {"fits", fits},
                 {"maxima", maxima}};
        if (!cfg.synthetic) {
            json at_c = json::array();
            for (const auto& [n, c] : report.concurrence_at_critical) at_c.push_back({{"N", n}, {"scaled_concurrence", c}});
            doc["concurrence_at_critical"] = at_c;
            doc["concurrence_at_critical_fit"] = {{"exponent", report.concurrence_at_critical_fit.exponent},
                                                  {"stderr", report.concurrence_at_critical_fit.exponent_stderr},
                                                  {"prefactor", report.concurrence_at_critical_fit.prefactor},
                                                  {"samples", report.concurrence_at_critical_fit.samples}};
        }
        *sink << doc.dump(2) << '\n';
    }
    const bool all_in = std::all_of(report.fits.begin(), report.fits.end(), [](const NamedFit& f) { return f.in_window(); });
    return all_in ? kSuccess : kAcceptanceMiss;
}

int cmd_validate(std::ostream& out) {
    const auto results = run_validation();
    print_validation_table(results, out);
    const bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed(); });
    return ok ? kSuccess : kNumericalFailure;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("malformed grid '" + spec + "'");
        }
        if (used != item.size()) throw ValidationError("malformed grid '" + spec + "'");
        parts.push_back(v);
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3) throw ValidationError("grid must be 'value' or 'min:max:step', got '" + spec + "'");
    return linear_grid(parts[0], parts[1] + 1e-9 * parts[2], parts[2]);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Entanglement across the Dicke superradiant transition"};
    app.name(args.empty() ? "dicke" : args.front());
    app.set_config("--config", "", "Flat key = value configuration file; flags override it");
    app.add_option("--omega", cfg.omega, "Boson frequency")->capture_default_str();
    app.add_option("--omega0", cfg.omega0, "Atomic splitting")->capture_default_str();
    app.add_option("--lambda", cfg.lambda_spec, "Coupling grid min:max:step (default 0 to 2 lambda_c)");
    app.add_option("--n", cfg.n_atoms, "Atom numbers, comma separated")->delimiter(',');
    app.add_option("--cutoff", cfg.cutoff, "Initial boson cutoff")->capture_default_str();
    app.add_option("--cutoff-tol", cfg.cutoff_tol, "Observable tolerance for cutoff convergence")->capture_default_str();
    app.add_option("--cutoff-max", cfg.cutoff_max, "Hard ceiling for the boson cutoff")->capture_default_str();
    app.add_flag("--cat", cfg.cat, "Add the cat-state bit to superradiant entropies");
    app.add_option("--cutoff-length", cfg.cutoff_length, "Tracing length L for the finite-cutoff entropy");
    app.add_option("--out", cfg.out, "Output path (default stdout)");
    app.add_option("--summary", cfg.summary, "Sweep summary JSON path (default <out>.summary.json or stderr)");
    app.add_option("--maxima-out", cfg.maxima_out, "Scaling maxima table CSV path");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--sector", cfg.sector, "Parity sector for finite-N solves")->check(CLI::IsMember({"even", "odd", "full"}));
    app.add_flag("--synthetic", cfg.synthetic, "scaling: fit injected power-law maxima instead of solving");
    app.add_option("--coarse-max", cfg.coarse_max, "scaling: coarse grid upper end in units of lambda_c")->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "Finite-N observables on a coupling grid");
    auto* analytic_cmd = app.add_subcommand("analytic", "Thermodynamic-limit curves");
    auto* scaling_cmd = app.add_subcommand("scaling", "Finite-size scaling of entropy and concurrence maxima");
    auto* validate_cmd = app.add_subcommand("validate", "Oracle and identity suites");
    for (auto* sub : {sweep_cmd, analytic_cmd, scaling_cmd, validate_cmd}) sub->fallthrough();
    app.require_subcommand(1);

    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        emit_errors(err, {{"config", e.what()}});
        return kConfigError;
    }

    try {
        cfg.threads = threads_from_env();
        if (*sweep_cmd) return cmd_sweep(cfg, out, err);
        if (*analytic_cmd) return cmd_analytic(cfg, out);
        if (*scaling_cmd) return cmd_scaling(cfg, out);
        return cmd_validate(out);
    } catch (const ValidationError& e) {
        emit_errors(err, {{"validation", e.what()}});
        return kConfigError;
    } catch (const std::exception& e) {
        emit_errors(err, {{"numerical", e.what()}});
        return kNumericalFailure;
    }
}

}  // namespace dicke::cli
