#include "dicke/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "dicke/errors.hpp"
#include "dicke/thermolimit.hpp"

namespace dicke {

std::size_t SweepResult::failures() const noexcept {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok; }));
}

std::vector<const SweepRow*> SweepResult::rows_for(int n_atoms) const {
    std::vector<const SweepRow*> out;
    for (const auto& r : rows) {
        if (r.n_atoms == n_atoms) out.push_back(&r);
    }
    return out;
}

std::vector<double> linear_grid(double min, double max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("grid step must be positive");
    if (!(max >= min)) throw ValidationError("grid maximum must not be below its minimum");
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = min + static_cast<double>(i) * step;
    return grid;
}

namespace {

SweepRow solve_row(const SweepConfig& config, int n_atoms, double lambda) {
    SweepRow row;
    row.n_atoms = n_atoms;
    row.lambda = lambda;
    try {
        ModelParams params{config.omega, config.omega0, lambda, n_atoms, config.initial_cutoff};
        const CutoffResult solved = converge_cutoff(params, config.policy);
        row.record = measure(params, solved);
        row.solves = solved.solves;
        row.ok = true;
    } catch (const std::exception& e) {
        row.record.params = {config.omega, config.omega0, lambda, n_atoms, config.initial_cutoff};
        row.error = e.what();
    }
    return row;
}

}  // namespace

SweepResult sweep(const SweepConfig& config) {
    if (config.lambdas.empty()) throw ValidationError("lambda grid is empty");
    if (config.n_atoms.empty()) throw ValidationError("atom-number list is empty");
    for (std::size_t i = 1; i < config.lambdas.size(); ++i) {
        if (!(config.lambdas[i] > config.lambdas[i - 1])) throw ValidationError("lambda grid must be strictly increasing");
    }
    for (int n : config.n_atoms) {
        if (n < 1) throw ValidationError("atom numbers must be at least 1");
    }
    ModelParams{config.omega, config.omega0, config.lambdas.front(), 1, std::max(1, config.initial_cutoff)}.validate();

    const std::size_t per_n = config.lambdas.size();
    SweepResult result;
    result.rows.resize(per_n * config.n_atoms.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < result.rows.size(); i = next++) {
            result.rows[i] = solve_row(config, config.n_atoms[i / per_n], config.lambdas[i % per_n]);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(result.rows.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return result;
}

Extremum find_maximum(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("maximum search needs equally long x and y");
    if (x.size() < 5) throw ValidationError("maximum search needs at least five samples");
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) throw ValidationError("maximum search needs strictly increasing x");
    }
    const auto it = std::max_element(y.begin(), y.end());
    const auto i = static_cast<std::size_t>(it - y.begin());
    if (i == 0 || i + 1 == y.size()) {
        throw BoundaryMaximumError("maximum lies on the grid boundary at x = " + std::to_string(x[i]) +
                                   "; widen the grid");
    }
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (!(curvature < 0.0)) return {x1, y1};
    // p(t) = y0 + d01 (t - x0) + curvature (t - x0)(t - x1)
    const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    const double value = y0 + d01 * (vertex - x0) + curvature * (vertex - x0) * (vertex - x1);
    return {vertex, value};
}

namespace {

struct LineFit {
    double slope, intercept, slope_stderr;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw ValidationError("fit needs at least two distinct abscissae");
    LineFit f{};
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ssr += r * r;
    }
    f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
    return f;
}

void check_fit_input(std::span<const double> n, std::span<const double> values) {
    if (n.size() != values.size()) throw ValidationError("fit needs equally many sizes and values");
    if (n.size() < 3) throw ValidationError("fit needs at least three points");
    for (double v : n) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("system sizes must be positive");
    }
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> values) {
    check_fit_input(n, values);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw ValidationError("power-law fit needs positive values (got " + std::to_string(values[i]) + ")");
        }
        lx.push_back(std::log(n[i]));
        ly.push_back(std::log(values[i]));
    }
    const LineFit f = least_squares(lx, ly);
    return {f.slope, std::exp(f.intercept), f.slope_stderr, n.size()};
}

LogFit fit_log_scaling(std::span<const double> n, std::span<const double> values) {
    check_fit_input(n, values);
    std::vector<double> lx, y(values.begin(), values.end());
    for (double v : n) lx.push_back(std::log2(v));
    const LineFit f = least_squares(lx, y);
    return {f.slope, f.intercept, f.slope_stderr, n.size()};
}

std::string_view to_string(Quantity q) noexcept {
    return q == Quantity::entropy ? "entropy" : "scaled_concurrence";
}

std::vector<NamedFit> fit_maxima(std::span<const MaximumRow> maxima, double lambda_c, double concurrence_limit) {
    std::vector<double> n_s, pos_s, val_s, n_c, pos_c, gap_c;
    for (const auto& m : maxima) {
        if (m.quantity == Quantity::entropy) {
            n_s.push_back(m.n_atoms);
            pos_s.push_back(m.maximum.lambda - lambda_c);
            val_s.push_back(m.maximum.value);
        } else {
            n_c.push_back(m.n_atoms);
            pos_c.push_back(m.maximum.lambda - lambda_c);
            gap_c.push_back(concurrence_limit - m.maximum.value);
        }
    }
    auto power = [](const ExponentWindow& w, std::span<const double> n, std::span<const double> v) {
        const PowerLawFit f = fit_power_law(n, v);
        return NamedFit{w, f.exponent, f.exponent_stderr, f.prefactor, f.samples};
    };
    const LogFit log_fit = fit_log_scaling(n_s, val_s);
    return {
        power(kEntropyPositionWindow, n_s, pos_s),
        NamedFit{kEntropyValueWindow, log_fit.slope, log_fit.slope_stderr, log_fit.intercept, log_fit.samples},
        power(kConcurrencePositionWindow, n_c, pos_c),
        power(kConcurrenceValueWindow, n_c, gap_c),
    };
}

namespace {

double row_value(const SweepRow& r, Quantity q) {
    return q == Quantity::entropy ? r.record.entropy : r.record.scaled_concurrence;
}

void append_rows(SweepResult& into, SweepResult&& from) {
    for (auto& r : from.rows) into.rows.push_back(std::move(r));
}

void require_ok(const SweepResult& s) {
    for (const auto& r : s.rows) {
        if (!r.ok) {
            throw NumericalError("scaling sweep failed at N=" + std::to_string(r.n_atoms) +
                                 ", lambda=" + std::to_string(r.lambda) + ": " + r.error);
        }
    }
}

Extremum refine(const ScalingConfig& config, const SweepConfig& base, int n_atoms, Quantity q,
                const std::vector<const SweepRow*>& coarse, double lambda_c, SweepResult& all) {
    std::vector<double> x, y;
    for (const auto* r : coarse) {
        x.push_back(r->lambda);
        y.push_back(row_value(*r, q));
    }
    find_maximum(x, y);  // rejects a coarse peak on the grid boundary
    const auto peak = std::max_element(y.begin(), y.end()) - y.begin();
    const double half_width = config.window_coarse_steps * config.coarse_step * lambda_c;
    const double centre = x[static_cast<std::size_t>(peak)];

    SweepConfig fine = base;
    fine.n_atoms = {n_atoms};
    fine.lambdas = linear_grid(std::max(0.0, centre - half_width), centre + half_width + 1e-12,
                               config.fine_step * lambda_c);
    SweepResult solved = sweep(fine);
    require_ok(solved);
    std::vector<double> fx, fy;
    for (const auto& r : solved.rows) {
        fx.push_back(r.lambda);
        fy.push_back(row_value(r, q));
    }
    const Extremum best = find_maximum(fx, fy);
    append_rows(all, std::move(solved));
    return best;
}

}  // namespace

ScalingReport run_scaling(const ScalingConfig& config) {
    if (config.ladder.size() < 3) throw ValidationError("scaling needs at least three system sizes");
    if (!(config.fine_step > 0.0) || !(config.coarse_step > config.fine_step)) {
        throw ValidationError("scaling grid steps must satisfy 0 < fine < coarse");
    }
    ScalingReport report;
    report.lambda_c = critical_coupling(config.omega, config.omega0);
    report.concurrence_limit =
        thermo::concurrence_infinite(thermo::phase_params(config.omega, config.omega0, report.lambda_c));

    SweepConfig base;
    base.omega = config.omega;
    base.omega0 = config.omega0;
    base.initial_cutoff = config.initial_cutoff;
    base.policy = config.policy;
    base.threads = config.threads;

    SweepConfig coarse = base;
    coarse.n_atoms = config.ladder;
    coarse.lambdas = linear_grid(0.0, config.coarse_max * report.lambda_c + 1e-12, config.coarse_step * report.lambda_c);
    SweepResult coarse_rows = sweep(coarse);
    require_ok(coarse_rows);

    SweepResult refined;
    for (int n : config.ladder) {
        const auto rows = coarse_rows.rows_for(n);
        for (Quantity q : {Quantity::entropy, Quantity::scaled_concurrence}) {
            report.maxima.push_back({n, q, refine(config, base, n, q, rows, report.lambda_c, refined)});
        }
    }

    SweepConfig critical = base;
    critical.lambdas = {report.lambda_c};
    critical.n_atoms = config.ladder;
    SweepResult at_critical = sweep(critical);
    require_ok(at_critical);
    std::vector<double> ns, gaps;
    for (const auto& r : at_critical.rows) {
        report.concurrence_at_critical.emplace_back(r.n_atoms, r.record.scaled_concurrence);
        ns.push_back(r.n_atoms);
        gaps.push_back(report.concurrence_limit - r.record.scaled_concurrence);
    }
    report.concurrence_at_critical_fit = fit_power_law(ns, gaps);

    report.fits = fit_maxima(report.maxima, report.lambda_c, report.concurrence_limit);

    report.rows = std::move(coarse_rows);
    append_rows(report.rows, std::move(refined));
    append_rows(report.rows, std::move(at_critical));
    return report;
}

}  // namespace dicke
