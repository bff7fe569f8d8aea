// Acceptance run: one PASS/FAIL line per criterion. Arguments select criteria
// by number; with none, all ten run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/eigensolve.hpp"
#include "dicke/observables.hpp"
#include "dicke/oracle/qubit_space.hpp"
#include "dicke/scaling.hpp"
#include "dicke/thermolimit.hpp"
#include "validate.hpp"

using namespace dicke;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

constexpr double kLambdaC = 0.5;

// Slope of y against x by least squares.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

Verdict criterion_1() {
    const double target = 1.0 - std::sqrt(2.0) / 2.0;
    const double at_one = thermo::concurrence_resonance(1.0);
    double best = -1.0, best_x = -1.0;
    for (int k = 0; k <= 3000; ++k) {
        const double x = 1e-3 * k;
        const double c = thermo::concurrence_resonance(x);
        if (c > best) best = c, best_x = x;
    }
    const double dev = std::abs(at_one - target);
    const bool pass = dev <= 1e-12 && best_x == 1.0;
    return {pass, "C(1)=" + fmt(at_one, 16) + " |dev|=" + fmt(dev, 3) + " (tol 1e-12), grid argmax x=" + fmt(best_x)};
}

Verdict criterion_2() {
    std::string detail;
    bool pass = true;
    for (int side : {-1, +1}) {
        std::vector<double> x, y;
        for (int k = 0; k <= 30; ++k) {
            const double d = std::pow(10.0, -6.0 + 3.0 * k / 30.0);
            x.push_back(std::log2(d));
            y.push_back(thermo::entropy_infinite(thermo::phase_params(1.0, 1.0, kLambdaC + side * d)));
        }
        const double slope = ls_slope(x, y);
        pass = pass && std::abs(slope + 0.25) <= 0.01;
        detail += (side < 0 ? "below slope=" : " above slope=") + fmt(slope);
    }
    return {pass, detail + " (target -0.25 +- 0.01)"};
}

Verdict criterion_3() {
    const auto pp = thermo::phase_params(1.0, 1.0, kLambdaC);
    std::vector<double> x, y;
    for (int k = 0; k <= 40; ++k) {
        const double L = std::pow(10.0, 2.0 + 4.0 * k / 40.0);
        x.push_back(std::log2(L));
        y.push_back(thermo::entropy_finite_cutoff(pp, L));
    }
    const double slope = ls_slope(x, y);
    return {std::abs(slope - 1.0) <= 0.02, "slope=" + fmt(slope) + " (target 1.0 +- 0.02)"};
}

Verdict criterion_4() {
    double rdm_dev = 0.0, c_dev = 0.0;
    for (int n_atoms : {2, 3, 4}) {
        for (double lambda : {0.1, 0.3, 0.5, 0.7}) {
            const ModelParams p{1.0, 1.0, lambda, n_atoms, 40};
            const auto solved = solve_at_cutoff(p, Parity::even);
            const auto rho = two_atom_rdm(collective_expectations(solved.state, solved.basis), n_atoms);
            const Eigen::Matrix4d reference = oracle::two_atom_partial_trace(oracle::solve_qubit_space(p));
            rdm_dev = std::max(rdm_dev, (rho.elements() - Eigen::MatrixXd(reference)).cwiseAbs().maxCoeff());
            c_dev = std::max(c_dev, std::abs(wootters_concurrence(rho, n_atoms).concurrence -
                                             wootters_concurrence(DensityMatrix(reference), n_atoms).concurrence));
        }
    }
    return {rdm_dev <= 1e-9 && c_dev <= 1e-9,
            "max |rho - rho_oracle|=" + fmt(rdm_dev, 3) + " max |C - C_oracle|=" + fmt(c_dev, 3) + " (tol 1e-9)"};
}

Verdict criterion_8() {
    const double lambda = 0.05;
    const double law = thermo::concurrence_smalllambda(1.0, 1.0, lambda);
    double worst = 0.0;
    std::string detail;
    for (int n : {8, 16, 32}) {
        const ModelParams p{1.0, 1.0, lambda, n, 8};
        const auto rec = measure(p, converge_cutoff(p));
        const double dev = std::abs(rec.scaled_concurrence - law);
        worst = std::max(worst, dev);
        detail += "N=" + std::to_string(n) + ":" + fmt(rec.scaled_concurrence) + " ";
    }
    return {worst <= 5e-3, detail + "law=" + fmt(law) + " max dev=" + fmt(worst, 3) + " (tol 5e-3)"};
}

Verdict criterion_9() {
    const auto suites = {cli::concurrence_identity_suite(), cli::squeezing_identity_suite(), cli::gaussian_entropy_suite()};
    bool pass = true;
    std::string detail;
    for (const auto& s : suites) {
        pass = pass && s.max_deviation <= 1e-8;
        detail += s.name + "=" + fmt(s.max_deviation, 3) + "; ";
    }
    return {pass, detail + "(tol 1e-8)"};
}

struct ScalingVerdicts {
    Verdict entropy;
    Verdict concurrence;
    Verdict bounds;
};

ScalingVerdicts finite_size(unsigned threads) {
    ScalingConfig config;
    config.threads = threads;
    const auto report = run_scaling(config);
    auto fit = [&](std::string_view name) {
        for (const auto& f : report.fits) {
            if (f.window.name == name) return f;
        }
        throw std::runtime_error("missing fit");
    };
    auto describe = [](const NamedFit& f) {
        return std::string(f.window.name) + "=" + fmt(f.estimate, 4) + "+-" + fmt(f.stderr_, 2) + " in [" +
               fmt(f.window.low) + "," + fmt(f.window.high) + "]";
    };
    const auto s_pos = fit("entropy_position");
    const auto s_val = fit("entropy_value");
    const auto c_pos = fit("concurrence_position");
    const auto c_val = fit("concurrence_value");

    std::size_t points = 0, violations = 0;
    double worst_s = -1e300, worst_c = 0.0;
    for (const auto& row : report.rows.rows) {
        if (!row.ok) continue;
        ++points;
        const double s_margin = row.record.entropy - std::log2(row.n_atoms + 1.0);
        worst_s = std::max(worst_s, s_margin);
        worst_c = std::max(worst_c, row.record.scaled_concurrence);
        if (s_margin > 1e-12 || row.record.scaled_concurrence > 2.0) ++violations;
    }
    return {
        {s_val.in_window() && s_pos.in_window(), describe(s_val) + "; " + describe(s_pos)},
        {c_pos.in_window() && c_val.in_window(), describe(c_pos) + "; " + describe(c_val) + " (C_inf(lc) - C_M)"},
        {violations == 0 && points > 0,
         std::to_string(points) + " points, max S - log2(N+1)=" + fmt(worst_s, 3) + ", max C_N=" + fmt(worst_c)},
    };
}

Verdict criterion_7() {
    const std::vector<int> ladder = kStandardLadder;
    bool monotone = true, endpoints = true;
    std::string detail;
    for (double lambda : {0.3, 0.45, 0.6, 0.8}) {
        const auto pp = thermo::phase_params(1.0, 1.0, lambda);
        const double limit = thermo::entropy_infinite(pp, pp.phase == thermo::Phase::superradiant);
        std::vector<double> errors;
        for (int n : ladder) {
            const ModelParams p{1.0, 1.0, lambda, n, 16};
            errors.push_back(std::abs(measure(p, converge_cutoff(p)).entropy - limit));
        }
        bool this_monotone = true;
        for (std::size_t i = 1; i < errors.size(); ++i) this_monotone = this_monotone && errors[i] < errors[i - 1];
        const bool this_endpoints = errors.back() < errors.front();
        monotone = monotone && this_monotone;
        endpoints = endpoints && this_endpoints;
        detail += "lambda=" + fmt(lambda) + " |dS|:";
        for (double e : errors) detail += " " + fmt(e, 4);
        detail += this_monotone ? " (monotone)" : " (NOT monotone)";
        detail += "; ";
    }
    detail += std::string("N=45 below N=8 at every lambda: ") + (endpoints ? "yes" : "no");
    return {monotone && endpoints, detail};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    if (selected.empty()) {
        for (int k = 1; k <= 10; ++k) selected.insert(k);
    }
    unsigned threads = 1;
    if (const char* env = std::getenv("DICKE_THREADS")) threads = std::max(1, std::atoi(env));

    std::map<int, std::string> titles{
        {1, "critical concurrence maximum"},    {2, "entropy divergence exponent"},
        {3, "critical cutoff scaling"},         {4, "oracle equivalence"},
        {5, "finite-size entropy scaling"},     {6, "finite-size concurrence scaling"},
        {7, "thermodynamic-limit agreement"},   {8, "small-coupling law"},
        {9, "identity suite"},                  {10, "entropy and concurrence bounds"},
    };
    std::map<int, std::function<Verdict()>> single{
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
    };

    std::optional<ScalingVerdicts> scaling;
    int failures = 0;
    for (int k : selected) {
        if (!titles.count(k)) {
            std::cerr << "unknown criterion " << k << '\n';
            return 1;
        }
        const auto start = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            if (single.count(k)) {
                v = single[k]();
            } else {
                if (!scaling) scaling = finite_size(threads);
                v = k == 5 ? scaling->entropy : k == 6 ? scaling->concurrence : scaling->bounds;
            }
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!v.pass) ++failures;
        std::printf("[%s] criterion %d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", k, titles[k].c_str(),
                    v.detail.c_str(), seconds);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
