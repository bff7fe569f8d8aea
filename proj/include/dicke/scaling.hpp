#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/eigensolve.hpp"
#include "dicke/observables.hpp"

namespace dicke {

struct SweepConfig {
    double omega{1.0};
    double omega0{1.0};
    std::vector<double> lambdas;  // strictly increasing
    std::vector<int> n_atoms;
    int initial_cutoff{16};
    CutoffPolicy policy{};
    unsigned threads{1};
};

struct SweepRow {
    int n_atoms{0};
    double lambda{0.0};
    bool ok{false};
    std::string error;     // set when the row failed
    int solves{0};
    ObservableRecord record;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // grouped by N in config order, lambda ascending within a group

    std::size_t failures() const noexcept;
    std::vector<const SweepRow*> rows_for(int n_atoms) const;
};

/// Solves every (N, lambda) point at a certified cutoff. Rows are independent;
/// a failing row records its error and the sweep continues. Output order and
/// values do not depend on the thread count.
SweepResult sweep(const SweepConfig& config);

/// Evenly spaced grid min, min + step, ... up to max (inclusive within 1e-9 step).
std::vector<double> linear_grid(double min, double max, double step);

struct Extremum {
    double lambda{0.0};
    double value{0.0};
};

/// Refines the discrete maximum of (x, y) with a parabola through the three
/// bracketing samples. Needs at least five strictly increasing x. Throws
/// BoundaryMaximumError if the discrete maximum is the first or last sample.
Extremum find_maximum(std::span<const double> x, std::span<const double> y);

struct PowerLawFit {
    double exponent{0.0};
    double prefactor{0.0};
    double exponent_stderr{0.0};
    std::size_t samples{0};
};

/// Least squares in (ln N, ln value).
PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> values);

struct LogFit {
    double slope{0.0};  // per log2 N
    double intercept{0.0};
    double slope_stderr{0.0};
    std::size_t samples{0};
};

/// Least squares of value against log2 N.
LogFit fit_log_scaling(std::span<const double> n, std::span<const double> values);

enum class Quantity { entropy, scaled_concurrence };
std::string_view to_string(Quantity q) noexcept;

struct MaximumRow {
    int n_atoms{0};
    Quantity quantity{Quantity::entropy};
    Extremum maximum;
};

/// Acceptance windows for the finite-size exponents on the standard ladder,
/// with the literature values they bracket.
struct ExponentWindow {
    std::string_view name;
    double low;
    double high;
    double reference;
    double reference_uncertainty;
};

inline constexpr ExponentWindow kEntropyPositionWindow{"entropy_position", -0.9, -0.6, -0.75, 0.1};
inline constexpr ExponentWindow kEntropyValueWindow{"entropy_value", 0.12, 0.17, 0.14, 0.01};
inline constexpr ExponentWindow kConcurrencePositionWindow{"concurrence_position", -0.85, -0.55, -0.68, 0.1};
inline constexpr ExponentWindow kConcurrenceValueWindow{"concurrence_value", -0.35, -0.15, -0.25, 0.01};

inline const std::vector<int> kStandardLadder{8, 12, 16, 24, 32, 45};

struct ScalingConfig {
    double omega{1.0};
    double omega0{1.0};
    std::vector<int> ladder{kStandardLadder};
    double coarse_step{0.02};   // in units of lambda_c
    double fine_step{0.002};    // in units of lambda_c
    double coarse_max{2.0};     // coarse grid spans [0, coarse_max * lambda_c]
    int window_coarse_steps{2}; // refine over +- this many coarse steps around the coarse maximum
    int initial_cutoff{16};
    CutoffPolicy policy{};
    unsigned threads{1};
};

struct NamedFit {
    ExponentWindow window;
    double estimate{0.0};       // exponent, or slope for entropy_value
    double stderr_{0.0};
    double prefactor{0.0};      // power-law prefactor or log-fit intercept
    std::size_t samples{0};
    bool in_window() const noexcept { return estimate >= window.low && estimate <= window.high; }
};

struct ScalingReport {
    double lambda_c{0.0};
    double concurrence_limit{0.0};  // C_inf(lambda_c)
    std::vector<MaximumRow> maxima;
    std::vector<NamedFit> fits;     // entropy_position, entropy_value, concurrence_position, concurrence_value
    /// Scaled concurrence exactly at lambda_c for each N, for alternative readings of the value scaling.
    std::vector<std::pair<int, double>> concurrence_at_critical;
    PowerLawFit concurrence_at_critical_fit;  // of C_inf(lambda_c) - C_N(lambda_c)
    SweepResult rows;                         // every solved point, coarse and refined
};

/// Fits the four finite-size laws to already-located maxima.
std::vector<NamedFit> fit_maxima(std::span<const MaximumRow> maxima, double lambda_c, double concurrence_limit);

/// Two-stage sweeps over the ladder, maxima location and the four fits.
ScalingReport run_scaling(const ScalingConfig& config);

}  // namespace dicke
