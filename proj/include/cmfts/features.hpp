#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cmfts {

/// Window and sampling parameters shared by the statistical features.
struct WindowParams {
    int width = 10;            // sliding/tiled window width
    std::uint64_t rng_seed = 42;
    int segment_len = 100;     // random-segment length for the mean-taul feature
    double walker_frac = 0.1;  // walker attraction fraction
    int train_len = 3;         // history length of the local mean predictor
};

// Feature groups mirror how the quantities are computed: one pass produces
// all members of a struct. Degenerate inputs yield quiet_NaN fields.

struct AcfFeatures {
    double x_acf1, x_acf10;
    double diff1_acf1, diff1_acf10;
    double diff2_acf1, diff2_acf10;
    double ac_9;
};
AcfFeatures acf_features(std::span<const double> xs);

struct PacfFeatures {
    double x_pacf5, diff1x_pacf5, diff2x_pacf5;
};
PacfFeatures pacf_features(std::span<const double> xs);

/// First local minimum and first zero crossing of the autocorrelation,
/// scanned over lags 1..n-2; the scan bound is returned when none exists.
struct AcfTimings {
    double firstmin_ac, firstzero_ac;
};
AcfTimings acf_timings(std::span<const double> xs);

/// Maxima (and their 1-based locations, indexed by the second window's
/// start) of the KL, mean and variance shifts between adjacent
/// non-overlapping sliding windows.
struct ShiftFeatures {
    double max_kl_shift, time_kl_shift;
    double max_level_shift, time_level_shift;
    double max_var_shift, time_var_shift;
};
ShiftFeatures shift_features(std::span<const double> xs, const WindowParams& p = {});

/// Variance of tiled-window means (stability) and variances (lumpiness).
struct RollingMoments {
    double stability, lumpiness;
};
RollingMoments rolling_moments(std::span<const double> xs, const WindowParams& p = {});

double crossing_points(std::span<const double> xs);
double flat_spots(std::span<const double> xs);

/// Terasvirta-style neural network test statistic on the z-scored series
/// with one lag, scaled by 10/n.
double nonlinearity(std::span<const double> xs);

double embed2_incircle(std::span<const double> xs);
double spreadrandomlocal_meantaul(std::span<const double> xs, const WindowParams& p = {});
double std1st_der(std::span<const double> xs);
double trev_num(std::span<const double> xs);

struct HoltParameters {
    double alpha, beta;
};
/// Holt linear-trend smoothing parameters fitted by one-step-ahead SSE
/// (Nelder-Mead, multi-start, box [1e-4, 0.9999]^2).
HoltParameters holt_parameters(std::span<const double> xs);

struct SeasonalityMeta {
    double nperiods, seasonal_period;
};
/// Constant (1, 1): series are processed with no seasonal frequency.
SeasonalityMeta seasonality_meta();

struct DecompResult {
    std::vector<double> trend_component;
    std::vector<double> remainder;
    double var_x, var_r;
};
/// Trend/remainder split via a centered moving average whose width is the
/// nearest odd integer to n/10 (minimum 5), shrinking symmetrically at the
/// edges. trend + remainder reproduces the input elementwise.
DecompResult decompose_trend(std::span<const double> xs);

struct DecompositionFeatures {
    double trend, spike, linearity, curvature;
    double e_acf1, e_acf10;
};
DecompositionFeatures decomposition_features(std::span<const double> xs);

double walker_propcross(std::span<const double> xs, const WindowParams& p = {});

/// Rescaled-range (R/S) long-memory estimate, clamped to [0,1].
double hurst(std::span<const double> xs);

/// KPSS statistic, linear trend, Bartlett lag 1.
double unitroot_kpss(std::span<const double> xs);

/// Phillips-Perron Z_alpha statistic, constant trend, Bartlett lag 1.
double unitroot_pp(std::span<const double> xs);

double histogram_mode(std::span<const double> xs);
double localsimple_taures(std::span<const double> xs, const WindowParams& p = {});
double outlierinclude_mdrmd(std::span<const double> xs);
double motiftwo_entro3(std::span<const double> xs);

}  // namespace cmfts
