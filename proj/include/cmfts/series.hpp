#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmfts/errors.hpp"

namespace cmfts {

/// One univariate series with an optional class label. Values are validated
/// at construction (finite, nonempty) and immutable afterwards.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values, std::string label = {},
                        std::optional<std::size_t> id = std::nullopt);

    const std::vector<double>& values() const noexcept { return values_; }
    const std::string& label() const noexcept { return label_; }
    std::optional<std::size_t> id() const noexcept { return id_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    std::string label_;
    std::optional<std::size_t> id_;
};

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // population, divisor n
    double sd = 0.0;
};

Summary summarize(std::span<const double> xs);

/// Sample standard deviation, divisor n-1. NaN for n < 2.
double sample_sd(std::span<const double> xs);

/// Median (takes a copy; averages the two middle values for even n).
double median_of(std::vector<double> xs);

/// First differences x_{t+1} - x_t; output length n-1.
std::vector<double> difference(std::span<const double> xs);

/// Standardize to mean 0, population sd 1. Throws ZeroVariance.
std::vector<double> zscore(std::span<const double> xs);

/// Autocorrelations r_1..r_max_lag with the lag-0 sum-of-squares denominator.
/// Throws ZeroVariance on a constant series.
std::vector<double> acf(std::span<const double> xs, std::size_t max_lag);

/// Partial autocorrelations via the Durbin-Levinson recursion on acf().
/// Throws ZeroVariance or NumericalFailure (pivot below 1e-12).
std::vector<double> pacf(std::span<const double> xs, std::size_t max_lag);

/// Lazy per-lag autocorrelation with the demeaned series and denominator
/// computed once. Used by the scan-style features (first minimum / first
/// zero crossing of the acf).
class AcfScanner {
public:
    explicit AcfScanner(std::span<const double> xs);  // throws ZeroVariance

    double r(std::size_t lag) const;  // lag in [1, n-1]
    std::size_t n() const noexcept { return centered_.size(); }

private:
    std::vector<double> centered_;
    double denom_ = 0.0;
};

struct SpectrumPoint {
    double frequency;  // k/n, k = 1..floor(n/2)
    double power;      // |X_k|^2 / n of the mean-removed series
};

/// Periodogram at the Fourier frequencies, FFT-based (Bluestein for
/// arbitrary n). Constant input yields all-zero powers.
std::vector<SpectrumPoint> periodogram(std::span<const double> xs);

}  // namespace cmfts
