#pragma once

#include <span>

namespace cmfts {

/// Parameters for the entropy-style measures. Embedding dimension 2 with
/// tolerance 0.2*sd for approximate/sample entropy, ordinal patterns of
/// length 4, histograms with 10 equal-width bins.
struct ComplexityParams {
    int embed_dim_apen = 2;
    double tolerance_frac = 0.2;
    int embed_dim_perm = 4;
    int n_bins = 10;
};

// Every measure returns quiet_NaN when its input is degenerate (too short,
// zero variance where a tolerance or normalization needs sd > 0). Batch
// cleaning, not the feature itself, owns the missing-value policy.

/// LZ76 phrase-counting complexity of the median-binarized series,
/// normalized as c(n) * log2(n) / n.
double lempel_ziv(std::span<const double> xs);

double approximate_entropy(std::span<const double> xs, const ComplexityParams& p = {});
double sample_entropy(std::span<const double> xs, const ComplexityParams& p = {});

/// Shannon entropy of ordinal patterns, normalized by log(m!) into [0,1].
/// Ties rank by temporal order.
double permutation_entropy(std::span<const double> xs, const ComplexityParams& p = {});

/// Count of ordinal patterns of length m that never occur (m! minus the
/// number of distinct observed patterns).
double forbidden_patterns(std::span<const double> xs, const ComplexityParams& p = {});

/// Chao-Shen coverage-adjusted entropy of the 10-bin histogram.
double shannon_entropy_cs(std::span<const double> xs, const ComplexityParams& p = {});

/// Schurmann-Grassberger Dirichlet posterior-mean entropy of the same
/// histogram (pseudo-count 1/K per bin).
double shannon_entropy_sg(std::span<const double> xs, const ComplexityParams& p = {});

/// Normalized Shannon entropy of the spectral density in [0,1]. The raw
/// periodogram is variance-reduced with a moving average once enough
/// Fourier bins are available for the estimate to be consistent.
double spectral_entropy(std::span<const double> xs);

/// Excess kurtosis m4/m2^2 - 3 (population moments).
double kurtosis(std::span<const double> xs);

/// Skewness m3/m2^(3/2) (population moments).
double skewness(std::span<const double> xs);

/// Digamma function (recurrence plus asymptotic series), used by the
/// Schurmann-Grassberger estimator and exposed for its tests.
double digamma(double x);

}  // namespace cmfts
