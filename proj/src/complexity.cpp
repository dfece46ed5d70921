#include "cmfts/complexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "cmfts/series.hpp"

namespace cmfts {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> histogram_counts(std::span<const double> xs, int n_bins) {
    std::vector<int> counts(static_cast<std::size_t>(n_bins), 0);
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it, hi = *hi_it;
    const double range = hi - lo;
    for (double v : xs) {
        int bin = 0;
        if (range > 0.0) {
            bin = static_cast<int>((v - lo) / range * n_bins);
            bin = std::clamp(bin, 0, n_bins - 1);
        }
        ++counts[static_cast<std::size_t>(bin)];
    }
    return counts;
}

// Distribution of length-m ordinal patterns, encoded as the sequence of
// source positions in stable value order. Returns counts keyed by a base-m
// packed id; at most m! keys are populated.
std::vector<int> ordinal_pattern_counts(std::span<const double> xs, int m) {
    const std::size_t n = xs.size();
    std::vector<int> counts(static_cast<std::size_t>(std::pow(m, m)), 0);
    std::array<int, 8> idx{};
    for (std::size_t t = 0; t + m <= n; ++t) {
        for (int k = 0; k < m; ++k) idx[static_cast<std::size_t>(k)] = k;
        std::stable_sort(idx.begin(), idx.begin() + m,
                         [&](int a, int b) { return xs[t + a] < xs[t + b]; });
        int key = 0;
        for (int k = 0; k < m; ++k) key = key * m + idx[static_cast<std::size_t>(k)];
        ++counts[static_cast<std::size_t>(key)];
    }
    return counts;
}

// Kaspar-Schuster LZ76 phrase count of a binary string.
int lz76_phrase_count(const std::vector<uint8_t>& s) {
    const std::size_t n = s.size();
    int c = 1;
    std::size_t l = 1, i = 0, k = 1, k_max = 1;
    while (true) {
        if (s[i + k - 1] == s[l + k - 1]) {
            ++k;
            if (l + k > n) {
                ++c;
                break;
            }
        } else {
            k_max = std::max(k, k_max);
            ++i;
            if (i == l) {
                ++c;
                l += k_max;
                if (l + 1 > n) break;
                i = 0;
                k = 1;
                k_max = 1;
            } else {
                k = 1;
            }
        }
    }
    return c;
}

double chebyshev(std::span<const double> xs, std::size_t i, std::size_t j, int m) {
    double d = 0.0;
    for (int k = 0; k < m; ++k)
        d = std::max(d, std::abs(xs[i + static_cast<std::size_t>(k)] -
                                 xs[j + static_cast<std::size_t>(k)]));
    return d;
}

// Phi_m of Pincus' definition: mean over templates of log(match fraction),
// self-matches included.
double apen_phi(std::span<const double> xs, int m, double r) {
    const std::size_t n_templates = xs.size() - static_cast<std::size_t>(m) + 1;
    double phi = 0.0;
    for (std::size_t i = 0; i < n_templates; ++i) {
        std::size_t matches = 0;
        for (std::size_t j = 0; j < n_templates; ++j) {
            if (chebyshev(xs, i, j, m) <= r) ++matches;
        }
        phi += std::log(static_cast<double>(matches) / static_cast<double>(n_templates));
    }
    return phi / static_cast<double>(n_templates);
}

}  // namespace

double lempel_ziv(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return kNaN;
    const double med = median_of(std::vector<double>(xs.begin(), xs.end()));
    std::vector<uint8_t> sym(n);
    for (std::size_t t = 0; t < n; ++t) sym[t] = xs[t] > med ? 1 : 0;
    const int c = lz76_phrase_count(sym);
    return static_cast<double>(c) * std::log2(static_cast<double>(n)) / static_cast<double>(n);
}

double approximate_entropy(std::span<const double> xs, const ComplexityParams& p) {
    const int m = p.embed_dim_apen;
    if (xs.size() < static_cast<std::size_t>(m) + 2) return kNaN;
    const Summary s = summarize(xs);
    if (!(s.sd > 0.0)) return kNaN;
    const double r = p.tolerance_frac * s.sd;
    return apen_phi(xs, m, r) - apen_phi(xs, m + 1, r);
}

double sample_entropy(std::span<const double> xs, const ComplexityParams& p) {
    const int m = p.embed_dim_apen;
    const std::size_t n = xs.size();
    if (n < static_cast<std::size_t>(m) + 2) return kNaN;
    const Summary s = summarize(xs);
    if (!(s.sd > 0.0)) return kNaN;
    const double r = p.tolerance_frac * s.sd;
    // Richman-Moorman: the first n-m templates are compared pairwise at
    // lengths m and m+1; self-matches never counted.
    const std::size_t n_templates = n - static_cast<std::size_t>(m);
    std::size_t b = 0, a = 0;
    for (std::size_t i = 0; i < n_templates; ++i) {
        for (std::size_t j = i + 1; j < n_templates; ++j) {
            if (chebyshev(xs, i, j, m) <= r) {
                ++b;
                if (std::abs(xs[i + static_cast<std::size_t>(m)] -
                             xs[j + static_cast<std::size_t>(m)]) <= r)
                    ++a;
            }
        }
    }
    if (a == 0 || b == 0) return kNaN;
    return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

double permutation_entropy(std::span<const double> xs, const ComplexityParams& p) {
    const int m = p.embed_dim_perm;
    if (xs.size() < static_cast<std::size_t>(m)) return kNaN;
    const std::vector<int> counts = ordinal_pattern_counts(xs, m);
    const double total = static_cast<double>(xs.size() - static_cast<std::size_t>(m) + 1);
    double h = 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        const double q = static_cast<double>(c) / total;
        h -= q * std::log(q);
    }
    double log_mfact = 0.0;
    for (int k = 2; k <= m; ++k) log_mfact += std::log(static_cast<double>(k));
    return h / log_mfact;
}

double forbidden_patterns(std::span<const double> xs, const ComplexityParams& p) {
    const int m = p.embed_dim_perm;
    if (xs.size() < static_cast<std::size_t>(m)) return kNaN;
    const std::vector<int> counts = ordinal_pattern_counts(xs, m);
    const int observed =
        static_cast<int>(std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
    int mfact = 1;
    for (int k = 2; k <= m; ++k) mfact *= k;
    return static_cast<double>(mfact - observed);
}

double shannon_entropy_cs(std::span<const double> xs, const ComplexityParams& p) {
    const std::size_t n = xs.size();
    if (n < 2) return kNaN;
    const std::vector<int> counts = histogram_counts(xs, p.n_bins);
    double f1 = static_cast<double>(std::count(counts.begin(), counts.end(), 1));
    if (f1 == static_cast<double>(n)) f1 = static_cast<double>(n) - 1.0;
    const double coverage = 1.0 - f1 / static_cast<double>(n);
    double h = 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        const double pa = coverage * static_cast<double>(c) / static_cast<double>(n);
        const double la = 1.0 - std::pow(1.0 - pa, static_cast<double>(n));
        if (pa > 0.0 && la > 0.0) h -= pa * std::log(pa) / la;
    }
    return h;
}

double shannon_entropy_sg(std::span<const double> xs, const ComplexityParams& p) {
    const std::size_t n = xs.size();
    if (n < 2) return kNaN;
    const std::vector<int> counts = histogram_counts(xs, p.n_bins);
    const double K = static_cast<double>(p.n_bins);
    const double a = 1.0 / K;
    const double nd = static_cast<double>(n);
    const double outer = digamma(nd + K * a + 1.0);
    double h = 0.0;
    for (int c : counts) {
        const double y = static_cast<double>(c);
        h += (y + a) / (nd + K * a) * (outer - digamma(y + a + 1.0));
    }
    return h;
}

double spectral_entropy(std::span<const double> xs) {
    if (xs.size() < 4) return kNaN;
    const std::vector<SpectrumPoint> pg = periodogram(xs);
    const std::size_t nbins = pg.size();
    std::vector<double> power(nbins);
    for (std::size_t k = 0; k < nbins; ++k) power[k] = pg[k].power;
    // Moving-average smoothing once the bin count is large; half-width grows
    // with the spectrum so the density estimate is consistent while short
    // series keep the exact line spectrum.
    const std::size_t half = nbins / 256;
    std::vector<double> dens;
    if (half == 0) {
        dens = std::move(power);
    } else {
        dens.resize(nbins);
        for (std::size_t k = 0; k < nbins; ++k) {
            const std::size_t lo = k >= half ? k - half : 0;
            const std::size_t hi = std::min(nbins - 1, k + half);
            double acc = 0.0;
            for (std::size_t j = lo; j <= hi; ++j) acc += power[j];
            dens[k] = acc / static_cast<double>(hi - lo + 1);
        }
    }
    const double total = std::accumulate(dens.begin(), dens.end(), 0.0);
    if (!(total > 0.0)) return kNaN;
    double h = 0.0;
    for (double d : dens) {
        if (d <= 0.0) continue;
        const double q = d / total;
        h -= q * std::log(q);
    }
    return h / std::log(static_cast<double>(nbins));
}

double kurtosis(std::span<const double> xs) {
    if (xs.size() < 4) return kNaN;
    const Summary s = summarize(xs);
    if (!(s.sd > 0.0)) return kNaN;
    double m4 = 0.0;
    for (double v : xs) {
        const double d = v - s.mean;
        m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(s.n);
    return m4 / (s.variance * s.variance) - 3.0;
}

double skewness(std::span<const double> xs) {
    if (xs.size() < 3) return kNaN;
    const Summary s = summarize(xs);
    if (!(s.sd > 0.0)) return kNaN;
    double m3 = 0.0;
    for (double v : xs) {
        const double d = v - s.mean;
        m3 += d * d * d;
    }
    m3 /= static_cast<double>(s.n);
    return m3 / (s.variance * s.sd);
}

double digamma(double x) {
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 -
                                      inv2 * (1.0 / 240.0 -
                                              inv2 * (1.0 / 132.0 -
                                                      inv2 * (691.0 / 32760.0))))));
    return result;
}

}  // namespace cmfts
