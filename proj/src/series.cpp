#include "cmfts/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace cmfts {

namespace {

constexpr double kPivotEps = 1e-12;

using cd = std::complex<double>;

// Iterative radix-2 Cooley-Tukey, forward sign e^{-2*pi*i*k*t/n}.
void fft_pow2(std::vector<cd>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (invert ? 1.0 : -1.0);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert) {
        for (auto& x : a) x /= static_cast<double>(n);
    }
}

// Forward DFT of arbitrary length: radix-2 directly, Bluestein otherwise.
std::vector<cd> dft(std::vector<cd> x) {
    const std::size_t n = x.size();
    if (n == 0) return x;
    if ((n & (n - 1)) == 0) {
        fft_pow2(x, false);
        return x;
    }
    // Bluestein chirp transform: X_k = w_k * sum_t (x_t w_t) conj(w_{k-t}),
    // w_j = exp(-i*pi*j^2/n), evaluated as a circular convolution.
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cd> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        // j^2 mod 2n keeps the chirp argument small for long inputs
        const std::size_t j2 = (j * j) % (2 * n);
        const double ang = std::numbers::pi * static_cast<double>(j2) / static_cast<double>(n);
        w[j] = cd(std::cos(ang), -std::sin(ang));
    }
    std::vector<cd> a(m, cd(0.0, 0.0)), b(m, cd(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * w[j];
    for (std::size_t j = 0; j < n; ++j) {
        const cd c = std::conj(w[j]);
        b[j] = c;
        if (j > 0) b[m - j] = c;
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * w[k];
    return out;
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, std::string label,
                       std::optional<std::size_t> id)
    : values_(std::move(values)), label_(std::move(label)), id_(id) {
    if (values_.empty()) throw NonFiniteInput("time series must contain at least one value");
    for (double v : values_) {
        if (!std::isfinite(v)) throw NonFiniteInput("time series values must be finite");
    }
}

Summary summarize(std::span<const double> xs) {
    Summary s;
    s.n = xs.size();
    if (s.n == 0) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(s.n);
    double acc = 0.0;
    for (double v : xs) {
        const double d = v - s.mean;
        acc += d * d;
    }
    s.variance = acc / static_cast<double>(s.n);
    s.sd = std::sqrt(s.variance);
    return s;
}

double sample_sd(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const Summary s = summarize(xs);
    return std::sqrt(s.variance * static_cast<double>(n) / static_cast<double>(n - 1));
}

double median_of(std::vector<double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
    if (xs.size() % 2 == 1) return xs[mid];
    const double hi = xs[mid];
    const double lo = *std::max_element(xs.begin(), xs.begin() + mid);
    return 0.5 * (lo + hi);
}

std::vector<double> difference(std::span<const double> xs) {
    std::vector<double> d;
    if (xs.size() < 2) return d;
    d.resize(xs.size() - 1);
    for (std::size_t t = 0; t + 1 < xs.size(); ++t) d[t] = xs[t + 1] - xs[t];
    return d;
}

std::vector<double> zscore(std::span<const double> xs) {
    const Summary s = summarize(xs);
    if (!(s.sd > 0.0)) throw ZeroVariance();
    std::vector<double> out(xs.size());
    for (std::size_t t = 0; t < xs.size(); ++t) out[t] = (xs[t] - s.mean) / s.sd;
    return out;
}

std::vector<double> acf(std::span<const double> xs, std::size_t max_lag) {
    const AcfScanner scan(xs);
    std::vector<double> r(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) r[k - 1] = scan.r(k);
    return r;
}

std::vector<double> pacf(std::span<const double> xs, std::size_t max_lag) {
    const std::vector<double> r = acf(xs, max_lag);
    // Durbin-Levinson: phi[k][k] is the partial autocorrelation at lag k.
    std::vector<double> phi_prev(max_lag + 1, 0.0), phi(max_lag + 1, 0.0);
    std::vector<double> out(max_lag, 0.0);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = r[k - 1];
        double den = 1.0;
        for (std::size_t j = 1; j < k; ++j) {
            num -= phi_prev[j] * r[k - j - 1];
            den -= phi_prev[j] * r[j - 1];
        }
        if (std::abs(den) < kPivotEps)
            throw NumericalFailure("Durbin-Levinson pivot below tolerance");
        const double pk = num / den;
        phi[k] = pk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = phi_prev[j] - pk * phi_prev[k - j];
        out[k - 1] = pk;
        std::copy(phi.begin(), phi.begin() + static_cast<long>(k) + 1, phi_prev.begin());
    }
    return out;
}

AcfScanner::AcfScanner(std::span<const double> xs) {
    const Summary s = summarize(xs);
    if (!(s.sd > 0.0)) throw ZeroVariance();
    centered_.resize(xs.size());
    for (std::size_t t = 0; t < xs.size(); ++t) centered_[t] = xs[t] - s.mean;
    denom_ = s.variance * static_cast<double>(s.n);
}

double AcfScanner::r(std::size_t lag) const {
    double num = 0.0;
    for (std::size_t t = 0; t + lag < centered_.size(); ++t)
        num += centered_[t] * centered_[t + lag];
    return num / denom_;
}

std::vector<SpectrumPoint> periodogram(std::span<const double> xs) {
    const std::size_t n = xs.size();
    const Summary s = summarize(xs);
    std::vector<cd> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = cd(xs[t] - s.mean, 0.0);
    const std::vector<cd> X = dft(std::move(x));
    std::vector<SpectrumPoint> out(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        out[k - 1].frequency = static_cast<double>(k) / static_cast<double>(n);
        out[k - 1].power = std::norm(X[k]) / static_cast<double>(n);
    }
    return out;
}

}  // namespace cmfts
