#include "cmfts/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "cmfts/series.hpp"

namespace cmfts {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double population_variance(std::span<const double> xs) { return summarize(xs).variance; }

double sample_variance(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return kNaN;
    return population_variance(xs) * static_cast<double>(n) / static_cast<double>(n - 1);
}

// OLS through column-pivoting QR; false when the design is rank deficient.
bool ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, Eigen::VectorXd& beta) {
    const auto qr = X.colPivHouseholderQr();
    if (qr.rank() < X.cols()) return false;
    beta = qr.solve(y);
    return true;
}

double sum_sq(std::span<const double> xs) {
    return std::inner_product(xs.begin(), xs.end(), xs.begin(), 0.0);
}

// acf lag-1 and sum of the first 10 squared acf values; NaN pair on a
// degenerate series.
std::array<double, 2> acf1_and_acf10(std::span<const double> xs) {
    if (xs.size() < 11) return {kNaN, kNaN};
    try {
        const std::vector<double> r = acf(xs, 10);
        double ss = 0.0;
        for (double v : r) ss += v * v;
        return {r[0], ss};
    } catch (const ZeroVariance&) {
        return {kNaN, kNaN};
    }
}

std::size_t first_zero_lag(const AcfScanner& scan) {
    const std::size_t bound = scan.n() - 2;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (scan.r(k) <= 0.0) return k;
    }
    return bound;
}

// One-step-ahead squared error of Holt's linear-trend recursion.
double holt_sse(std::span<const double> xs, double alpha, double beta) {
    double level = xs[0];
    double trend = xs[1] - xs[0];
    double sse = 0.0;
    for (std::size_t t = 1; t < xs.size(); ++t) {
        const double forecast = level + trend;
        const double err = xs[t] - forecast;
        sse += err * err;
        if (!std::isfinite(sse)) return std::numeric_limits<double>::infinity();
        const double new_level = alpha * xs[t] + (1.0 - alpha) * (level + trend);
        trend = beta * (new_level - level) + (1.0 - beta) * trend;
        level = new_level;
    }
    return sse;
}

struct Point2 {
    double a, b;
};

// Nelder-Mead on a 2-d box; coordinates outside the box score +inf so the
// simplex stays feasible.
Point2 nelder_mead_box(const std::function<double(double, double)>& f, Point2 start, double lo,
                       double hi, int max_iter, double tol) {
    auto eval = [&](const Point2& p) {
        if (p.a < lo || p.a > hi || p.b < lo || p.b > hi)
            return std::numeric_limits<double>::infinity();
        return f(p.a, p.b);
    };
    const double step = 0.1;
    std::array<Point2, 3> v{start,
                            Point2{start.a + (start.a + step <= hi ? step : -step), start.b},
                            Point2{start.a, start.b + (start.b + step <= hi ? step : -step)}};
    std::array<double, 3> fv{eval(v[0]), eval(v[1]), eval(v[2])};
    for (int it = 0; it < max_iter; ++it) {
        std::array<int, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int x, int y) { return fv[x] < fv[y]; });
        const Point2 best = v[ord[0]], second = v[ord[1]], worst = v[ord[2]];
        const double fb = fv[ord[0]], fs = fv[ord[1]], fw = fv[ord[2]];
        if (std::isfinite(fw) && fw - fb < tol) break;
        const Point2 centroid{0.5 * (best.a + second.a), 0.5 * (best.b + second.b)};
        const Point2 refl{centroid.a + (centroid.a - worst.a), centroid.b + (centroid.b - worst.b)};
        const double fr = eval(refl);
        Point2 next = refl;
        double fnext = fr;
        if (fr < fb) {
            const Point2 exp_{centroid.a + 2.0 * (centroid.a - worst.a),
                              centroid.b + 2.0 * (centroid.b - worst.b)};
            const double fe = eval(exp_);
            if (fe < fr) {
                next = exp_;
                fnext = fe;
            }
        } else if (fr >= fs) {
            const Point2 contr{centroid.a + 0.5 * (worst.a - centroid.a),
                               centroid.b + 0.5 * (worst.b - centroid.b)};
            const double fc = eval(contr);
            if (fc < fw) {
                next = contr;
                fnext = fc;
            } else {
                // shrink toward the best vertex
                for (int i : {1, 2}) {
                    v[ord[i]] = Point2{best.a + 0.5 * (v[ord[i]].a - best.a),
                                       best.b + 0.5 * (v[ord[i]].b - best.b)};
                    fv[ord[i]] = eval(v[ord[i]]);
                }
                continue;
            }
        }
        v[ord[2]] = next;
        fv[ord[2]] = fnext;
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    return v[static_cast<std::size_t>(it - fv.begin())];
}

}  // namespace

AcfFeatures acf_features(std::span<const double> xs) {
    AcfFeatures f{};
    const auto raw = acf1_and_acf10(xs);
    f.x_acf1 = raw[0];
    f.x_acf10 = raw[1];
    f.ac_9 = kNaN;
    if (xs.size() >= 11) {
        try {
            f.ac_9 = acf(xs, 9).back();
        } catch (const ZeroVariance&) {
        }
    }
    const std::vector<double> d1 = difference(xs);
    const auto a1 = acf1_and_acf10(d1);
    f.diff1_acf1 = a1[0];
    f.diff1_acf10 = a1[1];
    const std::vector<double> d2 = difference(d1);
    const auto a2 = acf1_and_acf10(d2);
    f.diff2_acf1 = a2[0];
    f.diff2_acf10 = a2[1];
    return f;
}

namespace {
double pacf5_sum(std::span<const double> xs) {
    if (xs.size() < 6) return kNaN;
    try {
        const std::vector<double> p = pacf(xs, 5);
        double ss = 0.0;
        for (double v : p) ss += v * v;
        return ss;
    } catch (const Error&) {
        return kNaN;
    }
}
}  // namespace

PacfFeatures pacf_features(std::span<const double> xs) {
    PacfFeatures f{};
    f.x_pacf5 = pacf5_sum(xs);
    const std::vector<double> d1 = difference(xs);
    f.diff1x_pacf5 = pacf5_sum(d1);
    const std::vector<double> d2 = difference(d1);
    f.diff2x_pacf5 = pacf5_sum(d2);
    return f;
}

AcfTimings acf_timings(std::span<const double> xs) {
    AcfTimings t{kNaN, kNaN};
    if (xs.size() < 3) return t;
    try {
        const AcfScanner scan(xs);
        const std::size_t bound = xs.size() - 2;
        double r_prev = 1.0;  // r_0
        double r_cur = scan.r(1);
        std::size_t firstmin = bound;
        for (std::size_t k = 1; k <= bound; ++k) {
            const double r_next = scan.r(k + 1);
            if (r_prev > r_cur && r_cur < r_next) {
                firstmin = k;
                break;
            }
            r_prev = r_cur;
            r_cur = r_next;
        }
        t.firstmin_ac = static_cast<double>(firstmin);
        t.firstzero_ac = static_cast<double>(first_zero_lag(scan));
    } catch (const ZeroVariance&) {
    }
    return t;
}

ShiftFeatures shift_features(std::span<const double> xs, const WindowParams& p) {
    ShiftFeatures f{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    const std::size_t w = static_cast<std::size_t>(p.width);
    const std::size_t n = xs.size();
    if (n < 2 * w) return f;
    constexpr double kSdFloor = 1e-8;
    double max_kl = -1.0, max_level = -1.0, max_var = -1.0;
    std::size_t at_kl = 0, at_level = 0, at_var = 0;
    for (std::size_t t = 0; t + 2 * w <= n; ++t) {
        const Summary s1 = summarize(xs.subspan(t, w));
        const Summary s2 = summarize(xs.subspan(t + w, w));
        const double v1 = s1.variance * static_cast<double>(w) / static_cast<double>(w - 1);
        const double v2 = s2.variance * static_cast<double>(w) / static_cast<double>(w - 1);
        const double level = std::abs(s2.mean - s1.mean);
        const double var = std::abs(v2 - v1);
        const double sd1 = std::max(std::sqrt(v1), kSdFloor);
        const double sd2 = std::max(std::sqrt(v2), kSdFloor);
        const double dm = s1.mean - s2.mean;
        const double kl =
            std::log(sd2 / sd1) + (sd1 * sd1 + dm * dm) / (2.0 * sd2 * sd2) - 0.5;
        if (level > max_level) {
            max_level = level;
            at_level = t + w + 1;
        }
        if (var > max_var) {
            max_var = var;
            at_var = t + w + 1;
        }
        if (kl > max_kl) {
            max_kl = kl;
            at_kl = t + w + 1;
        }
    }
    f.max_kl_shift = max_kl;
    f.time_kl_shift = static_cast<double>(at_kl);
    f.max_level_shift = max_level;
    f.time_level_shift = static_cast<double>(at_level);
    f.max_var_shift = max_var;
    f.time_var_shift = static_cast<double>(at_var);
    return f;
}

RollingMoments rolling_moments(std::span<const double> xs, const WindowParams& p) {
    RollingMoments m{kNaN, kNaN};
    const std::size_t w = static_cast<std::size_t>(p.width);
    const std::size_t tiles = xs.size() / w;
    if (tiles < 2) return m;
    std::vector<double> means(tiles), vars(tiles);
    for (std::size_t i = 0; i < tiles; ++i) {
        const auto tile = xs.subspan(i * w, w);
        means[i] = summarize(tile).mean;
        vars[i] = sample_variance(tile);
    }
    m.stability = sample_variance(means);
    m.lumpiness = sample_variance(vars);
    return m;
}

double crossing_points(std::span<const double> xs) {
    if (xs.size() < 2) return kNaN;
    const double med = median_of(std::vector<double>(xs.begin(), xs.end()));
    std::size_t crossings = 0;
    for (std::size_t t = 0; t + 1 < xs.size(); ++t) {
        if ((xs[t] <= med) != (xs[t + 1] <= med)) ++crossings;
    }
    return static_cast<double>(crossings);
}

double flat_spots(std::span<const double> xs) {
    if (xs.size() < 2) return kNaN;
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it, range = *hi_it - *lo_it;
    auto bin_of = [&](double v) {
        if (!(range > 0.0)) return 0;
        return std::clamp(static_cast<int>((v - lo) / range * 10.0), 0, 9);
    };
    std::size_t best = 1, run = 1;
    for (std::size_t t = 1; t < xs.size(); ++t) {
        if (bin_of(xs[t]) == bin_of(xs[t - 1])) {
            ++run;
        } else {
            run = 1;
        }
        best = std::max(best, run);
    }
    return static_cast<double>(best);
}

double nonlinearity(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 10) return kNaN;
    std::vector<double> z;
    try {
        z = zscore(xs);
    } catch (const ZeroVariance&) {
        return kNaN;
    }
    const auto T = static_cast<Eigen::Index>(n - 1);
    Eigen::MatrixXd X(T, 2);
    Eigen::VectorXd y(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        const double lag = z[static_cast<std::size_t>(t)];
        X(t, 0) = 1.0;
        X(t, 1) = lag;
        y(t) = z[static_cast<std::size_t>(t) + 1];
    }
    Eigen::VectorXd beta;
    if (!ols(X, y, beta)) return kNaN;
    const Eigen::VectorXd u = y - X * beta;
    const double sst = u.squaredNorm();
    if (!(sst > 0.0)) return kNaN;
    Eigen::MatrixXd A(T, 4);
    for (Eigen::Index t = 0; t < T; ++t) {
        const double lag = X(t, 1);
        A(t, 0) = 1.0;
        A(t, 1) = lag;
        A(t, 2) = lag * lag;
        A(t, 3) = lag * lag * lag;
    }
    Eigen::VectorXd gamma;
    if (!ols(A, u, gamma)) return kNaN;
    const double sse = (u - A * gamma).squaredNorm();
    const double r2 = 1.0 - sse / sst;
    const double chi2 = static_cast<double>(T) * r2;
    return 10.0 * chi2 / static_cast<double>(T);
}

double embed2_incircle(std::span<const double> xs) {
    if (xs.size() < 3) return kNaN;
    std::vector<double> z;
    try {
        z = zscore(xs);
    } catch (const ZeroVariance&) {
        return kNaN;
    }
    std::size_t inside = 0;
    for (std::size_t t = 0; t + 1 < z.size(); ++t) {
        if (z[t] * z[t] + z[t + 1] * z[t + 1] < 1.0) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(z.size() - 1);
}

double spreadrandomlocal_meantaul(std::span<const double> xs, const WindowParams& p) {
    const std::size_t seg = static_cast<std::size_t>(p.segment_len);
    if (xs.size() <= seg) return kNaN;
    std::mt19937_64 rng(p.rng_seed);
    std::uniform_int_distribution<std::size_t> start(0, xs.size() - seg);
    constexpr int kSegments = 100;
    double acc = 0.0;
    for (int i = 0; i < kSegments; ++i) {
        const auto window = xs.subspan(start(rng), seg);
        double tau = static_cast<double>(seg - 2);  // scan bound for flat segments
        try {
            const AcfScanner scan(window);
            tau = static_cast<double>(first_zero_lag(scan));
        } catch (const ZeroVariance&) {
        }
        acc += tau;
    }
    return acc / kSegments;
}

double std1st_der(std::span<const double> xs) {
    if (xs.size() < 3) return kNaN;
    const std::vector<double> d = difference(xs);
    return sample_sd(d);
}

double trev_num(std::span<const double> xs) {
    if (xs.size() < 2) return kNaN;
    double acc = 0.0;
    for (std::size_t t = 0; t + 1 < xs.size(); ++t) {
        const double d = xs[t + 1] - xs[t];
        acc += d * d * d;
    }
    return acc / static_cast<double>(xs.size() - 1);
}

HoltParameters holt_parameters(std::span<const double> xs) {
    if (xs.size() < 10) return {kNaN, kNaN};
    constexpr double kLo = 1e-4, kHi = 0.9999;
    auto objective = [&](double a, double b) { return holt_sse(xs, a, b); };
    // multi-start: a mid-box start plus corner restarts, later starts win ties
    const std::array<Point2, 4> starts{Point2{0.3, 0.1}, Point2{kLo, kLo}, Point2{kLo, kHi},
                                       Point2{kHi, kHi}};
    Point2 best{kNaN, kNaN};
    double best_sse = std::numeric_limits<double>::infinity();
    for (const Point2& s : starts) {
        const Point2 candidate = nelder_mead_box(objective, s, kLo, kHi, 500, 1e-8);
        const double sse = objective(candidate.a, candidate.b);
        if (sse <= best_sse) {
            best_sse = sse;
            best = candidate;
        }
    }
    if (!std::isfinite(best_sse)) return {kNaN, kNaN};
    return {best.a, best.b};
}

SeasonalityMeta seasonality_meta() { return {1.0, 1.0}; }

DecompResult decompose_trend(std::span<const double> xs) {
    const std::size_t n = xs.size();
    DecompResult d;
    d.var_x = population_variance(xs);
    d.var_r = kNaN;
    // window: nearest odd integer to n/10, at least 5
    long w = 2 * std::lround((static_cast<double>(n) / 10.0 - 1.0) / 2.0) + 1;
    w = std::max<long>(w, 5);
    const std::size_t half = static_cast<std::size_t>(w) / 2;
    d.trend_component.resize(n);
    d.remainder.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t h = std::min({half, i, n - 1 - i});
        double acc = 0.0;
        for (std::size_t j = i - h; j <= i + h; ++j) acc += xs[j];
        d.trend_component[i] = acc / static_cast<double>(2 * h + 1);
        d.remainder[i] = xs[i] - d.trend_component[i];
    }
    d.var_r = population_variance(d.remainder);
    return d;
}

DecompositionFeatures decomposition_features(std::span<const double> xs) {
    DecompositionFeatures f{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    const std::size_t n = xs.size();
    if (n < 12) return f;
    const DecompResult d = decompose_trend(xs);
    if (!(d.var_x > 0.0)) return f;
    f.trend = std::max(0.0, 1.0 - d.var_r / d.var_x);

    // spike: variance across t of the leave-one-out variances of the remainder
    {
        const std::vector<double>& r = d.remainder;
        const double s1 = std::accumulate(r.begin(), r.end(), 0.0);
        const double s2 = sum_sq(r);
        std::vector<double> loo(n);
        const double m = static_cast<double>(n - 1);
        for (std::size_t t = 0; t < n; ++t) {
            const double mean_t = (s1 - r[t]) / m;
            const double ss_t = s2 - r[t] * r[t] - m * mean_t * mean_t;
            loo[t] = ss_t / (m - 1.0);
        }
        f.spike = sample_variance(loo);
    }

    // linearity/curvature: coefficients on an orthonormal basis of degree 1
    // and 2 in time, both orthogonal to the constant
    {
        std::vector<double> u(n), v(n);
        const double mid = (static_cast<double>(n) - 1.0) / 2.0;
        for (std::size_t t = 0; t < n; ++t) u[t] = static_cast<double>(t) - mid;
        double u2_mean = sum_sq(u) / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) v[t] = u[t] * u[t] - u2_mean;
        const double nu = std::sqrt(sum_sq(u));
        const double nv = std::sqrt(sum_sq(v));
        double lin = 0.0, curv = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            lin += d.trend_component[t] * u[t] / nu;
            curv += d.trend_component[t] * v[t] / nv;
        }
        f.linearity = lin;
        f.curvature = curv;
    }

    const auto e = acf1_and_acf10(d.remainder);
    f.e_acf1 = e[0];
    f.e_acf10 = e[1];
    return f;
}

double walker_propcross(std::span<const double> xs, const WindowParams& p) {
    const std::size_t n = xs.size();
    if (n < 3) return kNaN;
    double w = xs[0];
    std::size_t crossings = 0;
    double prev_gap = 0.0;  // w_1 - x_1
    for (std::size_t t = 1; t < n; ++t) {
        w += p.walker_frac * (xs[t] - w);
        const double gap = w - xs[t];
        if (prev_gap * gap < 0.0) ++crossings;
        prev_gap = gap;
    }
    return static_cast<double>(crossings) / static_cast<double>(n - 1);
}

double hurst(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 32) return kNaN;
    if (!(summarize(xs).sd > 0.0)) return kNaN;
    // log-spaced block sizes from 8 to n/2
    constexpr int kGrid = 12;
    std::vector<std::size_t> sizes;
    const double lo = std::log(8.0), hi = std::log(static_cast<double>(n) / 2.0);
    for (int g = 0; g < kGrid; ++g) {
        const double s = std::exp(lo + (hi - lo) * g / (kGrid - 1));
        const auto size = static_cast<std::size_t>(std::lround(s));
        if (sizes.empty() || sizes.back() != size) sizes.push_back(size);
    }
    std::vector<double> log_s, log_rs;
    for (const std::size_t s : sizes) {
        const std::size_t blocks = n / s;
        double acc = 0.0;
        std::size_t cnt = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto block = xs.subspan(b * s, s);
            const Summary sm = summarize(block);
            if (!(sm.sd > 0.0)) continue;
            double cum = 0.0, zmin = 0.0, zmax = 0.0;
            for (double v : block) {
                cum += v - sm.mean;
                zmin = std::min(zmin, cum);
                zmax = std::max(zmax, cum);
            }
            const double range = zmax - zmin;
            if (range > 0.0) {
                acc += range / sm.sd;
                ++cnt;
            }
        }
        if (cnt > 0) {
            log_s.push_back(std::log(static_cast<double>(s)));
            log_rs.push_back(std::log(acc / static_cast<double>(cnt)));
        }
    }
    if (log_s.size() < 2) return kNaN;
    const Summary ms = summarize(log_s);
    const Summary mr = summarize(log_rs);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < log_s.size(); ++i) {
        num += (log_s[i] - ms.mean) * (log_rs[i] - mr.mean);
        den += (log_s[i] - ms.mean) * (log_s[i] - ms.mean);
    }
    if (!(den > 0.0)) return kNaN;
    return std::clamp(num / den, 0.0, 1.0);
}

double unitroot_kpss(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 10) return kNaN;
    const double nd = static_cast<double>(n);
    // residuals of x on (1, t)
    const double t_mean = (nd + 1.0) / 2.0;
    const Summary s = summarize(xs);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dt = static_cast<double>(t + 1) - t_mean;
        num += dt * (xs[t] - s.mean);
        den += dt * dt;
    }
    const double slope = num / den;
    std::vector<double> e(n);
    for (std::size_t t = 0; t < n; ++t)
        e[t] = xs[t] - s.mean - slope * (static_cast<double>(t + 1) - t_mean);
    double gamma0 = 0.0, gamma1 = 0.0;
    for (std::size_t t = 0; t < n; ++t) gamma0 += e[t] * e[t];
    for (std::size_t t = 1; t < n; ++t) gamma1 += e[t] * e[t - 1];
    gamma0 /= nd;
    gamma1 /= nd;
    const double omega2 = gamma0 + gamma1;  // Bartlett, truncation lag 1
    if (!(omega2 > 0.0)) return kNaN;
    double cum = 0.0, s2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        cum += e[t];
        s2 += cum * cum;
    }
    return s2 / (nd * nd * omega2);
}

double unitroot_pp(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 10) return kNaN;
    const std::size_t T = n - 1;
    const double Td = static_cast<double>(T);
    double lag_mean = 0.0, y_mean = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        lag_mean += xs[t];
        y_mean += xs[t + 1];
    }
    lag_mean /= Td;
    y_mean /= Td;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        sxy += (xs[t] - lag_mean) * (xs[t + 1] - y_mean);
        sxx += (xs[t] - lag_mean) * (xs[t] - lag_mean);
    }
    if (!(sxx > 0.0)) return kNaN;
    const double rho = sxy / sxx;
    const double intercept = y_mean - rho * lag_mean;
    std::vector<double> e(T);
    for (std::size_t t = 0; t < T; ++t) e[t] = xs[t + 1] - intercept - rho * xs[t];
    double gamma0 = 0.0, gamma1 = 0.0;
    for (std::size_t t = 0; t < T; ++t) gamma0 += e[t] * e[t];
    for (std::size_t t = 1; t < T; ++t) gamma1 += e[t] * e[t - 1];
    gamma0 /= Td;
    gamma1 /= Td;
    const double lambda2 = gamma0 + gamma1;
    return Td * (rho - 1.0) - (Td * Td / sxx) * (lambda2 - gamma0) / 2.0;
}

double histogram_mode(std::span<const double> xs) {
    if (xs.empty()) return kNaN;
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) return lo;
    std::array<int, 10> counts{};
    for (double v : xs) {
        const int bin = std::clamp(static_cast<int>((v - lo) / (hi - lo) * 10.0), 0, 9);
        ++counts[static_cast<std::size_t>(bin)];
    }
    const auto best = std::max_element(counts.begin(), counts.end());
    const double idx = static_cast<double>(best - counts.begin());
    return lo + (idx + 0.5) * (hi - lo) / 10.0;
}

double localsimple_taures(std::span<const double> xs, const WindowParams& p) {
    const std::size_t L = static_cast<std::size_t>(p.train_len);
    const std::size_t n = xs.size();
    if (n < L + 3) return kNaN;
    std::vector<double> resid(n - L);
    for (std::size_t t = L; t < n; ++t) {
        double m = 0.0;
        for (std::size_t k = t - L; k < t; ++k) m += xs[k];
        resid[t - L] = xs[t] - m / static_cast<double>(L);
    }
    try {
        const AcfScanner scan(resid);
        return static_cast<double>(first_zero_lag(scan));
    } catch (const ZeroVariance&) {
        return kNaN;
    }
}

double outlierinclude_mdrmd(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 10) return kNaN;
    std::vector<double> z;
    try {
        z = zscore(xs);
    } catch (const ZeroVariance&) {
        return kNaN;
    }
    double max_abs = 0.0;
    for (double v : z) max_abs = std::max(max_abs, std::abs(v));
    std::vector<double> medians;
    std::vector<double> positions;
    for (double th = 0.0; th <= max_abs; th += 0.01) {
        positions.clear();
        for (std::size_t t = 0; t < n; ++t) {
            if (std::abs(z[t]) >= th)
                positions.push_back(static_cast<double>(t + 1) / static_cast<double>(n));
        }
        if (!positions.empty()) medians.push_back(median_of(positions));
    }
    if (medians.empty()) return kNaN;
    return median_of(std::move(medians)) - 0.5;
}

double motiftwo_entro3(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 3) return kNaN;
    const double mean = summarize(xs).mean;
    std::array<int, 8> counts{};
    for (std::size_t t = 0; t + 3 <= n; ++t) {
        int word = 0;
        for (std::size_t k = 0; k < 3; ++k) word = word * 2 + (xs[t + k] > mean ? 1 : 0);
        ++counts[static_cast<std::size_t>(word)];
    }
    const double total = static_cast<double>(n - 2);
    double h = 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        const double q = static_cast<double>(c) / total;
        h -= q * std::log(q);
    }
    return h;
}

}  // namespace cmfts
