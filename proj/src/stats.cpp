#include "clawgate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace clawgate {

std::optional<double> ConfusionMatrix::precision() const {
    if (tp + fp == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> ConfusionMatrix::recall() const {
    if (tp + fn == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> ConfusionMatrix::f1() const {
    auto p = precision();
    auto r = recall();
    if (!p || !r || *p + *r == 0.0) return std::nullopt;
    return 2.0 * *p * *r / (*p + *r);
}

std::optional<double> ConfusionMatrix::accuracy() const {
    if (total() == 0) return std::nullopt;
    return static_cast<double>(tp + tn) / static_cast<double>(total());
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    tp += other.tp;
    fp += other.fp;
    tn += other.tn;
    fn += other.fn;
    return *this;
}

ConfusionMatrix confusion(const std::vector<LabeledDecision>& samples) {
    ConfusionMatrix m;
    for (const auto& s : samples) {
        if (s.adversarial) {
            (s.blocked ? m.tp : m.fn)++;
        } else {
            (s.blocked ? m.fp : m.tn)++;
        }
    }
    return m;
}

// Acklam's inverse normal CDF approximation, |relative error| < 1.2e-9.
double normalQuantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normalQuantile: p outside (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r, x;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    return x;
}

WilsonInterval wilson(std::int64_t k, std::int64_t n, double confidence) {
    if (n < 1 || k < 0 || k > n) throw std::domain_error("wilson: need 0 <= k <= n, n >= 1");
    // Fixed constant at the default level so paper-cited bounds reproduce
    // without depending on the quantile approximation.
    double z = confidence == 0.95 ? 1.959964 : normalQuantile(1.0 - (1.0 - confidence) / 2.0);
    double kk = static_cast<double>(k);
    double nn = static_cast<double>(n);
    double center = (kk + z * z / 2.0) / (nn + z * z);
    double halfWidth = z / (nn + z * z) * std::sqrt(kk * (nn - kk) / nn + z * z / 4.0);
    WilsonInterval w;
    w.k = k;
    w.n = n;
    w.z = z;
    w.low = std::max(0.0, center - halfWidth);
    w.high = std::min(1.0, center + halfWidth);
    return w;
}

double mcnemar(std::int64_t b, std::int64_t c) {
    if (b < 0 || c < 0) throw std::domain_error("mcnemar: counts must be non-negative");
    if (b + c == 0) return 0.0;
    double diff = std::abs(static_cast<double>(b - c)) - 1.0;  // no clamp at zero
    return diff * diff / static_cast<double>(b + c);
}

std::string metricCell(const std::optional<double>& v) {
    if (!v) return "--";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *v);
    return buf;
}

}  // namespace clawgate
