#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clawgate {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
    std::optional<double> precision() const;
    std::optional<double> recall() const;
    std::optional<double> f1() const;
    std::optional<double> accuracy() const;

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

struct LabeledDecision {
    bool adversarial = false;
    bool blocked = false;
};

ConfusionMatrix confusion(const std::vector<LabeledDecision>& samples);

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
    std::int64_t k = 0;
    std::int64_t n = 0;
    double z = 0.0;
};

/// Wilson score interval; bounds always stay within [0, 1].
WilsonInterval wilson(std::int64_t k, std::int64_t n, double confidence = 0.95);

/// Continuity-corrected McNemar statistic; 0 when b + c = 0.
double mcnemar(std::int64_t b, std::int64_t c);

/// Standard normal quantile (Acklam's rational approximation).
double normalQuantile(double p);

/// "--" for undefined cells, else fixed three decimals.
std::string metricCell(const std::optional<double>& v);

}  // namespace clawgate
