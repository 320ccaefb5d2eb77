#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsmodel/core_model.hpp"
#include "fsmodel/regression.hpp"

namespace fsmodel {

/// Goodness-of-fit summary: TSS = sum (y - ybar)^2, SSE = sum (y - yhat)^2,
/// SSR = sum (yhat - ybar)^2, R^2 = 1 - SSE/TSS, adjusted per the usual
/// (n-1)/(n-k-1) correction.
struct FitStats {
    double tss = 0.0;
    double sse = 0.0;
    double ssr = 0.0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;
};

FitStats fit_stats(std::span<const double> y, std::span<const double> y_hat, std::size_t k);

/// Stats of a model evaluated on a dataset (its own training data or unseen
/// records). Returned in schema metric order.
std::vector<FitStats> evaluate_model(const FittedModel& model, const Dataset& dataset);

struct MetricCrossVal {
    std::string metric;
    double train_r2 = 0.0;
    double train_adj_r2 = 0.0;
    /// Out-of-sample R^2 with TSS taken around the validation subset's own
    /// mean; may be negative and is never clamped.
    double validation_r2 = 0.0;
};

struct CrossValReport {
    std::size_t train_size = 0;
    std::size_t validation_size = 0;
    double train_fraction = 0.0;
    std::uint64_t seed = 0;
    std::vector<MetricCrossVal> per_metric;
};

/// Random train/validation split (Fisher-Yates shuffle seeded with the given
/// value, first round(train_fraction * n) records train), fit on the training
/// partition, out-of-sample R^2 on the rest.
CrossValReport cross_validate(const Dataset& dataset, double train_fraction, std::uint64_t seed);

} // namespace fsmodel
