#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fsmodel/core_model.hpp"

namespace fsmodel {

/// Per-metric least-squares coefficients over one schema. Models produced
/// by fit() also carry training residuals; models restored from disk do not.
class FittedModel {
public:
    /// Coefficient-only model (e.g. loaded from a model document).
    FittedModel(FeatureSchema schema, std::vector<std::vector<double>> beta_per_metric);
    /// Full fit result with residual vectors aligned to the training records.
    FittedModel(FeatureSchema schema, std::vector<std::vector<double>> beta_per_metric,
                std::vector<std::vector<double>> residuals_per_metric);

    const FeatureSchema& schema() const { return schema_; }

    /// Coefficient vector for a metric, intercept first (length p+1).
    const std::vector<double>& beta(std::string_view metric) const;
    const std::vector<double>& beta(std::size_t metric_idx) const { return beta_[metric_idx]; }

    bool has_residuals() const { return !residuals_.empty(); }
    const std::vector<double>& residuals(std::string_view metric) const;
    const std::vector<double>& residuals(std::size_t metric_idx) const {
        return residuals_[metric_idx];
    }

    /// Intercept plus dot product; negative extrapolations are returned
    /// unclamped (callers decide whether to warn).
    double predict(std::span<const double> feature_values, std::string_view metric) const;

private:
    std::size_t metric_index_or_throw(std::string_view metric) const;

    FeatureSchema schema_;
    std::vector<std::vector<double>> beta_;
    std::vector<std::vector<double>> residuals_;
};

/// Fits one linear model per metric by Householder QR over a shared
/// decomposition of the design matrix. Near-zero pivots (relative tolerance
/// 1e-10 of the largest pivot) flag the first linearly dependent column.
FittedModel fit(const Dataset& dataset);

/// beta0 + sum_j beta_j * x_j for a raw coefficient vector (intercept first).
double predict_with_beta(std::span<const double> beta, std::span<const double> feature_values);

} // namespace fsmodel
