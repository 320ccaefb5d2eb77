#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsmodel/core_model.hpp"

namespace fsmodel {

struct FeatureImportance {
    std::string feature;
    /// First-order sensitivity V(E(Y|X_i)) / V(Y), clamped to [0, 1].
    double sensitivity = 0.0;
    /// Sensitivity normalized so the column sums to 1 (0 when all
    /// sensitivities vanish).
    double importance = 0.0;
};

struct FeatureBinning {
    std::string feature;
    std::size_t group_count = 0;
    std::vector<std::size_t> group_sizes;
};

struct MetricImportance {
    std::string metric;
    /// Unset when the metric has zero variance in the dataset.
    std::optional<std::vector<FeatureImportance>> ranked;
};

struct ImportanceReport {
    std::vector<MetricImportance> per_metric;
    std::vector<FeatureBinning> binning;
};

/// First-order variance-based sensitivity of one metric to one feature,
/// estimated by grouping records on the feature's value: distinct levels
/// when there are at most 32 of them, otherwise 16 equal-frequency bins.
/// Population (1/n) variances throughout; singleton groups contribute their
/// single value as the group mean.
double sensitivity(const Dataset& dataset, std::string_view feature, std::string_view metric);

/// Sensitivities for every feature and metric, normalized to importances
/// and sorted descending (ties by schema order). Metrics with zero variance
/// are reported as undefined while the rest proceed.
ImportanceReport importance_report(const Dataset& dataset);

} // namespace fsmodel
