#include "fsmodel/importance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace fsmodel {

namespace {

constexpr std::size_t kMaxDistinctLevels = 32;
constexpr std::size_t kEqualFrequencyBins = 16;
constexpr double kSensitivityNoiseTolerance = 0.02;

// Group assignment for one feature: record index -> group id, plus sizes.
struct Grouping {
    std::vector<std::size_t> group_of;
    std::vector<std::size_t> sizes;
};

Grouping group_by_feature(const Dataset& dataset, std::size_t feature_idx) {
    const std::vector<double> column = dataset.feature_column(feature_idx);
    const std::size_t n = column.size();

    std::map<double, std::size_t> levels;
    for (double v : column) {
        levels.emplace(v, levels.size());
        if (levels.size() > kMaxDistinctLevels) break;
    }

    Grouping g;
    g.group_of.assign(n, 0);
    if (levels.size() <= kMaxDistinctLevels) {
        // Re-number levels in ascending value order so reports are stable.
        std::size_t next = 0;
        for (auto& [value, id] : levels) id = next++;
        g.sizes.assign(levels.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t id = levels.at(column[i]);
            g.group_of[i] = id;
            ++g.sizes[id];
        }
        return g;
    }

    // Too many levels: 16 equal-frequency bins cut by rank.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
    g.sizes.assign(kEqualFrequencyBins, 0);
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t bin = rank * kEqualFrequencyBins / n;
        g.group_of[order[rank]] = bin;
        ++g.sizes[bin];
    }
    return g;
}

// V(E(Y|group)) / V(Y) with population variances; NaN-free by construction.
double sensitivity_from_grouping(const Grouping& g, const std::vector<double>& y) {
    const std::size_t n = y.size();
    const double n_real = static_cast<double>(n);
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n_real;
    double var_y = 0.0;
    for (double v : y) var_y += (v - mean) * (v - mean);
    var_y /= n_real;
    if (var_y == 0.0) return -1.0; // sentinel: caller maps to ZeroVariance

    std::vector<double> group_sum(g.sizes.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) group_sum[g.group_of[i]] += y[i];
    double var_between = 0.0;
    for (std::size_t gi = 0; gi < g.sizes.size(); ++gi) {
        if (g.sizes[gi] == 0) continue;
        const double group_mean = group_sum[gi] / static_cast<double>(g.sizes[gi]);
        const double weight = static_cast<double>(g.sizes[gi]) / n_real;
        var_between += weight * (group_mean - mean) * (group_mean - mean);
    }

    double s = var_between / var_y;
    // Estimation noise may push slightly past 1; clamp once it is within
    // tolerance, otherwise the estimate itself is broken.
    if (s > 1.0 + kSensitivityNoiseTolerance)
        raise(ErrorKind::InvalidConfig,
              "sensitivity estimate " + std::to_string(s) + " exceeds 1 beyond tolerance");
    return std::clamp(s, 0.0, 1.0);
}

} // namespace

double sensitivity(const Dataset& dataset, std::string_view feature, std::string_view metric) {
    const auto fi = dataset.schema().feature_index(feature);
    if (!fi)
        raise(ErrorKind::UnknownFeature, "unknown feature '" + std::string(feature) + "'");
    const auto mi = dataset.schema().metric_index(metric);
    if (!mi)
        raise(ErrorKind::UnknownMetric, "unknown metric '" + std::string(metric) + "'");
    if (dataset.size() == 0)
        raise(ErrorKind::EmptyDataset, "cannot compute sensitivity on an empty dataset");

    const Grouping g = group_by_feature(dataset, *fi);
    const double s = sensitivity_from_grouping(g, dataset.metric_column(*mi));
    if (s < 0.0)
        raise(ErrorKind::ZeroVariance,
              "metric '" + std::string(metric) + "' has zero variance");
    return s;
}

ImportanceReport importance_report(const Dataset& dataset) {
    const FeatureSchema& schema = dataset.schema();
    if (schema.feature_count() < 2)
        raise(ErrorKind::SchemaInvalid, "importance ranking needs at least 2 features");
    if (dataset.size() == 0)
        raise(ErrorKind::EmptyDataset, "cannot rank features of an empty dataset");

    std::vector<Grouping> groupings;
    groupings.reserve(schema.feature_count());
    ImportanceReport report;
    for (std::size_t f = 0; f < schema.feature_count(); ++f) {
        groupings.push_back(group_by_feature(dataset, f));
        FeatureBinning b;
        b.feature = schema.features()[f].name;
        b.group_count = groupings.back().sizes.size();
        b.group_sizes = groupings.back().sizes;
        report.binning.push_back(std::move(b));
    }

    for (std::size_t m = 0; m < schema.metric_count(); ++m) {
        const std::vector<double> y = dataset.metric_column(m);
        MetricImportance mi;
        mi.metric = schema.metrics()[m];

        std::vector<FeatureImportance> entries;
        bool degenerate = false;
        double total = 0.0;
        for (std::size_t f = 0; f < schema.feature_count(); ++f) {
            const double s = sensitivity_from_grouping(groupings[f], y);
            if (s < 0.0) {
                degenerate = true;
                break;
            }
            entries.push_back({schema.features()[f].name, s, 0.0});
            total += s;
        }
        if (!degenerate) {
            if (total > 0.0)
                for (auto& e : entries) e.importance = e.sensitivity / total;
            std::stable_sort(entries.begin(), entries.end(),
                             [](const FeatureImportance& a, const FeatureImportance& b) {
                                 return a.importance > b.importance;
                             });
            mi.ranked = std::move(entries);
        }
        report.per_metric.push_back(std::move(mi));
    }
    return report;
}

} // namespace fsmodel
