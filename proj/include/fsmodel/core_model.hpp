#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsmodel/error.hpp"

namespace fsmodel {

enum class FeatureKind { Numeric, BinaryCategorical };
enum class FeatureRole { Hardware, Gluster, Workload };

const char* feature_kind_name(FeatureKind kind);
const char* feature_role_name(FeatureRole role);
std::optional<FeatureKind> feature_kind_from_name(std::string_view name);
std::optional<FeatureRole> feature_role_from_name(std::string_view name);

/// One configurable input of a benchmark campaign. Binary-categorical
/// features carry an ordered label pair: labels[0] encodes to 0.0,
/// labels[1] to 1.0.
struct FeatureDescriptor {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    std::string units;
    FeatureRole role = FeatureRole::Hardware;
    std::array<std::string, 2> labels{};

    static FeatureDescriptor numeric(std::string name, std::string units, FeatureRole role);
    static FeatureDescriptor categorical(std::string name, FeatureRole role,
                                         std::string zero_label, std::string one_label);
};

/// Ordered feature list plus metric names. The feature order is the design
/// matrix column order: coefficient j+1 of any fitted model refers to
/// feature j of its schema.
class FeatureSchema {
public:
    FeatureSchema(std::vector<FeatureDescriptor> features, std::vector<std::string> metrics);

    const std::vector<FeatureDescriptor>& features() const { return features_; }
    const std::vector<std::string>& metrics() const { return metrics_; }
    std::size_t feature_count() const { return features_.size(); }
    std::size_t metric_count() const { return metrics_.size(); }

    std::optional<std::size_t> feature_index(std::string_view name) const;
    std::optional<std::size_t> metric_index(std::string_view name) const;

    /// True when both schemas declare the same features (name, kind, labels)
    /// and metrics in the same order.
    bool compatible_with(const FeatureSchema& other) const;

    /// Fist-cluster hardware/workload campaign: 9 features, 4 metrics.
    static FeatureSchema hardware();
    /// Gluster volume-tuning campaign: block size, cache, translators, O_SYNC.
    static FeatureSchema gluster();
    /// Look up a built-in schema ("hardware" or "gluster").
    static std::optional<FeatureSchema> builtin(std::string_view name);

private:
    std::vector<FeatureDescriptor> features_;
    std::vector<std::string> metrics_;
};

/// One benchmark run: encoded feature values plus measured metrics (MB/s).
struct Record {
    std::vector<double> feature_values;
    std::vector<double> metric_values;
};

/// Immutable table of benchmark records conforming to one schema.
class Dataset {
public:
    Dataset(FeatureSchema schema, std::vector<Record> records);

    const FeatureSchema& schema() const { return schema_; }
    const std::vector<Record>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    /// Column view: all values of one feature across records.
    std::vector<double> feature_column(std::size_t feature_idx) const;
    /// Column view: all values of one metric across records.
    std::vector<double> metric_column(std::size_t metric_idx) const;

private:
    FeatureSchema schema_;
    std::vector<Record> records_;
};

/// Row-major n x (p+1) matrix; column 0 is the all-ones intercept column,
/// column j >= 1 holds feature j-1 in schema order.
struct DesignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

/// Encodes a raw CSV/JSON cell for one feature. Numeric text passes through
/// as its parsed value; categorical labels match case-insensitively.
double encode_value(const FeatureDescriptor& descriptor, std::string_view raw);
/// Encodes an already-numeric value (numeric features only pass through;
/// categorical features accept exactly 0.0 or 1.0).
double encode_value(const FeatureDescriptor& descriptor, double raw);

/// Renders an encoded value back to the text form used in CSV output:
/// categorical 0/1 becomes its label, numeric values use shortest
/// round-trip formatting.
std::string render_value(const FeatureDescriptor& descriptor, double encoded);

DesignMatrix build_design_matrix(const Dataset& dataset);

} // namespace fsmodel
