#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fsmodel/advisor_types.hpp"
#include "fsmodel/core_model.hpp"
#include "fsmodel/evaluation.hpp"
#include "fsmodel/regression.hpp"
#include "fsmodel/synthbench.hpp"

namespace fsmodel {

/// Persisted form of a fitted model: schema, per-metric coefficient vectors
/// (intercept first) and the fit statistics of the training run.
struct ModelDocument {
    static constexpr int kFormatVersion = 1;

    int format_version = kFormatVersion;
    FeatureSchema schema;
    /// metric name -> length p+1 coefficients, schema metric order.
    std::vector<std::pair<std::string, std::vector<double>>> coefficients;
    struct Stats {
        double r2 = 0.0;
        double adj_r2 = 0.0;
        std::size_t n = 0;
        std::size_t k = 0;
    };
    std::vector<std::pair<std::string, Stats>> fit_stats;

    /// Validates lengths and degrees of freedom against the schema.
    void validate() const;
    /// Coefficient-only FittedModel for prediction and scoring.
    FittedModel to_model() const;

    static ModelDocument from_fit(const FittedModel& model,
                                  const std::vector<FitStats>& stats);
};

/// Reads a benchmark CSV: mandatory header naming every schema feature and
/// metric (any order, no extras), one record per row, labels encoded via the
/// schema. Rows are numbered from 1 including the header.
Dataset load_csv(const std::filesystem::path& path, const FeatureSchema& schema);

/// Writes a dataset in the load_csv format: features in schema order, then
/// metrics; categorical values rendered as their labels; numbers in
/// shortest round-trip form.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

void save_model(const ModelDocument& document, const std::filesystem::path& path);
ModelDocument load_model(const std::filesystem::path& path);

/// Schema-only JSON documents (the same encoding embedded in model files).
FeatureSchema load_schema(const std::filesystem::path& path);
void save_schema(const FeatureSchema& schema, const std::filesystem::path& path);

/// Candidate designs for the advisor: JSON array of
/// {name, features{...}, cpu_points, power_watts}.
std::vector<DesignCandidate> load_candidates(const std::filesystem::path& path,
                                             const FeatureSchema& schema);

/// Sidecar ground-truth document written next to generated datasets.
void save_truth(const PlantedTruth& truth, const FeatureSchema& schema,
                const std::filesystem::path& path);

} // namespace fsmodel
