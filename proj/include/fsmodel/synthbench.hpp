#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "fsmodel/core_model.hpp"

namespace fsmodel {

enum class Regime { Hardware, Gluster };

const char* regime_name(Regime regime);
std::optional<Regime> regime_from_name(std::string_view name);

/// Synthetic benchmark campaign settings. Noise defaults: 10 MB/s for the
/// hardware regime, 2 MB/s for the gluster regime.
struct GeneratorConfig {
    Regime regime = Regime::Hardware;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double noise_sigma = 10.0;
    bool o_sync = true; // gluster regime only

    static GeneratorConfig hardware(std::size_t n, std::uint64_t seed,
                                    double noise_sigma = 10.0);
    static GeneratorConfig gluster(std::size_t n, std::uint64_t seed, bool o_sync,
                                   double noise_sigma = 2.0);
};

/// Saturating throughput curve of the gluster regime:
///   base(bs)   = t_max_mbps * bs / (bs + b_half_kb)
///   cache term = cache_gain_mbps * min(cache, cache_sat_mb) / cache_sat_mb
///                * (0.5 + 0.5 * read_ahead)        [O_SYNC off only]
struct GlusterCurve {
    double t_max_mbps = 110.0;
    double b_half_kb = 64.0;
    double cache_gain_mbps = 0.0;
    double cache_sat_mb = 256.0;
};

/// Ground truth recorded alongside every generated dataset, in schema
/// metric order: hardware regime plants coefficient vectors, gluster regime
/// plants curve parameters.
struct PlantedTruth {
    Regime regime = Regime::Hardware;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    bool o_sync = true;
    std::vector<std::vector<double>> beta; // hardware: per metric, length p+1
    std::vector<GlusterCurve> curves;      // gluster: per metric
};

/// Simulates a benchmark campaign. Hardware records sample the Fist-cluster
/// grid uniformly and follow the planted linear model exactly (plus Gaussian
/// noise); gluster records follow the saturating block-size/cache curves
/// with throughput floored at 1 MB/s.
std::pair<Dataset, PlantedTruth> generate(const GeneratorConfig& config);

/// Planted hardware coefficients (intercept first) for one metric index.
const std::vector<double>& planted_hardware_beta(std::size_t metric_idx);
/// Planted gluster curve for one metric index.
const GlusterCurve& planted_gluster_curve(std::size_t metric_idx);

/// Grid of values a hardware-schema feature takes during generation.
const std::vector<double>& hardware_grid(std::size_t feature_idx);
/// Mean grid value of a hardware-schema feature (by name); nullopt for
/// names outside the built-in hardware schema.
std::optional<double> hardware_grid_center(std::string_view feature_name);

/// Exact signal variance of one hardware metric over the sampling grid:
/// sum_j beta_j^2 Var(grid_j), features drawn independently.
double hardware_signal_variance(std::size_t metric_idx);
/// Closed-form population R^2 = V / (V + sigma^2) of a hardware metric.
double hardware_population_r2(std::size_t metric_idx, double noise_sigma);
/// Noise level that yields the requested population R^2 for a metric.
double hardware_sigma_for_population_r2(std::size_t metric_idx, double target_r2);

} // namespace fsmodel
