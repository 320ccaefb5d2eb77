#include "fsmodel/synthbench.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fsmodel/prng.hpp"
#include "fsmodel/regression.hpp"

namespace fsmodel {

const char* regime_name(Regime regime) {
    return regime == Regime::Hardware ? "hardware" : "gluster";
}

std::optional<Regime> regime_from_name(std::string_view name) {
    if (name == "hardware") return Regime::Hardware;
    if (name == "gluster") return Regime::Gluster;
    return std::nullopt;
}

GeneratorConfig GeneratorConfig::hardware(std::size_t n, std::uint64_t seed,
                                          double noise_sigma) {
    GeneratorConfig c;
    c.regime = Regime::Hardware;
    c.n = n;
    c.seed = seed;
    c.noise_sigma = noise_sigma;
    return c;
}

GeneratorConfig GeneratorConfig::gluster(std::size_t n, std::uint64_t seed, bool o_sync,
                                         double noise_sigma) {
    GeneratorConfig c;
    c.regime = Regime::Gluster;
    c.n = n;
    c.seed = seed;
    c.noise_sigma = noise_sigma;
    c.o_sync = o_sync;
    return c;
}

namespace {

// Planted coefficients per metric, intercept first, hardware schema order:
// network, disk_read_speed, disk_write_speed, base_filesystem, num_servers,
// num_clients, striping, replication, workload_size (GB). Disk speed
// coefficients are exactly zero.
const std::array<std::vector<double>, 4> kHardwareBeta = {{
    // write_mbps
    {-120.485, 271.936, 0.0, 0.0, 4.419, 30.729, -34.359, 10.380, -59.182, -0.16},
    // read_mbps
    {-142.931, 237.502, 0.0, 0.0, -4.406, 15.890, -21.094, 3.508, -21.058, -0.004},
    // rand_read_mbps
    {-39.676, 162.003, 0.0, 0.0, -17.888, 14.204, -16.546, -0.961, -22.799, -0.003},
    // rand_write_mbps
    {-114.066, 230.091, 0.0, 0.0, -2.190, 34.241, -39.060, 13.538, -60.986, -0.13},
}};

// Curve parameters per metric. Only the read-family metrics gain from the
// cache when O_SYNC is off; the gains are calibrated to land the importance
// shares on the reported block-size/cache split (0.78/0.22 for read,
// 0.95/0.05 for random read).
const std::array<GlusterCurve, 4> kGlusterCurves = {{
    {110.0, 64.0, 0.0, 256.0},  // write_mbps
    {110.0, 64.0, 90.0, 256.0}, // read_mbps
    {110.0, 64.0, 40.0, 256.0}, // rand_read_mbps
    {110.0, 64.0, 0.0, 256.0},  // rand_write_mbps
}};

// Fist-cluster sampling grid, hardware schema order.
const std::array<std::vector<double>, 9> kHardwareGrid = {{
    {0.0, 1.0},                          // network
    {117.0, 81.0},                       // disk_read_speed
    {148.0, 100.0},                      // disk_write_speed
    {0.0, 1.0},                          // base_filesystem
    {1.0, 2.0, 3.0, 4.0, 5.0},           // num_servers
    {1.0, 2.0, 3.0, 4.0, 5.0},           // num_clients
    {1.0, 2.0, 3.0, 4.0, 5.0},           // striping
    {1.0, 2.0, 3.0, 4.0, 5.0},           // replication
    {0.1, 0.2, 0.5, 0.7, 1.0, 10.0, 20.0}, // workload_size (GB)
}};

const std::vector<double> kBlockSizesKb = {2,    4,    8,    16,   32,   64,  128,
                                           256,  512,  1024, 2048, 4096, 8192};
const std::vector<double> kCacheSizesMb = {2, 4, 8, 16, 32, 64, 128, 256};

constexpr double kThroughputFloorMbps = 1.0;

double pick(SplitMix64& rng, const std::vector<double>& values) {
    return values[static_cast<std::size_t>(rng.next_below(values.size()))];
}

double grid_mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double grid_variance(const std::vector<double>& values) {
    const double mean = grid_mean(values);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return var / static_cast<double>(values.size());
}

void validate(const GeneratorConfig& config) {
    if (config.n == 0)
        raise(ErrorKind::InvalidConfig, "generator needs n >= 1");
    if (!(std::isfinite(config.noise_sigma) && config.noise_sigma >= 0.0))
        raise(ErrorKind::InvalidConfig, "noise sigma must be finite and >= 0");
}

std::pair<Dataset, PlantedTruth> generate_hardware(const GeneratorConfig& config) {
    const FeatureSchema schema = FeatureSchema::hardware();
    SplitMix64 rng(config.seed);
    std::vector<Record> records;
    records.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        Record r;
        r.feature_values.reserve(kHardwareGrid.size());
        for (const auto& grid : kHardwareGrid) r.feature_values.push_back(pick(rng, grid));
        r.metric_values.reserve(kHardwareBeta.size());
        for (const auto& beta : kHardwareBeta) {
            double y = predict_with_beta(beta, r.feature_values);
            if (config.noise_sigma > 0.0) y += config.noise_sigma * rng.next_gaussian();
            r.metric_values.push_back(y);
        }
        records.push_back(std::move(r));
    }
    PlantedTruth truth;
    truth.regime = Regime::Hardware;
    truth.seed = config.seed;
    truth.noise_sigma = config.noise_sigma;
    truth.beta.assign(kHardwareBeta.begin(), kHardwareBeta.end());
    return {Dataset(schema, std::move(records)), std::move(truth)};
}

std::pair<Dataset, PlantedTruth> generate_gluster(const GeneratorConfig& config) {
    const FeatureSchema schema = FeatureSchema::gluster();
    SplitMix64 rng(config.seed);
    std::vector<Record> records;
    records.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        const double block_size = pick(rng, kBlockSizesKb);
        const double cache = pick(rng, kCacheSizesMb);
        const double write_behind = static_cast<double>(rng.next_below(2));
        const double read_ahead = static_cast<double>(rng.next_below(2));
        const double io_cache = static_cast<double>(rng.next_below(2));
        const double md_cache = static_cast<double>(rng.next_below(2));
        const double o_sync = config.o_sync ? 1.0 : 0.0;

        Record r;
        r.feature_values = {block_size, cache,    write_behind, read_ahead,
                            io_cache,   md_cache, o_sync};
        for (const GlusterCurve& curve : kGlusterCurves) {
            double y = curve.t_max_mbps * block_size / (block_size + curve.b_half_kb);
            if (!config.o_sync) {
                const double saturated = std::min(cache, curve.cache_sat_mb) / curve.cache_sat_mb;
                y += curve.cache_gain_mbps * saturated * (0.5 + 0.5 * read_ahead);
            }
            if (config.noise_sigma > 0.0) y += config.noise_sigma * rng.next_gaussian();
            r.metric_values.push_back(std::max(y, kThroughputFloorMbps));
        }
        records.push_back(std::move(r));
    }
    PlantedTruth truth;
    truth.regime = Regime::Gluster;
    truth.seed = config.seed;
    truth.noise_sigma = config.noise_sigma;
    truth.o_sync = config.o_sync;
    truth.curves.assign(kGlusterCurves.begin(), kGlusterCurves.end());
    return {Dataset(schema, std::move(records)), std::move(truth)};
}

} // namespace

std::pair<Dataset, PlantedTruth> generate(const GeneratorConfig& config) {
    validate(config);
    return config.regime == Regime::Hardware ? generate_hardware(config)
                                             : generate_gluster(config);
}

const std::vector<double>& planted_hardware_beta(std::size_t metric_idx) {
    return kHardwareBeta.at(metric_idx);
}

const GlusterCurve& planted_gluster_curve(std::size_t metric_idx) {
    return kGlusterCurves.at(metric_idx);
}

const std::vector<double>& hardware_grid(std::size_t feature_idx) {
    return kHardwareGrid.at(feature_idx);
}

std::optional<double> hardware_grid_center(std::string_view feature_name) {
    const FeatureSchema schema = FeatureSchema::hardware();
    const auto idx = schema.feature_index(feature_name);
    if (!idx) return std::nullopt;
    return grid_mean(kHardwareGrid[*idx]);
}

double hardware_signal_variance(std::size_t metric_idx) {
    const std::vector<double>& beta = kHardwareBeta.at(metric_idx);
    double total = 0.0;
    for (std::size_t j = 0; j < kHardwareGrid.size(); ++j)
        total += beta[j + 1] * beta[j + 1] * grid_variance(kHardwareGrid[j]);
    return total;
}

double hardware_population_r2(std::size_t metric_idx, double noise_sigma) {
    const double v = hardware_signal_variance(metric_idx);
    return v / (v + noise_sigma * noise_sigma);
}

double hardware_sigma_for_population_r2(std::size_t metric_idx, double target_r2) {
    if (!(target_r2 > 0.0 && target_r2 < 1.0))
        raise(ErrorKind::InvalidConfig, "target population R^2 must be in (0, 1)");
    const double v = hardware_signal_variance(metric_idx);
    return std::sqrt(v * (1.0 - target_r2) / target_r2);
}

} // namespace fsmodel
