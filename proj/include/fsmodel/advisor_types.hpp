#pragma once

#include <string>
#include <vector>

namespace fsmodel {

/// A hypothetical cluster design: encoded feature values over the model's
/// schema plus the CPU's benchmark points and power draw.
struct DesignCandidate {
    std::string name;
    std::vector<double> feature_values;
    double cpu_points = 0.0;
    double power_watts = 0.0;
};

/// Scored design: raw per-metric predictions, predictions capped by the CPU
/// ceiling, the factor that limits write throughput, and write MB/s per watt.
struct DesignVerdict {
    std::string name;
    std::vector<double> predicted;
    std::vector<double> capped;
    double cpu_cap = 0.0;
    std::string limiting_factor;
    double perf_per_watt = 0.0;
    double power_watts = 0.0;
};

enum class Objective { Throughput, PerfPerWatt };

} // namespace fsmodel
