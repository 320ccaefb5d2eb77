#include "fsmodel/advisor.hpp"

#include <algorithm>
#include <cmath>

#include "fsmodel/synthbench.hpp"

namespace fsmodel {

const char* objective_name(Objective objective) {
    return objective == Objective::Throughput ? "throughput" : "perf_per_watt";
}

std::optional<Objective> objective_from_name(std::string_view name) {
    if (name == "throughput") return Objective::Throughput;
    if (name == "perf_per_watt") return Objective::PerfPerWatt;
    return std::nullopt;
}

namespace {

std::size_t write_metric_index(const FeatureSchema& schema) {
    const auto idx = schema.metric_index("write_mbps");
    if (!idx)
        raise(ErrorKind::UnknownMetric, "model schema lacks the write_mbps metric");
    return *idx;
}

std::string dominant_feature(const FittedModel& model, const DesignCandidate& candidate,
                             std::size_t write_idx) {
    const FeatureSchema& schema = model.schema();
    const std::vector<double>& beta = model.beta(write_idx);
    std::string best_name = "intercept";
    double best_contribution = -1.0;
    for (std::size_t j = 0; j < schema.feature_count(); ++j) {
        const double center =
            hardware_grid_center(schema.features()[j].name).value_or(0.0);
        const double contribution =
            std::abs(beta[j + 1] * (candidate.feature_values[j] - center));
        if (contribution > best_contribution) {
            best_contribution = contribution;
            best_name = schema.features()[j].name;
        }
    }
    return best_name;
}

} // namespace

DesignVerdict evaluate_design(const FittedModel& model, const DesignCandidate& candidate,
                              double cap_coefficient) {
    const FeatureSchema& schema = model.schema();
    if (candidate.feature_values.size() != schema.feature_count())
        raise(ErrorKind::SchemaMismatch,
              "candidate '" + candidate.name + "' has " +
                  std::to_string(candidate.feature_values.size()) +
                  " feature values; the model schema needs " +
                  std::to_string(schema.feature_count()));
    if (!(candidate.cpu_points > 0.0))
        raise(ErrorKind::InvalidConfig,
              "candidate '" + candidate.name + "' needs cpu_points > 0");
    if (!(candidate.power_watts > 0.0))
        raise(ErrorKind::InvalidConfig,
              "candidate '" + candidate.name + "' needs power_watts > 0");
    if (std::isnan(cap_coefficient) || cap_coefficient <= 0.0)
        raise(ErrorKind::InvalidConfig, "cap coefficient must be positive (inf disables)");

    DesignVerdict verdict;
    verdict.name = candidate.name;
    verdict.power_watts = candidate.power_watts;
    verdict.cpu_cap = cap_coefficient * candidate.cpu_points;
    for (std::size_t m = 0; m < schema.metric_count(); ++m) {
        const double predicted = predict_with_beta(model.beta(m), candidate.feature_values);
        verdict.predicted.push_back(predicted);
        verdict.capped.push_back(std::min(predicted, verdict.cpu_cap));
    }
    const std::size_t write_idx = write_metric_index(schema);
    verdict.limiting_factor = verdict.cpu_cap < verdict.predicted[write_idx]
                                  ? "cpu"
                                  : dominant_feature(model, candidate, write_idx);
    verdict.perf_per_watt = verdict.capped[write_idx] / candidate.power_watts;
    return verdict;
}

std::vector<DesignVerdict> rank_designs(const FittedModel& model,
                                        const std::vector<DesignCandidate>& candidates,
                                        std::optional<double> power_budget,
                                        Objective objective, double cap_coefficient) {
    if (candidates.empty())
        raise(ErrorKind::NoFeasibleCandidate, "no candidates supplied");

    const std::size_t write_idx = write_metric_index(model.schema());
    std::vector<DesignVerdict> verdicts;
    for (const DesignCandidate& c : candidates) {
        if (power_budget && c.power_watts > *power_budget) continue;
        verdicts.push_back(evaluate_design(model, c, cap_coefficient));
    }
    if (verdicts.empty())
        raise(ErrorKind::NoFeasibleCandidate,
              "every candidate exceeds the power budget of " +
                  std::to_string(*power_budget) + " W");

    auto score = [&](const DesignVerdict& v) {
        return objective == Objective::Throughput ? v.capped[write_idx] : v.perf_per_watt;
    };
    std::stable_sort(verdicts.begin(), verdicts.end(),
                     [&](const DesignVerdict& a, const DesignVerdict& b) {
                         const double sa = score(a);
                         const double sb = score(b);
                         if (sa != sb) return sa > sb;
                         return a.power_watts < b.power_watts;
                     });
    return verdicts;
}

} // namespace fsmodel
