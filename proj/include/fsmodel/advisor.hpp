#pragma once

#include <optional>
#include <string_view>

#include "fsmodel/advisor_types.hpp"
#include "fsmodel/regression.hpp"

namespace fsmodel {

/// Default CPU throughput ceiling, MB/s per PassMark-style benchmark point.
/// At this value a 916-point low-power part caps well below a saturated
/// gigabit link (~117 MB/s) while an 8306-point part clears it.
constexpr double kDefaultCapCoefficient = 0.02;

const char* objective_name(Objective objective);
std::optional<Objective> objective_from_name(std::string_view name);

/// Predicts every metric for the candidate, applies the CPU cap
/// cap_coefficient * cpu_points (an infinite coefficient disables it), and
/// names the limiting factor: "cpu" when the cap binds on write throughput,
/// otherwise the feature with the largest |beta_j * (x_j - grid center)|
/// write contribution.
DesignVerdict evaluate_design(const FittedModel& model, const DesignCandidate& candidate,
                              double cap_coefficient = kDefaultCapCoefficient);

/// Scores all candidates, drops those over the power budget (if any), and
/// sorts by the objective on capped write throughput, descending; ties go to
/// the design drawing less power.
std::vector<DesignVerdict> rank_designs(const FittedModel& model,
                                        const std::vector<DesignCandidate>& candidates,
                                        std::optional<double> power_budget,
                                        Objective objective,
                                        double cap_coefficient = kDefaultCapCoefficient);

} // namespace fsmodel
