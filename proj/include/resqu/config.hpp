#pragma once

// Experiment configuration for the session service, read from JSON:
//
// {
//   "seed": 1,
//   "display_timeout_ms": 30000,
//   "rendering": {"base_px": 300, "px_per_sd": 60, "clamp_sd": [-4.5, 4.5],
//                 "rect_width_px": 60, "square_px": 756},
//   "conditions": [{"id": "exp2-beta1", "p_signal": 0.4, "d_h": 1.0,
//                   "system": {"d_prime": 2.3, "beta": 1.0},
//                   "payoffs": [1, 1, -1, -2],
//                   "blocks": 2, "trials_per_block": 50, "signals_per_block": 20}],
//   "orders": [["exp2-beta1", "exp2-beta0.03"], ["exp2-beta0.03", "exp2-beta1"]]
// }
//
// Every key except "conditions" and "orders" has the default shown.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "resqu/simulator.hpp"
#include "resqu/theory.hpp"

namespace resqu {

struct Rendering {
    double base_px = 300.0;
    double px_per_sd = 60.0;
    double clamp_lo_sd = -4.5;
    double clamp_hi_sd = 4.5;
    int rect_width_px = 60;
    int square_px = 756;

    /// round(base + x * px_per_sd) with x clamped to the clamp range.
    int height_px(double observation) const;
    /// Throws Error(validation) unless the map is increasing and fits the square.
    void validate() const;
};

struct ConditionConfig {
    std::string id;
    theory::AidedProblem problem;
    sim::Schedule schedule = sim::Schedule::stratified();
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    long long display_timeout_ms = 30000;
    Rendering rendering;
    std::vector<ConditionConfig> conditions;
    std::vector<std::vector<std::string>> orders;

    const ConditionConfig& condition(const std::string& id) const;
    void validate() const;
};

/// Throws Error(schema) on malformed JSON or unknown keys, Error(validation)
/// on out-of-range values.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// The conditions of a built-in experiment with the default 2x50 schedule and both orders.
ExperimentConfig builtin_config(sim::Experiment experiment);

}  // namespace resqu
