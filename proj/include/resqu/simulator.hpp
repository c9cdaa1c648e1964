#pragma once

// Seeded Monte Carlo trials under the two-detector model.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resqu/rng.hpp"
#include "resqu/theory.hpp"
#include "resqu/trial_log.hpp"

namespace resqu::sim {

struct SampledTrial {
    TrueState state = TrueState::noise;
    double system_observation = 0.0;
    Indication indication = Indication::green;
    double human_observation = 0.0;
};

/// Draws the state (unless forced by a stratified deck), then the system and
/// human observations independently given the state.
SampledTrial sample_trial(const theory::AidedProblem& problem, CounterRng& rng,
                          std::optional<TrueState> forced_state = std::nullopt);

/// Agent decision rule. Cutoffs for configured and ignore-system agents are
/// in centered units (ln beta / d'_H), the convention used for reported cutoffs.
struct AgentPolicy {
    enum class Kind { optimal_contingent, ignore_system, configured };

    Kind kind = Kind::optimal_contingent;
    std::optional<double> fixed_centered;  // ignore_system; unaided optimum when empty
    double centered_red = 0.0;             // configured
    double centered_green = 0.0;           // configured
    double jitter_sd = 0.0;                // SD of per-trial cutoff noise

    static AgentPolicy optimal() { return {}; }
    static AgentPolicy ignore_system(std::optional<double> centered_cutoff = std::nullopt);
    static AgentPolicy configured(double centered_red, double centered_green);
    static AgentPolicy jittered(AgentPolicy base, double jitter_sd);

    /// Throws Error(validation) on non-finite configured cutoffs or negative jitter.
    void validate() const;
};

/// A policy bound to a problem: absolute cutoffs plus jitter.
struct ResolvedAgent {
    theory::ContingentPolicy cutoffs;
    double jitter_sd = 0.0;
};

ResolvedAgent resolve(const AgentPolicy& policy, const theory::AidedProblem& problem);

/// Reject iff the observation exceeds the active cutoff (plus jitter).
Response agent_decide(const ResolvedAgent& agent, Indication indication, double observation, CounterRng& rng);
Response agent_decide(const AgentPolicy& policy, Indication indication, double observation,
                      const theory::AidedProblem& problem, CounterRng& rng);

struct Schedule {
    enum class Kind { iid, stratified_block };

    Kind kind = Kind::stratified_block;
    long long trials_per_block = 50;
    int blocks = 2;
    long long signals_per_block = 20;  // stratified only

    /// Single block of n independent trials.
    static Schedule iid(long long trials) { return {Kind::iid, trials, 1, 0}; }
    /// Blocks of fixed composition, shuffled independently.
    static Schedule stratified(int blocks = 2, long long trials_per_block = 50, long long signals_per_block = 20) {
        return {Kind::stratified_block, trials_per_block, blocks, signals_per_block};
    }

    void validate() const;
    long long total_trials() const noexcept { return trials_per_block * blocks; }
};

/// Shuffled state deck for one stratified block.
std::vector<TrueState> stratified_deck(const Schedule& schedule, StreamKey key);

/// Generates one trial exactly as run_session would: the stimulus for
/// (session, condition, block, trial) is a pure function of the seed.
struct TrialDraw {
    int block = 1;
    long long trial_index = 0;
    SampledTrial sample;
};

class TrialSource {
public:
    TrialSource(theory::AidedProblem problem, Schedule schedule, std::uint64_t seed, std::string session_id,
                std::string condition_id);

    long long size() const noexcept { return schedule_.total_trials(); }
    TrialDraw draw(long long trial_index) const;
    /// Stream for agent-side randomness (jitter) on this trial.
    CounterRng agent_rng(long long trial_index) const;

private:
    theory::AidedProblem problem_;
    Schedule schedule_;
    StreamKey key_;
    std::vector<std::vector<TrueState>> decks_;
};

struct SessionSummary {
    std::string session_id;
    std::string condition_id;
    long long trial_count = 0;
    long long total_score = 0;
    long long correct = 0;
    std::optional<double> measured_responsibility;
};

struct SessionRun {
    std::vector<TrialRecord> records;
    SessionSummary summary;
};

SessionRun run_session(const theory::AidedProblem& problem, const AgentPolicy& policy, const Schedule& schedule,
                       std::uint64_t seed, const std::string& session_id = "sim",
                       const std::string& condition_id = "condition");

enum class Experiment { exp1, exp2 };

struct ConditionSpec {
    std::string id;
    theory::AidedProblem problem;
};

/// Conditions of each experiment at P_s = 0.4 with the +1/+1/-1/-2 payoffs.
std::vector<ConditionSpec> experiment_conditions(Experiment experiment);

/// Counterbalanced session plans: each entry is an ordered list of condition ids.
struct SessionPlan {
    std::string session_id;
    std::vector<std::string> condition_order;
};
std::vector<SessionPlan> experiment_sessions(Experiment experiment);

struct ExperimentRun {
    std::vector<ConditionSpec> conditions;
    std::map<std::string, std::vector<TrialRecord>> logs;  // by condition id
    std::vector<SessionSummary> summaries;                 // one per (session, condition)
};

/// Runs every session plan. Throws Error(missing_policy) when a condition has
/// no policy. Sessions are generated in parallel; output order is fixed.
ExperimentRun run_experiment(Experiment experiment, const std::map<std::string, AgentPolicy>& policies,
                             const Schedule& schedule, std::uint64_t seed);

std::map<std::string, AgentPolicy> same_policy(Experiment experiment, const AgentPolicy& policy);

}  // namespace resqu::sim
