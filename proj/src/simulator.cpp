#include "resqu/simulator.hpp"

#include <cmath>
#include <future>
#include <utility>

#include "resqu/empirics.hpp"
#include "resqu/error.hpp"

namespace resqu::sim {

SampledTrial sample_trial(const theory::AidedProblem& problem, CounterRng& rng, std::optional<TrueState> forced_state) {
    SampledTrial t;
    t.state = forced_state ? *forced_state
                           : (rng.bernoulli(problem.env.p_signal) ? TrueState::signal : TrueState::noise);
    const bool signal = t.state == TrueState::signal;

    t.system_observation = rng.normal() + (signal ? problem.system.d_prime : 0.0);
    if (problem.informative_system()) {
        const double cutoff = sdt::cutoff_from_beta(problem.system.d_prime, problem.system.beta);
        t.indication = t.system_observation > cutoff ? Indication::red : Indication::green;
    } else {
        // Uninformative limit: the criterion alone decides.
        const double beta = problem.system.beta;
        const bool red = beta < 1.0 || (beta == 1.0 && rng.bernoulli(0.5));
        t.indication = red ? Indication::red : Indication::green;
    }
    t.human_observation = rng.normal() + (signal ? problem.d_h : 0.0);
    return t;
}

AgentPolicy AgentPolicy::ignore_system(std::optional<double> centered_cutoff) {
    AgentPolicy p;
    p.kind = Kind::ignore_system;
    p.fixed_centered = centered_cutoff;
    return p;
}

AgentPolicy AgentPolicy::configured(double centered_red, double centered_green) {
    AgentPolicy p;
    p.kind = Kind::configured;
    p.centered_red = centered_red;
    p.centered_green = centered_green;
    return p;
}

AgentPolicy AgentPolicy::jittered(AgentPolicy base, double jitter_sd) {
    base.jitter_sd = jitter_sd;
    return base;
}

void AgentPolicy::validate() const {
    if (!(jitter_sd >= 0.0) || !std::isfinite(jitter_sd)) {
        throw Error(ErrorCode::validation, "criterion jitter SD must be finite and >= 0");
    }
    if (kind == Kind::configured && (!std::isfinite(centered_red) || !std::isfinite(centered_green))) {
        throw Error(ErrorCode::validation, "configured cutoffs must be finite");
    }
    if (kind == Kind::ignore_system && fixed_centered && !std::isfinite(*fixed_centered)) {
        throw Error(ErrorCode::validation, "fixed cutoff must be finite");
    }
}

ResolvedAgent resolve(const AgentPolicy& policy, const theory::AidedProblem& problem) {
    policy.validate();
    problem.validate();
    ResolvedAgent agent;
    agent.jitter_sd = policy.jitter_sd;
    switch (policy.kind) {
        case AgentPolicy::Kind::optimal_contingent:
            agent.cutoffs = theory::optimal_contingent_policy(problem);
            break;
        case AgentPolicy::Kind::ignore_system: {
            const double c = policy.fixed_centered ? sdt::absolute_cutoff(problem.d_h, *policy.fixed_centered)
                                                   : theory::unaided_optimal_cutoff(problem);
            agent.cutoffs = {c, c};
            break;
        }
        case AgentPolicy::Kind::configured:
            agent.cutoffs = {sdt::absolute_cutoff(problem.d_h, policy.centered_red),
                             sdt::absolute_cutoff(problem.d_h, policy.centered_green)};
            break;
    }
    return agent;
}

Response agent_decide(const ResolvedAgent& agent, Indication indication, double observation, CounterRng& rng) {
    double cutoff = agent.cutoffs.cutoff(indication);
    if (agent.jitter_sd > 0.0) cutoff += agent.jitter_sd * rng.normal();
    return observation > cutoff ? Response::reject : Response::accept;
}

Response agent_decide(const AgentPolicy& policy, Indication indication, double observation,
                      const theory::AidedProblem& problem, CounterRng& rng) {
    return agent_decide(resolve(policy, problem), indication, observation, rng);
}

void Schedule::validate() const {
    if (trials_per_block < 0 || blocks < 1) throw Error(ErrorCode::validation, "schedule needs blocks >= 1");
    if (kind == Kind::stratified_block && (signals_per_block < 0 || signals_per_block > trials_per_block)) {
        throw Error(ErrorCode::validation, "stratified signal count must lie in [0, trials_per_block]");
    }
}

std::vector<TrueState> stratified_deck(const Schedule& schedule, StreamKey key) {
    std::vector<TrueState> deck(static_cast<std::size_t>(schedule.trials_per_block), TrueState::noise);
    for (long long i = 0; i < schedule.signals_per_block; ++i) deck[static_cast<std::size_t>(i)] = TrueState::signal;
    CounterRng rng(key);
    for (std::size_t i = deck.size(); i > 1; --i) std::swap(deck[i - 1], deck[rng.below(i)]);
    return deck;
}

TrialSource::TrialSource(theory::AidedProblem problem, Schedule schedule, std::uint64_t seed, std::string session_id,
                         std::string condition_id)
    : problem_(std::move(problem)),
      schedule_(schedule),
      key_(StreamKey(seed).with(session_id).with(condition_id)) {
    problem_.validate();
    schedule_.validate();
    if (schedule_.kind == Schedule::Kind::stratified_block) {
        for (int b = 1; b <= schedule_.blocks; ++b) {
            decks_.push_back(stratified_deck(schedule_, key_.with("deck").with(static_cast<std::uint64_t>(b))));
        }
    }
}

TrialDraw TrialSource::draw(long long trial_index) const {
    if (trial_index < 0 || trial_index >= size()) throw Error(ErrorCode::validation, "trial index out of range");
    TrialDraw d;
    d.trial_index = trial_index;
    d.block = static_cast<int>(trial_index / schedule_.trials_per_block) + 1;
    std::optional<TrueState> forced;
    if (!decks_.empty()) {
        forced = decks_[static_cast<std::size_t>(d.block - 1)]
                       [static_cast<std::size_t>(trial_index % schedule_.trials_per_block)];
    }
    CounterRng rng(key_.with("trial").with(static_cast<std::uint64_t>(trial_index)));
    d.sample = sample_trial(problem_, rng, forced);
    return d;
}

CounterRng TrialSource::agent_rng(long long trial_index) const {
    return CounterRng(key_.with("agent").with(static_cast<std::uint64_t>(trial_index)));
}

SessionRun run_session(const theory::AidedProblem& problem, const AgentPolicy& policy, const Schedule& schedule,
                       std::uint64_t seed, const std::string& session_id, const std::string& condition_id) {
    const ResolvedAgent agent = resolve(policy, problem);
    const TrialSource source(problem, schedule, seed, session_id, condition_id);

    SessionRun run;
    run.records.reserve(static_cast<std::size_t>(source.size()));
    run.summary.session_id = session_id;
    run.summary.condition_id = condition_id;
    for (long long i = 0; i < source.size(); ++i) {
        const TrialDraw d = source.draw(i);
        CounterRng agent_rng = source.agent_rng(i);
        TrialRecord r;
        r.session_id = session_id;
        r.condition_id = condition_id;
        r.block = d.block;
        r.trial_index = d.trial_index;
        r.true_state = d.sample.state;
        r.indication = d.sample.indication;
        r.stimulus_value = d.sample.human_observation;
        r.response = agent_decide(agent, r.indication, r.stimulus_value, agent_rng);
        r.payoff = trial_payoff(problem.payoffs, r.true_state, r.response);
        run.summary.total_score += r.payoff;
        run.summary.correct += r.correct();
        run.records.push_back(std::move(r));
    }
    run.summary.trial_count = static_cast<long long>(run.records.size());
    try {
        run.summary.measured_responsibility = empirics::measured_responsibility(run.records);
    } catch (const Error&) {
        run.summary.measured_responsibility.reset();
    }
    return run;
}

std::vector<ConditionSpec> experiment_conditions(Experiment experiment) {
    const sdt::Environment env{0.4};
    const auto payoffs = sdt::PayoffMatrix::experiment();
    if (experiment == Experiment::exp1) {
        return {
            {"exp1-dh1-da1", {env, 1.0, {1.0, 1.0}, payoffs}},
            {"exp1-dh1-da2.3", {env, 1.0, {2.3, 1.0}, payoffs}},
            {"exp1-dh2.3-da1", {env, 2.3, {1.0, 1.0}, payoffs}},
            {"exp1-dh2.3-da2.3", {env, 2.3, {2.3, 1.0}, payoffs}},
        };
    }
    return {
        {"exp2-beta1", {env, 1.0, {2.3, 1.0}, payoffs}},
        {"exp2-beta0.03", {env, 1.0, {2.3, 0.03}, payoffs}},
    };
}

std::vector<SessionPlan> experiment_sessions(Experiment experiment) {
    if (experiment == Experiment::exp1) {
        return {
            {"exp1-dh1-order1", {"exp1-dh1-da1", "exp1-dh1-da2.3"}},
            {"exp1-dh1-order2", {"exp1-dh1-da2.3", "exp1-dh1-da1"}},
            {"exp1-dh2.3-order1", {"exp1-dh2.3-da1", "exp1-dh2.3-da2.3"}},
            {"exp1-dh2.3-order2", {"exp1-dh2.3-da2.3", "exp1-dh2.3-da1"}},
        };
    }
    return {
        {"exp2-order1", {"exp2-beta1", "exp2-beta0.03"}},
        {"exp2-order2", {"exp2-beta0.03", "exp2-beta1"}},
    };
}

std::map<std::string, AgentPolicy> same_policy(Experiment experiment, const AgentPolicy& policy) {
    std::map<std::string, AgentPolicy> policies;
    for (const auto& c : experiment_conditions(experiment)) policies.emplace(c.id, policy);
    return policies;
}

ExperimentRun run_experiment(Experiment experiment, const std::map<std::string, AgentPolicy>& policies,
                             const Schedule& schedule, std::uint64_t seed) {
    ExperimentRun result;
    result.conditions = experiment_conditions(experiment);
    std::map<std::string, const ConditionSpec*> by_id;
    for (const auto& c : result.conditions) {
        if (!policies.contains(c.id)) throw Error(ErrorCode::missing_policy, "no policy for condition " + c.id);
        by_id.emplace(c.id, &c);
    }

    const auto plans = experiment_sessions(experiment);
    std::vector<std::future<std::vector<SessionRun>>> jobs;
    for (const auto& plan : plans) {
        jobs.push_back(std::async(std::launch::async, [&, plan] {
            std::vector<SessionRun> runs;
            for (const auto& condition_id : plan.condition_order) {
                runs.push_back(run_session(by_id.at(condition_id)->problem, policies.at(condition_id), schedule, seed,
                                           plan.session_id, condition_id));
            }
            return runs;
        }));
    }
    for (auto& job : jobs) {
        for (auto& run : job.get()) {
            auto& log = result.logs[run.summary.condition_id];
            log.insert(log.end(), std::make_move_iterator(run.records.begin()),
                       std::make_move_iterator(run.records.end()));
            result.summaries.push_back(std::move(run.summary));
        }
    }
    return result;
}

}  // namespace resqu::sim
