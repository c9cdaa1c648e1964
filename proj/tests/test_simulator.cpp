#include <cmath>
#include <sstream>

#include "doctest.h"
#include "resqu/empirics.hpp"
#include "resqu/error.hpp"
#include "resqu/simulator.hpp"

using namespace resqu;
using namespace resqu::sim;

namespace {

theory::AidedProblem problem(double d_h, double d_a, double beta_a = 1.0) {
    return {sdt::Environment{0.4}, d_h, {d_a, beta_a}, sdt::PayoffMatrix::experiment()};
}

std::string log_text(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    write_log(out, records);
    return out.str();
}

double within_se(double observed, double p, double n) { return std::abs(observed - p) / std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST_CASE("sample_trial indication frequencies") {
    const auto p = problem(1.0, 1.0);
    constexpr long long n = 1'000'000;
    long long red = 0;
    CounterRng rng(StreamKey(1).with("indication"));
    for (long long i = 0; i < n; ++i) red += sample_trial(p, rng).indication == Indication::red;
    // 0.4 phi(0.5) + 0.6 phi(-0.5)
    CHECK(std::abs(static_cast<double>(red) / n - 0.4617075) <= 0.0015);

    const auto sharp = problem(1.0, 5.0);
    long long agree = 0;
    for (long long i = 0; i < 100'000; ++i) {
        const auto t = sample_trial(sharp, rng);
        agree += (t.indication == Indication::red) == (t.state == TrueState::signal);
    }
    CHECK(static_cast<double>(agree) / 100'000 >= 2.0 * sdt::phi(2.5) - 1.0);

    const auto always_red = problem(1.0, 0.0, 0.5);
    const auto never_red = problem(1.0, 0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_trial(always_red, rng).indication == Indication::red);
        CHECK(sample_trial(never_red, rng).indication == Indication::green);
    }
    CHECK(sample_trial(p, rng, TrueState::signal).state == TrueState::signal);
}

TEST_CASE("agent_decide") {
    const auto p = problem(1.0, 2.3);
    const auto agent = resolve(AgentPolicy::optimal(), p);
    const auto expected = theory::optimal_contingent_policy(p);
    CHECK(agent.cutoffs.cutoff_red == expected.cutoff_red);
    CHECK(agent.cutoffs.cutoff_green == expected.cutoff_green);

    CounterRng rng(StreamKey(3));
    CHECK(agent_decide(agent, Indication::red, expected.cutoff_red + 1e-9, rng) == Response::reject);
    CHECK(agent_decide(agent, Indication::red, expected.cutoff_red, rng) == Response::accept);
    CHECK(agent_decide(agent, Indication::green, 0.0, rng) == Response::accept);

    const auto configured = resolve(AgentPolicy::configured(-1.0, 1.0), p);
    CHECK(configured.cutoffs.cutoff_red == doctest::Approx(-0.5));
    CHECK(configured.cutoffs.cutoff_green == doctest::Approx(1.5));
    const auto ignore = resolve(AgentPolicy::ignore_system(), p);
    CHECK(ignore.cutoffs.cutoff_red == ignore.cutoffs.cutoff_green);
    CHECK(ignore.cutoffs.cutoff_red == doctest::Approx(theory::unaided_optimal_cutoff(p)));

    CHECK_THROWS_AS(resolve(AgentPolicy::jittered(AgentPolicy::optimal(), -0.1), p), Error);
    CHECK_THROWS_AS(resolve(AgentPolicy::configured(NAN, 1.0), p), Error);
}

TEST_CASE("property: run_session determinism and bookkeeping") {
    const auto p = problem(1.0, 2.3);
    const auto policy = AgentPolicy::jittered(AgentPolicy::optimal(), 0.3);
    const auto a = run_session(p, policy, Schedule::stratified(), 42, "s", "c");
    const auto b = run_session(p, policy, Schedule::stratified(), 42, "s", "c");
    CHECK(log_text(a.records) == log_text(b.records));
    CHECK(log_text(run_session(p, policy, Schedule::stratified(), 43, "s", "c").records) != log_text(a.records));
    CHECK(log_text(run_session(p, policy, Schedule::stratified(), 42, "t", "c").records) != log_text(a.records));

    const TrialSource source(p, Schedule::stratified(), 42, "s", "c");
    for (long long i = 0; i < source.size(); ++i) {
        const auto d = source.draw(i);
        CHECK(d.sample.human_observation == a.records[static_cast<std::size_t>(i)].stimulus_value);
        CHECK(d.sample.indication == a.records[static_cast<std::size_t>(i)].indication);
        CHECK(d.block == a.records[static_cast<std::size_t>(i)].block);
    }

    long long score = 0, correct = 0;
    for (const auto& r : a.records) {
        CHECK(r.payoff == trial_payoff(p.payoffs, r.true_state, r.response));
        score += r.payoff;
        correct += r.correct();
    }
    CHECK(a.summary.total_score == score);
    CHECK(a.summary.correct == correct);
    CHECK(a.summary.trial_count == 100);

    // Correct trials pay +1, so an all-correct 50-trial session totals 50.
    for (const auto& r : a.records) CHECK((r.payoff == 1) == r.correct());
}

TEST_CASE("golden simulated log survives write and parse") {
    const auto run = run_session(problem(2.3, 1.0), AgentPolicy::optimal(), Schedule::iid(200), 2024, "g", "gold");
    std::istringstream in(log_text(run.records));
    const auto parsed = parse_log(in);
    REQUIRE(parsed.size() == 200);
    long long total = 0;
    for (const auto& r : parsed) total += r.payoff;
    CHECK(total == run.summary.total_score);
    CHECK(log_text(parsed) == log_text(run.records));
}

TEST_CASE("property: stratified blocks hold exactly 20 signals in 50") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto run = run_session(problem(1.0, 1.0), AgentPolicy::optimal(), Schedule::stratified(), seed);
        int signals[3] = {0, 0, 0};
        int sizes[3] = {0, 0, 0};
        for (const auto& r : run.records) {
            REQUIRE((r.block == 1 || r.block == 2));
            ++sizes[r.block];
            signals[r.block] += r.true_state == TrueState::signal;
        }
        CHECK(sizes[1] == 50);
        CHECK(sizes[2] == 50);
        CHECK(signals[1] == 20);
        CHECK(signals[2] == 20);
    }
    const auto d1 = stratified_deck(Schedule::stratified(), StreamKey(9).with("deck").with(1));
    const auto d2 = stratified_deck(Schedule::stratified(), StreamKey(9).with("deck").with(2));
    CHECK(d1 != d2);
    CHECK_THROWS_AS(Schedule::stratified(2, 50, 60).validate(), Error);
}

namespace {

// Pearson chi-square of a 2x2 table of counts (one degree of freedom).
double chi_square(const double n[2][2]) {
    const double total = n[0][0] + n[0][1] + n[1][0] + n[1][1];
    double chi2 = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double expected = (n[x][0] + n[x][1]) * (n[0][y] + n[1][y]) / total;
            chi2 += (n[x][y] - expected) * (n[x][y] - expected) / expected;
        }
    }
    return chi2;
}

}  // namespace

TEST_CASE("ignore-system agent responds independently of the indication given the state") {
    // Response and indication share the state, so they are dependent
    // marginally; ignoring the aid makes them independent within each state.
    const auto p = problem(1.0, 2.3);
    const auto run = run_session(p, AgentPolicy::ignore_system(), Schedule::iid(100'000), 11);
    double by_state[2][2][2] = {};
    for (const auto& r : run.records) by_state[r.true_state == TrueState::signal ? 0 : 1][index(r.response)][index(r.indication)] += 1;
    CHECK(chi_square(by_state[0]) < 6.635);  // p > 0.01
    CHECK(chi_square(by_state[1]) < 6.635);

    const auto agent = resolve(AgentPolicy::ignore_system(), p);
    const double closed_form = info::responsibility(theory::aided_joint_distribution(p, agent.cutoffs));
    CHECK(std::abs(*run.summary.measured_responsibility - closed_form) <= 0.01);
    CHECK(closed_form < 0.95);

    // With an uninformative aid the indication is a coin flip and
    // independence holds outright.
    const auto coin = run_session(problem(1.0, 0.0), AgentPolicy::ignore_system(), Schedule::iid(1'000'000), 11);
    double marginal[2][2] = {};
    for (const auto& r : coin.records) marginal[index(r.response)][index(r.indication)] += 1;
    CHECK(chi_square(marginal) < 6.635);
    CHECK(std::abs(*coin.summary.measured_responsibility - 1.0) <= 0.01);
}

TEST_CASE("configured agent matches the closed-form joint") {
    const auto p = problem(1.0, 2.3);
    constexpr double n = 1'000'000;
    const auto run = run_session(p, AgentPolicy::configured(-1.0, 1.0), Schedule::iid(1'000'000), 13);
    const auto cutoffs = resolve(AgentPolicy::configured(-1.0, 1.0), p).cutoffs;
    const auto joint = theory::aided_joint_distribution(p, cutoffs);
    const auto observed = empirics::empirical_joint(run.records);
    for (Response x : {Response::reject, Response::accept})
        for (Indication y : {Indication::red, Indication::green})
            CHECK(within_se(observed(x, y), joint(x, y), n) <= 3.0);
    CHECK(std::abs(empirics::d_eff_empirical(run.records) - theory::policy_d_eff(p, cutoffs)) < 0.02);
}

TEST_CASE("property: optimal-agent frequencies converge to the theoretical joint") {
    constexpr double n = 1'000'000;
    for (const auto& c : experiment_conditions(Experiment::exp2)) {
        const auto run = run_session(c.problem, AgentPolicy::optimal(), Schedule::iid(1'000'000), 17, "conv", c.id);
        const auto joint = theory::aided_joint_distribution(c.problem, theory::optimal_contingent_policy(c.problem));
        const auto observed = empirics::empirical_joint(run.records);
        for (Response x : {Response::reject, Response::accept})
            for (Indication y : {Indication::red, Indication::green})
                CHECK(within_se(observed(x, y), joint(x, y), n) <= 4.0);
        CHECK(std::abs(*run.summary.measured_responsibility - theory::theoretical_responsibility(c.problem)) <= 0.01);
    }
}

TEST_CASE("property: criterion jitter never raises empirical d'") {
    const auto p = problem(1.0, 2.3);
    double previous = INFINITY;
    for (double jitter : {0.0, 0.5, 1.0}) {
        const auto run = run_session(p, AgentPolicy::jittered(AgentPolicy::optimal(), jitter), Schedule::iid(200'000), 19);
        const double d = empirics::d_eff_empirical(run.records);
        CHECK(d <= previous);
        previous = d;
    }
}

TEST_CASE("run_experiment") {
    const auto exp1 = run_experiment(Experiment::exp1, same_policy(Experiment::exp1, AgentPolicy::optimal()),
                                     Schedule::stratified(), 7);
    CHECK(exp1.conditions.size() == 4);
    CHECK(exp1.summaries.size() == 8);
    REQUIRE(exp1.logs.size() == 4);
    for (const auto& [id, log] : exp1.logs) {
        CHECK(log.size() == 200);
        for (const auto& r : log) CHECK(r.condition_id == id);
    }
    CHECK(exp1.summaries.front().session_id == "exp1-dh1-order1");

    const auto again = run_experiment(Experiment::exp1, same_policy(Experiment::exp1, AgentPolicy::optimal()),
                                      Schedule::stratified(), 7);
    for (const auto& [id, log] : exp1.logs) CHECK(log_text(log) == log_text(again.logs.at(id)));

    // Same records as a serial run of one session.
    const auto serial = run_session(exp1.conditions[1].problem, AgentPolicy::optimal(), Schedule::stratified(), 7,
                                    "exp1-dh1-order1", exp1.conditions[1].id);
    const auto& pooled = exp1.logs.at(exp1.conditions[1].id);
    CHECK(log_text({pooled.begin(), pooled.begin() + 100}) == log_text(serial.records));

    const auto exp2 = run_experiment(Experiment::exp2, same_policy(Experiment::exp2, AgentPolicy::optimal()),
                                     Schedule::iid(10), 7);
    CHECK(exp2.summaries.size() == 4);
    CHECK(exp2.logs.contains("exp2-beta0.03"));

    auto partial = same_policy(Experiment::exp2, AgentPolicy::optimal());
    partial.erase("exp2-beta1");
    try {
        run_experiment(Experiment::exp2, partial, Schedule::iid(10), 7);
        FAIL("expected missing policy");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::missing_policy);
    }
}
