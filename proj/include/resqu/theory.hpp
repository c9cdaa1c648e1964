#pragma once

// Two-detector aided decision model. The human and the system observe the
// same item independently given its true state; the human applies one
// cutoff after a red indication and another after a green one.

#include <iosfwd>
#include <string>
#include <vector>

#include "resqu/infotheory.hpp"
#include "resqu/sdt.hpp"

namespace resqu::theory {

struct AidedProblem {
    sdt::Environment env{0.4};
    double d_h = 1.0;
    sdt::DetectorParams system{1.0, 1.0};
    sdt::PayoffMatrix payoffs = sdt::PayoffMatrix::experiment();

    /// Full validation, payoffs included.
    void validate() const;
    /// Environment and detectors only; enough to evaluate a given policy.
    void validate_model() const;
    bool informative_system() const noexcept { return system.d_prime > 0.0; }
};

/// Absolute cutoffs on the human observation axis. Observation > cutoff
/// means "reject" (declare signal). Infinite cutoffs are allowed.
struct ContingentPolicy {
    double cutoff_red = 0.0;
    double cutoff_green = 0.0;

    double cutoff(Indication y) const noexcept { return y == Indication::red ? cutoff_red : cutoff_green; }
};

/// Indication law of the system. For d'_A = 0 the uninformative limit is
/// used: P(red) is 1, 1/2 or 0 as beta_A is below, at or above 1, and the
/// indication carries no information about the state.
struct IndicationModel {
    double p_red = 0.5;
    double p_red_given_signal = 0.5;
    double p_red_given_noise = 0.5;

    double p(Indication y) const noexcept { return y == Indication::red ? p_red : 1.0 - p_red; }
    double given_signal(Indication y) const noexcept {
        return y == Indication::red ? p_red_given_signal : 1.0 - p_red_given_signal;
    }
    double given_noise(Indication y) const noexcept {
        return y == Indication::red ? p_red_given_noise : 1.0 - p_red_given_noise;
    }
    /// P(signal | y); the prior for an indication that never occurs.
    double posterior(Indication y, double p_signal) const noexcept;
};

IndicationModel indication_model(const AidedProblem& problem);

struct TheoryReport {
    std::string condition_id;
    double responsibility = 0.0;
    double centered_cutoff_red = 0.0;
    double centered_cutoff_green = 0.0;
    double cutoff_difference = 0.0;  // green - red, centered units
    ContingentPolicy policy;
    double d_eff_policy = 0.0;
    double d_eff_approx = 0.0;
    double expected_payoff = 0.0;
    info::JointPmf2x2 joint{info::JointPmf2x2::Cells{{{0.25, 0.25}, {0.25, 0.25}}}};
    double p_red = 0.0;
    double p_green = 0.0;
};

/// Unaided optimum: one cutoff from the prior.
double unaided_optimal_cutoff(const AidedProblem& problem);

/// Cutoff pair from the posterior after each indication plugged into the
/// optimal criterion. For an uninformative system both equal the unaided optimum.
ContingentPolicy optimal_contingent_policy(const AidedProblem& problem);

info::JointPmf2x2 aided_joint_distribution(const AidedProblem& problem, const ContingentPolicy& policy);

/// P(reject | y) under the policy.
double reject_probability(const AidedProblem& problem, const ContingentPolicy& policy, Indication y);

double theoretical_responsibility(const AidedProblem& problem);

struct FinalDecisionRates {
    double hit_rate = 0.0;
    double false_alarm_rate = 0.0;
};

FinalDecisionRates final_decision_rates(const AidedProblem& problem, const ContingentPolicy& policy);

/// z(HR) - z(FAR) of the final decisions. Throws Error(domain) when either
/// rate sits on 0 or 1.
double policy_d_eff(const AidedProblem& problem, const ContingentPolicy& policy);

double expected_payoff(const AidedProblem& problem, const ContingentPolicy& policy);

TheoryReport theory_report(const AidedProblem& problem, std::string condition_id = {});

struct ResponsibilitySurface {
    std::vector<double> d_h;  // rows, ascending
    std::vector<double> d_a;  // columns, ascending
    std::vector<double> values;  // row-major, d_h.size() x d_a.size()

    double at(std::size_t row, std::size_t col) const { return values.at(row * d_a.size() + col); }
};

/// Inclusive arithmetic grid lo, lo+step, ..., hi; hi is appended when the
/// steps do not land on it.
std::vector<double> grid_axis(double lo, double hi, double step);

/// theoretical_responsibility at every (d_h, d_a) node with the system
/// criterion fixed at beta_a. Throws Error(validation) on bounds outside (0,5].
ResponsibilitySurface responsibility_surface(const std::vector<double>& d_h, const std::vector<double>& d_a,
                                             const sdt::Environment& env, const sdt::PayoffMatrix& payoffs,
                                             double beta_a);

/// CSV with header "d_h,<d_a...>" and one row per d_h.
void write_surface_csv(std::ostream& out, const ResponsibilitySurface& surface);

}  // namespace resqu::theory
