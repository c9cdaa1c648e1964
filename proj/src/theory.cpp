#include "resqu/theory.hpp"

#include <cmath>
#include <ostream>

#include "resqu/error.hpp"

namespace resqu::theory {

void AidedProblem::validate_model() const {
    env.validate();
    if (!(d_h > 0.0) || !std::isfinite(d_h)) throw Error(ErrorCode::validation, "human d' must be finite and > 0");
    system.validate();
}

void AidedProblem::validate() const {
    validate_model();
    payoffs.validate();
}

double IndicationModel::posterior(Indication y, double p_signal) const noexcept {
    const double py = p(y);
    if (!(py > 0.0)) return p_signal;
    return p_signal * given_signal(y) / py;
}

IndicationModel indication_model(const AidedProblem& problem) {
    problem.validate_model();
    IndicationModel model;
    if (!problem.informative_system()) {
        const double beta = problem.system.beta;
        const double p_red = beta < 1.0 ? 1.0 : (beta > 1.0 ? 0.0 : 0.5);
        model.p_red = model.p_red_given_signal = model.p_red_given_noise = p_red;
        return model;
    }
    const auto profile = sdt::system_outcome_profile(problem.env, problem.system);
    model.p_red = profile.p_alarm;
    model.p_red_given_signal = profile.hit_rate;
    model.p_red_given_noise = profile.false_alarm_rate;
    return model;
}

double unaided_optimal_cutoff(const AidedProblem& problem) {
    problem.validate();
    return sdt::cutoff_from_beta(problem.d_h, sdt::optimal_beta(problem.env, problem.payoffs));
}

ContingentPolicy optimal_contingent_policy(const AidedProblem& problem) {
    problem.validate();
    if (!problem.informative_system()) {
        const double c = unaided_optimal_cutoff(problem);
        return {c, c};
    }
    const auto profile = sdt::system_outcome_profile(problem.env, problem.system);
    auto cutoff_for = [&](Indication y) {
        const double posterior = sdt::posterior_given_indication(problem.env, profile, y);
        return sdt::cutoff_from_beta(problem.d_h, sdt::optimal_beta(posterior, problem.payoffs));
    };
    return {cutoff_for(Indication::red), cutoff_for(Indication::green)};
}

double reject_probability(const AidedProblem& problem, const ContingentPolicy& policy, Indication y) {
    const IndicationModel model = indication_model(problem);
    const double posterior = model.posterior(y, problem.env.p_signal);
    const double c = policy.cutoff(y);
    return posterior * sdt::phi(problem.d_h - c) + (1.0 - posterior) * sdt::phi(-c);
}

info::JointPmf2x2 aided_joint_distribution(const AidedProblem& problem, const ContingentPolicy& policy) {
    const IndicationModel model = indication_model(problem);
    info::JointPmf2x2::Cells cells{};
    for (Indication y : {Indication::red, Indication::green}) {
        const double py = model.p(y);
        const double posterior = model.posterior(y, problem.env.p_signal);
        const double c = policy.cutoff(y);
        const double p_reject = posterior * sdt::phi(problem.d_h - c) + (1.0 - posterior) * sdt::phi(-c);
        cells[index(Response::reject)][index(y)] = py * p_reject;
        cells[index(Response::accept)][index(y)] = py * (1.0 - p_reject);
    }
    return info::JointPmf2x2(cells);
}

double theoretical_responsibility(const AidedProblem& problem) {
    if (!problem.informative_system()) {
        problem.validate();
        return 1.0;
    }
    return info::responsibility(aided_joint_distribution(problem, optimal_contingent_policy(problem)));
}

FinalDecisionRates final_decision_rates(const AidedProblem& problem, const ContingentPolicy& policy) {
    const IndicationModel model = indication_model(problem);
    FinalDecisionRates rates;
    for (Indication y : {Indication::red, Indication::green}) {
        const double c = policy.cutoff(y);
        rates.hit_rate += model.given_signal(y) * sdt::phi(problem.d_h - c);
        rates.false_alarm_rate += model.given_noise(y) * sdt::phi(-c);
    }
    return rates;
}

double policy_d_eff(const AidedProblem& problem, const ContingentPolicy& policy) {
    const FinalDecisionRates rates = final_decision_rates(problem, policy);
    return sdt::phi_inv(rates.hit_rate) - sdt::phi_inv(rates.false_alarm_rate);
}

double expected_payoff(const AidedProblem& problem, const ContingentPolicy& policy) {
    const IndicationModel model = indication_model(problem);
    const auto& v = problem.payoffs;
    const double ps = problem.env.p_signal;
    double total = 0.0;
    for (Indication y : {Indication::red, Indication::green}) {
        const double c = policy.cutoff(y);
        const double hit = sdt::phi(problem.d_h - c);
        const double false_alarm = sdt::phi(-c);
        total += ps * model.given_signal(y) * (hit * v.v_tp + (1.0 - hit) * v.v_fn);
        total += (1.0 - ps) * model.given_noise(y) * (false_alarm * v.v_fp + (1.0 - false_alarm) * v.v_tn);
    }
    return total;
}

TheoryReport theory_report(const AidedProblem& problem, std::string condition_id) {
    TheoryReport report;
    report.condition_id = std::move(condition_id);
    report.policy = optimal_contingent_policy(problem);
    report.centered_cutoff_red = sdt::centered_cutoff(problem.d_h, report.policy.cutoff_red);
    report.centered_cutoff_green = sdt::centered_cutoff(problem.d_h, report.policy.cutoff_green);
    report.cutoff_difference = report.centered_cutoff_green - report.centered_cutoff_red;
    report.joint = aided_joint_distribution(problem, report.policy);
    report.responsibility = theoretical_responsibility(problem);
    report.d_eff_policy = policy_d_eff(problem, report.policy);
    report.d_eff_approx = sdt::d_eff_approx(problem.d_h, problem.system.d_prime);
    report.expected_payoff = expected_payoff(problem, report.policy);
    report.p_red = report.joint.py(Indication::red);
    report.p_green = report.joint.py(Indication::green);
    return report;
}

std::vector<double> grid_axis(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw Error(ErrorCode::validation, "grid axis needs lo <= hi and step > 0");
    std::vector<double> axis;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) axis.push_back(lo + static_cast<double>(i) * step);
    if (hi - axis.back() > 1e-9) axis.push_back(hi);
    return axis;
}

ResponsibilitySurface responsibility_surface(const std::vector<double>& d_h, const std::vector<double>& d_a,
                                             const sdt::Environment& env, const sdt::PayoffMatrix& payoffs,
                                             double beta_a) {
    auto check_axis = [](const std::vector<double>& axis, const char* name) {
        if (axis.empty()) throw Error(ErrorCode::validation, std::string("empty grid axis ") + name);
        for (double v : axis)
            if (!(v > 0.0 && v <= 5.0)) throw Error(ErrorCode::validation, std::string(name) + " grid outside (0,5]");
    };
    check_axis(d_h, "d_h");
    check_axis(d_a, "d_a");

    ResponsibilitySurface surface{d_h, d_a, std::vector<double>(d_h.size() * d_a.size())};
    for (std::size_t i = 0; i < d_h.size(); ++i) {
        for (std::size_t j = 0; j < d_a.size(); ++j) {
            AidedProblem problem{env, d_h[i], {d_a[j], beta_a}, payoffs};
            surface.values[i * d_a.size() + j] = theoretical_responsibility(problem);
        }
    }
    return surface;
}

void write_surface_csv(std::ostream& out, const ResponsibilitySurface& surface) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out.setf(std::ios::fixed);
    out.precision(4);
    out << "d_h";
    for (double a : surface.d_a) out << ',' << a;
    out << '\n';
    for (std::size_t i = 0; i < surface.d_h.size(); ++i) {
        out << surface.d_h[i];
        for (std::size_t j = 0; j < surface.d_a.size(); ++j) out << ',' << surface.at(i, j);
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

}  // namespace resqu::theory
