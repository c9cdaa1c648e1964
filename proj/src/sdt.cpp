#include "resqu/sdt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "resqu/error.hpp"

namespace resqu::sdt {

void DetectorParams::validate() const {
    if (!(d_prime >= 0.0) || !std::isfinite(d_prime)) {
        throw Error(ErrorCode::validation, "detector d' must be finite and >= 0");
    }
    if (!(beta > 0.0)) throw Error(ErrorCode::validation, "detector beta must be > 0");
}

void PayoffMatrix::validate() const {
    if (!(v_tp > v_fn) || !(v_tn > v_fp)) {
        throw Error(ErrorCode::validation, "payoffs require v_tp > v_fn and v_tn > v_fp");
    }
}

double PayoffMatrix::payoff(TrueState state, Response response) const noexcept {
    if (state == TrueState::signal) return response == Response::reject ? v_tp : v_fn;
    return response == Response::reject ? v_fp : v_tn;
}

void Environment::validate() const {
    if (!(p_signal > 0.0 && p_signal < 1.0)) {
        throw Error(ErrorCode::validation, "p_signal must lie strictly inside (0,1)");
    }
}

double phi(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double phi_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::domain, "phi_inv requires 0 < p < 1");

    // Acklam's rational approximation (relative error ~1.2e-9) ...
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // ... refined by one Halley step against the erfc-based CDF.
    const double e = phi(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double cutoff_from_beta(double d, double beta) {
    if (d == 0.0) throw Error(ErrorCode::no_discrimination, "cutoff is undefined for d' = 0");
    if (!(beta >= 0.0)) throw Error(ErrorCode::domain, "beta must be non-negative");
    return std::log(beta) / d + d / 2.0;
}

double beta_from_cutoff(double d, double cutoff) {
    return std::exp(d * cutoff - d * d / 2.0);
}

DetectorRates detector_rates(double d, double cutoff) noexcept {
    return {phi(d - cutoff), phi(-cutoff)};
}

double optimal_beta(double p_signal, const PayoffMatrix& payoffs) {
    if (!(p_signal >= 0.0 && p_signal <= 1.0)) {
        throw Error(ErrorCode::domain, "signal probability must lie in [0,1]");
    }
    payoffs.validate();
    const double utility_ratio = (payoffs.v_tn - payoffs.v_fp) / (payoffs.v_tp - payoffs.v_fn);
    if (p_signal == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 - p_signal) / p_signal * utility_ratio;
}

double optimal_beta(const Environment& env, const PayoffMatrix& payoffs) {
    env.validate();
    return optimal_beta(env.p_signal, payoffs);
}

double posterior_given_indication(const Environment& env, const DetectorRates& rates, Indication indication) {
    env.validate();
    const double ps = env.p_signal;
    const double from_signal = indication == Indication::red ? rates.hit_rate : 1.0 - rates.hit_rate;
    const double from_noise = indication == Indication::red ? rates.false_alarm_rate : 1.0 - rates.false_alarm_rate;
    const double denominator = ps * from_signal + (1.0 - ps) * from_noise;
    if (!(denominator > 0.0)) {
        std::ostringstream msg;
        msg << "indication '" << to_string(indication) << "' has probability 0";
        throw Error(ErrorCode::impossible_indication, msg.str());
    }
    return ps * from_signal / denominator;
}

double posterior_given_indication(const Environment& env, const SystemOutcomeProfile& profile,
                                  Indication indication) {
    return posterior_given_indication(env, DetectorRates{profile.hit_rate, profile.false_alarm_rate}, indication);
}

SystemOutcomeProfile system_outcome_profile(const Environment& env, const DetectorParams& system) {
    env.validate();
    system.validate();
    SystemOutcomeProfile profile;
    profile.cutoff = cutoff_from_beta(system.d_prime, system.beta);
    const DetectorRates rates = detector_rates(system.d_prime, profile.cutoff);
    profile.hit_rate = rates.hit_rate;
    profile.false_alarm_rate = rates.false_alarm_rate;
    profile.p_alarm = env.p_signal * rates.hit_rate + (1.0 - env.p_signal) * rates.false_alarm_rate;
    profile.ppv = profile.p_alarm > 0.0 ? posterior_given_indication(env, rates, Indication::red) : 0.0;
    profile.npv = profile.p_alarm < 1.0 ? 1.0 - posterior_given_indication(env, rates, Indication::green) : 0.0;
    return profile;
}

double d_eff_approx(double d_h, double d_a, DeffForm form) {
    if (!(d_h >= 0.0) || !(d_a >= 0.0)) throw Error(ErrorCode::domain, "sensitivities must be >= 0");
    const double cross = form == DeffForm::product ? d_h * d_a : d_h * d_h * d_a * d_a;
    const double radicand = d_h * d_h + d_a * d_a - 0.3 * cross;
    if (radicand < 0.0) throw Error(ErrorCode::domain, "negative radicand in the effective d' approximation");
    return std::sqrt(radicand);
}

}  // namespace resqu::sdt
