#pragma once

// Equal-variance Gaussian signal detection.
//
// Convention: noise ~ N(0,1), signal ~ N(d',1) on the observation axis.
// The likelihood ratio at x is exp(d' x - d'^2/2), so a criterion beta maps
// to the absolute cutoff ln(beta)/d' + d'/2. Tables of cutoffs use the
// centered coordinate ln(beta)/d', measured from the midpoint d'/2.
// An observation above the cutoff is classified as signal.

#include "resqu/types.hpp"

namespace resqu::sdt {

struct DetectorParams {
    double d_prime = 0.0;
    double beta = 1.0;

    /// Throws Error(validation) unless d_prime >= 0 and beta > 0.
    void validate() const;
};

struct PayoffMatrix {
    double v_tp = 1.0;
    double v_tn = 1.0;
    double v_fp = -1.0;
    double v_fn = -2.0;

    /// The quality-control payoff scheme: +1 TP, +1 TN, -1 FP, -2 FN.
    static constexpr PayoffMatrix experiment() noexcept { return {1.0, 1.0, -1.0, -2.0}; }

    /// Throws Error(validation) unless v_tp > v_fn and v_tn > v_fp.
    void validate() const;

    double payoff(TrueState state, Response response) const noexcept;
};

struct Environment {
    double p_signal = 0.5;

    /// Throws Error(validation) unless 0 < p_signal < 1.
    void validate() const;
};

struct DetectorRates {
    double hit_rate = 0.0;
    double false_alarm_rate = 0.0;
};

struct SystemOutcomeProfile {
    double cutoff = 0.0;  // absolute
    double hit_rate = 0.0;
    double false_alarm_rate = 0.0;
    double ppv = 0.0;      // P(signal | red)
    double npv = 0.0;      // P(noise | green)
    double p_alarm = 0.0;  // P(red)
};

/// Standard normal CDF.
double phi(double z) noexcept;

/// Standard normal quantile. Throws Error(domain) unless 0 < p < 1.
double phi_inv(double p);

/// Absolute cutoff for criterion beta. Throws Error(no_discrimination) for
/// d = 0 and Error(domain) for non-positive beta. beta may be 0 or +inf,
/// giving an infinite cutoff.
double cutoff_from_beta(double d, double beta);

/// Likelihood ratio at an absolute cutoff: exp(d c - d^2/2).
double beta_from_cutoff(double d, double cutoff);

inline double centered_cutoff(double d, double absolute) noexcept { return absolute - d / 2.0; }
inline double absolute_cutoff(double d, double centered) noexcept { return centered + d / 2.0; }

/// Hit rate phi(d - c) and false-alarm rate phi(-c) for an absolute cutoff c.
DetectorRates detector_rates(double d, double cutoff) noexcept;

/// Expected-payoff maximizing criterion for a signal probability p in [0,1]:
/// ((1-p)/p) * ((v_tn - v_fp)/(v_tp - v_fn)). p = 0 gives +inf and p = 1 gives 0.
double optimal_beta(double p_signal, const PayoffMatrix& payoffs);
double optimal_beta(const Environment& env, const PayoffMatrix& payoffs);

/// P(signal | indication) given the system's rates. Throws
/// Error(impossible_indication) when the indication has probability 0.
double posterior_given_indication(const Environment& env, const DetectorRates& rates, Indication indication);
double posterior_given_indication(const Environment& env, const SystemOutcomeProfile& profile,
                                  Indication indication);

/// Rates, predictive values and alarm probability for a system detector.
/// Throws Error(no_discrimination) when system.d_prime == 0.
SystemOutcomeProfile system_outcome_profile(const Environment& env, const DetectorParams& system);

enum class DeffForm {
    product,     // sqrt(dh^2 + da^2 - 0.3 dh da)
    as_printed,  // sqrt(dh^2 + da^2 - 0.3 dh^2 da^2); comparison only
};

/// Approximate ceiling on the combined sensitivity of a human aided by a
/// binary system. Throws Error(domain) on negative inputs or radicand.
double d_eff_approx(double d_h, double d_a, DeffForm form = DeffForm::product);

}  // namespace resqu::sdt
