#pragma once

// Measured responsibility, SDT trust measures and questionnaire scoring
// from trial logs.
//
// Hit and false-alarm rates use the log-linear correction (k + 0.5)/(n + 1)
// so every non-empty cell gives finite z-scores. Cutoffs are reported in
// centered units, -(z(HR) + z(FAR))/2, with the absolute cutoff -z(FAR)
// alongside.

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resqu/infotheory.hpp"
#include "resqu/theory.hpp"
#include "resqu/trial_log.hpp"

namespace resqu::empirics {

enum class BlockFilter {
    second_only,  // drop block 1 wherever a (session, condition) has later blocks
    all,
};

std::vector<TrialRecord> select_blocks(std::span<const TrialRecord> trials, BlockFilter filter);

std::map<std::string, std::vector<TrialRecord>> group_by_condition(std::span<const TrialRecord> trials);
std::map<std::string, std::vector<TrialRecord>> group_by_session(std::span<const TrialRecord> trials);

/// Relative frequencies of (response, indication).
info::JointPmf2x2 empirical_joint(std::span<const TrialRecord> trials);

/// Responsibility of the plug-in joint. Throws Error(insufficient_data) when
/// an indication never occurs and Error(degenerate_human_distribution) when
/// only one response occurs.
double measured_responsibility(std::span<const TrialRecord> trials);

/// (k + 0.5)/(n + 1). Requires n >= 1.
double corrected_rate(long long k, long long n);

struct IndicationSdt {
    long long n_signal = 0;
    long long n_noise = 0;
    long long hits = 0;
    long long false_alarms = 0;
    double hit_rate = 0.0;
    double false_alarm_rate = 0.0;
    double d_prime = 0.0;
    double centered_cutoff = 0.0;
    double absolute_cutoff = 0.0;
};

struct PerIndicationSdt {
    IndicationSdt red;
    IndicationSdt green;
    double cutoff_difference = 0.0;  // green - red, centered

    const IndicationSdt& at(Indication y) const noexcept { return y == Indication::red ? red : green; }
};

/// Throws Error(insufficient_data) naming every empty (indication, state) cell.
PerIndicationSdt per_indication_sdt(std::span<const TrialRecord> trials);

/// z(HR) - z(FAR) of the final decisions, indications ignored.
double d_eff_empirical(std::span<const TrialRecord> trials);

struct EmpiricalReport {
    std::string condition_id;
    double measured_responsibility = 0.0;
    /// Empty when an (indication, state) cell has no trials; sdt_issue says which.
    std::optional<PerIndicationSdt> sdt;
    std::string sdt_issue;
    std::optional<double> cutoff_difference;
    double d_eff_empirical = 0.0;
    long long total_score = 0;
    long long trial_count = 0;
    double p_red = 0.0;
};

/// All measures for one condition's trials. Per-indication measures are left
/// empty rather than failing the report when a cell is empty.
EmpiricalReport empirical_report(std::span<const TrialRecord> trials, std::string condition_id = {});

/// Deviations in the reliance/compliance convention: theory minus empirical.
struct TrustDeviations {
    double cutoff_red = 0.0;
    double cutoff_green = 0.0;
    double cutoff_difference = 0.0;
    double d_eff = 0.0;
    double responsibility = 0.0;
    double weight_red = 0.0;  // theoretical P(red)
    double weight_green = 0.0;
    /// P(red)|dev_red| + P(green)|dev_green|: the expected cutoff deviation per trial.
    double weighted_cutoff_deviation = 0.0;
};

/// Throws Error(condition_mismatch) when both reports carry different condition
/// ids and Error(insufficient_data) when the report has no per-indication measures.
TrustDeviations trust_deviations(const EmpiricalReport& empirical, const theory::TheoryReport& theory);

/// One row of the theory/empirics comparison table: (theoretical, empirical,
/// empirical minus theoretical) for responsibility, d'_eff and cutoff difference.
struct ComparisonRow {
    std::string condition_id;
    double responsibility_theory = 0.0;
    double responsibility_empirical = 0.0;
    double d_eff_theory = 0.0;
    double d_eff_empirical = 0.0;
    double cutoff_difference_theory = 0.0;
    std::optional<double> cutoff_difference_empirical;  // blank in the table when absent
};

ComparisonRow compare(const EmpiricalReport& empirical, const theory::TheoryReport& theory);
void write_comparison_table(std::ostream& out, std::span<const ComparisonRow> rows);

inline int reverse_item(int item) noexcept { return 8 - item; }

/// Mean of reversed Q3, reversed Q4 and Q5.
double subjective_self(const QuestionnaireRecord& record);

/// Cronbach's alpha of the columns of a respondents x items matrix. Empty
/// when there are fewer than two respondents or the total score has zero variance.
std::optional<double> cronbach_alpha(const std::vector<std::vector<double>>& responses);

struct SubjectiveReport {
    std::string condition_id;
    double subjective_self = 0.0;   // mean over respondents, 1..7
    double subjective_other = 0.0;  // mean Q6
    std::optional<double> cronbach_alpha;
    std::size_t respondents = 0;
};

/// Per-condition subjective scores. Throws Error(validation) on items outside [1,7].
std::map<std::string, SubjectiveReport> questionnaire_scores(std::span<const QuestionnaireRecord> records);

/// Min-max normalization onto [0,1]. Throws Error(degenerate_normalization)
/// when all values are equal.
std::vector<double> normalize_scores(std::span<const double> values);

struct Correlation {
    double pearson = 0.0;
    double spearman = 0.0;
};

/// Product-moment and rank (average ranks for ties) correlations. Requires
/// equal lengths >= 3; throws Error(zero_variance) on a constant series.
Correlation correlate(std::span<const double> xs, std::span<const double> ys);

}  // namespace resqu::empirics
