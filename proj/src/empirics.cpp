#include "resqu/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "resqu/error.hpp"

namespace resqu::empirics {

std::vector<TrialRecord> select_blocks(std::span<const TrialRecord> trials, BlockFilter filter) {
    if (filter == BlockFilter::all) return {trials.begin(), trials.end()};
    std::set<std::pair<std::string, std::string>> has_later_blocks;
    for (const auto& t : trials)
        if (t.block >= 2) has_later_blocks.emplace(t.session_id, t.condition_id);
    std::vector<TrialRecord> kept;
    for (const auto& t : trials) {
        if (t.block == 1 && has_later_blocks.contains({t.session_id, t.condition_id})) continue;
        kept.push_back(t);
    }
    return kept;
}

std::map<std::string, std::vector<TrialRecord>> group_by_condition(std::span<const TrialRecord> trials) {
    std::map<std::string, std::vector<TrialRecord>> groups;
    for (const auto& t : trials) groups[t.condition_id].push_back(t);
    return groups;
}

std::map<std::string, std::vector<TrialRecord>> group_by_session(std::span<const TrialRecord> trials) {
    std::map<std::string, std::vector<TrialRecord>> groups;
    for (const auto& t : trials) groups[t.session_id].push_back(t);
    return groups;
}

info::JointPmf2x2 empirical_joint(std::span<const TrialRecord> trials) {
    std::array<std::array<long long, 2>, 2> counts{};
    for (const auto& t : trials) ++counts[index(t.response)][index(t.indication)];
    return info::JointPmf2x2::from_counts(counts);
}

double measured_responsibility(std::span<const TrialRecord> trials) {
    long long red = 0;
    for (const auto& t : trials) red += t.indication == Indication::red;
    const auto green = static_cast<long long>(trials.size()) - red;
    if (red == 0 || green == 0) {
        throw Error(ErrorCode::insufficient_data,
                    std::string("no trials with a ") + (red == 0 ? "red" : "green") + " indication");
    }
    return info::responsibility(empirical_joint(trials));
}

double corrected_rate(long long k, long long n) {
    if (n < 1 || k < 0 || k > n) throw Error(ErrorCode::insufficient_data, "rate needs 0 <= k <= n and n >= 1");
    return (static_cast<double>(k) + 0.5) / (static_cast<double>(n) + 1.0);
}

namespace {

struct RateCounts {
    long long n_signal = 0;
    long long n_noise = 0;
    long long hits = 0;
    long long false_alarms = 0;

    void add(const TrialRecord& t) {
        const bool reject = t.response == Response::reject;
        if (t.true_state == TrueState::signal) {
            ++n_signal;
            hits += reject;
        } else {
            ++n_noise;
            false_alarms += reject;
        }
    }
};

IndicationSdt indication_sdt(const RateCounts& c) {
    IndicationSdt s;
    s.n_signal = c.n_signal;
    s.n_noise = c.n_noise;
    s.hits = c.hits;
    s.false_alarms = c.false_alarms;
    s.hit_rate = corrected_rate(c.hits, c.n_signal);
    s.false_alarm_rate = corrected_rate(c.false_alarms, c.n_noise);
    const double z_hit = sdt::phi_inv(s.hit_rate);
    const double z_fa = sdt::phi_inv(s.false_alarm_rate);
    s.d_prime = z_hit - z_fa;
    s.centered_cutoff = -(z_hit + z_fa) / 2.0;
    s.absolute_cutoff = -z_fa;
    return s;
}

}  // namespace

PerIndicationSdt per_indication_sdt(std::span<const TrialRecord> trials) {
    RateCounts red, green;
    for (const auto& t : trials) (t.indication == Indication::red ? red : green).add(t);

    std::vector<std::string> empty;
    if (red.n_signal == 0) empty.emplace_back("red/signal");
    if (red.n_noise == 0) empty.emplace_back("red/noise");
    if (green.n_signal == 0) empty.emplace_back("green/signal");
    if (green.n_noise == 0) empty.emplace_back("green/noise");
    if (!empty.empty()) {
        std::ostringstream msg;
        msg << "empty cell(s):";
        for (const auto& cell : empty) msg << ' ' << cell;
        throw Error(ErrorCode::insufficient_data, msg.str());
    }

    PerIndicationSdt result;
    result.red = indication_sdt(red);
    result.green = indication_sdt(green);
    result.cutoff_difference = result.green.centered_cutoff - result.red.centered_cutoff;
    return result;
}

double d_eff_empirical(std::span<const TrialRecord> trials) {
    RateCounts all;
    for (const auto& t : trials) all.add(t);
    if (all.n_signal == 0 || all.n_noise == 0) {
        throw Error(ErrorCode::insufficient_data, all.n_signal == 0 ? "no signal trials" : "no noise trials");
    }
    return sdt::phi_inv(corrected_rate(all.hits, all.n_signal)) -
           sdt::phi_inv(corrected_rate(all.false_alarms, all.n_noise));
}

EmpiricalReport empirical_report(std::span<const TrialRecord> trials, std::string condition_id) {
    EmpiricalReport report;
    report.condition_id = std::move(condition_id);
    report.measured_responsibility = measured_responsibility(trials);
    try {
        report.sdt = per_indication_sdt(trials);
        report.cutoff_difference = report.sdt->cutoff_difference;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::insufficient_data) throw;
        report.sdt_issue = e.what();
    }
    report.d_eff_empirical = d_eff_empirical(trials);
    report.trial_count = static_cast<long long>(trials.size());
    long long red = 0;
    for (const auto& t : trials) {
        report.total_score += t.payoff;
        red += t.indication == Indication::red;
    }
    report.p_red = static_cast<double>(red) / static_cast<double>(trials.size());
    return report;
}

TrustDeviations trust_deviations(const EmpiricalReport& empirical, const theory::TheoryReport& theory) {
    if (!empirical.condition_id.empty() && !theory.condition_id.empty() &&
        empirical.condition_id != theory.condition_id) {
        throw Error(ErrorCode::condition_mismatch,
                    "empirical '" + empirical.condition_id + "' vs theoretical '" + theory.condition_id + "'");
    }
    if (!empirical.sdt) throw Error(ErrorCode::insufficient_data, "no per-indication measures: " + empirical.sdt_issue);
    TrustDeviations d;
    d.cutoff_red = theory.centered_cutoff_red - empirical.sdt->red.centered_cutoff;
    d.cutoff_green = theory.centered_cutoff_green - empirical.sdt->green.centered_cutoff;
    d.cutoff_difference = theory.cutoff_difference - *empirical.cutoff_difference;
    d.d_eff = theory.d_eff_policy - empirical.d_eff_empirical;
    d.responsibility = theory.responsibility - empirical.measured_responsibility;
    d.weight_red = theory.p_red;
    d.weight_green = theory.p_green;
    d.weighted_cutoff_deviation = d.weight_red * std::abs(d.cutoff_red) + d.weight_green * std::abs(d.cutoff_green);
    return d;
}

ComparisonRow compare(const EmpiricalReport& empirical, const theory::TheoryReport& theory) {
    if (!empirical.condition_id.empty() && !theory.condition_id.empty() &&
        empirical.condition_id != theory.condition_id) {
        throw Error(ErrorCode::condition_mismatch,
                    "empirical '" + empirical.condition_id + "' vs theoretical '" + theory.condition_id + "'");
    }
    return {empirical.condition_id.empty() ? theory.condition_id : empirical.condition_id,
            theory.responsibility,
            empirical.measured_responsibility,
            theory.d_eff_policy,
            empirical.d_eff_empirical,
            theory.cutoff_difference,
            empirical.cutoff_difference};
}

void write_comparison_table(std::ostream& out, std::span<const ComparisonRow> rows) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3);
    s << "condition,resp_theory,resp_empirical,resp_diff,"
         "d_eff_theory,d_eff_empirical,d_eff_diff,"
         "cutoff_diff_theory,cutoff_diff_empirical,cutoff_diff_diff\n";
    for (const auto& r : rows) {
        s << r.condition_id << ',' << r.responsibility_theory << ',' << r.responsibility_empirical << ','
          << r.responsibility_empirical - r.responsibility_theory << ',' << r.d_eff_theory << ','
          << r.d_eff_empirical << ',' << r.d_eff_empirical - r.d_eff_theory << ',' << r.cutoff_difference_theory
          << ',';
        if (r.cutoff_difference_empirical) {
            s << *r.cutoff_difference_empirical << ',' << *r.cutoff_difference_empirical - r.cutoff_difference_theory;
        } else {
            s << ',';
        }
        s << '\n';
    }
    out << s.str();
}

double subjective_self(const QuestionnaireRecord& record) {
    for (int item : record.items) {
        if (item < 1 || item > 7) throw Error(ErrorCode::validation, "questionnaire item outside [1,7]");
    }
    return (reverse_item(record.q(3)) + reverse_item(record.q(4)) + record.q(5)) / 3.0;
}

namespace {

double sample_variance(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

std::optional<double> cronbach_alpha(const std::vector<std::vector<double>>& responses) {
    if (responses.size() < 2) return std::nullopt;
    const std::size_t k = responses.front().size();
    if (k < 2) return std::nullopt;
    for (const auto& row : responses)
        if (row.size() != k) throw Error(ErrorCode::validation, "ragged response matrix");

    double item_variance_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> column;
        for (const auto& row : responses) column.push_back(row[j]);
        item_variance_sum += sample_variance(column);
    }
    std::vector<double> totals;
    for (const auto& row : responses) totals.push_back(std::accumulate(row.begin(), row.end(), 0.0));
    const double total_variance = sample_variance(totals);
    if (total_variance <= 0.0) return std::nullopt;
    const double kd = static_cast<double>(k);
    return kd / (kd - 1.0) * (1.0 - item_variance_sum / total_variance);
}

std::map<std::string, SubjectiveReport> questionnaire_scores(std::span<const QuestionnaireRecord> records) {
    std::map<std::string, std::vector<const QuestionnaireRecord*>> by_condition;
    for (const auto& r : records) by_condition[r.condition_id].push_back(&r);

    std::map<std::string, SubjectiveReport> reports;
    for (const auto& [condition, group] : by_condition) {
        SubjectiveReport report;
        report.condition_id = condition;
        report.respondents = group.size();
        std::vector<std::vector<double>> self_items;
        for (const auto* r : group) {
            report.subjective_self += subjective_self(*r);
            report.subjective_other += r->q(6);
            self_items.push_back({static_cast<double>(reverse_item(r->q(3))),
                                  static_cast<double>(reverse_item(r->q(4))), static_cast<double>(r->q(5))});
        }
        report.subjective_self /= static_cast<double>(group.size());
        report.subjective_other /= static_cast<double>(group.size());
        report.cronbach_alpha = cronbach_alpha(self_items);
        reports.emplace(condition, std::move(report));
    }
    return reports;
}

std::vector<double> normalize_scores(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::degenerate_normalization, "no values to normalize");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) throw Error(ErrorCode::degenerate_normalization, "all values are equal");
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back((v - *lo) / range);
    return out;
}

namespace {

double pearson(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorCode::zero_variance, "constant series in correlation");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

Correlation correlate(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3) {
        throw Error(ErrorCode::validation, "correlation needs two series of equal length >= 3");
    }
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    return {pearson(xs, ys), pearson(rx, ry)};
}

}  // namespace resqu::empirics
