#pragma once

// Line-delimited JSON trial and questionnaire logs.
//
// Trial line fields: session_id, condition_id, block, trial_index,
// true_state, indication, stimulus_value, response, payoff, rt_ms, plus the
// optional boolean stimulus_hidden (set when the response came after the
// display timeout). Any other field is rejected.
//
// Questionnaire line fields: session_id, condition_id, q1..q6.

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resqu/sdt.hpp"
#include "resqu/types.hpp"

namespace resqu {

struct TrialRecord {
    std::string session_id;
    std::string condition_id;
    int block = 1;
    long long trial_index = 0;
    TrueState true_state = TrueState::noise;
    Indication indication = Indication::green;
    double stimulus_value = 0.0;
    Response response = Response::accept;
    int payoff = 0;
    std::optional<long long> rt_ms;
    bool stimulus_hidden = false;

    bool correct() const noexcept {
        return (true_state == TrueState::signal) == (response == Response::reject);
    }
};

struct QuestionnaireRecord {
    std::string session_id;
    std::string condition_id;
    std::array<int, 6> items{};  // q1..q6

    int q(int i) const { return items.at(static_cast<std::size_t>(i - 1)); }
};

/// Integer payoff of a trial outcome under the matrix (rounded to nearest).
int trial_payoff(const sdt::PayoffMatrix& payoffs, TrueState state, Response response);

std::string to_json_line(const TrialRecord& record);
std::string to_json_line(const QuestionnaireRecord& record);

void write_log(std::ostream& out, std::span<const TrialRecord> records);
void write_questionnaires(std::ostream& out, std::span<const QuestionnaireRecord> records);

/// Parses and validates a single trial line. Throws Error(schema) or
/// Error(payoff_inconsistency); messages carry the 1-based line number.
TrialRecord parse_trial_line(const std::string& line, std::size_t line_number,
                             const sdt::PayoffMatrix& payoffs = sdt::PayoffMatrix::experiment());

/// Blank lines are skipped. Throws on the first malformed line, on payoff
/// inconsistency and on a repeated trial_index within (session_id, condition_id).
std::vector<TrialRecord> parse_log(std::istream& in,
                                   const sdt::PayoffMatrix& payoffs = sdt::PayoffMatrix::experiment());

std::vector<QuestionnaireRecord> parse_questionnaires(std::istream& in);

}  // namespace resqu
