#include "resqu/trial_log.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "resqu/error.hpp"

namespace resqu {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line << ": " << what;
    throw Error(ErrorCode::schema, msg.str());
}

const json& require(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(line, std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
    const json& v = require(obj, key, line);
    if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
        schema_error(line, std::string("field '") + key + "' must be a non-empty string");
    }
    return v.get<std::string>();
}

long long require_integer(const json& obj, const char* key, std::size_t line) {
    const json& v = require(obj, key, line);
    if (!v.is_number_integer()) schema_error(line, std::string("field '") + key + "' must be an integer");
    return v.get<long long>();
}

json parse_object(const std::string& text, std::size_t line) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        schema_error(line, std::string("invalid JSON (") + e.what() + ")");
    }
    if (!obj.is_object()) schema_error(line, "record must be a JSON object");
    return obj;
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> known, std::size_t line) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const char* k : known) found = found || key == k;
        if (!found) schema_error(line, "unknown field '" + key + "'");
    }
}

}  // namespace

int trial_payoff(const sdt::PayoffMatrix& payoffs, TrueState state, Response response) {
    return static_cast<int>(std::lround(payoffs.payoff(state, response)));
}

std::string to_json_line(const TrialRecord& r) {
    json obj = {
        {"session_id", r.session_id},
        {"condition_id", r.condition_id},
        {"block", r.block},
        {"trial_index", r.trial_index},
        {"true_state", to_string(r.true_state)},
        {"indication", to_string(r.indication)},
        {"stimulus_value", r.stimulus_value},
        {"response", to_string(r.response)},
        {"payoff", r.payoff},
    };
    obj["rt_ms"] = r.rt_ms ? json(*r.rt_ms) : json(nullptr);
    if (r.stimulus_hidden) obj["stimulus_hidden"] = true;
    return obj.dump();
}

std::string to_json_line(const QuestionnaireRecord& r) {
    json obj = {{"session_id", r.session_id}, {"condition_id", r.condition_id}};
    for (int i = 1; i <= 6; ++i) obj["q" + std::to_string(i)] = r.q(i);
    return obj.dump();
}

void write_log(std::ostream& out, std::span<const TrialRecord> records) {
    for (const auto& r : records) out << to_json_line(r) << '\n';
}

void write_questionnaires(std::ostream& out, std::span<const QuestionnaireRecord> records) {
    for (const auto& r : records) out << to_json_line(r) << '\n';
}

TrialRecord parse_trial_line(const std::string& text, std::size_t line, const sdt::PayoffMatrix& payoffs) {
    const json obj = parse_object(text, line);
    reject_unknown_fields(obj,
                          {"session_id", "condition_id", "block", "trial_index", "true_state", "indication",
                           "stimulus_value", "response", "payoff", "rt_ms", "stimulus_hidden"},
                          line);

    TrialRecord r;
    r.session_id = require_string(obj, "session_id", line);
    r.condition_id = require_string(obj, "condition_id", line);

    const long long block = require_integer(obj, "block", line);
    if (block < 1 || block > 1'000'000) schema_error(line, "block must be an integer >= 1");
    r.block = static_cast<int>(block);

    r.trial_index = require_integer(obj, "trial_index", line);
    if (r.trial_index < 0) schema_error(line, "trial_index must be >= 0");

    const auto state = parse_true_state(require_string(obj, "true_state", line));
    if (!state) schema_error(line, "true_state must be 'signal' or 'noise'");
    r.true_state = *state;

    const auto indication = parse_indication(require_string(obj, "indication", line));
    if (!indication) schema_error(line, "indication must be 'red' or 'green'");
    r.indication = *indication;

    const json& stimulus = require(obj, "stimulus_value", line);
    if (!stimulus.is_number() || !std::isfinite(stimulus.get<double>())) {
        schema_error(line, "stimulus_value must be a finite number");
    }
    r.stimulus_value = stimulus.get<double>();

    const json& response_field = require(obj, "response", line);
    const auto response = response_field.is_string() ? parse_response(response_field.get<std::string>())
                                                     : std::nullopt;
    if (!response) schema_error(line, "response must be 'reject' or 'accept'");
    r.response = *response;

    const long long payoff = require_integer(obj, "payoff", line);
    r.payoff = static_cast<int>(payoff);

    if (auto it = obj.find("rt_ms"); it != obj.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() < 0) {
            schema_error(line, "rt_ms must be a non-negative integer or null");
        }
        r.rt_ms = it->get<long long>();
    }
    if (auto it = obj.find("stimulus_hidden"); it != obj.end()) {
        if (!it->is_boolean()) schema_error(line, "stimulus_hidden must be a boolean");
        r.stimulus_hidden = it->get<bool>();
    }

    const int expected = trial_payoff(payoffs, r.true_state, r.response);
    if (payoff != expected) {
        std::ostringstream msg;
        msg << "line " << line << ": payoff " << payoff << " does not match " << to_string(r.true_state) << "/"
            << to_string(r.response) << " (expected " << expected << ")";
        throw Error(ErrorCode::payoff_inconsistency, msg.str());
    }
    return r;
}

std::vector<TrialRecord> parse_log(std::istream& in, const sdt::PayoffMatrix& payoffs) {
    std::vector<TrialRecord> records;
    std::set<std::tuple<std::string, std::string, long long>> seen;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        TrialRecord r = parse_trial_line(text, line, payoffs);
        if (!seen.emplace(r.session_id, r.condition_id, r.trial_index).second) {
            std::ostringstream msg;
            msg << "line " << line << ": trial_index " << r.trial_index << " repeated in session '" << r.session_id
                << "', condition '" << r.condition_id << "'";
            throw Error(ErrorCode::duplicate_trial, msg.str());
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<QuestionnaireRecord> parse_questionnaires(std::istream& in) {
    std::vector<QuestionnaireRecord> records;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        const json obj = parse_object(text, line);
        reject_unknown_fields(obj, {"session_id", "condition_id", "q1", "q2", "q3", "q4", "q5", "q6"}, line);
        QuestionnaireRecord r;
        r.session_id = require_string(obj, "session_id", line);
        r.condition_id = require_string(obj, "condition_id", line);
        for (int i = 1; i <= 6; ++i) {
            const std::string key = "q" + std::to_string(i);
            const long long v = require_integer(obj, key.c_str(), line);
            if (v < 1 || v > 7) schema_error(line, "item " + key + " must lie in [1,7]");
            r.items[static_cast<std::size_t>(i - 1)] = static_cast<int>(v);
        }
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace resqu
