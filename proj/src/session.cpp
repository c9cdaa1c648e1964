#include "resqu/session.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "resqu/empirics.hpp"
#include "resqu/error.hpp"
#include "resqu/simulator.hpp"

namespace resqu {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_failure(const std::string& what, const fs::path& path) {
    throw std::runtime_error(what + " " + path.string() + ": " + std::strerror(errno));
}

void fsync_path(const fs::path& path, int flags) {
    const int fd = ::open(path.c_str(), flags);
    if (fd < 0) io_failure("cannot open", path);
    const int rc = ::fsync(fd);
    ::close(fd);
    if (rc != 0) io_failure("cannot fsync", path);
}

// Appends one line and returns only once it has reached the disk.
void append_durably(const fs::path& path, const std::string& line) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) io_failure("cannot open", path);
    const std::string data = line + '\n';
    std::size_t written = 0;
    while (written < data.size()) {
        const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
        if (n < 0 && errno == EINTR) continue;
        if (n < 0) {
            ::close(fd);
            io_failure("cannot write", path);
        }
        written += static_cast<std::size_t>(n);
    }
    const int rc = ::fsync(fd);
    ::close(fd);
    if (rc != 0) io_failure("cannot fsync", path);
}

void write_atomically(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) io_failure("cannot write", tmp);
        out << content;
    }
    fsync_path(tmp, O_RDONLY);
    fs::rename(tmp, path);
    fsync_path(path.parent_path(), O_RDONLY | O_DIRECTORY);
}

// Complete lines of a log; a torn tail (no newline or unparseable last line)
// is cut off the file so later appends start clean.
std::vector<std::string> read_log_lines(const fs::path& path, const std::function<bool(const std::string&)>& valid) {
    std::vector<std::string> lines;
    if (!fs::exists(path)) return lines;
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t start = 0, good_end = 0;
    while (start < content.size()) {
        const auto nl = content.find('\n', start);
        if (nl == std::string::npos) break;
        std::string line = content.substr(start, nl - start);
        const bool last = nl + 1 >= content.size();
        if (!line.empty()) {
            if (!valid(line)) {
                if (!last) throw std::runtime_error("corrupt log " + path.string());
                break;
            }
            lines.push_back(std::move(line));
        }
        start = nl + 1;
        good_end = start;
    }
    if (good_end != content.size()) {
        fs::resize_file(path, good_end);
        fsync_path(path, O_WRONLY);
    }
    return lines;
}

std::int64_t steady_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

struct SessionService::Session {
    struct Stage {
        const ConditionConfig* condition = nullptr;
        std::unique_ptr<sim::TrialSource> source;
        long long answered = 0;
        long long score = 0;
        bool questionnaire_done = false;
        std::vector<TrialRecord> records;
    };

    std::mutex mutex;  // serializes requests for this session
    std::string id;
    std::string participant_id;
    std::size_t order_index = 0;
    std::vector<Stage> stages;
    long long total = 0;
    std::optional<std::int64_t> shown_at;  // first display of the pending trial

    // Index of the stage awaiting trials or a questionnaire; stages.size() when done.
    std::size_t current() const {
        for (std::size_t i = 0; i < stages.size(); ++i)
            if (!stages[i].questionnaire_done) return i;
        return stages.size();
    }
};

SessionService::SessionService(ExperimentConfig config, fs::path data_dir, Clock clock)
    : config_(std::move(config)), data_dir_(std::move(data_dir)), clock_(clock ? std::move(clock) : steady_ms) {
    config_.validate();
    fs::create_directories(data_dir_ / "sessions");
    recover();
}

SessionService::~SessionService() = default;

fs::path SessionService::session_dir(const std::string& session_id) const { return data_dir_ / "sessions" / session_id; }

namespace {

std::string format_id(long long number) {
    std::ostringstream s;
    s << 's' << std::setw(4) << std::setfill('0') << number;
    return s.str();
}

}  // namespace

json SessionService::create(const json& request) {
    if (!request.is_object() || !request.contains("participant_id") || !request["participant_id"].is_string() ||
        request["participant_id"].get<std::string>().empty()) {
        throw ServiceError(400, "participant_id must be a non-empty string");
    }
    auto session = std::make_unique<Session>();
    session->participant_id = request["participant_id"].get<std::string>();

    std::lock_guard lock(mutex_);
    const long long number = next_number_++;
    session->id = format_id(number);
    // Successive participants cycle through the configured orders.
    session->order_index = static_cast<std::size_t>(number - 1) % config_.orders.size();

    const fs::path dir = session_dir(session->id);
    fs::create_directories(dir);
    const json meta = {{"session_id", session->id},
                       {"participant_id", session->participant_id},
                       {"order_index", session->order_index},
                       {"conditions", config_.orders[session->order_index]}};
    write_atomically(dir / "session.json", meta.dump(2) + "\n");

    for (const auto& id : config_.orders[session->order_index]) {
        Session::Stage stage;
        stage.condition = &config_.condition(id);
        stage.source = std::make_unique<sim::TrialSource>(stage.condition->problem, stage.condition->schedule,
                                                          config_.seed, session->id, id);
        session->stages.push_back(std::move(stage));
    }

    json plan = json::array();
    for (const auto& stage : session->stages) {
        plan.push_back({{"condition_id", stage.condition->id},
                        {"blocks", stage.condition->schedule.blocks},
                        {"trials_per_block", stage.condition->schedule.trials_per_block}});
    }
    json reply = {{"session_id", session->id}, {"participant_id", session->participant_id}, {"plan", plan}};
    sessions_.emplace(session->id, std::move(session));
    return reply;
}

SessionService::Session& SessionService::find(const std::string& session_id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw ServiceError(404, "unknown session '" + session_id + "'");
    return *it->second;
}

json SessionService::next(const std::string& session_id) {
    Session& s = find(session_id);
    std::lock_guard lock(s.mutex);
    const std::size_t i = s.current();
    if (i == s.stages.size()) return {{"status", "complete"}, {"total", s.total}};
    auto& stage = s.stages[i];
    if (stage.answered == stage.source->size()) {
        return {{"status", "questionnaire"}, {"condition_id", stage.condition->id}, {"total", s.total}};
    }

    const auto draw = stage.source->draw(stage.answered);
    const auto& r = config_.rendering;
    const int height = r.height_px(draw.sample.human_observation);
    CounterRng place(StreamKey(config_.seed)
                         .with(s.id)
                         .with(stage.condition->id)
                         .with("position")
                         .with(static_cast<std::uint64_t>(draw.trial_index)));
    const auto x = static_cast<int>(place.below(static_cast<std::uint64_t>(r.square_px - r.rect_width_px + 1)));
    const auto y = static_cast<int>(place.below(static_cast<std::uint64_t>(r.square_px - height + 1)));

    const std::int64_t now = clock_();
    if (!s.shown_at) s.shown_at = now;
    const bool hidden = now - *s.shown_at > config_.display_timeout_ms;
    return {{"status", "trial"},
            {"condition_id", stage.condition->id},
            {"trial_index", draw.trial_index},
            {"block", draw.block},
            {"trials_in_condition", stage.source->size()},
            {"indicator", to_string(draw.sample.indication)},
            {"height_px", height},
            {"position", {{"x", x}, {"y", y}}},
            {"display_timeout_ms", config_.display_timeout_ms},
            {"stimulus_hidden", hidden},
            {"total", s.total}};
}

json SessionService::respond(const std::string& session_id, const json& request) {
    Session& s = find(session_id);
    std::lock_guard lock(s.mutex);
    if (!request.is_object() || !request.contains("trial_index") || !request["trial_index"].is_number_integer()) {
        throw ServiceError(400, "trial_index must be an integer");
    }
    const auto response = request.contains("response") && request["response"].is_string()
                              ? parse_response(request["response"].get<std::string>())
                              : std::nullopt;
    if (!response) throw ServiceError(400, "response must be 'reject' or 'accept'");
    std::optional<long long> rt_ms;
    if (auto it = request.find("rt_ms"); it != request.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() < 0) {
            throw ServiceError(400, "rt_ms must be a non-negative integer");
        }
        rt_ms = it->get<long long>();
    }

    const std::size_t i = s.current();
    if (i == s.stages.size()) throw ServiceError(409, "session is complete");
    auto& stage = s.stages[i];
    const long long trial_index = request["trial_index"].get<long long>();
    if (stage.answered == stage.source->size()) throw ServiceError(409, "questionnaire pending");
    if (trial_index < stage.answered) throw ServiceError(409, "trial already answered");
    if (trial_index != stage.answered) throw ServiceError(409, "trial is not the pending one");

    const auto draw = stage.source->draw(trial_index);
    TrialRecord record;
    record.session_id = s.id;
    record.condition_id = stage.condition->id;
    record.block = draw.block;
    record.trial_index = trial_index;
    record.true_state = draw.sample.state;
    record.indication = draw.sample.indication;
    record.stimulus_value = draw.sample.human_observation;
    record.response = *response;
    record.payoff = trial_payoff(stage.condition->problem.payoffs, record.true_state, record.response);
    record.rt_ms = rt_ms;
    record.stimulus_hidden = s.shown_at && clock_() - *s.shown_at > config_.display_timeout_ms;

    append_durably(session_dir(s.id) / "trials.jsonl", to_json_line(record));

    ++stage.answered;
    stage.score += record.payoff;
    s.total += record.payoff;
    s.shown_at.reset();
    const bool correct = record.correct();
    stage.records.push_back(std::move(record));
    return {{"trial_index", trial_index},
            {"correct", correct},
            {"feedback", correct ? "correct" : "incorrect"},
            {"payoff", stage.records.back().payoff},
            {"total", s.total}};
}

json SessionService::questionnaire(const std::string& session_id, const json& request) {
    Session& s = find(session_id);
    std::lock_guard lock(s.mutex);
    const std::size_t i = s.current();
    if (i == s.stages.size()) throw ServiceError(409, "session is complete");
    auto& stage = s.stages[i];
    if (stage.answered != stage.source->size()) throw ServiceError(409, "condition still has trials pending");

    QuestionnaireRecord record{s.id, stage.condition->id, {}};
    for (int q = 1; q <= 6; ++q) {
        const std::string key = "q" + std::to_string(q);
        if (!request.is_object() || !request.contains(key) || !request[key].is_number_integer()) {
            throw ServiceError(400, key + " must be an integer");
        }
        const long long v = request[key].get<long long>();
        if (v < 1 || v > 7) throw ServiceError(400, key + " must lie in [1,7]");
        record.items[static_cast<std::size_t>(q - 1)] = static_cast<int>(v);
    }
    append_durably(session_dir(s.id) / "questionnaire.jsonl", to_json_line(record));
    stage.questionnaire_done = true;

    const std::size_t after = s.current();
    json reply = {{"condition_id", stage.condition->id}, {"total", s.total}};
    reply["status"] = after == s.stages.size() ? "complete" : "trial";
    if (after < s.stages.size()) reply["next_condition_id"] = s.stages[after].condition->id;
    return reply;
}

json SessionService::report(const std::string& session_id) {
    Session& s = find(session_id);
    std::lock_guard lock(s.mutex);
    json conditions = json::array();
    for (const auto& stage : s.stages) {
        json c = {{"condition_id", stage.condition->id},
                  {"trials_completed", stage.answered},
                  {"trials_total", stage.source->size()},
                  {"score", stage.score},
                  {"questionnaire_done", stage.questionnaire_done},
                  {"theoretical_responsibility", theory::theoretical_responsibility(stage.condition->problem)}};
        try {
            c["measured_responsibility"] = empirics::measured_responsibility(stage.records);
        } catch (const Error&) {
            c["measured_responsibility"] = nullptr;
        }
        conditions.push_back(std::move(c));
    }
    return {{"session_id", s.id},
            {"participant_id", s.participant_id},
            {"complete", s.current() == s.stages.size()},
            {"total", s.total},
            {"conditions", conditions}};
}

void SessionService::recover() {
    for (const auto& entry : fs::directory_iterator(data_dir_ / "sessions")) {
        if (!entry.is_directory() || !fs::exists(entry.path() / "session.json")) continue;
        std::ifstream meta_in(entry.path() / "session.json");
        const json meta = json::parse(meta_in);

        auto session = std::make_unique<Session>();
        session->id = meta.at("session_id").get<std::string>();
        session->participant_id = meta.at("participant_id").get<std::string>();
        session->order_index = meta.at("order_index").get<std::size_t>();
        for (const auto& id : meta.at("conditions").get<std::vector<std::string>>()) {
            Session::Stage stage;
            stage.condition = &config_.condition(id);
            stage.source = std::make_unique<sim::TrialSource>(stage.condition->problem, stage.condition->schedule,
                                                              config_.seed, session->id, id);
            session->stages.push_back(std::move(stage));
        }

        // A torn write leaves a final line that is not valid JSON.
        auto complete_json = [](const std::string& line) { return json::accept(line); };
        std::size_t stage_index = 0;
        std::size_t line_number = 0;
        for (const auto& line : read_log_lines(entry.path() / "trials.jsonl", complete_json)) {
            ++line_number;
            while (stage_index < session->stages.size() &&
                   session->stages[stage_index].answered == session->stages[stage_index].source->size()) {
                ++stage_index;
            }
            if (stage_index == session->stages.size()) throw std::runtime_error("extra trials in " + session->id);
            auto& stage = session->stages[stage_index];
            TrialRecord r = parse_trial_line(line, line_number, stage.condition->problem.payoffs);
            if (r.condition_id != stage.condition->id || r.trial_index != stage.answered) {
                throw std::runtime_error("out-of-sequence trial in session " + session->id);
            }
            ++stage.answered;
            stage.score += r.payoff;
            session->total += r.payoff;
            stage.records.push_back(std::move(r));
        }

        for (const auto& line : read_log_lines(entry.path() / "questionnaire.jsonl", complete_json)) {
            std::istringstream in(line);
            const auto q = parse_questionnaires(in).front();
            for (auto& stage : session->stages)
                if (stage.condition->id == q.condition_id) stage.questionnaire_done = true;
        }

        const auto digits = session->id.substr(1);
        next_number_ = std::max(next_number_, std::stoll(digits) + 1);
        sessions_.emplace(session->id, std::move(session));
    }
}

}  // namespace resqu
