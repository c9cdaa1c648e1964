#pragma once

// Live-experiment session service. All randomness (state, observations,
// indication, on-screen position) is drawn server-side from the config seed;
// clients only ever see the indication and the rendered stimulus.
//
// Storage, one directory per session under <data_dir>/sessions/<id>/:
//   session.json        participant, assigned order (written once)
//   trials.jsonl        one trial record per answered trial, fsynced before ack
//   questionnaire.jsonl one record per completed condition
// Restarting replays the logs; a torn final line is discarded.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "resqu/config.hpp"
#include "resqu/trial_log.hpp"

namespace resqu {

/// Request-level failure with the HTTP status it maps to.
class ServiceError : public std::runtime_error {
public:
    ServiceError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

class SessionService {
public:
    using Clock = std::function<std::int64_t()>;  // milliseconds, monotonic

    SessionService(ExperimentConfig config, std::filesystem::path data_dir, Clock clock = {});
    ~SessionService();

    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    /// {session_id, participant_id, plan: [{condition_id, blocks, trials_per_block}]}
    nlohmann::json create(const nlohmann::json& request);
    /// {status: trial|questionnaire|complete, ...}; for a trial: trial_index,
    /// block, condition_id, indicator, height_px, position {x, y},
    /// display_timeout_ms, stimulus_hidden.
    nlohmann::json next(const std::string& session_id);
    /// {trial_index, response, rt_ms} -> {correct, feedback, payoff, total}
    nlohmann::json respond(const std::string& session_id, const nlohmann::json& request);
    /// {q1..q6} for the condition just finished.
    nlohmann::json questionnaire(const std::string& session_id, const nlohmann::json& request);
    nlohmann::json report(const std::string& session_id);

    const ExperimentConfig& config() const noexcept { return config_; }
    std::filesystem::path session_dir(const std::string& session_id) const;

private:
    struct Session;

    Session& find(const std::string& session_id);
    void recover();

    ExperimentConfig config_;
    std::filesystem::path data_dir_;
    Clock clock_;
    std::mutex mutex_;  // guards sessions_ and next_number_
    std::map<std::string, std::unique_ptr<Session>> sessions_;
    long long next_number_ = 1;
};

}  // namespace resqu
