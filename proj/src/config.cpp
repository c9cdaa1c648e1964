#include "resqu/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "resqu/error.hpp"

namespace resqu {

using json = nlohmann::json;

int Rendering::height_px(double observation) const {
    const double x = std::clamp(observation, clamp_lo_sd, clamp_hi_sd);
    return static_cast<int>(std::lround(base_px + x * px_per_sd));
}

void Rendering::validate() const {
    if (!(px_per_sd > 0.0)) throw Error(ErrorCode::validation, "rendering px_per_sd must be > 0");
    if (!(clamp_lo_sd < clamp_hi_sd)) throw Error(ErrorCode::validation, "rendering clamp range is empty");
    if (square_px < 1 || rect_width_px < 1 || rect_width_px > square_px) {
        throw Error(ErrorCode::validation, "rendering needs 1 <= rect_width_px <= square_px");
    }
    if (height_px(clamp_lo_sd) < 1 || height_px(clamp_hi_sd) > square_px) {
        throw Error(ErrorCode::validation, "rendered heights over the clamp range must fit the square");
    }
}

const ConditionConfig& ExperimentConfig::condition(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return c;
    throw Error(ErrorCode::validation, "unknown condition '" + id + "'");
}

void ExperimentConfig::validate() const {
    rendering.validate();
    if (display_timeout_ms < 0) throw Error(ErrorCode::validation, "display_timeout_ms must be >= 0");
    if (conditions.empty()) throw Error(ErrorCode::validation, "config lists no conditions");
    std::set<std::string> ids;
    for (const auto& c : conditions) {
        if (c.id.empty()) throw Error(ErrorCode::validation, "condition id must be non-empty");
        if (!ids.insert(c.id).second) throw Error(ErrorCode::validation, "duplicate condition '" + c.id + "'");
        c.problem.validate();
        c.schedule.validate();
        if (c.schedule.total_trials() < 1) throw Error(ErrorCode::validation, "condition '" + c.id + "' has no trials");
    }
    if (orders.empty()) throw Error(ErrorCode::validation, "config lists no condition orders");
    for (const auto& order : orders) {
        if (order.empty()) throw Error(ErrorCode::validation, "empty condition order");
        for (const auto& id : order) condition(id);
    }
}

namespace {

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorCode::schema, where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) throw Error(ErrorCode::schema, "unknown key '" + key + "' in " + where);
    }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : it->get<T>();
}

ConditionConfig parse_condition(const json& c) {
    only_keys(c,
              {"id", "p_signal", "d_h", "system", "payoffs", "blocks", "trials_per_block", "signals_per_block"},
              "condition");
    ConditionConfig cc;
    cc.id = c.at("id").get<std::string>();
    cc.problem.env.p_signal = get_or(c, "p_signal", 0.4);
    cc.problem.d_h = c.at("d_h").get<double>();
    const json& system = c.at("system");
    only_keys(system, {"d_prime", "beta"}, "system");
    cc.problem.system = {system.at("d_prime").get<double>(), get_or(system, "beta", 1.0)};
    if (auto it = c.find("payoffs"); it != c.end()) {
        const auto v = it->get<std::vector<double>>();
        if (v.size() != 4) throw Error(ErrorCode::schema, "payoffs must list v_tp, v_tn, v_fp, v_fn");
        cc.problem.payoffs = {v[0], v[1], v[2], v[3]};
    }
    cc.schedule = sim::Schedule::stratified(get_or(c, "blocks", 2), get_or(c, "trials_per_block", 50LL),
                                            get_or(c, "signals_per_block", 20LL));
    return cc;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    try {
        const json root = json::parse(text);
        only_keys(root, {"seed", "display_timeout_ms", "rendering", "conditions", "orders"}, "config");
        config.seed = get_or(root, "seed", std::uint64_t{1});
        config.display_timeout_ms = get_or(root, "display_timeout_ms", 30000LL);
        if (auto it = root.find("rendering"); it != root.end()) {
            only_keys(*it, {"base_px", "px_per_sd", "clamp_sd", "rect_width_px", "square_px"}, "rendering");
            auto& r = config.rendering;
            r.base_px = get_or(*it, "base_px", r.base_px);
            r.px_per_sd = get_or(*it, "px_per_sd", r.px_per_sd);
            if (auto clamp = it->find("clamp_sd"); clamp != it->end()) {
                const auto v = clamp->get<std::vector<double>>();
                if (v.size() != 2) throw Error(ErrorCode::schema, "clamp_sd must be [lo, hi]");
                r.clamp_lo_sd = v[0];
                r.clamp_hi_sd = v[1];
            }
            r.rect_width_px = get_or(*it, "rect_width_px", r.rect_width_px);
            r.square_px = get_or(*it, "square_px", r.square_px);
        }
        for (const auto& c : root.at("conditions")) config.conditions.push_back(parse_condition(c));
        config.orders = root.at("orders").get<std::vector<std::vector<std::string>>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::schema, std::string("config: ") + e.what());
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::validation, "cannot read config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

ExperimentConfig builtin_config(sim::Experiment experiment) {
    ExperimentConfig config;
    for (auto& c : sim::experiment_conditions(experiment)) config.conditions.push_back({c.id, c.problem, {}});
    for (const auto& plan : sim::experiment_sessions(experiment)) config.orders.push_back(plan.condition_order);
    config.validate();
    return config;
}

}  // namespace resqu
