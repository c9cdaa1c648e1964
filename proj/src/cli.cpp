#include "resqu/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "resqu/config.hpp"
#include "resqu/empirics.hpp"
#include "resqu/error.hpp"
#include "resqu/server.hpp"
#include "resqu/session.hpp"
#include "resqu/simulator.hpp"

namespace resqu {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Invalid flag values discovered after parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

struct ProblemFlags {
    double p_signal = 0.4;
    std::optional<double> d_h;
    std::optional<double> d_a;
    double beta_a = 1.0;
    std::string payoffs = "1,1,-1,-2";

    void add_to(CLI::App& cmd, bool detectors_required) {
        cmd.add_option("--p-signal", p_signal, "prior probability of a signal")->capture_default_str();
        auto* dh = cmd.add_option("--dh", d_h, "human sensitivity d'_H");
        auto* da = cmd.add_option("--da", d_a, "system sensitivity d'_A (0 = uninformative)");
        if (detectors_required) {
            dh->required();
            da->required();
        }
        cmd.add_option("--beta-a", beta_a, "system criterion beta_A")->capture_default_str();
        cmd.add_option("--payoffs", payoffs, "v_tp,v_tn,v_fp,v_fn")->capture_default_str();
    }

    sdt::PayoffMatrix payoff_matrix() const {
        std::vector<double> v;
        std::stringstream s(payoffs);
        std::string item;
        while (std::getline(s, item, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw UsageError("--payoffs: '" + item + "' is not a number");
            }
        }
        if (v.size() != 4) throw UsageError("--payoffs needs four values v_tp,v_tn,v_fp,v_fn");
        return {v[0], v[1], v[2], v[3]};
    }

    theory::AidedProblem problem() const {
        theory::AidedProblem p{sdt::Environment{p_signal}, d_h.value_or(1.0), {d_a.value_or(1.0), beta_a},
                               payoff_matrix()};
        try {
            p.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        return p;
    }
};

// --- theory ---------------------------------------------------------------

struct TheoryFlags {
    ProblemFlags problem;
    bool surface = false;
    std::string grid = "0.6:3:0.1";
    bool as_json = false;
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream s(spec);
    std::string item;
    while (std::getline(s, item, ':')) {
        try {
            parts.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("--grid expects lo:hi:step");
        }
    }
    if (parts.size() != 3) throw UsageError("--grid expects lo:hi:step");
    try {
        return theory::grid_axis(parts[0], parts[1], parts[2]);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

json theory_json(const theory::TheoryReport& r, const theory::AidedProblem& p) {
    return {{"p_signal", p.env.p_signal},
            {"d_h", p.d_h},
            {"d_a", p.system.d_prime},
            {"beta_a", p.system.beta},
            {"responsibility", r.responsibility},
            {"cutoff_red", r.centered_cutoff_red},
            {"cutoff_green", r.centered_cutoff_green},
            {"cutoff_difference", r.cutoff_difference},
            {"cutoff_red_absolute", r.policy.cutoff_red},
            {"cutoff_green_absolute", r.policy.cutoff_green},
            {"d_eff_policy", r.d_eff_policy},
            {"d_eff_approx", r.d_eff_approx},
            {"expected_payoff", r.expected_payoff},
            {"p_red", r.p_red},
            {"p_green", r.p_green}};
}

int cmd_theory(const TheoryFlags& f, std::ostream& out) {
    const auto problem = f.problem.problem();
    if (f.surface) {
        const auto axis = parse_grid(f.grid);
        theory::ResponsibilitySurface surface;
        try {
            surface = theory::responsibility_surface(axis, axis, problem.env, problem.payoffs, problem.system.beta);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::validation) throw;
            throw UsageError(e.what());
        }
        theory::write_surface_csv(out, surface);
        return 0;
    }
    const auto report = theory::theory_report(problem);
    const json j = theory_json(report, problem);
    if (f.as_json) {
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "p_signal: " << fixed(problem.env.p_signal) << '\n'
        << "d_h: " << fixed(problem.d_h) << '\n'
        << "d_a: " << fixed(problem.system.d_prime) << '\n'
        << "beta_a: " << fixed(problem.system.beta) << '\n'
        << "responsibility: " << fixed(report.responsibility) << '\n'
        << "cutoff_red: " << fixed(report.centered_cutoff_red) << '\n'
        << "cutoff_green: " << fixed(report.centered_cutoff_green) << '\n'
        << "cutoff_difference: " << fixed(report.cutoff_difference) << '\n'
        << "cutoff_red_absolute: " << fixed(report.policy.cutoff_red) << '\n'
        << "cutoff_green_absolute: " << fixed(report.policy.cutoff_green) << '\n'
        << "d_eff_policy: " << fixed(report.d_eff_policy) << '\n'
        << "d_eff_approx: " << fixed(report.d_eff_approx) << '\n'
        << "expected_payoff: " << fixed(report.expected_payoff) << '\n'
        << "p_red: " << fixed(report.p_red) << '\n'
        << "p_green: " << fixed(report.p_green) << '\n';
    return 0;
}

// --- simulate -------------------------------------------------------------

struct SimulateFlags {
    ProblemFlags problem;
    std::string agent = "optimal";
    std::optional<long long> trials;
    std::optional<std::string> schedule;
    std::uint64_t seed = 1;
    std::string out_dir;
    std::string condition_id = "custom";
};

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("--agent: bad " + what + " '" + text + "'");
}

sim::AgentPolicy parse_agent(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream s(spec);
    std::string item;
    while (std::getline(s, item, ':')) parts.push_back(item);
    if (parts.empty()) throw UsageError("--agent is empty");

    sim::AgentPolicy policy;
    std::size_t jitter_at = 0;
    if (parts[0] == "optimal" && parts.size() <= 2) {
        policy = sim::AgentPolicy::optimal();
        jitter_at = 1;
    } else if (parts[0] == "ignore" && parts.size() <= 2) {
        policy = parts.size() == 2 ? sim::AgentPolicy::ignore_system(parse_number(parts[1], "cutoff"))
                                   : sim::AgentPolicy::ignore_system();
        jitter_at = 99;
    } else if (parts[0] == "cutoffs" && (parts.size() == 2 || parts.size() == 3)) {
        const auto comma = parts[1].find(',');
        if (comma == std::string::npos) throw UsageError("--agent cutoffs expects cutoffs:red,green[:jitter]");
        policy = sim::AgentPolicy::configured(parse_number(parts[1].substr(0, comma), "cutoff"),
                                              parse_number(parts[1].substr(comma + 1), "cutoff"));
        jitter_at = 2;
    } else {
        throw UsageError("--agent must be optimal[:jitter], ignore[:cutoff] or cutoffs:red,green[:jitter]");
    }
    if (jitter_at < parts.size()) policy = sim::AgentPolicy::jittered(policy, parse_number(parts[jitter_at], "jitter"));
    try {
        policy.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return policy;
}

json summary_json(const sim::SessionSummary& s) {
    json j = {{"session_id", s.session_id},
              {"condition_id", s.condition_id},
              {"trials", s.trial_count},
              {"total_score", s.total_score},
              {"correct", s.correct}};
    j["measured_responsibility"] = s.measured_responsibility ? json(*s.measured_responsibility) : json(nullptr);
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << content;
    if (!file.flush()) throw std::runtime_error("cannot write " + path.string());
}

std::string log_text(const std::vector<TrialRecord>& records) {
    std::ostringstream s;
    write_log(s, records);
    return s.str();
}

int cmd_simulate(const SimulateFlags& f, std::ostream& out, std::ostream& err) {
    const auto policy = parse_agent(f.agent);
    if (f.trials && *f.trials < 0) throw UsageError("--trials must be >= 0");
    if (!f.schedule && !f.trials) throw UsageError("give --trials or --schedule");
    if (!f.schedule && (!f.problem.d_h || !f.problem.d_a)) throw UsageError("--trials without --schedule needs --dh and --da");
    if (f.trials && *f.trials == 0) err << "warning: 0 trials requested; the log is empty\n";

    std::error_code ec;
    fs::create_directories(f.out_dir, ec);
    if (ec || !fs::is_directory(f.out_dir)) throw std::runtime_error("cannot create output directory " + f.out_dir);

    json summary = {{"seed", f.seed}, {"agent", f.agent}};
    json conditions = json::array();
    json sessions = json::array();

    auto add_condition = [&](const std::string& id, const theory::AidedProblem& problem,
                             const std::vector<TrialRecord>& log) {
        write_file(fs::path(f.out_dir) / (id + ".jsonl"), log_text(log));
        json c = {{"condition_id", id}, {"trials", log.size()}};
        long long score = 0;
        for (const auto& r : log) score += r.payoff;
        c["total_score"] = score;
        try {
            c["measured_responsibility"] = empirics::measured_responsibility(log);
        } catch (const Error&) {
            c["measured_responsibility"] = nullptr;
        }
        c["theoretical_responsibility"] = theory::theoretical_responsibility(problem);
        out << id << ": trials " << log.size() << ", score " << score << ", measured "
            << (c["measured_responsibility"].is_null() ? std::string("n/a")
                                                       : fixed(c["measured_responsibility"].get<double>()))
            << ", theory " << fixed(c["theoretical_responsibility"].get<double>()) << '\n';
        conditions.push_back(std::move(c));
    };

    if (f.schedule) {
        sim::Experiment experiment;
        if (*f.schedule == "exp1") experiment = sim::Experiment::exp1;
        else if (*f.schedule == "exp2") experiment = sim::Experiment::exp2;
        else throw UsageError("--schedule must be exp1 or exp2");
        const auto schedule = f.trials ? sim::Schedule::iid(*f.trials) : sim::Schedule::stratified();
        const auto run = sim::run_experiment(experiment, sim::same_policy(experiment, policy), schedule, f.seed);
        for (const auto& c : run.conditions) add_condition(c.id, c.problem, run.logs.at(c.id));
        for (const auto& s : run.summaries) sessions.push_back(summary_json(s));
    } else {
        const auto problem = f.problem.problem();
        const auto run = sim::run_session(problem, policy, sim::Schedule::iid(*f.trials), f.seed, "sim", f.condition_id);
        add_condition(f.condition_id, problem, run.records);
        sessions.push_back(summary_json(run.summary));
    }
    summary["conditions"] = conditions;
    summary["sessions"] = sessions;
    write_file(fs::path(f.out_dir) / "summary.json", summary.dump(2) + "\n");
    return 0;
}

// --- analyze --------------------------------------------------------------

struct AnalyzeFlags {
    ProblemFlags problem;
    std::vector<std::string> logs;
    std::string blocks = "second-only";
    bool with_theory = false;
    std::optional<std::string> questionnaires;
    std::optional<std::string> out_dir;
};

std::optional<theory::AidedProblem> builtin_problem(const std::string& condition_id) {
    for (auto e : {sim::Experiment::exp1, sim::Experiment::exp2})
        for (const auto& c : sim::experiment_conditions(e))
            if (c.id == condition_id) return c.problem;
    return std::nullopt;
}

json empirical_json(const empirics::EmpiricalReport& r) {
    auto indication = [](const empirics::IndicationSdt& s) {
        return json{{"n_signal", s.n_signal},       {"n_noise", s.n_noise},
                    {"hit_rate", s.hit_rate},       {"false_alarm_rate", s.false_alarm_rate},
                    {"d_prime", s.d_prime},         {"cutoff", s.centered_cutoff},
                    {"cutoff_absolute", s.absolute_cutoff}};
    };
    json j = {{"condition_id", r.condition_id},
              {"trials", r.trial_count},
              {"total_score", r.total_score},
              {"measured_responsibility", r.measured_responsibility},
              {"p_red", r.p_red},
              {"d_eff", r.d_eff_empirical}};
    if (r.sdt) {
        j["red"] = indication(r.sdt->red);
        j["green"] = indication(r.sdt->green);
        j["cutoff_difference"] = *r.cutoff_difference;
    } else {
        j["per_indication_issue"] = r.sdt_issue;
    }
    return j;
}

int cmd_analyze(const AnalyzeFlags& f, std::ostream& out) {
    empirics::BlockFilter filter;
    if (f.blocks == "second-only") filter = empirics::BlockFilter::second_only;
    else if (f.blocks == "all") filter = empirics::BlockFilter::all;
    else throw UsageError("--blocks must be second-only or all");
    const bool explicit_problem = f.problem.d_h.has_value() || f.problem.d_a.has_value();
    if (explicit_problem && (!f.problem.d_h || !f.problem.d_a)) throw UsageError("give both --dh and --da");
    const auto payoffs = f.problem.payoff_matrix();

    std::vector<TrialRecord> all;
    for (const auto& path : f.logs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read " + path);
        try {
            auto records = parse_log(in, payoffs);
            all.insert(all.end(), records.begin(), records.end());
        } catch (const Error& e) {
            throw std::runtime_error(path + ": " + e.what());
        }
    }
    const auto selected = empirics::select_blocks(all, filter);

    json report = {{"blocks", f.blocks}, {"conditions", json::array()}};
    std::vector<empirics::ComparisonRow> rows;
    std::map<std::string, double> measured;
    for (const auto& [condition_id, trials] : empirics::group_by_condition(selected)) {
        empirics::EmpiricalReport r;
        try {
            r = empirics::empirical_report(trials, condition_id);
        } catch (const Error& e) {
            throw std::runtime_error("condition " + condition_id + ": " + e.what());
        }
        measured[condition_id] = r.measured_responsibility;
        json j = empirical_json(r);

        out << "[" << condition_id << "]\n"
            << "trials: " << r.trial_count << '\n'
            << "total_score: " << r.total_score << '\n'
            << "measured_responsibility: " << fixed(r.measured_responsibility) << '\n'
            << "p_red: " << fixed(r.p_red) << '\n';
        if (r.sdt) {
            out << "cutoff_red: " << fixed(r.sdt->red.centered_cutoff) << '\n'
                << "cutoff_green: " << fixed(r.sdt->green.centered_cutoff) << '\n'
                << "cutoff_difference: " << fixed(*r.cutoff_difference) << '\n'
                << "d_prime_red: " << fixed(r.sdt->red.d_prime) << '\n'
                << "d_prime_green: " << fixed(r.sdt->green.d_prime) << '\n';
        } else {
            out << "per_indication: " << r.sdt_issue << '\n';
        }
        out << "d_eff: " << fixed(r.d_eff_empirical) << '\n';

        if (f.with_theory) {
            const auto problem = explicit_problem ? std::optional(f.problem.problem()) : builtin_problem(condition_id);
            if (!problem) {
                throw UsageError("no theory parameters for condition '" + condition_id + "'; pass --dh and --da");
            }
            const auto t = theory::theory_report(*problem, condition_id);
            rows.push_back(empirics::compare(r, t));
            j["theory"] = theory_json(t, *problem);
            out << "theory_responsibility: " << fixed(t.responsibility) << '\n';
            if (!r.sdt) {
                out << "deviations: n/a\n\n";
                report["conditions"].push_back(std::move(j));
                continue;
            }
            const auto d = empirics::trust_deviations(r, t);
            out << "deviation_cutoff_red: " << fixed(d.cutoff_red) << '\n'
                << "deviation_cutoff_green: " << fixed(d.cutoff_green) << '\n'
                << "deviation_cutoff_difference: " << fixed(d.cutoff_difference) << '\n'
                << "deviation_d_eff: " << fixed(d.d_eff) << '\n'
                << "deviation_responsibility: " << fixed(d.responsibility) << '\n'
                << "weighted_cutoff_deviation: " << fixed(d.weighted_cutoff_deviation) << '\n';
            j["deviations"] = {{"cutoff_red", d.cutoff_red},
                               {"cutoff_green", d.cutoff_green},
                               {"cutoff_difference", d.cutoff_difference},
                               {"d_eff", d.d_eff},
                               {"responsibility", d.responsibility},
                               {"weight_red", d.weight_red},
                               {"weight_green", d.weight_green},
                               {"weighted_cutoff_deviation", d.weighted_cutoff_deviation}};
        }
        report["conditions"].push_back(std::move(j));
        out << '\n';
    }

    std::string table;
    if (!rows.empty()) {
        std::ostringstream s;
        empirics::write_comparison_table(s, rows);
        table = s.str();
        out << table << '\n';
    }

    if (f.questionnaires) {
        std::ifstream in(*f.questionnaires);
        if (!in) throw std::runtime_error("cannot read " + *f.questionnaires);
        const auto records = parse_questionnaires(in);
        const auto scores = empirics::questionnaire_scores(records);
        json subjective = json::array();
        std::vector<std::string> ids;
        std::vector<double> self, resp;
        for (const auto& [id, s] : scores) {
            out << "[subjective " << id << "]\n"
                << "respondents: " << s.respondents << '\n'
                << "subjective_self: " << fixed(s.subjective_self) << '\n'
                << "subjective_other: " << fixed(s.subjective_other) << '\n'
                << "cronbach_alpha: " << (s.cronbach_alpha ? fixed(*s.cronbach_alpha) : "n/a") << "\n\n";
            subjective.push_back({{"condition_id", id},
                                  {"respondents", s.respondents},
                                  {"subjective_self", s.subjective_self},
                                  {"subjective_other", s.subjective_other},
                                  {"cronbach_alpha", s.cronbach_alpha ? json(*s.cronbach_alpha) : json(nullptr)}});
            if (measured.contains(id)) {
                ids.push_back(id);
                self.push_back(s.subjective_self);
                resp.push_back(measured.at(id));
            }
        }
        report["subjective"] = subjective;
        // Normalized side by side; a qualitative comparison only.
        if (ids.size() >= 2) {
            try {
                const auto ns = empirics::normalize_scores(self);
                const auto nr = empirics::normalize_scores(resp);
                out << "condition,subjective_self_normalized,measured_responsibility_normalized\n";
                for (std::size_t i = 0; i < ids.size(); ++i) {
                    out << ids[i] << ',' << fixed(ns[i], 3) << ',' << fixed(nr[i], 3) << '\n';
                }
                out << '\n';
            } catch (const Error& e) {
                out << "normalization skipped: " << e.what() << "\n\n";
            }
        }
    }

    if (f.out_dir) {
        std::error_code ec;
        fs::create_directories(*f.out_dir, ec);
        if (ec || !fs::is_directory(*f.out_dir)) throw std::runtime_error("cannot create output directory " + *f.out_dir);
        write_file(fs::path(*f.out_dir) / "report.json", report.dump(2) + "\n");
        if (!table.empty()) write_file(fs::path(*f.out_dir) / "comparison.csv", table);
    }
    return 0;
}

// --- serve ----------------------------------------------------------------

struct ServeFlags {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string data_dir;
    std::optional<std::string> config;
    std::string experiment = "exp2";
    std::optional<std::string> static_dir;
};

int cmd_serve(const ServeFlags& f, std::ostream& out) {
    ExperimentConfig config;
    if (f.config) {
        config = load_config(*f.config);
    } else if (f.experiment == "exp1") {
        config = builtin_config(sim::Experiment::exp1);
    } else if (f.experiment == "exp2") {
        config = builtin_config(sim::Experiment::exp2);
    } else {
        throw UsageError("--experiment must be exp1 or exp2");
    }
    SessionService service(std::move(config), f.data_dir);
    out << "serving on http://" << f.host << ':' << f.port << std::endl;
    std::optional<fs::path> static_dir;
    if (f.static_dir) static_dir = *f.static_dir;
    if (!serve(service, f.host, f.port, static_dir)) throw std::runtime_error("cannot listen on port " + std::to_string(f.port));
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Responsibility quantification for aided binary decisions", "resqu"};
    app.require_subcommand(1);

    TheoryFlags theory_flags;
    auto* theory_cmd = app.add_subcommand("theory", "theoretical responsibility and optimal cutoffs");
    theory_flags.problem.add_to(*theory_cmd, false);
    theory_cmd->add_flag("--surface", theory_flags.surface, "print the responsibility surface as CSV");
    theory_cmd->add_option("--grid", theory_flags.grid, "surface axis lo:hi:step")->capture_default_str();
    theory_cmd->add_flag("--json", theory_flags.as_json, "JSON output");

    SimulateFlags sim_flags;
    auto* sim_cmd = app.add_subcommand("simulate", "generate trial logs with a simulated agent");
    sim_flags.problem.add_to(*sim_cmd, false);
    sim_cmd->add_option("--agent", sim_flags.agent, "optimal[:jitter] | ignore[:cutoff] | cutoffs:red,green[:jitter]")
        ->capture_default_str();
    sim_cmd->add_option("--trials", sim_flags.trials, "iid trials per session");
    sim_cmd->add_option("--schedule", sim_flags.schedule, "exp1 | exp2");
    sim_cmd->add_option("--seed", sim_flags.seed)->capture_default_str();
    sim_cmd->add_option("--out", sim_flags.out_dir, "output directory")->required();
    sim_cmd->add_option("--condition-id", sim_flags.condition_id)->capture_default_str();

    AnalyzeFlags analyze_flags;
    auto* analyze_cmd = app.add_subcommand("analyze", "measured responsibility and trust measures from logs");
    analyze_flags.problem.add_to(*analyze_cmd, false);
    analyze_cmd->add_option("--log", analyze_flags.logs, "trial log(s)")->required();
    analyze_cmd->add_option("--blocks", analyze_flags.blocks, "second-only | all")->capture_default_str();
    analyze_cmd->add_flag("--theory", analyze_flags.with_theory, "add theoretical values and deviations");
    analyze_cmd->add_option("--questionnaires", analyze_flags.questionnaires, "questionnaire log");
    analyze_cmd->add_option("--out", analyze_flags.out_dir, "write report.json and comparison.csv here");

    ServeFlags serve_flags;
    auto* serve_cmd = app.add_subcommand("serve", "run the HTTP session service");
    serve_cmd->add_option("--host", serve_flags.host)->capture_default_str();
    serve_cmd->add_option("--port", serve_flags.port)->capture_default_str();
    serve_cmd->add_option("--data-dir", serve_flags.data_dir)->required();
    serve_cmd->add_option("--config", serve_flags.config, "experiment config JSON");
    serve_cmd->add_option("--experiment", serve_flags.experiment, "built-in config when --config is absent")
        ->capture_default_str();
    serve_cmd->add_option("--static", serve_flags.static_dir, "directory served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*theory_cmd) {
            if (!theory_flags.surface && (!theory_flags.problem.d_h || !theory_flags.problem.d_a)) {
                throw UsageError("theory needs --dh and --da (or --surface)");
            }
            return cmd_theory(theory_flags, out);
        }
        if (*sim_cmd) return cmd_simulate(sim_flags, out, err);
        if (*analyze_cmd) return cmd_analyze(analyze_flags, out);
        return cmd_serve(serve_flags, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace resqu
