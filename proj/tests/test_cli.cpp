#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "resqu/cli.hpp"
#include "resqu/config.hpp"
#include "resqu/session.hpp"
#include "temp_dir.hpp"

using namespace resqu;
using resqu::testing::TempDir;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "resqu");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Value of the first "key: value" line after an optional "[section]" header.
double value(const std::string& text, const std::string& key, const std::string& section = {}) {
    std::size_t from = section.empty() ? 0 : text.find("[" + section + "]");
    REQUIRE(from != std::string::npos);
    const auto pos = text.find("\n" + key + ": ", from);
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 3));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("theory command") {
    const auto matched = cli({"theory", "--p-signal", "0.4", "--dh", "1", "--da", "2.3", "--beta-a", "1", "--payoffs",
                              "1,1,-1,-2"});
    CHECK(matched.code == 0);
    CHECK(std::abs(value("\n" + matched.out, "responsibility") - 0.12) < 0.005);

    const auto skewed = cli({"theory", "--dh", "1", "--da", "2.3", "--beta-a", "0.03"});
    CHECK(std::abs(value("\n" + skewed.out, "responsibility") - 0.73) < 0.005);
    CHECK(std::abs(value("\n" + skewed.out, "cutoff_red") + 0.4) < 0.05);
    CHECK(std::abs(value("\n" + skewed.out, "cutoff_green") - 4.6) < 0.06);

    CHECK(value("\n" + cli({"theory", "--dh", "1", "--da", "0"}).out, "responsibility") == 1.0);
    CHECK(cli({"theory", "--dh", "1", "--da", "2.3", "--json"}).out.find("\"responsibility\"") != std::string::npos);

    const auto surface = cli({"theory", "--surface", "--grid", "1:2.3:1.3"});
    CHECK(surface.out == "d_h,1.0000,2.3000\n1.0000,0.6888,0.1176\n2.3000,0.8695,0.4658\n");

    CHECK(cli({"theory", "--dh", "x", "--da", "1"}).code == 2);
    CHECK(cli({"theory", "--dh", "1"}).code == 2);
    CHECK(cli({"theory", "--dh", "-1", "--da", "1"}).code == 2);
    CHECK(cli({"theory", "--dh", "1", "--da", "1", "--payoffs", "1,2"}).code == 2);
    CHECK(cli({"theory", "--surface", "--grid", "0:3:0.1"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("simulate command") {
    TempDir a("sim-a"), b("sim-b");
    const auto first = cli({"simulate", "--schedule", "exp2", "--agent", "optimal", "--seed", "7", "--trials", "100000",
                            "--out", a.path().string()});
    REQUIRE(first.code == 0);
    const auto second = cli({"simulate", "--schedule", "exp2", "--agent", "optimal", "--seed", "7", "--trials",
                             "100000", "--out", b.path().string()});
    CHECK(first.out == second.out);
    for (const char* file : {"exp2-beta1.jsonl", "exp2-beta0.03.jsonl", "summary.json"}) {
        CHECK(read_file(a.path() / file) == read_file(b.path() / file));
    }
    const auto summary = nlohmann::json::parse(read_file(a.path() / "summary.json"));
    REQUIRE(summary["conditions"].size() == 2);
    CHECK(std::abs(summary["conditions"][0]["measured_responsibility"].get<double>() - 0.12) < 0.01);
    CHECK(std::abs(summary["conditions"][1]["measured_responsibility"].get<double>() - 0.73) < 0.01);
    CHECK(summary["sessions"].size() == 4);

    TempDir empty("sim-empty");
    const auto zero = cli({"simulate", "--dh", "1", "--da", "1", "--trials", "0", "--out", empty.path().string()});
    CHECK(zero.code == 0);
    CHECK(zero.err.find("warning") != std::string::npos);
    CHECK(read_file(empty.path() / "custom.jsonl").empty());

    CHECK(cli({"simulate", "--dh", "1", "--da", "1", "--trials", "5", "--agent", "cutoffs:1", "--out",
               empty.path().string()})
              .code == 2);
    CHECK(cli({"simulate", "--dh", "1", "--da", "1", "--trials", "5", "--agent", "optimal:-1", "--out",
               empty.path().string()})
              .code == 2);
    CHECK(cli({"simulate", "--trials", "5", "--out", empty.path().string()}).code == 2);
    CHECK(cli({"simulate", "--schedule", "exp3", "--out", empty.path().string()}).code == 2);
    CHECK(cli({"simulate", "--dh", "1", "--da", "1", "--trials", "5", "--out", "/proc/resqu-unwritable"}).code == 1);
}

TEST_CASE("analyze command") {
    TempDir dir("analyze");
    const auto sim = cli({"simulate", "--dh", "1", "--da", "2.3", "--agent", "cutoffs:-1,1", "--trials", "200000",
                          "--seed", "3", "--condition-id", "exp1-dh1-da2.3", "--out", dir.path().string()});
    REQUIRE(sim.code == 0);
    const std::string log = (dir.path() / "exp1-dh1-da2.3.jsonl").string();

    const auto analyzed = cli({"analyze", "--log", log, "--theory", "--out", (dir.path() / "report").string()});
    REQUIRE(analyzed.code == 0);
    CHECK(std::abs(value(analyzed.out, "measured_responsibility") - 0.46) < 0.01);
    CHECK(std::abs(value(analyzed.out, "d_eff") - 2.0) < 0.15);
    CHECK(std::abs(value(analyzed.out, "cutoff_difference") - 2.0) < 0.05);
    CHECK(std::abs(value(analyzed.out, "theory_responsibility") - 0.12) < 0.005);
    CHECK(analyzed.out.find("condition,resp_theory,resp_empirical,resp_diff") != std::string::npos);
    CHECK(std::filesystem::exists(dir.path() / "report" / "report.json"));
    CHECK(std::filesystem::exists(dir.path() / "report" / "comparison.csv"));
    CHECK(cli({"analyze", "--log", log, "--theory"}).out == cli({"analyze", "--log", log, "--theory"}).out);

    TempDir staged("analyze-blocks");
    REQUIRE(cli({"simulate", "--schedule", "exp2", "--seed", "4", "--out", staged.path().string()}).code == 0);
    const std::string exp2_log = (staged.path() / "exp2-beta1.jsonl").string();
    const auto second = cli({"analyze", "--log", exp2_log});
    const auto all = cli({"analyze", "--log", exp2_log, "--blocks", "all"});
    CHECK(value(all.out, "trials") - value(second.out, "trials") == 100);  // 2 sessions x 50 first-block trials

    std::ofstream bad(dir.path() / "bad.jsonl");
    std::istringstream lines(read_file(log));
    std::string line;
    for (int i = 0; i < 2 && std::getline(lines, line); ++i) bad << line << '\n';
    bad << R"({"session_id":"x","response":"maybe"})" << '\n';
    bad.close();
    const auto failed = cli({"analyze", "--log", (dir.path() / "bad.jsonl").string()});
    CHECK(failed.code == 1);
    CHECK(failed.err.find("line 3") != std::string::npos);

    std::ofstream thin(dir.path() / "thin.jsonl");
    std::istringstream again(read_file(log));
    for (int i = 0; i < 5 && std::getline(again, line); ++i) thin << line << '\n';
    thin.close();
    const auto sparse = cli({"analyze", "--log", (dir.path() / "thin.jsonl").string()});
    CHECK(sparse.code == 1);
    CHECK(sparse.err.find("insufficient-data") != std::string::npos);

    CHECK(cli({"analyze", "--log", log, "--blocks", "first"}).code == 2);
    CHECK(cli({"analyze", "--log", (dir.path() / "missing.jsonl").string()}).code == 1);
}

TEST_CASE("scripted live session analyzes end to end") {
    TempDir dir("e2e");
    std::string id;
    long long total = 0;
    {
        SessionService service(builtin_config(sim::Experiment::exp2), dir.path());
        id = service.create({{"participant_id", "scripted"}})["session_id"];
        for (;;) {
            const auto next = service.next(id);
            if (next["status"] == "complete") break;
            if (next["status"] == "questionnaire") {
                service.questionnaire(id, {{"q1", 5}, {"q2", 3}, {"q3", 2}, {"q4", 2}, {"q5", 6}, {"q6", 3}});
                continue;
            }
            const bool tall = next["height_px"].get<int>() > 330;
            const bool red = next["indicator"] == "red";
            total = service.respond(id, {{"trial_index", next["trial_index"]},
                                         {"response", red || tall ? "reject" : "accept"}})["total"];
        }
    }
    const auto session = dir.path() / "sessions" / id;
    const auto analyzed = cli({"analyze", "--log", (session / "trials.jsonl").string(), "--blocks", "all", "--theory",
                               "--questionnaires", (session / "questionnaire.jsonl").string()});
    INFO(analyzed.err);
    REQUIRE(analyzed.code == 0);
    CHECK(value(analyzed.out, "total_score", "exp2-beta1") + value(analyzed.out, "total_score", "exp2-beta0.03") ==
          total);
    CHECK(analyzed.out.find("[subjective exp2-beta1]") != std::string::npos);
}
