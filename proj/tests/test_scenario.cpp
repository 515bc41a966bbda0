#include <gtest/gtest.h>

#include <regex>

#include <mixmult/runner.hpp>
#include <mixmult/scenario.hpp>

using namespace mixmult;
using nlohmann::json;

namespace
{

const char *running_example = R"({
  "dim": 2,
  "ideals": {
    "I": {"gens": [[2, 0], [0, 1]]},
    "J": {"gens": [[1, 0], [0, 2]]}
  },
  "tasks": [
    {"op": "mixed", "args": {"ideals": ["I", "J"]}},
    {"op": "verify", "args": {"ideals": ["I", "J"]}}
  ]
})";

std::string with_tasks(const std::string &ideals, const std::string &filtrations, const std::string &tasks)
{
    return R"({"dim": 2, "ideals": {)" + ideals + R"(}, "filtrations": {)" + filtrations + R"(}, "tasks": [)" +
           tasks + "]}";
}

const std::string m_decl = R"("m": {"gens": [[1, 0], [0, 1]]})";

void every_string_is_reduced(const json &j)
{
    static const std::regex rational(R"(-?\d+(/\d+)?)");
    if (j.is_object() || j.is_array()) {
        for (const auto &v : j) {
            every_string_is_reduced(v);
        }
    } else if (j.is_string() && std::regex_match(j.get<std::string>(), rational)) {
        EXPECT_EQ(to_string(parse_rational(j.get<std::string>())), j.get<std::string>());
    } else {
        EXPECT_FALSE(j.is_number_float());
    }
}

} // namespace

TEST(Scenario, Minimal)
{
    const auto s = parse_scenario(with_tasks(m_decl, "", R"({"op": "colength", "args": {"ideal": "m"}})"));
    EXPECT_EQ(s.dim, 2u);
    ASSERT_EQ(s.tasks.size(), 1u);
    EXPECT_EQ(s.tasks[0].op, TaskOp::colength);
}

TEST(Scenario, RunningExampleShape)
{
    const auto s = parse_scenario(running_example);
    ASSERT_EQ(s.tasks.size(), 2u);
    EXPECT_EQ(s.tasks[0].op, TaskOp::mixed);
    EXPECT_EQ(s.tasks[1].op, TaskOp::verify);
    EXPECT_EQ(s.ideals.at("I").num_gens(), 2u);
}

TEST(Scenario, SchemaErrors)
{
    // Duplicate ideal names.
    EXPECT_THROW(parse_scenario(with_tasks(m_decl + "," + m_decl, "", "")), SchemaError);
    // Same name for an ideal and a filtration.
    EXPECT_THROW(parse_scenario(with_tasks(m_decl, R"("m": {"kind": "powers", "base": "m"})", "")), SchemaError);
    EXPECT_THROW(parse_scenario(R"({"ideals": {}})"), SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks(R"("m": {"gens": [[1, 0, 0]]})", "", "")), SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks(R"("m": {"gens": [[1, -1]]})", "", "")), SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks(R"("m": {"gens": [[1.5, 0]]})", "", "")), SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks(m_decl, "", R"({"op": "frobnicate"})")), SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks(m_decl, "", R"({"op": "mult", "args": {"ideal": "m", "extra": 1}})")),
                 SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks("", R"("w": {"kind": "weighted", "weights": [1.5, 1]})", "")), SchemaError);
    EXPECT_THROW(parse_scenario(with_tasks("", R"("w": {"kind": "weighted", "weights": ["1/0", "1"]})", "")),
                 SchemaError);
}

TEST(Scenario, DiagnosticsNameTheLineOrField)
{
    try {
        parse_scenario("{\n  \"dim\": 2,\n  \"ideals\": {,\n}");
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    try {
        parse_scenario(with_tasks(R"("m": {"gens": [[1, 0], [0, "x"]]})", "", ""));
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_NE(std::string(e.what()).find("ideals.m.gens[1][1]"), std::string::npos) << e.what();
    }
}

TEST(Scenario, SemanticErrors)
{
    const std::string not_primary = R"("n": {"gens": [[1, 1], [2, 0]]})";
    EXPECT_THROW(parse_scenario(with_tasks(not_primary, "", R"({"op": "mult", "args": {"ideal": "n"}})")),
                 SemanticError);
    EXPECT_THROW(parse_scenario(with_tasks(m_decl, "", R"({"op": "mult", "args": {"ideal": "q"}})")), SemanticError);
    EXPECT_THROW(parse_scenario(with_tasks(not_primary, R"("p": {"kind": "powers", "base": "n"})", "")),
                 SemanticError);
    EXPECT_THROW(parse_scenario(with_tasks("", R"("a": {"kind": "truncation", "parent": "b", "level": 2},
                                                "b": {"kind": "truncation", "parent": "a", "level": 2})",
                                           "")),
                 SemanticError);
    EXPECT_THROW(parse_scenario(with_tasks(m_decl, R"("p": {"kind": "powers", "base": "m"})",
                                           R"({"op": "sweep", "args": {"filtrations": ["p"], "schedule": [4, 2]}})")),
                 SemanticError);
    EXPECT_THROW(parse_scenario(with_tasks(m_decl, R"("p": {"kind": "powers", "base": "m"})",
                                           R"({"op": "zero-check", "args": {"filtrations": ["p"], "schedule": [1],
                                               "j": 2, "tol": "1/2"}})")),
                 SemanticError);
    EXPECT_THROW(parse_scenario(R"({"dim": 4, "tasks": [{"op": "suite", "args":
                                   {"r": 1, "count": 1, "max_exp": 2, "seed": 1}}]})"),
                 SemanticError);
}

TEST(Scenario, RoundTrip)
{
    const std::string text = with_tasks(
        m_decl + R"(, "I": {"gens": [[2, 0], [0, 1], [3, 3]]})",
        R"("s": {"kind": "subpolynomial_sqrt", "base": "m"},
           "h": {"kind": "scaled_powers", "base": "I", "num": 2, "den": 3},
           "w": {"kind": "weighted", "weights": ["2/4", "3"]},
           "t": {"kind": "truncation", "parent": "s", "level": 3})",
        R"({"op": "mult", "args": {"ideal": "I", "t_start": 4}},
           {"op": "verify", "args": {"filtrations": ["s", "w"], "level": 2, "f_cap": 10}},
           {"op": "zero-check", "args": {"filtrations": ["s", "h"], "j": 1, "schedule": [1, 4], "tol": "1/2"}},
           {"op": "suite", "args": {"r": 2, "count": 3, "max_exp": 3, "seed": 5, "force_equal": true}})");
    const auto s = parse_scenario(text);
    const auto again = scenario_from_json(to_json(s));
    EXPECT_EQ(again, s);
    EXPECT_EQ(to_json(again), to_json(s));
    EXPECT_EQ(s.filtration_decls.at("w").weights[0], Rational(1, 2));
    EXPECT_EQ(scenario_hash(s), scenario_hash(again));
}

TEST(Runner, EmptyTaskList)
{
    const auto r = run(parse_scenario(R"({"dim": 2})"));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.report["results"].empty());
    EXPECT_EQ(r.report["version"], MIXMULT_VERSION);
}

TEST(Runner, RunningExampleReport)
{
    const auto s = parse_scenario(running_example);
    const auto r = run(s);
    EXPECT_EQ(r.exit_code, 0);
    const auto &table = r.report["results"][0]["values"]["table"];
    EXPECT_EQ(table["2,0"], "2");
    EXPECT_EQ(table["1,1"], "1");
    EXPECT_EQ(table["0,2"], "2");
    for (const auto &block : r.report["results"][1]["verify"]) {
        EXPECT_TRUE(block["holds"].get<bool>());
    }
    every_string_is_reduced(r.report);
    // The echoed scenario re-parses to the same scenario.
    EXPECT_EQ(scenario_from_json(r.report["scenario"]), s);
    EXPECT_EQ(render(r.report), render(run(s, {false, 4, false}).report));
    EXPECT_FALSE(r.report["results"][0].contains("wall_ms"));
    EXPECT_TRUE(run(s, {false, 1, true}).report["results"][0].contains("wall_ms"));
}

TEST(Runner, SqrtSweep)
{
    const auto s = parse_scenario(with_tasks(m_decl, R"("s": {"kind": "subpolynomial_sqrt", "base": "m"})",
                                             R"({"op": "sweep", "args": {"filtrations": ["s"], "schedule": [1, 4, 9]}})"));
    const auto r = run(s);
    EXPECT_EQ(r.exit_code, 0);
    const auto &levels = r.report["results"][0]["values"]["levels"];
    ASSERT_EQ(levels.size(), 3u);
    EXPECT_EQ(levels[0]["table"]["2"], "1");
    EXPECT_EQ(levels[1]["table"]["2"], "1/4");
    EXPECT_EQ(levels[2]["table"]["2"], "1/9");
    EXPECT_EQ(levels[2]["delta"]["2"], "-5/36");
}

TEST(Runner, FailingTaskDoesNotStopLaterTasks)
{
    const auto s = parse_scenario(with_tasks(
        m_decl, R"("s": {"kind": "subpolynomial_sqrt", "base": "m"})",
        R"({"op": "filtration-mixed", "args": {"filtrations": ["s"], "level": 4, "f_cap": 2}},
           {"op": "zero-check", "args": {"filtrations": ["s"], "j": 1, "schedule": [1, 4], "tol": "1/10"}},
           {"op": "colength", "args": {"ideal": "m"}})"));
    const auto r = run(s);
    EXPECT_EQ(r.exit_code, exit_code::stabilization);
    const auto &results = r.report["results"];
    EXPECT_EQ(results[0]["status"], "error");
    // f = 1 survives until t = 3 (I_3 = m^2), f = 2 already fails at t = 2.
    EXPECT_EQ(results[0]["error_detail"]["best_f"], 1);
    EXPECT_EQ(results[0]["error_detail"]["first_failing_t"], 3);
    EXPECT_EQ(results[1]["status"], "failed");
    EXPECT_EQ(results[1]["values"]["check"], "tolerance_not_met");
    EXPECT_EQ(results[2]["status"], "ok");
    EXPECT_EQ(results[2]["values"]["colength"], "1");
}

TEST(Runner, ExitCodeMapping)
{
    EXPECT_EQ(exit_code_for(SchemaError("x")), exit_code::input);
    EXPECT_EQ(exit_code_for(SemanticError("x")), exit_code::semantic);
    EXPECT_EQ(exit_code_for(NotMPrimary("x")), exit_code::input);
    EXPECT_EQ(exit_code_for(NonStabilizing("x")), exit_code::stabilization);
    EXPECT_EQ(exit_code_for(ToleranceNotMet("x")), exit_code::stabilization);
    EXPECT_EQ(exit_code_for(VerificationFailure("x")), exit_code::verification);
    EXPECT_EQ(exit_code_for(InternalError("x")), exit_code::verification);
}
