#include <mixmult/runner.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mixmult
{

using nlohmann::json;

int exit_code_for(const std::exception &e)
{
    if (dynamic_cast<const SemanticError *>(&e)) {
        return exit_code::semantic;
    }
    if (dynamic_cast<const InputError *>(&e)) {
        return exit_code::input;
    }
    if (dynamic_cast<const NonStabilizing *>(&e) || dynamic_cast<const RescaleNotFound *>(&e) ||
        dynamic_cast<const ToleranceNotMet *>(&e)) {
        return exit_code::stabilization;
    }
    return exit_code::verification;
}

std::string scenario_hash(const Scenario &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(s).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string render(const json &doc)
{
    return doc.dump(2) + "\n";
}

namespace
{

json ideal_json(const MonomialIdeal &I)
{
    json gens = json::array();
    for (std::size_t i = 0; i < I.num_gens(); ++i) {
        const auto g = I.generator(i);
        gens.push_back(std::vector<std::uint32_t>(g.begin(), g.end()));
    }
    return gens;
}

json table_json(const MixedTable &t)
{
    json out = json::object();
    for (const auto &[c, v] : t.entries()) {
        out[composition_key(c)] = to_string(v);
    }
    return out;
}

json delta_json(const std::map<Composition, Rational> &delta)
{
    json out = json::object();
    for (const auto &[c, v] : delta) {
        out[composition_key(c)] = to_string(v);
    }
    return out;
}

json verify_json(const std::vector<InequalityReport> &reports)
{
    json out = json::array();
    for (const auto &r : reports) {
        out.push_back({{"composition", composition_key(r.composition)},
                       {"lhs", to_string(r.lhs)},
                       {"rhs", to_string(r.rhs)},
                       {"holds", r.holds},
                       {"equality", r.equality}});
    }
    return out;
}

json stage_json(const RescaledStage &stage)
{
    json J = json::array();
    for (const auto &I : stage.J) {
        J.push_back(ideal_json(I));
    }
    return {{"level", stage.level}, {"f", stage.f}, {"J", J}, {"verified_horizon", stage.verified_horizon}};
}

MixedOptions mixed_options(const Task &t, const RunOptions &o)
{
    MixedOptions m;
    m.jobs = o.jobs;
    m.policy.t_start = t.t_start;
    if (t.width) {
        m.policy.width = *t.width;
    }
    return m;
}

FiltrationOptions filtration_options(const Task &t, const RunOptions &o)
{
    FiltrationOptions f;
    f.mixed = mixed_options(t, o);
    f.rescale.horizon = t.horizon.value_or(0);
    f.rescale.f_cap = t.f_cap.value_or(0);
    return f;
}

std::vector<MonomialIdeal> task_ideals(const Scenario &s, const Task &t)
{
    std::vector<MonomialIdeal> out;
    for (const auto &name : t.ideals) {
        out.push_back(s.ideals.at(name));
    }
    return out;
}

std::vector<Filtration> task_filtrations(const Scenario &s, const Task &t)
{
    std::vector<Filtration> out;
    for (const auto &name : t.filtrations) {
        out.push_back(s.filtrations.at(name));
    }
    return out;
}

json task_inputs(const Scenario &s, const Task &t)
{
    json in = json::object();
    if (!t.ideals.empty()) {
        json ideals = json::array();
        for (const auto &name : t.ideals) {
            ideals.push_back({{"name", name}, {"gens", ideal_json(s.ideals.at(name))}});
        }
        in["ideals"] = ideals;
    }
    if (!t.filtrations.empty()) {
        in["filtrations"] = t.filtrations;
    }
    if (t.level) {
        in["level"] = *t.level;
    }
    if (!t.schedule.empty()) {
        in["schedule"] = t.schedule;
    }
    if (t.j) {
        in["j"] = *t.j;
    }
    if (t.tol) {
        in["tol"] = to_string(*t.tol);
    }
    if (t.suite) {
        in["r"] = t.suite->r;
        in["count"] = t.suite->count;
        in["max_exp"] = t.suite->max_exponent;
        in["seed"] = t.suite->seed;
        in["force_equal"] = t.suite->force_equal;
    }
    return in;
}

// Fills values/verify of `result`; returns the exit code the task contributes.
int execute(const Scenario &s, const Task &t, const RunOptions &o, json &result)
{
    const bool paranoid = t.paranoid || o.paranoid;
    json &values = result["values"];
    values = json::object();
    switch (t.op) {
    case TaskOp::colength:
        values["colength"] = std::to_string(colength(s.ideals.at(t.ideals[0])));
        return exit_code::ok;
    case TaskOp::mult: {
        StabilizationPolicy policy = mixed_options(t, o).policy;
        const auto r = multiplicity_detail(s.ideals.at(t.ideals[0]), policy);
        values["multiplicity"] = r.value.str();
        values["degenerate"] = r.degenerate;
        values["window"] = {{"t_start", r.window.t_start}, {"width", r.window.width}};
        return exit_code::ok;
    }
    case TaskOp::mixed:
    case TaskOp::verify:
        if (!t.ideals.empty()) {
            const auto ideals = task_ideals(s, t);
            const auto opts = mixed_options(t, o);
            const auto table = mixed_table(ideals, opts);
            values["table"] = table_json(table);
            if (paranoid) {
                const bool agrees = mixed_table_oracle(ideals, opts) == table;
                values["oracle_agrees"] = agrees;
                if (!agrees) {
                    throw InternalError("grid path and difference path disagree");
                }
            }
            const auto reports = minkowski_report(table);
            result["verify"] = verify_json(reports);
            return all_hold(reports) ? exit_code::ok : exit_code::verification;
        } else {
            const auto fs = task_filtrations(s, t);
            const auto fo = filtration_options(t, o);
            const auto r = filtration_mixed(fs, *t.level, fo);
            values["stage"] = stage_json(r.stage);
            values["table"] = table_json(r.table);
            if (paranoid) {
                const bool agrees = mixed_table_oracle(r.stage.J, fo.mixed) == mixed_table(r.stage.J, fo.mixed);
                values["oracle_agrees"] = agrees;
                if (!agrees) {
                    throw InternalError("grid path and difference path disagree");
                }
            }
            const auto reports = minkowski_report(r.table);
            result["verify"] = verify_json(reports);
            return all_hold(reports) ? exit_code::ok : exit_code::verification;
        }
    case TaskOp::filtration_mixed: {
        const auto fs = task_filtrations(s, t);
        const auto r = filtration_mixed(fs, *t.level, filtration_options(t, o));
        values["stage"] = stage_json(r.stage);
        values["table"] = table_json(r.table);
        const auto reports = minkowski_report(r.table);
        result["verify"] = verify_json(reports);
        return all_hold(reports) ? exit_code::ok : exit_code::verification;
    }
    case TaskOp::sweep: {
        const auto fs = task_filtrations(s, t);
        const auto levels = convergence_sweep(fs, t.schedule, filtration_options(t, o));
        json out = json::array();
        json verify = json::array();
        bool holds = true;
        for (const auto &lvl : levels) {
            out.push_back({{"level", lvl.level},
                           {"stage", stage_json(lvl.stage)},
                           {"table", table_json(lvl.table)},
                           {"delta", delta_json(lvl.delta)}});
            const auto reports = minkowski_report(lvl.table);
            holds = holds && all_hold(reports);
            verify.push_back({{"level", lvl.level}, {"reports", verify_json(reports)}});
        }
        values["levels"] = out;
        result["verify"] = verify;
        return holds ? exit_code::ok : exit_code::verification;
    }
    case TaskOp::zero_check: {
        const auto fs = task_filtrations(s, t);
        const auto rep = zero_propagation_report(fs, *t.j, t.schedule, *t.tol, filtration_options(t, o));
        json out = json::array();
        json verify = json::array();
        for (std::size_t k = 0; k < rep.levels.size(); ++k) {
            const auto &lvl = rep.levels[k];
            out.push_back({{"level", lvl.level},
                           {"stage", stage_json(lvl.stage)},
                           {"table", table_json(lvl.table)},
                           {"delta", delta_json(lvl.delta)}});
            verify.push_back({{"level", lvl.level}, {"reports", verify_json(rep.minkowski[k])}});
        }
        values["levels"] = out;
        values["check"] = to_string(rep.status);
        values["message"] = rep.message;
        values["scope"] = "truncated values decrease below tol; the limit itself is not checked";
        result["verify"] = verify;
        switch (rep.status) {
        case ZeroCheckStatus::passed:
            return exit_code::ok;
        case ZeroCheckStatus::tolerance_not_met:
            return exit_code::stabilization;
        default:
            return exit_code::verification;
        }
    }
    case TaskOp::suite: {
        SuiteConfig cfg = *t.suite;
        cfg.dim = s.dim;
        cfg.paranoid = cfg.paranoid || o.paranoid;
        const auto rep = suite(cfg, o.jobs);
        values["suite"] = suite_json(rep);
        return rep.passed ? exit_code::ok : exit_code::verification;
    }
    }
    return exit_code::ok;
}

} // namespace

json suite_json(const SuiteReport &report)
{
    const auto &c = report.config;
    json instances = json::array();
    for (const auto &inst : report.instances) {
        json ideals = json::array();
        for (const auto &I : inst.ideals) {
            ideals.push_back(ideal_json(I));
        }
        json j = {{"draw_index", inst.draw_index}, {"ideals", ideals}, {"holds", inst.holds}};
        if (inst.table) {
            j["table"] = table_json(*inst.table);
            j["verify"] = verify_json(inst.reports);
        }
        if (inst.oracle_agrees) {
            j["oracle_agrees"] = *inst.oracle_agrees;
        }
        if (!inst.error.empty()) {
            j["error"] = inst.error;
        }
        instances.push_back(std::move(j));
    }
    json failures = json::array();
    for (const auto &inst : report.instances) {
        if (!inst.holds) {
            failures.push_back({{"seed", c.seed}, {"draw_index", inst.draw_index}, {"ideals", instances[inst.draw_index]["ideals"]}});
        }
    }
    return {{"config",
             {{"dim", c.dim},
              {"r", c.r},
              {"count", c.count},
              {"max_exp", c.max_exponent},
              {"seed", c.seed},
              {"force_equal", c.force_equal},
              {"paranoid", c.paranoid}}},
            {"passed", report.passed},
            {"equality_cases", report.equality_cases},
            {"failures", failures},
            {"instances", instances}};
}

RunResult run(const Scenario &scenario, const RunOptions &options)
{
    RunResult out;
    json results = json::array();
    for (const auto &task : scenario.tasks) {
        json result = {{"op", to_string(task.op)}, {"inputs", task_inputs(scenario, task)}};
        const auto start = std::chrono::steady_clock::now();
        int code = exit_code::ok;
        try {
            code = execute(scenario, task, options, result);
            result["status"] = code == exit_code::ok ? "ok" : "failed";
        } catch (const Error &e) {
            code = exit_code_for(e);
            result["status"] = "error";
            result["error"] = e.what();
            if (const auto *rnf = dynamic_cast<const RescaleNotFound *>(&e)) {
                result["error_detail"] = {{"best_f", rnf->best_candidate()},
                                          {"first_failing_t", rnf->first_failing_t()}};
            }
        }
        if (options.timings) {
            const auto elapsed = std::chrono::steady_clock::now() - start;
            result["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        }
        result["exit_code"] = code;
        if (out.exit_code == exit_code::ok) {
            out.exit_code = code;
        }
        results.push_back(std::move(result));
    }
    out.report = {{"version", MIXMULT_VERSION},
                  {"scenario_hash", scenario_hash(scenario)},
                  {"scenario", to_json(scenario)},
                  {"results", results},
                  {"exit_code", out.exit_code}};
    return out;
}

SelftestResult selftest(const std::filesystem::path &dir, unsigned jobs, bool write_golden)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.ends_with(".json") && !name.ends_with(".expected.json")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    SelftestResult out;
    json scenarios = json::array();
    for (const auto &file : files) {
        const auto stem = file.stem().string();
        const auto golden_path = file.parent_path() / (stem + ".expected.json");
        json entry = {{"scenario", file.filename().string()}};
        try {
            RunOptions options;
            options.jobs = jobs;
            const auto result = run(parse_scenario_file(file), options);
            const std::string rendered = render(result.report);
            if (write_golden) {
                std::ofstream(golden_path, std::ios::binary) << rendered;
                entry["golden"] = "written";
            } else {
                std::ifstream in(golden_path, std::ios::binary);
                if (!in) {
                    entry["golden"] = "missing";
                    out.passed = false;
                } else {
                    std::ostringstream expected;
                    expected << in.rdbuf();
                    const bool match = expected.str() == rendered;
                    entry["golden"] = match ? "match" : "mismatch";
                    out.passed = out.passed && match;
                }
            }
            entry["report"] = result.report;
        } catch (const Error &e) {
            entry["golden"] = "error";
            entry["error"] = e.what();
            out.passed = false;
        }
        scenarios.push_back(std::move(entry));
    }
    out.report = {{"version", MIXMULT_VERSION}, {"passed", out.passed}, {"scenarios", scenarios}};
    return out;
}

} // namespace mixmult
