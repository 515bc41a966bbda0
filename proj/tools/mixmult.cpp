#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <mixmult/runner.hpp>

namespace
{

int emit(const std::string &text, const std::string &out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "mixmult: cannot write " << out_path << "\n";
        return mixmult::exit_code::input;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    using namespace mixmult;

    CLI::App app{"Exact mixed multiplicities of monomial ideals and filtrations"};
    app.set_version_flag("--version", std::string(MIXMULT_VERSION));
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    RunOptions run_opts;
    auto *run_cmd = app.add_subcommand("run", "Run the tasks of a scenario file and print a JSON report");
    run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run_cmd->add_flag("--paranoid", run_opts.paranoid, "Cross-check every ideal table with the difference path");
    run_cmd->add_option("--jobs", run_opts.jobs, "Worker threads inside tasks")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    run_cmd->add_flag("--timings", run_opts.timings, "Record per-task wall time (breaks byte-identical reports)");

    SuiteConfig cfg;
    unsigned suite_jobs = 1;
    auto *suite_cmd = app.add_subcommand("suite", "Check the Minkowski inequality on random ideal tuples");
    suite_cmd->add_option("--dim", cfg.dim, "Number of variables (2 or 3)")->required();
    suite_cmd->add_option("--r", cfg.r, "Ideals per tuple")->required();
    suite_cmd->add_option("--count", cfg.count, "Number of tuples")->required();
    suite_cmd->add_option("--max-exp", cfg.max_exponent, "Largest pure power")->required();
    suite_cmd->add_option("--seed", cfg.seed, "Generator seed")->required();
    suite_cmd->add_flag("--paranoid", cfg.paranoid, "Also compare with the difference path");
    suite_cmd->add_flag("--force-equal", cfg.force_equal, "Repeat one drawn ideal r times per tuple");
    suite_cmd->add_option("--jobs", suite_jobs, "Worker threads")->check(CLI::PositiveNumber);
    suite_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

    std::string dir = MIXMULT_SCENARIO_DIR;
    unsigned selftest_jobs = 1;
    bool write_golden = false;
    auto *selftest_cmd = app.add_subcommand("selftest", "Run the shipped scenarios against their golden reports");
    selftest_cmd->add_option("--dir", dir, "Scenario directory");
    selftest_cmd->add_option("--jobs", selftest_jobs, "Worker threads inside tasks")->check(CLI::PositiveNumber);
    selftest_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    selftest_cmd->add_flag("--write-golden", write_golden, "Regenerate the expected reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code::input;
    }

    try {
        if (*run_cmd) {
            const auto result = run(parse_scenario_file(scenario_path), run_opts);
            const int write = emit(render(result.report), out_path);
            return write != 0 ? write : result.exit_code;
        }
        if (*suite_cmd) {
            const auto report = suite(cfg, suite_jobs);
            nlohmann::json doc = {{"version", MIXMULT_VERSION}, {"suite", suite_json(report)}};
            const int write = emit(render(doc), out_path);
            return write != 0 ? write : (report.passed ? exit_code::ok : exit_code::verification);
        }
        const auto result = selftest(dir, selftest_jobs, write_golden);
        const int write = emit(render(result.report), out_path);
        return write != 0 ? write : (result.passed ? exit_code::ok : exit_code::verification);
    } catch (const Error &e) {
        std::cerr << "mixmult: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
