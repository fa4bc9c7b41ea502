#include "ctilt/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations with cluster tilting subcategories of bound quiver algebras"};
    std::string command, file, format = "json";
    ctilt::CommandOptions options;
    bool timings = false;

    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(ctilt::command_names()));
    app.add_option("problem", file, "Problem file")->required();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "human"}));
    app.add_option("--seed", options.seed, "Seed for randomised splitting (overrides the file)");
    app.add_option("--max-ext", options.max_ext, "Highest Ext degree for ext-table")->check(CLI::PositiveNumber);
    app.add_option("--map", options.map, "Map for dkernel and dcokernel (default: the first map)");
    app.add_option("--module", options.module, "Module for m-resolve (default: every atlas member)");
    app.add_flag("--timings", timings, "Add wall-clock timings to the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using clock = std::chrono::steady_clock;
    const auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
    try {
        const auto t0 = clock::now();
        const ctilt::ProblemFile problem = ctilt::load_problem(file);
        const auto t1 = clock::now();
        ctilt::Report report = ctilt::run_command(command, problem, options);
        const auto t2 = clock::now();
        if (timings) report.timings = ctilt::Json{{"parse_ms", ms(t1 - t0)}, {"run_ms", ms(t2 - t1)}};
        std::cout << ctilt::emit_report(report, format);
        return report.verdict ? 0 : 1;
    } catch (const ctilt::InputError& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return 2;
    }
}
