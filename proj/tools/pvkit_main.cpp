#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "pvkit/session.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pvkit: exact difference Galois theory at desk scale"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a DSL program");
    std::string file;
    pvkit::SessionOptions opt;
    run->add_option("file", file, "program file, or - for stdin")->required();
    run->add_flag("--json", opt.json, "emit JSON reports");
    run->add_flag("--trace", opt.trace, "include certificate traces (text mode)");
    run->add_option("--seed", opt.seed, "seed for randomized checks");
    run->add_option("--degree-cap", opt.degree_cap, "numerator degree cap for solvers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string text;
    if (file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "usage error: cannot open " << file << "\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    pvkit::RunResult res = pvkit::run_program(text, opt);
    std::cout << res.output;
    std::cerr << res.diagnostics;
    return res.exit_code;
}
