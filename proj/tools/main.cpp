#include "cli.hpp"

#include "cocompact/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

int main(int argc, char** argv)
{
    namespace cc = cocompact::cli;
    CLI::App app{"Cocompact lattice decisions and constructions, JSON in and out"};
    app.require_subcommand(1, 1);

    std::string input_file, tol;
    cc::Options opt;
    long bound = 0;
    app.add_option("--input", input_file, "read JSON from FILE instead of stdin");
    app.add_option("--seed", opt.seed, "seed for randomized choices (default 1)");
    auto* bound_opt = app.add_option("--bound", bound, "search bound of the subcommand");
    auto* tol_opt = app.add_option("--tol", tol, "rational tolerance, e.g. 1/1000000 or 1e-12");
    for (const auto& name : cc::subcommands())
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : cc::kUsage;
    }
    if (*bound_opt)
        opt.bound = bound;
    if (*tol_opt) {
        try {
            opt.tol = cocompact::parse_rational(tol);
        } catch (const cocompact::Error& e) {
            std::cerr << "--tol: " << e.what() << "\n";
            return cc::kUsage;
        }
        if (*opt.tol <= 0) {
            std::cerr << "--tol must be positive\n";
            return cc::kUsage;
        }
    }

    std::string text;
    if (input_file.empty()) {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(input_file);
        if (!in) {
            std::cerr << "cannot read " << input_file << "\n";
            return cc::kUsage;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    auto res = cc::run(app.get_subcommands().front()->get_name(), text, opt);
    std::cout << res.output.dump(2) << "\n";
    return res.exit_code;
}
