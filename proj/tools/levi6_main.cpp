#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "levi6/manifest.hpp"

namespace {

struct Cli {
    std::string manifest_path;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> points;
    std::string out_path;
};

void add_common(CLI::App* sub, Cli& cli) {
    sub->add_option("manifest", cli.manifest_path, "manifest file (JSON)")
        ->required();
    sub->add_option("--tol", cli.tol, "tolerance override");
    sub->add_option("--seed", cli.seed, "random seed override");
    sub->add_option("--points", cli.points, "number of random sample points");
}

int dispatch(const std::string& command, const Cli& cli) {
    levi6::Manifest m = levi6::load_manifest(cli.manifest_path);
    levi6::RunOptions opts{cli.tol, cli.seed, cli.points};
    auto result = levi6::run_manifest_command(command, m, opts);
    if (command == "report") {
        if (!cli.out_path.empty()) {
            std::ofstream out(cli.out_path);
            if (!out)
                throw levi6::ManifestError("cannot write '" + cli.out_path +
                                           "'");
            out << result.report.dump(2) << "\n";
        } else {
            std::cout << result.report.dump(2) << "\n";
        }
    } else {
        std::cout << result.summary;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical invariants of rank-4 distributions on "
                 "6-dimensional charts"};
    app.require_subcommand(1);

    Cli cli;
    auto* classify = app.add_subcommand("classify",
                                        "elliptic/hyperbolic/degenerate "
                                        "classification per sample point");
    auto* invariants =
        app.add_subcommand("invariants", "full invariant pipeline");
    auto* check_flat = app.add_subcommand(
        "check-flat", "flatness verdict (exit 0 if flat, 3 if not)");
    auto* report =
        app.add_subcommand("report", "machine-readable JSON report");
    for (auto* sub : {classify, invariants, check_flat, report})
        add_common(sub, cli);
    report->add_option("--out", cli.out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : levi6::kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return dispatch(command, cli);
    } catch (const levi6::ManifestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return levi6::kExitUsage;
    } catch (const levi6::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return levi6::kExitUsage;
    } catch (const levi6::PdeInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return levi6::kExitUsage;
    } catch (const levi6::DegenerateStructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return levi6::kExitDegenerate;
    } catch (const levi6::Levi6Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return levi6::kExitNumerical;
    }
}
