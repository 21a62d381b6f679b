#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "riccigraph/report.hpp"

namespace {

// Options shared by every subcommand, mapped onto RunConfig.
struct CliOptions {
    std::string input;
    std::string family;
    bool weighted = false;
    std::string pairs = "edges";
    std::string pairs_file;
    std::string m = "2";
    std::string K;
    double tolerance = 1e-9;
    std::string format = "csv";
    int parallelism = 1;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("-i,--input", opt.input, "edge-list file to analyze");
    cmd->add_option("--family", opt.family,
                    "generate the input graph (complete:n, cycle:n, path:n, star:n, "
                    "tree:random:n:seed, gnp:n:p:seed, regular-tree:d:depth)");
    cmd->add_flag("-w,--weighted", opt.weighted, "read the third column as edge weights");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--parallelism", opt.parallelism, "worker count for batch analyses")
        ->check(CLI::PositiveNumber);
}

void add_pair_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--pairs", opt.pairs, "pair selector")
        ->check(CLI::IsMember({"edges", "all-pairs", "file"}));
    cmd->add_option("--pairs-file", opt.pairs_file, "file of 'u v' label pairs");
}

int build_config(const CliOptions& opt, ricci::Command command, ricci::RunConfig& config,
                 std::ostream& err) {
    config.input_path = opt.input;
    config.family = opt.family;
    config.weighted = opt.weighted;
    config.command = command;
    try {
        if (opt.pairs == "edges")
            config.selector = ricci::PairSelector::Edges;
        else if (opt.pairs == "all-pairs")
            config.selector = ricci::PairSelector::AllPairs;
        else
            config.selector = ricci::PairSelector::File;
        config.pairs_file = opt.pairs_file;
        config.m = ricci::DimensionParam::parse(opt.m);
        if (!opt.K.empty()) config.K = ricci::rat_from_string(opt.K);
        config.tolerance = opt.tolerance;
        config.format = opt.format == "json" ? ricci::OutputFormat::Json
                                             : ricci::OutputFormat::Csv;
        config.parallelism = opt.parallelism;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Ollivier-Ricci curvature and curvature-dimension analysis on graphs"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* curvature = app.add_subcommand(
        "curvature", "kappa and W1 per vertex pair (edges by default)");
    add_common_options(curvature, opt);
    add_pair_options(curvature, opt);

    auto* bounds = app.add_subcommand(
        "bounds", "full per-edge curvature report with every bound and tightness flag");
    add_common_options(bounds, opt);
    add_pair_options(bounds, opt);

    auto* cd = app.add_subcommand(
        "cd", "curvature-dimension analysis per vertex: verify CD(m,K) or optimize K");
    add_common_options(cd, opt);
    cd->add_option("-m,--m", opt.m, "dimension parameter (rational or 'inf')");
    cd->add_option("-K,--K", opt.K, "curvature constant to verify (omit to optimize)");
    cd->add_option("--tolerance", opt.tolerance, "tolerance for the optimize mode");

    auto* scalar = app.add_subcommand(
        "scalar", "degree-averaged curvature per vertex with clustering bounds");
    add_common_options(scalar, opt);

    auto* verify = app.add_subcommand(
        "verify", "run the self-verification property suite on the input graph");
    add_common_options(verify, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ricci::Command command = ricci::Command::Curvature;
    if (bounds->parsed()) command = ricci::Command::Bounds;
    if (cd->parsed()) command = ricci::Command::CD;
    if (scalar->parsed()) command = ricci::Command::Scalar;
    if (verify->parsed()) command = ricci::Command::Verify;

    ricci::RunConfig config;
    if (int code = build_config(opt, command, config, std::cerr); code != 0) return code;
    return ricci::run(config, std::cout, std::cerr);
}
