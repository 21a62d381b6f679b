#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riccigraph/bakry_emery.hpp"
#include "riccigraph/graph.hpp"

namespace ricci {

enum class Command { Curvature, Bounds, CD, Scalar, Verify };
enum class PairSelector { Edges, AllPairs, File };
enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string input_path;  // edge-list file; mutually exclusive with family
    std::string family;      // family spec (see generate_family)
    bool weighted = false;
    Command command = Command::Curvature;
    PairSelector selector = PairSelector::Edges;
    std::string pairs_file;
    DimensionParam m = DimensionParam::finite(Rat(2));
    std::optional<Rat> K;
    double tolerance = 1e-9;
    OutputFormat format = OutputFormat::Csv;
    int parallelism = 1;
};

// Executes the configured command; report bytes go to `out`, diagnostics to
// `err`. Returns 0 on success, 1 on analysis failure, 2 on usage errors.
// Output is byte-identical for identical configs regardless of parallelism.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Row container shared by every command; one string cell per CSV column plus
// a mirrored compact JSON object per row.
struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> json_rows;
};

std::string serialize_report(const ReportTable& table, OutputFormat format);

}  // namespace ricci
