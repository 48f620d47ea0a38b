#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "divsum/coupling.hpp"
#include "divsum/divisorsets.hpp"
#include "divsum/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

namespace divsum {

/// Line-oriented law file:
///   v0 <integer>
///   span <integer>
///   prob <index> <rational>
/// with optional `mu <index> <rational>` and `tau <index> <rational>` lines
/// carrying a serialized coupling. '#' starts a comment.
struct LawFileContent {
    LatticeLaw law;
    std::vector<std::pair<long long, Rat>> mu;   // empty when absent
    std::vector<std::pair<long long, Rat>> tau;  // empty when absent
};

LawFileContent load_law_file(const std::string& path);
LawFileContent parse_law_text(const std::string& text, const std::string& origin);

std::string serialize_law(const LatticeLaw& law);
std::string serialize_coupling(const CouplingSpec& spec);
/// Round-trip: rebuilds the coupling from its serialized form.
CouplingSpec parse_coupling_text(const std::string& text, const std::string& origin);

/// Test-set file: `kind list|primes|range` plus `members ...` / `bound N` /
/// `lo N` `hi N`.
DivisorTestSet load_test_set(const std::string& path);
DivisorTestSet parse_test_set_text(const std::string& text, const std::string& origin);

enum class TableFormat { csv, json_lines };

TableFormat parse_table_format(const std::string& name);

/// Streams rows either as CSV (header first) or as one JSON object per line.
class TableWriter {
public:
    TableWriter(std::ostream& out, TableFormat format, std::vector<std::string> columns);
    void row(const std::vector<nlohmann::json>& values);

private:
    std::ostream& out_;
    TableFormat format_;
    std::vector<std::string> columns_;
};

}  // namespace divsum
