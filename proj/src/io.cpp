#include "divsum/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace divsum {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& message) {
    throw validation_error(origin + ":" + std::to_string(line) + ": " + message);
}

struct ParsedLines {
    std::optional<long long> v0;
    std::optional<long long> span;
    std::vector<std::pair<long long, Rat>> probs, mu, tau;
};

ParsedLines scan_law_lines(const std::string& text, const std::string& origin) {
    ParsedLines out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key)) continue;
        try {
            if (key == "v0" || key == "span") {
                long long value;
                if (!(ls >> value)) fail_at(origin, lineno, "expected integer after '" + key + "'");
                (key == "v0" ? out.v0 : out.span) = value;
            } else if (key == "prob" || key == "mu" || key == "tau") {
                long long index;
                std::string rat;
                if (!(ls >> index >> rat))
                    fail_at(origin, lineno, "expected '<index> <rational>' after '" + key + "'");
                auto& target = key == "prob" ? out.probs : (key == "mu" ? out.mu : out.tau);
                target.emplace_back(index, parse_rational(rat));
            } else {
                fail_at(origin, lineno, "unknown directive '" + key + "'");
            }
        } catch (const validation_error& e) {
            std::string what = e.what();
            if (what.rfind(origin + ":", 0) == 0) throw;  // already annotated
            fail_at(origin, lineno, what);
        }
        std::string extra;
        if (ls >> extra) fail_at(origin, lineno, "trailing token '" + extra + "'");
    }
    return out;
}

}  // namespace

LawFileContent parse_law_text(const std::string& text, const std::string& origin) {
    ParsedLines lines = scan_law_lines(text, origin);
    if (lines.probs.empty()) fail_at(origin, 1, "no 'prob' lines found");
    try {
        LatticeLaw law(lines.v0.value_or(0), lines.span.value_or(1), std::move(lines.probs));
        return LawFileContent{std::move(law), std::move(lines.mu), std::move(lines.tau)};
    } catch (const validation_error& e) {
        throw validation_error(origin + ": " + e.what());
    }
}

LawFileContent load_law_file(const std::string& path) {
    return parse_law_text(read_file(path), path);
}

std::string serialize_law(const LatticeLaw& law) {
    std::ostringstream out;
    out << "v0 " << law.v0() << "\n";
    out << "span " << law.span() << "\n";
    for (const auto& [k, p] : law.entries())
        out << "prob " << k << " " << format_rational(p) << "\n";
    return out.str();
}

std::string serialize_coupling(const CouplingSpec& spec) {
    std::ostringstream out;
    out << serialize_law(spec.base());
    for (const auto& [k, m] : spec.mu().mu)
        out << "mu " << k << " " << format_rational(m) << "\n";
    for (const auto& [k, t] : spec.tau().tau)
        out << "tau " << k << " " << format_rational(t) << "\n";
    return out.str();
}

CouplingSpec parse_coupling_text(const std::string& text, const std::string& origin) {
    LawFileContent content = parse_law_text(text, origin);
    if (content.mu.empty() || content.tau.empty())
        throw validation_error(origin + ": coupling requires mu and tau lines");
    MuSequence mu;
    mu.total = 0;
    for (auto& [k, m] : content.mu) mu.total += m;
    mu.mu = std::move(content.mu);
    std::sort(mu.mu.begin(), mu.mu.end());
    TauSequence tau;
    tau.theta = 0;
    for (auto& [k, t] : content.tau) tau.theta += t;
    tau.tau = std::move(content.tau);
    std::sort(tau.tau.begin(), tau.tau.end());
    return build_coupling(content.law, tau, mu);
}

DivisorTestSet parse_test_set_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string raw, kind;
    std::vector<long long> members;
    std::optional<long long> bound, lo, hi;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "kind") {
            if (!(ls >> kind)) fail_at(origin, lineno, "expected value after 'kind'");
        } else if (key == "members") {
            long long d;
            while (ls >> d) members.push_back(d);
        } else if (key == "bound" || key == "lo" || key == "hi") {
            long long value;
            if (!(ls >> value)) fail_at(origin, lineno, "expected integer after '" + key + "'");
            (key == "bound" ? bound : (key == "lo" ? lo : hi)) = value;
        } else {
            fail_at(origin, lineno, "unknown directive '" + key + "'");
        }
    }
    try {
        if (kind == "list") return DivisorTestSet::from_list(std::move(members));
        if (kind == "primes") {
            if (!bound) throw validation_error("'primes' requires a 'bound' line");
            return DivisorTestSet::primes_up_to(*bound);
        }
        if (kind == "range") {
            if (!hi) throw validation_error("'range' requires a 'hi' line");
            return DivisorTestSet::range(lo.value_or(2), *hi);
        }
        throw validation_error("unknown test-set kind '" + kind + "'");
    } catch (const validation_error& e) {
        throw validation_error(origin + ": " + e.what());
    }
}

DivisorTestSet load_test_set(const std::string& path) {
    return parse_test_set_text(read_file(path), path);
}

TableFormat parse_table_format(const std::string& name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "json-lines") return TableFormat::json_lines;
    throw validation_error("unknown output format '" + name + "' (csv | json-lines)");
}

TableWriter::TableWriter(std::ostream& out, TableFormat format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
    if (format_ == TableFormat::csv) {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            out_ << (i ? "," : "") << columns_[i];
        out_ << "\n";
    }
}

void TableWriter::row(const std::vector<nlohmann::json>& values) {
    if (values.size() != columns_.size())
        throw validation_error("row width does not match the declared columns");
    if (format_ == TableFormat::csv) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ",";
            if (values[i].is_string())
                out_ << values[i].get<std::string>();
            else
                out_ << values[i].dump();
        }
        out_ << "\n";
    } else {
        nlohmann::json obj;
        for (std::size_t i = 0; i < values.size(); ++i) obj[columns_[i]] = values[i];
        out_ << obj.dump() << "\n";
    }
}

}  // namespace divsum
