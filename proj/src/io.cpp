#include "ewens/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ewens {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void FileHeader::write(std::ostream& os) const {
    os << "# " << command << '\n';
    for (const auto& [key, value] : fields) os << "# " << key << '=' << value << '\n';
}

namespace {

std::string csv_quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_sample_file(std::ostream& os, const FileHeader& header,
                       const std::vector<std::string>& partition_lines,
                       OutputFormat format) {
    header.write(os);
    for (const auto& line : partition_lines) {
        if (format == OutputFormat::json_lines)
            os << nlohmann::json{{"partition", line}}.dump() << '\n';
        else
            os << line << '\n';
    }
}

void write_pmf_table(std::ostream& os, const FileHeader& header, const ExactPmfTable& table,
                     OutputFormat format) {
    header.write(os);
    if (format == OutputFormat::json_lines) {
        for (const auto& [p, prob] : table.entries)
            os << nlohmann::json{{"partition", p.to_text()}, {"probability", prob}}.dump()
               << '\n';
        return;
    }
    os << "partition,probability\n";
    for (const auto& [p, prob] : table.entries)
        os << csv_quote(p.to_text()) << ',' << format_double(prob) << '\n';
}

ExactPmfTable read_pmf_table_csv(std::istream& is) {
    ExactPmfTable table;
    std::string line;
    bool saw_columns = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_columns) {
            if (line != "partition,probability")
                throw std::invalid_argument("unexpected table columns: " + line);
            saw_columns = true;
            continue;
        }
        if (line.size() < 2 || line[0] != '"')
            throw std::invalid_argument("expected quoted partition field");
        const auto close = line.find('"', 1);
        if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',')
            throw std::invalid_argument("malformed table row: " + line);
        Partition p = Partition::parse(line.substr(1, close - 1));
        const double prob = std::stod(line.substr(close + 2));
        table.n = p.n();
        table.entries.emplace_back(std::move(p), prob);
    }
    return table;
}

void write_istar_table(std::ostream& os, const FileHeader& header,
                       const std::vector<double>& exhaustive,
                       const std::vector<double>& formula, OutputFormat format) {
    header.write(os);
    if (format == OutputFormat::json_lines) {
        for (size_t k = 0; k < exhaustive.size(); ++k)
            os << nlohmann::json{{"k", k + 1},
                                 {"exhaustive", exhaustive[k]},
                                 {"formula", formula[k]}}
                      .dump()
               << '\n';
        return;
    }
    os << "k,exhaustive,formula\n";
    for (size_t k = 0; k < exhaustive.size(); ++k)
        os << (k + 1) << ',' << format_double(exhaustive[k]) << ','
           << format_double(formula[k]) << '\n';
}

void write_stat_path(std::ostream& os, const FileHeader& header, const StatPath& path,
                     OutputFormat format) {
    header.write(os);
    if (format == OutputFormat::json_lines) {
        for (size_t i = 0; i < path.grid.size(); ++i)
            os << nlohmann::json{{"t", path.grid[i]}, {"value", path.values[i]}}.dump()
               << '\n';
        return;
    }
    os << "t,value\n";
    for (size_t i = 0; i < path.grid.size(); ++i)
        os << format_double(path.grid[i]) << ',' << format_double(path.values[i]) << '\n';
}

void write_study_rows(std::ostream& os, const FileHeader& header,
                      const std::vector<StudyRow>& rows, OutputFormat format) {
    header.write(os);
    if (format == OutputFormat::json_lines) {
        for (const auto& row : rows)
            os << nlohmann::json{{"n", row.n},
                                 {"measure", row.measure},
                                 {"stat", row.stat},
                                 {"value", row.value}}
                      .dump()
               << '\n';
        return;
    }
    os << "n,measure,stat,value\n";
    for (const auto& row : rows)
        os << row.n << ',' << row.measure << ',' << row.stat << ','
           << format_double(row.value) << '\n';
}

void write_kv_rows(std::ostream& os, const FileHeader& header,
                   const std::vector<std::pair<std::string, double>>& rows,
                   OutputFormat format) {
    header.write(os);
    if (format == OutputFormat::json_lines) {
        for (const auto& [key, value] : rows)
            os << nlohmann::json{{"stat", key}, {"value", value}}.dump() << '\n';
        return;
    }
    os << "stat,value\n";
    for (const auto& [key, value] : rows)
        os << key << ',' << format_double(value) << '\n';
}

}  // namespace ewens
