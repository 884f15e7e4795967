#pragma once
// File formats. All numeric output goes through %.17g so serialized values
// round-trip exactly; provenance headers never contain timestamps, keeping
// outputs byte-identical for a fixed configuration.

#include <iosfwd>
#include <string>
#include <vector>

#include "ewens/oracle.hpp"
#include "ewens/statistics.hpp"
#include "ewens/weights.hpp"

namespace ewens {

enum class OutputFormat { csv, json_lines };

std::string format_double(double value);

// "# key=value ..." provenance lines shared by all writers.
struct FileHeader {
    std::string command;
    std::vector<std::pair<std::string, std::string>> fields;

    void write(std::ostream& os) const;
};

void write_sample_file(std::ostream& os, const FileHeader& header,
                       const std::vector<std::string>& partition_lines, OutputFormat format);

void write_pmf_table(std::ostream& os, const FileHeader& header, const ExactPmfTable& table,
                     OutputFormat format);
// Reads back a csv pmf table (round-trip for table outputs).
ExactPmfTable read_pmf_table_csv(std::istream& is);

void write_istar_table(std::ostream& os, const FileHeader& header,
                       const std::vector<double>& exhaustive,
                       const std::vector<double>& formula, OutputFormat format);

void write_stat_path(std::ostream& os, const FileHeader& header, const StatPath& path,
                     OutputFormat format);

// Long-format study rows: (n, measure, stat, value).
struct StudyRow {
    count_t n = 0;
    std::string measure;
    std::string stat;
    double value = 0.0;
};
void write_study_rows(std::ostream& os, const FileHeader& header,
                      const std::vector<StudyRow>& rows, OutputFormat format);

void write_kv_rows(std::ostream& os, const FileHeader& header,
                   const std::vector<std::pair<std::string, double>>& rows,
                   OutputFormat format);

}  // namespace ewens
