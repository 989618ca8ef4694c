#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ifsc::cli {

// Numeric result table plus enough metadata (config echo, seed, version) to
// reproduce the run bit-exactly. Metadata is a sorted map so emission order
// is deterministic.
struct ResultTable {
  std::vector<std::string> schema;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> metadata;
};

// 17 significant digits, '.' decimal separator, locale-independent. Enough
// digits that parsing the text recovers the exact double.
std::string format_double(double v);

// CSV: '#'-prefixed metadata lines, then the header row (= schema), then data.
void emit_csv(const ResultTable& table, std::ostream& os);

// JSON object {"metadata": {...}, "schema": [...], "rows": [[...], ...]}.
void emit_json(const ResultTable& table, std::ostream& os);

// Inverse of emit_json; used by the reproducibility harness and tests.
ResultTable parse_table_json(std::istream& is);

// Writes to path, or stdout when path is empty or "-". format: "csv"/"json".
void emit(const ResultTable& table, const std::string& format, const std::string& path);

}  // namespace ifsc::cli
