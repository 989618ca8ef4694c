#include "cli/table.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <system_error>

#include <json.hpp>

#include "ifsc/errors.hpp"

namespace ifsc::cli {

namespace {

void require_rectangular(const ResultTable& table) {
  for (const auto& row : table.rows) {
    if (row.size() != table.schema.size()) {
      throw InvalidArgument("ResultTable: row width does not match schema");
    }
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw NumericalInstability("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void emit_csv(const ResultTable& table, std::ostream& os) {
  require_rectangular(table);
  for (const auto& [key, value] : table.metadata) {
    os << "# " << key << " = " << value << "\n";
  }
  for (std::size_t i = 0; i < table.schema.size(); ++i) {
    if (i) os << ",";
    os << table.schema[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << format_double(row[i]);
    }
    os << "\n";
  }
}

void emit_json(const ResultTable& table, std::ostream& os) {
  require_rectangular(table);
  nlohmann::json j;
  j["metadata"] = table.metadata;
  j["schema"] = table.schema;
  j["rows"] = table.rows;
  os << j.dump(2) << "\n";
}

ResultTable parse_table_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("parse_table_json: ") + e.what());
  }
  ResultTable table;
  try {
    table.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    table.schema = j.at("schema").get<std::vector<std::string>>();
    table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("parse_table_json: malformed table: ") + e.what());
  }
  require_rectangular(table);
  return table;
}

void emit(const ResultTable& table, const std::string& format, const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (format == "csv") {
      emit_csv(table, os);
    } else if (format == "json") {
      emit_json(table, os);
    } else {
      throw InvalidArgument("emit: unknown format '" + format + "'");
    }
    if (!os) throw IoError("emit: write failed");
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("emit: writing to stdout failed");
  } else {
    std::ofstream out(path);
    if (!out) throw IoError("emit: cannot open '" + path + "' for writing");
    write(out);
    out.close();
    if (!out) throw IoError("emit: closing '" + path + "' failed");
  }
}

}  // namespace ifsc::cli
