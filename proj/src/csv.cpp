#include "binseg/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "binseg/errors.hpp"

namespace binseg {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_value(const std::string& text, const std::string& path,
                   std::int64_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw ParseError(path, line, "bad value '" + text + "'");
  }
  return v;
}

}  // namespace

std::vector<NamedSequence> read_sequence_file(const std::string& path,
                                              const std::string& default_id) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 0, "empty file");
  const std::vector<std::string> header = split_fields(line);
  std::int64_t value_col = -1, id_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "value" && value_col < 0) {
      value_col = static_cast<std::int64_t>(i);
    } else if (header[i] == "sequence_id" && id_col < 0) {
      id_col = static_cast<std::int64_t>(i);
    } else {
      throw ParseError(path, 1, "unexpected column '" + header[i] +
                                "' (expected value and optional sequence_id)");
    }
  }
  if (value_col < 0) throw ParseError(path, 1, "missing 'value' column");
  const std::string single_id =
      default_id.empty() ? std::filesystem::path(path).stem().string()
                         : default_id;
  std::map<std::string, std::vector<double>> by_id;  // sorted by id
  std::int64_t line_no = 1;
  std::int64_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_fields(line);
    if (static_cast<std::int64_t>(fields.size()) !=
        static_cast<std::int64_t>(header.size())) {
      throw ParseError(path, line_no,
                       "expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()));
    }
    const std::string id =
        id_col >= 0 ? fields[static_cast<std::size_t>(id_col)] : single_id;
    if (id.empty()) throw ParseError(path, line_no, "empty sequence_id");
    by_id[id].push_back(parse_value(
        fields[static_cast<std::size_t>(value_col)], path, line_no));
    ++rows;
  }
  if (rows == 0) throw ParseError(path, 0, "no data rows");
  std::vector<NamedSequence> out;
  out.reserve(by_id.size());
  for (auto& [id, values] : by_id) out.push_back({id, std::move(values)});
  return out;
}

std::vector<NamedSequence> read_sequence_input(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw ParseError(path, 0, "no such file or directory");
  if (!fs::is_directory(path)) return read_sequence_file(path);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw ParseError(path, 0, "no .csv files in directory");
  std::sort(files.begin(), files.end());
  std::vector<NamedSequence> out;
  for (const fs::path& file : files) {
    const std::string stem = file.stem().string();
    std::vector<NamedSequence> part = read_sequence_file(file.string(), stem);
    for (NamedSequence& seq : part) {
      if (seq.id != stem) seq.id = stem + ":" + seq.id;
      out.push_back(std::move(seq));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const NamedSequence& a, const NamedSequence& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i].id == out[i + 1].id) {
      throw ParseError(path, 0, "duplicate sequence id '" + out[i].id + "'");
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace binseg
