#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace ideolab {

// Splits one CSV record into fields. Handles double-quoted fields with ""
// escapes; does not handle embedded newlines (records are line-based).
inline std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

// Reads one line, tolerating trailing \r (CRLF input). Returns false at EOF.
inline bool getline_any(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

// Quotes a field if it contains a comma, quote, or newline.
inline std::string csv_escape(std::string_view field) {
  bool needs = false;
  for (const char c : field)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace ideolab
