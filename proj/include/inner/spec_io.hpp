#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "inner/model.hpp"

namespace inner {

/// A spec plus the truncation settings stored alongside it.
struct SpecDocument {
  InnerFunctionSpec spec;
  TruncationPolicy truncation;
};

/// Parses and validates a JSON spec document. Syntax errors carry the line
/// and column; schema and range errors name the offending field.
SpecDocument parse_document(const std::string& text);
InnerFunctionSpec parse_spec(const std::string& text);
SpecDocument load_document(const std::string& path);

std::string render_document(const SpecDocument& doc);
std::string render_spec(const InnerFunctionSpec& spec);

/// Locale-independent CSV with a header row and LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ostream& os_;
  std::size_t cols_;
};

}  // namespace inner
