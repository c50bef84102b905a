#include "inner/spec_io.hpp"

#include <fstream>
#include <json.hpp>
#include <locale>
#include <set>
#include <sstream>

#include "inner/errors.hpp"

namespace inner {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

bool looks_like_degrees(const std::string& key) {
  return key.find("deg") != std::string::npos;
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (looks_like_degrees(key))
      throw SchemaError(path + "." + key + ": angles are given in radians; degree fields are not accepted");
    if (!allowed.count(key)) throw SchemaError(path + "." + key + ": unknown field");
  }
}

double get_real(const json& obj, const std::string& key, const std::string& path, double fallback,
                bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw SchemaError(path + "." + key + ": required field missing");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(path + "." + key + ": expected a number");
  return v.get<double>();
}

long long get_int(const json& obj, const std::string& key, const std::string& path, long long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw SchemaError(path + "." + key + ": expected an integer");
  return v.get<long long>();
}

const json& get_list(const json& obj, const std::string& key) {
  static const json empty = json::array();
  if (!obj.contains(key)) return empty;
  const json& v = obj.at(key);
  if (!v.is_array()) throw SchemaError(key + ": expected a list");
  return v;
}

std::string item(const std::string& list, std::size_t i) { return list + "[" + std::to_string(i) + "]"; }

}  // namespace

SpecDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("syntax error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  check_keys(root, "document", {"constant_arg", "zero_order", "zeros", "tails", "atoms", "truncation"});

  SpecDocument doc;
  InnerFunctionSpec& s = doc.spec;
  s.constant_arg = get_real(root, "constant_arg", "document", 0.0);
  const long long p = get_int(root, "zero_order", "document", 0);
  if (p < 0 || p > 1'000'000) throw RangeError("zero_order: must be a non-negative integer");
  s.zero_order = static_cast<int>(p);

  const json& zeros = get_list(root, "zeros");
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const std::string path = item("zeros", i);
    check_keys(zeros[i], path, {"modulus", "argument", "multiplicity"});
    DiskZero z;
    z.modulus = get_real(zeros[i], "modulus", path, 0.0, true);
    z.argument = get_real(zeros[i], "argument", path, 0.0, true);
    const long long m = get_int(zeros[i], "multiplicity", path, 1);
    if (m < 1 || m > 1'000'000) throw RangeError(path + ".multiplicity: must be a positive integer");
    z.multiplicity = static_cast<int>(m);
    s.zeros.push_back(z);
  }

  const json& tails = get_list(root, "tails");
  for (std::size_t i = 0; i < tails.size(); ++i) {
    const std::string path = item("tails", i);
    const json& t = tails[i];
    if (!t.is_object()) throw SchemaError(path + ": expected an object");
    if (!t.contains("kind") || !t.at("kind").is_string()) throw SchemaError(path + ".kind: required string");
    const std::string kind = t.at("kind").get<std::string>();
    TailFamily f;
    if (kind == "StolzGeometric") {
      check_keys(t, path, {"kind", "anchor_theta", "c", "q", "t"});
      f.kind = TailKind::StolzGeometric;
      f.c = get_real(t, "c", path, 0.5, true);
      f.q = get_real(t, "q", path, 0.5, true);
      f.t = get_real(t, "t", path, 0.0);
    } else if (kind == "TangentialSummable") {
      check_keys(t, path, {"kind", "anchor_theta", "side", "rho"});
      f.kind = TailKind::TangentialSummable;
      f.rho = get_real(t, "rho", path, 4.0);
      if (!t.contains("side") || !t.at("side").is_string()) throw SchemaError(path + ".side: required string");
      const std::string side = t.at("side").get<std::string>();
      if (side == "upper")
        f.side = TailSide::Upper;
      else if (side == "lower")
        f.side = TailSide::Lower;
      else
        throw SchemaError(path + ".side: expected \"upper\" or \"lower\"");
    } else {
      throw SchemaError(path + ".kind: unknown tail kind \"" + kind + "\"");
    }
    f.anchor_theta = get_real(t, "anchor_theta", path, 0.0, true);
    s.tails.push_back(f);
  }

  const json& atoms = get_list(root, "atoms");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = item("atoms", i);
    check_keys(atoms[i], path, {"theta", "mass"});
    s.atoms.push_back({get_real(atoms[i], "theta", path, 0.0, true), get_real(atoms[i], "mass", path, 0.0, true)});
  }

  if (root.contains("truncation")) {
    const json& tr = root.at("truncation");
    check_keys(tr, "truncation", {"tail_terms", "phase_tol"});
    const long long n = get_int(tr, "tail_terms", "truncation", doc.truncation.tail_terms);
    if (n < 1 || n > 10'000'000) throw RangeError("truncation.tail_terms: must be a positive integer");
    doc.truncation.tail_terms = static_cast<int>(n);
    doc.truncation.phase_tol = get_real(tr, "phase_tol", "truncation", doc.truncation.phase_tol);
  }

  validate(doc.spec);
  validate(doc.truncation);
  return doc;
}

InnerFunctionSpec parse_spec(const std::string& text) { return parse_document(text).spec; }

SpecDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

namespace {

ordered_json spec_json(const InnerFunctionSpec& s) {
  ordered_json j;
  j["constant_arg"] = s.constant_arg;
  j["zero_order"] = s.zero_order;
  j["zeros"] = ordered_json::array();
  for (const auto& z : s.zeros)
    j["zeros"].push_back({{"modulus", z.modulus}, {"argument", z.argument}, {"multiplicity", z.multiplicity}});
  j["tails"] = ordered_json::array();
  for (const auto& t : s.tails) {
    if (t.kind == TailKind::StolzGeometric)
      j["tails"].push_back(
          {{"kind", "StolzGeometric"}, {"anchor_theta", t.anchor_theta}, {"c", t.c}, {"q", t.q}, {"t", t.t}});
    else
      j["tails"].push_back({{"kind", "TangentialSummable"},
                            {"anchor_theta", t.anchor_theta},
                            {"side", t.side == TailSide::Upper ? "upper" : "lower"},
                            {"rho", t.rho}});
  }
  j["atoms"] = ordered_json::array();
  for (const auto& a : s.atoms) j["atoms"].push_back({{"theta", a.theta}, {"mass", a.mass}});
  return j;
}

}  // namespace

std::string render_document(const SpecDocument& doc) {
  ordered_json j = spec_json(doc.spec);
  j["truncation"] = {{"tail_terms", doc.truncation.tail_terms}, {"phase_tol", doc.truncation.phase_tol}};
  return j.dump(2) + "\n";
}

std::string render_spec(const InnerFunctionSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), cols_(header.size()) {
  os_.imbue(std::locale::classic());
  os_.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != cols_) throw InvalidArgument("CSV row width differs from header");
  for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << values[i];
  os_ << '\n';
}

}  // namespace inner
