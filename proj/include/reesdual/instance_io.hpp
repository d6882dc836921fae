// JSON instance files and report serialization.
#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reesdual/hypotheses.hpp"
#include "reesdual/instance.hpp"
#include "reesdual/parse.hpp"

namespace reesdual {

using json = nlohmann::ordered_json;

/// Anything wrong with an instance file: bad JSON, missing keys, a polynomial that does
/// not parse, or a shape that violates the instance invariants.
class InstanceFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  std::uint32_t p = 0;  // 0 for Q

  bool rational() const { return p == 0; }
  std::string name() const { return p ? "Fp:" + std::to_string(p) : "Q"; }
};

inline FieldSpec parse_field(const std::string& s) {
  if (s == "Q") return {};
  if (s.rfind("Fp:", 0) == 0) {
    std::string digits = s.substr(3);
    if (digits.empty() || digits.size() > 10 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InstanceFileError("field \"" + s + "\": expected Fp:<prime>");
    std::uint64_t p = std::stoull(digits);
    // products of two residues must fit in 64 bits
    if (p >= (1ull << 31) || !is_prime(static_cast<std::uint32_t>(p)))
      throw InstanceFileError("field \"" + s + "\": modulus must be a prime below 2^31");
    return {static_cast<std::uint32_t>(p)};
  }
  throw InstanceFileError("field \"" + s + "\": expected Q or Fp:<prime>");
}

/// The document as written, before any polynomial is parsed.
struct InstanceFile {
  std::string kind = "ideal";
  int d = 0;
  int m = 0;
  int e = 1;
  std::string field = "Q";
  std::string f;
  std::vector<std::vector<std::string>> psi;

  std::size_t n() const { return psi.size(); }
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
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

inline const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InstanceFileError(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

inline int require_int(const json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer()) throw InstanceFileError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

inline std::string require_string(const json& doc, const char* key) {
  const auto& v = require(doc, key);
  if (!v.is_string()) throw InstanceFileError(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline InstanceFile instance_file_from_json(const json& doc) {
  if (!doc.is_object()) throw InstanceFileError("instance file must hold a JSON object");
  InstanceFile out;
  out.kind = detail::require_string(doc, "kind");
  if (out.kind != "ideal" && out.kind != "module")
    throw InstanceFileError("\"kind\" must be \"ideal\" or \"module\", got \"" + out.kind + "\"");
  out.d = detail::require_int(doc, "d");
  out.m = detail::require_int(doc, "m");
  if (out.kind == "module") out.e = detail::require_int(doc, "e");
  else if (doc.contains("e") && doc.at("e") != 1) throw InstanceFileError("ideal files have e = 1");
  out.field = doc.contains("field") ? detail::require_string(doc, "field") : "Q";
  out.f = detail::require_string(doc, "f");
  const auto& psi = detail::require(doc, "psi");
  if (!psi.is_array() || psi.empty()) throw InstanceFileError("\"psi\" must be a nonempty array of rows");
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (!psi[i].is_array()) throw InstanceFileError("psi row " + std::to_string(i + 1) + " is not an array");
    std::vector<std::string> row;
    for (const auto& entry : psi[i]) {
      if (!entry.is_string()) throw InstanceFileError("psi row " + std::to_string(i + 1) + " holds a non-string entry");
      row.push_back(entry.get<std::string>());
    }
    if (!out.psi.empty() && row.size() != out.psi.front().size())
      throw InstanceFileError("psi row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                              " entries, row 1 has " + std::to_string(out.psi.front().size()));
    out.psi.push_back(std::move(row));
  }
  return out;
}

inline InstanceFile parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFileError("malformed JSON at " + detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  return instance_file_from_json(doc);
}

inline InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFileError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

inline json to_json(const InstanceFile& f) {
  json j;
  j["kind"] = f.kind;
  j["d"] = f.d;
  j["m"] = f.m;
  if (f.kind == "module") j["e"] = f.e;
  j["field"] = f.field;
  j["f"] = f.f;
  j["psi"] = f.psi;
  return j;
}

/// Parses the polynomials of `file` over the field K and validates the shape. Rows of psi
/// are indexed by T_1..T_n, the ring is k[x_1..x_{d+1}, T_1..T_n].
template <class K>
InstanceModule<K> build_instance(const InstanceFile& file, FieldOf<K> field = {}) {
  if (file.d < 1) throw InstanceFileError("d must be at least 1");
  if (file.m < 1) throw InstanceFileError("m must be at least 1");
  if (file.e < 1) throw InstanceFileError("e must be at least 1");
  if (file.psi.size() + file.d + 1 > kMaxVars)
    throw InstanceFileError("instance needs more than " + std::to_string(kMaxVars) + " variables");
  auto ring = make_ring<K>(VarSet(file.d + 1, file.n()), field);
  auto parse_at = [&](const std::string& text, const std::string& where) {
    try {
      return parse_poly(text, ring);
    } catch (const ParseError& e) {
      throw InstanceFileError(where + ": " + e.what() + " in \"" + text + "\"");
    }
  };
  InstanceModule<K> inst;
  inst.ring = ring;
  inst.d = file.d;
  inst.m = file.m;
  inst.e = file.e;
  inst.f = parse_at(file.f, "f");
  std::size_t cols = file.psi.front().size();
  inst.psi = PolyMatrix<K>(ring, file.n(), cols);
  for (std::size_t i = 0; i < file.n(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      inst.psi(i, j) = parse_at(file.psi[i][j], "psi[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
  try {
    validate_instance(inst, inst.e);
  } catch (const InstanceError& e) {
    throw InstanceFileError(e.what());
  }
  return inst;
}

/// The file that reproduces `inst` (canonical polynomial strings).
template <class K>
InstanceFile to_instance_file(const InstanceModule<K>& inst, bool module) {
  InstanceFile f;
  f.kind = module ? "module" : "ideal";
  f.d = inst.d;
  f.m = inst.m;
  f.e = inst.e;
  f.field = inst.ring->field.name();
  f.f = inst.f.to_string();
  for (std::size_t i = 0; i < inst.psi.rows(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < inst.psi.cols(); ++j) row.push_back(inst.psi(i, j).to_string());
    f.psi.push_back(std::move(row));
  }
  return f;
}

template <class K>
InstanceModule<K> as_module(const InstanceIdeal<K>& inst) {
  InstanceModule<K> out;
  static_cast<InstanceIdeal<K>&>(out) = inst;
  out.e = 1;
  return out;
}

inline json to_json(const HypothesisReport& r) {
  json j;
  j["overall"] = r.overall;
  j["linear_type"] = r.linear_type;
  json conds = json::array();
  for (const auto& c : r.conditions) {
    json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    if (c.height) cj["height"] = *c.height;
    if (c.required) cj["required"] = *c.required;
    cj["detail"] = c.detail;
    conds.push_back(std::move(cj));
  }
  j["conditions"] = std::move(conds);
  return j;
}

template <class K>
json poly_json(const std::string& name, const Poly<K>& p) {
  json j;
  j["name"] = name;
  j["poly"] = p.to_string();
  auto bd = p.bidegree();
  if (bd.is_bihomogeneous()) j["bidegree"] = {bd.deg.x, bd.deg.t};
  else j["bidegree"] = nullptr;
  j["terms"] = p.size();
  return j;
}

template <class K>
json matrix_json(const PolyMatrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace reesdual
