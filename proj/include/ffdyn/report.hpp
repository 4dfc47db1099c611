#pragma once

// CSV/JSON report plumbing.  CSV is comma-separated with a header row and
// no quoting; every cell value the library emits is comma-free by
// construction (element literals are alphanumeric, lists are dot-joined).
// JSON objects serialize with sorted keys.  Identical inputs must yield
// byte-identical reports, so doubles are always formatted through one
// fixed "%.12g" path and no report contains timestamps.

#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdyn/elem_set.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/field.hpp"
#include "ffdyn/linalg.hpp"

namespace ffdyn {

using Json = nlohmann::json;

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

inline std::string fmt_bool(bool b) { return b ? "true" : "false"; }

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  explicit Csv(std::vector<std::string> cols) : header(std::move(cols)) {}

  void add_row(std::vector<std::string> row) {
    check_invariant(row.size() == header.size(), "CSV row width mismatch");
    for (const auto& cell : row)
      check_invariant(cell.find(',') == std::string::npos &&
                          cell.find('\n') == std::string::npos,
                      "CSV cell contains a separator");
    rows.push_back(std::move(row));
  }

  std::string str() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += cells[i];
      }
      out.push_back('\n');
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
  }
};

/// Dot-joined list, the comma-free form used inside CSV cells.
inline std::string dot_join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back('.');
    out += parts[i];
  }
  return out;
}

// ---- set serialization -----------------------------------------------------

/// Sorted array of element literals.
inline Json set_to_json(const Field& F, const ElemSet& s) {
  Json arr = Json::array();
  s.for_each([&](Elem e) { arr.push_back(F.to_literal(e)); });
  return arr;
}

inline ElemSet set_from_json(const Field& F, const Json& arr) {
  ElemSet s(F.order());
  for (const auto& lit : arr) s.add(F.from_literal(lit.get<std::string>()));
  return s;
}

/// Little-endian nibble string: hex digit j encodes membership bits
/// 4j .. 4j+3.  Suits large sets better than literal arrays.
inline std::string set_to_hex(const ElemSet& s) {
  std::uint64_t n = (s.universe() + 3) / 4;
  std::string out(n, '0');
  static const char* digits = "0123456789abcdef";
  const auto& words = s.words();
  for (std::uint64_t j = 0; j < n; ++j) {
    std::uint64_t bit = 4 * j;
    unsigned nib = static_cast<unsigned>((words[bit >> 6] >> (bit & 63)) & 0xF);
    if (s.universe() - bit < 4) nib &= (1u << (s.universe() - bit)) - 1;
    out[j] = digits[nib];
  }
  return out;
}

/// {"base": literal, "basis": [literals]}.
inline Json subspace_to_json(const Field& F, const AffineSubspace& A) {
  Json j;
  j["base"] = F.to_literal(A.base);
  Json basis = Json::array();
  for (Elem v : A.basis) basis.push_back(F.to_literal(v));
  j["basis"] = basis;
  return j;
}

inline AffineSubspace subspace_from_json(const Field& F, const Json& j) {
  AffineSubspace A;
  A.base = F.from_literal(j.at("base").get<std::string>());
  for (const auto& lit : j.at("basis"))
    A.basis.push_back(F.from_literal(lit.get<std::string>()));
  return A;
}

inline ElemSet set_from_hex(std::uint64_t universe, const std::string& hex) {
  if (hex.size() != (universe + 3) / 4)
    throw ParseError("hex bitmap has the wrong length");
  ElemSet s(universe);
  for (std::uint64_t j = 0; j < hex.size(); ++j) {
    char c = hex[j];
    unsigned nib;
    if (c >= '0' && c <= '9')
      nib = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      nib = static_cast<unsigned>(c - 'a' + 10);
    else
      throw ParseError("bad hex digit in bitmap");
    for (unsigned b = 0; b < 4; ++b) {
      if (nib & (1u << b)) {
        std::uint64_t idx = 4 * j + b;
        if (idx >= universe) throw ParseError("bitmap sets a bit past #F");
        s.add(static_cast<Elem>(idx));
      }
    }
  }
  return s;
}

}  // namespace ffdyn
