#ifndef QMA_REPORT_HPP
#define QMA_REPORT_HPP

// Byte-deterministic JSON and CSV output. Reals are always printed with 17
// significant digits ("%.17g"); non-finite reals become null.

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace qma {

using Json = nlohmann::ordered_json;

inline std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write_json(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_json(v, out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Pretty-printed JSON with fixed real formatting, terminated by a newline.
inline std::string format_json(const Json& j) {
  std::string out;
  detail::write_json(j, out, 0);
  out += "\n";
  return out;
}

}  // namespace qma

#endif  // QMA_REPORT_HPP
