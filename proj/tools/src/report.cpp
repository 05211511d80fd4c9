#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace conifold::cli {

namespace {

std::string format_float(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      out += close;
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        write(v, indent, depth + 1, out);
      }
      out += close;
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_float(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string dump(const json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

json Report::to_json() const {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["params"] = params;
  j["results"] = results;
  j["residuals"] = residuals;
  j["tolerances"] = tolerances;
  j["pass"] = pass;
  return j;
}

}  // namespace conifold::cli
