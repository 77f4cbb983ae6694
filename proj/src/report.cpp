#include "cuspsum/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace cuspsum {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_complex(const std::complex<double>& z) {
  return "(" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + ")";
}

std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", v);
  return buf;
}

static void section_text(std::string& out, const char* head,
                         const std::vector<std::pair<std::string, std::string>>& kv) {
  if (kv.empty()) return;
  out += head;
  out += "\n";
  for (const auto& [k, v] : kv) {
    out += "  ";
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
}

std::string report_text(const Report& rep) {
  std::string out = "== " + rep.command + " ==\n";
  section_text(out, "params", rep.params);
  section_text(out, "values", rep.values);
  section_text(out, "defects", rep.defects);
  section_text(out, "regression", rep.regression);
  if (rep.wall_seconds >= 0) out += "wall_seconds = " + fmt_double(rep.wall_seconds) + "\n";
  return out;
}

std::string report_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["command"] = rep.command;
  auto put = [&](const char* key, const std::vector<std::pair<std::string, std::string>>& kv) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [k, v] : kv) o[k] = v;
    j[key] = o;
  };
  put("params", rep.params);
  put("values", rep.values);
  put("defects", rep.defects);
  put("regression", rep.regression);
  if (rep.wall_seconds >= 0) j["wall_seconds"] = rep.wall_seconds;
  return j.dump(2) + "\n";
}

}  // namespace cuspsum
