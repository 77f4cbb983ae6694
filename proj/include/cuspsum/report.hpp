#ifndef CUSPSUM_REPORT_HPP
#define CUSPSUM_REPORT_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cuspsum {

/*
 * Key/value report with deterministic field order: fields appear exactly
 * in insertion order in both the text and the JSON serialization.
 * Numeric formatting is fixed (%.17g) so reruns are byte-identical;
 * wall-time is kept out of the deterministic sections.
 */
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::pair<std::string, std::string>> defects;
  std::vector<std::pair<std::string, std::string>> regression;
  double wall_seconds = -1;  // < 0: omit

  void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
  void value(const std::string& k, const std::string& v) { values.emplace_back(k, v); }
  void defect(const std::string& k, const std::string& v) { defects.emplace_back(k, v); }
  void pin(const std::string& k, const std::string& v) { regression.emplace_back(k, v); }
};

std::string fmt_double(double x);                    // %.17g
std::string fmt_complex(const std::complex<double>& z);
std::string fmt_int(long long v);

std::string report_text(const Report& rep);
std::string report_json(const Report& rep);

}  // namespace cuspsum

#endif
