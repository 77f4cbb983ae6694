#ifndef CUSPSUM_ERRORS_HPP
#define CUSPSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cuspsum {

// Bad user input: malformed rational twist, out-of-range parameters,
// unknown form name, inconsistent recipe weights.
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

// A computation needs more Fourier coefficients than the table holds.
struct coverage_error : std::runtime_error {
  explicit coverage_error(const std::string& m) : std::runtime_error(m) {}
};

// Evaluation requested outside the right half-plane Re s > 0.
struct half_plane_error : std::domain_error {
  explicit half_plane_error(const std::string& m) : std::domain_error(m) {}
};

// A certified truncation budget exceeds the requested tolerance, so the
// result cannot be reported as verified.
struct tail_budget_error : std::runtime_error {
  explicit tail_budget_error(const std::string& m, double budget_, double needed_)
      : std::runtime_error(m), budget(budget_), needed(needed_) {}
  double budget;
  double needed;
};

// Quadrature failed to reach the requested accuracy.
struct accuracy_error : std::runtime_error {
  explicit accuracy_error(const std::string& m, double achieved_)
      : std::runtime_error(m), achieved(achieved_) {}
  double achieved;
};

}  // namespace cuspsum

#endif
