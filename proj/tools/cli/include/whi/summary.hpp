#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace whi {

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& source, int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct SummaryRow {
  std::string sweep;
  double omega = 0.0;
  std::string method;
  int n = 0;
  long dofs = 0;
  int iters = 0;
  long applications = 0;
  std::optional<double> final_residual;
  std::optional<double> measured_rate;
  double wall_time = 0.0;
  bool converged = false;
  std::optional<double> delta_h;
  std::optional<double> rate_bound;
  std::string error;
};

/// Parses a sweep CSV (header line required). `source` names the input in errors.
std::vector<SummaryRow> read_rows(std::istream& in, const std::string& source);

/// Least-squares slope of log(y) against log(x); needs two distinct x.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// Rows whose measured rate exceeds their rate bound by more than `slack`.
int count_bound_violations(std::span<const SummaryRow> rows, double slack = 0.01);

/// Per-sweep, per-method tables with the fitted iteration slope and bound check.
void report_summary(std::span<const std::filesystem::path> csvs, std::ostream& out);

}  // namespace whi
