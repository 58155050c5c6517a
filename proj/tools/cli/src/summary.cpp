#include "whi/summary.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "whi/sweep.hpp"

namespace whi {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct CellReader {
  const std::string& source;
  int line;

  double real(const std::string& cell, const char* name) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (cell.empty() || used != cell.size()) throw CsvError(source, line, std::string("bad ") + name + " '" + cell + "'");
    return v;
  }
  std::optional<double> maybe(const std::string& cell, const char* name) const {
    if (cell.empty()) return std::nullopt;
    return real(cell, name);
  }
  long integer(const std::string& cell, const char* name) const {
    const double v = real(cell, name);
    if (v != std::floor(v)) throw CsvError(source, line, std::string("bad ") + name + " '" + cell + "'");
    return static_cast<long>(v);
  }
};

std::string fixed(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

CsvError::CsvError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::vector<SummaryRow> read_rows(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError(source, 1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError(source, 1, "unexpected header");
  const std::size_t columns = split(kCsvHeader).size();

  std::vector<SummaryRow> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != columns)
      throw CsvError(source, number, "expected " + std::to_string(columns) + " columns, found " + std::to_string(c.size()));
    const CellReader r{source, number};
    SummaryRow row;
    row.sweep = c[0];
    row.omega = r.real(c[1], "omega");
    row.method = c[2];
    row.n = static_cast<int>(r.integer(c[3], "n"));
    row.dofs = r.integer(c[4], "dofs");
    row.iters = static_cast<int>(r.integer(c[5], "iters"));
    row.applications = r.integer(c[6], "applications");
    row.final_residual = r.maybe(c[7], "final_residual");
    row.measured_rate = r.maybe(c[8], "measured_rate");
    row.wall_time = r.real(c[9], "wall_time");
    if (c[10] != "true" && c[10] != "false") throw CsvError(source, number, "bad converged '" + c[10] + "'");
    row.converged = c[10] == "true";
    row.delta_h = r.maybe(c[11], "delta_h");
    row.rate_bound = r.maybe(c[12], "rate_bound");
    row.error = c[13];
    rows.push_back(std::move(row));
  }
  return rows;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  const double den = n * sxx - sx * sx;
  if (x.size() < 2 || !(std::abs(den) > 0.0)) return std::nan("");
  return (n * sxy - sx * sy) / den;
}

int count_bound_violations(std::span<const SummaryRow> rows, double slack) {
  int v = 0;
  for (const auto& r : rows)
    if (r.rate_bound && r.measured_rate && r.method == "fixed_point" && *r.measured_rate > *r.rate_bound + slack) ++v;
  return v;
}

void report_summary(std::span<const std::filesystem::path> csvs, std::ostream& out) {
  for (const auto& path : csvs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    const auto rows = read_rows(in, path.string());
    out << "== " << path.string() << '\n';
    if (rows.empty()) {
      out << "no rows\n";
      continue;
    }
    std::map<std::pair<std::string, std::string>, std::vector<SummaryRow>> groups;
    for (const auto& r : rows) groups[{r.sweep, r.method}].push_back(r);

    for (const auto& [key, group] : groups) {
      out << "-- sweep " << key.first << ", method " << key.second << '\n';
      char line[200];
      std::snprintf(line, sizeof line, "%12s %7s %9s %7s %9s %12s %9s %5s\n", "omega", "n", "dofs", "iters", "applies",
                    "residual", "rate", "conv");
      out << line;
      std::vector<double> xs, ys;
      int checked = 0;
      for (const auto& r : group) {
        std::snprintf(line, sizeof line, "%12.6g %7d %9ld %7d %9ld %12s %9s %5s%s%s\n", r.omega, r.n, r.dofs, r.iters,
                      r.applications, r.final_residual ? fixed("%.3e", *r.final_residual).c_str() : "-",
                      r.measured_rate ? fixed("%.5f", *r.measured_rate).c_str() : "-", r.converged ? "yes" : "no",
                      r.error.empty() ? "" : "  ", r.error.c_str());
        out << line;
        if (r.iters > 0) {
          xs.push_back(r.omega);
          ys.push_back(r.iters);
        }
        if (r.rate_bound && r.method == "fixed_point") ++checked;
      }
      const double slope = fit_slope(xs, ys);
      if (std::isnan(slope)) {
        out << "slope of log(iters) vs log(omega): n/a\n";
      } else {
        out << "slope of log(iters) vs log(omega): " << fixed("%.3f", slope) << '\n';
      }
      out << "rate bound violations: " << count_bound_violations(group) << " of " << checked << " checked\n";
    }
  }
}

}  // namespace whi
