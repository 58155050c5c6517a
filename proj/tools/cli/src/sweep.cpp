#include "whi/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "waveholtz/errors.hpp"
#include "waveholtz/oracle.hpp"
#include "waveholtz/tunable.hpp"
#include "waveholtz/waveholtz.hpp"
#include "whi/field_io.hpp"
#include "whi/presets.hpp"

namespace whi {

namespace wh = waveholtz;

const char* const kCsvHeader =
    "sweep,omega,method,n,dofs,iters,applications,final_residual,measured_rate,wall_time,converged,delta_h,"
    "rate_bound,error";

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

wh::FilterSpec make_filter(const FilterBlock& f, double omega, const wh::TimeGrid& tg) {
  switch (f.kind) {
    case FilterBlock::Kind::Standard:
      return wh::FilterSpec::standard(omega, tg.periods());
    case FilterBlock::Kind::Tunable:
      return wh::FilterSpec::tunable(omega, tg.periods(), f.a0, f.sines);
    case FilterBlock::Kind::Optimize: {
      wh::TunableCostOptions opt;
      opt.seed = f.seed;
      return wh::optimize_tunable_filter(omega, f.resonant, f.terms, tg, opt).spec;
    }
  }
  return wh::FilterSpec::standard(omega, tg.periods());
}

std::string stem(const RunConfig& config, std::size_t k, Method m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%03zu_", k);
  return config.sweep.name + buf + to_string(m);
}

}  // namespace

RunRow run_point(const RunConfig& config, double omega, Method method) {
  RunRow row;
  row.sweep = config.sweep.name;
  row.omega = omega;
  row.method = method;
  row.n = config.problem.cells(omega);
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto problem = build_problem(config.problem, omega);
    const bool first_order = config.solver.scheme == wh::Scheme::RK4;
    row.dofs = problem.active_nodes().size() * (first_order ? 2 : 1);

    std::optional<wh::oracle::SpectralDecomposition> spectrum;
    if (problem.constant_speed() && !problem.bcs().has(wh::BoundaryCondition::Neumann) &&
        !problem.bcs().has(wh::BoundaryCondition::Impedance)) {
      spectrum = wh::oracle::dirichlet_box_spectrum(problem);
      row.delta_h = spectrum->delta_h(omega);
    }

    wh::ConfigOptions opt;
    opt.scheme = config.solver.scheme;
    opt.periods = config.solver.periods;
    opt.steps = config.solver.steps;
    opt.corrected = config.solver.corrected;
    opt.max_iters = config.solver.max_iters;
    opt.tol = config.solver.tol;
    if (config.solver.theorem_step) {
      if (!spectrum) throw wh::UnsupportedError("theorem_step needs a constant-speed Dirichlet box");
      opt.delta_h = row.delta_h;
    }
    auto cfg = wh::make_config(problem, opt);
    if (config.filter.kind != FilterBlock::Kind::Standard) cfg.spec = make_filter(config.filter, omega, cfg.tg);

    if (spectrum && !first_order && config.filter.kind == FilterBlock::Kind::Standard) {
      const auto cfl = wh::cfl_check(omega, cfg.tg.dt(), spectrum->lambdas.back(), row.delta_h);
      if (cfl.stable && cfl.guaranteed.value_or(false)) row.rate_bound = wh::fixed_point_rate_bound(row.delta_h);
    }

    wh::WaveHoltzSolution sol = [&] {
      if (method == Method::FixedPoint) return wh::fixed_point_solve(problem, cfg);
      wh::KrylovConfig k;
      k.method = method == Method::CG ? wh::KrylovMethod::CG : wh::KrylovMethod::GMRES;
      k.tol = config.solver.tol;
      k.max_iters = config.solver.max_iters;
      k.restart = config.solver.restart > 0 ? config.solver.restart : config.solver.max_iters;
      return wh::krylov_solve(problem, cfg, k);
    }();
    row.iters = sol.report.iters;
    row.applications = sol.report.operator_applications;
    row.final_residual = sol.report.final_residual();
    row.measured_rate = sol.report.measured_rate;
    row.converged = sol.report.converged;
    row.history = std::move(sol.report.residual_history);
    row.field = std::move(sol.state.w);
  } catch (const std::exception& e) {
    row.error = csv_safe(e.what());
    row.converged = false;
  }
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<RunRow> run_points(const RunConfig& config, int threads) {
  const auto& omegas = config.sweep.omegas;
  const auto& methods = config.solver.methods;
  const std::size_t total = omegas.size() * methods.size();
  std::vector<RunRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++)
      rows[k] = run_point(config, omegas[k / methods.size()], methods[k % methods.size()]);
  };
  const auto count = static_cast<std::size_t>(std::max(1, threads));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(count, total); ++t) pool.emplace_back(worker);
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const RunRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.sweep << ',' << number(r.omega) << ',' << to_string(r.method) << ',' << r.n << ',' << r.dofs << ','
        << r.iters << ',' << r.applications << ',' << number(r.final_residual) << ',' << number(r.measured_rate)
        << ',' << number(r.wall_time) << ',' << (r.converged ? "true" : "false") << ',' << number(r.delta_h) << ','
        << number(r.rate_bound) << ',' << r.error << '\n';
  }
}

SweepFiles write_sweep(const RunConfig& config, std::span<const RunRow> rows, const std::filesystem::path& dir,
                       bool fields) {
  std::filesystem::create_directories(dir);
  SweepFiles files;
  files.csv = dir / (config.sweep.name + ".csv");
  {
    std::ofstream out(files.csv);
    write_csv(out, rows);
    if (!out) throw std::runtime_error("cannot write " + files.csv.string());
  }
  const std::size_t per_omega = config.solver.methods.size();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const auto base = stem(config, k / per_omega, r.method);
    if (config.output.histories && !r.history.empty()) {
      const auto path = dir / (base + "_history.csv");
      std::ofstream out(path);
      out << "iteration,relative_residual\n";
      for (std::size_t i = 0; i < r.history.size(); ++i) out << i << ',' << number(r.history[i]) << '\n';
      if (!out) throw std::runtime_error("cannot write " + path.string());
      files.histories.push_back(path);
    }
    if (fields && r.field) {
      const auto path = dir / (base + "_field");
      write_field(path, *r.field);
      files.fields.push_back(path);
    }
  }
  return files;
}

}  // namespace whi
