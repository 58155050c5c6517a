#include "whi/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "waveholtz/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace whi {

namespace pt = boost::property_tree;
using waveholtz::BoundaryCondition;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const auto t = lower(text);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  return out;
}

// Reads one section and complains about keys nobody asked for.
class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (auto child = root.get_child_optional(name_)) tree_ = *child;
  }

  void finish() const {
    for (const auto& [key, value] : tree_)
      if (!seen_.count(key)) throw ConfigError("unknown key [" + name_ + "] " + key);
  }

  std::optional<std::string> get(const std::string& key) {
    seen_.insert(key);
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string label(const std::string& key) const { return "[" + name_ + "] " + key; }

 private:
  std::string name_;
  pt::ptree tree_;
  std::set<std::string> seen_;
};

void read_problem(const pt::ptree& root, ProblemBlock& p) {
  Section s(root, "problem");
  if (auto v = s.get("dim")) p.dim = to_int(s.label("dim"), *v);
  if (p.dim != 1 && p.dim != 2) throw ConfigError("[problem] dim must be 1 or 2");
  if (p.dim == 2) p.forcing = "gaussian2d";

  auto read_pair = [&](const char* key, std::array<double, 2>& out) {
    if (auto v = s.get(key)) {
      const auto values = to_doubles(s.label(key), *v);
      if (static_cast<int>(values.size()) != p.dim)
        throw ConfigError(s.label(key) + ": expected " + std::to_string(p.dim) + " value(s)");
      for (int d = 0; d < p.dim; ++d) out[d] = values[d];
      return true;
    }
    return false;
  };
  read_pair("lower", p.lower);
  read_pair("upper", p.upper);
  for (int d = 0; d < p.dim; ++d)
    if (!(p.upper[d] > p.lower[d])) throw ConfigError("[problem] upper must exceed lower");

  if (auto v = s.get("n")) p.n = to_int(s.label("n"), *v);
  if (auto v = s.get("cells_per_omega")) p.cells_per_omega = to_int(s.label("cells_per_omega"), *v);
  if (p.n.has_value() == p.cells_per_omega.has_value())
    throw ConfigError("[problem] give exactly one of n and cells_per_omega");
  if ((p.n && *p.n < 2) || (p.cells_per_omega && *p.cells_per_omega < 1))
    throw ConfigError("[problem] grid size too small");

  if (auto v = s.get("csq")) p.csq = lower(*v);
  if (p.csq != "constant" && p.csq != "two_layer") throw ConfigError("[problem] csq: unknown preset '" + p.csq + "'");
  if (auto v = s.get("csq_value")) p.csq_value = to_double(s.label("csq_value"), *v);
  if (auto v = s.get("csq_upper")) p.csq_upper = to_double(s.label("csq_upper"), *v);
  if (!(p.csq_value > 0.0) || !(p.csq_upper > 0.0)) throw ConfigError("[problem] c^2 must be positive");

  if (auto v = s.get("forcing")) p.forcing = lower(*v);
  if (p.forcing != "gaussian1d" && p.forcing != "gaussian2d" && p.forcing != "delta")
    throw ConfigError("[problem] forcing: unknown preset '" + p.forcing + "'");
  if ((p.forcing == "gaussian1d" && p.dim != 1) || (p.forcing == "gaussian2d" && p.dim != 2))
    throw ConfigError("[problem] forcing preset does not match dim");
  std::array<double, 2> src{};
  if (read_pair("source", src)) p.source = src;

  try {
    if (auto v = s.get("bc")) p.bcs.fill(waveholtz::parse_boundary_condition(*v));
    const char* sides[] = {"bc_xlo", "bc_xhi", "bc_ylo", "bc_yhi"};
    for (int k = 0; k < 4; ++k) {
      if (auto v = s.get(sides[k])) {
        if (k >= 2 && p.dim == 1) throw ConfigError(std::string("[problem] ") + sides[k] + " needs dim = 2");
        p.bcs[k] = waveholtz::parse_boundary_condition(*v);
      }
    }
  } catch (const waveholtz::Error& e) {
    throw ConfigError(std::string("[problem] ") + e.what());
  }
  if (auto v = s.get("impedance")) {
    const auto ab = to_doubles(s.label("impedance"), *v);
    if (ab.size() != 2) throw ConfigError("[problem] impedance: expected alpha, beta");
    p.impedance = std::array<double, 2>{ab[0], ab[1]};
  }
  s.finish();
}

void read_solver(const pt::ptree& root, SolverBlock& b) {
  Section s(root, "solver");
  if (auto v = s.get("method")) {
    b.methods.clear();
    for (const auto& m : split_list(*v)) b.methods.push_back(parse_method(m));
    if (b.methods.empty()) throw ConfigError("[solver] method list is empty");
  }
  if (auto v = s.get("scheme")) {
    const auto t = lower(*v);
    if (t == "leapfrog") b.scheme = waveholtz::Scheme::Leapfrog;
    else if (t == "rk4") b.scheme = waveholtz::Scheme::RK4;
    else throw ConfigError("[solver] scheme: expected leapfrog or rk4, got '" + *v + "'");
  }
  if (auto v = s.get("tol")) b.tol = to_double(s.label("tol"), *v);
  if (auto v = s.get("max_iters")) b.max_iters = to_int(s.label("max_iters"), *v);
  if (auto v = s.get("periods")) b.periods = to_int(s.label("periods"), *v);
  if (auto v = s.get("steps")) b.steps = to_int(s.label("steps"), *v);
  if (auto v = s.get("restart")) b.restart = to_int(s.label("restart"), *v);
  if (auto v = s.get("corrected")) b.corrected = to_bool(s.label("corrected"), *v);
  if (auto v = s.get("theorem_step")) b.theorem_step = to_bool(s.label("theorem_step"), *v);
  if (!(b.tol > 0.0)) throw ConfigError("[solver] tol must be positive");
  if (b.max_iters < 1 || b.periods < 1 || b.restart < 0 || (b.steps && *b.steps < 1))
    throw ConfigError("[solver] counts must be positive");
  s.finish();
}

void read_filter(const pt::ptree& root, FilterBlock& f) {
  Section s(root, "filter");
  if (auto v = s.get("kind")) {
    const auto t = lower(*v);
    if (t == "standard") f.kind = FilterBlock::Kind::Standard;
    else if (t == "tunable") f.kind = FilterBlock::Kind::Tunable;
    else if (t == "optimize") f.kind = FilterBlock::Kind::Optimize;
    else throw ConfigError("[filter] kind: expected standard, tunable or optimize, got '" + *v + "'");
  }
  if (auto v = s.get("a0")) f.a0 = to_double(s.label("a0"), *v);
  if (auto v = s.get("sines")) f.sines = to_doubles(s.label("sines"), *v);
  if (auto v = s.get("resonant")) f.resonant = to_double(s.label("resonant"), *v);
  if (auto v = s.get("terms")) f.terms = to_int(s.label("terms"), *v);
  if (auto v = s.get("seed")) f.seed = static_cast<std::uint64_t>(to_double(s.label("seed"), *v));
  if (f.kind == FilterBlock::Kind::Tunable && !(std::abs(f.a0) < 0.5))
    throw ConfigError("[filter] tunable filters need |a0| < 1/2");
  if (f.kind == FilterBlock::Kind::Optimize && (!(f.resonant > 0.0) || f.terms < 2))
    throw ConfigError("[filter] optimize needs resonant > 0 and terms >= 2");
  s.finish();
}

void read_sweep(const pt::ptree& root, SweepBlock& w) {
  Section s(root, "sweep");
  if (auto v = s.get("name")) w.name = *v;
  if (w.name.empty() || w.name.find_first_of("/\\ ,") != std::string::npos)
    throw ConfigError("[sweep] name must be a plain word");
  auto list = s.get("omega");
  auto start = s.get("omega_start");
  auto stop = s.get("omega_stop");
  auto count = s.get("omega_count");
  if (list) {
    if (start || stop || count) throw ConfigError("[sweep] give either omega or omega_start/stop/count");
    w.omegas = to_doubles(s.label("omega"), *list);
  } else if (start && stop && count) {
    const double a = to_double(s.label("omega_start"), *start);
    const double b = to_double(s.label("omega_stop"), *stop);
    const int k = to_int(s.label("omega_count"), *count);
    if (k < 1) throw ConfigError("[sweep] omega_count must be positive");
    for (int i = 0; i < k; ++i) w.omegas.push_back(k == 1 ? a : a + (b - a) * i / (k - 1));
  } else if (start || stop || count) {
    throw ConfigError("[sweep] omega_start, omega_stop and omega_count go together");
  }
  if (w.omegas.empty()) throw ConfigError("[sweep] no frequencies given");
  for (double o : w.omegas)
    if (!(o > 0.0)) throw ConfigError("[sweep] frequencies must be positive");
  s.finish();
}

void read_output(const pt::ptree& root, OutputBlock& o) {
  Section s(root, "output");
  if (auto v = s.get("dir")) o.dir = *v;
  if (auto v = s.get("fields")) o.fields = to_bool(s.label("fields"), *v);
  if (auto v = s.get("histories")) o.histories = to_bool(s.label("histories"), *v);
  s.finish();
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::FixedPoint: return "fixed_point";
    case Method::GMRES: return "gmres";
    case Method::CG: return "cg";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  const auto t = lower(trim(text));
  if (t == "fixed_point") return Method::FixedPoint;
  if (t == "gmres") return Method::GMRES;
  if (t == "cg") return Method::CG;
  throw ConfigError("unknown method '" + text + "'");
}

int ProblemBlock::cells(double omega) const {
  if (n) return *n;
  return *cells_per_omega * static_cast<int>(std::ceil(omega));
}

RunConfig RunConfig::parse(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [name, child] : root) {
    if (name != "problem" && name != "solver" && name != "filter" && name != "sweep" && name != "output")
      throw ConfigError("unknown section [" + name + "]");
    if (child.empty() && !child.data().empty()) throw ConfigError("key '" + name + "' outside any section");
  }
  RunConfig c;
  read_problem(root, c.problem);
  read_solver(root, c.solver);
  read_filter(root, c.filter);
  read_sweep(root, c.sweep);
  read_output(root, c.output);

  const bool impedance = std::find(c.problem.bcs.begin(), c.problem.bcs.begin() + 2 * c.problem.dim,
                                   BoundaryCondition::Impedance) != c.problem.bcs.begin() + 2 * c.problem.dim;
  if (impedance && c.solver.scheme == waveholtz::Scheme::Leapfrog)
    throw ConfigError("impedance sides need scheme = rk4");
  if (c.solver.corrected && c.solver.scheme != waveholtz::Scheme::Leapfrog)
    throw ConfigError("corrected drive needs scheme = leapfrog");
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse(in);
}

}  // namespace whi
