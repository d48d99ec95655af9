// intrep: runs the case studies and writes CSV/JSON reports.
//
//   intrep bessel-verify [--grid "params=1:2:1,2:2:2.5;s=0,1,4"] [--tol 1e-6]
//   intrep gamma-scan    [--grid "s=...;a=...;q=..."]
//   intrep bounds        [--grid "params=..."] [--n-schedule 16,64,256]
//   intrep converge      [--grid "params=1:2:1.5"] [--n-schedule 16,32,...]
//   intrep bv            [--grid "function=x,sin;points=65"] [--n-schedule 4,16,64]
//   intrep counterexample [--grid "x=...;eps=..."]
//   intrep varnorm       [--input f.csv] [--grid "trials=20;m=12;k=7"] [--seed N]
//
// Every option may also come from a flat key=value file given with --config;
// command-line values win. Exit codes: 0 ok, 1 inequality violated,
// 2 numerical non-convergence, 3 invalid configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "intrep/bessel_gamma.hpp"
#include "intrep/errors.hpp"
#include "intrep/representation.hpp"
#include "intrep/variation_bv.hpp"

namespace {

using namespace intrep;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- reports -------------------------------------------------------------

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> columns;  // (name, producing operation)
  std::vector<std::vector<Cell>> rows;
  bool violation = false;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width mismatch");
    rows.push_back(std::move(row));
  }
};

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return fmt_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
  } visit;
  return std::visit(visit, c);
}

void write_csv(const Report& r, std::ostream& os) {
  os << "# command=" << r.command << "; producers:";
  for (const auto& [name, op] : r.columns) os << ' ' << name << '=' << op << ';';
  os << '\n';
  for (std::size_t k = 0; k < r.columns.size(); ++k) os << (k ? "," : "") << r.columns[k].first;
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
    os << '\n';
  }
}

void write_json(const Report& r, std::ostream& os) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["producers"] = nlohmann::ordered_json::object();
  for (const auto& [name, op] : r.columns) j["producers"][name] = op;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto& name = r.columns[k].first;
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              o[name] = nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
              // JSON has no inf/nan; keep them as strings
              if (std::isfinite(v))
                o[name] = v;
              else
                o[name] = fmt_double(v);
            } else {
              o[name] = v;
            }
          },
          row[k]);
    }
    j["rows"].push_back(o);
  }
  j["violation"] = r.violation;
  os << j.dump(2) << '\n';
}

// --- configuration ---------------------------------------------------------

struct RunConfig {
  std::string command;
  std::string grid;
  std::string n_schedule;
  std::string scheme = "equal_mass";
  std::string input;
  std::string out;
  std::string format = "csv";
  double tol = NAN;  // NaN: command default
  double coef_tol = 1e-6;
  double pointwise_tol = 1e-10;
  double band = 0.0;
  long long seed = 20240611;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& t : split(s, ',')) v.push_back(parse_number(t));
  if (v.empty()) throw ConfigError("empty list: '" + s + "'");
  return v;
}

// "key=v1,v2;key2=..." with the allowed keys checked.
std::map<std::string, std::string> parse_grid(const std::string& spec, const std::vector<std::string>& allowed) {
  std::map<std::string, std::string> out;
  for (const auto& part : split(spec, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("grid entry needs key=values: '" + part + "'");
    const std::string key = part.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string msg = "unknown grid key '" + key + "' (allowed:";
      for (const auto& a : allowed) msg += " " + a;
      throw ConfigError(msg + ")");
    }
    out[key] = part.substr(eq + 1);
  }
  return out;
}

std::string grid_or(const std::map<std::string, std::string>& g, const std::string& key, const std::string& dflt) {
  const auto it = g.find(key);
  return it == g.end() ? dflt : it->second;
}

std::vector<BesselParams> parse_params(const std::string& s) {
  std::vector<BesselParams> out;
  for (const auto& triple : split(s, ',')) {
    const auto parts = split(triple, ':');
    if (parts.size() != 3) throw ConfigError("params entries are d:q:r, got '" + triple + "'");
    const double d = parse_number(parts[0]);
    if (d != std::floor(d) || d < 1 || d > 4) throw ConfigError("d must be an integer in [1, 4]: '" + triple + "'");
    BesselParams p{int(d), parse_number(parts[1]), parse_number(parts[2])};
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    out.push_back(p);
  }
  return out;
}

std::vector<int> parse_schedule(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_list(s)) {
    if (v != std::floor(v) || v < 1 || v > 1e7) throw ConfigError("n-schedule entries must be positive integers");
    if (!out.empty() && int(v) <= out.back()) throw ConfigError("n-schedule must be strictly increasing");
    out.push_back(int(v));
  }
  return out;
}

double tolerance(const RunConfig& cfg, double dflt) {
  const double t = std::isnan(cfg.tol) ? dflt : cfg.tol;
  if (!(t > 0.0)) throw ConfigError("tolerances must be > 0");
  return t;
}

const char* kDefaultParams = "1:1:2,1:2:1,1:2:1.5,2:2:2.5,3:2:2";

// --- commands --------------------------------------------------------------

Report cmd_bessel_verify(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"params", "s"});
  const auto params = parse_params(grid_or(grid, "params", kDefaultParams));
  const auto s_values = parse_list(grid_or(grid, "s", "0,0.5,1,2,4"));
  for (double s : s_values)
    if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("s values must be finite and >= 0");
  const double tol = tolerance(cfg, 1e-6);

  Report r{"bessel-verify",
           {{"d", "input"}, {"q", "input"}, {"r", "input"}, {"s", "input"}, {"closed", "bessel_hat"},
            {"numeric", "rep_eval"}, {"residual", "verify_prop61"}, {"ok", "residual<=tol"}}};
  for (const auto& p : params) {
    const auto rep = bessel_rep(p);
    for (double s : s_values) {
      std::vector<double> x(std::size_t(p.d), 0.0);
      x[0] = s;
      const double closed = bessel_hat(p, s);
      const double numeric = rep_eval(rep, std::span<const double>(x), QuadOptions{1e-12});
      const double residual = std::fabs(numeric - closed) / closed;
      const bool ok = residual <= tol;
      r.violation |= !ok;
      r.add({(long long)p.d, p.q, p.r, s, closed, numeric, residual, ok});
    }
  }
  return r;
}

Report cmd_gamma_scan(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"s", "a", "q"});
  const auto s_values = parse_list(grid_or(grid, "s", "0.5,1,2,5,20"));
  const auto fractions = parse_list(grid_or(grid, "a", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"));
  const auto q_values = parse_list(grid_or(grid, "q", "1,1.5,2,4,8"));
  for (double f : fractions)
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("a is given as a fraction of s in (0, 1)");
  for (double s : s_values)
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("s values must be > 0");
  for (double q : q_values)
    if (!(q >= 1.0) || !std::isfinite(q)) throw ConfigError("q values must be >= 1");
  const double tol = tolerance(cfg, 1e-12);

  Report r{"gamma-scan",
           {{"a", "input"}, {"s", "input"}, {"q", "input"}, {"d", "GammaIneqPoint::extremal"},
            {"lhs", "gamma_ineq_check"}, {"rhs", "gamma_ineq_check"}, {"slack", "gamma_ineq_check"},
            {"ok", "slack>=-tol (|slack|<=tol at q=1)"}}};
  for (double s : s_values)
    for (double f : fractions)
      for (double q : q_values) {
        const auto pt = GammaIneqPoint::extremal(f * s, s, q);
        const auto res = gamma_ineq_check(pt);
        const bool ok = res.slack >= -tol && (q != 1.0 || std::fabs(res.slack) <= tol);
        r.violation |= !ok;
        r.add({pt.a, pt.s, pt.q, pt.d, res.lhs, res.rhs, res.slack, ok});
      }
  return r;
}

Report cmd_bounds(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"params"});
  const auto params = parse_params(grid_or(grid, "params", kDefaultParams));
  const auto schedule = parse_schedule(cfg.n_schedule.empty() ? "16,64,256" : cfg.n_schedule);
  const double tol = tolerance(cfg, kBoundSlackTolerance);
  if (!(cfg.coef_tol > 0.0)) throw ConfigError("tolerances must be > 0");

  Report r{"bounds",
           {{"rep", "input"}, {"w_l1", "weight_l1"}, {"w_l1_closed", "WeightFn::l1_closed"},
            {"M", "ess_sup_unit_norm"}, {"M_closed_form", "ess_sup_unit_norm"}, {"s_G", "UnitFamily::sup_unit_norm"},
            {"f_norm_est", "rep_norm"}, {"var_bound", "bound_report"}, {"product_bound", "bound_report"},
            {"slack_th2", "bound_report"}, {"slack_thm", "bound_report"},
            {"max_coef_excess", "synthesize_network"}, {"ok", "slack>=-tol and coef_excess<=coef_tol"}}};
  std::vector<IntegralRep> reps;
  for (const auto& p : params) reps.push_back(bessel_rep(p));
  reps.push_back(heaviside_tanh_rep());
  reps.push_back(constant_unit_rep());
  for (const auto& rep : reps) {
    const double f_norm = rep_norm(rep);
    const auto b = bound_report(rep, f_norm, QuadOptions{1e-12});
    double excess = -INFINITY;
    for (int n : schedule) excess = std::max(excess, synthesize_network(rep, n).abs_coefficient_sum() - b.w_l1);
    const bool ok = b.slack_th2 >= -tol && b.slack_thm >= -tol && excess <= cfg.coef_tol;
    r.violation |= !ok;
    const Cell closed = rep.weight.l1_closed ? Cell{*rep.weight.l1_closed} : Cell{};
    r.add({rep.name, b.w_l1, closed, b.M, b.M_closed_form, b.s_G, b.f_norm_est, b.var_bound, b.product_bound,
           b.slack_th2, b.slack_thm, excess, ok});
  }
  return r;
}

Report cmd_converge(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"params"});
  const auto params = parse_params(grid_or(grid, "params", "1:2:1.5"));
  if (params.size() != 1) throw ConfigError("converge takes exactly one d:q:r");
  const auto schedule = parse_schedule(cfg.n_schedule.empty() ? "16,32,64,128,256,512,1024,2048,4096" : cfg.n_schedule);
  SynthesisScheme scheme;
  if (cfg.scheme == "equal_mass")
    scheme = SynthesisScheme::midpoint_equal_measure;
  else if (cfg.scheme == "uniform")
    scheme = SynthesisScheme::midpoint_uniform;
  else
    throw ConfigError("scheme must be equal_mass or uniform");
  const double tol = tolerance(cfg, 1e-6);

  const auto rep = bessel_rep(params[0]);
  const double w_l1 = weight_l1(rep, QuadOptions{1e-12});
  Report r{"converge",
           {{"n", "input"}, {"error", "approx_error"}, {"ratio", "approx_error"},
            {"coef_sum", "QuadNetwork::abs_coefficient_sum"}, {"w_l1", "weight_l1"},
            {"coef_ok", "coef_sum<=w_l1+tol"}, {"monotone_ok", "error<=1.05*previous"}}};
  double prev = NAN;
  for (int n : schedule) {
    const auto net = synthesize_network(rep, n, scheme);
    const double err = approx_error(rep, net, rep.q, rep.target);
    const double sum = net.abs_coefficient_sum();
    const bool coef_ok = sum <= w_l1 + tol;
    const bool mono = std::isnan(prev) || err <= 1.05 * prev;
    r.violation |= !coef_ok;
    r.add({(long long)n, err, std::isnan(prev) ? Cell{} : Cell{prev / err}, sum, w_l1, coef_ok, mono});
    prev = err;
  }
  return r;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[std::size_t(j)] = a + (b - a) * j / (n - 1);
  x.back() = b;
  return x;
}

BVFunction named_function(const std::string& name, int points) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  auto on = [&](auto f) {
    BVFunction g;
    g.x = linspace(0.0, 1.0, points);
    for (double t : g.x) g.value.push_back(f(t));
    return g;
  };
  if (name == "x") return on([](double t) { return t; });
  if (name == "x^2") return on([](double t) { return t * t; });
  if (name == "sin") return on([&](double t) { return std::sin(kTwoPi * t); });
  if (name == "staircase") return on([](double t) { return std::floor(4.0 * t) / 4.0 - 0.5; });
  if (name.rfind("bumps", 0) == 0) {
    const double n = parse_number(name.substr(5));
    if (n != std::floor(n) || n < 1 || n > 16) throw ConfigError("bumpsN needs an integer N in [1, 16]");
    return disjoint_bumps(int(n));
  }
  throw ConfigError("unknown function '" + name + "' (x, x^2, sin, staircase, bumpsN)");
}

Report cmd_bv(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"function", "points", "staircase_points"});
  const auto names = split(grid_or(grid, "function", "x,sin,staircase,bumps2,bumps4,bumps8"), ',');
  const double points = parse_number(grid_or(grid, "points", "65"));
  const double st_points = parse_number(grid_or(grid, "staircase_points", "10001"));
  if (points != std::floor(points) || points < 2 || points > 2000) throw ConfigError("points must be in [2, 2000]");
  if (st_points != std::floor(st_points) || st_points < 2) throw ConfigError("staircase_points must be >= 2");
  const auto schedule = parse_schedule(cfg.n_schedule.empty() ? "4,16,64" : cfg.n_schedule);
  const double tol = tolerance(cfg, 1e-6);

  Report r{"bv",
           {{"check", "input"}, {"function", "input"}, {"n", "input"}, {"points", "input"},
            {"sup_norm", "grid max"}, {"variation", "BVFunction::variation"},
            {"lp_objective", "variation_norm_finite"}, {"bound", "bv_variation_bound | 1/n"},
            {"gap", "staircase_gap"}, {"ok", "sup<=lp<=bound+tol | gap<=1/n"}}};
  for (const auto& name : names) {
    const BVFunction f = named_function(name, int(points));
    double sup = 0.0;
    for (double v : f.value) sup = std::max(sup, std::fabs(v));
    const auto sol = variation_norm_finite(f.value, interval_char_dictionary(f.x));
    bool ok = sup <= sol.objective + tol;
    Cell variation{}, bound{};
    if (f.variation_certified()) {
      const double b = bv_variation_bound(f);
      ok = ok && sol.objective <= b + tol;
      variation = f.variation();
      bound = b;
    } else {
      variation = total_variation(f.x, f.value);  // lower bound only
    }
    r.violation |= !ok;
    r.add({std::string("lp"), name, Cell{}, (long long)f.x.size(), sup, variation, sol.objective, bound, Cell{}, ok});
  }
  for (const std::string name : {"x", "x^2"}) {
    const BVFunction g = named_function(name, int(st_points));
    for (int n : schedule) {
      const auto st = staircase_approx(g.x, g.value, n);
      const double gap = staircase_gap(st, g.x, g.value);
      const bool ok = gap <= 1.0 / n + 1e-12 && st.certificate() <= g.value.back() + 1e-12;
      r.violation |= !ok;
      r.add({std::string("staircase"), name, (long long)n, (long long)g.x.size(), Cell{}, Cell{}, Cell{}, 1.0 / n,
             gap, ok});
    }
  }
  return r;
}

Report cmd_counterexample(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"x", "eps"});
  const auto xs = parse_list(grid_or(grid, "x", "0.1,0.5,0.9"));
  const auto eps = parse_list(grid_or(grid, "eps", "1e-3,1e-10,1e-50,1e-150,1e-300"));
  for (double x : xs)
    if (!(x >= 0.0 && x <= 0.9)) throw ConfigError("x must lie in [0, 0.9]");
  const double tol = tolerance(cfg, 1e-3);
  if (!(cfg.pointwise_tol > 0.0)) throw ConfigError("tolerances must be > 0");

  std::vector<DivergenceRow> rows;
  try {
    rows = divergence_probe(eps);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  Report r{"counterexample",
           {{"kind", "input"}, {"arg", "input"}, {"numeric", "rep_eval | divergence_probe"},
            {"reference", "1/(1-x) | (1/2)ln(ln(1/eps)/ln 2)"}, {"margin", "numeric-reference"},
            {"ok", "|margin|<=pointwise_tol | margin>=-tol and increasing"}}};
  const auto rep = counterexample_rep();
  for (double x : xs) {
    const double v = rep_eval(rep, x, QuadOptions{1e-13});
    const double ref = 1.0 / (1.0 - x);
    const bool ok = std::fabs(v - ref) <= cfg.pointwise_tol;
    r.violation |= !ok;
    r.add({std::string("pointwise"), x, v, ref, v - ref, ok});
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    const bool ok = row.truncated - row.lower_bound >= -tol && (k == 0 || row.truncated > rows[k - 1].truncated);
    r.violation |= !ok;
    r.add({std::string("truncated"), row.eps, row.truncated, row.lower_bound, row.truncated - row.lower_bound, ok});
  }
  return r;
}

BVFunction read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input '" + path + "'");
  BVFunction f;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) throw ConfigError("input rows must be x,value: '" + line + "'");
    if (cells[0] == "x") continue;  // header
    f.x.push_back(parse_number(cells[0]));
    f.value.push_back(parse_number(cells[1]));
  }
  try {
    f.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return f;
}

Report cmd_varnorm(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.grid, {"trials", "m", "k", "function", "points"});
  const double tol = tolerance(cfg, 1e-9);
  if (!(cfg.band >= 0.0)) throw ConfigError("band must be >= 0");
  Report r{"varnorm",
           {{"case", "input"}, {"objective", "variation_norm_finite"}, {"expected", "sum|a_i| | 1 | 0 | sup"},
            {"residual", "variation_norm_finite"}, {"status", "variation_norm_finite"},
            {"ok", "|objective-expected|<=tol | objective>=sup"}}};
  auto status_name = [](L1MinSolution::Status s) {
    return std::string(s == L1MinSolution::Status::exact ? "exact" : "within_tol");
  };

  std::vector<BVFunction> inputs;
  if (!cfg.input.empty()) inputs.push_back(read_samples(cfg.input));
  if (grid.count("function")) {
    const int points = int(parse_number(grid_or(grid, "points", "65")));
    if (points < 2 || points > 2000) throw ConfigError("points must be in [2, 2000]");
    for (const auto& name : split(grid.at("function"), ',')) inputs.push_back(named_function(name, points));
  }
  if (!inputs.empty()) {
    for (const auto& f : inputs) {
      double sup = 0.0;
      for (double v : f.value) sup = std::max(sup, std::fabs(v));
      const auto sol = variation_norm_finite(f.value, interval_char_dictionary(f.x), cfg.band);
      const bool ok = sol.objective >= sup - cfg.band - tol;
      r.violation |= !ok;
      r.add({std::string("samples(n=") + std::to_string(f.x.size()) + ")", sol.objective, sup, sol.residual,
             status_name(sol.status), ok});
    }
    return r;
  }

  // Self-check: orthonormal columns, unit membership, zero.
  const double trials = parse_number(grid_or(grid, "trials", "20"));
  const double m = parse_number(grid_or(grid, "m", "12"));
  const double k = parse_number(grid_or(grid, "k", "7"));
  if (trials < 1 || m < 2 || k < 1 || k > m || m > 200) throw ConfigError("need trials >= 1 and 1 <= k <= m <= 200");
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
  std::normal_distribution<double> nd;
  FiniteDictionary dict;
  dict.grid = linspace(0.0, 1.0, int(m));
  while (dict.units.size() < std::size_t(k)) {
    std::vector<double> v(static_cast<std::size_t>(m));
    for (double& e : v) e = nd(rng);
    for (const auto& c : dict.units) {
      double dot = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) dot += c[j] * v[j];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= dot * c[j];
    }
    double n2 = 0.0;
    for (double e : v) n2 += e * e;
    for (double& e : v) e /= std::sqrt(n2);
    dict.units.push_back(std::move(v));
  }
  auto check = [&](const std::string& name, const std::vector<double>& f, const FiniteDictionary& d, double expected) {
    const auto sol = variation_norm_finite(f, d);
    const bool ok = std::fabs(sol.objective - expected) <= tol;
    r.violation |= !ok;
    r.add({name, sol.objective, expected, sol.residual, status_name(sol.status), ok});
  };
  for (int t = 0; t < int(trials); ++t) {
    std::vector<double> f(std::size_t(m), 0.0);
    double l1 = 0.0;
    for (const auto& col : dict.units) {
      const double a = nd(rng);
      l1 += std::fabs(a);
      for (std::size_t j = 0; j < f.size(); ++j) f[j] += a * col[j];
    }
    check("orthonormal#" + std::to_string(t), f, dict, l1);
  }
  const auto chars = interval_char_dictionary(linspace(0.0, 1.0, 9));
  check("unit", chars.units[3], chars, 1.0);
  check("zero", std::vector<double>(9, 0.0), chars, 0.0);
  return r;
}

int run(const RunConfig& cfg) {
  Report rep;
  if (cfg.command == "bessel-verify")
    rep = cmd_bessel_verify(cfg);
  else if (cfg.command == "gamma-scan")
    rep = cmd_gamma_scan(cfg);
  else if (cfg.command == "bounds")
    rep = cmd_bounds(cfg);
  else if (cfg.command == "converge")
    rep = cmd_converge(cfg);
  else if (cfg.command == "bv")
    rep = cmd_bv(cfg);
  else if (cfg.command == "counterexample")
    rep = cmd_counterexample(cfg);
  else if (cfg.command == "varnorm")
    rep = cmd_varnorm(cfg);
  else
    throw ConfigError("unknown command");

  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
  std::ostringstream buf;
  if (cfg.format == "json")
    write_json(rep, buf);
  else
    write_csv(rep, buf);
  if (cfg.out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + cfg.out + "'");
    os << buf.str();
  }
  if (rep.violation) std::cerr << "intrep: " << rep.command << ": inequality violated beyond tolerance\n";
  return rep.violation ? 1 : 0;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Integral representations: case studies and reports"};
  app.set_config("--config", "", "flat key=value file; command-line flags override it");
  // config files split bare a,b values into lists; glue them back
  std::vector<std::string> grid_parts, schedule_parts;
  app.add_option("--grid", grid_parts, "grid spec, key=v1,v2;key2=... (keys depend on the command)");
  app.add_option("--n-schedule", schedule_parts, "comma-separated, strictly increasing n values");
  app.add_option("--tol", cfg.tol, "tolerance of the checked inequality (command default if unset)");
  app.add_option("--coef-tol", cfg.coef_tol, "bounds: allowed excess of sum|c_i| over ||w||_1");
  app.add_option("--pointwise-tol", cfg.pointwise_tol, "counterexample: pointwise tolerance");
  app.add_option("--band", cfg.band, "varnorm: residual band of the LP (0 = equality)");
  app.add_option("--scheme", cfg.scheme, "converge: equal_mass or uniform");
  app.add_option("--input", cfg.input, "varnorm: CSV of x,value samples");
  app.add_option("--out", cfg.out, "output path (stdout if unset)");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bessel-verify", "Gaussian-mixture integral vs (1 + |s|^2)^{-r/2}"},
      {"gamma-scan", "Gamma-ratio inequality on an (a, s, q) grid"},
      {"bounds", "norm-bound certificates for the bundled representations"},
      {"converge", "quadrature-network error vs n for a Bessel representation"},
      {"bv", "variation LP vs bounded-variation bounds, staircase gaps"},
      {"counterexample", "pointwise integrability without Bochner integrability"},
      {"varnorm", "l1-minimal representations over finite dictionaries"}};
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->fallthrough()->callback([&cfg, name = name] { cfg.command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  cfg.grid = join(grid_parts);
  cfg.n_schedule = join(schedule_parts);

  try {
    return run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "intrep: config error: " << e.what() << '\n';
    return 3;
  } catch (const UnsupportedDimension& e) {
    std::cerr << "intrep: config error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "intrep: config error: " << e.what() << '\n';
    return 3;
  } catch (const NonConvergence& e) {
    std::cerr << "intrep: non-convergence: " << e.what() << '\n';
    return 2;
  } catch (const Infeasible& e) {
    std::cerr << "intrep: numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "intrep: numerical failure: " << e.what() << '\n';
    return 2;
  }
}
