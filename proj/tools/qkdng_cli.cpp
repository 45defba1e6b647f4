// Command-line front end over the C API.
#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdng/qkdng.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMcFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNothingFeasible = 3;

constexpr double kSigmaLimit = 4.0;

// Raised for anything the user got wrong; reported as one JSON line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.8e}", x); }

// Round-trips through the 9-digit text form so JSON and CSV agree.
double rounded(double x) { return std::isfinite(x) ? std::stod(num(x)) : x; }

json json_num(double x) {
  if (std::isfinite(x)) return rounded(x);
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

void check(qkdng_status status) {
  if (status != QKDNG_OK) {
    throw ConfigError(fmt::format("status {}: {}", static_cast<int>(status), qkdng_last_error()));
  }
}

struct ModelOptions {
  std::string model = "thermal-bath";
  std::string noise = "thermal";
  double p = 1.0;
  double nu = 0.01;
  double t = 0.1;
  double mu = 0.0;
  double e = 0.0;
  double d = 0.0;
};

qkdng_model parse_model(const std::string& name) {
  if (name == "thermal-bath") return QKDNG_MODEL_THERMAL_BATH;
  if (name == "noise-before") return QKDNG_MODEL_NOISE_BEFORE;
  if (name == "spdc") return QKDNG_MODEL_SPDC;
  throw ConfigError("unknown model '" + name + "' (thermal-bath, noise-before, spdc)");
}

qkdng_noise parse_noise(const std::string& name) {
  if (name == "thermal") return QKDNG_NOISE_THERMAL;
  if (name == "poisson") return QKDNG_NOISE_POISSON;
  throw ConfigError("unknown noise statistics '" + name + "' (thermal, poisson)");
}

qkdng_criterion parse_criterion(const std::string& name) {
  if (name == "security") return QKDNG_CRITERION_SECURITY;
  if (name == "nc") return QKDNG_CRITERION_NONCLASSICAL;
  if (name == "ng") return QKDNG_CRITERION_NONGAUSSIAN;
  throw ConfigError("unknown criterion '" + name + "' (security, nc, ng)");
}

const char* criterion_name(qkdng_criterion c) {
  switch (c) {
    case QKDNG_CRITERION_SECURITY: return "security";
    case QKDNG_CRITERION_NONCLASSICAL: return "nc";
    case QKDNG_CRITERION_NONGAUSSIAN: return "ng";
  }
  return "unknown";
}

qkdng_params to_params(const ModelOptions& o) {
  qkdng_params p = qkdng_default_params();
  p.model = parse_model(o.model);
  p.noise = parse_noise(o.noise);
  p.p = o.p;
  p.nu = o.nu;
  p.T = o.t;
  p.mu = o.mu;
  p.e = o.e;
  p.d = o.d;
  return p;
}

json params_json(const ModelOptions& o, bool with_point) {
  json j;
  j["model"] = o.model;
  j["noise"] = o.noise;
  j["p"] = o.p;
  j["nu"] = o.nu;
  j["e"] = o.e;
  j["d"] = o.d;
  if (with_point) {
    j["T"] = o.t;
    j["mu"] = o.mu;
  }
  return j;
}

void add_model_options(CLI::App* cmd, ModelOptions& o, bool with_point) {
  cmd->add_option("--model", o.model, "thermal-bath | noise-before | spdc")->capture_default_str();
  cmd->add_option("--noise", o.noise, "noise statistics for noise-before: thermal | poisson")
      ->capture_default_str();
  cmd->add_option("--p", o.p, "single-photon emission probability")->capture_default_str();
  cmd->add_option("--nu", o.nu, "mean pair number of the heralded source")->capture_default_str();
  cmd->add_option("--e", o.e, "depolarization probability")->capture_default_str();
  cmd->add_option("--d", o.d, "dark-count probability per gate")->capture_default_str();
  if (with_point) {
    cmd->add_option("--t", o.t, "channel transmittance")->capture_default_str();
    cmd->add_option("--mu", o.mu, "mean noise photons per pulse")->capture_default_str();
  }
}

struct Grid {
  double min = 1e-4;
  double max = 1.0;
  int count = 60;
  bool log = true;
  std::string spec = "1e-4:1:60:log";
};

Grid parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("--t-grid expects min:max:count:log|linear");
  Grid g;
  g.spec = spec;
  try {
    std::size_t used = 0;
    g.min = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.max = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw ConfigError("--t-grid: cannot parse '" + spec + "'");
  }
  if (parts[3] == "log") {
    g.log = true;
  } else if (parts[3] == "linear") {
    g.log = false;
  } else {
    throw ConfigError("--t-grid spacing must be log or linear");
  }
  if (!(g.min > 0.0)) throw ConfigError("--t-grid min must be positive");
  if (!(g.max <= 1.0 && g.min < g.max)) throw ConfigError("--t-grid needs min < max <= 1");
  if (g.count < 2) throw ConfigError("--t-grid count must be at least 2");
  return g;
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> t(static_cast<std::size_t>(g.count));
  for (int j = 0; j < g.count; ++j) {
    const double f = static_cast<double>(j) / (g.count - 1);
    t[j] = g.log ? std::exp(std::log(g.min) + f * (std::log(g.max) - std::log(g.min)))
                 : g.min + f * (g.max - g.min);
  }
  t.front() = g.min;
  t.back() = g.max;
  return t;
}

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
}

// Writes to --output when given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << text;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  ModelOptions model;
  std::string criteria = "security,nc,ng";
  std::string grid = "1e-4:1:60:log";
  std::string format = "csv";
  std::string output;
  double witness_d = 0.0;
  unsigned workers = 0;
};

int run_sweep(const SweepArgs& a) {
  check_format(a.format);
  const qkdng_params params = to_params(a.model);
  const Grid grid = parse_grid(a.grid);
  const std::vector<double> t = grid_points(grid);
  std::vector<qkdng_criterion> criteria;
  for (const auto& name : split_list(a.criteria)) {
    const qkdng_criterion c = parse_criterion(name);
    if (std::find(criteria.begin(), criteria.end(), c) == criteria.end()) criteria.push_back(c);
  }
  if (criteria.empty()) throw ConfigError("--criteria is empty");
  std::sort(criteria.begin(), criteria.end());

  qkdng_solver_options options = qkdng_default_solver_options();
  options.witness_dark_count = a.witness_d;
  options.workers = a.workers;

  struct Row {
    qkdng_criterion criterion;
    qkdng_curve_point point;
  };
  std::vector<Row> rows;
  for (qkdng_criterion c : criteria) {
    qkdng_curve* curve = nullptr;
    check(qkdng_sweep(c, &params, t.data(), t.size(), &options, &curve));
    for (std::size_t i = 0; i < qkdng_curve_size(curve); ++i) {
      qkdng_curve_point p{};
      qkdng_curve_point_at(curve, i, &p);
      rows.push_back({c, p});
    }
    qkdng_curve_free(curve);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return x.criterion != y.criterion ? x.criterion < y.criterion : x.point.T < y.point.T;
  });
  const bool any_feasible =
      std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.point.feasible != 0; });

  if (a.format == "csv") {
    std::string text = "model,criterion,T,mu_max,feasible\n";
    for (const Row& r : rows) {
      text += fmt::format("{},{},{},{},{}\n", a.model.model, criterion_name(r.criterion), num(r.point.T),
                          num(r.point.mu_max), r.point.feasible ? "true" : "false");
    }
    emit(a.output, text);
  } else {
    json meta;
    meta["command"] = "sweep";
    meta["version"] = qkdng_version();
    meta["params"] = params_json(a.model, false);
    json names = json::array();
    for (qkdng_criterion c : criteria) names.push_back(criterion_name(c));
    meta["criteria"] = names;
    meta["t_grid"] = {{"min", grid.min}, {"max", grid.max}, {"count", grid.count},
                      {"spacing", grid.log ? "log" : "linear"}};
    meta["witness_dark_count"] = a.witness_d;
    json out;
    out["meta"] = meta;
    json list = json::array();
    for (const Row& r : rows) {
      list.push_back({{"model", a.model.model},
                      {"criterion", criterion_name(r.criterion)},
                      {"T", rounded(r.point.T)},
                      {"mu_max", rounded(r.point.mu_max)},
                      {"feasible", r.point.feasible != 0},
                      {"capped", r.point.capped != 0}});
    }
    out["rows"] = list;
    emit(a.output, json_text(out));
  }
  return any_feasible ? kExitOk : kExitNothingFeasible;
}

// ---------------------------------------------------------------- point

struct PointArgs {
  ModelOptions model;
  std::string format = "json";
  std::string output;
  double witness_d = 0.0;
};

int run_point(const PointArgs& a) {
  check_format(a.format);
  const qkdng_params params = to_params(a.model);
  qkdng_solver_options options = qkdng_default_solver_options();
  options.witness_dark_count = a.witness_d;
  qkdng_point pt{};
  check(qkdng_evaluate_point(&params, &options, &pt));
  const std::vector<std::pair<std::string, double>> values = {
      {"Q", pt.qber},    {"y", pt.single_photon_fraction}, {"p_exp", pt.p_exp},
      {"delta_I", pt.delta_i}, {"P_S", pt.p_s},            {"P_C", pt.p_c},
      {"P_none", pt.p_none},   {"omega_1", pt.omega_1},    {"omega_2plus", pt.omega_2plus}};
  const std::vector<std::pair<std::string, bool>> flags = {
      {"secure", pt.secure != 0}, {"nonclassical", pt.nonclassical != 0}, {"nongaussian", pt.nongaussian != 0}};
  if (a.format == "csv") {
    std::string header = "model";
    std::string row = a.model.model;
    for (const auto& [k, v] : values) {
      header += "," + k;
      row += "," + num(v);
    }
    for (const auto& [k, v] : flags) {
      header += "," + k;
      row += std::string(",") + (v ? "true" : "false");
    }
    emit(a.output, header + "\n" + row + "\n");
  } else {
    json out;
    out["meta"] = {{"command", "point"}, {"version", qkdng_version()}, {"params", params_json(a.model, true)},
                   {"witness_dark_count", a.witness_d}};
    for (const auto& [k, v] : values) out[k] = json_num(v);
    for (const auto& [k, v] : flags) out[k] = v;
    emit(a.output, json_text(out));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- witness

struct WitnessArgs {
  double p_s = 0.0;
  double p_c = 0.0;
  double d = 0.0;
  std::string format = "json";
  std::string output;
};

// Boundary value, or nullopt when p_s is outside its domain.
std::optional<double> boundary_value(qkdng_status (*fn)(double, double*), double p_s) {
  double value = 0.0;
  const qkdng_status s = fn(p_s, &value);
  if (s == QKDNG_ERR_DOMAIN || s == QKDNG_ERR_OUT_OF_SPAN) return std::nullopt;
  check(s);
  return value;
}

int run_witness(const WitnessArgs& a) {
  check_format(a.format);
  if (!(a.p_s >= 0.0 && a.p_c >= 0.0 && a.p_s + a.p_c <= 1.0 + 1e-12)) {
    throw ConfigError("need P_S, P_C >= 0 with P_S + P_C <= 1");
  }
  double p_s = a.p_s;
  double p_c = a.p_c;
  double p_none = std::max(0.0, 1.0 - p_s - p_c);
  if (a.d > 0.0) check(qkdng_apply_detector_darkcounts(a.d, &p_s, &p_c, &p_none));
  const auto nc = boundary_value(qkdng_nc_boundary, p_s);
  const auto ng = boundary_value(qkdng_ng_boundary, p_s);
  const bool nonclassical = p_s > 0.5 || (nc && p_c < *nc);
  const bool nongaussian = ng && p_c < *ng;
  if (a.format == "csv") {
    auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    emit(a.output, fmt::format("P_S,P_C,nc_boundary,ng_boundary,nonclassical,nongaussian\n{},{},{},{},{},{}\n",
                               num(p_s), num(p_c), opt(nc), opt(ng), nonclassical ? "true" : "false",
                               nongaussian ? "true" : "false"));
  } else {
    json out;
    out["meta"] = {{"command", "witness"}, {"version", qkdng_version()}, {"d", a.d}};
    out["P_S"] = rounded(p_s);
    out["P_C"] = rounded(p_c);
    out["nc_boundary"] = nc ? json(rounded(*nc)) : json(nullptr);
    out["ng_boundary"] = ng ? json(rounded(*ng)) : json(nullptr);
    out["nonclassical"] = nonclassical;
    out["nongaussian"] = nongaussian;
    emit(a.output, json_text(out));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- tmin

struct TminArgs {
  ModelOptions model;
  std::string format = "json";
  std::string output;
};

int run_tmin(const TminArgs& a) {
  check_format(a.format);
  const qkdng_params params = to_params(a.model);
  qkdng_tmin numeric{};
  check(qkdng_t_min(&params, &numeric));
  std::optional<double> analytic;
  double value = 0.0;
  const qkdng_status s = qkdng_analytic_t_min(&params, &value);
  if (s == QKDNG_OK) {
    analytic = value;
  } else if (s != QKDNG_ERR_INFEASIBLE) {
    check(s);
  }
  std::optional<double> analytic_ng;
  if (params.model == QKDNG_MODEL_SPDC) {
    check(qkdng_analytic_t_min_ng(params.nu, &value));
    analytic_ng = value;
  }
  if (a.format == "csv") {
    auto opt = [](const std::optional<double>& v) { return v ? num(v.value()) : std::string(); };
    emit(a.output,
         fmt::format("model,t_min,feasible,reaches_floor,t_min_analytic,t_min_ng_analytic\n{},{},{},{},{},{}\n",
                     a.model.model, num(numeric.t_min), numeric.feasible ? "true" : "false",
                     numeric.reaches_floor ? "true" : "false", opt(analytic), opt(analytic_ng)));
  } else {
    json out;
    out["meta"] = {{"command", "tmin"}, {"version", qkdng_version()}, {"params", params_json(a.model, false)}};
    out["t_min"] = rounded(numeric.t_min);
    out["feasible"] = numeric.feasible != 0;
    out["reaches_floor"] = numeric.reaches_floor != 0;
    out["t_min_analytic"] = analytic ? json(rounded(*analytic)) : json(nullptr);
    if (analytic_ng) out["t_min_ng_analytic"] = rounded(*analytic_ng);
    emit(a.output, json_text(out));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- mc-validate

struct McArgs {
  ModelOptions model;
  double samples = 1e6;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string output;
};

int run_mc(const McArgs& a) {
  check_format(a.format);
  if (!(a.samples >= 1.0 && a.samples <= 1e12 && std::floor(a.samples) == a.samples)) {
    throw ConfigError("--samples must be a positive integer");
  }
  const qkdng_params params = to_params(a.model);
  qkdng_mc_report* report = nullptr;
  check(qkdng_mc_validate(&params, static_cast<std::uint64_t>(a.samples), a.seed, &report));
  std::vector<qkdng_mc_row> rows(qkdng_mc_report_size(report));
  for (std::size_t i = 0; i < rows.size(); ++i) qkdng_mc_report_row(report, i, &rows[i]);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.sigma <= kSigmaLimit;

  std::string text;
  if (a.format == "csv") {
    text = "statistic,analytic,mc,std_err,sigma,samples,pass\n";
    for (const auto& r : rows) {
      text += fmt::format("{},{},{},{},{},{},{}\n", r.name, num(r.analytic), num(r.mc), num(r.std_err),
                          num(r.sigma), r.samples, r.sigma <= kSigmaLimit ? "true" : "false");
    }
  } else {
    json out;
    out["meta"] = {{"command", "mc-validate"}, {"version", qkdng_version()}, {"params", params_json(a.model, true)},
                   {"samples", static_cast<std::uint64_t>(a.samples)}, {"seed", a.seed},
                   {"sigma_limit", kSigmaLimit}};
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"statistic", r.name}, {"analytic", json_num(r.analytic)}, {"mc", json_num(r.mc)},
                      {"std_err", json_num(r.std_err)}, {"sigma", json_num(r.sigma)}, {"samples", r.samples},
                      {"pass", r.sigma <= kSigmaLimit}});
    }
    out["rows"] = list;
    out["pass"] = ok;
    text = json_text(out);
  }
  qkdng_mc_report_free(report);
  emit(a.output, text);
  return ok ? kExitOk : kExitMcFailed;
}

// ---------------------------------------------------------------- ng-curve

struct CurveArgs {
  std::string format = "csv";
  std::string output;
};

int run_ng_curve(const CurveArgs& a) {
  check_format(a.format);
  const std::size_t n = qkdng_ng_curve_size();
  if (n == 0) check(QKDNG_ERR_INTERNAL);
  std::vector<qkdng_ng_point> pts(n);
  for (std::size_t i = 0; i < n; ++i) check(qkdng_ng_curve_point(i, &pts[i]));
  if (a.format == "csv") {
    std::string text = "V,n_of_V,P_S,P_C\n";
    for (const auto& p : pts) text += fmt::format("{},{},{},{}\n", num(p.V), num(p.n_of_V), num(p.p_s), num(p.p_c));
    emit(a.output, text);
  } else {
    json out;
    out["meta"] = {{"command", "ng-curve"}, {"version", qkdng_version()}, {"points", n}};
    json list = json::array();
    for (const auto& p : pts) {
      list.push_back({{"V", rounded(p.V)}, {"n_of_V", rounded(p.n_of_V)}, {"P_S", rounded(p.p_s)},
                      {"P_C", rounded(p.p_c)}});
    }
    out["rows"] = list;
    emit(a.output, json_text(out));
  }
  return kExitOk;
}

void report_error(const std::string& kind, const std::string& message) {
  json err = {{"error", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise tolerance of DV QKD channels next to the nonclassicality and non-Gaussianity witnesses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qkdng_version()));

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "mu_max(T) curves for one model");
  add_model_options(sweep_cmd, sweep.model, false);
  sweep_cmd->add_option("--criteria", sweep.criteria, "comma list of security, nc, ng")->capture_default_str();
  sweep_cmd->add_option("--t-grid", sweep.grid, "min:max:count:log|linear")->capture_default_str();
  sweep_cmd->add_option("--format", sweep.format, "csv | json")->capture_default_str();
  sweep_cmd->add_option("--output,-o", sweep.output, "output file (default stdout)");
  sweep_cmd->add_option("--witness-d", sweep.witness_d, "dark counts of the autocorrelation detectors")
      ->capture_default_str();
  sweep_cmd->add_option("--workers", sweep.workers, "worker threads (0 = all cores)")->capture_default_str();

  PointArgs point;
  auto* point_cmd = app.add_subcommand("point", "all statistics at one parameter point");
  add_model_options(point_cmd, point.model, true);
  point_cmd->add_option("--format", point.format, "csv | json")->capture_default_str();
  point_cmd->add_option("--output,-o", point.output, "output file (default stdout)");
  point_cmd->add_option("--witness-d", point.witness_d, "dark counts of the autocorrelation detectors")
      ->capture_default_str();

  WitnessArgs witness;
  auto* witness_cmd = app.add_subcommand("witness", "classify measured (P_S, P_C)");
  witness_cmd->add_option("--ps", witness.p_s, "single-click probability")->required();
  witness_cmd->add_option("--pc", witness.p_c, "coincidence probability")->required();
  witness_cmd->add_option("--d", witness.d, "detector dark counts folded in before testing")->capture_default_str();
  witness_cmd->add_option("--format", witness.format, "csv | json")->capture_default_str();
  witness_cmd->add_option("--output,-o", witness.output, "output file (default stdout)");

  TminArgs tmin;
  tmin.model.d = 1e-3;
  auto* tmin_cmd = app.add_subcommand("tmin", "minimal secure transmittance, numeric and closed form");
  add_model_options(tmin_cmd, tmin.model, false);
  tmin_cmd->add_option("--format", tmin.format, "csv | json")->capture_default_str();
  tmin_cmd->add_option("--output,-o", tmin.output, "output file (default stdout)");

  McArgs mc;
  mc.model.p = 0.5;
  mc.model.t = 0.3;
  mc.model.mu = 0.1;
  mc.model.e = 0.05;
  mc.model.d = 1e-3;
  mc.model.nu = 0.05;
  auto* mc_cmd = app.add_subcommand("mc-validate", "closed forms against Monte Carlo");
  add_model_options(mc_cmd, mc.model, true);
  mc_cmd->add_option("--samples", mc.samples, "pulses per geometry")->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "RNG seed")->capture_default_str();
  mc_cmd->add_option("--format", mc.format, "csv | json")->capture_default_str();
  mc_cmd->add_option("--output,-o", mc.output, "output file (default stdout)");

  CurveArgs curve;
  auto* curve_cmd = app.add_subcommand("ng-curve", "tabulated non-Gaussianity boundary");
  curve_cmd->add_option("--format", curve.format, "csv | json")->capture_default_str();
  curve_cmd->add_option("--output,-o", curve.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what());
    return kExitConfig;
  }

  try {
    if (*sweep_cmd) return run_sweep(sweep);
    if (*point_cmd) return run_point(point);
    if (*witness_cmd) return run_witness(witness);
    if (*tmin_cmd) return run_tmin(tmin);
    if (*mc_cmd) return run_mc(mc);
    if (*curve_cmd) return run_ng_curve(curve);
  } catch (const ConfigError& e) {
    report_error("config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
