#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hfm/error.hpp"
#include "hfm/field_io.hpp"
#include "hfm/forms.hpp"
#include "hfm/fourier.hpp"
#include "hfm/modified_norm.hpp"
#include "hfm/monotone.hpp"
#include "hfm/norms.hpp"
#include "hfm/presets.hpp"
#include "hfm/reports.hpp"
#include "hfm/threading.hpp"
#include "json.hpp"

namespace hfm::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

const std::set<std::string> kChecks = {"hz_d1",   "hz_d2",    "modified_rep",      "csform",
                                       "mehler_II", "q66",    "rescaled", "fourier_invariance"};

// Flag values; unset optionals leave the config alone.
struct Overrides {
  std::string config_path;
  std::string out_dir = "hfm_out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_l;
  std::optional<int> threads;
  std::optional<double> tolerance;
};

json defaults(const std::string& command) {
  return {
      {"command", command},
      {"seed", 1},
      {"threads", 1},
      {"tolerance", nullptr},
      {"grid", nullptr},
      {"data", command == "scan" ? "two_bump" : "gaussian"},
      {"data2", "random_bump(5)"},
      {"data_file", ""},
      {"quantity", "q_flow"},
      {"triple", {1, 6, 6}},
      {"alpha", 0.5},
      {"p", 8.0},
      {"scan", {{"t_min", 0.01}, {"t_max", 10.0}, {"t_count", 20}, {"grid_kind", "geometric"}}},
      {"check", "hz_d1"},
      {"t", 2.0},
      {"forms", {{"points", 40}, {"angles", 64}, {"samples", 256}}},
      {"constants", {{"grid_2d", {{"n", 128}, {"l", 8.0}}}, {"s_nodes", 257}, {"modified_tolerance", 1e-3}}},
      {"numerics", json::object()},
  };
}

int dimension_of(const json& c) {
  const std::string cmd = c.at("command");
  if (cmd == "check") {
    const std::string check = c.at("check");
    if (check == "hz_d1" || check == "modified_rep" || check == "q66") return 1;
    if (check == "hz_d2") return 2;
  }
  if (cmd == "scan" && c.at("quantity") == "q_modified") return 1;
  if (cmd == "constants") return 1;
  return c.at("triple").at(0).get<int>();
}

double default_tolerance(const json& c) {
  const std::string cmd = c.at("command");
  if (cmd == "constants") return 1e-4;
  if (cmd == "scan") return 1e-5;
  const std::string check = c.at("check");
  if (check == "hz_d1" || check == "hz_d2" || check == "modified_rep" || check == "q66") return 1e-2;
  if (check == "rescaled") return 1e-4;
  return 1e-3;
}

// Fills every null or missing field so that the manifest records the
// complete set of numbers a run used.
void resolve(json& c) {
  const int d = dimension_of(c);
  if (d < 1 || d > 2) throw InvalidArgument("dimension must be 1 or 2");
  // Square roots of flowed mixtures have spectra decaying only
  // exponentially, so runs that evaluate them sample 1D data more finely
  // than the Gaussian constants need.
  if (c["grid"].is_null()) {
    const std::size_t n1 = c.at("command") == "constants" ? 256 : 512;
    c["grid"] = d == 1 ? json{{"n", n1}, {"l", 16.0}} : json{{"n", 128}, {"l", 8.0}};
  }
  if (c["tolerance"].is_null()) c["tolerance"] = default_tolerance(c);
  const json numeric_defaults = {
      {"s_nodes", 129},          {"s_scale", 1.0},        {"support_tol", 1e-12},
      {"band_tol", d == 2 ? 1e-7 : 1e-12},                {"max_pad", 8},
      {"eval_points", 0},        {"zeta_nodes", 32},      {"zeta_tail_nodes", 32},
      {"z_step", 0.25},          {"z_margin", 3.0},       {"modified_s_nodes", 97},
      {"modified_support_tol", 1e-10}, {"modified_band_tol", 1e-10}, {"fd_step", 1e-4},
  };
  json& n = c["numerics"];
  for (auto it = n.begin(); it != n.end(); ++it) {
    if (!numeric_defaults.contains(it.key())) throw InvalidArgument("unknown numerics key '" + it.key() + "'");
  }
  for (auto it = numeric_defaults.begin(); it != numeric_defaults.end(); ++it) {
    if (!n.contains(it.key()) || n[it.key()].is_null()) n[it.key()] = it.value();
  }
}

json load_config(const Overrides& o, const std::string& command) {
  json c = defaults(command);
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw InvalidArgument("cannot open config " + o.config_path);
    json user;
    try {
      user = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("malformed config: ") + e.what());
    }
    if (!user.is_object()) throw InvalidArgument("config must be a JSON object");
    // A manifest from an earlier run replays its recorded config.
    if (user.contains("config") && user.contains("tool")) user = user["config"];
    if (user.contains("command") && user["command"] != command) {
      throw InvalidArgument("config is for command '" + user["command"].get<std::string>() + "'");
    }
    for (auto it = user.begin(); it != user.end(); ++it) {
      if (!c.contains(it.key())) throw InvalidArgument("unknown config key '" + it.key() + "'");
    }
    c.merge_patch(user);
    for (const char* key : {"tolerance", "grid"}) {
      if (!c.contains(key)) c[key] = nullptr;
    }
  }
  if (o.seed) c["seed"] = *o.seed;
  if (o.threads) c["threads"] = *o.threads;
  if (o.tolerance) c["tolerance"] = *o.tolerance;
  resolve(c);
  if (o.grid_n) c["grid"]["n"] = *o.grid_n;
  if (o.grid_l) c["grid"]["l"] = *o.grid_l;
  return c;
}

GridSpec grid_of(const json& c, int d) {
  return make_grid(d, c.at("grid").at("l").get<double>(), c.at("grid").at("n").get<std::size_t>());
}

MixedNormSpec spec_of(const json& c, int d, double p, double q) {
  MixedNormSpec s = make_triple(d, p, q);
  const json& n = c.at("numerics");
  s.s_nodes = n.at("s_nodes");
  s.s_scale = n.at("s_scale");
  s.support_tol = n.at("support_tol");
  s.band_tol = n.at("band_tol");
  s.max_pad = n.at("max_pad");
  s.eval_points = n.at("eval_points");
  return s;
}

MixedNormSpec triple_spec(const json& c) {
  const json& t = c.at("triple");
  if (!t.is_array() || t.size() != 3) throw InvalidArgument("triple must be [d, p, q]");
  return spec_of(c, t[0].get<int>(), t[1].get<double>(), t[2].get<double>());
}

ModifiedNormSpec modified_of(const json& c) {
  ModifiedNormSpec m = make_modified(1, c.at("p").get<double>());
  const json& n = c.at("numerics");
  m.zeta_nodes = n.at("zeta_nodes");
  m.zeta_tail_nodes = n.at("zeta_tail_nodes");
  m.z_step = n.at("z_step");
  m.z_margin = n.at("z_margin");
  m.s_nodes = n.at("modified_s_nodes");
  m.support_tol = n.at("modified_support_tol");
  m.band_tol = n.at("modified_band_tol");
  m.eval_points = n.at("eval_points");
  return m;
}

FormSpec forms_of(const json& c) {
  FormSpec f;
  const json& j = c.at("forms");
  f.points = j.at("points");
  f.angles = j.at("angles");
  f.samples = j.at("samples");
  f.seed = c.at("seed");
  return f;
}

Field data_of(const json& c, const std::string& key, int d) {
  if (key == "data" && !c.at("data_file").get<std::string>().empty()) {
    Field f = load_field(c.at("data_file"));
    if (f.grid().dim() != d) throw InvalidArgument("data_file dimension does not match the run");
    try {
      return Field::nonnegative(f.grid(), std::move(f).take_samples());
    } catch (const NumericalError&) {
      return load_field(c.at("data_file"));
    }
  }
  return sample(preset_by_name(c.at(key), d, c.at("seed")), grid_of(c, d));
}

double rel_err(double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300); }

struct Outcome {
  int code = kOk;
  json report;
  std::string csv;  // empty unless the command produces a series
  std::string summary;
};

Outcome cmd_constants(const json& c) {
  ConstantsConfig cc;
  cc.points_1d = c.at("grid").at("n");
  cc.half_extent_1d = c.at("grid").at("l");
  cc.points_2d = c.at("constants").at("grid_2d").at("n");
  cc.half_extent_2d = c.at("constants").at("grid_2d").at("l");
  cc.s_nodes = c.at("constants").at("s_nodes");
  cc.modified = modified_of(c);
  const double tol = c.at("tolerance");
  const double mod_tol = c.at("constants").at("modified_tolerance");
  const std::vector<ConstantReport> reports = constants_report(cc);
  Outcome o;
  o.report = {{"command", "constants"}, {"constants", json::parse(constants_json(reports))}};
  bool pass = true;
  std::ostringstream sum;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    // The modified constant is the last entry and has its own tolerance.
    const double limit = i + 1 == reports.size() ? std::max(tol, mod_tol) : tol;
    const bool ok = std::isfinite(reports[i].rel_err) && reports[i].rel_err <= limit;
    o.report["constants"][i]["tolerance"] = limit;
    o.report["constants"][i]["pass"] = ok;
    pass = pass && ok;
    sum << reports[i].name << " rel_err=" << reports[i].rel_err << (ok ? " ok" : " FAIL") << "; ";
  }
  o.report["pass"] = pass;
  o.code = pass ? kOk : kOutOfTolerance;
  o.summary = sum.str();
  return o;
}

Outcome cmd_scan(const json& c) {
  Quantity q;
  q.kind = parse_quantity_kind(c.at("quantity"));
  q.alpha = c.at("alpha");
  const int d = dimension_of(c);
  if (q.kind == QuantityKind::q_modified) {
    q.modified = modified_of(c);
  } else {
    q.spec = triple_spec(c);
  }
  ScanConfig sc;
  const json& s = c.at("scan");
  sc.t_min = s.at("t_min");
  sc.t_max = s.at("t_max");
  sc.t_count = s.at("t_count");
  const std::string kind = s.at("grid_kind");
  if (kind != "geometric" && kind != "linear") throw InvalidArgument("grid_kind must be geometric or linear");
  sc.grid_kind = kind == "geometric" ? GridKind::geometric : GridKind::linear;
  sc.tolerance = c.at("tolerance");
  sc.seed = c.at("seed");
  sc.validate();

  const Field f = data_of(c, "data", d);
  std::optional<Field> f2;
  if (q.needs_pair()) f2 = data_of(c, "data2", d);
  const MonotoneSeries series = scan(q, f, sc, f2 ? &*f2 : nullptr);

  Outcome o;
  o.report = {{"command", "scan"}, {"series", json::parse(series_json(series, f.grid()))}};
  if (series.limits) {
    const double slack = sc.tolerance * series.limits->q_infinity;
    bool inside = true;
    for (double v : series.values) {
      inside = inside && v >= series.limits->q_zero - slack && v <= series.limits->q_infinity + slack;
    }
    o.report["series"]["sandwich"] = inside;
  }
  std::ostringstream csv;
  write_series_violation_csv(csv, series);
  o.csv = csv.str();
  if (!series.complete) {
    o.code = kInvalid;
  } else if (!series.within_hypotheses) {
    o.code = kOutsideHypotheses;
  } else {
    o.code = series.verdict ? kOk : kOutOfTolerance;
  }
  std::ostringstream sum;
  sum << series.quantity_tag << " verdict=" << (series.verdict ? "nondecreasing" : "violated")
      << " worst_violation=" << series.worst_violation
      << (series.within_hypotheses ? "" : " (outside theorem hypotheses: no guarantee)");
  o.summary = sum.str();
  return o;
}

Outcome cmd_check(const json& c) {
  const std::string check = c.at("check");
  if (!kChecks.count(check)) throw InvalidArgument("unknown check '" + check + "'");
  const double tol = c.at("tolerance");
  const double t = c.at("t");
  const double fd_step = c.at("numerics").at("fd_step");
  const FormSpec fs = forms_of(c);
  const int d = dimension_of(c);
  const Field f = data_of(c, "data", d);

  std::vector<FormCheck> results;
  std::vector<double> limits;
  const auto add = [&](const std::string& variant, double lhs, double rhs, std::size_t k, double limit) {
    FormCheck r;
    r.variant = variant;
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_err = rel_err(lhs, rhs);
    r.k = k;
    r.seed = fs.seed;
    r.grid = f.grid();
    results.push_back(r);
    limits.push_back(limit);
  };
  const auto fd = [&](const std::function<double(double)>& fn, const std::function<double(double)>& ex,
                      const std::string& variant) {
    const DerivativeCheck dc = derivative_check(fn, ex, {t}, fd_step);
    add(variant, dc.explicit_value[0], dc.finite_difference[0], 0, tol);
  };

  if (check == "hz_d1" || check == "hz_d2") {
    const bool one = check == "hz_d1";
    const FormResult r = hz_form(f, one ? HzVariant::d1_sextic : HzVariant::d2_quartic, fs);
    const double norm = strichartz_norm(f, one ? spec_of(c, 1, 6, 6) : spec_of(c, 2, 4, 4));
    add(check, r.value, std::pow(norm, one ? 6.0 : 4.0), r.elements, tol);
  } else if (check == "modified_rep") {
    const ModifiedNormSpec ms = modified_of(c);
    const int m = static_cast<int>(std::lround(ms.p / 2.0));
    if (std::abs(ms.p - 2.0 * m) > 1e-12) throw InvalidArgument("modified_rep needs an even p");
    const FormResult r = modified_rep(f, m, fs);
    add(check, r.value, std::pow(modified_norm(f, ms), ms.p), r.elements, tol);
  } else if (check == "csform") {
    const Field f2 = data_of(c, "data2", d);
    fd([&](double s) { return lambda_heat(f, f2, s); },
       [&](double s) { return lambda_heat_derivative(f, f2, s); }, check);
  } else if (check == "mehler_II") {
    const Field f2 = data_of(c, "data2", d);
    const MehlerTerms m = lambda_mehler_terms(f, f2, t);
    fd([&](double s) { return lambda_mehler_terms(f, f2, s).lambda; },
       [&](double s) {
         const MehlerTerms ms = lambda_mehler_terms(f, f2, s);
         return ms.first + ms.second;
       },
       "mehler_I_plus_II");
    // |II| / I, compared against zero.
    FormCheck r;
    r.variant = "mehler_II_over_I";
    r.lhs = m.second;
    r.rhs = m.first;
    r.rel_err = std::abs(m.second) / std::max(std::abs(m.first), 1e-300);
    r.grid = f.grid();
    results.push_back(r);
    limits.push_back(1e-6);
  } else if (check == "q66") {
    const MixedNormSpec s = spec_of(c, 1, 6, 6);
    fd([&](double x) { return std::pow(q_flow(f, s, x), 6.0); },
       [&](double x) { return q66_derivative(f, x, fs).value; }, check);
  } else if (check == "rescaled") {
    const MixedNormSpec s = triple_spec(c);
    add(check, q_flow_rescaled(f, s, t), q_flow(f, s, 1.0 / (t * t)), 0, tol);
  } else {
    const MixedNormSpec s = triple_spec(c);
    if (s.p != s.q) throw InvalidArgument("fourier_invariance needs p = q");
    const Field fh = fourier(f);
    add("fourier_invariance_strichartz", strichartz_norm(f, s), strichartz_norm(fh, s), 0, tol);
    if (d == 1) {
      const ModifiedNormSpec ms = modified_of(c);
      add("fourier_invariance_modified", modified_norm(f, ms), modified_norm(fh, ms), 0, tol);
    }
  }

  Outcome o;
  o.report = {{"command", "check"}, {"check", check}, {"results", json::array()}};
  bool pass = true;
  std::ostringstream sum;
  for (std::size_t i = 0; i < results.size(); ++i) {
    json r = json::parse(form_check_json(results[i]));
    const bool ok = std::isfinite(results[i].rel_err) && results[i].rel_err <= limits[i];
    r["tolerance"] = limits[i];
    r["pass"] = ok;
    o.report["results"].push_back(r);
    pass = pass && ok;
    sum << results[i].variant << " rel_err=" << results[i].rel_err << (ok ? " ok" : " FAIL") << "; ";
  }
  o.report["pass"] = pass;
  o.code = pass ? kOk : kOutOfTolerance;
  o.summary = sum.str();
  return o;
}

void write_outputs(const json& config, const Outcome& o, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  std::vector<std::string> names = {"report.json"};
  if (!o.csv.empty()) names.push_back("series.csv");
  names.push_back("manifest.json");
  const json manifest = {{"tool", "hfm"},        {"version", kVersion}, {"command", config.at("command")},
                         {"config", config},     {"outputs", names},    {"exit_code", o.code}};
  write_file_atomic((dir / "report.json").string(), o.report.dump(2) + "\n");
  if (!o.csv.empty()) write_file_atomic((dir / "series.csv").string(), o.csv);
  write_file_atomic((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "JSON config, or a manifest.json to replay");
  sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for presets and Monte Carlo samples");
  sub->add_option("--grid-n", o.grid_n, "Points per axis of the data grid");
  sub->add_option("--grid-l", o.grid_l, "Half extent of the data grid");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--tolerance", o.tolerance, "Pass/fail tolerance")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Monotone Strichartz quantities: sharp constants, monotonicity scans and identity checks", "hfm"};
  app.require_subcommand(1);
  Overrides o;
  CLI::App* constants = app.add_subcommand("constants", "Reproduce the sharp constants from Gaussian data");
  CLI::App* scan_cmd = app.add_subcommand("scan", "Scan a monotone quantity over a t-grid");
  CLI::App* check = app.add_subcommand("check", "Check a representation or derivative identity");
  for (CLI::App* sub : {constants, scan_cmd, check}) add_common(sub, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  const std::string command = constants->parsed() ? "constants" : scan_cmd->parsed() ? "scan" : "check";
  json config;
  try {
    config = load_config(o, command);
    set_thread_count(config.at("threads").get<int>());
    const Outcome out = command == "constants" ? cmd_constants(config)
                        : command == "scan"    ? cmd_scan(config)
                                               : cmd_check(config);
    write_outputs(config, out, o.out_dir);
    std::cout << command << ": " << out.summary << " exit=" << out.code << "\n";
    return out.code;
  } catch (const json::exception& e) {
    std::cerr << "hfm " << command << ": invalid config: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "hfm " << command << ": " << e.what() << "\n";
  }
  return kInvalid;
}

}  // namespace hfm::cli
