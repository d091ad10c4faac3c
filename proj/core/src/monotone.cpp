#include "hfm/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hfm/error.hpp"
#include "hfm/flows.hpp"
#include "hfm/forms.hpp"
#include "hfm/threading.hpp"

namespace hfm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_even_integer(double x) {
  return std::abs(x - std::round(x)) < 1e-12 && static_cast<long long>(std::round(x)) % 2 == 0;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::string triple(const MixedNormSpec& s) {
  return std::to_string(s.d) + "," + fmt(s.p) + "," + fmt(s.q);
}

const Field& second(const Field* f2) {
  if (f2 == nullptr) throw InvalidArgument("Lambda functionals need a second data field");
  return *f2;
}

double rel_dev(double fd, double ex, double floor) {
  const double scale = std::max(std::abs(fd), std::abs(ex));
  if (scale < floor) return 0.0;
  return std::abs(ex - fd) / scale;
}

void measure(ConstantReport& r, const std::function<double()>& fn) {
  try {
    r.measured = fn();
    r.rel_err = std::abs(r.measured / r.exact - 1.0);
  } catch (const NumericalError& e) {
    r.measured = kNaN;
    r.rel_err = kNaN;
    r.error = e.what();
  }
}

}  // namespace

std::string to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::q_flow: return "q_flow";
    case QuantityKind::q_mehler: return "q_mehler";
    case QuantityKind::q_mitigated: return "q_mitigated";
    case QuantityKind::q_modified: return "q_modified";
    case QuantityKind::lambda_heat: return "lambda_heat";
    case QuantityKind::lambda_mehler: return "lambda_mehler";
  }
  return "unknown";
}

QuantityKind parse_quantity_kind(const std::string& name) {
  for (QuantityKind k : {QuantityKind::q_flow, QuantityKind::q_mehler, QuantityKind::q_mitigated,
                         QuantityKind::q_modified, QuantityKind::lambda_heat, QuantityKind::lambda_mehler}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown quantity '" + name + "'");
}

std::string Quantity::tag() const {
  switch (kind) {
    case QuantityKind::q_flow:
    case QuantityKind::q_mehler:
      return to_string(kind) + "(" + triple(spec) + ")";
    case QuantityKind::q_mitigated:
      return "q_mitigated(" + fmt(alpha) + ";" + triple(spec) + ")";
    case QuantityKind::q_modified:
      return "q_modified(" + fmt(alpha) + ";d=" + std::to_string(modified.d) + ",p=" + fmt(modified.p) + ")";
    case QuantityKind::lambda_heat:
    case QuantityKind::lambda_mehler:
      return to_string(kind) + "(d=" + std::to_string(spec.d) + ")";
  }
  return "unknown";
}

bool Quantity::within_hypotheses() const {
  const bool alpha_ok = alpha >= 0.5 && alpha <= 1.0;
  switch (kind) {
    case QuantityKind::q_flow:
    case QuantityKind::q_mehler:
      return spec.admissible() && spec.even_divides();
    case QuantityKind::q_mitigated:
      return spec.admissible() && spec.even_divides() && alpha_ok;
    case QuantityKind::q_modified:
      return is_even_integer(modified.p) && modified.p > p_of_d(modified.d) && alpha_ok;
    case QuantityKind::lambda_heat:
    case QuantityKind::lambda_mehler:
      return true;
  }
  return false;
}

bool Quantity::needs_pair() const {
  return kind == QuantityKind::lambda_heat || kind == QuantityKind::lambda_mehler;
}

double evaluate(const Quantity& q, const Field& f, double t, const Field* f2) {
  switch (q.kind) {
    case QuantityKind::q_flow: return q_flow(f, q.spec, t);
    case QuantityKind::q_mehler: return q_mehler(f, q.spec, t);
    case QuantityKind::q_mitigated: return q_mitigated(f, q.spec, q.alpha, t);
    case QuantityKind::q_modified: return q_modified(f, q.modified, q.alpha, t);
    case QuantityKind::lambda_heat: return lambda_heat(f, second(f2), t);
    case QuantityKind::lambda_mehler: return lambda_mehler_terms(f, second(f2), t).lambda;
  }
  throw InvalidArgument("evaluate: unknown quantity");
}

void ScanConfig::validate() const {
  if (!(t_min > 0.0 && t_min < t_max && std::isfinite(t_max))) {
    throw InvalidArgument("scan needs 0 < t_min < t_max");
  }
  if (t_count < 3) throw InvalidArgument("scan needs t_count >= 3");
  if (!(tolerance >= 0.0)) throw InvalidArgument("scan tolerance must be >= 0");
}

std::vector<double> t_grid(const ScanConfig& config) {
  config.validate();
  std::vector<double> t(config.t_count);
  const double last = static_cast<double>(config.t_count - 1);
  for (std::size_t i = 0; i < config.t_count; ++i) {
    const double u = static_cast<double>(i) / last;
    t[i] = config.grid_kind == GridKind::geometric
               ? config.t_min * std::pow(config.t_max / config.t_min, u)
               : config.t_min + (config.t_max - config.t_min) * u;
  }
  t.back() = config.t_max;
  return t;
}

std::vector<double> MonotoneSeries::drops() const {
  double top = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) top = std::max(top, v);
  }
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 1; i < values.size(); ++i) {
    out[i] = top > 0.0 ? (values[i - 1] - values[i]) / top : values[i - 1] - values[i];
  }
  return out;
}

std::vector<bool> MonotoneSeries::cumulative_verdicts() const {
  const std::vector<double> d = drops();
  std::vector<bool> out(values.size());
  bool ok = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) ok = false;
    if (i > 0 && !(d[i] <= tolerance)) ok = false;
    out[i] = ok;
  }
  return out;
}

void assess(MonotoneSeries& s) {
  s.complete = std::all_of(s.values.begin(), s.values.end(), [](double v) { return std::isfinite(v); });
  const std::vector<double> d = s.drops();
  s.worst_violation = 0.0;
  s.worst_index = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > s.worst_violation) {
      s.worst_violation = d[i];
      s.worst_index = i - 1;
    }
  }
  s.verdict = s.complete && s.worst_violation <= s.tolerance;
}

MonotoneSeries scan(const std::string& tag, const std::function<double(double)>& fn,
                    const ScanConfig& config) {
  MonotoneSeries s;
  s.t_values = t_grid(config);
  s.quantity_tag = tag;
  s.tolerance = config.tolerance;
  s.values.assign(s.t_values.size(), kNaN);
  s.notes.assign(s.t_values.size(), "");
  parallel_for(s.t_values.size(), [&](std::size_t i) {
    try {
      s.values[i] = fn(s.t_values[i]);
    } catch (const Error& e) {
      s.notes[i] = e.what();
    }
  });
  assess(s);
  return s;
}

MonotoneSeries scan(const Quantity& q, const Field& f, const ScanConfig& config, const Field* f2) {
  if (q.needs_pair()) second(f2);
  MonotoneSeries s = scan(q.tag(), [&](double t) { return evaluate(q, f, t, f2); }, config);
  s.within_hypotheses = q.within_hypotheses();
  try {
    switch (q.kind) {
      case QuantityKind::q_flow: s.limits = limit_values(f, q.spec); break;
      case QuantityKind::q_mehler: s.limits = mehler_limit_values(f, q.spec); break;
      case QuantityKind::q_mitigated: s.limits = mitigated_limit_values(f, q.spec, q.alpha); break;
      default: break;
    }
  } catch (const Error&) {
    s.limits.reset();
  }
  return s;
}

DerivativeCheck derivative_check(const std::function<double(double)>& fn,
                                 const std::function<double(double)>& derivative,
                                 const std::vector<double>& t_values, double rel_step,
                                 double abs_floor) {
  if (!(rel_step > 0.0 && rel_step < 1.0)) throw InvalidArgument("derivative_check: rel_step must lie in (0, 1)");
  DerivativeCheck out;
  out.t_values = t_values;
  for (double t : t_values) {
    const double h = rel_step * t;
    if (!(t > 0.0) || t + h == t) throw InvalidArgument("derivative_check: step underflows at t = " + fmt(t));
    const double fd = (fn(t + h) - fn(t - h)) / (2.0 * h);
    const double ex = derivative(t);
    out.finite_difference.push_back(fd);
    out.explicit_value.push_back(ex);
    out.rel_deviation.push_back(rel_dev(fd, ex, abs_floor));
  }
  for (std::size_t i = 0; i < out.rel_deviation.size(); ++i) {
    if (out.rel_deviation[i] > out.max_rel_deviation) {
      out.max_rel_deviation = out.rel_deviation[i];
      out.worst_index = i;
    }
  }
  return out;
}

double sharp_strichartz_constant(int d, double p, double q) {
  if (d == 1 && p == 6.0 && q == 6.0) return std::pow(12.0, -1.0 / 12.0);
  if (d == 1 && p == 8.0 && q == 4.0) return std::pow(2.0, -0.25);
  if (d == 2 && p == 4.0 && q == 4.0) return std::pow(2.0, -0.5);
  throw InvalidArgument("sharp constant known only for (1,6,6), (1,8,4) and (2,4,4)");
}

std::vector<ConstantReport> constants_report(const ConstantsConfig& config) {
  struct Case {
    int d;
    double p;
    double q;
    const char* formula;
  };
  const Case cases[] = {{1, 6, 6, "12^(-1/12)"}, {1, 8, 4, "2^(-1/4)"}, {2, 4, 4, "2^(-1/2)"}};
  std::vector<ConstantReport> out;
  for (const Case& c : cases) {
    const GridSpec grid = c.d == 1 ? make_grid(1, config.half_extent_1d, config.points_1d)
                                   : make_grid(2, config.half_extent_2d, config.points_2d);
    const Field g = sample(normalized_gaussian(c.d), grid);
    MixedNormSpec spec = make_triple(c.d, c.p, c.q);
    spec.s_nodes = config.s_nodes;
    ConstantReport r;
    r.name = "C(" + triple(spec) + ")";
    r.d = c.d;
    r.p = c.p;
    r.q = c.q;
    r.exact = sharp_strichartz_constant(c.d, c.p, c.q);
    measure(r, [&] { return strichartz_norm(g, spec) / lq_norm(g, 2.0); });
    r.exact_formula = c.formula;
    r.grid = grid;
    r.s_nodes = spec.s_nodes;
    out.push_back(r);
  }
  const ModifiedNormSpec& ms = config.modified;
  const int m = static_cast<int>(std::lround(ms.p / 2.0));
  if (ms.d != 1 || std::abs(ms.p - 2.0 * m) > 1e-12) {
    throw InvalidArgument("constants_report: modified constant needs d = 1 and even p");
  }
  const GridSpec grid = make_grid(1, config.half_extent_1d, config.points_1d);
  const Field g = sample(normalized_gaussian(1), grid);
  ConstantReport r;
  r.name = "C_mod(1," + std::to_string(m) + ")";
  r.d = 1;
  r.p = ms.p;
  r.q = ms.p;
  r.exact = sharp_modified_constant(1, m);
  measure(r, [&] { return modified_norm(g, ms) / lq_norm(g, 2.0); });
  r.exact_formula = "(pi^nu / (2^(nu+1) m^d Gamma(nu+1)) (p(d)/2)^(d/2))^(1/2m), nu = d(2m - p(d))/4";
  r.grid = grid;
  r.s_nodes = ms.s_nodes;
  out.push_back(r);
  return out;
}

}  // namespace hfm
