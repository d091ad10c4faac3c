#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hfm/field.hpp"
#include "hfm/modified_norm.hpp"
#include "hfm/norms.hpp"
#include "hfm/space_time.hpp"

namespace hfm {

enum class QuantityKind { q_flow, q_mehler, q_mitigated, q_modified, lambda_heat, lambda_mehler };

// A monotone quantity together with the discretization it is evaluated
// with. alpha is read by q_mitigated and q_modified; `modified` only by
// q_modified; `spec` by the Strichartz-based quantities.
struct Quantity {
  QuantityKind kind = QuantityKind::q_flow;
  MixedNormSpec spec;
  ModifiedNormSpec modified;
  double alpha = 0.5;

  // "q_flow(1,6,6)", "q_mitigated(0.75;2,4,4)", "q_modified(0.5;p=8)", ...
  std::string tag() const;
  // Whether a monotonicity theorem covers this quantity: admissible triple
  // with q an even integer dividing p (Strichartz quantities), alpha in
  // [1/2, 1] where alpha enters, p an even integer for q_modified.
  bool within_hypotheses() const;
  // lambda_heat and lambda_mehler take two data fields.
  bool needs_pair() const;
};

QuantityKind parse_quantity_kind(const std::string& name);
std::string to_string(QuantityKind kind);

// Evaluates the quantity at time t. f2 is required for the Lambda
// functionals and ignored otherwise.
double evaluate(const Quantity& q, const Field& f, double t, const Field* f2 = nullptr);

enum class GridKind { geometric, linear };

struct ScanConfig {
  double t_min = 1e-2;
  double t_max = 10.0;
  std::size_t t_count = 20;
  GridKind grid_kind = GridKind::geometric;
  double tolerance = 1e-5;
  std::uint64_t seed = 1;

  // Throws InvalidArgument unless 0 < t_min < t_max and t_count >= 3.
  void validate() const;
};

std::vector<double> t_grid(const ScanConfig& config);

struct MonotoneSeries {
  std::vector<double> t_values;
  std::vector<double> values;  // NaN where evaluation failed
  std::vector<std::string> notes;  // per node, empty unless it failed
  std::string quantity_tag;
  double tolerance = 0.0;
  bool within_hypotheses = true;
  bool complete = true;
  // values[i+1] >= values[i] - tolerance * max(values) for all i, and
  // complete.
  bool verdict = false;
  // Largest drop values[i] - values[i+1] relative to max(values), or 0.
  double worst_violation = 0.0;
  std::size_t worst_index = 0;  // i of the largest drop
  std::optional<LimitValues> limits;

  // Drops relative to max(values) for each step, positive where the series
  // decreases.
  std::vector<double> drops() const;
  // True while every step up to and including i satisfies the tolerance.
  std::vector<bool> cumulative_verdicts() const;
};

// Fills verdict, worst_violation and worst_index from t_values, values and
// tolerance.
void assess(MonotoneSeries& series);

// Evaluates fn at every node of the config's t-grid. A node that throws
// hfm::Error is recorded as NaN with the message in notes.
MonotoneSeries scan(const std::string& tag, const std::function<double(double)>& fn,
                    const ScanConfig& config);

// Same for a named quantity. Attaches limit values for q_flow, q_mehler and
// q_mitigated.
MonotoneSeries scan(const Quantity& q, const Field& f, const ScanConfig& config,
                    const Field* f2 = nullptr);

struct DerivativeCheck {
  std::vector<double> t_values;
  std::vector<double> finite_difference;
  std::vector<double> explicit_value;
  std::vector<double> rel_deviation;
  double max_rel_deviation = 0.0;
  std::size_t worst_index = 0;
};

// Centered differences (fn(t + h) - fn(t - h)) / 2h with h = rel_step * t
// against derivative(t). Where both sides are below abs_floor the node
// counts as agreeing (deviation 0). InvalidArgument if t - h <= 0 or h
// underflows relative to t.
DerivativeCheck derivative_check(const std::function<double(double)>& fn,
                                 const std::function<double(double)>& derivative,
                                 const std::vector<double>& t_values, double rel_step = 1e-4,
                                 double abs_floor = 1e-300);

struct ConstantReport {
  std::string name;  // "C(1,6,6)", "C(1,8,4)", "C(2,4,4)", "C_mod(1,4)"
  int d = 1;
  double p = 0.0;
  double q = 0.0;
  double measured = 0.0;
  double exact = 0.0;
  double rel_err = 0.0;
  std::string exact_formula;
  GridSpec grid;
  std::size_t s_nodes = 0;
  // Set when the evaluation raised a NumericalError (e.g. under-resolved
  // grid); measured and rel_err are then NaN.
  std::string error;
};

// Sampling of the normalized Gaussian used by constants_report.
struct ConstantsConfig {
  double half_extent_1d = 16.0;
  std::size_t points_1d = 256;
  double half_extent_2d = 8.0;
  std::size_t points_2d = 128;
  std::size_t s_nodes = 257;
  ModifiedNormSpec modified = make_modified(1, 8.0);
};

// strichartz_norm(g) / ||g||_2 for the normalized Gaussian sampled on the
// config grids, for (1,6,6), (1,8,4) and (2,4,4), and |||g|||_8 / ||g||_2 at
// d = 1, each against its closed form evaluated here. Numerical failures
// are recorded per entry rather than thrown.
std::vector<ConstantReport> constants_report(const ConstantsConfig& config = {});

// Closed forms: C(1,6,6) = 12^{-1/12}, C(1,8,4) = 2^{-1/4},
// C(2,4,4) = 2^{-1/2}.
double sharp_strichartz_constant(int d, double p, double q);

}  // namespace hfm
