#include "hfm/reports.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "hfm/error.hpp"
#include "json.hpp"

namespace hfm {
namespace {

using nlohmann::json;

// JSON has no NaN; failed nodes become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json grid_json(const GridSpec& g) {
  return {{"dim", g.dim()}, {"points", g.points()}, {"half_extent", g.half_extent()}};
}

std::vector<double> increments(const MonotoneSeries& s) {
  std::vector<double> out(s.values.size(), 0.0);
  for (std::size_t i = 1; i < s.values.size(); ++i) out[i] = s.values[i] - s.values[i - 1];
  return out;
}

}  // namespace

void write_series_csv(std::ostream& out, const MonotoneSeries& s) {
  const std::vector<double> inc = increments(s);
  const std::vector<bool> ok = s.cumulative_verdicts();
  out.precision(17);
  out << "t,value,delta,cumulative_verdict\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out << s.t_values[i] << ',' << s.values[i] << ',' << inc[i] << ',' << (ok[i] ? 1 : 0) << '\n';
  }
}

void write_series_violation_csv(std::ostream& out, const MonotoneSeries& s) {
  const std::vector<double> inc = increments(s);
  const std::vector<double> drop = s.drops();
  out.precision(17);
  out << "t,value,delta,violation\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out << s.t_values[i] << ',' << s.values[i] << ',' << inc[i] << ',' << std::max(drop[i], 0.0) << '\n';
  }
}

std::string series_json(const MonotoneSeries& s, const GridSpec& grid, int indent) {
  json j;
  j["quantity"] = s.quantity_tag;
  j["tolerance"] = s.tolerance;
  j["verdict"] = s.verdict;
  j["complete"] = s.complete;
  j["worst_violation"] = s.worst_violation;
  j["worst_index"] = s.worst_index;
  j["within_hypotheses"] = s.within_hypotheses;
  if (!s.within_hypotheses) j["guarantee"] = "no guarantee: outside theorem hypotheses";
  j["grid"] = grid_json(grid);
  json t = json::array();
  json v = json::array();
  json notes = json::object();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    t.push_back(s.t_values[i]);
    v.push_back(number(s.values[i]));
    if (!s.notes[i].empty()) notes[std::to_string(i)] = s.notes[i];
  }
  j["t"] = t;
  j["values"] = v;
  if (!notes.empty()) j["failures"] = notes;
  if (s.limits) j["limits"] = {{"q_zero", s.limits->q_zero}, {"q_infinity", s.limits->q_infinity}};
  return j.dump(indent);
}

std::string constants_json(const std::vector<ConstantReport>& reports, int indent) {
  json arr = json::array();
  for (const ConstantReport& r : reports) {
    arr.push_back({{"name", r.name},
                   {"d", r.d},
                   {"p", r.p},
                   {"q", r.q},
                   {"measured", number(r.measured)},
                   {"exact", r.exact},
                   {"exact_formula", r.exact_formula},
                   {"rel_err", number(r.rel_err)},
                   {"grid", grid_json(r.grid)},
                   {"s_nodes", r.s_nodes}});
    if (!r.error.empty()) arr.back()["error"] = r.error;
  }
  return arr.dump(indent);
}

std::string form_check_json(const FormCheck& c, int indent) {
  const json j = {{"variant", c.variant}, {"lhs", number(c.lhs)},     {"rhs", number(c.rhs)},
                  {"rel_err", number(c.rel_err)}, {"K", c.k}, {"seed", c.seed},
                  {"grid", grid_json(c.grid)}};
  return j.dump(indent);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw NumericalError("write to " + tmp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw NumericalError("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace hfm
