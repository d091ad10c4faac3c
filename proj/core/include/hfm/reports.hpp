#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hfm/grid.hpp"
#include "hfm/monotone.hpp"

namespace hfm {

// Series CSV, columns t,value,delta,cumulative_verdict: delta is
// value[i] - value[i-1] (0 on the first row), cumulative_verdict 1 while
// every step so far is within tolerance.
void write_series_csv(std::ostream& out, const MonotoneSeries& s);

// Command-line layout, columns t,value,delta,violation: violation is the
// drop relative to max(values) where the series decreases, else 0.
void write_series_violation_csv(std::ostream& out, const MonotoneSeries& s);

// JSON documents. `grid` records where the data was sampled.
std::string series_json(const MonotoneSeries& s, const GridSpec& grid, int indent = 2);
std::string constants_json(const std::vector<ConstantReport>& reports, int indent = 2);

struct FormCheck {
  std::string variant;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
  std::size_t k = 0;  // group elements used
  std::uint64_t seed = 0;
  GridSpec grid;
};

std::string form_check_json(const FormCheck& c, int indent = 2);

// Writes to path + ".tmp" and renames over path, so readers never see a
// partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hfm
