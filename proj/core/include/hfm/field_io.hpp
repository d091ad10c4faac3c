#pragma once

#include <iosfwd>
#include <string>

#include "hfm/field.hpp"

namespace hfm {

// Binary layout, little-endian: uint32 dim, uint32 N, float64 L, then N^dim
// (re, im) float64 pairs in row-major grid order. Fields read back are
// untagged; callers that need nonnegative data re-tag with
// Field::nonnegative.
void write_field(std::ostream& out, const Field& f);
Field read_field(std::istream& in);

void save_field(const std::string& path, const Field& f);
Field load_field(const std::string& path);

// One row per site: x_0, ..., x_{dim-1}, re, im, with a header line.
void write_field_csv(std::ostream& out, const Field& f);

}  // namespace hfm
