#include "hfm/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "hfm/error.hpp"

namespace hfm {
namespace {

static_assert(std::endian::native == std::endian::little, "field_io assumes a little-endian host");

template <class T>
void put(std::ostream& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw InvalidArgument("read_field: truncated input");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_field(std::ostream& out, const Field& f) {
  const GridSpec& g = f.grid();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points()));
  put<double>(out, g.half_extent());
  for (const cplx& v : f.samples()) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
  if (!out) throw NumericalError("write_field: stream error");
}

Field read_field(std::istream& in) {
  const auto dim = get<std::uint32_t>(in);
  const auto n = get<std::uint32_t>(in);
  const auto l = get<double>(in);
  const GridSpec g = make_grid(static_cast<int>(dim), l, n);
  std::vector<cplx> s(g.size());
  for (cplx& v : s) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = cplx(re, im);
  }
  return Field(g, std::move(s));
}

void save_field(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("save_field: cannot open " + path);
  write_field(out, f);
}

Field load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("load_field: cannot open " + path);
  return read_field(in);
}

void write_field_csv(std::ostream& out, const Field& f) {
  const int d = f.grid().dim();
  for (int a = 0; a < d; ++a) out << 'x' << a << ',';
  out << "re,im\n";
  out.precision(17);
  for_each_point(f.grid(), [&](std::size_t i, const Point& x) {
    for (int a = 0; a < d; ++a) out << x[a] << ',';
    out << f[i].real() << ',' << f[i].imag() << '\n';
  });
}

}  // namespace hfm
