#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hfm/error.hpp"
#include "hfm/field.hpp"
#include "hfm/field_io.hpp"
#include "hfm/fourier.hpp"
#include "hfm/interpolate.hpp"
#include "hfm/quadrature.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;

Field gauss1(const GridSpec& g, double a = 1.0) {
  return sample_nonnegative(g, [a](const Point& x) { return std::exp(-a * x[0] * x[0]); });
}

TEST(Grid, CoordinatesAndDual) {
  const GridSpec g = make_grid(1, 4.0, 16);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
  EXPECT_DOUBLE_EQ(g.coordinate(0), -4.0);
  EXPECT_DOUBLE_EQ(g.coordinate(8), 0.0);
  EXPECT_NEAR(g.dual().half_extent(), kPi / 0.5, 1e-12);
  EXPECT_TRUE(g.dual().dual() == g);
  EXPECT_EQ(make_grid(2, 1.0, 8).size(), 64u);
}

TEST(Grid, RejectsBadParameters) {
  EXPECT_THROW(make_grid(1, 1.0, 12), InvalidArgument);
  EXPECT_THROW(make_grid(0, 1.0, 8), InvalidArgument);
  EXPECT_THROW(make_grid(1, -1.0, 8), InvalidArgument);
  EXPECT_THROW(make_grid(5, 1.0, 8), InvalidArgument);
}

TEST(Field, GaussianIntegralsMatchClosedForm) {
  const Field f = gauss1(make_grid(1, 8.0, 128));
  EXPECT_NEAR(integrate(f).real(), std::sqrt(kPi), 1e-12);
  // integral e^{-q x^2} = sqrt(pi/q)
  EXPECT_NEAR(lq_integral(f, 6.0), std::sqrt(kPi / 6.0), 1e-12);
  EXPECT_NEAR(lq_norm(f, 2.0), std::pow(kPi / 2.0, 0.25), 1e-12);
}

TEST(Field, NonnegativeTagging) {
  const GridSpec g = make_grid(1, 1.0, 8);
  std::vector<cplx> s(8, cplx(1.0, 0.0));
  s[3] = cplx(-1e-3, 0.0);
  EXPECT_THROW(Field::nonnegative(g, s), NumericalError);
  s[3] = cplx(-1e-13, 0.0);
  EXPECT_TRUE(Field::nonnegative(g, s).is_nonnegative());
  EXPECT_FALSE(Field(g, s).is_nonnegative());
  EXPECT_THROW(pointwise_power(Field(g, s), 0.5), InvalidArgument);
}

TEST(Field, PointwisePowerAndTensorProduct) {
  const GridSpec g = make_grid(1, 6.0, 64);
  const Field f = gauss1(g);
  const Field r = pointwise_power(f, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(r[i].real(), std::exp(-0.5 * g.coordinate(i) * g.coordinate(i)), 1e-15);
  }
  const Field t = tensor_power(f, 2);
  EXPECT_EQ(t.grid().dim(), 2);
  EXPECT_NEAR(integrate(t).real(), kPi, 1e-10);
}

TEST(Fourier, GaussianTransformIsAnalytic) {
  // (2 pi)^{-1/2} int e^{-x^2} e^{-i x xi} dx = e^{-xi^2/4} / sqrt(2)
  const Field f = gauss1(make_grid(1, 10.0, 128));
  const Field fh = fourier(f);
  for (std::size_t k = 0; k < fh.size(); ++k) {
    const double xi = fh.grid().coordinate(k);
    EXPECT_NEAR(std::abs(fh[k] - cplx(std::exp(-xi * xi / 4.0) / std::sqrt(2.0))), 0.0, 1e-13);
  }
}

TEST(Fourier, RoundTripAndPlancherel) {
  const GridSpec g = make_grid(2, 6.0, 32);
  const Field f = sample_field(g, [](const Point& x) {
    return cplx(std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]), x[0] * std::exp(-x[0] * x[0] - x[1] * x[1]));
  });
  const Field fh = fourier(f);
  EXPECT_NEAR(lq_norm(fh, 2.0), lq_norm(f, 2.0), 1e-12);
  const Field back = inverse_fourier(fh);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(std::abs(back[i] - f[i]), 0.0, 1e-13);
}

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const QuadratureRule r = gauss_legendre(5, -1.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 9);
  EXPECT_NEAR(s, (std::pow(2.0, 10) - 1.0) / 10.0, 1e-10);
}

TEST(Quadrature, TanCompactifiedIntegratesAlgebraicTails) {
  // int ds / (1 + s^2)^2 = pi / 2
  const QuadratureRule r = tan_compactified(64, 1.0, -kPi / 2.0, kPi / 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] / std::pow(1.0 + r.nodes[i] * r.nodes[i], 2);
  EXPECT_NEAR(s, kPi / 2.0, 1e-12);
}

TEST(Quadrature, GaussHermite) {
  // int y^4 e^{-y^2} dy = 3 sqrt(pi) / 4
  const QuadratureRule r = gauss_hermite(6);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 4);
  EXPECT_NEAR(s, 0.75 * std::sqrt(kPi), 1e-12);
}

TEST(Interpolate, BandLimitedRefinementReproducesSamples) {
  const GridSpec g = make_grid(1, 8.0, 64);
  const Field fine = refine_bandlimited(gauss1(g), 4);
  ASSERT_EQ(fine.grid().points(), 256u);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double x = fine.grid().coordinate(i);
    EXPECT_NEAR(fine[i].real(), std::exp(-x * x), 1e-12);
  }
}

TEST(Interpolate, CubicOffGridValues) {
  const GridSpec g = make_grid(2, 6.0, 128);
  const Field f = sample_nonnegative(g, [](const Point& x) { return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]); });
  const GridInterpolator<double> interp(f, 4, InterpOrder::cubic);
  for (double a : {-1.37, 0.123, 2.9}) {
    const double x[2] = {a, 0.7 * a - 0.2};
    EXPECT_NEAR(interp(x), std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]), 1e-6);
  }
  const double outside[2] = {7.0, 0.0};
  EXPECT_EQ(interp(outside), 0.0);
}

TEST(FieldIo, BinaryRoundTripIsExact) {
  const GridSpec g = make_grid(2, 3.5, 8);
  const Field f = sample_field(g, [](const Point& x) { return cplx(x[0] + 0.1, -x[1] / 3.0); });
  std::stringstream buf;
  write_field(buf, f);
  EXPECT_EQ(buf.str().size(), 4u + 4u + 8u + 64u * 16u);
  const Field back = read_field(buf);
  EXPECT_TRUE(back.grid() == g);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
}

TEST(FieldIo, TruncatedInputThrows) {
  std::stringstream buf;
  write_field(buf, gauss1(make_grid(1, 2.0, 8)));
  std::string s = buf.str();
  s.resize(s.size() - 3);
  std::stringstream cut(s);
  EXPECT_THROW(read_field(cut), InvalidArgument);
}

TEST(FieldIo, CsvHasHeaderAndOneRowPerSite) {
  std::stringstream buf;
  write_field_csv(buf, gauss1(make_grid(1, 2.0, 8)));
  std::string line;
  std::getline(buf, line);
  EXPECT_EQ(line, "x0,re,im");
  int rows = 0;
  while (std::getline(buf, line)) ++rows;
  EXPECT_EQ(rows, 8);
}

}  // namespace
}  // namespace hfm
