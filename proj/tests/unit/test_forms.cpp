#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hfm/error.hpp"
#include "hfm/forms.hpp"
#include "hfm/groups.hpp"
#include "hfm/modified_norm.hpp"
#include "hfm/norms.hpp"
#include "hfm/presets.hpp"
#include "hfm/threading.hpp"

namespace hfm {
namespace {

constexpr double kPi = std::numbers::pi;

Field preset(const std::string& name, int d = 1) {
  return d == 1 ? sample(preset_by_name(name, 1, 1), make_grid(1, 16.0, 512))
                : sample(preset_by_name(name, 2, 1), make_grid(2, 8.0, 128));
}

TEST(Groups, DiagonalSubspaceIsOrthonormal) {
  const Eigen::MatrixXd w = diagonal_subspace(3, 1);
  EXPECT_NEAR((w.transpose() * w - Eigen::MatrixXd::Identity(1, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(w(0, 0), 1.0 / std::sqrt(3.0), 1e-15);
  const Eigen::MatrixXd w2 = diagonal_subspace(2, 2);
  // (1,0,1,0)/sqrt2 and (0,1,0,1)/sqrt2
  EXPECT_NEAR(w2(0, 0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(w2(2, 0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(w2(1, 1), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(w2(1, 0), 0.0, 1e-15);
}

void expect_isometries_fixing(const InvarianceGroup& g, const Eigen::MatrixXd& w) {
  double wsum = 0.0;
  for (std::size_t k = 0; k < g.elements.size(); ++k) {
    const Eigen::MatrixXd& r = g.elements[k];
    const auto n = r.rows();
    EXPECT_NEAR((r.transpose() * r - Eigen::MatrixXd::Identity(n, n)).norm(), 0.0, 1e-12);
    EXPECT_NEAR((r * w - w).norm(), 0.0, 1e-12);
    wsum += g.weights[k];
  }
  EXPECT_NEAR(wsum, 1.0, 1e-14);
}

TEST(Groups, SamplersByComplementDimension) {
  const Eigen::MatrixXd w1 = diagonal_subspace(2, 1);
  const InvarianceGroup g1 = sample_group(w1, 10);
  EXPECT_EQ(g1.sampler, GroupSampler::exact_reflection);
  EXPECT_EQ(g1.elements.size(), 2u);
  expect_isometries_fixing(g1, w1);

  const Eigen::MatrixXd w2 = diagonal_subspace(3, 1);
  const InvarianceGroup g2 = sample_group(w2, 16);
  EXPECT_EQ(g2.sampler, GroupSampler::angle_quadrature);
  EXPECT_EQ(g2.elements.size(), 32u);
  expect_isometries_fixing(g2, w2);

  const Eigen::MatrixXd w3 = diagonal_subspace(4, 1);
  const InvarianceGroup g3 = sample_group(w3, 20, 9);
  EXPECT_EQ(g3.sampler, GroupSampler::haar_monte_carlo);
  expect_isometries_fixing(g3, w3);
  int positive = 0;
  for (const auto& r : g3.elements) positive += r.determinant() > 0.0 ? 1 : 0;
  EXPECT_EQ(positive, 10);
}

TEST(Groups, MonteCarloIsSeededAndThreadIndependent) {
  const Eigen::MatrixXd w = diagonal_subspace(4, 1);
  set_thread_count(1);
  const InvarianceGroup a = sample_group(w, 8, 42);
  set_thread_count(3);
  const InvarianceGroup b = sample_group(w, 8, 42);
  set_thread_count(1);
  const InvarianceGroup c = sample_group(w, 8, 43);
  for (std::size_t k = 0; k < a.elements.size(); ++k) EXPECT_EQ((a.elements[k] - b.elements[k]).norm(), 0.0);
  EXPECT_GT((a.elements[0] - c.elements[0]).norm(), 1e-3);
}

TEST(Groups, InvalidBases) {
  EXPECT_THROW(sample_group(Eigen::MatrixXd::Identity(3, 3), 4), InvalidArgument);
  Eigen::MatrixXd degenerate(3, 2);
  degenerate << 1, 2, 1, 2, 1, 2;
  EXPECT_THROW(sample_group(degenerate, 4), InvalidArgument);
  EXPECT_THROW(sample_group(diagonal_subspace(4, 1), 5), InvalidArgument);
}

TEST(Groups, ProjectionFixesRadialFunctionsAndAverages) {
  const GridSpec g = make_grid(2, 6.0, 64);
  const Field radial = sample_nonnegative(g, [](const Point& x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
  // W = span (1,1)/sqrt2 in R^2; the complement reflection swaps coordinates.
  const InvarianceGroup grp = sample_group(diagonal_subspace(2, 1), 1);
  const Field pr = project_invariant(radial, grp, InterpOrder::cubic, 4);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(pr[i].real(), radial[i].real(), 1e-9);
  const Field skew = sample_nonnegative(g, [](const Point& x) { return std::exp(-(x[0] - 1.0) * (x[0] - 1.0) - x[1] * x[1]); });
  const Field ps = project_invariant(skew, grp, InterpOrder::cubic, 4);
  for_each_point(g, [&](std::size_t i, const Point& x) {
    const double swapped = std::exp(-x[0] * x[0] - (x[1] - 1.0) * (x[1] - 1.0));
    EXPECT_NEAR(ps[i].real(), 0.5 * (skew[i].real() + swapped), 1e-7);
  });
  const Field wide = sample_nonnegative(g, [](const Point& x) { return std::exp(-0.05 * (x[0] * x[0] + x[1] * x[1])); });
  EXPECT_THROW(project_invariant(wide, grp), NumericalError);
}

TEST(Forms, HzSexticOnGaussianIsAnalytic) {
  // F radial, so PF = F and both sides equal 12^{-1/2} (pi/2)^{3/2}.
  const Field f = preset("gaussian");
  const double exact = std::pow(12.0, -0.5) * std::pow(kPi / 2.0, 1.5);
  EXPECT_NEAR(hz_form(f, HzVariant::d1_sextic).value / exact, 1.0, 1e-6);
}

TEST(Forms, HzFormsMatchStrichartzPowersOnBumps) {
  const Field f1 = preset("random_bump(4)");
  const double s6 = std::pow(strichartz_norm(f1, make_triple(1, 6, 6)), 6);
  EXPECT_NEAR(hz_form(f1, HzVariant::d1_sextic).value / s6, 1.0, 1e-4);

  FormSpec fs;
  fs.points = 16;
  fs.angles = 32;
  const Field f2 = sample(preset_by_name("two_bump", 2, 1), make_grid(2, 8.0, 64));
  const double s4 = std::pow(strichartz_norm(f2, make_triple(2, 4, 4)), 4);
  EXPECT_NEAR(hz_form(f2, HzVariant::d2_quartic, fs).value / s4, 1.0, 1e-2);
}

TEST(Forms, HzVariantChecksDimension) {
  EXPECT_THROW(hz_form(preset("gaussian"), HzVariant::d2_quartic), InvalidArgument);
}

TEST(Forms, ModifiedRepresentationOnGaussian) {
  // radial data: the Monte Carlo average is exact and equals the closed form
  FormSpec fs;
  fs.points = 24;
  fs.samples = 8;
  const Field f = preset("gaussian");
  const FormResult r = modified_rep(f, 4, fs);
  const double norm8 = std::pow(modified_norm(normalized_gaussian(1), make_modified(1, 8.0)), 8);
  const double scale = std::pow(lq_norm(f, 2.0), 8);
  EXPECT_NEAR(r.value / (norm8 * scale), 1.0, 1e-5);
  EXPECT_LT(r.std_error, 1e-8 * r.value);
  EXPECT_THROW(modified_rep(f, 3, fs), InvalidArgument);
}

TEST(Forms, LambdaHeatDerivativeMatchesDifferences) {
  const Field f1 = preset("two_bump");
  const Field f2 = preset("random_bump(5)");
  for (double t : {0.1, 1.0}) {
    const double h = 1e-4 * t;
    const double fd = (lambda_heat(f1, f2, t + h) - lambda_heat(f1, f2, t - h)) / (2.0 * h);
    EXPECT_NEAR(lambda_heat_derivative(f1, f2, t) / fd, 1.0, 1e-5);
  }
  EXPECT_NEAR(lambda_heat_derivative(f1, f1, 0.3), 0.0, 1e-14);
}

TEST(Forms, LambdaHeatOfEqualGaussiansIsMass) {
  const Field f = preset("gaussian");
  // (u u)^{1/2} = u and the heat flow conserves mass
  EXPECT_NEAR(lambda_heat(f, f, 0.4), integrate(f).real(), 1e-10);
}

TEST(Forms, MehlerTermsMatchDifferencesAndSecondVanishes) {
  const Field f1 = preset("two_bump");
  const Field f2 = preset("random_bump(5)");
  const double t = 0.5;
  const double h = 1e-4 * t;
  const double fd =
      (lambda_mehler_terms(f1, f2, t + h).lambda - lambda_mehler_terms(f1, f2, t - h).lambda) / (2.0 * h);
  const MehlerTerms m = lambda_mehler_terms(f1, f2, t);
  EXPECT_NEAR((m.first + m.second) / fd, 1.0, 1e-6);
  EXPECT_LT(std::abs(m.second), 1e-6 * m.first);
}

TEST(Forms, Q66DerivativeMatchesDifferences) {
  const Field f = preset("two_bump");
  const MixedNormSpec spec = make_triple(1, 6, 6);
  const double t = 0.5;
  const double h = 1e-4 * t;
  const double fd = (std::pow(q_flow(f, spec, t + h), 6) - std::pow(q_flow(f, spec, t - h), 6)) / (2.0 * h);
  EXPECT_NEAR(q66_derivative(f, t).value / fd, 1.0, 1e-3);
}

TEST(Forms, HeatLogGradientOfGaussian) {
  // log e^{tD} e^{-x^2} has gradient -2x / (1 + 4t)
  const Field f = preset("gaussian");
  const double t = 0.3;
  const GridSpec target = make_grid(1, 10.0, 64);
  const std::vector<Field> g = heat_log_gradient(f, t, target);
  ASSERT_EQ(g.size(), 1u);
  for (std::size_t i = 0; i < target.size(); ++i) {
    EXPECT_NEAR(g[0][i].real(), -2.0 * target.coordinate(i) / (1.0 + 4.0 * t), 1e-8);
  }
}

}  // namespace
}  // namespace hfm
