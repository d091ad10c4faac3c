#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hfm/error.hpp"
#include "hfm/monotone.hpp"
#include "hfm/presets.hpp"
#include "hfm/reports.hpp"
#include "json.hpp"

namespace hfm {
namespace {

MonotoneSeries series(std::vector<double> v, double tol) {
  MonotoneSeries s;
  for (std::size_t i = 0; i < v.size(); ++i) s.t_values.push_back(1.0 + static_cast<double>(i));
  s.values = std::move(v);
  s.notes.assign(s.values.size(), "");
  s.tolerance = tol;
  assess(s);
  return s;
}

TEST(Monotone, VerdictUsesSlackRelativeToMaximum) {
  EXPECT_TRUE(series({1.0, 2.0, 2.0, 3.0}, 0.0).verdict);
  // drop of 0.01 against max 4: relative 2.5e-3
  const MonotoneSeries s = series({1.0, 4.0, 3.99, 4.0}, 1e-3);
  EXPECT_FALSE(s.verdict);
  EXPECT_NEAR(s.worst_violation, 0.0025, 1e-12);
  EXPECT_EQ(s.worst_index, 1u);
  EXPECT_TRUE(series({1.0, 4.0, 3.99, 4.0}, 3e-3).verdict);
}

TEST(Monotone, CumulativeVerdictLatchesFalse) {
  const MonotoneSeries s = series({1.0, 2.0, 1.0, 3.0}, 0.0);
  const std::vector<bool> c = s.cumulative_verdicts();
  EXPECT_TRUE(c[0]);
  EXPECT_TRUE(c[1]);
  EXPECT_FALSE(c[2]);
  EXPECT_FALSE(c[3]);
}

TEST(Monotone, GeometricAndLinearGrids) {
  ScanConfig c;
  const std::vector<double> t = t_grid(c);
  ASSERT_EQ(t.size(), 20u);
  EXPECT_DOUBLE_EQ(t.front(), 1e-2);
  EXPECT_DOUBLE_EQ(t.back(), 10.0);
  EXPECT_NEAR(t[1] / t[0], std::pow(1000.0, 1.0 / 19.0), 1e-12);
  c.grid_kind = GridKind::linear;
  c.t_min = 1.0;
  c.t_max = 2.0;
  c.t_count = 5;
  EXPECT_NEAR(t_grid(c)[1], 1.25, 1e-15);
  c.t_count = 2;
  EXPECT_THROW(t_grid(c), InvalidArgument);
  c.t_count = 5;
  c.t_min = 3.0;
  EXPECT_THROW(t_grid(c), InvalidArgument);
}

TEST(Monotone, FailedNodesAreAnnotated) {
  ScanConfig c;
  c.t_count = 4;
  const MonotoneSeries s = scan(
      "test",
      [](double t) {
        if (t > 0.5 && t < 5.0) throw NumericalError("boom");
        return t;
      },
      c);
  EXPECT_FALSE(s.complete);
  EXPECT_FALSE(s.verdict);
  EXPECT_TRUE(std::isnan(s.values[2]));
  EXPECT_EQ(s.notes[2], "boom");
  EXPECT_EQ(s.notes[0], "");
}

TEST(Monotone, HypothesesStamp) {
  Quantity q;
  q.spec = make_triple(1, 6, 6);
  EXPECT_TRUE(q.within_hypotheses());
  q.spec = make_triple(1, 5, 5);
  EXPECT_FALSE(q.within_hypotheses());
  q.kind = QuantityKind::q_mitigated;
  q.spec = make_triple(2, 4, 4);
  q.alpha = 0.75;
  EXPECT_TRUE(q.within_hypotheses());
  EXPECT_EQ(q.tag(), "q_mitigated(0.75;2,4,4)");
  q.kind = QuantityKind::q_modified;
  q.modified = make_modified(1, 7.0);
  EXPECT_FALSE(q.within_hypotheses());
  q.modified = make_modified(1, 8.0);
  EXPECT_TRUE(q.within_hypotheses());
  EXPECT_EQ(parse_quantity_kind("q_mehler"), QuantityKind::q_mehler);
  EXPECT_THROW(parse_quantity_kind("q_nope"), InvalidArgument);
}

TEST(Monotone, ScanOfFlowOnBumpIsNondecreasingAndSandwiched) {
  const Field f = sample(preset_by_name("two_bump", 1, 1), make_grid(1, 16.0, 512));
  Quantity q;
  q.spec = make_triple(1, 8, 4);
  ScanConfig c;
  c.t_count = 8;
  const MonotoneSeries s = scan(q, f, c);
  EXPECT_TRUE(s.verdict);
  ASSERT_TRUE(s.limits.has_value());
  for (double v : s.values) {
    EXPECT_GE(v, s.limits->q_zero * (1.0 - 1e-9));
    EXPECT_LE(v, s.limits->q_infinity * (1.0 + 1e-9));
  }
}

TEST(Monotone, PairQuantitiesNeedTwoFields) {
  const Field f = sample(preset_by_name("gaussian", 1, 1), make_grid(1, 16.0, 256));
  Quantity q;
  q.kind = QuantityKind::lambda_heat;
  EXPECT_THROW(scan(q, f, ScanConfig{}), InvalidArgument);
}

TEST(Monotone, DerivativeCheckOnKnownFunction) {
  const DerivativeCheck d = derivative_check([](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                                             {0.3, 1.0, 2.0});
  EXPECT_LT(d.max_rel_deviation, 1e-7);
  const DerivativeCheck z = derivative_check([](double) { return 1.0; }, [](double) { return 0.0; }, {1.0}, 1e-4, 1e-12);
  EXPECT_EQ(z.max_rel_deviation, 0.0);
  EXPECT_THROW(derivative_check([](double t) { return t; }, [](double) { return 1.0; }, {1.0}, 1e-20),
               InvalidArgument);
}

TEST(Monotone, ConstantsReportHitsClosedForms) {
  ConstantsConfig c;
  c.points_2d = 64;
  c.s_nodes = 129;
  const std::vector<ConstantReport> r = constants_report(c);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(r[0].exact, std::pow(12.0, -1.0 / 12.0), 1e-15);
  EXPECT_NEAR(r[1].exact, std::pow(2.0, -0.25), 1e-15);
  EXPECT_NEAR(r[2].exact, std::sqrt(0.5), 1e-15);
  for (const ConstantReport& x : r) {
    EXPECT_LT(x.rel_err, 1e-6) << x.name;
    EXPECT_TRUE(x.error.empty());
  }
}

TEST(Monotone, ConstantsReportRecordsUnderResolution) {
  ConstantsConfig c;
  c.points_1d = 64;
  c.points_2d = 64;
  const std::vector<ConstantReport> r = constants_report(c);
  EXPECT_TRUE(std::isnan(r[0].rel_err));
  EXPECT_FALSE(r[0].error.empty());
}

TEST(Reports, SeriesCsvLayouts) {
  const MonotoneSeries s = series({1.0, 2.0, 1.5}, 0.0);
  std::ostringstream a;
  write_series_csv(a, s);
  EXPECT_EQ(a.str(), "t,value,delta,cumulative_verdict\n1,1,0,1\n2,2,1,1\n3,1.5,-0.5,0\n");
  std::ostringstream b;
  write_series_violation_csv(b, s);
  EXPECT_EQ(b.str(), "t,value,delta,violation\n1,1,0,0\n2,2,1,0\n3,1.5,-0.5,0.25\n");
}

TEST(Reports, JsonDocuments) {
  MonotoneSeries s = series({1.0, std::nan(""), 2.0}, 1e-5);
  s.notes[1] = "under-resolved";
  s.within_hypotheses = false;
  const auto j = nlohmann::json::parse(series_json(s, make_grid(1, 16.0, 256)));
  EXPECT_EQ(j["values"][1], nullptr);
  EXPECT_EQ(j["failures"]["1"].get<std::string>(), "under-resolved");
  EXPECT_EQ(j["grid"]["points"], 256);
  EXPECT_FALSE(j["verdict"].get<bool>());
  EXPECT_TRUE(j.contains("guarantee"));

  FormCheck fc;
  fc.variant = "hz_d1";
  fc.lhs = 1.0;
  fc.rhs = 1.0 + 1e-9;
  fc.k = 2;
  fc.grid = make_grid(1, 16.0, 256);
  const auto k = nlohmann::json::parse(form_check_json(fc));
  for (const char* key : {"variant", "lhs", "rhs", "rel_err", "K", "seed", "grid"}) EXPECT_TRUE(k.contains(key)) << key;
}

TEST(Reports, AtomicWriteReplacesFile) {
  const auto dir = std::filesystem::temp_directory_path() / "hfm_atomic_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "x.json").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(content, "second");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(write_file_atomic((dir / "missing" / "y").string(), "z"), InvalidArgument);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace hfm
