#include "hfm/presets.hpp"

#include <cmath>
#include <random>
#include <regex>

#include "hfm/error.hpp"

namespace hfm {

int GaussianMixture::dim() const {
  if (parts.empty()) throw InvalidArgument("empty Gaussian mixture");
  return parts.front().dim();
}

double GaussianMixture::operator()(const Point& x) const {
  double v = 0.0;
  for (const GaussianSpec& g : parts) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) r2 += (x[a] - g.center[a]) * (x[a] - g.center[a]);
    v += g.amplitude.real() * std::exp(-g.width.real() * r2);
  }
  return v;
}

Field sample(const GaussianMixture& m, const GridSpec& grid) {
  if (m.dim() != grid.dim()) throw InvalidArgument("mixture and grid dimensions differ");
  return sample_nonnegative(grid, [&](const Point& x) { return m(x); });
}

GaussianMixture gaussian_preset(int d) { return GaussianMixture{{centered_gaussian(d, 1.0, 1.0)}}; }

GaussianMixture two_bump_preset(int d) {
  if (d < 1 || d > 2) throw InvalidArgument("presets cover d = 1 and d = 2");
  GaussianSpec a = centered_gaussian(d, 1.0, 1.0);
  GaussianSpec b = centered_gaussian(d, 0.6, 1.0);
  a.center[0] = 1.0;
  b.center[0] = -1.2;
  if (d == 2) {
    a.center[1] = 0.5;
    b.center[1] = -0.4;
  }
  return GaussianMixture{{a, b}};
}

GaussianMixture random_bump_preset(int d, std::uint64_t seed) {
  if (d < 1 || d > 2) throw InvalidArgument("presets cover d = 1 and d = 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const int count = unit(rng) < 0.5 ? 2 : 3;
  GaussianMixture m;
  for (int k = 0; k < count; ++k) {
    GaussianSpec g = centered_gaussian(d, draw(0.3, 1.0), draw(0.8, 1.2));
    for (int a = 0; a < d; ++a) g.center[a] = draw(-1.5, 1.5);
    m.parts.push_back(g);
  }
  return m;
}

GaussianMixture preset_by_name(const std::string& name, int d, std::uint64_t default_seed) {
  if (name == "gaussian") return gaussian_preset(d);
  if (name == "two_bump") return two_bump_preset(d);
  if (name == "random_bump") return random_bump_preset(d, default_seed);
  static const std::regex seeded(R"(random_bump\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, seeded)) return random_bump_preset(d, std::stoull(m[1].str()));
  throw InvalidArgument("unknown data preset '" + name + "'");
}

}  // namespace hfm
