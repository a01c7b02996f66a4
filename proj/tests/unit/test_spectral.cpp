#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "halfline/error.hpp"
#include "halfline/exactalg.hpp"
#include "halfline/spectral.hpp"
#include "halfline/tridiag.hpp"

using namespace halfline;

namespace {

Potential three_periodic() {
  return Potential::periodic({Scalar::rational(1, 2), 2, Scalar::rational(1, 2)});
}

// |trace of the monodromy| by direct rational multiplication.
mpq_class abs_trace(const std::vector<mpq_class>& word, const mpq_class& z) {
  mpq_class a = 1, b = 0, c = 0, d = 1;
  for (const auto& v : word) {
    // [[0,1],[-1,z-v]] * [[a,b],[c,d]]
    mpq_class na = c, nb = d;
    mpq_class nc = -a + (z - v) * c, nd = -b + (z - v) * d;
    a = na; b = nb; c = nc; d = nd;
  }
  return abs(mpq_class(a + d));
}

}  // namespace

TEST(Tridiag, ConstantPotentialClosedForm) {
  Potential four = Potential::periodic_integers({4});
  for (Index m = 1; m <= 200; ++m) {
    std::vector<double> ev = truncation_spectrum(four, 0, m - 1);
    ASSERT_EQ(ev.size(), static_cast<std::size_t>(m));
    std::vector<double> expect;
    for (Index k = 1; k <= m; ++k) expect.push_back(4.0 + 2.0 * std::cos(k * std::numbers::pi / (m + 1)));
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < ev.size(); ++i) ASSERT_NEAR(ev[i], expect[i], 1e-10) << "m=" << m;
  }
}

TEST(Tridiag, CauchyInterlacing) {
  Potential p = Potential::random(3, {-2, 0, 1, 5}, 100, 100, Scalar(0));
  for (Index m = 2; m <= 60; ++m) {
    auto big = truncation_spectrum(p, 0, m);
    auto small = truncation_spectrum(p, 0, m - 1);
    for (std::size_t i = 0; i < small.size(); ++i) {
      ASSERT_LE(big[i], small[i] + 1e-11);
      ASSERT_LE(small[i], big[i + 1] + 1e-11);
    }
  }
}

TEST(Tridiag, SolveResidualAndGershgorin) {
  SymTridiag a({4, 4, 4, 4}, {1, 1, 1});
  std::vector<double> b = {1, 0, 0, 0};
  TridiagSolve s = solve(a, b);
  EXPECT_LT(s.residual, 1e-14);
  auto [lo, hi] = a.gershgorin();
  EXPECT_LE(lo, 2.0);
  EXPECT_GE(hi, 6.0);
  SymTridiag singular({0, 0, 0}, {1, 1});
  EXPECT_THROW(solve(singular, std::vector<double>{1, 0, 0}), SingularSection);
}

TEST(Bands, ZeroPotentialIsMinusTwoToTwo) {
  BandSet bs = bands(discriminant(Potential::periodic_integers({0})));
  ASSERT_EQ(bs.bands.size(), 1u);
  EXPECT_TRUE(bs.bands[0].lower.exact());
  EXPECT_EQ(bs.bands[0].lower.lo, -2);
  EXPECT_EQ(bs.bands[0].upper.lo, 2);
  EXPECT_TRUE(bs.gaps.empty());
}

TEST(Bands, ThreePeriodicStructure) {
  Discriminant d = discriminant(three_periodic());
  BandSet bs = bands(d);
  EXPECT_EQ(bs.period, 3);
  ASSERT_LE(bs.bands.size(), 3u);
  EXPECT_EQ(bs.gaps.size() + 1, bs.bands.size());
  EXPECT_FALSE(bs.contains(0.0));
  for (const auto& b : bs.bands) {
    EXPECT_LE(b.upper.width(), default_edge_width());
    EXPECT_LE(b.lo(), b.hi());
    EXPECT_NEAR(std::abs(d.trace(b.lo())), 2.0, 1e-9);
    EXPECT_NEAR(std::abs(d.trace(b.hi())), 2.0, 1e-9);
  }
  EXPECT_TRUE(bs.gap_index(0.0).has_value());
}

TEST(Bands, ExactProbesAgreeWithDirectTrace) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<mpq_class> word(1 + rng() % 5);
    std::vector<Scalar> sw;
    for (auto& v : word) {
      v = mpq_class(static_cast<long>(rng() % 13) - 6, static_cast<long>(1 + rng() % 3));
      v.canonicalize();
      sw.emplace_back(v);
    }
    Potential p = Potential::periodic(sw, 0, Regime::rational);
    Discriminant d = discriminant(p);
    BandSet bs = bands(d);
    EXPECT_LE(bs.bands.size(), word.size());
    for (int k = 0; k < 200; ++k) {
      mpq_class z(static_cast<long>(rng() % 2001) - 1000, 97);
      z.canonicalize();
      const bool in = abs_trace(word, z) <= 2;
      ASSERT_EQ(in_bands_exact(d, z), in);
      const double zd = z.get_d();
      if (bs.distance(zd) > 1e-9) ASSERT_FALSE(in);
      if (in) ASSERT_TRUE(bs.contains(zd, 1e-9));
    }
  }
}

TEST(Bands, UnionMergesTouchingBands) {
  BandSet a = bands(discriminant(Potential::periodic_integers({0})));
  BandSet b = bands(discriminant(Potential::periodic_integers({4})));
  BandSet u = band_union({a, b});
  ASSERT_EQ(u.bands.size(), 1u);
  EXPECT_EQ(u.bands[0].lo(), -2.0);
  EXPECT_EQ(u.bands[0].hi(), 6.0);
  BandSet c = bands(discriminant(Potential::periodic_integers({5})));
  EXPECT_EQ(band_union({a, c}).bands.size(), 2u);
}

TEST(Dirichlet, ThreePeriodicEigenvalueAtZero) {
  Potential p = three_periodic();
  BandSet bs = bands(discriminant(p));
  DirichletSpectrumReport rep = dirichlet_eigenvalues(p, bs);
  auto it = std::find_if(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                         [](const DirichletEigenvalue& e) { return e.root.exact() && e.root.lo == 0; });
  ASSERT_NE(it, rep.eigenvalues.end());
  EXPECT_TRUE(it->cross_validated);
  EXPECT_LT(it->truncation_distance, 1e-6);
  EXPECT_NEAR(it->m22_abs, 0.5, 1e-15);
  EXPECT_TRUE(rep.at_most_one_per_gap);
  for (const auto& e : rep.eigenvalues) EXPECT_FALSE(bs.contains(e.value));
}

TEST(Dirichlet, IntegerPotentialsAvoidIntegers) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    std::vector<long> w(1 + rng() % 6);
    for (auto& x : w) x = static_cast<long>(rng() % 11) - 5;
    Potential p = Potential::periodic_integers(w);
    DirichletSpectrumReport rep = dirichlet_eigenvalues(p, bands(discriminant(p)));
    EXPECT_TRUE(rep.integers_avoided);
    for (const auto& e : rep.eigenvalues) {
      EXPECT_FALSE(e.root.exact() && e.root.lo.get_den() == 1) << e.value;
    }
    for (const auto& c : rep.integer_certificates) EXPECT_FALSE(c.dirichlet_eigenvalue);
  }
}

TEST(SmallestSingularValue, ExactZeroIffDeterminantVanishes) {
  std::vector<Potential> ps = {three_periodic(), Potential::periodic_integers({0}),
                               Potential::periodic_integers({1, -1}),
                               Potential::periodic({Scalar::rational(-1, 3), 1}, 0, Regime::rational)};
  for (const auto& p : ps) {
    for (double z : {0.0, 1.0, -0.5}) {
      for (Index n = 1; n <= 40; ++n) {
        const bool singular = finite_section_determinant(p, Scalar(z), 0, n - 1).is_zero();
        const double s = smallest_singular_value(p, 0, n - 1, z);
        ASSERT_EQ(s == 0.0, singular) << p.kind_name() << " z=" << z << " n=" << n;
        if (!singular) ASSERT_GT(s, 0.0);
      }
    }
  }
}

TEST(SmallestSingularValue, ThreePeriodicSectionsPattern) {
  Potential p = three_periodic();
  for (Index k = 1; k <= 20; ++k) {
    EXPECT_EQ(smallest_singular_value(p, 0, 3 * k - 2, 0.0), 0.0);
    EXPECT_GT(smallest_singular_value(p, 0, 3 * k - 1, 0.0), 0.0);
  }
  const double s10 = smallest_singular_value(p, 0, 29, 0.0);
  const double s11 = smallest_singular_value(p, 0, 32, 0.0);
  EXPECT_NEAR(s11 / s10, 0.5, 0.02);
}

TEST(Pollution, ThreePeriodicPersistentCluster) {
  Potential p = three_periodic();
  BandSet bs = bands(discriminant(p));
  PollutionReport r = pollution_report(p, bs, {60, 90, 120, 150}, SectionSide::half_line);
  auto it = std::find_if(r.clusters.begin(), r.clusters.end(),
                         [](const PollutionCluster& c) { return std::abs(c.center) < 1e-6; });
  ASSERT_NE(it, r.clusters.end());
  EXPECT_TRUE(it->persistent);
  EXPECT_EQ(it->sizes.size(), 4u);
  ASSERT_EQ(r.in_band_count.size(), 4u);
  for (const auto& row : r.rows) {
    if (row.in_gap) EXPECT_TRUE(row.gap.has_value());
  }
}

TEST(Pollution, CenteredSections) {
  EXPECT_EQ(centered_section(10, SectionSide::half_line), std::make_pair(Index{0}, Index{9}));
  EXPECT_EQ(centered_section(10, SectionSide::full_line), std::make_pair(Index{-5}, Index{4}));
  EXPECT_EQ(centered_section(7, SectionSide::full_line), std::make_pair(Index{-3}, Index{3}));
  EXPECT_EQ(section_side_from_string(to_string(SectionSide::full_line)), SectionSide::full_line);
}
