#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "halfline/error.hpp"
#include "halfline/exactalg.hpp"
#include "halfline/ring.hpp"

using namespace halfline;

namespace {

// Bareiss elimination on an integer matrix; exact, no fractions.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// det (H - z)_{l..r} with every entry scaled by the common denominator D.
mpq_class brute_force_det(const Potential& p, const mpq_class& z, Index l, Index r) {
  const std::size_t n = static_cast<std::size_t>(r - l + 1);
  mpz_class d = z.get_den();
  for (Index k = l; k <= r; ++k) {
    mpz_class den = p(k).to_rational().get_den();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class diag = (p(l + static_cast<Index>(i)).to_rational() - z) * d;
    a[i][i] = diag.get_num();
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = d;
  }
  mpz_class dn;
  mpz_pow_ui(dn.get_mpz_t(), d.get_mpz_t(), n);
  mpq_class out(bareiss_det(a), dn);
  out.canonicalize();
  return out;
}

mpq_class random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 21) - 10;
  long den = static_cast<long>(rng() % 6) + 1;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

Potential random_rational_potential(std::mt19937_64& rng) {
  std::vector<Scalar> word(1 + rng() % 6);
  for (auto& s : word) s = Scalar(random_rational(rng));
  if (rng() % 2 == 0) return Potential::periodic(word, static_cast<Index>(rng() % 5));
  std::vector<Scalar> window(3 + rng() % 8);
  for (auto& s : window) s = Scalar(random_rational(rng));
  return Potential::explicit_window(window, -static_cast<Index>(rng() % 4), Scalar(random_rational(rng)),
                                    Regime::rational);
}

}  // namespace

TEST(FiniteSectionDeterminant, MatchesBareissOnRandomRationalPotentials) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    Potential p = random_rational_potential(rng);
    mpq_class z = random_rational(rng);
    for (Index size = 1; size <= 9; ++size) {
      for (Index l = -3; l <= 3; ++l) {
        const Index r = l + size - 1;
        Scalar got = finite_section_determinant(p, Scalar(z), l, r);
        ASSERT_EQ(got.to_rational(), brute_force_det(p, z, l, r))
            << "trial " << trial << " [" << l << "," << r << "]";
      }
    }
  }
}

TEST(FiniteSectionDeterminant, ZeroPotentialParityPattern) {
  Potential zero = Potential::periodic_integers({0});
  for (Index n = 1; n <= 399; ++n) {
    Scalar d = finite_section_determinant(zero, Scalar(0), 0, n - 1);
    ASSERT_EQ(d.regime(), Regime::integer);
    if (n % 2 == 1) {
      ASSERT_TRUE(d.is_zero()) << n;
    } else {
      ASSERT_EQ(d, Scalar((n / 2) % 2 == 0 ? 1 : -1)) << n;
    }
  }
}

TEST(TransferProduct, UnitDeterminantAllRegimes) {
  std::vector<std::pair<Potential, Scalar>> cases = {
      {Potential::periodic_integers({2, -1, 0, 3}), Scalar(1)},
      {Potential::periodic({Scalar::rational(1, 2), 2, Scalar::rational(1, 2)}), Scalar::rational(-1, 3)},
      {Potential::periodic({Scalar(GaussianInt(1, 1)), 0}, 0, Regime::gaussian_integer), Scalar(GaussianInt(0, 2))},
      {Potential::sturmian(), Scalar(1)},
  };
  for (const auto& [p, z] : cases) {
    for (Index l = -4; l <= 4; ++l) {
      TransferMatrix t = transfer_product(p, z, l, l + 17);
      EXPECT_EQ(t.det(), Scalar(1)) << p.kind_name();
    }
  }
  TransferMatrix f = transfer_product(Potential::periodic_integers({1}), Scalar(0.3), 0, 40);
  EXPECT_NEAR(f.det().to_double(), 1.0, 1e-9);
}

TEST(TransferProduct, TypedProductAgreesWithScalar) {
  Potential p = Potential::periodic_integers({3, -2, 1});
  auto typed = transfer_product_as<mpz_class>(p, mpz_class(2), -5, 11);
  auto generic = transfer_product(p, Scalar(2), -5, 11).m;
  EXPECT_EQ(Scalar(typed.a11), generic.a11);
  EXPECT_EQ(Scalar(typed.a12), generic.a12);
  EXPECT_EQ(Scalar(typed.a21), generic.a21);
  EXPECT_EQ(Scalar(typed.a22), generic.a22);
}

TEST(TransferProduct, RegimeMixRejected) {
  Potential g = Potential::periodic({Scalar(GaussianInt(0, 1))}, 0, Regime::gaussian_integer);
  EXPECT_THROW(transfer_product(g, Scalar::rational(1, 2), 0, 3), InvalidInput);
}

TEST(DirichletOrbit, IntegerOrbitStaysInRing) {
  Potential p = Potential::periodic_integers({0, 3});
  DirichletOrbit o = dirichlet_orbit(p, Scalar(1), 200);
  EXPECT_TRUE(o.in_ring);
  EXPECT_EQ(o.values[0], Scalar(0));
  EXPECT_EQ(o.values[1], Scalar(1));
  EXPECT_EQ(o.growth, Growth::growing);
  for (Index n = 0; n + 1 < o.last_index(); ++n) {
    Scalar lhs = o.at(n + 1);
    Scalar rhs = (Scalar(1) - p(n)) * o.at(n) - o.at(n - 1);
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(DirichletOrbit, ThreePeriodicDecaysAtZero) {
  Potential p = Potential::periodic({Scalar::rational(1, 2), 2, Scalar::rational(1, 2)});
  DirichletOrbit o = dirichlet_orbit(p, Scalar(0), 300);
  EXPECT_EQ(o.growth, Growth::decaying);
  EXPECT_NEAR(o.log_slope * 3, std::log(0.5), 1e-2);
  EXPECT_TRUE(o.at(2).is_zero());
}

TEST(Discriminant, ThreePeriodicValues) {
  Potential p = Potential::periodic({Scalar::rational(1, 2), 2, Scalar::rational(1, 2)});
  Discriminant d = discriminant(p);
  EXPECT_EQ(d(0), mpq_class(5, 2));
  Mat2<mpq_class> m = d.monodromy_at(0);
  EXPECT_EQ(m.a11, 2);
  EXPECT_EQ(m.a12, 0);
  EXPECT_EQ(m.a21, 0);
  EXPECT_EQ(m.a22, mpq_class(1, 2));
  EXPECT_EQ(d.trace.degree(), 3);
}

TEST(Discriminant, ShiftInvariance) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    std::vector<long> w(1 + rng() % 7);
    for (auto& x : w) x = static_cast<long>(rng() % 11) - 5;
    Potential p = Potential::periodic_integers(w);
    Discriminant base = discriminant(p);
    for (Index k = 1; k < static_cast<Index>(w.size()); ++k) {
      EXPECT_EQ(discriminant(shift(p, k)).trace, base.trace);
    }
  }
}

TEST(MonodromyTest, IntegerPotentialsNeverCertifyDirichlet) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    std::vector<long> w(1 + rng() % 8);
    for (auto& x : w) x = static_cast<long>(rng() % 11) - 5;
    Potential p = Potential::periodic_integers(w);
    for (long z = -8; z <= 8; ++z) {
      MonodromyCertificate c = monodromy_dirichlet_test(p, mpz_class(z));
      ASSERT_FALSE(c.dirichlet_eigenvalue);
      ASSERT_TRUE(c.unit_m22_when_m12_zero);
      ASSERT_EQ(c.det, 1);
      if (c.verdict != MonodromyVerdict::not_gap) ASSERT_GT(abs(c.trace), 2);
    }
  }
}

TEST(MonodromyTest, ZeroPotentialAtThreeIsGap) {
  MonodromyCertificate c = monodromy_dirichlet_test(Potential::periodic_integers({0}), mpz_class(3));
  EXPECT_EQ(c.trace, 3);
  EXPECT_NE(c.verdict, MonodromyVerdict::not_gap);
  EXPECT_EQ(monodromy_dirichlet_test(Potential::periodic_integers({0}), mpz_class(1)).verdict,
            MonodromyVerdict::not_gap);
}

TEST(Ring, IntegersAndGaussianIntegersAccepted) {
  for (int order : {1, 2, 4}) {
    RingValidation v = validate_ring(RingSpec(order), 3.0);
    EXPECT_TRUE(v.valid) << order << ": " << v.reason;
    EXPECT_NEAR(v.witness_modulus, 1.0, 1e-12);
  }
}

TEST(Ring, FifthRootsRejected) {
  RingValidation v = validate_ring(RingSpec(5), 2.0);
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.violated_condition, 4);
  EXPECT_LT(v.witness_modulus, 1.0);
}

TEST(Ring, PotentialOutsideRingRejected) {
  Potential g = Potential::periodic({Scalar(GaussianInt(1, 1))}, 0, Regime::gaussian_integer);
  EXPECT_TRUE(validate_ring(RingSpec(4), 2.0, &g).valid);
  RingValidation v = validate_ring(RingSpec(2), 2.0, &g);
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.violated_condition, 2);
}

TEST(Ring, CyclotomicArithmetic) {
  RingSpec r(4);
  EXPECT_EQ(r.rank(), 2);
  auto i = r.from_generators({1, 0, 0, 0});
  auto m1 = r.multiply(i, i);
  EXPECT_EQ(m1, r.negate(r.one()));
  EXPECT_THROW(RingSpec(0), InvalidInput);
  EXPECT_THROW(RingSpec(RingSpec::kMaxOrder + 1), InvalidInput);
}
