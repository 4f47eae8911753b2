#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "levyq/levyq.hpp"
#include "oracle_values.hpp"

using namespace levyq;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

}  // namespace

TEST(Omega, Values) {
  EXPECT_EQ(omega(0), 0);
  EXPECT_DOUBLE_EQ(omega(2), 1.0 / 3);
  EXPECT_EQ(omega(kInf), 0.5);
  EXPECT_EQ(omega(-kInf), -0.5);
  for (double x : {-5.0, -0.3, 0.1, 1.0, 40.0}) {
    EXPECT_LE(std::abs(omega(x)), std::abs(x) / 2);
    EXPECT_LT(omega(x), omega(x + 0.01));
  }
}

TEST(Iota, Values) {
  EXPECT_EQ(iota(R("1/3")), 2);
  EXPECT_DOUBLE_EQ(omega(iota(R("1/3"))), 1.0 / 3);
  EXPECT_EQ(iota(R("1/2")), kInf);
  EXPECT_EQ(omega(iota(R("1/2"))), 0.5);
  EXPECT_EQ(iota(R("0")), 0);
  EXPECT_EQ(iota(R("1")), 0);
  EXPECT_EQ(iota(R("2/5")), 4);
  EXPECT_EQ(iota(R("3/8")), kInf);
}

TEST(Iota, MatchesScanAndDistFormula) {
  for (std::int64_t q = 1; q <= 40; ++q) {
    for (std::int64_t p = 0; p <= q; ++p) {
      const Rational r(p, q);
      EXPECT_EQ(iota(r), iota_scan(r, 200)) << p << "/" << q;
      if (r.den() % 2 == 1) {
        // limsup over n of dist(n p/q, Z) by direct enumeration.
        double worst = 0;
        for (std::int64_t n = 1; n <= 2 * r.den(); ++n) {
          const double v = static_cast<double>(n * r.num() % r.den()) / static_cast<double>(r.den());
          worst = std::max(worst, std::min(v, 1 - v));
        }
        EXPECT_NEAR(omega(iota(r)), worst, 1e-15) << p << "/" << q;
      }
    }
  }
}

TEST(Polylog, SmallArgumentAndNormalConstant) {
  EXPECT_EQ(polylog_half(0), 0);
  const double z = 1e-4;
  EXPECT_NEAR(polylog_half(z), z + z * z / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(polylog_half(z), oracle::kLi12Small, 1e-17);
  const double zn = -1 / std::sqrt(2 * std::numbers::pi);
  const double c = -std::sqrt(std::numbers::pi / 2) * polylog_half(zn);
  EXPECT_NEAR(c, oracle::kLimitBestNormal, 1e-14);
  // Printed elsewhere truncated to 0.3931.
  EXPECT_EQ(std::floor(c * 1e4), 3931);
  EXPECT_THROW(polylog_half(1.0), std::domain_error);
}

TEST(LimitUniform, Examples) {
  EXPECT_EQ(limit_uniform(Distribution::exponential(2), 1).limsup.value, 0.5);
  EXPECT_DOUBLE_EQ(limit_uniform(Distribution::uniform(0, 1), 1).limsup.value, 0.25);
  for (const char* a : {"1/3", "2/5", "1/2", "1/4"}) {
    for (double b : {1.5, 2.0, 3.0, 6.0}) {
      for (double eps : {0.5, 1.0}) {
        const auto d = Distribution::atom_uniform_mixture(R(a), b);
        const double av = R(a).value();
        const double expect = std::max(omega(eps * (b - 1) / (1 - av)), omega(iota(R(a))));
        const auto lim = limit_uniform(d, eps);
        EXPECT_NEAR(lim.limsup.value, expect, 1e-12) << a << " " << b;
        EXPECT_NEAR(lim.liminf_bound.value, omega(eps * (b - 1) / (1 - av)), 1e-12);
      }
    }
  }
  EXPECT_EQ(limit_uniform(Distribution::cantor(), 1).limsup.value, 0.5);
  EXPECT_EQ(limit_uniform(Distribution::inverse_cantor(), 1).limsup.value, 0.5);
  EXPECT_EQ(limit_uniform(Distribution::two_point(R("3/10")), 1).limsup.value, 0.5);
  EXPECT_DOUBLE_EQ(limit_uniform(Distribution::two_point(R("1/3")), 1).limsup.value, 1.0 / 3);
  EXPECT_EQ(limit_uniform(Distribution::point_mass(4), 1).limsup.value, 0);
}

TEST(LimitBest, ClosedFormsAndOracle) {
  EXPECT_NEAR(limit_best(Distribution::exponential(1), 1).value, oracle::kLimitBestExp1, 1e-9);
  EXPECT_NEAR(limit_best(Distribution::pareto(1), 1).value, oracle::kLimitBestPareto1, 1e-9);
  EXPECT_NEAR(limit_best(Distribution::normal(0, 1), 1).value, oracle::kLimitBestNormal, 1e-9);
  EXPECT_NEAR(limit_best(Distribution::benford(2), 1).value, oracle::kLimitBestBenford2, 1e-9);
  EXPECT_NEAR(limit_best(Distribution::benford(10), 1).value, oracle::kLimitBestBenford10, 1e-9);
  for (const auto& d : {Distribution::exponential(2), Distribution::benford(10), Distribution::pareto(1),
                        Distribution::normal(1, 4), Distribution::uniform(-1, 3),
                        Distribution::atom_uniform_mixture(R("2/5"), 4)}) {
    for (double eps : {0.3, 1.0, 2.5}) {
      const auto r = limit_best(d, eps);
      const auto cf = r.component("closed_form");
      ASSERT_TRUE(cf.has_value()) << d.to_string();
      EXPECT_NEAR(r.value, *cf, 1e-9) << d.to_string() << " eps=" << eps;
      EXPECT_NEAR(*r.component("primal"), *r.component("dual"), 1e-8);
      EXPECT_GE(r.value, 0);
      EXPECT_LT(r.value, 0.5);
    }
  }
}

TEST(LimitBest, SingularSpecsGiveZero) {
  for (const auto& d : {Distribution::cantor(), Distribution::inverse_cantor(), Distribution::two_point(R("3/10")),
                        Distribution::point_mass(1)})
    EXPECT_EQ(limit_best(d, 1).value, 0) << d.to_string();
}

TEST(LimitBest, JensenOrdering) {
  for (const auto& d : {Distribution::exponential(1), Distribution::benford(10), Distribution::pareto(1),
                        Distribution::normal(0, 1), Distribution::uniform(0, 1),
                        Distribution::atom_uniform_mixture(R("1/3"), 3)}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto u = limit_uniform(d, eps);
      const double best = limit_best(d, eps).value;
      EXPECT_LE(best, u.liminf_bound.value + 1e-12) << d.to_string();
      EXPECT_LE(u.liminf_bound.value, u.limsup.value + 1e-12) << d.to_string();
    }
  }
}

TEST(LimitBest, ConvergenceAlongPowersOfTwo) {
  SolverOptions fast;
  fast.self_check = false;
  for (const auto& d : {Distribution::exponential(1), Distribution::benford(10), Distribution::pareto(1),
                        Distribution::uniform(0, 1)}) {
    const double lim = limit_best(d, 1).value;
    double prev = kInf;
    for (int k = 3; k <= 9; ++k) {
      const std::size_t n = std::size_t{1} << k;
      const double gap = std::abs(static_cast<double>(n) * best_unconstrained(d, n, 1, fast).error - lim);
      EXPECT_LE(gap, prev + 1e-10) << d.to_string() << " n=" << n;
      prev = gap;
    }
  }
}

TEST(SecondOrderUniform, Exponential) {
  for (double a : {1.0, 2.0}) {
    for (double eps : {0.5, 1.0}) {
      const auto r = second_order_uniform(Distribution::exponential(a), eps, 1000);
      EXPECT_NEAR(r.value, 0.5 - a / (4 * eps * 1000), 1e-4);
    }
  }
}

TEST(SecondOrderUniform, Benford) {
  for (double b : {2.0, 10.0}) {
    const double eps = 1;
    const double c = omega(eps * b * std::log(b));
    const auto r = second_order_uniform(Distribution::benford(b), eps, 1000);
    EXPECT_NEAR(r.value, c - c * c / (b * eps) / 1000, 1e-4) << b;
  }
}

TEST(SecondOrderUniform, ParetoHalfAndNormal) {
  for (std::size_t n : {4, 16, 100}) {
    const double nd = static_cast<double>(n);
    EXPECT_NEAR(second_order_uniform(Distribution::pareto(0.5), 1, n).value, 0.5 - 0.03125 / (nd * nd * nd), 1e-12);
  }
  const auto r = second_order_uniform(Distribution::normal(0, 1), 1, 512);
  EXPECT_NEAR(r.value, 0.5 - std::sqrt(std::log(512.0)) / 512 / (2 * std::sqrt(2.0)), 1e-15);
  EXPECT_THROW(second_order_uniform(Distribution::uniform(0, 1), 1, 10), UnsupportedError);
  EXPECT_THROW(second_order_uniform(Distribution::cantor(), 1, 10), UnsupportedError);
}

TEST(SecondOrderBest, Constants) {
  const auto ph = second_order_best(Distribution::pareto(0.5), 1);
  EXPECT_NEAR(ph.c1, oracle::kParetoHalfC1, 1e-9);
  EXPECT_NEAR(ph.c2, oracle::kParetoHalfC2, 1e-8);
  EXPECT_NEAR(ph.c1, 0.4508, 5e-5);
  EXPECT_NEAR(ph.c2, 0.9102, 1e-4);

  const auto p1 = second_order_best(Distribution::pareto(1), 1);
  for (std::size_t n : {2, 10, 100}) {
    const double nd = static_cast<double>(n);
    EXPECT_NEAR(p1.predict(n), oracle::kLimitBestPareto1 + oracle::kPareto1SecondCoeff / (nd * nd), 1e-9);
  }

  for (double a : {1.0, 2.0}) {
    for (double eps : {0.5, 1.0, 3.0}) {
      const auto e = second_order_best(Distribution::exponential(a), eps);
      EXPECT_NEAR(e.c1 * e.c1 * e.c2 / 12, -a * a * e.c1 * e.c1 / (6 * eps * (a + eps)), 1e-9);
    }
  }

  const auto nm = second_order_best(Distribution::normal(0, 1), 1);
  EXPECT_FALSE(nm.c2_finite);
  EXPECT_EQ(nm.c2, -kInf);
  EXPECT_THROW(second_order_best(Distribution::two_point(R("1/2")), 1), UnsupportedError);
}

TEST(SecondOrderBest, TracksSolverErrors) {
  const auto p1 = second_order_best(Distribution::pareto(1), 1);
  const auto d = Distribution::pareto(1);
  for (std::size_t n : {32, 64}) {
    const double nd = static_cast<double>(n);
    const double got = nd * best_unconstrained(d, n, 1).error;
    EXPECT_NEAR(got, p1.predict(n), 0.2 * std::abs(p1.predict(n) - p1.c1)) << n;
  }
}

TEST(PointDensity, ClosedForms) {
  const PointDensity pe(Distribution::exponential(1), 1);
  const PointDensity pn(Distribution::normal(0, 1), 1);
  EXPECT_NEAR(pe(0), oracle::kDensityExp_0, 1e-9);
  EXPECT_NEAR(pe(0.5), oracle::kDensityExp_0p5, 1e-9);
  EXPECT_NEAR(pe(2), oracle::kDensityExp_2, 1e-9);
  EXPECT_NEAR(pn(0), oracle::kDensityNormal_0, 1e-9);
  EXPECT_NEAR(pn(0.5), oracle::kDensityNormal_0p5, 1e-9);
  EXPECT_NEAR(pn(2), oracle::kDensityNormal_2, 1e-9);
  EXPECT_EQ(pe(-1), 0);
  // cdf of 1/((1 + e^x) log 2) is 1 - log(1 + e^-x)/log 2.
  EXPECT_NEAR(pe.cdf(1), 1 - std::log1p(std::exp(-1.0)) / std::log(2.0), 1e-10);
  const PointDensity pu(Distribution::uniform(0, 1), 1);
  for (double x : {0.1, 0.5, 0.9}) EXPECT_NEAR(pu(x), 1, 1e-12);
  EXPECT_NEAR(point_density(Distribution::exponential(1), 1, 0), oracle::kDensityExp_0, 1e-9);
}

TEST(PointDensity, IntegratesToOne) {
  for (const auto& d : {Distribution::exponential(1), Distribution::normal(0, 1), Distribution::benford(10),
                        Distribution::pareto(1), Distribution::uniform(2, 5),
                        Distribution::atom_uniform_mixture(R("1/3"), 3)}) {
    for (double eps : {0.5, 2.0}) {
      const PointDensity p(d, eps);
      const auto pieces = detail::density_pieces(d);
      const auto q = integrate_pieces([&](double x) { return p(x); }, pieces, 1e-14, 1e-13);
      EXPECT_NEAR(q.value, 1, 1e-8) << d.to_string();
      for (int k = -20; k <= 20; ++k) EXPECT_GE(p(k * 0.5), 0);
      EXPECT_EQ(p.cdf(kInf), 1);
      EXPECT_NEAR(p.cdf(1e9), 1, 1e-8);
    }
  }
  EXPECT_THROW(PointDensity(Distribution::cantor(), 1), UnsupportedError);
}

TEST(LimsupValueSet, RationalAtomBattery) {
  // Atoms of the inverse measure at rational locations give limsup values in
  // [0, 1/3) or in {Omega(2m)} with 1/2 included.
  std::vector<Distribution> battery;
  for (const char* a : {"1/3", "2/5", "1/2", "3/7", "1/4", "4/9", "5/11"}) {
    battery.push_back(Distribution::two_point(R(a)));
    for (double b : {1.2, 2.0, 4.0}) battery.push_back(Distribution::atom_uniform_mixture(R(a), b));
  }
  battery.push_back(Distribution::uniform(0, 1));
  battery.push_back(Distribution::empirical({{0.0, 0.25}, {1.0, 0.5}, {3.0, 0.25}},
                                            std::vector<Rational>{R("1/4"), R("1/2"), R("1/4")}));
  battery.push_back(Distribution::empirical({{0.0, 1.0 / 3}, {1.0, 1.0 / 3}, {3.0, 1.0 / 3}},
                                            std::vector<Rational>{R("1/3"), R("1/3"), R("1/3")}));
  for (const auto& d : battery) {
    for (double eps : {0.25, 1.0}) {
      const auto u = limit_uniform(d, eps);
      EXPECT_TRUE(limsup_admissible(u.limsup.value, u.liminf_bound.value)) << d.to_string();
      EXPECT_GE(u.limsup.value, 0);
      EXPECT_LE(u.limsup.value, 0.5);
    }
  }
  EXPECT_THROW(limit_uniform(Distribution::empirical({{0.0, 0.25}, {1.0, 0.75}}), 1), UnsupportedError);
  EXPECT_FALSE(limsup_admissible(0.45, 0.2));
  EXPECT_TRUE(limsup_admissible(0.45, 0.45));
  EXPECT_TRUE(limsup_admissible(0.4, 0.1));
}
