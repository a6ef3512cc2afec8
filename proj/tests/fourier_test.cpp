// Copyright 2026 The fqharmonic Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fqharmonic/fourier.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace fqh {
namespace {

constexpr double kTol = 1e-9;

ComplexGrid random_grid(const Space& s, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexGrid g(s);
  for (Index i = 0; i < s.size(); ++i) g[i] = Complex(n(rng), n(rng));
  return g;
}

PointSet random_subset(const Space& s, double density, std::mt19937& rng) {
  std::bernoulli_distribution keep(density);
  std::vector<Index> out;
  for (Index i = 0; i < s.size(); ++i) {
    if (keep(rng)) out.push_back(i);
  }
  return PointSet(s, out);
}

double max_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

TEST(FourierTest, DeltaAndConstant) {
  Space s(make_field(5, 1), 2);
  ComplexGrid delta(s);
  delta[0] = 1.0;
  ComplexGrid h = fourier_hat(delta);
  for (Index i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(h[i] - 1.0 / 25), 0, kTol);
  ComplexGrid c = fourier_hat(constant_grid(s, 1.0));
  EXPECT_NEAR(std::abs(c[0] - 1.0), 0, kTol);
  for (Index i = 1; i < s.size(); ++i) EXPECT_NEAR(std::abs(c[i]), 0, kTol);
}

TEST(FourierTest, SeparableTransformMatchesNaiveSum) {
  std::mt19937 rng(1);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {9, 2}, {3, 3}, {7, 2}}) {
    Space s(make_field_of_order(q), d);
    ComplexGrid g = random_grid(s, rng);
    const double inv = 1.0 / s.size();
    EXPECT_LT(max_diff(fourier_hat(g).values,
                       oracle::naive_transform(s, g.values, -1, inv)), kTol);
    EXPECT_LT(max_diff(fourier_vee(g).values,
                       oracle::naive_transform(s, g.values, +1, inv)), kTol);
    EXPECT_LT(max_diff(fourier_tilde(g).values,
                       oracle::naive_transform(s, g.values, -1, 1.0)), kTol * s.size());
  }
}

TEST(FourierTest, InversionAndPlancherel) {
  std::mt19937 rng(2);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 2}, {5, 3}, {9, 2}, {7, 2}}) {
    Space s(make_field_of_order(q), d);
    const double qd = s.size();
    for (int trial = 0; trial < 100; ++trial) {
      ComplexGrid g = random_grid(s, rng);
      const double scale = g.values.cwiseAbs().maxCoeff();
      ComplexGrid back = fourier_vee(fourier_tilde(g));
      ASSERT_LT(max_diff(back.values, g.values), kTol * scale);
      // f(x) = sum_m f^(m) chi(m.x)
      ComplexGrid hat = fourier_hat(g);
      ComplexGrid inv = character_transform(hat, +1, 1.0);
      ASSERT_LT(max_diff(inv.values, g.values), kTol * scale);
      const double lhs = hat.values.squaredNorm();
      const double rhs = g.values.squaredNorm() / qd;
      ASSERT_LT(std::abs(lhs - rhs), kTol * rhs);
    }
  }
}

TEST(FourierTest, TildeIsScaledVeeOfNegation) {
  std::mt19937 rng(3);
  Space s(make_field(5, 1), 3);
  ComplexGrid g = random_grid(s, rng);
  ComplexGrid t = fourier_tilde(g);
  ComplexGrid v = fourier_vee(g);
  for (Index x = 0; x < s.size(); ++x) {
    ASSERT_LT(std::abs(t[x] - static_cast<double>(s.size()) * v[s.neg(x)]), 1e-9 * s.size());
  }
}

TEST(FourierTest, ParaboloidClosedForm) {
  for (auto [q, d] : std::vector<std::pair<int, int>>{
           {3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {3, 4}, {9, 2}}) {
    Space s(make_field_of_order(q), d);
    Eigen::VectorXcd brute = oracle::naive_transform(
        s, indicator(enumerate_variety(s, Variety::paraboloid())).values, -1,
        1.0 / s.size());
    for (Index m = 0; m < s.size(); ++m) {
      ASSERT_LT(std::abs(paraboloid_hat_closed(s, s.decode(m)) - brute[m]), kTol)
          << q << " " << d << " " << m;
    }
  }
  Space s(make_field(3, 1), 2);
  EXPECT_NEAR(std::abs(paraboloid_hat_closed(s, s.decode(0)) - 1.0 / 3), 0, kTol);
  EXPECT_NEAR(std::abs(paraboloid_hat_closed(s, s.decode(s.encode(Point{Fq(1), Fq(0)})))), 0, kTol);
}

TEST(FourierTest, ParaboloidPrintedSignDiffersForEvenDimension) {
  // eta^{d-1}(m_d) in place of eta^{d-1}(-m_d) is off by eta(-1) here.
  FiniteField f = make_field(3, 1);
  Space s(f, 2);
  const Point m = {Fq(0), Fq(1)};
  const Complex printed = 1.0 / 9 * f.add_char(Fq(0)) *
                          static_cast<double>(f.quad_char(Fq(1))) * f.gauss_sum();
  const Complex brute = fourier_hat(indicator(enumerate_variety(s, Variety::paraboloid())))[s.encode(m)];
  EXPECT_LT(std::abs(brute + printed), kTol);
  EXPECT_LT(std::abs(brute - paraboloid_hat_closed(s, m)), kTol);
}

TEST(FourierTest, ParaboloidExampleValue) {
  FiniteField f = make_field(5, 1);
  Space s(f, 3);
  const Point m = {Fq(1), Fq(0), Fq(1)};
  const Complex brute = fourier_hat(indicator(enumerate_variety(s, Variety::paraboloid())))[s.encode(m)];
  const Complex expect = std::pow(5.0, -3) * f.add_char(f.inv(f.from_int(4))) *
                         complex_pow(f.gauss_sum(), 2);
  EXPECT_LT(std::abs(brute - expect), kTol);
}

TEST(FourierTest, SphereClosedForm) {
  for (int q : {3, 5, 7}) {
    for (int d = 2; d <= 4; ++d) {
      Space s(make_field_of_order(q), d);
      for (int j = 0; j < q; ++j) {
        const PointSet sj = enumerate_variety(s, Variety::sphere(Fq(j)));
        ComplexGrid hat = fourier_hat(indicator(sj));
        if (d == 2) {
          Eigen::VectorXcd brute = oracle::naive_transform(
              s, indicator(sj).values, -1, 1.0 / s.size());
          ASSERT_LT(max_diff(brute, hat.values), kTol);
        }
        for (Index m = 0; m < s.size(); ++m) {
          ASSERT_LT(std::abs(sphere_hat_closed(s, Fq(j), s.decode(m)) - hat[m]), kTol);
        }
        EXPECT_NEAR(hat[0].real(), static_cast<double>(sj.size()) / s.size(), kTol);
      }
    }
  }
}

TEST(FourierTest, ZeroSphereClosedForm) {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 2}, {7, 2}, {3, 6}}) {
    Space s(make_field_of_order(q), d);
    const PointSet s0 = enumerate_variety(s, Variety::sphere(Fq(0)));
    ComplexGrid hat = fourier_hat(indicator(s0));
    for (Index m = 0; m < s.size(); ++m) {
      ASSERT_LT(std::abs(zero_sphere_hat_closed(s, s.decode(m)) - hat[m]), kTol);
    }
  }
  Space s(make_field(3, 1), 6);
  const double density = zero_sphere_hat_closed(s, Point(6, Fq(0))).real();
  EXPECT_NEAR(density, 25.0 / 81, kTol);
  EXPECT_NEAR(density * s.size(), 225.0, 1e-6);
  Space bad(make_field(3, 1), 5);
  try {
    zero_sphere_hat_closed(bad, Point(5, Fq(0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHypothesisViolation);
  }
}

TEST(FourierTest, ExtensionOfPointMass) {
  FiniteField f = make_field(5, 1);
  Space s(f, 3);
  const PointSet v = enumerate_variety(s, Variety::paraboloid());
  const Index a = v[7];
  ComplexGrid g(s);
  g[a] = 1.0;
  ComplexGrid e = extension_inverse(g, v);
  for (Index m = 0; m < s.size(); ++m) {
    ASSERT_LT(std::abs(e[m] - f.add_char(s.dot(m, a)) / static_cast<double>(v.size())), kTol);
  }
  ComplexGrid all = extension_inverse(indicator(v), v);
  ComplexGrid hat = fourier_hat(indicator(v));
  for (Index m = 0; m < s.size(); ++m) {
    ASSERT_LT(std::abs(all[m] - static_cast<double>(s.size()) / v.size() * hat[s.neg(m)]), kTol);
  }
  ComplexGrid off(s);
  off[1] = 1.0;
  try {
    extension_inverse(off, v);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kSupportViolation);
  }
}

TEST(FourierTest, Norms) {
  Space s(make_field(3, 1), 3);
  ComplexGrid one = constant_grid(s, 1.0);
  EXPECT_NEAR(lr_norm(one, Exponent(2), Measure::counting()), std::sqrt(27.0), kTol);
  const PointSet v = enumerate_variety(s, Variety::sphere(Fq(1)));
  for (double r : {1.0, 1.5, 2.0, 4.0}) {
    EXPECT_NEAR(lr_norm(one, Exponent(r), Measure::surface(v)), 1.0, kTol);
  }
  EXPECT_NEAR(lr_norm(one, Exponent::infinity(), Measure::normalized()), 1.0, kTol);
  EXPECT_THROW(Exponent(0.5), Error);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexGrid g = random_grid(s, rng);
    double prev = 0;
    for (double r : {1.0, 1.25, 2.0, 3.0, 8.0}) {
      const double n = lr_norm(g, Exponent(r), Measure::surface(v));
      ASSERT_LE(prev, n * (1 + 1e-12));
      prev = n;
    }
    ASSERT_LE(prev, lr_norm(g, Exponent::infinity(), Measure::surface(v)) * (1 + 1e-12));
  }
}

TEST(FourierTest, RestrictionDistanceIdentity) {
  FiniteField f = make_field(5, 1);
  Space s(f, 2);
  PointSet origin(s, {0});
  for (int t = 1; t < 5; ++t) {
    IdentityCheck c = restriction_distance_identity(origin, Fq(t));
    const double expect =
        std::pow(5.0, -4) * enumerate_variety(s, Variety::sphere(Fq(t))).size();
    EXPECT_NEAR(c.lhs, expect, kTol);
    EXPECT_LT(c.relative_error(), kTol);
  }
  std::vector<Index> all(s.size());
  for (Index i = 0; i < s.size(); ++i) all[i] = i;
  IdentityCheck full = restriction_distance_identity(PointSet(s, all), Fq(1));
  EXPECT_NEAR(full.lhs, 0, kTol);
  EXPECT_NEAR(full.rhs, 0, kTol);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet a = random_subset(s, 0.3, rng);
    IdentityCheck c = restriction_distance_identity(a, Fq(1 + trial % 4));
    EXPECT_LE(std::abs(c.lhs - c.rhs), kTol * std::max(c.lhs, 1e-300));
  }
}

}  // namespace
}  // namespace fqh
