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


#include "fqharmonic/extension.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace fqh {
namespace {

TEST(ExtensionTest, CriticalExponentExamples) {
  EXPECT_EQ(critical_r2(4, 1), Rational(3));
  EXPECT_EQ(critical_r2(3, 0), Rational(3));
  EXPECT_EQ(critical_r2(5, 2), Rational(3));
  EXPECT_THROW(critical_r2(4, 3), Error);
  EXPECT_THROW(critical_r2(4, -1), Error);
  EXPECT_THROW(critical_r2(1, 0), Error);
}

TEST(ExtensionTest, CriticalExponentFourCases) {
  for (int d = 2; d <= 21; ++d) {
    for (int q : {3, 5, 7, 9}) {
      const Rational r2 = critical_r2(d, paraboloid_max_subspace_dim(d, q));
      const bool minus_one_square = q % 4 == 1;
      Rational expect;
      if (d % 2 == 0) {
        expect = Rational(2 * d + 4, d);
      } else if (d % 4 == 3 && !minus_one_square) {
        expect = Rational(2 * d + 6, d + 1);
      } else {
        expect = Rational(2 * d + 2, d - 1);
      }
      EXPECT_EQ(r2, expect) << d << " " << q;
    }
  }
}

TEST(ExtensionTest, MaxSubspaceDimMatchesSearch) {
  for (auto [q, d] : std::vector<std::pair<int, int>>{
           {3, 2}, {3, 3}, {5, 3}, {7, 3}, {3, 4}, {5, 4}, {3, 5}}) {
    Space s(make_field_of_order(q), d);
    EXPECT_EQ(paraboloid_max_subspace_dim(d, q),
              max_affine_subspace_dim(s, Variety::paraboloid()))
        << q << " " << d;
  }
}

TEST(ExtensionTest, ExactExponents) {
  EXPECT_EQ(ExactExponent::of(2).conjugate(), ExactExponent::of(2));
  EXPECT_TRUE(ExactExponent::of(1).conjugate().is_infinite());
  EXPECT_EQ(ExactExponent::of(4, 3).conjugate(), ExactExponent::of(4));
  EXPECT_EQ(ExactExponent::infinity().conjugate(), ExactExponent::of(1));
  EXPECT_EQ(ExactExponent::of(18, 5).str(), "18/5");
  EXPECT_EQ(ExactExponent::infinity().str(), "inf");
  EXPECT_THROW(ExactExponent::of(1, 2), Error);
  EXPECT_THROW(ExactExponent::infinity().value(), Error);
  EXPECT_EQ(stein_tomas_pair(3).r, ExactExponent::of(4));
  EXPECT_EQ(stein_tomas_l4_pair(5).p, ExactExponent::of(16, 10));
}

TEST(ExtensionTest, NecessaryRegionCorners) {
  for (int d = 2; d <= 21; ++d) {
    for (int k = 0; k <= d - 2; ++k) {
      const auto corners = necessary_corners(d, k);
      for (const auto& c : corners) {
        EXPECT_TRUE(necessary_region(d, k, c)) << d << " " << k;
        EXPECT_TRUE(on_necessary_boundary(d, k, c));
      }
      const Rational cap(d - 1, 2 * d);
      EXPECT_EQ(corners[1], RationalPoint(Rational(0), cap));
      // The third corner is where both constraints are tight.
      const auto [x, y] = corners[2];
      EXPECT_EQ(y, cap);
      EXPECT_EQ(y, (1 - x) * Rational(d - 1 - k, d - k));
      // Stepping past the cap or the slanted edge leaves the region.
      EXPECT_FALSE(necessary_region(d, k, {x, y + Rational(1, 1000)}));
      EXPECT_FALSE(necessary_region(d, k, {x + Rational(1, 1000), y}));
      EXPECT_TRUE(necessary_region(d, k, {x / 2, y / 2}));
      EXPECT_FALSE(on_necessary_boundary(d, k, {x / 2, y / 2}));
    }
  }
}

TEST(ExtensionTest, NecessaryRegionExamples) {
  for (int d = 2; d <= 9; ++d) {
    EXPECT_TRUE(necessary_region(
        d, 0, ExponentPair{ExactExponent::infinity(), ExactExponent::of(2 * d, d - 1)}));
    EXPECT_TRUE(necessary_region(d, 0, stein_tomas_pair(d)));
    // p = 1 only admits r = inf.
    EXPECT_FALSE(necessary_region(
        d, 0, ExponentPair{ExactExponent::of(1), ExactExponent::of(2 * d, d - 1)}));
    EXPECT_TRUE(necessary_region(
        d, 0, ExponentPair{ExactExponent::of(1), ExactExponent::infinity()}));
    EXPECT_FALSE(necessary_region(
        d, 0, ExponentPair{ExactExponent::of(2), ExactExponent::of(2)}));
  }
  // Stein-Tomas holds with k up to (d-1)/2 on the slanted edge.
  EXPECT_TRUE(necessary_region(5, 2, stein_tomas_pair(5)));
  EXPECT_TRUE(on_necessary_boundary(5, 2, {Rational(1, 2), Rational(1, 3)}));
}

TEST(ExtensionTest, SweepBasics) {
  Space s(make_field(5, 1), 2);
  const ExponentPair e{ExactExponent::of(2), ExactExponent::of(4)};
  SweepOptions opt;
  opt.trials = 30;
  opt.seed = 7;
  opt.cross_check_l4 = true;
  for (Variety v : {Variety::paraboloid(), Variety::sphere(Fq(1)), Variety::sphere(Fq(2))}) {
    for (Family fam : {Family::kFull, Family::kRandomSubsets, Family::kSubspaces,
                       Family::kRandomComplex, Family::kSinglePoints}) {
      RatioReport r = ratio_sweep(s, v, e, fam, opt);
      EXPECT_GE(r.ratio_of_one, 1.0 - 1e-12);
      EXPECT_GE(r.max_ratio, r.ratio_of_one);
      EXPECT_TRUE(r.monotone) << to_string(fam);
      EXPECT_LE(r.l4_identity_error, 1e-9);
      EXPECT_LT(r.argmax, r.members);
    }
  }
}

TEST(ExtensionTest, SweepIsDeterministic) {
  Space s(make_field(5, 1), 3);
  const ExponentPair e = stein_tomas_pair(3);
  SweepOptions a, b;
  a.seed = b.seed = 99;
  a.trials = b.trials = 12;
  a.threads = 1;
  b.threads = 4;
  RatioReport x = ratio_sweep(s, Variety::sphere(Fq(1)), e, Family::kRandomComplex, a);
  RatioReport y = ratio_sweep(s, Variety::sphere(Fq(1)), e, Family::kRandomComplex, b);
  EXPECT_EQ(x.max_ratio, y.max_ratio);
  EXPECT_EQ(x.argmax, y.argmax);
}

TEST(ExtensionTest, SinglePointClosedForm) {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {3, 3}}) {
    Space s(make_field_of_order(q), d);
    const PointSet v = enumerate_variety(s, Variety::paraboloid());
    for (const ExponentPair& e :
         {ExponentPair{ExactExponent::of(2), ExactExponent::of(4)},
          ExponentPair{ExactExponent::of(3, 2), ExactExponent::of(5)},
          ExponentPair{ExactExponent::infinity(), ExactExponent::of(3)}}) {
      ComplexGrid g(s);
      g[v[v.size() / 2]] = 1.0;
      const double nv = static_cast<double>(v.size());
      const double r = boost::rational_cast<double>(e.r.reciprocal());
      const double p = boost::rational_cast<double>(e.p.reciprocal());
      const double expect = std::pow(static_cast<double>(s.size()), r) * std::pow(nv, p - 1);
      EXPECT_NEAR(extension_ratio(g, v, e), expect, 1e-9 * expect);
    }
  }
}

TEST(ExtensionTest, ConstantFunctionRatio) {
  Space s(make_field(7, 1), 2);
  const PointSet v = enumerate_variety(s, Variety::sphere(Fq(3)));
  for (int r : {2, 3, 4, 8}) {
    const ExponentPair e{ExactExponent::of(2), ExactExponent::of(r)};
    const double ratio = extension_ratio(indicator(v), v, e);
    EXPECT_GE(ratio, 1.0);
    // m = 0 alone contributes 1; the rest comes from the transform of v.
    const ComplexGrid hat = fourier_hat(indicator(v));
    double sum = 0;
    for (Index m = 0; m < s.size(); ++m) {
      sum += std::pow(std::abs(hat[m]) * s.size() / v.size(), r);
    }
    EXPECT_NEAR(ratio, std::pow(sum, 1.0 / r), 1e-9);
  }
}

TEST(ExtensionTest, SubspaceFamilies) {
  FiniteField f5 = make_field(5, 1);
  Space s55(f5, 5);
  const PointSet sphere = enumerate_variety(s55, Variety::sphere(Fq(1)));
  auto members = subspace_family(sphere, Variety::sphere(Fq(1)));
  ASSERT_EQ(members.size(), 3u);
  EXPECT_EQ(members.back().size(), 25u);
  RatioReport r = ratio_sweep(s55, Variety::sphere(Fq(1)), stein_tomas_l4_pair(5),
                              Family::kSubspaces, {});
  EXPECT_EQ(r.members, 4u);
  EXPECT_TRUE(r.monotone);
  EXPECT_GE(r.max_ratio, r.ratio_of_one);

  Space s34(make_field(3, 1), 4);
  const PointSet p34 = enumerate_variety(s34, Variety::paraboloid());
  auto para = subspace_family(p34, Variety::paraboloid());
  EXPECT_EQ(static_cast<int>(para.size()) - 1, paraboloid_max_subspace_dim(4, 3));
  Space s53(f5, 3);
  auto para53 = subspace_family(enumerate_variety(s53, Variety::paraboloid()),
                                Variety::paraboloid());
  EXPECT_EQ(static_cast<int>(para53.size()) - 1, 1);
}

TEST(ExtensionTest, DualRatios) {
  FiniteField f = make_field(5, 1);
  Space s(f, 2);
  const PointSet v = enumerate_variety(s, Variety::sphere(Fq(1)));
  const auto two = ExactExponent::of(2);
  ComplexGrid delta(s);
  delta[0] = 1.0;
  for (const auto& pc : {two, ExactExponent::of(4, 3), ExactExponent::infinity()}) {
    EXPECT_NEAR(dual_restriction_ratio(delta, v, pc, two), 1.0, 1e-12);
  }
  // g(m) = chi(-m0.m) concentrates g~ at -m0.
  const Index m0 = s.neg(v[3]);
  ComplexGrid row(s);
  for (Index m = 0; m < s.size(); ++m) row[m] = f.add_char(f.neg(s.dot(m0, m)));
  const double nv = static_cast<double>(v.size());
  const double qd = static_cast<double>(s.size());
  const double expect = qd * std::pow(nv, -0.5) / std::sqrt(qd);
  EXPECT_NEAR(dual_restriction_ratio(row, v, two, two), expect, 1e-9 * expect);

  // Dual witnesses at p = r = 2: f = 1 and g = (dsigma)^v.
  const ExponentPair e22{two, two};
  const double ext = extension_ratio(indicator(v), v, e22);
  const ComplexGrid g = extension_inverse(indicator(v), v);
  EXPECT_NEAR(dual_restriction_ratio(g, v, two, two), ext, 1e-9);
  EXPECT_NEAR(ext, std::sqrt(qd / nv), 1e-9);
  // At (2, 2) the operator norm is sqrt(q^d/|V|) exactly, so every random
  // g sits below the sweep maximum.
  RatioReport sweep = ratio_sweep(s, Variety::sphere(Fq(1)), e22, Family::kRandomComplex, {});
  std::mt19937 rng(4);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    ComplexGrid h(s);
    for (Index m = 0; m < s.size(); ++m) h[m] = Complex(gauss(rng), gauss(rng));
    EXPECT_LE(dual_restriction_ratio(h, v, two, two), sweep.max_ratio * (1 + 1e-9));
  }
}

}  // namespace
}  // namespace fqh
