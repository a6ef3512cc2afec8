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


#include "fqharmonic/energy.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace fqh {
namespace {

PointSet random_subset_of(const PointSet& v, std::size_t k, std::mt19937& rng) {
  std::vector<Index> pool = v.indices();
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(k, pool.size()));
  return PointSet(v.space(), pool);
}

PointSet everything(const Space& s) {
  std::vector<Index> all(s.size());
  for (Index i = 0; i < s.size(); ++i) all[i] = i;
  return PointSet(s, all);
}

TEST(EnergyTest, SmallSets) {
  Space s(make_field(5, 1), 2);
  EXPECT_EQ(additive_energy(PointSet(s, {7})), 1u);
  EXPECT_EQ(additive_energy(PointSet(s, {7, 12})), 6u);
  EXPECT_EQ(additive_energy(PointSet(s)), 0u);
}

TEST(EnergyTest, MatchesTripleCount) {
  std::mt19937 rng(4);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 3}, {5, 2}, {9, 2}, {7, 3}}) {
    Space s(make_field_of_order(q), d);
    for (std::size_t k : {1u, 2u, 5u, 20u, 40u}) {
      PointSet a = random_subset_of(everything(s), k, rng);
      EXPECT_EQ(additive_energy(a), oracle::energy_by_triples(a));
    }
  }
  // The dense path: more pairs than points.
  Space s(make_field(3, 1), 3);
  PointSet a = random_subset_of(everything(s), 20, rng);
  EXPECT_EQ(additive_energy(a), oracle::energy_by_triples(a));
  EXPECT_EQ(additive_energy(everything(s)), 27u * 27u * 27u);
}

TEST(EnergyTest, InvariantUnderTranslationAndSymmetry) {
  std::mt19937 rng(8);
  FiniteField f = make_field(7, 1);
  Space s(f, 3);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet a = random_subset_of(everything(s), 60, rng);
    const std::uint64_t e = additive_energy(a);
    EXPECT_EQ(additive_energy(translate(a, rng() % s.size())), e);
    std::vector<Index> flipped;
    for (Index x : a) {
      Point p = s.decode(x);
      p[1] = f.neg(p[1]);
      std::swap(p[0], p[2]);
      flipped.push_back(s.encode(p));
    }
    EXPECT_EQ(additive_energy(PointSet(s, flipped)), e);
    EXPECT_GE(e, a.size() * a.size());
    EXPECT_LE(e, a.size() * a.size() * a.size());
  }
}

TEST(EnergyTest, SubspaceHasCubicEnergy) {
  FiniteField f = make_field(3, 1);
  Space s(f, 7);
  AffineSubspace h;
  h.base = Point(7, Fq(0));
  for (Point v : mutually_orthogonal(f, 4)) {
    v.resize(7, Fq(0));
    h.basis.push_back(v);
  }
  PointSet a = enumerate_subspace(s, h);
  ASSERT_EQ(a.size(), 9u);
  EnergyReport r = paraboloid_energy_check(a);
  EXPECT_EQ(r.energy, 729u);
  EXPECT_TRUE(r.pass);
}

TEST(EnergyTest, L4IdentityExhaustiveOnSmallParaboloid) {
  Space s(make_field(3, 1), 3);
  const PointSet p = enumerate_variety(s, Variety::paraboloid());
  ASSERT_EQ(p.size(), 9u);
  for (int mask = 1; mask < 512; ++mask) {
    std::vector<Index> pts;
    for (int i = 0; i < 9; ++i) {
      if (mask & (1 << i)) pts.push_back(p[i]);
    }
    PointSet a(s, pts);
    L4Check c = l4_energy_identity(a, p);
    ASSERT_LT(c.relative_error(), 1e-9);
    ASSERT_LT(std::abs(c.rhs - std::pow(3.0, 4 - 9) * c.energy), 1e-9 * c.rhs);
  }
}

TEST(EnergyTest, L4IdentityOnSphere) {
  std::mt19937 rng(12);
  FiniteField f = make_field(5, 1);
  Space s(f, 3);
  const PointSet v = enumerate_variety(s, Variety::sphere(f.primitive()));
  for (int trial = 0; trial < 30; ++trial) {
    PointSet a = random_subset_of(v, 1 + rng() % v.size(), rng);
    EXPECT_LT(l4_energy_identity(a, v).relative_error(), 1e-9);
  }
  EXPECT_THROW(l4_energy_identity(PointSet(s, {1}), v), Error);
}

TEST(EnergyTest, ZeroPairs) {
  std::mt19937 rng(21);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 6}, {3, 2}, {7, 2}}) {
    Space s(make_field_of_order(q), d);
    for (int trial = 0; trial < 20; ++trial) {
      PointSet a = random_subset_of(everything(s), 1 + rng() % 200, rng);
      const std::uint64_t n = zero_distance_pairs(a);
      EXPECT_EQ(n, oracle::zero_pairs(a));
      EXPECT_GE(n, a.size());
      EXPECT_NEAR(zero_pairs_fourier(a), static_cast<double>(n), 1e-6);
      EXPECT_TRUE(zero_pairs_check(a).pass);
    }
  }
  Space s5(make_field(5, 1), 5);
  try {
    zero_pairs_check(PointSet(s5, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHypothesisViolation);
  }
}

TEST(EnergyTest, IsotropicSpanIsAllZeroPairs) {
  FiniteField f = make_field(5, 1);
  Space s(f, 6);
  AffineSubspace h;
  h.base = Point(6, Fq(0));
  h.basis = mutually_orthogonal(f, 6);
  PointSet a = enumerate_subspace(s, h);
  EXPECT_EQ(zero_distance_pairs(a), a.size() * a.size());
}

TEST(EnergyTest, SphereChecks) {
  std::mt19937 rng(3);
  FiniteField f3 = make_field(3, 1);
  Space small(f3, 5);
  const PointSet whole_sphere =
      enumerate_variety(small, Variety::sphere(f3.primitive()));
  EnergyReport whole = sphere_energy_check(whole_sphere);
  EXPECT_EQ(whole.energy, oracle::energy_by_triples(whole_sphere));
  EXPECT_TRUE(whole.pass);
  ZeroPairsReport zp = sphere_zero_pairs_check(whole_sphere);
  EXPECT_EQ(zp.pairs, oracle::zero_pairs(whole_sphere));
  EXPECT_TRUE(zp.pass);

  FiniteField f = make_field(5, 1);
  Space s(f, 5);
  const PointSet v = enumerate_variety(s, Variety::sphere(f.primitive()));
  for (int trial = 0; trial < 10; ++trial) {
    PointSet a = random_subset_of(v, 1 + rng() % 100, rng);
    EXPECT_TRUE(sphere_energy_check(a).pass);
    EXPECT_EQ(sphere_zero_pairs_check(a).pairs, oracle::zero_pairs(a));
  }
  // Points on distinct lines through the origin never pair up.
  EXPECT_EQ(sphere_zero_pairs_check(PointSet(s, {v[0]})).pairs, 1u);
  Space s3(make_field(7, 1), 3);
  try {
    sphere_energy_check(PointSet(s3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHypothesisViolation);
  }
  try {
    sphere_energy_check(PointSet(s, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSupportViolation);
  }
}

TEST(EnergyTest, Incidences) {
  FiniteField f = make_field(7, 1);
  Space s(f, 3);
  Hyperplane h{{Fq(1), Fq(2), Fq(3)}, Fq(4)};
  IncidenceReport full = point_hyperplane_incidences(everything(s), {h});
  EXPECT_EQ(full.incidences, 49u);
  EXPECT_NEAR(full.deviation, 0, 1e-9);
  EXPECT_EQ(point_hyperplane_incidences(PointSet(s), {h}).incidences, 0u);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    PointSet u = random_subset_of(everything(s), 1 + rng() % 300, rng);
    std::vector<Hyperplane> planes;
    const int count = 1 + rng() % 60;
    for (int i = 0; i < count; ++i) {
      Point n(3);
      do {
        for (auto& c : n) c = Fq(rng() % 7);
      } while (n[0].is_zero() && n[1].is_zero() && n[2].is_zero());
      planes.push_back({n, Fq(rng() % 7)});
    }
    IncidenceReport r = point_hyperplane_incidences(u, planes);
    std::uint64_t brute = 0;
    for (const auto& pl : planes) {
      for (Index x : u) brute += (dot(f, pl.normal, s.decode(x)) == pl.offset);
    }
    EXPECT_EQ(r.incidences, brute);
    EXPECT_TRUE(r.pass);
  }
  Hyperplane bad{{Fq(0), Fq(0), Fq(0)}, Fq(1)};
  try {
    point_hyperplane_incidences(everything(s), {bad});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegeneratePlane);
  }
}

TEST(EnergyTest, RightAngleSplitSumsToEnergy) {
  std::mt19937 rng(30);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 7}, {7, 3}, {3, 3}}) {
    Space s(make_field_of_order(q), d);
    const PointSet p = enumerate_variety(s, Variety::paraboloid());
    for (int trial = 0; trial < 5; ++trial) {
      PointSet a = random_subset_of(p, 1 + rng() % 60, rng);
      EnergySplit split = right_angle_split(a);
      EXPECT_EQ(split.zero_class + split.nonzero_class, additive_energy(a));
    }
  }
}

}  // namespace
}  // namespace fqh
