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


#ifndef FQHARMONIC_ENERGY_HPP_
#define FQHARMONIC_ENERGY_HPP_

#include <cstdint>
#include <vector>

#include "fqharmonic/fourier.hpp"
#include "fqharmonic/geometry.hpp"

namespace fqh {

inline constexpr std::size_t kMaxEnergySetSize = 100'000;
inline constexpr double kDefaultTestConstant = 8.0;

// Number of (a, b, c, d) in A^4 with a + b = c + d.
std::uint64_t additive_energy(const PointSet& a);

// Number of ordered pairs (a, b) in A^2 with ||a - b|| = 0, diagonal included.
std::uint64_t zero_distance_pairs(const PointSet& a);

struct L4Check {
  std::uint64_t energy = 0;
  double lhs = 0;  // sum over m of |(A dsigma)^v(m)|^4
  double rhs = 0;  // q^d E(A) / |V|^4

  double relative_error() const;
};

// A must lie in v.
L4Check l4_energy_identity(const PointSet& a, const PointSet& v);

struct EnergyReport {
  std::size_t size = 0;
  std::uint64_t energy = 0;
  double cubic_term = 0;  // |A|^3 / q
  double square_term = 0;  // q^((d-2)/2) |A|^2
  double c_test = kDefaultTestConstant;
  double ratio = 0;  // E / (cubic_term + square_term)
  bool pass = false;
};

// A on the paraboloid with d = 4k+3 and q = 3 mod 4.
EnergyReport paraboloid_energy_check(const PointSet& a,
                                     double c_test = kDefaultTestConstant);
// A on the sphere of primitive radius with d = 4k+1, or d = 4k-1 and
// q = 1 mod 4.
EnergyReport sphere_energy_check(const PointSet& a,
                                 double c_test = kDefaultTestConstant);

struct ZeroPairsReport {
  std::size_t size = 0;
  std::uint64_t pairs = 0;
  double bound = 0;  // without c_test
  double c_test = 1.0;
  double ratio = 0;
  bool pass = false;
};

// Pairs at distance zero on the sphere of primitive radius, bound
// |A|^2/q + q^((d-3)/2)|A| scaled by c_test.
ZeroPairsReport sphere_zero_pairs_check(const PointSet& a,
                                        double c_test = kDefaultTestConstant);
// d = 4k+2, q = 3 mod 4: N(A) <= |A|^2/q + q^((d-2)/2)|A| with constant 1.
ZeroPairsReport zero_pairs_check(const PointSet& a);
// q^(2d) sum_m |A^(m)|^2 S_0^(m), which equals N(A).
double zero_pairs_fourier(const PointSet& a);

struct Hyperplane {
  Point normal;
  Fq offset;
};

struct IncidenceReport {
  std::size_t points = 0;
  std::size_t planes = 0;
  std::uint64_t incidences = 0;
  double main_term = 0;  // |U||V|/q
  double deviation = 0;  // |I - main_term|
  double bound = 0;  // q^((d-1)/2) sqrt(|U||V|)
  bool pass = false;
};

IncidenceReport point_hyperplane_incidences(const PointSet& u,
                                            const std::vector<Hyperplane>& planes);

// For A on the paraboloid, splits E(A) by whether ||a_ - b_|| = 0 or
// ||d_ - b_|| = 0 (first class) or neither (second class), where x_ drops
// the last coordinate.
struct EnergySplit {
  std::uint64_t zero_class = 0;
  std::uint64_t nonzero_class = 0;
};
EnergySplit right_angle_split(const PointSet& a);

}  // namespace fqh

#endif  // FQHARMONIC_ENERGY_HPP_
