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


#ifndef FQHARMONIC_DISTANCE_HPP_
#define FQHARMONIC_DISTANCE_HPP_

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "fqharmonic/fourier.hpp"
#include "fqharmonic/geometry.hpp"

namespace fqh {

inline constexpr std::uint64_t kMaxDistancePairs = 100'000'000;

using Rational = boost::rational<std::int64_t>;

struct DistanceProfile {
  std::vector<std::uint64_t> mu;  // mu[t.v] = #{(a, b) : ||a - b|| = t}
  std::vector<Fq> delta;          // attained distances in encoding order
  std::uint64_t mu_square_sum = 0;
  Rational cs_lower_bound;        // |A|^2 |B|^2 / sum mu^2, zero if empty
};

DistanceProfile distance_profile(const PointSet& a, const PointSet& b);

struct MuSquareBounds {
  std::uint64_t exact = 0;
  double first = 0;   // averaging bound summed over a in A
  double second = 0;  // the same bound summed over a superset omega
  double second_imag = 0;
  bool pass = false;
};

// omega must contain a.
MuSquareBounds mu_square_bounds(const PointSet& a, const PointSet& b,
                                const PointSet& omega);

struct SphereFormReport {
  std::uint64_t exact = 0;
  double main_terms = 0;  // |A|^2|B|^2/q + q^(d-1)|A||B|
  Complex third_term;     // the double character sum, with its sign
  double bound = 0;       // main_terms + Re(third_term)
  bool pass = false;
};

// A must lie on the sphere of radius j.
SphereFormReport sform_bound(const PointSet& a, Fq j, const PointSet& b);

struct MattilaReport {
  double value = 0;  // M_A(q)
  double bound = 0;  // min{q, q / M_A(q)}
  std::size_t distances = 0;  // |Delta(A)|
};

MattilaReport mattila(const PointSet& a);

enum class DistanceTheorem {
  kParaboloid,
  kSphereOddSquare,
  kSphereOddNonSquare,
  kSphereEven,
  kZeroSphere,
};

std::string to_string(DistanceTheorem t);

struct TheoremVerdict {
  DistanceTheorem theorem = DistanceTheorem::kParaboloid;
  std::string hypotheses;
  std::size_t lhs = 0;  // |Delta(A, B)|
  double rhs = 0;       // c * min{q, |A||B|/q^(d-1), |A|/q^e}
  double constant = 0;
  double exponent = 0;  // e
  bool pass = false;
  // Stated threshold form: applies when |A||B| >= size_factor q^d and |A| is
  // above the range the explicit inequality alone covers.
  bool stated_applies = false;
  double stated_rhs = 0;
  bool stated_pass = true;
  // Even d: |A| strictly between q^((d-1)/2) and q^(d/2).
  bool size_gap = false;
};

TheoremVerdict theorem_paraboloid_distance(const PointSet& a,
                                           const PointSet& b);
// The variant is read off from d, q and the square class of j.
TheoremVerdict theorem_sphere_distance(const PointSet& a, Fq j,
                                       const PointSet& b);
TheoremVerdict theorem_zero_sphere_distance(const PointSet& a,
                                            const PointSet& b);

enum class SharpKind { kParaboloid, kSphereOdd, kSphereEven, kZeroSphere };

std::string to_string(SharpKind k);
SharpKind parse_sharp_kind(const std::string& name);

struct SharpConstruction {
  SharpKind kind = SharpKind::kParaboloid;
  Fq j;
  std::vector<Point> span;   // mutually orthogonal isotropic vectors
  std::vector<Point> block;  // basis of the shell coordinates
  Point shift;               // A = span + shift, shift in the block
  bool via_normal_form = false;
  std::vector<Fq> radii;
  std::vector<std::uint64_t> shell_sizes;  // per radius, inside the block
  PointSet a;
  PointSet b;
  std::vector<Fq> delta;
  double epsilon = 0;  // 1 - log_q |R|

  explicit SharpConstruction(Space s) : a(s), b(s) {}
};

// Radii are taken as 1, 2, ..., q-1 in encoding order, then 0.
std::vector<Fq> sharp_radii(const FiniteField& f, int r_size);

// j is ignored for the paraboloid and the zero sphere.
SharpConstruction sharp_construction(SharpKind kind, const FiniteField& f,
                                     int d, int r_size, Fq j = Fq(1));

}  // namespace fqh

#endif  // FQHARMONIC_DISTANCE_HPP_
