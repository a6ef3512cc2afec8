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


#ifndef FQHARMONIC_EXTENSION_HPP_
#define FQHARMONIC_EXTENSION_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fqharmonic/distance.hpp"
#include "fqharmonic/fourier.hpp"

namespace fqh {

// An exponent in [1, inf] stored as its reciprocal, so inf is 0.
class ExactExponent {
 public:
  static ExactExponent infinity() { return ExactExponent(Rational(0)); }
  static ExactExponent of(Rational r);
  static ExactExponent of(std::int64_t num, std::int64_t den = 1) {
    return of(Rational(num, den));
  }
  static ExactExponent from_reciprocal(Rational inv);

  Rational reciprocal() const { return inv_; }
  bool is_infinite() const { return inv_ == Rational(0); }
  Rational value() const;  // throws for inf
  ExactExponent conjugate() const { return from_reciprocal(1 - inv_); }
  Exponent to_exponent() const;
  std::string str() const;

  bool operator==(const ExactExponent& o) const { return inv_ == o.inv_; }

 private:
  explicit ExactExponent(Rational inv) : inv_(inv) {}
  Rational inv_;
};

struct ExponentPair {
  ExactExponent p = ExactExponent::of(2);
  ExactExponent r = ExactExponent::of(4);
};

// 2(d^2 - d k - d + k) / ((d-1)(d-1-k)) for 0 <= k <= d-2.
Rational critical_r2(int d, int k_star);

// Dimension of a maximal affine subspace on the paraboloid of F_q^d.
int paraboloid_max_subspace_dim(int d, int q);

// Stein-Tomas pair (2, (2d+2)/(d-1)) and its L^4 partner ((4d-4)/(3d-5), 4).
ExponentPair stein_tomas_pair(int d);
ExponentPair stein_tomas_l4_pair(int d);

// r >= 2d/(d-1) and r >= p(d-k)/((p-1)(d-1-k)), read in (1/p, 1/r).
bool necessary_region(int d, int k, const ExponentPair& e);

using RationalPoint = std::pair<Rational, Rational>;  // (1/p, 1/r)

// Corners of the region in the (1/p, 1/r) square.
std::array<RationalPoint, 4> necessary_corners(int d, int k);
bool necessary_region(int d, int k, const RationalPoint& pt);
bool on_necessary_boundary(int d, int k, const RationalPoint& pt);

enum class Family {
  kRandomSubsets,
  kSubspaces,
  kRandomComplex,
  kSinglePoints,
  kFull,
};

std::string to_string(Family f);

struct RatioReport {
  std::string variety;
  ExponentPair exponents;
  Family family = Family::kFull;
  std::size_t members = 0;
  double max_ratio = 0;
  std::size_t argmax = 0;  // member 0 is always f = 1
  double ratio_of_one = 0;
  bool monotone = true;    // exact-norm monotonicity held for every member
  double l4_identity_error = 0;  // r = 4 indicators: transform vs energy
};

struct SweepOptions {
  std::size_t trials = 16;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 picks hardware concurrency
  bool cross_check_l4 = false;
};

std::string variety_label(const Variety& kind);

// For r = 4 and indicator members the ratio goes through the energy identity.
RatioReport ratio_sweep(const Space& s, const Variety& kind,
                        const ExponentPair& e, Family family,
                        const SweepOptions& opt = {});

// Single member: ||(f dsigma)^v||_{L^r(dc)} / ||f||_{L^p(V, dsigma)}.
double extension_ratio(const ComplexGrid& f, const PointSet& v,
                       const ExponentPair& e);

// ||g~||_{L^p'(V, dsigma)} / ||g||_{L^r'(dc)}.
double dual_restriction_ratio(const ComplexGrid& g, const PointSet& v,
                              const ExactExponent& p_conj,
                              const ExactExponent& r_conj);

// Members of the subspace family: nested affine subspaces inside v.
std::vector<PointSet> subspace_family(const PointSet& v, const Variety& kind);

}  // namespace fqh

#endif  // FQHARMONIC_EXTENSION_HPP_
