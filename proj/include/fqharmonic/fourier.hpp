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


#ifndef FQHARMONIC_FOURIER_HPP_
#define FQHARMONIC_FOURIER_HPP_

#include <Eigen/Core>
#include <optional>

#include "fqharmonic/geometry.hpp"

namespace fqh {

// A function F_q^d -> C, stored densely in point-index order.
struct ComplexGrid {
  Space space;
  Eigen::VectorXcd values;

  explicit ComplexGrid(Space s)
      : space(std::move(s)), values(Eigen::VectorXcd::Zero(space.size())) {}
  ComplexGrid(Space s, Eigen::VectorXcd v);

  Complex operator[](Index i) const { return values[i]; }
  Complex& operator[](Index i) { return values[i]; }
};

ComplexGrid indicator(const PointSet& a);
ComplexGrid constant_grid(const Space& s, Complex c);

// Applies sum_x chi(sign * x.m) g(x) along every axis, then multiplies by
// scale. sign is +1 or -1.
ComplexGrid character_transform(const ComplexGrid& g, int sign, double scale);

// q^-d sum_x chi(-x.m) g(x).
ComplexGrid fourier_hat(const ComplexGrid& g);
// sum_m chi(-m.x) g(m).
ComplexGrid fourier_tilde(const ComplexGrid& g);
// q^-d sum_x chi(x.m) g(x).
ComplexGrid fourier_vee(const ComplexGrid& g);

// |V|^-1 sum_{x in V} chi(m.x) f(x); f must vanish off v.
ComplexGrid extension_inverse(const ComplexGrid& f, const PointSet& v);

// Exponent in [1, inf].
class Exponent {
 public:
  static Exponent infinity() { return Exponent(); }
  explicit Exponent(double r);

  bool is_infinite() const { return !value_.has_value(); }
  double value() const { return *value_; }

 private:
  Exponent() = default;
  std::optional<double> value_;
};

struct Measure {
  enum class Kind { kCounting, kNormalizedCounting, kSurface };

  Kind kind = Kind::kCounting;
  std::optional<PointSet> support;  // kSurface only

  static Measure counting() { return {Kind::kCounting, std::nullopt}; }
  static Measure normalized() { return {Kind::kNormalizedCounting, std::nullopt}; }
  static Measure surface(PointSet v) { return {Kind::kSurface, std::move(v)}; }
};

double lr_norm(const ComplexGrid& g, Exponent r, const Measure& mu);

// Closed forms for the normalized transforms of the varieties.
Complex paraboloid_hat_closed(const Space& s, std::span<const Fq> m);
Complex sphere_hat_closed(const Space& s, Fq j, std::span<const Fq> m);
// Requires d = 2 mod 4 and q = 3 mod 4.
Complex zero_sphere_hat_closed(const Space& s, std::span<const Fq> alpha);

struct IdentityCheck {
  double lhs = 0;
  double rhs = 0;

  double relative_error() const;
};

// lhs = sum over m in S_t of |A^(m)|^2; rhs is the same quantity computed as
// an L^2 norm on the paraboloid of F_q^(d+1).
IdentityCheck restriction_distance_identity(const PointSet& a, Fq t);

}  // namespace fqh

#endif  // FQHARMONIC_FOURIER_HPP_
