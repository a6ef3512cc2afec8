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


#ifndef FQHARMONIC_GEOMETRY_HPP_
#define FQHARMONIC_GEOMETRY_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fqharmonic/field.hpp"

namespace fqh {

using Point = std::vector<Fq>;
using Index = std::uint32_t;

inline constexpr std::uint64_t kMaxGridPoints = 4'000'000;

// F_q^d with points encoded as sum_i x_i q^(d-1-i), so x_0 is the most
// significant digit and index order is lexicographic order.
class Space {
 public:
  Space(FiniteField f, int d);

  const FiniteField& field() const { return impl_->field; }
  int dim() const { return impl_->d; }
  int q() const { return impl_->field.q(); }
  Index size() const { return impl_->size; }

  Index encode(std::span<const Fq> x) const;
  Point decode(Index idx) const;
  Fq coord(Index idx, int i) const {
    return Fq((idx / impl_->stride[i]) % impl_->field.q());
  }
  Index stride(int i) const { return impl_->stride[i]; }

  Fq norm(Index idx) const { return Fq(impl_->norms[idx]); }
  Index add(Index a, Index b) const;
  Index sub(Index a, Index b) const;
  Index neg(Index a) const;
  Index scale(Fq c, Index a) const;
  Fq dot(Index a, Index b) const;

  bool operator==(const Space& other) const {
    return impl_ == other.impl_ ||
           (impl_->d == other.impl_->d && impl_->field == other.impl_->field);
  }

 private:
  struct Impl {
    FiniteField field;
    int d;
    Index size;
    std::vector<Index> stride;
    std::vector<std::uint16_t> norms;
  };
  std::shared_ptr<const Impl> impl_;
};

Fq norm(const FiniteField& f, std::span<const Fq> x);
Fq dot(const FiniteField& f, std::span<const Fq> x, std::span<const Fq> y);
Point add(const FiniteField& f, std::span<const Fq> x, std::span<const Fq> y);
Point sub(const FiniteField& f, std::span<const Fq> x, std::span<const Fq> y);
Point scale(const FiniteField& f, Fq c, std::span<const Fq> x);

// Sorted, duplicate-free set of encoded points of one space.
class PointSet {
 public:
  explicit PointSet(Space space) : space_(std::move(space)) {}
  PointSet(Space space, std::vector<Index> indices);

  const Space& space() const { return space_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  const std::vector<Index>& indices() const { return idx_; }
  Index operator[](std::size_t i) const { return idx_[i]; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  bool contains(Index idx) const;
  bool is_subset_of(const PointSet& other) const;

 private:
  Space space_;
  std::vector<Index> idx_;
};

PointSet translate(const PointSet& a, Index v);

struct Variety {
  enum class Kind { kParaboloid, kSphere };

  Kind kind = Kind::kParaboloid;
  Fq radius;  // spheres only

  static Variety paraboloid() { return {Kind::kParaboloid, Fq(0)}; }
  static Variety sphere(Fq j) { return {Kind::kSphere, j}; }
};

// The paraboloid is x_d = x_1^2 + ... + x_{d-1}^2, last coordinate last.
bool contains(const Space& s, const Variety& v, Index idx);
PointSet enumerate_variety(const Space& s, const Variety& v);

// Number of x in F_q^dim with sum x_i^2 = j, from the standard count.
std::uint64_t sphere_count(const FiniteField& f, int dim, Fq j);

struct AffineSubspace {
  Point base;
  std::vector<Point> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Enumerates base + span(basis); throws kInvalidArgument if the basis is
// dependent.
PointSet enumerate_subspace(const Space& s, const AffineSubspace& h);

// Column-major square matrix over F_q.
struct FqMatrix {
  int n = 0;
  std::vector<Point> cols;

  Point apply(const FiniteField& f, std::span<const Fq> x) const;
};

int rank(const FiniteField& f, std::vector<Point> vectors);
FqMatrix inverse(const FiniteField& f, const FqMatrix& m);

// Normal form: x_1^2 - x_2^2 + ... over the hyperbolic pairs, then
// alpha x_d^2 (odd d) or x_{d-1}^2 - alpha x_d^2 (even d).
struct FormTransform {
  int d = 0;
  Fq alpha;
  Fq lambda;  // least non-square
  FqMatrix t;  // columns are the normal-form basis

  Fq normal_form(const FiniteField& f, std::span<const Fq> y) const;
  Point apply(const FiniteField& f, std::span<const Fq> y) const {
    return t.apply(f, y);
  }
};

FormTransform form_equivalence(const FiniteField& f, int d);

// Returns the dimension k promised for (d, q, j), or throws kCaseMismatch.
int sphere_subspace_dim(const FiniteField& f, int d, Fq j);
AffineSubspace subspace_on_sphere(const FiniteField& f, int d, Fq j);

std::vector<Point> mutually_orthogonal(const FiniteField& f, int d);

// Largest k such that some k-dimensional affine subspace lies in v.
inline constexpr std::uint64_t kMaxSubspaceSearchPoints = 4096;
int max_affine_subspace_dim(const Space& s, const Variety& v);

// Solutions of a^2 + b^2 = c and a^2 - alpha b^2 = c, smallest a first.
std::optional<std::pair<Fq, Fq>> solve_two_squares(const FiniteField& f, Fq c);
std::optional<std::pair<Fq, Fq>> solve_norm_form(const FiniteField& f,
                                                 Fq alpha, Fq c);

}  // namespace fqh

#endif  // FQHARMONIC_GEOMETRY_HPP_
