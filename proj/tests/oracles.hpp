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


// Brute-force reference computations used only by the tests.

#ifndef FQHARMONIC_TESTS_ORACLES_HPP_
#define FQHARMONIC_TESTS_ORACLES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "fqharmonic/field.hpp"
#include "fqharmonic/fourier.hpp"
#include "fqharmonic/geometry.hpp"

namespace fqh::oracle {

// Schoolbook product of two encoded elements modulo the field's modulus.
std::uint32_t poly_mul(const FiniteField& f, std::uint32_t a, std::uint32_t b);
// True iff the monic polynomial has no monic factor of degree 1..deg-1.
bool irreducible_by_division(const std::vector<int>& poly, int p);
// Tr(x) by repeated poly_mul.
std::uint32_t trace(const FiniteField& f, std::uint32_t x);
Complex character(const FiniteField& f, std::uint32_t x);
// Whether x is a square, by scanning all y.
bool is_square(const FiniteField& f, std::uint32_t x);
Complex gauss_sum(const FiniteField& f);

// Odd prime powers up to limit, ascending.
std::vector<int> odd_prime_powers(int limit);

// Number of points with sum x_i^2 = j, by full enumeration.
std::uint64_t count_sphere(const FiniteField& f, int d, Fq j);

// out(m) = scale * sum_x chi(sign * x.m) in(x), straight O(q^{2d}) loop.
Eigen::VectorXcd naive_transform(const Space& s, const Eigen::VectorXcd& in,
                                 int sign, double scale);

// Energy by counting triples (a, b, c) with a + b - c in A.
std::uint64_t energy_by_triples(const PointSet& a);
// Ordered pairs at distance zero, from decoded coordinates.
std::uint64_t zero_pairs(const PointSet& a);

// mu[t] = #{(a, b) : sum (a_i - b_i)^2 = t}, from decoded coordinates.
std::vector<std::uint64_t> distance_counts(const PointSet& a, const PointSet& b);

PointSet everything(const Space& s);
// k distinct points of v chosen uniformly.
PointSet random_subset(const PointSet& v, std::size_t k, std::mt19937& rng);

}  // namespace fqh::oracle

#endif  // FQHARMONIC_TESTS_ORACLES_HPP_
