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


#include "fqharmonic/field.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace fqh {
namespace {

constexpr double kTol = 1e-9;

TEST(FieldTest, PrimeFieldOfOrderThree) {
  FiniteField f = make_field(3, 1);
  EXPECT_EQ(f.q(), 3);
  EXPECT_EQ(f.mul(Fq(2), Fq(2)), Fq(1));
  EXPECT_EQ(f.add(Fq(2), Fq(2)), Fq(1));
}

TEST(FieldTest, RejectsBadParameters) {
  try {
    make_field(2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEvenCharacteristic);
  }
  try {
    make_field(9, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPrime);
  }
  try {
    make_field(3, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeLimitExceeded);
  }
}

TEST(FieldTest, ModulusIsIrreducible) {
  for (int q : oracle::odd_prime_powers(kMaxFieldSize)) {
    auto pp = *prime_power(q);
    if (pp.second == 1) continue;
    FiniteField f = make_field(pp.first, pp.second);
    ASSERT_EQ(static_cast<int>(f.modulus().size()), pp.second + 1);
    EXPECT_EQ(f.modulus().back(), 1);
    EXPECT_TRUE(oracle::irreducible_by_division(f.modulus(), pp.first)) << q;
  }
}

TEST(FieldTest, PrimitiveHasFullOrder) {
  for (int q : oracle::odd_prime_powers(4096)) {
    FiniteField f = make_field_of_order(q);
    const Fq g = f.primitive();
    std::uint32_t x = 1;
    int order = 0;
    do {
      x = oracle::poly_mul(f, x, g.v);
      ++order;
    } while (x != 1);
    EXPECT_EQ(order, q - 1) << q;
  }
}

TEST(FieldTest, MultiplicationMatchesPolynomialProduct) {
  for (int q : {9, 25, 27, 49, 81, 125}) {
    FiniteField f = make_field_of_order(q);
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        ASSERT_EQ(f.mul(Fq(a), Fq(b)).v, oracle::poly_mul(f, a, b));
      }
    }
  }
}

TEST(FieldTest, LargeExtensionAdditionWithoutTable) {
  FiniteField f = make_field(3, 7);
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Fq a(rng() % f.q()), b(rng() % f.q()), c(rng() % f.q());
    EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
    EXPECT_EQ(f.sub(f.add(a, b), b), a);
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
  }
}

TEST(FieldTest, InverseViaPower) {
  for (int q : {3, 9, 27, 343, 4091}) {
    auto pp = prime_power(q);
    if (!pp) continue;
    FiniteField f = make_field_of_order(q);
    for (int a = 1; a < q; ++a) {
      ASSERT_EQ(f.mul(Fq(a), f.pow(Fq(a), q - 2)), f.one());
      ASSERT_EQ(f.mul(Fq(a), f.inv(Fq(a))), f.one());
    }
  }
  FiniteField f = make_field(5, 1);
  EXPECT_THROW(f.inv(Fq(0)), Error);
}

TEST(FieldTest, TraceExamples) {
  FiniteField f7 = make_field(7, 1);
  EXPECT_EQ(f7.trace(Fq(2)), Fq(2));
  FiniteField f9 = make_field(3, 2);
  EXPECT_EQ(f9.trace(Fq(0)), Fq(0));
  EXPECT_EQ(f9.trace(Fq(1)), Fq(2));
}

TEST(FieldTest, TraceIsAdditiveAndMatchesOracle) {
  for (int q : {9, 25, 27, 81, 125, 243}) {
    FiniteField f = make_field_of_order(q);
    for (int x = 0; x < q; ++x) {
      ASSERT_LT(f.trace(Fq(x)).v, static_cast<std::uint32_t>(f.p()));
      ASSERT_EQ(f.trace(Fq(x)).v, oracle::trace(f, x));
      const Fq y(static_cast<std::uint32_t>((7 * x + 3) % q));
      ASSERT_EQ(f.trace(f.add(Fq(x), y)),
                f.add(f.trace(Fq(x)), f.trace(y)));
    }
  }
}

TEST(FieldTest, AdditiveCharacterExamples) {
  FiniteField f3 = make_field(3, 1);
  EXPECT_NEAR(std::abs(f3.add_char(Fq(0)) - Complex(1, 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(f3.add_char(Fq(1)) -
                       std::polar(1.0, 2 * M_PI / 3)), 0, 1e-12);
  FiniteField f5 = make_field(5, 1);
  Complex s = 0;
  for (int x = 0; x < 5; ++x) s += f5.add_char(f5.mul(Fq(2), Fq(x)));
  EXPECT_LT(std::abs(s), kTol);
}

TEST(FieldTest, CharacterOrthogonality) {
  for (int q : oracle::odd_prime_powers(243)) {
    FiniteField f = make_field_of_order(q);
    for (int m = 0; m < q; ++m) {
      Complex s = 0;
      for (int x = 0; x < q; ++x) s += f.add_char(f.mul(Fq(m), Fq(x)));
      const double expect = (m == 0) ? q : 0.0;
      ASSERT_LE(std::abs(s - expect), 1e-9 * q) << q << " " << m;
    }
  }
}

TEST(FieldTest, CharactersAreHomomorphisms) {
  std::mt19937 rng(11);
  for (int q : {5, 9, 27, 49, 121, 169, 625, 2187}) {
    FiniteField f = make_field_of_order(q);
    for (int i = 0; i < 200; ++i) {
      const Fq x(rng() % q), y(rng() % q);
      ASSERT_NEAR(std::abs(f.add_char(x)), 1.0, 1e-12);
      ASSERT_LE(std::abs(f.add_char(f.add(x, y)) -
                         f.add_char(x) * f.add_char(y)), 1e-12);
      ASSERT_EQ(f.quad_char(f.mul(x, y)), f.quad_char(x) * f.quad_char(y));
      if (!x.is_zero()) {
        ASSERT_EQ(f.quad_char(x), f.quad_char(f.inv(x)));
      }
    }
    for (int x = 0; x < std::min(q, 200); ++x) {
      ASSERT_LE(std::abs(f.add_char(Fq(x)) - oracle::character(f, x)), 1e-12);
    }
  }
}

TEST(FieldTest, QuadraticCharacter) {
  for (int q : oracle::odd_prime_powers(125)) {
    FiniteField f = make_field_of_order(q);
    EXPECT_EQ(f.quad_char(Fq(0)), 0);
    EXPECT_EQ(f.quad_char(f.one()), 1);
    EXPECT_EQ(eta_minus_one(f), q % 4 == 1 ? 1 : -1) << q;
    for (int x = 1; x < q; ++x) {
      ASSERT_EQ(f.quad_char(Fq(x)) == 1, oracle::is_square(f, x));
    }
  }
}

TEST(FieldTest, GaussSumExamples) {
  EXPECT_LT(std::abs(make_field(5, 1).gauss_sum() - Complex(std::sqrt(5.0), 0)),
            kTol);
  EXPECT_LT(std::abs(make_field(3, 1).gauss_sum() - Complex(0, std::sqrt(3.0))),
            kTol);
  EXPECT_LT(std::abs(make_field(3, 2).gauss_sum() - Complex(3, 0)), kTol);
}

TEST(FieldTest, GaussSumClosedFormUpTo121) {
  for (int q : oracle::odd_prime_powers(121)) {
    FiniteField f = make_field_of_order(q);
    const Complex closed = f.gauss_closed_form();
    EXPECT_LE(std::abs(f.gauss_sum() - closed), kTol * std::sqrt(q)) << q;
    EXPECT_LE(std::abs(oracle::gauss_sum(f) - closed), kTol * std::sqrt(q)) << q;
  }
}

TEST(FieldTest, QuadraticGaussSum) {
  FiniteField f5 = make_field(5, 1);
  const Complex g = f5.gauss_sum();
  EXPECT_LT(std::abs(gauss_quadratic(f5, Fq(1), Fq(0)) - std::sqrt(5.0)), kTol);
  EXPECT_LT(std::abs(gauss_quadratic(f5, Fq(1), Fq(2)) -
                     g * f5.add_char(f5.neg(f5.one()))), kTol);
  try {
    gauss_quadratic(f5, Fq(0), Fq(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroLeadingCoefficient);
  }
  for (int q : oracle::odd_prime_powers(13)) {
    FiniteField f = make_field_of_order(q);
    const Fq four = f.from_int(4);
    for (int u = 1; u < q; ++u) {
      for (int v = 0; v < q; ++v) {
        const Fq arg = f.div(f.square(Fq(v)), f.neg(f.mul(four, Fq(u))));
        const Complex rhs =
            static_cast<double>(f.quad_char(Fq(u))) * f.gauss_sum() * f.add_char(arg);
        ASSERT_LE(std::abs(gauss_quadratic(f, Fq(u), Fq(v)) - rhs), kTol);
      }
    }
  }
}

TEST(FieldTest, SquareAndTwistedSums) {
  for (int q : oracle::odd_prime_powers(13)) {
    FiniteField f = make_field_of_order(q);
    const Complex g = f.gauss_sum();
    for (int u = 1; u < q; ++u) {
      Complex s = 0;
      for (int x = 0; x < q; ++x) s += f.add_char(f.mul(Fq(u), f.square(Fq(x))));
      ASSERT_LE(std::abs(s - static_cast<double>(f.quad_char(Fq(u))) * g), kTol);
    }
    for (int v = 1; v < q; ++v) {
      for (int w = 1; w < q; ++w) {
        Complex s = 0;
        for (int r = 1; r < q; ++r) {
          s += static_cast<double>(f.quad_char(f.mul(Fq(v), Fq(r)))) *
               f.add_char(f.mul(Fq(w), Fq(r)));
        }
        const double e = f.quad_char(f.mul(Fq(v), Fq(w)));
        ASSERT_LE(std::abs(s - e * g), kTol);
      }
    }
  }
}

TEST(FieldTest, OddPowerOfGaussSum) {
  for (int q : oracle::odd_prime_powers(49)) {
    FiniteField f = make_field_of_order(q);
    for (int d = 1; d <= 9; d += 2) {
      const Complex lhs = static_cast<double>(eta_minus_one(f)) *
                          complex_pow(f.gauss_sum(), d + 1);
      const double mag = std::pow(q, (d + 1) / 2.0);
      const double sign = (d % 4 == 3 && q % 4 == 3) ? -1.0 : 1.0;
      EXPECT_LE(std::abs(lhs - sign * mag), kTol * mag) << q << " " << d;
    }
  }
}

}  // namespace
}  // namespace fqh
