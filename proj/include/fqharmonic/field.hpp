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


#ifndef FQHARMONIC_FIELD_HPP_
#define FQHARMONIC_FIELD_HPP_

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fqharmonic/error.hpp"

namespace fqh {

using Complex = std::complex<double>;

// A field element, stored as the base-p digit encoding of its polynomial
// representative. The low digit is the constant coefficient.
struct Fq {
  std::uint32_t v = 0;

  constexpr Fq() = default;
  constexpr explicit Fq(std::uint32_t value) : v(value) {}
  constexpr auto operator<=>(const Fq&) const = default;
  constexpr bool is_zero() const { return v == 0; }
};

inline constexpr int kMaxFieldSize = 4096;

// Arithmetic context for F_q with q = p^ell, p odd. Cheap to copy; the
// tables are shared and never modified after construction.
class FiniteField {
 public:
  FiniteField(int p, int ell);

  int p() const { return impl_->p; }
  int ell() const { return impl_->ell; }
  int q() const { return impl_->q; }
  const std::vector<int>& modulus() const { return impl_->modulus; }
  Fq primitive() const { return impl_->primitive; }
  bool is_prime_field() const { return impl_->ell == 1; }

  Fq zero() const { return Fq(0); }
  Fq one() const { return Fq(1); }
  // Embeds an integer through F_p.
  Fq from_int(long long n) const;
  Fq element(std::uint32_t encoding) const;

  Fq add(Fq a, Fq b) const {
    if (impl_->ell == 1) {
      std::uint32_t s = a.v + b.v;
      return Fq(s >= static_cast<std::uint32_t>(impl_->q) ? s - impl_->q : s);
    }
    if (!impl_->add_table.empty()) {
      return Fq(impl_->add_table[a.v * impl_->q + b.v]);
    }
    return add_digits(a, b);
  }
  Fq neg(Fq a) const { return Fq(impl_->neg_table[a.v]); }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq mul(Fq a, Fq b) const {
    if (a.v == 0 || b.v == 0) return Fq(0);
    return Fq(impl_->exp_table[impl_->log_table[a.v] + impl_->log_table[b.v]]);
  }
  Fq square(Fq a) const { return mul(a, a); }
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, long long n) const;

  // Discrete log base primitive(); undefined for 0.
  int log(Fq a) const { return impl_->log_table[a.v]; }
  Fq exp(long long n) const;

  Fq trace(Fq x) const { return Fq(impl_->trace_table[x.v]); }
  const Complex& add_char(Fq x) const { return impl_->char_table[x.v]; }
  int quad_char(Fq x) const { return impl_->eta_table[x.v]; }
  bool is_square(Fq x) const { return impl_->eta_table[x.v] >= 0; }
  std::optional<Fq> sqrt(Fq x) const;
  // Smallest non-square in encoding order.
  Fq least_nonsquare() const { return impl_->least_nonsquare; }

  // Direct sum over the field.
  Complex gauss_sum() const { return impl_->gauss; }
  Complex gauss_closed_form() const;

  bool operator==(const FiniteField& other) const {
    return impl_ == other.impl_ ||
           (impl_->p == other.impl_->p && impl_->ell == other.impl_->ell);
  }

 private:
  struct Impl {
    int p = 0;
    int ell = 0;
    int q = 0;
    std::vector<int> modulus;
    Fq primitive;
    Fq least_nonsquare;
    std::vector<std::uint32_t> exp_table;  // length 2(q-1)
    std::vector<int> log_table;
    std::vector<std::uint16_t> add_table;
    std::vector<std::uint32_t> neg_table;
    std::vector<std::uint32_t> trace_table;
    std::vector<Complex> char_table;
    std::vector<std::int8_t> eta_table;
    Complex gauss;
  };

  Fq add_digits(Fq a, Fq b) const;

  std::shared_ptr<const Impl> impl_;
};

FiniteField make_field(int p, int ell);
// Parses q as p^ell and builds the field.
FiniteField make_field_of_order(int q);
bool is_prime(long long n);
// Returns (p, ell) when q is a prime power, nothing otherwise.
std::optional<std::pair<int, int>> prime_power(long long q);

inline Fq trace(const FiniteField& f, Fq x) { return f.trace(x); }
inline Complex add_char(const FiniteField& f, Fq x) { return f.add_char(x); }
inline int quad_char(const FiniteField& f, Fq x) { return f.quad_char(x); }
inline Complex gauss_sum(const FiniteField& f) { return f.gauss_sum(); }
// Sum over s of chi(u s^2 + v s); u must be nonzero.
Complex gauss_quadratic(const FiniteField& f, Fq u, Fq v);

inline bool q_is_1_mod_4(const FiniteField& f) { return f.q() % 4 == 1; }
inline int eta_minus_one(const FiniteField& f) {
  return f.quad_char(f.neg(f.one()));
}
// eta^k(x) with the convention eta^0 = 1 on nonzero x and eta^k(0) = 0.
int eta_power(const FiniteField& f, Fq x, int k);
Complex complex_pow(Complex z, int k);

}  // namespace fqh

#endif  // FQHARMONIC_FIELD_HPP_
