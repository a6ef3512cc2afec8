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
#include <numbers>
#include <string>

namespace fqh {
namespace {

using Poly = std::vector<int>;  // low coefficient first, trimmed

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1;
  int e = p - 2;
  long long b = a % p;
  while (e > 0) {
    if (e & 1) r = static_cast<int>(r * b % p);
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Remainder of a modulo a nonzero b.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const int lead_inv = inv_mod(b.back(), p);
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int c = static_cast<int>(1LL * a.back() * lead_inv % p);
    for (int i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(r), m, p);
}

Poly decode(std::uint32_t x, int p) {
  Poly a;
  while (x > 0) {
    a.push_back(static_cast<int>(x % p));
    x /= p;
  }
  return a;
}

std::uint32_t encode(const Poly& a, int p) {
  std::uint32_t x = 0;
  for (size_t i = a.size(); i-- > 0;) x = x * p + a[i];
  return x;
}

// Monic polynomial of degree deg whose lower coefficients are the base-p
// digits of idx.
Poly monic_from_index(std::uint32_t idx, int deg, int p) {
  Poly a(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    a[i] = static_cast<int>(idx % p);
    idx /= p;
  }
  a[deg] = 1;
  return a;
}

bool is_irreducible(const Poly& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int deg = 1; deg <= n / 2; ++deg) {
    std::uint32_t count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (std::uint32_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic_from_index(idx, deg, p), p).empty()) return false;
    }
  }
  return true;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<int, int>> prime_power(long long q) {
  if (q < 2) return std::nullopt;
  long long p = 2;
  while (q % p != 0) ++p;
  int ell = 0;
  while (q % p == 0) {
    q /= p;
    ++ell;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<int>(p), ell);
}

FiniteField::FiniteField(int p, int ell) {
  if (ell < 1) {
    throw Error(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  }
  if (!is_prime(p)) {
    throw Error(ErrorCode::kNonPrime, std::to_string(p) + " is not prime");
  }
  if (p == 2) {
    throw Error(ErrorCode::kEvenCharacteristic, "characteristic 2");
  }
  long long q = 1;
  for (int i = 0; i < ell; ++i) {
    q *= p;
    if (q > kMaxFieldSize) {
      throw Error(ErrorCode::kSizeLimitExceeded,
                  "field order exceeds " + std::to_string(kMaxFieldSize));
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->ell = ell;
  impl->q = static_cast<int>(q);
  const int qi = impl->q;

  // Lexicographic order on the lower coefficients, constant term most
  // significant after the leading one.
  Poly modulus;
  if (ell == 1) {
    modulus = {0, 1};
  } else {
    std::uint32_t count = static_cast<std::uint32_t>(q);
    for (std::uint32_t idx = 0; idx < count; ++idx) {
      Poly cand(ell + 1, 0);
      std::uint32_t t = idx;
      for (int i = ell - 1; i >= 0; --i) {
        cand[i] = static_cast<int>(t % p);
        t /= p;
      }
      cand[ell] = 1;
      if (cand[0] != 0 && is_irreducible(cand, p)) {
        modulus = cand;
        break;
      }
    }
  }
  impl->modulus = modulus;

  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return encode(poly_mulmod(decode(a, p), decode(b, p), modulus, p), p);
  };
  auto slow_pow = [&](std::uint32_t a, long long e) {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  const long long order = q - 1;
  const auto factors = prime_factors(order);
  std::uint32_t g = 0;
  for (std::uint32_t cand = 1; cand < static_cast<std::uint32_t>(q); ++cand) {
    bool ok = slow_pow(cand, order) == 1;
    for (long long r : factors) {
      if (!ok) break;
      if (slow_pow(cand, order / r) == 1) ok = false;
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  impl->primitive = Fq(g);

  impl->exp_table.assign(2 * (qi - 1), 0);
  impl->log_table.assign(qi, -1);
  std::uint32_t cur = 1;
  for (int k = 0; k < qi - 1; ++k) {
    impl->exp_table[k] = cur;
    impl->exp_table[k + qi - 1] = cur;
    impl->log_table[cur] = k;
    cur = slow_mul(cur, g);
  }

  impl->neg_table.assign(qi, 0);
  for (int x = 0; x < qi; ++x) {
    Poly a = decode(x, p);
    for (int& c : a) c = (p - c) % p;
    impl->neg_table[x] = encode(a, p);
  }
  impl_ = impl;
  if (ell > 1 && qi <= 256) {
    impl->add_table.assign(qi * qi, 0);
    for (int a = 0; a < qi; ++a) {
      for (int b = 0; b < qi; ++b) {
        impl->add_table[a * qi + b] =
            static_cast<std::uint16_t>(add_digits(Fq(a), Fq(b)).v);
      }
    }
  }

  impl->trace_table.assign(qi, 0);
  for (int x = 0; x < qi; ++x) {
    Fq acc(0);
    Fq term(x);
    for (int i = 0; i < ell; ++i) {
      acc = add(acc, term);
      term = pow(term, p);
    }
    impl->trace_table[x] = acc.v;
  }

  impl->char_table.resize(qi);
  for (int x = 0; x < qi; ++x) {
    const double angle =
        2.0 * std::numbers::pi * impl->trace_table[x] / static_cast<double>(p);
    impl->char_table[x] = std::polar(1.0, angle);
  }

  impl->eta_table.assign(qi, 0);
  for (int x = 1; x < qi; ++x) {
    impl->eta_table[x] = (impl->log_table[x] % 2 == 0) ? 1 : -1;
  }
  for (int x = 1; x < qi; ++x) {
    if (impl->eta_table[x] < 0) {
      impl->least_nonsquare = Fq(x);
      break;
    }
  }

  Complex gsum = 0;
  for (int s = 1; s < qi; ++s) {
    gsum += static_cast<double>(impl->eta_table[s]) * impl->char_table[s];
  }
  impl->gauss = gsum;
}

Fq FiniteField::add_digits(Fq a, Fq b) const {
  const std::uint32_t p = impl_->p;
  std::uint32_t x = a.v, y = b.v, out = 0, scale = 1;
  while (x > 0 || y > 0) {
    std::uint32_t d = x % p + y % p;
    if (d >= p) d -= p;
    out += d * scale;
    scale *= p;
    x /= p;
    y /= p;
  }
  return Fq(out);
}

Fq FiniteField::from_int(long long n) const {
  const long long p = impl_->p;
  return Fq(static_cast<std::uint32_t>(((n % p) + p) % p));
}

Fq FiniteField::element(std::uint32_t encoding) const {
  if (encoding >= static_cast<std::uint32_t>(impl_->q)) {
    throw Error(ErrorCode::kInvalidArgument, "encoding out of range");
  }
  return Fq(encoding);
}

Fq FiniteField::inv(Fq a) const {
  if (a.v == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  const int n = impl_->q - 1;
  return Fq(impl_->exp_table[(n - impl_->log_table[a.v]) % n]);
}

Fq FiniteField::exp(long long n) const {
  const long long m = impl_->q - 1;
  return Fq(impl_->exp_table[((n % m) + m) % m]);
}

Fq FiniteField::pow(Fq a, long long n) const {
  if (n == 0) return one();
  if (a.v == 0) {
    if (n < 0) throw Error(ErrorCode::kDivisionByZero, "negative power of 0");
    return zero();
  }
  const long long m = impl_->q - 1;
  long long e = (impl_->log_table[a.v] * (((n % m) + m) % m)) % m;
  return Fq(impl_->exp_table[e]);
}

std::optional<Fq> FiniteField::sqrt(Fq x) const {
  for (int y = 0; y < impl_->q; ++y) {
    if (mul(Fq(y), Fq(y)) == x) return Fq(y);
  }
  return std::nullopt;
}

Complex FiniteField::gauss_closed_form() const {
  const double root = std::sqrt(static_cast<double>(impl_->q));
  const double sign = ((impl_->ell - 1) % 2 == 0) ? 1.0 : -1.0;
  if (impl_->p % 4 == 1) return Complex(sign * root, 0.0);
  return sign * complex_pow(Complex(0.0, 1.0), impl_->ell) * root;
}

FiniteField make_field(int p, int ell) { return FiniteField(p, ell); }

FiniteField make_field_of_order(int q) {
  auto pp = prime_power(q);
  if (!pp) {
    throw Error(ErrorCode::kNonPrime,
                std::to_string(q) + " is not a prime power");
  }
  return FiniteField(pp->first, pp->second);
}

Complex gauss_quadratic(const FiniteField& f, Fq u, Fq v) {
  if (u.is_zero()) {
    throw Error(ErrorCode::kZeroLeadingCoefficient, "u must be nonzero");
  }
  Complex sum = 0;
  for (int s = 0; s < f.q(); ++s) {
    const Fq x(s);
    sum += f.add_char(f.add(f.mul(u, f.square(x)), f.mul(v, x)));
  }
  return sum;
}

int eta_power(const FiniteField& f, Fq x, int k) {
  if (k == 0) return x.is_zero() ? 0 : 1;
  const int e = f.quad_char(x);
  return (k % 2 == 0) ? e * e : e;
}

Complex complex_pow(Complex z, int k) {
  Complex r = 1;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace fqh
