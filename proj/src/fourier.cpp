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


#include "fqharmonic/fourier.hpp"

#include <cmath>
#include <string>

namespace fqh {

ComplexGrid::ComplexGrid(Space s, Eigen::VectorXcd v)
    : space(std::move(s)), values(std::move(v)) {
  if (values.size() != static_cast<Eigen::Index>(space.size())) {
    throw Error(ErrorCode::kInvalidArgument, "grid length must be q^d");
  }
}

ComplexGrid indicator(const PointSet& a) {
  ComplexGrid g(a.space());
  for (Index x : a) g[x] = 1.0;
  return g;
}

ComplexGrid constant_grid(const Space& s, Complex c) {
  ComplexGrid g(s);
  g.values.setConstant(c);
  return g;
}

ComplexGrid character_transform(const ComplexGrid& g, int sign, double scale) {
  const Space& s = g.space;
  const FiniteField& f = s.field();
  const Index q = f.q();
  const int d = s.dim();
  std::vector<Complex> table(q * q);
  for (Index a = 0; a < q; ++a) {
    for (Index b = 0; b < q; ++b) {
      const Fq ab = f.mul(Fq(a), Fq(b));
      table[a * q + b] = f.add_char(sign > 0 ? ab : f.neg(ab));
    }
  }
  Eigen::VectorXcd cur = g.values;
  Eigen::VectorXcd next(cur.size());
  std::vector<Complex> buf;
  for (int axis = 0; axis < d; ++axis) {
    const Index stride = s.stride(axis);
    const Index block = stride * q;
    buf.assign(block, Complex(0));
    for (Index base = 0; base < s.size(); base += block) {
      std::fill(buf.begin(), buf.end(), Complex(0));
      for (Index a = 0; a < q; ++a) {
        const Complex* in = cur.data() + base + a * stride;
        for (Index b = 0; b < q; ++b) {
          const Complex c = table[a * q + b];
          Complex* out = buf.data() + b * stride;
          for (Index r = 0; r < stride; ++r) out[r] += c * in[r];
        }
      }
      std::copy(buf.begin(), buf.end(), next.data() + base);
    }
    std::swap(cur, next);
  }
  cur *= scale;
  return ComplexGrid(s, std::move(cur));
}

ComplexGrid fourier_hat(const ComplexGrid& g) {
  return character_transform(g, -1, 1.0 / g.space.size());
}

ComplexGrid fourier_tilde(const ComplexGrid& g) {
  return character_transform(g, -1, 1.0);
}

ComplexGrid fourier_vee(const ComplexGrid& g) {
  return character_transform(g, +1, 1.0 / g.space.size());
}

ComplexGrid extension_inverse(const ComplexGrid& f, const PointSet& v) {
  if (v.empty()) throw Error(ErrorCode::kEmptySet, "empty variety");
  for (Index x = 0; x < f.space.size(); ++x) {
    if (f[x] != Complex(0) && !v.contains(x)) {
      throw Error(ErrorCode::kSupportViolation,
                  "function is nonzero off the variety");
    }
  }
  const double scale = 1.0 / static_cast<double>(v.size());
  return character_transform(f, +1, scale);
}

Exponent::Exponent(double r) : value_(r) {
  if (!(r >= 1.0) || std::isinf(r)) {
    throw Error(ErrorCode::kBadExponent, "exponent must be a finite r >= 1");
  }
}

double lr_norm(const ComplexGrid& g, Exponent r, const Measure& mu) {
  double weight = 1.0;
  const std::vector<Index>* support = nullptr;
  switch (mu.kind) {
    case Measure::Kind::kCounting:
      break;
    case Measure::Kind::kNormalizedCounting:
      weight = 1.0 / g.space.size();
      break;
    case Measure::Kind::kSurface:
      if (!mu.support || mu.support->empty()) {
        throw Error(ErrorCode::kEmptySet, "surface measure needs a support");
      }
      support = &mu.support->indices();
      weight = 1.0 / support->size();
      break;
  }
  auto visit = [&](auto&& fn) {
    if (support) {
      for (Index x : *support) fn(std::abs(g[x]));
    } else {
      for (Index x = 0; x < g.space.size(); ++x) fn(std::abs(g[x]));
    }
  };
  if (r.is_infinite()) {
    double m = 0;
    visit([&](double a) { m = std::max(m, a); });
    return m;
  }
  const double e = r.value();
  double sum = 0;
  if (e == 2.0) {
    visit([&](double a) { sum += a * a; });
  } else {
    visit([&](double a) { sum += std::pow(a, e); });
  }
  return std::pow(weight * sum, 1.0 / e);
}

Complex paraboloid_hat_closed(const Space& s, std::span<const Fq> m) {
  const FiniteField& f = s.field();
  const int d = s.dim();
  const double q = f.q();
  const Fq md = m[d - 1];
  Fq lead(0);
  bool lead_zero = true;
  for (int i = 0; i + 1 < d; ++i) {
    lead = f.add(lead, f.square(m[i]));
    lead_zero = lead_zero && m[i].is_zero();
  }
  if (md.is_zero()) return lead_zero ? Complex(1.0 / q) : Complex(0.0);
  const Fq arg = f.div(lead, f.mul(f.from_int(4), md));
  const double eta = eta_power(f, f.neg(md), d - 1);
  return std::pow(q, -d) * f.add_char(arg) * eta *
         complex_pow(f.gauss_sum(), d - 1);
}

Complex sphere_hat_closed(const Space& s, Fq j, std::span<const Fq> m) {
  const FiniteField& f = s.field();
  const int d = s.dim();
  const double q = f.q();
  bool zero = true;
  for (const Fq& c : m) zero = zero && c.is_zero();
  const Fq mm = norm(f, m);
  const Fq four = f.from_int(4);
  Complex sum = 0;
  for (int r = 1; r < f.q(); ++r) {
    const Fq rr(r);
    const Fq arg = f.add(f.mul(j, rr), f.div(mm, f.mul(four, rr)));
    sum += static_cast<double>(eta_power(f, rr, d)) * f.add_char(arg);
  }
  const double lead = zero ? 1.0 / q : 0.0;
  return lead + std::pow(q, -d - 1) *
                    static_cast<double>(eta_power(f, f.neg(f.one()), d)) *
                    complex_pow(f.gauss_sum(), d) * sum;
}

Complex zero_sphere_hat_closed(const Space& s, std::span<const Fq> alpha) {
  const FiniteField& f = s.field();
  const int d = s.dim();
  if (d % 4 != 2 || f.q() % 4 != 3) {
    throw Error(ErrorCode::kHypothesisViolation,
                "requires d = 2 mod 4 and q = 3 mod 4");
  }
  bool zero = true;
  for (const Fq& c : alpha) zero = zero && c.is_zero();
  const Fq a = norm(f, alpha);
  Complex sum = 0;
  for (int r = 1; r < f.q(); ++r) sum += f.add_char(f.mul(Fq(r), a));
  const double q = f.q();
  return (zero ? 1.0 / q : 0.0) - std::pow(q, -(d + 2) / 2.0) * sum;
}

double IdentityCheck::relative_error() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale == 0) return 0;
  return std::abs(lhs - rhs) / scale;
}

IdentityCheck restriction_distance_identity(const PointSet& a, Fq t) {
  const Space& s = a.space();
  const FiniteField& f = s.field();
  if (t.is_zero()) throw Error(ErrorCode::kInvalidArgument, "t must be nonzero");
  const int d = s.dim();
  IdentityCheck out;
  const ComplexGrid hat = fourier_hat(indicator(a));
  for (Index m = 0; m < s.size(); ++m) {
    if (s.norm(m) == t) out.lhs += std::norm(hat[m]);
  }

  Space lifted(f, d + 1);
  ComplexGrid g(lifted);
  const Index q = f.q();
  for (Index x : a) {
    for (Index u = 0; u < q; ++u) {
      g[x * q + u] = f.add_char(f.mul(t, Fq(u)));
    }
  }
  const ComplexGrid tilde = fourier_tilde(g);
  const PointSet parab = enumerate_variety(lifted, Variety::paraboloid());
  const double l2 = lr_norm(tilde, Exponent(2.0), Measure::surface(parab));
  out.rhs = std::pow(static_cast<double>(q), -d - 2) * l2 * l2;
  return out;
}

}  // namespace fqh
