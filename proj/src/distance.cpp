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


#include "fqharmonic/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fqh {
namespace {

void require_pair_budget(std::uint64_t pairs) {
  if (pairs > kMaxDistancePairs) {
    throw Error(ErrorCode::kSizeLimitExceeded, "too many pairs");
  }
}

void require_on(const PointSet& a, const Variety& v, const char* what) {
  for (Index x : a) {
    if (!contains(a.space(), v, x)) {
      throw Error(ErrorCode::kSupportViolation,
                  std::string("set is not contained in the ") + what);
    }
  }
}

double qpow(int q, double e) { return std::pow(static_cast<double>(q), e); }

TheoremVerdict verdict(DistanceTheorem t, std::string hyp, const PointSet& a,
                       const PointSet& b, double c, double e,
                       double size_factor, double stated_constant) {
  const int q = a.space().q();
  const int d = a.space().dim();
  TheoremVerdict v;
  v.theorem = t;
  v.hypotheses = std::move(hyp);
  v.constant = c;
  v.exponent = e;
  v.lhs = distance_profile(a, b).delta.size();
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  v.rhs = c * std::min({static_cast<double>(q), na * nb / qpow(q, d - 1),
                        na / qpow(q, e)});
  v.pass = static_cast<double>(v.lhs) + 1e-9 >= v.rhs;
  const double lower = d % 2 == 1 ? qpow(q, (d - 1) / 2.0) : qpow(q, d / 2.0);
  v.stated_applies = na * nb >= size_factor * qpow(q, d) && na >= lower;
  v.stated_rhs = q * stated_constant;
  v.stated_pass = !v.stated_applies || static_cast<double>(v.lhs) >= v.stated_rhs;
  v.size_gap = d % 2 == 0 && na > qpow(q, (d - 1) / 2.0) && na < qpow(q, d / 2.0);
  return v;
}

std::vector<Point> pad(std::vector<Point> vs, int d) {
  for (Point& v : vs) v.resize(d, Fq(0));
  return vs;
}

Point unit(int d, int i) {
  Point e(d, Fq(0));
  e[i] = Fq(1);
  return e;
}

}  // namespace

DistanceProfile distance_profile(const PointSet& a, const PointSet& b) {
  require_pair_budget(static_cast<std::uint64_t>(a.size()) * b.size());
  const Space& s = a.space();
  DistanceProfile out;
  out.mu.assign(s.q(), 0);
  for (Index x : a) {
    for (Index y : b) ++out.mu[s.norm(s.sub(x, y)).v];
  }
  for (int t = 0; t < s.q(); ++t) {
    if (out.mu[t] > 0) out.delta.push_back(Fq(t));
    out.mu_square_sum += out.mu[t] * out.mu[t];
  }
  if (out.mu_square_sum > 0) {
    const std::int64_t n = static_cast<std::int64_t>(a.size() * b.size());
    out.cs_lower_bound =
        Rational(n * n, static_cast<std::int64_t>(out.mu_square_sum));
  }
  return out;
}

MuSquareBounds mu_square_bounds(const PointSet& a, const PointSet& b,
                                const PointSet& omega) {
  if (!a.is_subset_of(omega)) {
    throw Error(ErrorCode::kOmegaNotCovering, "omega must contain A");
  }
  const Space& s = a.space();
  const FiniteField& f = s.field();
  const int q = s.q();
  const int d = s.dim();
  require_pair_budget(static_cast<std::uint64_t>(a.size()) * b.size() * q);
  require_pair_budget(static_cast<std::uint64_t>(b.size()) * b.size() * q);
  MuSquareBounds out;
  out.exact = distance_profile(a, b).mu_square_sum;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double lead = na * na * nb * nb / q;
  const Fq two = f.from_int(2);

  double first = 0;
  for (Index x : a) {
    std::vector<Fq> phase;
    phase.reserve(b.size());
    for (Index y : b) {
      phase.push_back(f.sub(f.mul(two, s.dot(x, y)), s.norm(y)));
    }
    for (int sv = 1; sv < q; ++sv) {
      Complex acc = 0;
      for (Fq v : phase) acc += f.add_char(f.mul(Fq(sv), v));
      first += std::norm(acc);
    }
  }
  out.first = lead + na / q * first;

  const ComplexGrid omega_hat = fourier_hat(indicator(omega));
  Complex second = 0;
  for (Index y : b) {
    for (Index y2 : b) {
      const Index diff = s.sub(y2, y);
      const Fq dn = f.sub(s.norm(y2), s.norm(y));
      for (int sv = 1; sv < q; ++sv) {
        const Fq sc(sv);
        second += omega_hat[s.scale(f.mul(two, sc), diff)] *
                  f.add_char(f.mul(sc, dn));
      }
    }
  }
  second *= std::pow(static_cast<double>(q), d - 1) * na;
  out.second = lead + second.real();
  out.second_imag = second.imag();
  const double ex = static_cast<double>(out.exact);
  const double tol = 1e-9 * std::max(1.0, lead);
  out.pass = ex <= out.first + tol && ex <= out.second + tol &&
             out.first <= out.second + tol;
  return out;
}

SphereFormReport sform_bound(const PointSet& a, Fq j, const PointSet& b) {
  const Space& s = a.space();
  const FiniteField& f = s.field();
  const int q = s.q();
  const int d = s.dim();
  require_on(a, Variety::sphere(j), "sphere");
  require_pair_budget(static_cast<std::uint64_t>(b.size()) * b.size());
  SphereFormReport out;
  out.exact = distance_profile(a, b).mu_square_sum;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  out.main_terms = na * na * nb * nb / q + std::pow(q, d - 1.0) * na * nb;

  std::vector<std::uint64_t> count(static_cast<std::size_t>(q) * q, 0);
  for (Index y : b) {
    for (Index y2 : b) {
      const Fq dist = s.norm(s.sub(y2, y));
      const Fq dn = f.sub(s.norm(y2), s.norm(y));
      ++count[static_cast<std::size_t>(dist.v) * q + dn.v];
    }
  }
  Complex sum = 0;
  for (int dv = 0; dv < q; ++dv) {
    for (int ev = 0; ev < q; ++ev) {
      const std::uint64_t c = count[static_cast<std::size_t>(dv) * q + ev];
      if (c == 0) continue;
      Complex k = 0;
      for (int sv = 1; sv < q; ++sv) {
        const Fq s2 = f.square(Fq(sv));
        const Complex outer = f.add_char(f.mul(Fq(sv), Fq(ev)));
        for (int rv = 1; rv < q; ++rv) {
          const Fq r(rv);
          const Fq arg = f.add(f.mul(j, r), f.div(f.mul(s2, Fq(dv)), r));
          k += static_cast<double>(eta_power(f, r, d)) * f.add_char(arg) * outer;
        }
      }
      sum += static_cast<double>(c) * k;
    }
  }
  out.third_term = sum * na / (static_cast<double>(q) * q) *
                   static_cast<double>(eta_power(f, f.neg(f.one()), d)) *
                   complex_pow(f.gauss_sum(), d);
  out.bound = out.main_terms + out.third_term.real();
  out.pass = static_cast<double>(out.exact) <=
             out.bound + 1e-9 * std::max(1.0, out.main_terms);
  return out;
}

MattilaReport mattila(const PointSet& a) {
  if (a.empty()) throw Error(ErrorCode::kEmptySet, "A must be nonempty");
  const Space& s = a.space();
  const int q = s.q();
  const int d = s.dim();
  const ComplexGrid hat = fourier_hat(indicator(a));
  std::vector<double> shell(q, 0.0);
  for (Index m = 0; m < s.size(); ++m) shell[s.norm(m).v] += std::norm(hat[m]);
  double sum = 0;
  for (int t = 1; t < q; ++t) sum += shell[t] * shell[t];
  const double na = static_cast<double>(a.size());
  MattilaReport out;
  out.value = std::pow(static_cast<double>(q), 3 * d + 1) * sum / (na * na * na * na);
  out.bound = out.value > 0 ? std::min(static_cast<double>(q), q / out.value)
                            : static_cast<double>(q);
  out.distances = distance_profile(a, a).delta.size();
  return out;
}

std::string to_string(DistanceTheorem t) {
  switch (t) {
    case DistanceTheorem::kParaboloid: return "paraboloid";
    case DistanceTheorem::kSphereOddSquare: return "sphere_odd_square";
    case DistanceTheorem::kSphereOddNonSquare: return "sphere_odd_nonsquare";
    case DistanceTheorem::kSphereEven: return "sphere_even";
    case DistanceTheorem::kZeroSphere: return "zero_sphere";
  }
  return "unknown";
}

TheoremVerdict theorem_paraboloid_distance(const PointSet& a,
                                           const PointSet& b) {
  const int q = a.space().q();
  const int d = a.space().dim();
  require_on(a, Variety::paraboloid(), "paraboloid");
  if (d % 4 == 3 && q % 4 == 3) {
    return verdict(DistanceTheorem::kParaboloid, "d = 4k-1, q = 3 mod 4", a,
                   b, 1.0 / 3, (d - 3) / 2.0, 4, 1.0 / 3);
  }
  if (d % 2 == 0 && d >= 4) {
    return verdict(DistanceTheorem::kParaboloid, "d >= 4 even", a, b, 1.0 / 3,
                   (d - 2) / 2.0, 16, 1.0 / 144);
  }
  throw Error(ErrorCode::kHypothesisViolation,
              "needs d = 4k-1 with q = 3 mod 4, or even d >= 4");
}

TheoremVerdict theorem_sphere_distance(const PointSet& a, Fq j,
                                       const PointSet& b) {
  const FiniteField& f = a.space().field();
  const int q = f.q();
  const int d = a.space().dim();
  if (j.is_zero()) {
    throw Error(ErrorCode::kHypothesisViolation, "radius must be nonzero");
  }
  require_on(a, Variety::sphere(j), "sphere");
  const bool square = f.is_square(j);
  if (d % 2 == 1) {
    if (square && d % 4 == 3 && q % 4 == 3) {
      return verdict(DistanceTheorem::kSphereOddSquare,
                     "j square, d = 4k-1, q = 3 mod 4", a, b, 0.25,
                     (d - 3) / 2.0, 4, 0.25);
    }
    if (!square && ((d % 4 == 1 && d >= 5) || (d % 4 == 3 && q % 4 == 1))) {
      return verdict(DistanceTheorem::kSphereOddNonSquare,
                     "j non-square, d = 4k+1 or (d = 4k-1, q = 1 mod 4)", a,
                     b, 0.25, (d - 3) / 2.0, 4, 0.25);
    }
  } else if (d >= 4) {
    return verdict(DistanceTheorem::kSphereEven, "d >= 4 even, j != 0", a, b,
                   0.25, (d - 2) / 2.0, 16, 1.0 / 144);
  }
  throw Error(ErrorCode::kHypothesisViolation,
              "(d, q, j) outside the sphere distance cases");
}

TheoremVerdict theorem_zero_sphere_distance(const PointSet& a,
                                            const PointSet& b) {
  const int q = a.space().q();
  const int d = a.space().dim();
  if (!(d % 4 == 2 && q % 4 == 3)) {
    throw Error(ErrorCode::kHypothesisViolation,
                "needs d = 4k+2 and q = 3 mod 4");
  }
  require_on(a, Variety::sphere(Fq(0)), "zero sphere");
  return verdict(DistanceTheorem::kZeroSphere, "d = 4k+2, q = 3 mod 4", a, b,
                 1.0 / 3, (d - 2) / 2.0, 16, 1.0 / 144);
}

std::string to_string(SharpKind k) {
  switch (k) {
    case SharpKind::kParaboloid: return "para";
    case SharpKind::kSphereOdd: return "sphere-odd";
    case SharpKind::kSphereEven: return "sphere-even";
    case SharpKind::kZeroSphere: return "zero-sphere";
  }
  return "unknown";
}

SharpKind parse_sharp_kind(const std::string& name) {
  for (SharpKind k : {SharpKind::kParaboloid, SharpKind::kSphereOdd,
                      SharpKind::kSphereEven, SharpKind::kZeroSphere}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown construction kind: " + name);
}

std::vector<Fq> sharp_radii(const FiniteField& f, int r_size) {
  if (r_size < 1 || r_size > f.q()) {
    throw Error(ErrorCode::kBadRange, "radius count must be in [1, q]");
  }
  std::vector<Fq> out;
  for (int t = 1; t < f.q() && static_cast<int>(out.size()) < r_size; ++t) {
    out.push_back(Fq(t));
  }
  if (static_cast<int>(out.size()) < r_size) out.push_back(Fq(0));
  return out;
}

SharpConstruction sharp_construction(SharpKind kind, const FiniteField& f,
                                     int d, int r_size, Fq j) {
  const int q = f.q();
  const Space s(f, d);
  SharpConstruction c(s);
  c.kind = kind;
  c.radii = sharp_radii(f, r_size);
  auto impossible = [](const char* why) {
    return Error(ErrorCode::kImpossibleCase, why);
  };

  // Number of isotropic vectors in the leading coordinates; the remaining
  // block_dim coordinates carry the shells.
  int span_dim_coords = 0;
  switch (kind) {
    case SharpKind::kParaboloid:
      c.j = Fq(0);
      if (d % 4 == 3 && q % 4 == 3) {
        span_dim_coords = d - 3;
      } else if (d % 2 == 0 && d >= 4 && (q % 4 == 1 || d % 4 == 2)) {
        span_dim_coords = d - 2;
      } else {
        throw impossible("paraboloid construction needs d = 4k-1 with q = 3 "
                         "mod 4, even d >= 4 with q = 1 mod 4, or d = 4k+2");
      }
      break;
    case SharpKind::kSphereOdd: {
      c.j = j;
      if (j.is_zero()) throw impossible("radius must be nonzero");
      const bool square = f.is_square(j);
      if (square && d % 4 == 3 && q % 4 == 3) {
        span_dim_coords = d - 3;
      } else if (!square && d % 4 == 3 && q % 4 == 1) {
        span_dim_coords = d - 3;
      } else if (!square && d % 4 == 1 && d >= 5) {
        if (q % 4 == 1) {
          span_dim_coords = d - 3;
        } else {
          c.via_normal_form = true;
        }
      } else {
        throw impossible("odd sphere construction needs j square with d = "
                         "4k-1, q = 3 mod 4, or j non-square with d = 4k+1 "
                         "or d = 4k-1, q = 1 mod 4");
      }
      break;
    }
    case SharpKind::kSphereEven:
      c.j = j;
      if (j.is_zero()) throw impossible("radius must be nonzero");
      if (d % 2 == 1 || d < 4) throw impossible("needs even d >= 4");
      span_dim_coords = (d % 4 == 0 && q % 4 == 3) ? d - 4 : d - 2;
      break;
    case SharpKind::kZeroSphere:
      c.j = Fq(0);
      if (!(d % 4 == 2 && q % 4 == 3)) {
        throw impossible("zero sphere construction needs d = 4k+2, q = 3 mod 4");
      }
      span_dim_coords = d - 2;
      break;
  }

  const bool on_sphere =
      kind == SharpKind::kSphereOdd || kind == SharpKind::kSphereEven;
  if (c.via_normal_form) {
    // Isotropic span from the hyperbolic pairs of the normal form; the block
    // is the last pair together with the residual coordinate.
    const FormTransform ft = form_equivalence(f, d);
    const int pairs = (d - 1) / 2;
    for (int i = 0; i + 1 < pairs; ++i) {
      Point v(d, Fq(0));
      v[2 * i] = f.one();
      v[2 * i + 1] = f.one();
      c.span.push_back(ft.apply(f, v));
    }
    for (int i = d - 3; i < d; ++i) c.block.push_back(ft.t.cols[i]);
    Point y(d, Fq(0));
    if (f.quad_char(f.mul(ft.alpha, j)) == 1) {
      y[d - 1] = *f.sqrt(f.div(j, ft.alpha));
    } else {
      const auto ab = *solve_norm_form(f, f.one(), j);
      y[d - 3] = ab.first;
      y[d - 2] = ab.second;
    }
    c.shift = ft.apply(f, y);
  } else {
    c.span = pad(mutually_orthogonal(f, span_dim_coords), d);
    for (int i = span_dim_coords; i < d; ++i) c.block.push_back(unit(d, i));
    c.shift.assign(d, Fq(0));
    if (on_sphere) {
      if (auto root = f.sqrt(j)) {
        c.shift[d - 1] = *root;
      } else {
        const auto ab = *solve_two_squares(f, j);
        c.shift[d - 2] = ab.first;
        c.shift[d - 1] = ab.second;
      }
    }
  }

  AffineSubspace h{c.shift, c.span};
  c.a = enumerate_subspace(s, h);

  // Block points y with ||shift - y|| in R, then B = span + those points.
  const int bd = static_cast<int>(c.block.size());
  std::uint64_t block_size = 1;
  for (int i = 0; i < bd; ++i) block_size *= q;
  std::vector<int> which(q, -1);
  for (std::size_t i = 0; i < c.radii.size(); ++i) which[c.radii[i].v] = static_cast<int>(i);
  c.shell_sizes.assign(c.radii.size(), 0);
  const PointSet span_points = enumerate_subspace(s, {Point(d, Fq(0)), c.span});
  const Index shift = s.encode(c.shift);
  std::vector<Index> b_points;
  for (std::uint64_t t = 0; t < block_size; ++t) {
    Point y(d, Fq(0));
    std::uint64_t rest = t;
    for (int i = 0; i < bd; ++i) {
      const Fq coef(static_cast<std::uint32_t>(rest % q));
      rest /= q;
      if (!coef.is_zero()) y = add(f, y, scale(f, coef, c.block[i]));
    }
    const Index yi = s.encode(y);
    const int r = which[s.norm(s.sub(shift, yi)).v];
    if (r < 0) continue;
    ++c.shell_sizes[r];
    for (Index x : span_points) b_points.push_back(s.add(x, yi));
  }
  c.b = PointSet(s, std::move(b_points));
  c.delta = distance_profile(c.a, c.b).delta;
  c.epsilon = 1.0 - std::log(static_cast<double>(r_size)) / std::log(static_cast<double>(q));
  return c;
}

}  // namespace fqh
