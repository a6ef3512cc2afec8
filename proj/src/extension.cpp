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


#include "fqharmonic/extension.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "fqharmonic/energy.hpp"

namespace fqh {

ExactExponent ExactExponent::of(Rational r) {
  if (r < Rational(1)) throw Error(ErrorCode::kBadExponent, "exponent must be >= 1");
  return ExactExponent(1 / r);
}

ExactExponent ExactExponent::from_reciprocal(Rational inv) {
  if (inv < Rational(0) || inv > Rational(1)) {
    throw Error(ErrorCode::kBadExponent, "reciprocal must lie in [0, 1]");
  }
  return ExactExponent(inv);
}

Rational ExactExponent::value() const {
  if (is_infinite()) throw Error(ErrorCode::kBadExponent, "infinite exponent");
  return 1 / inv_;
}

Exponent ExactExponent::to_exponent() const {
  if (is_infinite()) return Exponent::infinity();
  return Exponent(boost::rational_cast<double>(value()));
}

std::string ExactExponent::str() const {
  if (is_infinite()) return "inf";
  const Rational v = value();
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

Rational critical_r2(int d, int k_star) {
  if (d < 2 || k_star < 0 || k_star > d - 2) {
    throw Error(ErrorCode::kBadRange, "need d >= 2 and 0 <= k* <= d-2");
  }
  const std::int64_t dd = d, k = k_star;
  return Rational(2 * (dd * dd - dd * k - dd + k), (dd - 1) * (dd - 1 - k));
}

int paraboloid_max_subspace_dim(int d, int q) {
  if (d < 2) throw Error(ErrorCode::kBadRange, "need d >= 2");
  if (d % 2 == 0) return (d - 2) / 2;
  // The base F_q^(d-1) has even dimension; it splits fully unless
  // d - 1 = 2 mod 4 and -1 is a non-square.
  return ((d - 1) % 4 == 0 || q % 4 == 1) ? (d - 1) / 2 : (d - 3) / 2;
}

ExponentPair stein_tomas_pair(int d) {
  return {ExactExponent::of(2), ExactExponent::of(2 * d + 2, d - 1)};
}

ExponentPair stein_tomas_l4_pair(int d) {
  return {ExactExponent::of(4 * d - 4, 3 * d - 5), ExactExponent::of(4)};
}

bool necessary_region(int d, int k, const RationalPoint& pt) {
  if (d < 2 || k < 0 || k > d - 2) {
    throw Error(ErrorCode::kBadRange, "need d >= 2 and 0 <= k <= d-2");
  }
  const auto [x, y] = pt;
  const Rational zero(0), one(1);
  if (x < zero || x > one || y < zero || y > one) return false;
  const Rational cap(d - 1, 2 * d);
  const Rational slope(d - 1 - k, d - k);
  return y <= cap && y <= (1 - x) * slope;
}

bool necessary_region(int d, int k, const ExponentPair& e) {
  return necessary_region(d, k, {e.p.reciprocal(), e.r.reciprocal()});
}

std::array<RationalPoint, 4> necessary_corners(int d, int k) {
  const std::int64_t dd = d, kk = k;
  const Rational cap(dd - 1, 2 * dd);
  return {{{Rational(0), Rational(0)},
           {Rational(0), cap},
           {Rational(dd * dd - dd * kk - dd - kk, 2 * dd * (dd - 1 - kk)), cap},
           {Rational(1), Rational(0)}}};
}

bool on_necessary_boundary(int d, int k, const RationalPoint& pt) {
  if (!necessary_region(d, k, pt)) return false;
  const auto [x, y] = pt;
  const Rational cap(d - 1, 2 * d);
  const Rational slope(d - 1 - k, d - k);
  return x == Rational(0) || y == Rational(0) || y == cap || y == (1 - x) * slope;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::kRandomSubsets: return "random-subsets";
    case Family::kSubspaces: return "subspaces";
    case Family::kRandomComplex: return "random-complex";
    case Family::kSinglePoints: return "single-points";
    case Family::kFull: return "full";
  }
  return "unknown";
}

double extension_ratio(const ComplexGrid& f, const PointSet& v,
                       const ExponentPair& e) {
  const double num =
      lr_norm(extension_inverse(f, v), e.r.to_exponent(), Measure::counting());
  const double den = lr_norm(f, e.p.to_exponent(), Measure::surface(v));
  return num / den;
}

double dual_restriction_ratio(const ComplexGrid& g, const PointSet& v,
                              const ExactExponent& p_conj,
                              const ExactExponent& r_conj) {
  const double num =
      lr_norm(fourier_tilde(g), p_conj.to_exponent(), Measure::surface(v));
  const double den = lr_norm(g, r_conj.to_exponent(), Measure::counting());
  return num / den;
}

std::vector<PointSet> subspace_family(const PointSet& v, const Variety& kind) {
  const Space& s = v.space();
  const FiniteField& f = s.field();
  const int d = s.dim();
  AffineSubspace h;
  if (kind.kind == Variety::Kind::kParaboloid) {
    // Isotropic vectors of F_q^(d-1), lifted with last coordinate 0.
    h.base.assign(d, Fq(0));
    if (d >= 2) {
      const FormTransform ft = form_equivalence(f, d - 1);
      const int n = d - 1;
      std::vector<Point> iso;
      for (int i = 0; i < (n - 1) / 2; ++i) {
        Point y(n, Fq(0));
        y[2 * i] = f.one();
        y[2 * i + 1] = f.one();
        iso.push_back(ft.apply(f, y));
      }
      if (n % 2 == 0 && n >= 2 && ft.alpha == f.one()) {
        Point y(n, Fq(0));
        y[n - 2] = f.one();
        y[n - 1] = f.one();
        iso.push_back(ft.apply(f, y));
      }
      for (Point& x : iso) {
        x.push_back(Fq(0));
        h.basis.push_back(std::move(x));
      }
    }
  } else {
    try {
      h = subspace_on_sphere(f, d, kind.radius);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kCaseMismatch) throw;
      return {};
    }
  }
  std::vector<PointSet> out;
  for (int k = 0; k <= h.dim(); ++k) {
    AffineSubspace prefix{h.base, {h.basis.begin(), h.basis.begin() + k}};
    PointSet member = enumerate_subspace(s, prefix);
    if (!member.is_subset_of(v)) {
      throw Error(ErrorCode::kSupportViolation, "subspace leaves the variety");
    }
    out.push_back(std::move(member));
  }
  return out;
}

namespace {

struct MemberResult {
  double ratio = 0;
  bool monotone = true;
  double l4_error = 0;
};

// Exponents probed for monotonicity besides the requested one.
std::vector<ExactExponent> probe_exponents(const ExactExponent& e) {
  std::vector<ExactExponent> out = {ExactExponent::of(1), ExactExponent::of(2),
                                    ExactExponent::of(4),
                                    ExactExponent::infinity(), e};
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.reciprocal() < b.reciprocal();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ext norms must decrease as r grows; f norms on the probability space V
// must grow with p.
bool monotone_norms(const std::vector<double>& ext_desc_exponent,
                    const std::vector<double>& f_desc_exponent) {
  for (std::size_t i = 1; i < ext_desc_exponent.size(); ++i) {
    // Exponents sorted from largest (inf) down, so ext norms increase.
    if (ext_desc_exponent[i] < ext_desc_exponent[i - 1] * (1 - 1e-9)) return false;
  }
  for (std::size_t i = 1; i < f_desc_exponent.size(); ++i) {
    if (f_desc_exponent[i] > f_desc_exponent[i - 1] * (1 + 1e-9)) return false;
  }
  return true;
}

MemberResult evaluate_grid(const ComplexGrid& f, const PointSet& v,
                           const ExponentPair& e) {
  const ComplexGrid ext = extension_inverse(f, v);
  const Measure surface = Measure::surface(v);
  std::vector<double> ext_norms, f_norms;
  double num = 0, den = 0;
  for (const ExactExponent& x : probe_exponents(e.r)) {
    ext_norms.push_back(lr_norm(ext, x.to_exponent(), Measure::counting()));
    if (x == e.r) num = ext_norms.back();
  }
  for (const ExactExponent& x : probe_exponents(e.p)) {
    f_norms.push_back(lr_norm(f, x.to_exponent(), surface));
    if (x == e.p) den = f_norms.back();
  }
  return {num / den, monotone_norms(ext_norms, f_norms), 0.0};
}

// Indicator of a in v through closed forms: the l^2 norm by Plancherel, l^4
// by the energy identity, l^inf at m = 0.
MemberResult evaluate_indicator(const PointSet& a, const PointSet& v,
                                const ExponentPair& e, bool cross_check) {
  const Space& s = v.space();
  const double nv = static_cast<double>(v.size());
  const double na = static_cast<double>(a.size());
  const double qd = static_cast<double>(s.size());
  const double l4 =
      std::pow(qd * static_cast<double>(additive_energy(a)), 0.25) / nv;
  const double l2 = std::sqrt(qd * na) / nv;
  const double linf = na / nv;
  auto f_norm = [&](const ExactExponent& x) {
    if (x.is_infinite()) return 1.0;
    return std::pow(na / nv, boost::rational_cast<double>(x.reciprocal()));
  };
  MemberResult out;
  out.ratio = l4 / f_norm(e.p);
  std::vector<double> f_norms;
  for (const ExactExponent& x : probe_exponents(e.p)) f_norms.push_back(f_norm(x));
  out.monotone = monotone_norms({linf, l4, l2}, f_norms);
  if (cross_check) {
    ComplexGrid g = indicator(a);
    const double direct =
        lr_norm(extension_inverse(g, v), Exponent(4.0), Measure::counting());
    out.l4_error = std::abs(direct - l4) / std::max(l4, 1e-300);
  }
  return out;
}

}  // namespace

std::string variety_label(const Variety& kind) {
  if (kind.kind == Variety::Kind::kParaboloid) return "paraboloid";
  return "sphere(" + std::to_string(kind.radius.v) + ")";
}

RatioReport ratio_sweep(const Space& s, const Variety& kind,
                        const ExponentPair& e, Family family,
                        const SweepOptions& opt) {
  const PointSet v = enumerate_variety(s, kind);
  if (v.empty()) throw Error(ErrorCode::kEmptySet, "empty variety");
  const bool r_is_4 = !e.r.is_infinite() && e.r.value() == Rational(4);

  std::vector<PointSet> subspaces;
  if (family == Family::kSubspaces) {
    subspaces = subspace_family(v, kind);
  }
  std::size_t count = 1;
  switch (family) {
    case Family::kFull: break;
    case Family::kSubspaces: count += subspaces.size(); break;
    case Family::kSinglePoints: count += std::min(opt.trials, v.size()); break;
    case Family::kRandomSubsets:
    case Family::kRandomComplex: count += opt.trials; break;
  }

  auto member = [&](std::size_t id) -> MemberResult {
    if (id == 0) {
      return r_is_4 ? evaluate_indicator(v, v, e, opt.cross_check_l4)
                    : evaluate_grid(indicator(v), v, e);
    }
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                      static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(id)};
    std::mt19937_64 rng(seq);
    PointSet a(s);
    switch (family) {
      case Family::kFull:
        break;
      case Family::kSubspaces:
        a = subspaces[id - 1];
        break;
      case Family::kSinglePoints: {
        const std::size_t n = count - 1;
        a = PointSet(s, {v[(id - 1) * v.size() / n]});
        break;
      }
      case Family::kRandomSubsets: {
        std::vector<Index> pts = v.indices();
        const std::size_t k =
            std::uniform_int_distribution<std::size_t>(1, pts.size())(rng);
        for (std::size_t i = 0; i < k; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, pts.size() - 1);
          std::swap(pts[i], pts[pick(rng)]);
        }
        pts.resize(k);
        a = PointSet(s, std::move(pts));
        break;
      }
      case Family::kRandomComplex: {
        ComplexGrid g(s);
        std::normal_distribution<double> gauss;
        for (Index x : v) {
          const double re = gauss(rng);
          g[x] = Complex(re, gauss(rng));
        }
        return evaluate_grid(g, v, e);
      }
    }
    return r_is_4 ? evaluate_indicator(a, v, e, opt.cross_check_l4)
                  : evaluate_grid(indicator(a), v, e);
  };

  std::vector<MemberResult> results(count);
  unsigned threads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t id = next++; id < count; id = next++) {
            results[id] = member(id);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  RatioReport out;
  out.variety = variety_label(kind);
  out.exponents = e;
  out.family = family;
  out.members = count;
  out.ratio_of_one = results[0].ratio;
  for (std::size_t id = 0; id < count; ++id) {
    if (results[id].ratio > out.max_ratio) {
      out.max_ratio = results[id].ratio;
      out.argmax = id;
    }
    out.monotone = out.monotone && results[id].monotone;
    out.l4_identity_error = std::max(out.l4_identity_error, results[id].l4_error);
  }
  return out;
}

}  // namespace fqh
