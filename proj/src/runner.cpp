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


#include "fqharmonic/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fqharmonic/distance.hpp"
#include "fqharmonic/energy.hpp"
#include "fqharmonic/error.hpp"
#include "fqharmonic/extension.hpp"
#include "fqharmonic/field.hpp"
#include "fqharmonic/fourier.hpp"
#include "fqharmonic/geometry.hpp"
#include "fqharmonic/scheme.hpp"

namespace fqh {
namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;
using json = nlohmann::ordered_json;

constexpr double kIdentityTol = 1e-9;
constexpr double kSnapTol = 1e-6;
constexpr int kMaxAxiomVertices = 400;
constexpr std::size_t kMaxRandomSet = 400;
constexpr std::size_t kMaxExportPoints = 4096;

bool is_skip(ErrorCode c) {
  return c == ErrorCode::kHypothesisViolation ||
         c == ErrorCode::kImpossibleCase || c == ErrorCode::kCaseMismatch ||
         c == ErrorCode::kSizeLimitExceeded;
}

struct Job {
  std::string target;
  int q = 0;
  int d = 0;
  std::string kind;
};

struct JobResult {
  std::vector<CheckRecord> checks;
  json extra;
};

class Checker {
 public:
  Checker(int q, int d) : q_(q), d_(d) {}

  void check(const std::string& name, double tol,
             const std::function<void(CheckRecord&)>& body) {
    CheckRecord rec;
    rec.name = name;
    rec.q = q_;
    rec.d = d_;
    rec.tolerance = tol;
    const auto t0 = Clock::now();
    try {
      body(rec);
    } catch (const Error& e) {
      rec.status = is_skip(e.code()) ? CheckStatus::kSkip : CheckStatus::kFail;
      rec.lhs.clear();
      rec.rhs.clear();
      rec.detail = e.what();
    } catch (const std::exception& e) {
      rec.status = CheckStatus::kFail;
      rec.lhs.clear();
      rec.rhs.clear();
      rec.detail = e.what();
    }
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    out_.push_back(std::move(rec));
  }

  std::vector<CheckRecord> take() { return std::move(out_); }

 private:
  int q_;
  int d_;
  std::vector<CheckRecord> out_;
};

void pass_if(CheckRecord& r, bool ok) {
  r.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
}

// Deviation from an identity: lhs is the worst error, rhs is zero.
void within(CheckRecord& r, double err) {
  r.lhs = decimal(err);
  r.rhs = decimal(0);
  pass_if(r, err <= r.tolerance);
}

void at_most(CheckRecord& r, double lhs, double rhs, bool ok) {
  r.lhs = decimal(lhs);
  r.rhs = decimal(rhs);
  pass_if(r, ok);
}

void equal_counts(CheckRecord& r, std::int64_t lhs, std::int64_t rhs) {
  r.lhs = std::to_string(lhs);
  r.rhs = std::to_string(rhs);
  pass_if(r, lhs == rhs);
}

void skip(CheckRecord& r, const std::string& reason) {
  r.status = CheckStatus::kSkip;
  r.detail = reason;
}

double relative_gap(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale < kIdentityTol ? std::abs(lhs - rhs) : std::abs(lhs - rhs) / scale;
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

PointSet random_subset(const PointSet& v, std::size_t k, Rng& rng) {
  std::vector<Index> pts = v.indices();
  k = std::min(k, pts.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pts[i], pts[uniform(rng, i, pts.size() - 1)]);
  }
  pts.resize(k);
  return PointSet(v.space(), std::move(pts));
}

// A nonempty subset of v of random size at most cap.
PointSet random_nonempty(const PointSet& v, std::size_t cap, Rng& rng) {
  if (v.empty()) throw Error(ErrorCode::kEmptySet, "variety is empty");
  return random_subset(v, uniform(rng, 1, std::min(cap, v.size())), rng);
}

PointSet whole_space(const Space& s) {
  std::vector<Index> all(s.size());
  for (Index i = 0; i < s.size(); ++i) all[i] = i;
  return PointSet(s, std::move(all));
}

ComplexGrid random_grid(const Space& s, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexGrid g(s);
  for (Index i = 0; i < s.size(); ++i) g[i] = Complex(u(rng), u(rng));
  return g;
}

std::string fq_str(Fq x) { return std::to_string(x.v); }

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

double rational_value(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::vector<Fq> sphere_radii(const FiniteField& f, const RunConfig& cfg) {
  if (cfg.j) return {f.from_int(*cfg.j)};
  return {f.one(), f.least_nonsquare()};
}

std::size_t trials_of(const RunConfig& cfg, std::size_t cap) {
  return std::min<std::size_t>(static_cast<std::size_t>(cfg.trials), cap);
}

// ---------------------------------------------------------------- gauss

void gauss_job(Checker& c, const FiniteField& f) {
  c.check("gauss.closed_form", kIdentityTol, [&](CheckRecord& r) {
    within(r, std::abs(f.gauss_sum() - f.gauss_closed_form()) / std::sqrt(f.q()));
  });
  c.check("gauss.quadratic", kIdentityTol, [&](CheckRecord& r) {
    const Fq four = f.from_int(4);
    double err = 0;
    for (int u = 1; u < f.q(); ++u) {
      const Fq uu = f.element(static_cast<std::uint32_t>(u));
      for (int v = 0; v < f.q(); ++v) {
        const Fq vv = f.element(static_cast<std::uint32_t>(v));
        const Fq arg = f.div(f.square(vv), f.neg(f.mul(four, uu)));
        const Complex rhs = static_cast<double>(f.quad_char(uu)) *
                            f.gauss_sum() * f.add_char(arg);
        err = std::max(err, std::abs(gauss_quadratic(f, uu, vv) - rhs));
      }
    }
    within(r, err / std::sqrt(f.q()));
  });
}

// -------------------------------------------------------------- fourier

double closed_form_error(const Space& s, const ComplexGrid& hat,
                         const std::function<Complex(const Point&)>& closed) {
  double err = 0;
  for (Index m = 0; m < s.size(); ++m) {
    err = std::max(err, std::abs(closed(s.decode(m)) - hat[m]));
  }
  return err;
}

void fourier_job(Checker& c, const Space& s, const RunConfig& cfg, Rng& rng) {
  const FiniteField& f = s.field();
  c.check("fourier.paraboloid_closed_form", kIdentityTol, [&](CheckRecord& r) {
    const ComplexGrid hat =
        fourier_hat(indicator(enumerate_variety(s, Variety::paraboloid())));
    within(r, closed_form_error(s, hat, [&](const Point& m) {
             return paraboloid_hat_closed(s, m);
           }));
  });
  c.check("fourier.sphere_closed_form", kIdentityTol, [&](CheckRecord& r) {
    double err = 0;
    for (int t = 0; t < f.q(); ++t) {
      const Fq j = f.element(static_cast<std::uint32_t>(t));
      const ComplexGrid hat =
          fourier_hat(indicator(enumerate_variety(s, Variety::sphere(j))));
      err = std::max(err, closed_form_error(s, hat, [&](const Point& m) {
                       return sphere_hat_closed(s, j, m);
                     }));
    }
    r.detail = "all radii";
    within(r, err);
  });
  c.check("fourier.zero_sphere_closed_form", kIdentityTol, [&](CheckRecord& r) {
    zero_sphere_hat_closed(s, Point(s.dim(), Fq(0)));
    const PointSet s0 = enumerate_variety(s, Variety::sphere(Fq(0)));
    const ComplexGrid hat = fourier_hat(indicator(s0));
    within(r, closed_form_error(s, hat, [&](const Point& m) {
             return zero_sphere_hat_closed(s, m);
           }));
    const double count = zero_sphere_hat_closed(s, Point(s.dim(), Fq(0))).real() *
                         static_cast<double>(s.size());
    r.detail = "|S_0| = " + std::to_string(s0.size()) + ", formula " + decimal(count);
    if (std::abs(count - static_cast<double>(s0.size())) > kSnapTol) {
      r.status = CheckStatus::kFail;
    }
  });
  const std::size_t grids = trials_of(cfg, 20);
  std::vector<ComplexGrid> samples;
  for (std::size_t t = 0; t < grids; ++t) samples.push_back(random_grid(s, rng));
  c.check("fourier.plancherel", kIdentityTol, [&](CheckRecord& r) {
    double err = 0;
    for (const ComplexGrid& g : samples) {
      const double lhs = fourier_hat(g).values.squaredNorm();
      const double rhs = g.values.squaredNorm() / static_cast<double>(s.size());
      err = std::max(err, relative_gap(lhs, rhs));
    }
    within(r, err);
  });
  c.check("fourier.inversion", kIdentityTol, [&](CheckRecord& r) {
    double err = 0;
    for (const ComplexGrid& g : samples) {
      const ComplexGrid back = character_transform(fourier_hat(g), +1, 1.0);
      const double scale = g.values.cwiseAbs().maxCoeff();
      err = std::max(err, (back.values - g.values).cwiseAbs().maxCoeff() / scale);
    }
    within(r, err);
  });
  c.check("fourier.restriction_distance", kIdentityTol, [&](CheckRecord& r) {
    const PointSet all = whole_space(s);
    double err = 0;
    for (std::size_t t = 0; t < trials_of(cfg, 20); ++t) {
      const PointSet a = random_nonempty(all, all.size(), rng);
      for (int v = 1; v < f.q(); ++v) {
        const IdentityCheck id =
            restriction_distance_identity(a, f.element(static_cast<std::uint32_t>(v)));
        err = std::max(err, relative_gap(id.lhs, id.rhs));
      }
    }
    within(r, err);
  });
}

// --------------------------------------------------------------- energy

void energy_job(Checker& c, const Space& s, const RunConfig& cfg, Rng& rng) {
  const FiniteField& f = s.field();
  const std::size_t n = trials_of(cfg, 1000);
  const PointSet para = enumerate_variety(s, Variety::paraboloid());
  const Fq j = cfg.j ? f.from_int(*cfg.j) : f.one();
  const PointSet sph = enumerate_variety(s, Variety::sphere(j));
  const PointSet prim = enumerate_variety(s, Variety::sphere(f.primitive()));

  auto l4 = [&](const PointSet& v, CheckRecord& r) {
    double err = 0;
    for (std::size_t t = 0; t < std::min<std::size_t>(n, 50); ++t) {
      const L4Check l = l4_energy_identity(random_nonempty(v, kMaxRandomSet, rng), v);
      err = std::max(err, relative_gap(l.lhs, l.rhs));
    }
    within(r, err);
  };
  c.check("energy.l4_identity_paraboloid", kIdentityTol,
          [&](CheckRecord& r) { l4(para, r); });
  c.check("energy.l4_identity_sphere", kIdentityTol, [&](CheckRecord& r) {
    r.detail = "j=" + fq_str(j);
    l4(sph, r);
  });

  auto energy_bound = [&](const std::function<EnergyReport(const PointSet&)>& run,
                          const PointSet& v, const std::vector<PointSet>& extra,
                          CheckRecord& r) {
    double worst = 0;
    bool ok = true;
    auto take = [&](const EnergyReport& e) {
      worst = std::max(worst, e.ratio);
      ok = ok && e.pass;
    };
    for (const PointSet& a : extra) take(run(a));
    for (std::size_t t = 0; t < n; ++t) take(run(random_nonempty(v, kMaxRandomSet, rng)));
    at_most(r, worst, cfg.c_test, ok);
    r.detail = "max ratio over " + std::to_string(n + extra.size()) + " sets";
  };
  c.check("energy.paraboloid_bound", 0, [&](CheckRecord& r) {
    std::vector<PointSet> extra;
    if (para.size() <= kMaxEnergySetSize) extra.push_back(para);
    energy_bound([&](const PointSet& a) { return paraboloid_energy_check(a, cfg.c_test); },
                 para, extra, r);
  });
  c.check("energy.paraboloid_sharpness", 0, [&](CheckRecord& r) {
    paraboloid_energy_check(PointSet(s, {0}), cfg.c_test);
    // Span of mutually orthogonal isotropic vectors of F_q^(d-3), padded
    // with three zero coordinates.
    std::vector<Point> basis;
    for (const Point& v : mutually_orthogonal(f, s.dim() - 3)) {
      Point w = v;
      w.resize(s.dim(), Fq(0));
      basis.push_back(std::move(w));
    }
    const PointSet a =
        enumerate_subspace(s, AffineSubspace{Point(s.dim(), Fq(0)), basis});
    if (!a.is_subset_of(para)) {
      throw Error(ErrorCode::kSupportViolation, "span is not on the paraboloid");
    }
    const auto cube = static_cast<std::int64_t>(a.size() * a.size() * a.size());
    equal_counts(r, static_cast<std::int64_t>(additive_energy(a)), cube);
    r.detail = "|A| = " + std::to_string(a.size());
  });
  c.check("energy.sphere_bound", 0, [&](CheckRecord& r) {
    energy_bound([&](const PointSet& a) { return sphere_energy_check(a, cfg.c_test); },
                 prim, {}, r);
  });
  c.check("energy.sphere_zero_pairs", 0, [&](CheckRecord& r) {
    double worst = 0;
    bool ok = true;
    for (std::size_t t = 0; t < n; ++t) {
      const ZeroPairsReport z =
          sphere_zero_pairs_check(random_nonempty(prim, kMaxRandomSet, rng), cfg.c_test);
      worst = std::max(worst, z.ratio);
      ok = ok && z.pass;
    }
    at_most(r, worst, cfg.c_test, ok);
  });
  c.check("energy.zero_pairs_bound", 0, [&](CheckRecord& r) {
    const PointSet all = whole_space(s);
    zero_pairs_check(PointSet(s, {0}));
    double worst = 0;
    bool ok = true;
    for (std::size_t t = 0; t < n; ++t) {
      const ZeroPairsReport z =
          zero_pairs_check(random_nonempty(all, std::max<std::size_t>(kMaxRandomSet, all.size() / 8), rng));
      worst = std::max(worst, z.ratio);
      ok = ok && z.pass;
    }
    at_most(r, worst, 1.0, ok);
    r.detail = "constant 1";
  });
  c.check("energy.right_angle_split", 0, [&](CheckRecord& r) {
    std::int64_t bad = 0;
    for (std::size_t t = 0; t < std::min<std::size_t>(n, 20); ++t) {
      const PointSet a = random_nonempty(para, 100, rng);
      const EnergySplit sp = right_angle_split(a);
      bad += sp.zero_class + sp.nonzero_class != additive_energy(a);
    }
    equal_counts(r, bad, 0);
    r.detail = "mismatches";
  });
  c.check("incidence.mixing_bound", 0, [&](CheckRecord& r) {
    const PointSet all = whole_space(s);
    double worst = 0;
    bool ok = true;
    for (std::size_t t = 0; t < n; ++t) {
      const PointSet u = random_nonempty(all, kMaxRandomSet, rng);
      std::vector<Hyperplane> planes(uniform(rng, 1, 64));
      for (Hyperplane& h : planes) {
        h.normal.assign(s.dim(), Fq(0));
        do {
          for (Fq& x : h.normal) x = Fq(static_cast<std::uint32_t>(uniform(rng, 0, f.q() - 1)));
        } while (std::all_of(h.normal.begin(), h.normal.end(),
                             [](Fq x) { return x.is_zero(); }));
        h.offset = Fq(static_cast<std::uint32_t>(uniform(rng, 0, f.q() - 1)));
      }
      const IncidenceReport ir = point_hyperplane_incidences(u, planes);
      worst = std::max(worst, ir.bound > 0 ? ir.deviation / ir.bound : 0.0);
      ok = ok && ir.pass;
    }
    at_most(r, worst, 1.0, ok);
    r.detail = "deviation / bound";
  });
}

// --------------------------------------------------------------- scheme

void scheme_job(Checker& c, const FiniteField& f, const RunConfig& cfg, Rng& rng) {
  const int m = cfg.m;
  const SchemeGraph g = build_scheme(f, m);
  const std::string tag = "m=" + std::to_string(m);
  c.check("scheme.vertex_count", 0, [&](CheckRecord& r) {
    const std::int64_t qm = static_cast<std::int64_t>(std::llround(std::pow(f.q(), m)));
    equal_counts(r, g.size(), qm * (qm - 1) / 2);
    r.detail = tag;
  });
  c.check("scheme.axioms", 0, [&](CheckRecord& r) {
    r.detail = tag;
    if (g.size() > kMaxAxiomVertices) {
      skip(r, tag + ", exhaustive check limited to " +
                  std::to_string(kMaxAxiomVertices) + " vertices");
      return;
    }
    const SchemeAxioms ax = verify_scheme_axioms(g);
    equal_counts(r, ax.diagonal + ax.partition + ax.symmetric + ax.regular + ax.commutative, 5);
  });
  c.check("scheme.r1_degree", 0, [&](CheckRecord& r) {
    equal_counts(r, r1_degree(g), r1_degree_formula(f, m));
    r.detail = tag;
  });
  std::optional<SpectrumReport> spectrum;
  c.check("scheme.r1_spectrum", kSnapTol, [&](CheckRecord& r) {
    spectrum = r1_spectrum(g);
    const std::vector<std::int64_t> predicted = r1_predicted_eigenvalues(f, m);
    std::set<std::int64_t> got;
    std::ostringstream os;
    os << tag << ", eigenvalues";
    for (auto [value, mult] : spectrum->eigenvalues) {
      got.insert(value);
      os << " " << value << "^" << mult;
    }
    os << ", predicted";
    for (std::int64_t v : predicted) os << " " << v;
    const std::set<std::int64_t> want(predicted.begin(), predicted.end());
    // With m = 1 the relation is empty and only the degree 0 survives.
    const bool ok = m == 1 ? std::includes(want.begin(), want.end(), got.begin(), got.end()) &&
                                 got.count(spectrum->degree)
                           : got == want;
    at_most(r, spectrum->max_snap_error, kSnapTol, ok && spectrum->max_snap_error <= kSnapTol);
    r.detail = os.str();
  });
  c.check("scheme.edge_bound", 0, [&](CheckRecord& r) {
    double worst = 0;
    bool ok = true;
    const std::size_t n = trials_of(cfg, 1000);
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<int> w(g.size());
      for (int v = 0; v < g.size(); ++v) w[v] = v;
      std::shuffle(w.begin(), w.end(), rng);
      w.resize(uniform(rng, 1, w.size()));
      std::sort(w.begin(), w.end());
      const EdgeBoundReport e = edge_bound_check(g, w, spectrum ? &*spectrum : nullptr);
      worst = std::max(worst, e.bound > 0 ? e.edges / e.bound : 0.0);
      ok = ok && e.pass;
    }
    at_most(r, worst, 1.0, ok);
    r.detail = tag + ", edges / bound";
  });
  c.check("scheme.zero_pairs_bridge", 0, [&](CheckRecord& r) {
    r.detail = tag;
    const Space s(f, 2 * m + 1);
    const PointSet sphere = enumerate_variety(s, Variety::sphere(f.primitive()));
    std::int64_t bad = 0;
    for (std::size_t t = 0; t < trials_of(cfg, 100); ++t) {
      bad += !zero_pairs_via_graph(g, random_nonempty(sphere, sphere.size(), rng)).identity_holds;
    }
    equal_counts(r, bad, 0);
  });
}

// ------------------------------------------------------------- distance

struct Worst {
  bool any = false;
  bool ok = true;
  double margin = 0;
  double lhs = 0;
  double rhs = 0;
  std::size_t count = 0;

  void take(const TheoremVerdict& v) {
    ++count;
    ok = ok && v.pass && v.stated_pass;
    const double gap = static_cast<double>(v.lhs) - v.rhs;
    if (!any || gap < margin) {
      any = true;
      margin = gap;
      lhs = static_cast<double>(v.lhs);
      rhs = v.rhs;
    }
  }
  void finish(CheckRecord& r, const std::string& label) const {
    at_most(r, rhs, lhs, ok);
    r.lhs = decimal(lhs);
    r.rhs = decimal(rhs);
    r.detail = label + ", " + std::to_string(count) + " pairs, worst |Delta| - bound " +
               decimal(margin);
  }
};

void distance_job(Checker& c, const Space& s, const RunConfig& cfg, Rng& rng) {
  const FiniteField& f = s.field();
  const std::size_t n = trials_of(cfg, 100000);
  const PointSet all = whole_space(s);
  const std::size_t b_cap = std::min<std::size_t>(all.size(), 4096);

  auto run = [&](const PointSet& v, const std::function<TheoremVerdict(const PointSet&,
                                                                         const PointSet&)>& thm,
                 const std::string& label, CheckRecord& r) {
    if (v.empty()) throw Error(ErrorCode::kHypothesisViolation, "variety is empty");
    thm(PointSet(s, {v[0]}), PointSet(s, {0}));
    Worst w;
    for (std::size_t t = 0; t < n; ++t) {
      const PointSet a = random_nonempty(v, v.size(), rng);
      const PointSet b = random_nonempty(all, b_cap, rng);
      w.take(thm(a, b));
    }
    w.finish(r, label);
  };
  c.check("distance.paraboloid", 0, [&](CheckRecord& r) {
    run(enumerate_variety(s, Variety::paraboloid()), theorem_paraboloid_distance,
        "paraboloid", r);
  });
  for (Fq j : sphere_radii(f, cfg)) {
    c.check("distance.sphere", 0, [&](CheckRecord& r) {
      run(enumerate_variety(s, Variety::sphere(j)),
          [&](const PointSet& a, const PointSet& b) { return theorem_sphere_distance(a, j, b); },
          "j=" + fq_str(j), r);
    });
  }
  c.check("distance.zero_sphere", 0, [&](CheckRecord& r) {
    run(enumerate_variety(s, Variety::sphere(Fq(0))), theorem_zero_sphere_distance,
        "zero sphere", r);
  });
  c.check("distance.mu_square_bounds", 0, [&](CheckRecord& r) {
    bool ok = true;
    double worst = 0;
    for (std::size_t t = 0; t < std::min<std::size_t>(n, 100); ++t) {
      const PointSet a = random_nonempty(all, b_cap, rng);
      const PointSet b = random_nonempty(all, b_cap, rng);
      std::vector<Index> om = a.indices();
      const PointSet more = random_nonempty(all, all.size(), rng);
      om.insert(om.end(), more.begin(), more.end());
      std::sort(om.begin(), om.end());
      om.erase(std::unique(om.begin(), om.end()), om.end());
      const MuSquareBounds mb = mu_square_bounds(a, b, PointSet(s, std::move(om)));
      ok = ok && mb.pass;
      worst = std::max(worst, static_cast<double>(mb.exact) / std::min(mb.first, mb.second));
    }
    at_most(r, worst, 1.0, ok);
    r.detail = "exact / min(first, second)";
  });
  for (Fq j : sphere_radii(f, cfg)) {
    c.check("distance.sphere_form", 0, [&](CheckRecord& r) {
      const PointSet v = enumerate_variety(s, Variety::sphere(j));
      bool ok = true;
      double worst = 0;
      for (std::size_t t = 0; t < std::min<std::size_t>(n, 100); ++t) {
        const SphereFormReport sf = sform_bound(random_nonempty(v, v.size(), rng), j,
                                                random_nonempty(all, b_cap, rng));
        ok = ok && sf.pass;
        worst = std::max(worst, sf.bound > 0 ? sf.exact / sf.bound : 0.0);
      }
      at_most(r, worst, 1.0, ok);
      r.detail = "j=" + fq_str(j) + ", exact / bound";
    });
  }
}

// ------------------------------------------------------------ extension

void extension_job(Checker& c, const Space& s, const RunConfig& cfg) {
  const FiniteField& f = s.field();
  const int d = s.dim();
  const int q = f.q();
  SweepOptions opt;
  opt.trials = trials_of(cfg, 200);
  opt.seed = cfg.seed;
  opt.threads = 1;

  c.check("extension.critical_r2", 0, [&](CheckRecord& r) {
    const int k = paraboloid_max_subspace_dim(d, q);
    const Rational got = critical_r2(d, k);
    Rational want;
    if (d % 2 == 0) {
      want = Rational(2 * d + 4, d);
    } else if (d % 4 == 3 && q % 4 == 3) {
      want = Rational(2 * d + 6, d + 1);
    } else {
      want = Rational(2 * d + 2, d - 1);
    }
    r.lhs = decimal(rational_value(got));
    r.rhs = decimal(rational_value(want));
    pass_if(r, got == want);
    r.detail = "k=" + std::to_string(k) + ", r=" + rational_str(got);
  });
  c.check("extension.necessary_corners", 0, [&](CheckRecord& r) {
    const int k = paraboloid_max_subspace_dim(d, q);
    std::int64_t ok = 0;
    std::ostringstream os;
    for (const RationalPoint& pt : necessary_corners(d, k)) {
      ok += necessary_region(d, k, pt) && on_necessary_boundary(d, k, pt);
      os << " (" << rational_str(pt.first) << ", " << rational_str(pt.second) << ")";
    }
    equal_counts(r, ok, 4);
    r.detail = "corners" + os.str();
  });
  auto probe = [&](const Variety& v, const ExponentPair& e, CheckRecord& r) {
    const RatioReport rnd = ratio_sweep(s, v, e, Family::kRandomSubsets, opt);
    const RatioReport sub = ratio_sweep(s, v, e, Family::kSubspaces, opt);
    const double worst = std::max(rnd.max_ratio, sub.max_ratio);
    at_most(r, worst, cfg.c_test, worst <= cfg.c_test);
    r.detail = variety_label(v) + " (" + e.p.str() + " -> " + e.r.str() + "), " +
               std::to_string(rnd.members + sub.members) + " members";
  };
  c.check("extension.stein_tomas_paraboloid", 0, [&](CheckRecord& r) {
    probe(Variety::paraboloid(), stein_tomas_pair(d), r);
  });
  c.check("extension.stein_tomas_sphere", 0, [&](CheckRecord& r) {
    probe(Variety::sphere(cfg.j ? f.from_int(*cfg.j) : f.one()), stein_tomas_pair(d), r);
  });
  c.check("extension.l4_identity", kIdentityTol, [&](CheckRecord& r) {
    SweepOptions o = opt;
    o.cross_check_l4 = true;
    const RatioReport rep =
        ratio_sweep(s, Variety::paraboloid(), stein_tomas_l4_pair(d), Family::kRandomSubsets, o);
    within(r, rep.l4_identity_error);
  });
  c.check("extension.paraboloid_probe", 0, [&](CheckRecord& r) {
    if (d % 4 != 3 || d < 7 || q % 4 != 3) {
      skip(r, "needs d = 4k+3 >= 7 and q = 3 mod 4");
      return;
    }
    probe(Variety::paraboloid(), ExponentPair{ExactExponent::of(2), ExactExponent::of(2 * d + 4, d)},
          r);
  });
}

// ---------------------------------------------------------------- sharp

json points_json(const Space& s, const PointSet& a) {
  json arr = json::array();
  for (Index x : a) {
    json p = json::array();
    for (Fq c : s.decode(x)) p.push_back(c.v);
    arr.push_back(std::move(p));
  }
  return arr;
}

json point_json(const Point& p) {
  json arr = json::array();
  for (Fq c : p) arr.push_back(c.v);
  return arr;
}

json sharp_job(Checker& c, const FiniteField& f, int d, const RunConfig& cfg) {
  const SharpKind kind = parse_sharp_kind(cfg.kind);
  const Fq j = cfg.j ? f.from_int(*cfg.j) : f.one();
  std::optional<SharpConstruction> sc;
  c.check("sharp.construct", 0, [&](CheckRecord& r) {
    sc.emplace(sharp_construction(kind, f, d, cfg.rsize, j));
    pass_if(r, true);
    r.detail = to_string(kind) + (sc->via_normal_form ? ", normal form" : "");
  });
  if (!sc) return json();
  const Space s = sc->a.space();
  c.check("sharp.delta_equals_radii", 0, [&](CheckRecord& r) {
    std::vector<Fq> want = sc->radii;
    std::vector<Fq> got = sc->delta;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    equal_counts(r, static_cast<std::int64_t>(got.size()), static_cast<std::int64_t>(want.size()));
    pass_if(r, got == want);
  });
  c.check("sharp.sizes", 0, [&](CheckRecord& r) {
    const auto span = static_cast<std::uint64_t>(std::llround(std::pow(f.q(), sc->span.size())));
    std::uint64_t shells = 0;
    bool ok = true;
    for (std::size_t i = 0; i < sc->radii.size(); ++i) {
      shells += sc->shell_sizes[i];
      if (!sc->via_normal_form) {
        ok = ok && sc->shell_sizes[i] ==
                       sphere_count(f, static_cast<int>(sc->block.size()), sc->radii[i]);
      }
    }
    equal_counts(r, static_cast<std::int64_t>(sc->b.size()),
                 static_cast<std::int64_t>(span * shells));
    pass_if(r, ok && sc->a.size() == span && sc->b.size() == span * shells);
    r.detail = "|A| = " + std::to_string(sc->a.size()) + ", |B| = " + std::to_string(sc->b.size());
  });
  json out;
  out["kind"] = to_string(kind);
  out["q"] = f.q();
  out["d"] = d;
  if (kind == SharpKind::kSphereOdd || kind == SharpKind::kSphereEven) out["j"] = j.v;
  out["rsize"] = cfg.rsize;
  json radii = json::array();
  for (Fq t : sc->radii) radii.push_back(t.v);
  out["radii"] = radii;
  json span = json::array();
  for (const Point& p : sc->span) span.push_back(point_json(p));
  out["span"] = span;
  json block = json::array();
  for (const Point& p : sc->block) block.push_back(point_json(p));
  out["block"] = block;
  out["shift"] = point_json(sc->shift);
  out["via_normal_form"] = sc->via_normal_form;
  out["shell_sizes"] = sc->shell_sizes;
  out["a_size"] = sc->a.size();
  out["b_size"] = sc->b.size();
  json delta = json::array();
  for (Fq t : sc->delta) delta.push_back(t.v);
  out["delta"] = delta;
  out["epsilon"] = decimal(sc->epsilon);
  if (sc->a.size() <= kMaxExportPoints) out["a"] = points_json(s, sc->a);
  if (sc->b.size() <= kMaxExportPoints) out["b"] = points_json(s, sc->b);
  return out;
}

// ----------------------------------------------------------------- jobs

JobResult run_job(const Job& job, const RunConfig& cfg, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);
  RunConfig local = cfg;
  local.kind = job.kind.empty() ? cfg.kind : job.kind;
  Checker c(job.q, job.d);
  JobResult res;
  const FiniteField f = make_field_of_order(job.q);
  auto with_space = [&](const std::function<void(const Space&)>& body) {
    std::optional<Space> s;
    try {
      s.emplace(f, job.d);
    } catch (const Error& e) {
      if (!is_skip(e.code())) throw;
      c.check(job.target + ".grid", 0, [&](CheckRecord& r) { skip(r, e.what()); });
      return;
    }
    body(*s);
  };
  if (job.target == "gauss") {
    gauss_job(c, f);
  } else if (job.target == "fourier") {
    with_space([&](const Space& s) { fourier_job(c, s, local, rng); });
  } else if (job.target == "energy") {
    with_space([&](const Space& s) { energy_job(c, s, local, rng); });
  } else if (job.target == "scheme") {
    scheme_job(c, f, local, rng);
  } else if (job.target == "distance") {
    with_space([&](const Space& s) { distance_job(c, s, local, rng); });
  } else if (job.target == "extension") {
    with_space([&](const Space& s) { extension_job(c, s, local); });
  } else if (job.target == "sharp") {
    res.extra = sharp_job(c, f, job.d, local);
  }
  res.checks = c.take();
  return res;
}

std::vector<JobResult> run_jobs(const std::vector<Job>& jobs, const RunConfig& cfg) {
  std::vector<JobResult> results(jobs.size());
  unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            results[i] = run_job(jobs[i], cfg, i);
          } catch (const std::exception& e) {
            CheckRecord rec;
            rec.name = jobs[i].target + ".job";
            rec.status = CheckStatus::kFail;
            rec.q = jobs[i].q;
            rec.d = jobs[i].d;
            rec.detail = e.what();
            results[i].checks.push_back(rec);
          }
        }
      });
    }
  }
  return results;
}

const std::vector<std::string>& targets() {
  static const std::vector<std::string> t{"gauss", "fourier", "energy", "scheme",
                                          "distance", "extension", "sharp"};
  return t;
}

std::vector<int> default_q(const std::string& target) {
  if (target == "scheme") return {3};
  if (target == "sharp") return {7};
  if (target == "energy" || target == "distance") return {3, 7};
  return {3, 5};
}

std::vector<int> default_d(const std::string& target) {
  if (target == "fourier") return {2, 3};
  return {3};
}

std::vector<int> odd_prime_powers(int limit) {
  std::vector<int> out;
  for (int q = 3; q <= limit; q += 2) {
    if (prime_power(q)) out.push_back(q);
  }
  return out;
}

std::vector<Job> grid_jobs(const std::string& target, const RunConfig& cfg) {
  std::vector<Job> jobs;
  std::vector<int> qs = cfg.q.empty() ? default_q(target) : cfg.q;
  if (target == "gauss" && cfg.q.empty()) qs = odd_prime_powers(cfg.qmax);
  const std::vector<int> ds = cfg.d.empty() ? default_d(target) : cfg.d;
  for (int q : qs) {
    if (target == "gauss" || target == "scheme") {
      jobs.push_back({target, q, 0, ""});
      continue;
    }
    for (int d : ds) jobs.push_back({target, q, d, ""});
  }
  return jobs;
}

std::vector<Job> report_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int q : odd_prime_powers(std::min(cfg.qmax, 49))) jobs.push_back({"gauss", q, 0, ""});
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {5, 2}, {3, 6}}) {
    jobs.push_back({"fourier", q, d, ""});
  }
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 3}, {5, 5}, {3, 6}, {3, 7}}) {
    jobs.push_back({"energy", q, d, ""});
  }
  jobs.push_back({"scheme", 3, 0, ""});
  jobs.push_back({"scheme", 5, 0, ""});
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 3}, {7, 3}, {5, 4}, {3, 6}}) {
    jobs.push_back({"distance", q, d, ""});
  }
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {3, 7}}) {
    jobs.push_back({"extension", q, d, ""});
  }
  jobs.push_back({"sharp", 7, 3, "para"});
  jobs.push_back({"sharp", 3, 3, "sphere-odd"});
  jobs.push_back({"sharp", 3, 4, "sphere-even"});
  jobs.push_back({"sharp", 3, 6, "zero-sphere"});
  return jobs;
}

void validate(const RunConfig& cfg) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  static const std::set<std::string> commands{"verify", "construct", "sweep", "report"};
  if (!commands.count(cfg.command)) bad("unknown command " + cfg.command);
  if (cfg.command != "report" &&
      std::find(targets().begin(), targets().end(), cfg.target) == targets().end()) {
    bad("unknown target " + cfg.target);
  }
  if (cfg.command == "construct" && cfg.target != "sharp") bad("construct expects sharp");
  for (int q : cfg.q) {
    if (q < 3 || q > kMaxFieldSize) bad("q out of range: " + std::to_string(q));
    make_field_of_order(q);
  }
  for (int d : cfg.d) {
    if (d < 1 || d > 32) bad("d out of range: " + std::to_string(d));
  }
  if (cfg.m < 1 || cfg.m > 8) bad("m out of range");
  if (cfg.trials < 1) bad("trials must be positive");
  if (cfg.rsize < 1) bad("rsize must be positive");
  if (!(cfg.c_test > 0)) bad("ctest must be positive");
  if (cfg.qmax < 3 || cfg.qmax > kMaxFieldSize) bad("qmax out of range");
  if (cfg.target == "sharp" || cfg.command == "construct") {
    parse_sharp_kind(cfg.kind);
    for (int q : cfg.q.empty() ? default_q("sharp") : cfg.q) {
      if (cfg.rsize > q) bad("rsize exceeds q");
    }
  }
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkip: return "skip";
  }
  return "skip";
}

int Report::count(CheckStatus s) const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [s](const CheckRecord& c) { return c.status == s; }));
}

std::string decimal(double x) {
  if (x == 0) x = 0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Report run(const RunConfig& cfg) {
  validate(cfg);
  Report rep;
  rep.command = cfg.command;
  rep.params["command"] = cfg.command;
  if (cfg.command != "report") rep.params["target"] = cfg.target;
  rep.params["q"] = cfg.q;
  rep.params["d"] = cfg.d;
  rep.params["m"] = cfg.m;
  rep.params["j"] = cfg.j ? json(*cfg.j) : json(nullptr);
  rep.params["kind"] = cfg.kind;
  rep.params["rsize"] = cfg.rsize;
  rep.params["trials"] = cfg.trials;
  rep.params["seed"] = cfg.seed;
  rep.params["qmax"] = cfg.qmax;
  rep.params["constants"] = {{"c_test", cfg.c_test}};

  const std::vector<Job> jobs =
      cfg.command == "report" ? report_jobs(cfg) : grid_jobs(cfg.target, cfg);
  std::vector<JobResult> results = run_jobs(jobs, cfg);
  json extra = json::array();
  for (JobResult& r : results) {
    for (CheckRecord& c : r.checks) rep.checks.push_back(std::move(c));
    if (!r.extra.is_null()) extra.push_back(std::move(r.extra));
  }
  if (!extra.empty()) rep.extra = extra.size() == 1 ? extra[0] : extra;
  return rep;
}

json to_json(const Report& r, bool timing) {
  json out;
  out["command"] = r.command;
  out["params"] = r.params;
  json checks = json::array();
  for (const CheckRecord& c : r.checks) {
    json row;
    row["name"] = c.name;
    row["status"] = to_string(c.status);
    row["q"] = c.q;
    row["d"] = c.d;
    row["lhs"] = c.lhs;
    row["rhs"] = c.rhs;
    row["tolerance"] = c.tolerance;
    if (timing) row["elapsed_ms"] = c.elapsed_ms;
    if (!c.detail.empty()) row["detail"] = c.detail;
    checks.push_back(std::move(row));
  }
  out["checks"] = checks;
  out["summary"] = {{"pass", r.count(CheckStatus::kPass)},
                    {"fail", r.count(CheckStatus::kFail)},
                    {"skip", r.count(CheckStatus::kSkip)}};
  if (!r.extra.is_null()) out["construction"] = r.extra;
  return out;
}

std::string to_csv(const Report& r, bool timing) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "name,status,q,d,lhs,rhs,tolerance" << (timing ? ",elapsed_ms" : "") << ",detail\n";
  for (const CheckRecord& c : r.checks) {
    os << c.name << "," << to_string(c.status) << "," << c.q << "," << c.d << ","
       << c.lhs << "," << c.rhs << "," << decimal(c.tolerance);
    if (timing) os << "," << decimal(c.elapsed_ms);
    os << "," << quote(c.detail) << "\n";
  }
  return os.str();
}

int exit_code(const Report& r) { return r.count(CheckStatus::kFail) > 0 ? 1 : 0; }

}  // namespace fqh
