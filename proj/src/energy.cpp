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


#include "fqharmonic/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fqh {
namespace {

// Coordinates of every point, row-major.
std::vector<Fq> coords_of(const PointSet& a) {
  const int d = a.space().dim();
  std::vector<Fq> out(a.size() * d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point x = a.space().decode(a[i]);
    std::copy(x.begin(), x.end(), out.begin() + i * d);
  }
  return out;
}

void require_support(const PointSet& a, const Variety& v, const char* what) {
  for (Index x : a) {
    if (!contains(a.space(), v, x)) {
      throw Error(ErrorCode::kSupportViolation,
                  std::string("set is not contained in the ") + what);
    }
  }
}

void require_sphere_energy_hypotheses(const PointSet& a) {
  const FiniteField& f = a.space().field();
  const int d = a.space().dim();
  const bool ok = (d % 4 == 1 && d >= 5) || (d % 4 == 3 && f.q() % 4 == 1);
  if (!ok) {
    throw Error(ErrorCode::kHypothesisViolation,
                "needs d = 4k+1, or d = 4k-1 with q = 1 mod 4");
  }
  require_support(a, Variety::sphere(f.primitive()), "sphere of primitive radius");
}

}  // namespace

std::uint64_t additive_energy(const PointSet& a) {
  if (a.size() > kMaxEnergySetSize) {
    throw Error(ErrorCode::kSizeLimitExceeded, "set too large for energy");
  }
  const Space& s = a.space();
  const std::size_t n = a.size();
  if (n == 0) return 0;
  const int d = s.dim();
  const FiniteField& f = s.field();
  const std::vector<Fq> c = coords_of(a);
  auto sum_index = [&](std::size_t i, std::size_t j) {
    Index out = 0;
    for (int k = 0; k < d; ++k) {
      out = out * f.q() + f.add(c[i * d + k], c[j * d + k]).v;
    }
    return out;
  };
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  std::uint64_t energy = 0;
  if (pairs * 4 >= s.size()) {
    std::vector<std::uint32_t> r(s.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      r[sum_index(i, i)] += 1;
      for (std::size_t j = i + 1; j < n; ++j) r[sum_index(i, j)] += 2;
    }
    for (std::uint32_t v : r) energy += static_cast<std::uint64_t>(v) * v;
    return energy;
  }
  // Sorted multiset of unordered sums, with the weight in the low bit.
  std::vector<std::uint64_t> sums;
  sums.reserve(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    sums.push_back(static_cast<std::uint64_t>(sum_index(i, i)) << 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      sums.push_back((static_cast<std::uint64_t>(sum_index(i, j)) << 1) | 1);
    }
  }
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 0; i < sums.size();) {
    std::uint64_t rep = 0;
    std::size_t j = i;
    while (j < sums.size() && (sums[j] >> 1) == (sums[i] >> 1)) {
      rep += (sums[j] & 1) ? 2 : 1;
      ++j;
    }
    energy += rep * rep;
    i = j;
  }
  return energy;
}

std::uint64_t zero_distance_pairs(const PointSet& a) {
  const Space& s = a.space();
  const FiniteField& f = s.field();
  const int d = s.dim();
  const std::vector<Fq> c = coords_of(a);
  const std::size_t n = a.size();
  std::uint64_t count = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Fq acc(0);
      for (int k = 0; k < d; ++k) {
        acc = f.add(acc, f.square(f.sub(c[i * d + k], c[j * d + k])));
      }
      if (acc.is_zero()) count += 2;
    }
  }
  return count;
}

double L4Check::relative_error() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0 ? 0 : std::abs(lhs - rhs) / scale;
}

L4Check l4_energy_identity(const PointSet& a, const PointSet& v) {
  if (!a.is_subset_of(v)) {
    throw Error(ErrorCode::kSupportViolation, "set is not on the variety");
  }
  L4Check out;
  out.energy = additive_energy(a);
  const ComplexGrid ext = extension_inverse(indicator(a), v);
  for (Index m = 0; m < ext.space.size(); ++m) {
    const double n2 = std::norm(ext[m]);
    out.lhs += n2 * n2;
  }
  const double vs = static_cast<double>(v.size());
  out.rhs = static_cast<double>(a.space().size()) *
            static_cast<double>(out.energy) / (vs * vs * vs * vs);
  return out;
}

namespace {

EnergyReport energy_report(const PointSet& a, double c_test) {
  const double q = a.space().q();
  const int d = a.space().dim();
  EnergyReport r;
  r.size = a.size();
  r.energy = additive_energy(a);
  const double n = static_cast<double>(a.size());
  r.cubic_term = n * n * n / q;
  r.square_term = std::pow(q, (d - 2) / 2.0) * n * n;
  r.c_test = c_test;
  const double denom = r.cubic_term + r.square_term;
  r.ratio = denom > 0 ? static_cast<double>(r.energy) / denom : 0.0;
  r.pass = static_cast<double>(r.energy) <= c_test * denom;
  return r;
}

ZeroPairsReport zero_report(const PointSet& a, double bound, double c_test) {
  ZeroPairsReport r;
  r.size = a.size();
  r.pairs = zero_distance_pairs(a);
  r.bound = bound;
  r.c_test = c_test;
  r.ratio = bound > 0 ? static_cast<double>(r.pairs) / bound : 0.0;
  r.pass = static_cast<double>(r.pairs) <= c_test * bound;
  return r;
}

}  // namespace

EnergyReport paraboloid_energy_check(const PointSet& a, double c_test) {
  const int d = a.space().dim();
  if (d % 4 != 3 || d < 7 || a.space().q() % 4 != 3) {
    throw Error(ErrorCode::kHypothesisViolation,
                "needs d = 4k+3 (k >= 1) and q = 3 mod 4");
  }
  require_support(a, Variety::paraboloid(), "paraboloid");
  return energy_report(a, c_test);
}

EnergyReport sphere_energy_check(const PointSet& a, double c_test) {
  require_sphere_energy_hypotheses(a);
  return energy_report(a, c_test);
}

ZeroPairsReport sphere_zero_pairs_check(const PointSet& a, double c_test) {
  require_sphere_energy_hypotheses(a);
  const double q = a.space().q();
  const double n = static_cast<double>(a.size());
  const int d = a.space().dim();
  return zero_report(a, n * n / q + std::pow(q, (d - 3) / 2.0) * n, c_test);
}

ZeroPairsReport zero_pairs_check(const PointSet& a) {
  const int d = a.space().dim();
  if (d % 4 != 2 || a.space().q() % 4 != 3) {
    throw Error(ErrorCode::kHypothesisViolation,
                "needs d = 4k+2 and q = 3 mod 4");
  }
  const double q = a.space().q();
  const double n = static_cast<double>(a.size());
  return zero_report(a, n * n / q + std::pow(q, (d - 2) / 2.0) * n, 1.0);
}

double zero_pairs_fourier(const PointSet& a) {
  const Space& s = a.space();
  const ComplexGrid hat = fourier_hat(indicator(a));
  const ComplexGrid s0 =
      fourier_hat(indicator(enumerate_variety(s, Variety::sphere(Fq(0)))));
  Complex sum = 0;
  for (Index m = 0; m < s.size(); ++m) sum += std::norm(hat[m]) * s0[m];
  const double qd = s.size();
  return qd * qd * sum.real();
}

IncidenceReport point_hyperplane_incidences(
    const PointSet& u, const std::vector<Hyperplane>& planes) {
  const Space& s = u.space();
  const FiniteField& f = s.field();
  IncidenceReport r;
  r.points = u.size();
  r.planes = planes.size();
  const std::vector<Fq> c = coords_of(u);
  const int d = s.dim();
  for (const Hyperplane& h : planes) {
    if (static_cast<int>(h.normal.size()) != d) {
      throw Error(ErrorCode::kInvalidArgument, "normal has wrong dimension");
    }
    if (std::all_of(h.normal.begin(), h.normal.end(),
                    [](Fq x) { return x.is_zero(); })) {
      throw Error(ErrorCode::kDegeneratePlane, "zero normal vector");
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      Fq acc(0);
      for (int k = 0; k < d; ++k) acc = f.add(acc, f.mul(h.normal[k], c[i * d + k]));
      if (acc == h.offset) ++r.incidences;
    }
  }
  const double q = f.q();
  const double uv = static_cast<double>(r.points) * static_cast<double>(r.planes);
  r.main_term = uv / q;
  r.deviation = std::abs(static_cast<double>(r.incidences) - r.main_term);
  r.bound = std::pow(q, (d - 1) / 2.0) * std::sqrt(uv);
  r.pass = r.deviation <= r.bound;
  return r;
}

EnergySplit right_angle_split(const PointSet& a) {
  require_support(a, Variety::paraboloid(), "paraboloid");
  const Space& s = a.space();
  const FiniteField& f = s.field();
  const int d = s.dim();
  const std::size_t n = a.size();
  const std::vector<Fq> c = coords_of(a);
  auto lead_dist_zero = [&](std::size_t i, std::size_t j) {
    Fq acc(0);
    for (int k = 0; k + 1 < d; ++k) {
      acc = f.add(acc, f.square(f.sub(c[i * d + k], c[j * d + k])));
    }
    return acc.is_zero();
  };
  EnergySplit out;
  // Tuples (a, b, c, d) with c = a + b - d.
  for (std::size_t ia = 0; ia < n; ++ia) {
    for (std::size_t ib = 0; ib < n; ++ib) {
      const bool ab_zero = lead_dist_zero(ia, ib);
      const Index sum = s.add(a[ia], a[ib]);
      for (std::size_t id = 0; id < n; ++id) {
        if (!a.contains(s.sub(sum, a[id]))) continue;
        if (ab_zero || lead_dist_zero(id, ib)) {
          ++out.zero_class;
        } else {
          ++out.nonzero_class;
        }
      }
    }
  }
  return out;
}

}  // namespace fqh
