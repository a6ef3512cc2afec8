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


#include "fqharmonic/scheme.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace fqh {

Fq scheme_form(const FiniteField& f, int m, std::span<const Fq> x,
               std::span<const Fq> y) {
  Fq out = f.mul(x[2 * m], y[2 * m]);
  for (int i = 0; i < m; ++i) {
    out = f.add(out, f.add(f.mul(x[i], y[m + i]), f.mul(x[m + i], y[i])));
  }
  return out;
}

SchemeGraph::SchemeGraph(FiniteField f, int m)
    : field_(f), m_(m), space_(f, 2 * m + 1) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  const int d = 2 * m + 1;
  lookup_.assign(space_.size(), -1);
  std::vector<Point> pts;
  std::vector<Fq> qx;
  for (Index x = 1; x < space_.size(); ++x) {
    Point p = space_.decode(x);
    int lead = 0;
    while (p[lead].is_zero()) ++lead;
    if (p[lead] != f.one()) continue;
    const Fq val = scheme_form(f, m, p, p);
    if (val.is_zero() || f.is_square(val)) continue;
    lookup_[x] = static_cast<int>(vertices_.size());
    vertices_.push_back(x);
    pts.push_back(std::move(p));
    qx.push_back(val);
  }
  const int n = size();
  const int top = num_classes();
  relation_.assign(static_cast<std::size_t>(n) * n, 0);
  const int half = (f.q() - 1) / 2;
  for (int v = 0; v < n; ++v) {
    for (int w = v + 1; w < n; ++w) {
      const Fq b = scheme_form(f, m, pts[v], pts[w]);
      int rel;
      if (b.is_zero()) {
        rel = top;
      } else {
        const Fq u = f.div(f.square(b), f.mul(qx[v], qx[w]));
        const int lg = f.log(u);  // even
        // u = g^(2 - 2i): i = (2 - lg)/2 modulo (q-1)/2, with 1 for u = 1.
        int i = ((1 - lg / 2) % half + half) % half;
        if (i == 0) i = half;
        rel = (lg == 0) ? 1 : i;
      }
      relation_[static_cast<std::size_t>(v) * n + w] = static_cast<std::uint8_t>(rel);
      relation_[static_cast<std::size_t>(w) * n + v] = static_cast<std::uint8_t>(rel);
    }
  }
  (void)d;
}

int SchemeGraph::vertex_of(Index x) const {
  if (x == 0 || x >= space_.size()) return -1;
  for (int i = 0; i < space_.dim(); ++i) {
    const Fq c = space_.coord(x, i);
    if (!c.is_zero()) return lookup_[space_.scale(field_.inv(c), x)];
  }
  return -1;
}

Eigen::MatrixXd SchemeGraph::adjacency(int rel) const {
  const int n = size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (relation(v, w) == rel) a(v, w) = 1.0;
    }
  }
  return a;
}

SchemeGraph build_scheme(const FiniteField& f, int m) { return SchemeGraph(f, m); }

std::int64_t r1_degree_formula(const FiniteField& f, int m) {
  std::int64_t qm1 = 1;
  for (int i = 0; i < m - 1; ++i) qm1 *= f.q();
  return (qm1 - 1) * (qm1 * f.q() + 1);
}

std::int64_t r1_degree(const SchemeGraph& g) {
  std::int64_t degree = -1;
  for (int v = 0; v < g.size(); ++v) {
    std::int64_t k = 0;
    for (int w = 0; w < g.size(); ++w) k += (g.relation(v, w) == 1);
    if (degree < 0) degree = k;
    if (k != degree) {
      throw Error(ErrorCode::kNotRegular,
                  "vertex " + std::to_string(v) + " has R_1 degree " +
                      std::to_string(k));
    }
  }
  return degree < 0 ? 0 : degree;
}

SchemeAxioms verify_scheme_axioms(const SchemeGraph& g) {
  const int n = g.size();
  const int k = g.num_classes();
  SchemeAxioms out;
  out.diagonal = true;
  out.partition = true;
  out.symmetric = true;
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      const int r = g.relation(v, w);
      if ((r == 0) != (v == w)) out.diagonal = false;
      if (r < 0 || r > k) out.partition = false;
      if (g.relation(w, v) != r) out.symmetric = false;
    }
  }
  std::vector<Eigen::MatrixXi> a;
  for (int r = 0; r <= k; ++r) a.push_back(g.adjacency(r).cast<int>());
  out.regular = true;
  out.commutative = true;
  for (int r = 0; r <= k; ++r) out.degrees.push_back(a[r].row(0).sum());
  for (int i = 0; i <= k && out.regular; ++i) {
    for (int j = 0; j <= k && out.regular; ++j) {
      const Eigen::MatrixXi prod = a[i] * a[j];
      const Eigen::MatrixXi rev = a[j] * a[i];
      std::vector<int> value(k + 1, -1);
      for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
          const int r = g.relation(v, w);
          if (value[r] < 0) value[r] = prod(v, w);
          if (prod(v, w) != value[r]) out.regular = false;
          if (rev(v, w) != prod(v, w)) out.commutative = false;
        }
      }
    }
  }
  return out;
}

std::vector<std::int64_t> r1_predicted_eigenvalues(const FiniteField& f, int m) {
  std::int64_t qm1 = 1;
  for (int i = 0; i < m - 1; ++i) qm1 *= f.q();
  return {-(f.q() - 2) * qm1 - 1, qm1 - 1, r1_degree_formula(f, m)};
}

SpectrumReport r1_spectrum(const SchemeGraph& g) {
  if (g.size() > kMaxSpectrumVertices) {
    throw Error(ErrorCode::kSizeLimitExceeded, "too many vertices for eigensolve");
  }
  SpectrumReport out;
  out.n = g.size();
  out.degree = r1_degree(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency(1));
  out.raw = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < out.raw.size(); ++i) {
    const double x = out.raw[i];
    const double snapped = std::round(x);
    out.max_snap_error = std::max(out.max_snap_error, std::abs(x - snapped));
    const auto value = static_cast<std::int64_t>(snapped);
    if (!out.eigenvalues.empty() && out.eigenvalues.back().first == value) {
      ++out.eigenvalues.back().second;
    } else {
      out.eigenvalues.emplace_back(value, 1);
    }
  }
  return out;
}

EdgeBoundReport edge_bound_check(const SchemeGraph& g, const std::vector<int>& w,
                                 const SpectrumReport* spectrum) {
  EdgeBoundReport out;
  out.size = w.size();
  for (int v : w) {
    for (int u : w) out.edges += (g.relation(v, u) == 1);
  }
  const double n = g.size();
  const double degree = static_cast<double>(r1_degree_formula(g.field(), g.m()));
  const double second = std::pow(g.field().q(), g.m() - 1) - 1.0;
  const double sz = static_cast<double>(w.size());
  out.bound = (n > 0 ? degree / n : 0.0) * sz * sz + second * sz;
  out.pass = static_cast<double>(out.edges) <= out.bound + 1e-9 * out.bound;
  if (spectrum != nullptr && spectrum->n == g.size()) {
    Eigen::VectorXd ind = Eigen::VectorXd::Zero(g.size());
    for (int v : w) ind[v] = 1.0;
    const Eigen::VectorXd alpha = spectrum->vectors.transpose() * ind;
    out.spectral_sum = (spectrum->raw.array() * alpha.array().square()).sum();
  }
  return out;
}

FqMatrix sum_of_squares_to_scheme_form(const FiniteField& f, int m) {
  const int d = 2 * m + 1;
  const bool ok = d % 4 == 1 || f.q() % 4 == 1;
  if (!ok) {
    throw Error(ErrorCode::kHypothesisViolation,
                "sum of squares is not equivalent to Q for this (d, q)");
  }
  const FormTransform ft = form_equivalence(f, d);
  // Hyperbolic pairs y_{2i-1}^2 - y_{2i}^2 become 2 z_i z_{m+i}.
  FqMatrix mm{d, std::vector<Point>(d, Point(d, Fq(0)))};
  const Fq half = f.inv(f.from_int(2));
  for (int i = 0; i < m; ++i) {
    mm.cols[2 * i][i] = f.one();
    mm.cols[2 * i][m + i] = half;
    mm.cols[2 * i + 1][i] = f.one();
    mm.cols[2 * i + 1][m + i] = f.neg(half);
  }
  mm.cols[d - 1][d - 1] = f.one();
  if (ft.alpha != f.one()) {
    throw Error(ErrorCode::kHypothesisViolation, "normal form has alpha != 1");
  }
  const FqMatrix tinv = inverse(f, ft.t);
  FqMatrix out{d, std::vector<Point>(d)};
  for (int c = 0; c < d; ++c) out.cols[c] = mm.apply(f, tinv.cols[c]);
  return out;
}

BridgeReport zero_pairs_via_graph(const SchemeGraph& g, const PointSet& a) {
  const FiniteField& f = g.field();
  const Space& s = a.space();
  if (s.dim() != 2 * g.m() + 1 || !(s.field() == f)) {
    throw Error(ErrorCode::kInvalidArgument, "set lives in the wrong space");
  }
  for (Index x : a) {
    if (s.norm(x) != f.primitive()) {
      throw Error(ErrorCode::kSupportViolation, "set is not on the sphere S_g");
    }
  }
  const FqMatrix phi = sum_of_squares_to_scheme_form(f, g.m());
  std::vector<int> ids;
  for (Index x : a) {
    const Point image = phi.apply(f, s.decode(x));
    ids.push_back(g.vertex_of(s.encode(image)));
    if (ids.back() < 0) {
      throw Error(ErrorCode::kInvalidArgument, "image is not a vertex");
    }
  }
  BridgeReport out;
  out.size = a.size();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.contains(s.neg(a[i]))) ++out.antipodes;
    for (std::size_t j = 0; j < n; ++j) {
      if (s.norm(s.sub(a[i], a[j])).is_zero()) ++out.zero_pairs;
      if (s.norm(s.add(a[i], a[j])).is_zero()) ++out.antipodal_zero_pairs;
      if (g.relation(ids[i], ids[j]) == 1) ++out.graph_edges;
    }
  }
  const std::uint64_t off_diag = out.zero_pairs - out.size;
  out.factor = off_diag > 0 ? static_cast<double>(out.graph_edges) / off_diag : 0.0;
  out.identity_holds =
      out.graph_edges == off_diag + out.antipodal_zero_pairs - out.antipodes &&
      off_diag <= out.graph_edges;
  return out;
}

}  // namespace fqh
