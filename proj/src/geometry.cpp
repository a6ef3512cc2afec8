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


#include "fqharmonic/geometry.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace fqh {

Space::Space(FiniteField f, int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  std::uint64_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= static_cast<std::uint64_t>(f.q());
    if (size > kMaxGridPoints) {
      throw Error(ErrorCode::kSizeLimitExceeded,
                  "q^d exceeds " + std::to_string(kMaxGridPoints));
    }
  }
  auto impl = std::make_shared<Impl>(Impl{f, d, static_cast<Index>(size), {}, {}});
  impl->stride.assign(d, 1);
  for (int i = d - 2; i >= 0; --i) {
    impl->stride[i] = impl->stride[i + 1] * f.q();
  }
  // Norms by recurrence over the last coordinate.
  impl->norms.assign(size, 0);
  const Index q = f.q();
  for (Index idx = 1; idx < size; ++idx) {
    const Index last = idx % q;
    const Index rest = idx / q;
    impl->norms[idx] = static_cast<std::uint16_t>(
        f.add(Fq(impl->norms[rest]), f.square(Fq(last))).v);
  }
  impl_ = impl;
}

Index Space::encode(std::span<const Fq> x) const {
  if (static_cast<int>(x.size()) != impl_->d) {
    throw Error(ErrorCode::kInvalidArgument, "point has wrong dimension");
  }
  Index idx = 0;
  for (const Fq& c : x) idx = idx * impl_->field.q() + c.v;
  return idx;
}

Point Space::decode(Index idx) const {
  Point x(impl_->d);
  const Index q = impl_->field.q();
  for (int i = impl_->d - 1; i >= 0; --i) {
    x[i] = Fq(idx % q);
    idx /= q;
  }
  return x;
}

Index Space::add(Index a, Index b) const {
  const FiniteField& f = impl_->field;
  const Index q = f.q();
  Index out = 0;
  for (int i = 0; i < impl_->d; ++i) {
    const Index s = impl_->stride[i];
    out += f.add(Fq((a / s) % q), Fq((b / s) % q)).v * s;
  }
  return out;
}

Index Space::neg(Index a) const {
  const FiniteField& f = impl_->field;
  const Index q = f.q();
  Index out = 0;
  for (int i = 0; i < impl_->d; ++i) {
    const Index s = impl_->stride[i];
    out += f.neg(Fq((a / s) % q)).v * s;
  }
  return out;
}

Index Space::sub(Index a, Index b) const { return add(a, neg(b)); }

Index Space::scale(Fq c, Index a) const {
  const FiniteField& f = impl_->field;
  const Index q = f.q();
  Index out = 0;
  for (int i = 0; i < impl_->d; ++i) {
    const Index s = impl_->stride[i];
    out += f.mul(c, Fq((a / s) % q)).v * s;
  }
  return out;
}

Fq Space::dot(Index a, Index b) const {
  const FiniteField& f = impl_->field;
  const Index q = f.q();
  Fq out(0);
  for (int i = 0; i < impl_->d; ++i) {
    const Index s = impl_->stride[i];
    out = f.add(out, f.mul(Fq((a / s) % q), Fq((b / s) % q)));
  }
  return out;
}

Fq norm(const FiniteField& f, std::span<const Fq> x) { return dot(f, x, x); }

Fq dot(const FiniteField& f, std::span<const Fq> x, std::span<const Fq> y) {
  Fq out(0);
  for (size_t i = 0; i < x.size(); ++i) out = f.add(out, f.mul(x[i], y[i]));
  return out;
}

Point add(const FiniteField& f, std::span<const Fq> x, std::span<const Fq> y) {
  Point out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = f.add(x[i], y[i]);
  return out;
}

Point sub(const FiniteField& f, std::span<const Fq> x, std::span<const Fq> y) {
  Point out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = f.sub(x[i], y[i]);
  return out;
}

Point scale(const FiniteField& f, Fq c, std::span<const Fq> x) {
  Point out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = f.mul(c, x[i]);
  return out;
}

PointSet::PointSet(Space space, std::vector<Index> indices)
    : space_(std::move(space)), idx_(std::move(indices)) {
  for (Index i : idx_) {
    if (i >= space_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "point index out of range");
    }
  }
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

bool PointSet::contains(Index idx) const {
  return std::binary_search(idx_.begin(), idx_.end(), idx);
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return std::includes(other.idx_.begin(), other.idx_.end(), idx_.begin(),
                       idx_.end());
}

PointSet translate(const PointSet& a, Index v) {
  std::vector<Index> out;
  out.reserve(a.size());
  for (Index x : a) out.push_back(a.space().add(x, v));
  return PointSet(a.space(), std::move(out));
}

bool contains(const Space& s, const Variety& v, Index idx) {
  if (v.kind == Variety::Kind::kSphere) return s.norm(idx) == v.radius;
  const FiniteField& f = s.field();
  const Index q = f.q();
  const Fq last(idx % q);
  return f.sub(s.norm(idx), f.square(last)) == last;
}

PointSet enumerate_variety(const Space& s, const Variety& v) {
  std::vector<Index> out;
  for (Index idx = 0; idx < s.size(); ++idx) {
    if (contains(s, v, idx)) out.push_back(idx);
  }
  return PointSet(s, std::move(out));
}

std::uint64_t sphere_count(const FiniteField& f, int dim, Fq j) {
  const std::int64_t q = f.q();
  auto ipow = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  if (dim <= 0) return j.is_zero() ? 1 : 0;
  const Fq minus_one = f.neg(f.one());
  if (dim % 2 == 1) {
    const Fq sign = f.pow(minus_one, (dim - 1) / 2);
    return static_cast<std::uint64_t>(
        ipow(q, dim - 1) +
        ipow(q, (dim - 1) / 2) * f.quad_char(f.mul(sign, j)));
  }
  const std::int64_t nu = j.is_zero() ? q - 1 : -1;
  const int e = f.quad_char(f.pow(minus_one, dim / 2));
  return static_cast<std::uint64_t>(ipow(q, dim - 1) +
                                    nu * ipow(q, (dim - 2) / 2) * e);
}

PointSet enumerate_subspace(const Space& s, const AffineSubspace& h) {
  const FiniteField& f = s.field();
  const int k = h.dim();
  if (rank(f, h.basis) != k) {
    throw Error(ErrorCode::kInvalidArgument, "basis is linearly dependent");
  }
  std::vector<Index> out;
  std::vector<Index> basis_idx;
  for (const Point& b : h.basis) basis_idx.push_back(s.encode(b));
  std::vector<Index> current{s.encode(h.base)};
  for (int i = 0; i < k; ++i) {
    std::vector<Index> next;
    next.reserve(current.size() * f.q());
    for (Index x : current) {
      for (int t = 0; t < f.q(); ++t) {
        next.push_back(s.add(x, s.scale(Fq(t), basis_idx[i])));
      }
    }
    current = std::move(next);
  }
  return PointSet(s, std::move(current));
}

Point FqMatrix::apply(const FiniteField& f, std::span<const Fq> x) const {
  Point out(n, Fq(0));
  for (int c = 0; c < n; ++c) {
    if (x[c].is_zero()) continue;
    for (int r = 0; r < n; ++r) {
      out[r] = f.add(out[r], f.mul(cols[c][r], x[c]));
    }
  }
  return out;
}

int rank(const FiniteField& f, std::vector<Point> v) {
  if (v.empty()) return 0;
  const int n = static_cast<int>(v[0].size());
  int r = 0;
  for (int col = 0; col < n && r < static_cast<int>(v.size()); ++col) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(v.size()); ++i) {
      if (!v[i][col].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(v[r], v[piv]);
    const Fq inv = f.inv(v[r][col]);
    for (auto& c : v[r]) c = f.mul(c, inv);
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (i == r || v[i][col].is_zero()) continue;
      const Fq factor = v[i][col];
      for (int c = 0; c < n; ++c) {
        v[i][c] = f.sub(v[i][c], f.mul(factor, v[r][c]));
      }
    }
    ++r;
  }
  return r;
}

FqMatrix inverse(const FiniteField& f, const FqMatrix& m) {
  const int n = m.n;
  // Row-reduce [M | I] using rows.
  std::vector<Point> rows(n, Point(2 * n, Fq(0)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) rows[r][c] = m.cols[c][r];
    rows[r][n + r] = f.one();
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
    std::swap(rows[col], rows[piv]);
    const Fq inv = f.inv(rows[col][col]);
    for (auto& c : rows[col]) c = f.mul(c, inv);
    for (int r = 0; r < n; ++r) {
      if (r == col || rows[r][col].is_zero()) continue;
      const Fq factor = rows[r][col];
      for (int c = 0; c < 2 * n; ++c) {
        rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[col][c]));
      }
    }
  }
  FqMatrix out{n, std::vector<Point>(n, Point(n))};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out.cols[c][r] = rows[r][n + c];
  }
  return out;
}

Fq FormTransform::normal_form(const FiniteField& f,
                              std::span<const Fq> y) const {
  Fq out(0);
  const int pairs = (d % 2 == 1) ? (d - 1) / 2 : (d - 2) / 2;
  for (int i = 0; i < pairs; ++i) {
    out = f.add(out, f.sub(f.square(y[2 * i]), f.square(y[2 * i + 1])));
  }
  if (d % 2 == 1) {
    out = f.add(out, f.mul(alpha, f.square(y[d - 1])));
  } else {
    out = f.add(out, f.sub(f.square(y[d - 2]), f.mul(alpha, f.square(y[d - 1]))));
  }
  return out;
}

FormTransform form_equivalence(const FiniteField& f, int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  const Fq lambda = f.least_nonsquare();
  // Orthogonal basis of the part not yet split, with nonzero norms.
  std::vector<Point> w;
  for (int i = 0; i < d; ++i) {
    Point e(d, Fq(0));
    e[i] = f.one();
    w.push_back(e);
  }
  auto lin = [&](const std::vector<Fq>& c, const std::vector<Point>& vs) {
    Point out(d, Fq(0));
    for (size_t i = 0; i < vs.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (int k = 0; k < d; ++k) out[k] = f.add(out[k], f.mul(c[i], vs[i][k]));
    }
    return out;
  };

  std::vector<Point> cols;
  const int residual = (d % 2 == 1) ? 1 : 2;
  while (static_cast<int>(w.size()) > residual) {
    std::vector<Point> slice(w.begin(), w.begin() + 3);
    std::vector<Fq> n3 = {norm(f, slice[0]), norm(f, slice[1]),
                          norm(f, slice[2])};
    // Isotropic vector in the slice.
    std::vector<Fq> coef;
    for (int lead = 0; lead < 3 && coef.empty(); ++lead) {
      const int free_count = 2 - lead;
      const int total = free_count == 2 ? f.q() * f.q() : (free_count == 1 ? f.q() : 1);
      for (int t = 0; t < total && coef.empty(); ++t) {
        std::vector<Fq> c(3, Fq(0));
        c[lead] = f.one();
        if (free_count >= 1) c[lead + 1] = Fq(t % f.q());
        if (free_count == 2) c[lead + 2] = Fq(t / f.q());
        Fq val(0);
        for (int i = 0; i < 3; ++i) val = f.add(val, f.mul(n3[i], f.square(c[i])));
        if (val.is_zero()) coef = c;
      }
    }
    if (coef.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "no isotropic vector found");
    }
    const Point e = lin(coef, slice);
    Point partner;
    for (const Point& s : slice) {
      if (!dot(f, e, s).is_zero()) {
        partner = s;
        break;
      }
    }
    const Fq two = f.from_int(2);
    partner = scale(f, f.inv(f.mul(two, dot(f, e, partner))), partner);
    const Point fv = sub(f, partner, scale(f, norm(f, partner), e));
    cols.push_back(add(f, e, fv));
    cols.push_back(sub(f, e, fv));
    // Vector of the slice orthogonal to both e and fv: cross product of
    // their pairings with the slice basis.
    std::vector<Fq> pe(3), pf(3);
    for (int i = 0; i < 3; ++i) {
      pe[i] = dot(f, e, slice[i]);
      pf[i] = dot(f, fv, slice[i]);
    }
    const std::vector<Fq> c = {
        f.sub(f.mul(pe[1], pf[2]), f.mul(pe[2], pf[1])),
        f.sub(f.mul(pe[2], pf[0]), f.mul(pe[0], pf[2])),
        f.sub(f.mul(pe[0], pf[1]), f.mul(pe[1], pf[0]))};
    const Point u = lin(c, slice);
    std::vector<Point> next{u};
    next.insert(next.end(), w.begin() + 3, w.end());
    w = std::move(next);
  }

  FormTransform out;
  out.d = d;
  out.lambda = lambda;
  if (residual == 1) {
    const Fq c = norm(f, w[0]);
    out.alpha = f.is_square(c) ? f.one() : lambda;
    const Fq s = *f.sqrt(f.div(out.alpha, c));
    cols.push_back(scale(f, s, w[0]));
  } else {
    const Fq n1 = norm(f, w[0]);
    const Fq n2 = norm(f, w[1]);
    Point u;
    for (int a = 0; a < f.q() && u.empty(); ++a) {
      for (int b = 0; b < f.q(); ++b) {
        const Fq val = f.add(f.mul(n1, f.square(Fq(a))), f.mul(n2, f.square(Fq(b))));
        if (val == f.one()) {
          u = lin({Fq(a), Fq(b)}, w);
          break;
        }
      }
    }
    Point v = sub(f, scale(f, dot(f, u, w[1]), w[0]),
                  scale(f, dot(f, u, w[0]), w[1]));
    const Fq c = norm(f, v);
    out.alpha = f.is_square(f.neg(c)) ? f.one() : lambda;
    const Fq s = *f.sqrt(f.div(f.neg(out.alpha), c));
    cols.push_back(u);
    cols.push_back(scale(f, s, v));
  }
  out.t = FqMatrix{d, std::move(cols)};
  return out;
}

int sphere_subspace_dim(const FiniteField& f, int d, Fq j) {
  if (j.is_zero() || d < 2) {
    throw Error(ErrorCode::kCaseMismatch, "need j != 0 and d >= 2");
  }
  if (d % 2 == 0) return (d - 2) / 2;
  if (d % 4 == 1) {
    if (d < 5) throw Error(ErrorCode::kCaseMismatch, "d = 1 fits no case");
    return f.is_square(j) ? (d - 1) / 2 : (d - 3) / 2;
  }
  return f.is_square(f.neg(j)) ? (d - 1) / 2 : (d - 3) / 2;
}

AffineSubspace subspace_on_sphere(const FiniteField& f, int d, Fq j) {
  const int k = sphere_subspace_dim(f, d, j);
  const FormTransform ft = form_equivalence(f, d);
  Point y(d, Fq(0));
  std::vector<Point> dirs;
  auto pair_vector = [&](int i) {
    Point v(d, Fq(0));
    v[2 * i] = f.one();
    v[2 * i + 1] = f.one();
    return v;
  };
  if (d % 2 == 0) {
    auto ab = solve_norm_form(f, ft.alpha, j);
    y[d - 2] = ab->first;
    y[d - 1] = ab->second;
  } else if (f.quad_char(f.mul(ft.alpha, j)) == 1) {
    y[d - 1] = *f.sqrt(f.div(j, ft.alpha));
  } else {
    // a^2 - b^2 + alpha c^2 = j with c = 0.
    auto ab = solve_norm_form(f, f.one(), j);
    y[d - 3] = ab->first;
    y[d - 2] = ab->second;
  }
  for (int i = 0; i < k; ++i) dirs.push_back(pair_vector(i));
  AffineSubspace h;
  h.base = ft.apply(f, y);
  for (const Point& v : dirs) h.basis.push_back(ft.apply(f, v));
  return h;
}

std::optional<std::pair<Fq, Fq>> solve_norm_form(const FiniteField& f,
                                                 Fq alpha, Fq c) {
  for (int a = 0; a < f.q(); ++a) {
    const Fq rest = f.sub(f.square(Fq(a)), c);  // alpha b^2 = a^2 - c
    const Fq target = f.div(rest, alpha);
    if (auto b = f.sqrt(target)) return std::make_pair(Fq(a), *b);
  }
  return std::nullopt;
}

std::optional<std::pair<Fq, Fq>> solve_two_squares(const FiniteField& f, Fq c) {
  for (int a = 0; a < f.q(); ++a) {
    if (auto b = f.sqrt(f.sub(c, f.square(Fq(a))))) {
      return std::make_pair(Fq(a), *b);
    }
  }
  return std::nullopt;
}

std::vector<Point> mutually_orthogonal(const FiniteField& f, int d) {
  if (d < 0 || d % 2 == 1) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be even");
  }
  std::vector<Point> out;
  if (d == 0) return out;
  if (d % 4 == 2 && f.q() % 4 == 3) {
    throw Error(ErrorCode::kImpossibleCase,
                "no d/2 isotropic orthogonal vectors for d = 4k+2, q = 3 mod 4");
  }
  const int blocks = d / 4;
  if (blocks > 0) {
    const auto ab = *solve_two_squares(f, f.neg(f.one()));
    const Fq a = ab.first, b = ab.second;
    for (int t = 0; t < blocks; ++t) {
      Point v1(d, Fq(0)), v2(d, Fq(0));
      v1[4 * t] = f.one();
      v1[4 * t + 2] = a;
      v1[4 * t + 3] = b;
      v2[4 * t + 1] = f.one();
      v2[4 * t + 2] = b;
      v2[4 * t + 3] = f.neg(a);
      out.push_back(v1);
      out.push_back(v2);
    }
  }
  if (d % 4 == 2) {
    Point v(d, Fq(0));
    v[d - 2] = f.one();
    v[d - 1] = *f.sqrt(f.neg(f.one()));
    out.push_back(v);
  }
  return out;
}

int max_affine_subspace_dim(const Space& s, const Variety& v) {
  if (s.size() > kMaxSubspaceSearchPoints) {
    throw Error(ErrorCode::kSizeLimitExceeded, "exhaustive search too large");
  }
  const FiniteField& f = s.field();
  const int q = f.q();
  const int d = s.dim();
  std::vector<char> in_v(s.size(), 0);
  for (Index x = 0; x < s.size(); ++x) in_v[x] = contains(s, v, x) ? 1 : 0;

  // Projective representatives: first nonzero coordinate equal to 1.
  auto normalize = [&](Index x) {
    for (int i = 0; i < d; ++i) {
      const Fq c = s.coord(x, i);
      if (!c.is_zero()) return s.scale(f.inv(c), x);
    }
    return x;
  };
  std::vector<Index> directions;
  for (Index x = 1; x < s.size(); ++x) {
    if (normalize(x) == x) directions.push_back(x);
  }

  int best = -1;
  std::vector<char> good(s.size(), 0);
  for (Index x0 = 0; x0 < s.size(); ++x0) {
    if (!in_v[x0]) continue;
    best = std::max(best, 0);
    std::vector<Index> cand;
    for (Index dir : directions) {
      bool ok = true;
      for (int t = 1; t < q && ok; ++t) {
        ok = in_v[s.add(x0, s.scale(Fq(t), dir))] != 0;
      }
      good[dir] = ok ? 1 : 0;
      if (ok) cand.push_back(dir);
    }
    // Backtracking over spans; span holds all vectors of the current span.
    std::function<void(size_t, std::vector<Index>&, int)> extend =
        [&](size_t start, std::vector<Index>& span, int k) {
          best = std::max(best, k);
          for (size_t i = start; i < cand.size(); ++i) {
            if (k + 1 + static_cast<int>(cand.size() - i - 1) <= best) return;
            const Index dir = cand[i];
            bool ok = true;
            bool inside = false;
            for (Index sv : span) {
              const Index w = s.add(sv, dir);
              if (w == 0) {
                inside = true;
                break;
              }
              const Index nw = normalize(w);
              if (!good[nw]) {
                ok = false;
                break;
              }
            }
            if (!ok || inside) continue;
            std::vector<Index> grown;
            grown.reserve(span.size() * q);
            for (Index sv : span) {
              for (int t = 0; t < q; ++t) {
                grown.push_back(s.add(sv, s.scale(Fq(t), dir)));
              }
            }
            extend(i + 1, grown, k + 1);
          }
        };
    std::vector<Index> span{0};
    extend(0, span, 0);
    for (Index dir : cand) good[dir] = 0;
  }
  return best;
}

}  // namespace fqh
