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


#ifndef FQHARMONIC_SCHEME_HPP_
#define FQHARMONIC_SCHEME_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fqharmonic/geometry.hpp"

namespace fqh {

// Q(x) = 2(x_1 x_{m+1} + ... + x_m x_{2m}) + x_{2m+1}^2 on F_q^(2m+1), with
// Q(x, y) = x S y^t.
Fq scheme_form(const FiniteField& f, int m, std::span<const Fq> x,
               std::span<const Fq> y);

// Projective points [x] with Q(x) a non-square, and the relations R_0..R_k,
// k = (q+1)/2, between them.
class SchemeGraph {
 public:
  SchemeGraph(FiniteField f, int m);

  const FiniteField& field() const { return field_; }
  int m() const { return m_; }
  const Space& space() const { return space_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  int num_classes() const { return (field_.q() + 1) / 2; }
  // Representative of vertex v, first nonzero coordinate equal to 1.
  Index vertex(int v) const { return vertices_[v]; }
  // Vertex id of [x], or -1 if [x] is not a vertex.
  int vertex_of(Index x) const;
  int relation(int v, int w) const { return relation_[v * size() + w]; }
  Eigen::MatrixXd adjacency(int rel) const;

 private:
  FiniteField field_;
  int m_;
  Space space_;
  std::vector<Index> vertices_;
  std::vector<int> lookup_;
  std::vector<std::uint8_t> relation_;
};

SchemeGraph build_scheme(const FiniteField& f, int m);

// The degree (q^(m-1) - 1)(q^m + 1) shared by every vertex in R_1.
std::int64_t r1_degree_formula(const FiniteField& f, int m);
// Throws kNotRegular if some vertex has a different R_1 degree.
std::int64_t r1_degree(const SchemeGraph& g);

struct SchemeAxioms {
  bool diagonal = false;  // R_0 is the diagonal
  bool partition = false;  // every ordered pair lies in exactly one class
  bool symmetric = false;  // R_i^t = R_i
  bool regular = false;  // p^v_{mn} constant on R_v
  bool commutative = false;  // p^v_{mn} = p^v_{nm}
  std::vector<std::int64_t> degrees;  // p^0_{ii}

  bool all() const {
    return diagonal && partition && symmetric && regular && commutative;
  }
};

SchemeAxioms verify_scheme_axioms(const SchemeGraph& g);

inline constexpr int kMaxSpectrumVertices = 2000;

struct SpectrumReport {
  std::int64_t degree = 0;
  int n = 0;
  // Distinct eigenvalues, ascending, snapped to integers, with multiplicity.
  std::vector<std::pair<std::int64_t, int>> eigenvalues;
  double max_snap_error = 0;
  Eigen::VectorXd raw;
  Eigen::MatrixXd vectors;  // orthonormal eigenvectors as columns
};

SpectrumReport r1_spectrum(const SchemeGraph& g);
// The three values the character table lists for R_1.
std::vector<std::int64_t> r1_predicted_eigenvalues(const FiniteField& f, int m);

struct EdgeBoundReport {
  std::size_t size = 0;
  std::uint64_t edges = 0;  // 1_W A 1_W
  double bound = 0;  // (degree/n)|W|^2 + (q^(m-1) - 1)|W|
  double spectral_sum = 0;  // sum_i lambda_i alpha_i^2, when available
  bool pass = false;
};

EdgeBoundReport edge_bound_check(const SchemeGraph& g,
                                 const std::vector<int>& w,
                                 const SpectrumReport* spectrum = nullptr);

// Linear map phi on F_q^(2m+1) with Q(phi x) = ||x||. Needs d = 4k+1, or
// d = 4k-1 with q = 1 mod 4.
FqMatrix sum_of_squares_to_scheme_form(const FiniteField& f, int m);

struct BridgeReport {
  std::size_t size = 0;
  std::uint64_t zero_pairs = 0;  // (a, b) with ||a - b|| = 0, diagonal included
  std::uint64_t antipodal_zero_pairs = 0;  // (a, b) with ||a + b|| = 0
  std::uint64_t antipodes = 0;  // a with -a in A
  std::uint64_t graph_edges = 0;  // ordered pairs adjacent in R_1
  double factor = 0;  // graph_edges / (zero_pairs - |A|)
  bool identity_holds = false;
};

// A on the sphere of primitive radius in F_q^(2m+1).
BridgeReport zero_pairs_via_graph(const SchemeGraph& g, const PointSet& a);

}  // namespace fqh

#endif  // FQHARMONIC_SCHEME_HPP_
