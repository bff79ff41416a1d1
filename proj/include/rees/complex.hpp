#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rees/polyring.hpp"

namespace rees {

inline constexpr int kMaxVertices = 64;

// Pure (m-1)-dimensional simplicial complex on [n], given by its facets.
class SimplicialComplex {
 public:
  // Facets are sorted and deduplicated; a duplicate appends a warning.
  SimplicialComplex(int m, int n, std::vector<Facet> facets, std::vector<std::string>* warnings = nullptr);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Facet>& facets() const { return facets_; }
  bool contains(const Facet& f) const;
  int index_of(const Facet& f) const;  // -1 when absent

 private:
  int m_;
  int n_;
  std::vector<Facet> facets_;
};

// Full complex: every m-subset of [n].
SimplicialComplex full_complex(int m, int n);
// Union of the m-skeleta of the given vertex sets.
SimplicialComplex complex_from_cliques(int m, int n, const std::vector<std::vector<int>>& cliques);

std::uint64_t vertex_mask(const Facet& f);
std::vector<int> mask_vertices(std::uint64_t mask);
std::vector<Facet> subsets_of_size(const std::vector<int>& vertices, int k);

struct CliqueDecomposition {
  // Vertex sets of the maximal cliques, ordered by minimum vertex then lex.
  std::vector<std::vector<int>> cliques;
  // Two cliques share a minimum vertex (cannot happen for closed complexes).
  bool ambiguous_order = false;
  // Pairs of clique indices whose vertex sets meet in at least m vertices.
  std::vector<std::pair<int, int>> large_intersections;
};

CliqueDecomposition clique_decomposition(const SimplicialComplex& delta);

// Faces of the clique complex of size k + 1.
std::vector<Facet> clique_skeleton_faces(const SimplicialComplex& delta, int k);

struct ClosednessWitness {
  Facet F;
  Facet G;
  int coordinate = 0;  // 1-based position with F_i = G_i
};

struct ClosednessResult {
  bool closed = false;
  std::optional<ClosednessWitness> witness;
};

// Complex plus its clique structure, with the lookups the algorithms need.
class CliqueIndex {
 public:
  explicit CliqueIndex(const SimplicialComplex& delta);

  const SimplicialComplex& complex() const { return delta_; }
  const CliqueDecomposition& decomposition() const { return dec_; }
  int m() const { return delta_.m(); }
  int n() const { return delta_.n(); }
  int num_cliques() const { return static_cast<int>(masks_.size()); }
  std::uint64_t clique_mask(int k) const { return masks_[static_cast<std::size_t>(k)]; }

  // 0-based index of the earliest clique containing the facet.
  int earliest_clique(const Facet& f) const;
  // Bit k set when the vertex set lies in clique k.
  std::uint64_t cliques_containing(std::uint64_t vertices) const;
  bool is_clique_face(std::uint64_t vertices) const { return cliques_containing(vertices) != 0; }
  bool share_clique(const Facet& a, const Facet& b) const {
    return is_clique_face(vertex_mask(a) | vertex_mask(b));
  }
  const ClosednessResult& closedness() const { return closed_; }
  bool closed() const { return closed_.closed; }

 private:
  SimplicialComplex delta_;
  CliqueDecomposition dec_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> earliest_;  // aligned with delta_.facets()
  ClosednessResult closed_;
};

ClosednessResult is_closed(const SimplicialComplex& delta);

struct ClosednessConditions {
  bool a = false;  // shared coordinate implies the union's skeleton is present
  bool b = false;  // facets in no common clique differ in every coordinate
  bool c = false;  // facets in no common clique have coprime initial terms
  bool agree() const { return a == b && b == c; }
};

ClosednessConditions closedness_conditions(const SimplicialComplex& delta);

}  // namespace rees
