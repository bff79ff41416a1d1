#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "rees/complex.hpp"

using namespace rees;
using namespace rees::fixtures;

namespace {

// Maximal cliques by brute force over vertex subsets.
std::vector<std::vector<int>> brute_force_cliques(const SimplicialComplex& d) {
  std::vector<std::uint64_t> cliques;
  const int n = d.n();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    std::vector<int> vs = mask_vertices(s);
    if (static_cast<int>(vs.size()) < d.m()) continue;
    bool all = true;
    for (const auto& f : subsets_of_size(vs, d.m())) all = all && d.contains(f);
    if (all) cliques.push_back(s);
  }
  std::vector<std::vector<int>> out;
  for (auto c : cliques) {
    bool maximal = true;
    for (auto o : cliques) maximal = maximal && !(o != c && (o & c) == c);
    if (maximal) out.push_back(mask_vertices(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialComplex random_complex(std::mt19937_64& rng, int m, int n, double p) {
  std::vector<int> vs(static_cast<std::size_t>(n));
  std::iota(vs.begin(), vs.end(), 1);
  std::bernoulli_distribution keep(p);
  std::vector<Facet> fs;
  for (const auto& f : subsets_of_size(vs, m)) {
    if (keep(rng)) fs.push_back(f);
  }
  if (fs.empty()) fs.push_back(subsets_of_size(vs, m).front());
  return SimplicialComplex(m, n, fs);
}

}  // namespace

TEST_CASE("complexes sort, deduplicate and validate facets") {
  std::vector<std::string> warnings;
  SimplicialComplex d(2, 4, {Facet{3, 4}, Facet{1, 2}, Facet{1, 2}}, &warnings);
  CHECK(d.facets().size() == 2);
  CHECK(d.facets().front() == Facet{1, 2});
  CHECK(warnings.size() == 1);
  CHECK(d.contains(Facet{3, 4}));
  CHECK(d.index_of(Facet{2, 3}) == -1);
  CHECK_THROWS_AS(SimplicialComplex(2, 4, {Facet{1, 2, 3}}), Error);
  CHECK_THROWS_AS(SimplicialComplex(2, 4, {Facet{1, 5}}), Error);
}

TEST_CASE("full complexes and subsets") {
  CHECK(full_complex(2, 4).facets().size() == 6);
  CHECK(full_complex(3, 5).facets().size() == 10);
  CHECK(subsets_of_size({1, 2, 3}, 0).size() == 1);
  CHECK(subsets_of_size({1, 2, 3, 4, 5}, 3).size() == 10);
  CHECK(vertex_mask(Facet{1, 3}) == 0b101);
  CHECK(mask_vertices(vertex_mask(Facet{2, 5, 7})) == std::vector<int>{2, 5, 7});
}

TEST_CASE("clique decomposition of the two-clique graph") {
  auto dec = clique_decomposition(two_clique_graph());
  REQUIRE(dec.cliques.size() == 2);
  CHECK(dec.cliques[0] == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(dec.cliques[1] == std::vector<int>{2, 3, 4, 5, 6});
  CHECK_FALSE(dec.ambiguous_order);
  CHECK(dec.large_intersections.size() == 1);
}

TEST_CASE("clique decomposition matches brute force on random complexes") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 60; ++k) {
    int m = 2 + k % 2;
    SimplicialComplex d = random_complex(rng, m, 6, 0.6);
    auto dec = clique_decomposition(d);
    auto got = dec.cliques;
    std::sort(got.begin(), got.end());
    CHECK(got == brute_force_cliques(d));
  }
}

TEST_CASE("closedness of the named complexes") {
  CHECK(is_closed(full_complex(2, 5)).closed);
  CHECK(is_closed(full_complex(3, 5)).closed);
  CHECK(is_closed(two_clique_graph()).closed);
  CHECK(is_closed(three_two_cliques()).closed);
  auto open = is_closed(open_graph());
  CHECK_FALSE(open.closed);
  REQUIRE(open.witness.has_value());
  const auto& w = *open.witness;
  CliqueIndex ctx(open_graph());
  CHECK(open_graph().contains(w.F));
  CHECK(open_graph().contains(w.G));
  CHECK_FALSE(ctx.share_clique(w.F, w.G));
  CHECK(w.F[w.coordinate - 1] == w.G[w.coordinate - 1]);
}

TEST_CASE("the three closedness conditions agree on random complexes") {
  std::mt19937_64 rng(11);
  int closed = 0;
  for (int k = 0; k < 80; ++k) {
    int m = 2 + k % 2;
    SimplicialComplex d = random_complex(rng, m, m == 2 ? 6 : 5, 0.5);
    auto c = closedness_conditions(d);
    CHECK(c.agree());
    CHECK(c.b == is_closed(d).closed);
    closed += c.b;
  }
  CHECK(closed > 0);
}

TEST_CASE("clique index lookups") {
  CliqueIndex ctx(two_clique_graph());
  CHECK(ctx.num_cliques() == 2);
  CHECK(ctx.earliest_clique(Facet{2, 3}) == 0);
  CHECK(ctx.earliest_clique(Facet{3, 6}) == 1);
  CHECK(ctx.share_clique(Facet{2, 3}, Facet{4, 6}));
  CHECK_FALSE(ctx.share_clique(Facet{1, 2}, Facet{3, 6}));
  CHECK(ctx.is_clique_face(vertex_mask(Facet{2, 3, 4, 5})));
  CHECK_FALSE(ctx.is_clique_face(vertex_mask(Facet{1, 6})));
  CHECK(ctx.closed());
}

TEST_CASE("clique skeleton faces") {
  // Faces of size 3 of the clique complex of the two-clique graph: C(5,3) twice, minus the shared C(4,3).
  CHECK(clique_skeleton_faces(two_clique_graph(), 2).size() == 16);
}
