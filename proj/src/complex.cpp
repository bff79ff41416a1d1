#include "rees/complex.hpp"

#include <algorithm>
#include <bit>

#include "rees/dfi.hpp"

namespace rees {

SimplicialComplex::SimplicialComplex(int m, int n, std::vector<Facet> facets, std::vector<std::string>* warnings)
    : m_(m), n_(n) {
  if (m < 1 || m > kMaxFacetSize) throw Error(ErrorCode::BadIndex, "facet size m out of range");
  if (n < m || n > kMaxVertices) throw Error(ErrorCode::BadIndex, "vertex count n out of range");
  for (const auto& f : facets) {
    if (f.size() != m) throw Error(ErrorCode::BadIndex, "facet {" + f.to_string() + "} does not have m vertices");
    if (f.back() > n) throw Error(ErrorCode::BadIndex, "facet {" + f.to_string() + "} exceeds n");
  }
  std::sort(facets.begin(), facets.end());
  auto last = std::unique(facets.begin(), facets.end());
  if (last != facets.end() && warnings != nullptr) {
    warnings->push_back("dropped " + std::to_string(facets.end() - last) + " duplicate facet(s)");
  }
  facets.erase(last, facets.end());
  facets_ = std::move(facets);
}

bool SimplicialComplex::contains(const Facet& f) const { return index_of(f) >= 0; }

int SimplicialComplex::index_of(const Facet& f) const {
  auto it = std::lower_bound(facets_.begin(), facets_.end(), f);
  if (it == facets_.end() || !(*it == f)) return -1;
  return static_cast<int>(it - facets_.begin());
}

std::uint64_t vertex_mask(const Facet& f) {
  std::uint64_t mask = 0;
  for (int i = 0; i < f.size(); ++i) mask |= std::uint64_t{1} << (f[i] - 1);
  return mask;
}

std::vector<int> mask_vertices(std::uint64_t mask) {
  std::vector<int> vs;
  while (mask != 0) {
    int b = std::countr_zero(mask);
    vs.push_back(b + 1);
    mask &= mask - 1;
  }
  return vs;
}

std::vector<Facet> subsets_of_size(const std::vector<int>& vertices, int k) {
  std::vector<Facet> out;
  int n = static_cast<int>(vertices.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> cols;
    for (int i : idx) cols.push_back(vertices[static_cast<std::size_t>(i)]);
    out.emplace_back(cols);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

SimplicialComplex full_complex(int m, int n) {
  std::vector<int> all;
  for (int v = 1; v <= n; ++v) all.push_back(v);
  return SimplicialComplex(m, n, subsets_of_size(all, m));
}

SimplicialComplex complex_from_cliques(int m, int n, const std::vector<std::vector<int>>& cliques) {
  std::vector<Facet> fs;
  for (const auto& c : cliques) {
    std::vector<int> vs = c;
    std::sort(vs.begin(), vs.end());
    for (auto& f : subsets_of_size(vs, m)) fs.push_back(f);
  }
  return SimplicialComplex(m, n, std::move(fs));
}

namespace {

// True when every m-subset of `set` containing vertex v is a facet, given
// that `set` without v already has that property.
bool extends(const SimplicialComplex& delta, std::uint64_t set, int v) {
  int m = delta.m();
  std::vector<int> rest = mask_vertices(set);
  if (static_cast<int>(rest.size()) + 1 < m) return true;
  for (const auto& s : subsets_of_size(rest, m - 1)) {
    std::vector<int> cols = s.to_vector();
    cols.insert(std::upper_bound(cols.begin(), cols.end(), v), v);
    if (!delta.contains(Facet(cols))) return false;
  }
  return true;
}

// Bron-Kerbosch over the hereditary family "all m-subsets are facets".
void enumerate_maximal(const SimplicialComplex& delta, std::uint64_t r, std::vector<int> p, std::vector<int> x,
                       std::vector<std::uint64_t>& out) {
  if (p.empty() && x.empty()) {
    if (std::popcount(r) >= delta.m()) out.push_back(r);
    return;
  }
  while (!p.empty()) {
    int v = p.front();
    std::uint64_t r2 = r | (std::uint64_t{1} << (v - 1));
    std::vector<int> p2;
    std::vector<int> x2;
    for (int u : p) {
      if (u != v && extends(delta, r2, u)) p2.push_back(u);
    }
    for (int u : x) {
      if (extends(delta, r2, u)) x2.push_back(u);
    }
    enumerate_maximal(delta, r2, std::move(p2), std::move(x2), out);
    p.erase(p.begin());
    x.push_back(v);
  }
}

}  // namespace

CliqueDecomposition clique_decomposition(const SimplicialComplex& delta) {
  std::uint64_t used = 0;
  for (const auto& f : delta.facets()) used |= vertex_mask(f);
  std::vector<std::uint64_t> found;
  enumerate_maximal(delta, 0, mask_vertices(used), {}, found);

  CliqueDecomposition dec;
  for (auto mask : found) dec.cliques.push_back(mask_vertices(mask));
  std::sort(dec.cliques.begin(), dec.cliques.end());
  for (std::size_t i = 1; i < dec.cliques.size(); ++i) {
    if (dec.cliques[i].front() == dec.cliques[i - 1].front()) dec.ambiguous_order = true;
  }
  for (std::size_t i = 0; i < dec.cliques.size(); ++i) {
    for (std::size_t j = i + 1; j < dec.cliques.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(dec.cliques[i].begin(), dec.cliques[i].end(), dec.cliques[j].begin(),
                            dec.cliques[j].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) >= delta.m()) {
        dec.large_intersections.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return dec;
}

std::vector<Facet> clique_skeleton_faces(const SimplicialComplex& delta, int k) {
  std::vector<Facet> out;
  for (const auto& c : clique_decomposition(delta).cliques) {
    for (auto& f : subsets_of_size(c, k + 1)) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CliqueIndex::CliqueIndex(const SimplicialComplex& delta) : delta_(delta), dec_(clique_decomposition(delta)) {
  if (dec_.cliques.size() > 64) throw Error(ErrorCode::BadIndex, "more than 64 maximal cliques");
  for (const auto& c : dec_.cliques) {
    std::uint64_t mask = 0;
    for (int v : c) mask |= std::uint64_t{1} << (v - 1);
    masks_.push_back(mask);
  }
  for (const auto& f : delta_.facets()) {
    std::uint64_t cl = cliques_containing(vertex_mask(f));
    earliest_.push_back(cl == 0 ? -1 : std::countr_zero(cl));
  }
  closed_.closed = true;
  const auto& fs = delta_.facets();
  for (std::size_t i = 0; i < fs.size() && closed_.closed; ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      if (share_clique(fs[i], fs[j])) continue;
      int k = 0;
      while (k < m() && fs[i][k] != fs[j][k]) ++k;
      if (k < m()) {
        closed_ = {false, ClosednessWitness{fs[i], fs[j], k + 1}};
        break;
      }
    }
  }
}

int CliqueIndex::earliest_clique(const Facet& f) const {
  int idx = delta_.index_of(f);
  if (idx < 0) throw Error(ErrorCode::BadIndex, "{" + f.to_string() + "} is not a facet");
  return earliest_[static_cast<std::size_t>(idx)];
}

std::uint64_t CliqueIndex::cliques_containing(std::uint64_t vertices) const {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < masks_.size() && k < 64; ++k) {
    if ((vertices & ~masks_[k]) == 0) out |= std::uint64_t{1} << k;
  }
  return out;
}

ClosednessResult is_closed(const SimplicialComplex& delta) { return CliqueIndex(delta).closedness(); }

ClosednessConditions closedness_conditions(const SimplicialComplex& delta) {
  const auto& fs = delta.facets();
  const int m = delta.m();
  CliqueIndex idx(delta);
  ClosednessConditions out{true, true, true};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const Facet& F = fs[i];
      const Facet& G = fs[j];
      bool shared = false;
      for (int k = 0; k < m; ++k) shared = shared || F[k] == G[k];
      if (shared && out.a) {
        for (const auto& s : subsets_of_size(mask_vertices(vertex_mask(F) | vertex_mask(G)), m)) {
          if (!delta.contains(s)) {
            out.a = false;
            break;
          }
        }
      }
      if (!idx.share_clique(F, G)) {
        if (shared) out.b = false;
        Monomial inF = leading_monomial(minor(m, F), MonomialOrder::lex_x());
        Monomial inG = leading_monomial(minor(m, G), MonomialOrder::lex_x());
        if (!inF.gcd(inG).is_one()) out.c = false;
      }
    }
  }
  return out;
}

}  // namespace rees
