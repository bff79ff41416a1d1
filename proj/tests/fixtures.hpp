// Named complexes shared by the unit tests and the acceptance binary.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rees/complex.hpp"
#include "rees/polyring.hpp"

namespace rees::fixtures {

inline Facet F(std::initializer_list<int> v) { return Facet(v); }

// Two 5-cliques {1..5} and {2..6}, m = 2.
inline SimplicialComplex two_clique_graph() { return complex_from_cliques(2, 6, {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}}); }

// Edges 12, 14, 15, 23, 34, 35: not closed.
inline SimplicialComplex open_graph() {
  return SimplicialComplex(2, 5, {F({1, 2}), F({1, 4}), F({1, 5}), F({2, 3}), F({3, 4}), F({3, 5})});
}

// m = 3, cliques {1..5} and {4,5,6}.
inline SimplicialComplex three_two_cliques() { return complex_from_cliques(3, 6, {{1, 2, 3, 4, 5}, {4, 5, 6}}); }

struct Named {
  std::string name;
  SimplicialComplex delta;
};

// Closed instances for the generator, standard-monomial and SAGBI checks.
inline std::vector<Named> closed_instances() {
  return {{"2x4 full", full_complex(2, 4)},
          {"2x5 full", full_complex(2, 5)},
          {"3x5 full", full_complex(3, 5)},
          {"two-clique graph", two_clique_graph()},
          {"m=3 two cliques", three_two_cliques()}};
}

inline Polynomial var(const Variable& v) { return Polynomial::variable(v); }
inline Polynomial x(int i, int j) { return var(Variable::x(i, j)); }
inline Polynomial T(std::initializer_list<int> a) { return var(Variable::T(Facet(a))); }
inline Polynomial t() { return var(Variable::t()); }

}  // namespace rees::fixtures
