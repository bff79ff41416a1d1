#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rees/complex.hpp"
#include "rees/polyring.hpp"

namespace rees {

// det of rows 1..m of the generic matrix on the listed columns (any order,
// repeats allowed), by Leibniz expansion with the identity term positive.
Polynomial leibniz_determinant(int m, const std::vector<int>& columns);

// Maximal minor [a]; memoized per (m, a), safe to call from several threads.
const Polynomial& minor(int m, const Facet& a);

// x_a = x_{1 a_1} ... x_{m a_m}.
Monomial initial_monomial(const Facet& a);

struct DeterminantalFacetIdeal {
  SimplicialComplex delta;
  std::vector<Polynomial> generators;  // aligned with delta.facets()
};

DeterminantalFacetIdeal build_dfi(const SimplicialComplex& delta);

struct SPairReport {
  bool all_zero = true;
  std::optional<std::pair<Facet, Facet>> failing;
  Polynomial remainder;
};

// Reduces every S-pair of minors by the minors under LexX.
SPairReport spair_report(const DeterminantalFacetIdeal& J);

// Requires a closed complex; true when the minors form a Groebner basis.
bool closed_gb_check(const DeterminantalFacetIdeal& J);

}  // namespace rees
