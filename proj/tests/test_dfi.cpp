#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rees/dfi.hpp"
#include "rees/oracle.hpp"

using namespace rees;
using namespace rees::fixtures;

namespace {

// Cofactor expansion along the first row, independent of the Leibniz code.
Polynomial laplace(int row, int m, const std::vector<int>& cols) {
  if (cols.empty()) return Polynomial(1);
  Polynomial out;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> rest = cols;
    rest.erase(rest.begin() + static_cast<long>(k));
    Polynomial term = x(row, cols[k]) * laplace(row + 1, m, rest);
    out += (k % 2 == 0) ? term : -term;
  }
  return out;
}

}  // namespace

TEST_CASE("2-minor and its initial term") {
  CHECK(minor(2, Facet{1, 2}) == x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1));
  CHECK(initial_monomial(Facet{1, 4, 5}) == Monomial::from_powers({{Variable::x(1, 1), 1},
                                                                    {Variable::x(2, 4), 1},
                                                                    {Variable::x(3, 5), 1}}));
  CHECK(leibniz_determinant(2, {2, 2}).is_zero());
  CHECK(leibniz_determinant(2, {2, 1}) == -minor(2, Facet{1, 2}));
  CHECK_THROWS_AS(leibniz_determinant(3, {1, 2}), Error);
}

TEST_CASE("Leibniz expansion agrees with cofactor expansion") {
  for (int m = 1; m <= 4; ++m) {
    std::vector<int> vs;
    for (int j = 1; j <= m + 2; ++j) vs.push_back(j);
    for (const auto& a : subsets_of_size(vs, m)) {
      CHECK(minor(m, a) == laplace(1, m, a.to_vector()));
      CHECK(leading_monomial(minor(m, a), MonomialOrder::lex_x()) == initial_monomial(a));
    }
  }
}

TEST_CASE("minors of a closed complex form a Groebner basis under LexX") {
  for (const auto& inst : closed_instances()) {
    CAPTURE(inst.name);
    auto J = build_dfi(inst.delta);
    CHECK(J.generators.size() == inst.delta.facets().size());
    CHECK(closed_gb_check(J));
  }
}

TEST_CASE("minors of the open graph are not a Groebner basis") {
  auto J = build_dfi(open_graph());
  CHECK_THROWS_AS(closed_gb_check(J), Error);
  auto rep = spair_report(J);
  CHECK_FALSE(rep.all_zero);
  CHECK(rep.failing.has_value());
  CHECK_FALSE(rep.remainder.is_zero());
}

TEST_CASE("2x3 minors are already a reduced basis under LexX") {
  auto J = build_dfi(full_complex(2, 3));
  IdealBasis gb = groebner_basis(J.generators, MonomialOrder::lex_x());
  CHECK(gb.is_groebner);
  REQUIRE(gb.generators.size() == 3);
  for (const auto& g : J.generators) {
    bool found = false;
    for (const auto& h : gb.generators) found = found || h == g || h == -g;
    CHECK(found);
  }
}

TEST_CASE("leading ideal of a closed DFI is generated by the diagonals") {
  for (const auto& inst : closed_instances()) {
    CAPTURE(inst.name);
    auto J = build_dfi(inst.delta);
    IdealBasis gb = groebner_basis(J.generators, MonomialOrder::lex_x());
    std::vector<Monomial> lead;
    for (const auto& g : gb.generators) lead.push_back(leading_monomial(g, MonomialOrder::lex_x()));
    std::vector<Monomial> diag;
    for (const auto& a : inst.delta.facets()) diag.push_back(initial_monomial(a));
    std::sort(lead.begin(), lead.end());
    std::sort(diag.begin(), diag.end());
    CHECK(lead == diag);
  }
}

TEST_CASE("minor memo is safe under concurrent access") {
  std::vector<Polynomial> out(64);
#pragma omp parallel for
  for (int k = 0; k < 64; ++k) out[static_cast<std::size_t>(k)] = minor(3, Facet{1 + k % 3, 5, 7 + k % 4});
  for (int k = 0; k < 64; ++k) CHECK(out[static_cast<std::size_t>(k)] == laplace(1, 3, {1 + k % 3, 5, 7 + k % 4}));
}
