#include <doctest.h>

#include "fixtures.hpp"
#include "rees/dfi.hpp"
#include "rees/oracle.hpp"
#include "rees/presentations.hpp"
#include "rees/sagbi.hpp"

using namespace rees;
using namespace rees::fixtures;

TEST_CASE("generator sets and leading monomials") {
  auto S = rees_algebra_gens(full_complex(2, 4));
  CHECK(S.gens.size() == 8 + 6);
  auto F = fiber_algebra_gens(full_complex(2, 4));
  CHECK(F.gens.size() == 6);
  for (std::size_t k = 0; k + 1 < S.descending.size(); ++k) {
    CHECK(S.order.compare(S.leading[S.descending[k + 1]], S.leading[S.descending[k]]) <= 0);
  }
  // [12] t leads with x11 x22 t.
  Polynomial g = minor(2, Facet{1, 2}) * t();
  CHECK(leading_monomial(g, S.order) == leading_monomial(x(1, 1) * x(2, 2) * t(), S.order));
}

TEST_CASE("a generator subducts in one step") {
  auto S = rees_algebra_gens(full_complex(2, 4));
  auto tr = subduct(minor(2, Facet{2, 4}) * t(), S);
  CHECK(tr.remainder.is_zero());
  CHECK(tr.steps.size() == 1);
  CHECK(tr.strictly_descending);
}

TEST_CASE("factor_leading") {
  auto S = rees_algebra_gens(full_complex(2, 4));
  Monomial m = leading_monomial(x(1, 3) * x(1, 1) * x(2, 2) * t(), S.order);
  auto f = factor_leading(m, S);
  REQUIRE(f.has_value());
  CHECK(f->size() == 2);
  // t alone is not a product of leading monomials.
  CHECK_FALSE(factor_leading(leading_monomial(t(), S.order), S).has_value());
}

TEST_CASE("image of the lifted Plucker quadric subducts to zero") {
  auto S = rees_algebra_gens(two_clique_graph());
  Polynomial p = (minor(2, Facet{2, 5}) * minor(2, Facet{3, 4}) - minor(2, Facet{2, 4}) * minor(2, Facet{3, 5}) +
                  minor(2, Facet{2, 3}) * minor(2, Facet{4, 5})) *
                 t() * t();
  CHECK(p.is_zero());
  Polynomial q = minor(2, Facet{2, 5}) * minor(2, Facet{3, 4}) * t() * t() -
                 minor(2, Facet{2, 4}) * minor(2, Facet{3, 5}) * t() * t();
  auto tr = subduct(q, S);
  CHECK(tr.remainder.is_zero());
  CHECK(tr.strictly_descending);
}

TEST_CASE("x11 t is not in the algebra of a single facet") {
  SimplicialComplex one(2, 3, {Facet{2, 3}});
  auto S = rees_algebra_gens(one);
  auto tr = subduct(x(1, 1) * t(), S);
  CHECK_FALSE(tr.remainder.is_zero());
  CHECK(tr.steps.empty());
}

TEST_CASE("lifting criterion holds on closed instances") {
  for (const auto& inst : closed_instances()) {
    CAPTURE(inst.name);
    auto rep = verify_sagbi(inst.delta);
    CHECK(rep.verified);
    CliqueIndex ctx(inst.delta);
    CHECK(rep.items.size() == gens_rees_initial(ctx).items.size());
    for (const auto& it : rep.items) CHECK(it.ok());
    auto fib = verify_fiber_sagbi(inst.delta);
    CHECK(fib.verified);
    CHECK(fib.items.size() == gens_fiber_initial(ctx).items.size());
  }
}

TEST_CASE("serial and parallel verification agree") {
  SagbiOptions serial;
  serial.parallel = false;
  auto a = verify_sagbi(three_two_cliques(), serial);
  auto b = verify_sagbi(three_two_cliques());
  REQUIRE(a.items.size() == b.items.size());
  for (std::size_t k = 0; k < a.items.size(); ++k) {
    CHECK(a.items[k].lift == b.items[k].lift);
    CHECK(a.items[k].trace.steps.size() == b.items[k].trace.steps.size());
  }
}

TEST_CASE("single facet fiber is trivially a SAGBI basis") {
  SimplicialComplex one(2, 3, {Facet{1, 2}});
  auto rep = verify_fiber_sagbi(one);
  CHECK(rep.verified);
  CHECK(rep.items.empty());
}

TEST_CASE("non-closed complexes") {
  CHECK_THROWS_AS(verify_sagbi(open_graph()), Error);
  auto diag = sagbi_diagnostic(open_graph());
  CHECK_FALSE(diag.empty());
  for (const auto& d : diag) {
    CHECK(apply_map(PresentationMap::PhiStar, d.relation, 2).is_zero());
    CHECK_FALSE(d.trace.remainder.is_zero());
  }
  // Closed complexes have no obstruction.
  CHECK(sagbi_diagnostic(full_complex(2, 4)).empty());
}

TEST_CASE("bounded completion adds generators on the open graph") {
  CompletionOptions co;
  co.max_rounds = 1;
  auto rep = sagbi_complete(rees_algebra_gens(open_graph()), co);
  CHECK_FALSE(rep.added.empty());
  CHECK(rep.gens.gens.size() > rees_algebra_gens(open_graph()).gens.size());
  for (const auto& g : rep.added) CHECK_FALSE(g.is_zero());
  auto done = sagbi_complete(rees_algebra_gens(full_complex(2, 4)), co);
  CHECK(done.added.empty());
  CHECK(done.complete);
}

TEST_CASE("subduction step budget") {
  auto S = rees_algebra_gens(full_complex(2, 4));
  CHECK_THROWS_AS(subduct(minor(2, Facet{1, 2}) * t(), S, 0), Error);
}
