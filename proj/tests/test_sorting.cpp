#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "properties.hpp"
#include "rees/oracle.hpp"
#include "rees/presentations.hpp"
#include "rees/sorting.hpp"

using namespace rees;
using namespace rees::fixtures;

namespace {

Monomial mono(std::initializer_list<Variable> vs) {
  std::vector<VarPower> vp;
  for (const auto& v : vs) vp.push_back({v, 1});
  return Monomial::from_powers(std::move(vp));
}
Variable X(int i, int j) { return Variable::x(i, j); }
Variable TV(std::initializer_list<int> a) { return Variable::T(Facet(a)); }

}  // namespace

TEST_CASE("insert_index") {
  auto r = insert_index(Facet{1, 4, 5}, 2);
  CHECK(r.tuple == std::vector<int>{1, 2, 4, 5});
  CHECK(r.position == 2);
  CHECK(insert_index(Facet{2, 3, 4}, 1).position == 1);
  CHECK(insert_index(Facet{2, 3}, 9).position == 3);
  CHECK_THROWS_AS(insert_index(Facet{1, 4, 5}, 4), Error);
}

TEST_CASE("sorting distance and sortedness on the full 3x5 complex") {
  Monomial m1 = mono({X(1, 1), X(2, 2), TV({1, 4, 5}), TV({2, 3, 4})});
  Monomial m2 = mono({X(1, 2), X(2, 4), TV({1, 2, 4}), TV({1, 3, 5})});
  CHECK(sorting_distance(m1, 3).to_string() == "(2;0,1,1)");
  CHECK_FALSE(sorting_distance(m1, 3).is_sorted());
  CHECK(sorting_distance(m2, 3).is_sorted());
  CliqueIndex ctx(full_complex(3, 5));
  CHECK(sorting_distance(m1, ctx).to_string() == "(2;0,1,1)");
  CHECK(is_clique_sorted(m2, ctx).sorted);
  auto why = is_clique_sorted(m1, ctx);
  CHECK_FALSE(why.sorted);
  CHECK(why.violated == CliqueCondition::I);
  CHECK(phi_star(m1) == phi_star(m2));
  Monomial image = Monomial::from_powers({{X(1, 1), 2}, {X(1, 2), 1}, {X(2, 2), 1}, {X(2, 3), 1}, {X(2, 4), 1},
                                          {X(3, 4), 1}, {X(3, 5), 1}, {Variable::t(), 2}});
  CHECK(phi_star(m1) == image);
}

TEST_CASE("sorted factorization fills the tableau column by column") {
  Monomial m = Monomial::from_powers({{X(1, 1), 1}, {X(1, 3), 2}, {X(2, 2), 1}, {X(2, 3), 1}, {X(2, 4), 1},
                                      {X(3, 4), 1}, {X(3, 5), 1}, {Variable::t(), 2}});
  auto f = sorted_factorization(m, 3);
  CHECK(f.u == mono({X(1, 3), X(2, 3)}));
  REQUIRE(f.facets.size() == 2);
  CHECK(f.facets[0] == Facet{1, 2, 4});
  CHECK(f.facets[1] == Facet{3, 4, 5});
  CHECK(tableau_string(f.facets) == "[[1,2,4],[3,4,5]]");
  // x11 t is not in the image: no 3-facet fits under a single variable.
  CHECK_THROWS_AS(sorted_factorization(mono({X(1, 1), Variable::t()}), 3), Error);
}

TEST_CASE("one Plucker step on T14 T23") {
  CliqueIndex ctx(full_complex(2, 4));
  Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
  RewriteOptions ro;
  ro.record_trace = true;
  auto nf = rw.normal_form(mono({TV({1, 4}), TV({2, 3})}), ro);
  CHECK(nf.result == mono({TV({1, 3}), TV({2, 4})}));
  CHECK(nf.coefficient == 1);
  REQUIRE(nf.num_steps == 1);
  CHECK(nf.steps[0].family == Family::Plucker);
}

TEST_CASE("normal form of the unsorted 3x5 example") {
  CliqueIndex ctx(full_complex(3, 5));
  Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
  Monomial m1 = mono({X(1, 1), X(2, 2), TV({1, 4, 5}), TV({2, 3, 4})});
  RewriteOptions ro;
  ro.record_trace = true;
  auto nf = rw.normal_form(m1, ro);
  CHECK(sorting_distance(nf.result, ctx).to_string() == "(0;0,0,0)");
  CHECK(nf.result == mono({X(1, 2), X(2, 4), TV({1, 2, 4}), TV({1, 3, 5})}));
  for (const auto& s : nf.steps) CHECK(reduction_measure_decreases(s));
  // Already sorted: no steps.
  CHECK(rw.normal_form(nf.result).num_steps == 0);
}

TEST_CASE("linear syzygy step keeps r but lowers the rewrite measure") {
  CliqueIndex ctx(full_complex(2, 3));
  Monomial before = mono({X(1, 1), X(2, 2), TV({2, 3})});
  Monomial after = mono({X(1, 2), X(2, 2), TV({1, 3})});
  CHECK(sorting_distance(before, ctx).r == sorting_distance(after, ctx).r);
  CHECK(rewrite_measure(after, ctx) < rewrite_measure(before, ctx));
  Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
  RewriteOptions ro;
  ro.record_trace = true;
  auto nf = rw.normal_form(before, ro);
  REQUIRE(nf.steps.size() == 2);
  CHECK(nf.steps[0].produced == after);
  CHECK(nf.result == mono({X(1, 2), X(2, 3), TV({1, 2})}));
}

TEST_CASE("rewriting is confluent and the measure drops at every step") {
  std::mt19937_64 rng(99);
  for (const auto& inst : closed_instances()) {
    CAPTURE(inst.name);
    CliqueIndex ctx(inst.delta);
    Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
    for (int k = 0; k < 40; ++k) {
      Monomial m = properties::random_rees_monomial(rng, ctx, 1 + k % 3, k % 5);
      CAPTURE(m.to_string());
      CHECK(properties::confluent_on(rw, m, static_cast<std::uint64_t>(k)));
      RewriteOptions ro;
      ro.record_trace = true;
      ro.strategy = Strategy::Random;
      ro.seed = static_cast<std::uint64_t>(k);
      auto nf = rw.normal_form(m, ro);
      for (const auto& s : nf.steps) CHECK(reduction_measure_decreases(s));
      CHECK(is_clique_sorted(nf.result, ctx).sorted);
      CHECK(phi_star(nf.result) == phi_star(m));
    }
  }
}

TEST_CASE("clique-sorted T-monomials are the standard monomials of the marked terms") {
  CliqueIndex ctx(two_clique_graph());
  GeneratorSet gs = gens_rees_initial(ctx);
  std::vector<Monomial> marked;
  for (const auto& it : gs.items) marked.push_back(*it.marked);
  std::vector<Variable> tvars;
  for (const auto& a : ctx.complex().facets()) tvars.push_back(Variable::T(a));
  auto standard = standard_monomials(tvars, marked, 2);
  std::set<std::string> a;
  for (const auto& s : standard) a.insert(s.to_string());
  std::set<std::string> b;
  for (const auto& m : standard_monomials(tvars, {}, 2)) {
    if (is_clique_sorted(m, ctx).sorted) b.insert(m.to_string());
  }
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("clique-sorted factorization inverts phi* on sorted monomials") {
  std::mt19937_64 rng(5);
  for (const auto& inst : closed_instances()) {
    CAPTURE(inst.name);
    CliqueIndex ctx(inst.delta);
    Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
    for (int k = 0; k < 40; ++k) {
      Monomial m = rw.normal_form(properties::random_rees_monomial(rng, ctx, 1 + k % 3, k % 4)).result;
      CAPTURE(m.to_string());
      CHECK(clique_sorted_factorization(phi_star(m), ctx).as_monomial() == m);
    }
  }
}

TEST_CASE("clique-sortedness needs a closed complex") {
  CliqueIndex ctx(open_graph());
  CHECK_THROWS_AS(is_clique_sorted(mono({TV({1, 2})}), ctx), Error);
}

TEST_CASE("step budget stops runaway rewriting") {
  CliqueIndex ctx(full_complex(3, 5));
  Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
  RewriteOptions ro;
  ro.step_budget = 0;
  CHECK_THROWS_AS(rw.normal_form(mono({X(1, 1), X(2, 2), TV({1, 4, 5}), TV({2, 3, 4})}), ro), Error);
}
