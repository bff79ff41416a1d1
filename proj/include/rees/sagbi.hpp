#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rees/complex.hpp"
#include "rees/polyring.hpp"
#include "rees/presentations.hpp"

namespace rees {

struct SubalgebraGens {
  std::vector<Polynomial> gens;
  MonomialOrder order = MonomialOrder::lex_x_prime();
  std::vector<Monomial> leading;  // aligned with gens
  std::vector<Rational> leading_coefficient;
  std::vector<std::size_t> descending;  // generator indices by leading monomial, largest first

  void push(Polynomial g);
};

// {x_ij : i <= m, j <= n} and {[a] t : a facet}.
SubalgebraGens rees_algebra_gens(const SimplicialComplex& delta);
// {[a] : a facet}.
SubalgebraGens fiber_algebra_gens(const SimplicialComplex& delta);

struct SubductionStep {
  Monomial leading;                  // leading monomial before the step
  std::vector<std::size_t> factors;  // generator indices, largest leading monomial first
  Rational coefficient;
};

struct SubductionTrace {
  Polynomial input;
  std::vector<SubductionStep> steps;
  Polynomial remainder;
  bool strictly_descending = true;
};

// Factorization of `mono` into generator leading monomials, largest generator
// first; nullopt when none exists.
std::optional<std::vector<std::size_t>> factor_leading(const Monomial& mono, const SubalgebraGens& S);

SubductionTrace subduct(const Polynomial& p, const SubalgebraGens& S, std::size_t step_budget = 1000000);

struct SagbiItemReport {
  Family family = Family::Plucker;
  std::vector<Facet> facets;
  Polynomial initial;  // binomial in ker phi* (or psi*)
  Polynomial lift;
  SubductionTrace trace;  // subduction of phi(initial) (or psi(initial))
  bool below_marked = false;  // leading term of the image lies under phi*(marked)
  bool lift_in_kernel = false;
  bool lift_dominated = false;
  bool ok() const {
    return trace.remainder.is_zero() && trace.strictly_descending && below_marked && lift_in_kernel && lift_dominated;
  }
};

struct SagbiReport {
  bool verified = false;
  std::vector<SagbiItemReport> items;
};

struct SagbiOptions {
  bool parallel = true;
};

// Lifting criterion for {x_ij} u {[a] t}; NotClosed for non-closed input.
SagbiReport verify_sagbi(const SimplicialComplex& delta, const SagbiOptions& opts = {});
// Same for {[a]} against the Plucker binomials.
SagbiReport verify_fiber_sagbi(const SimplicialComplex& delta, const SagbiOptions& opts = {});

struct DiagnosticItem {
  Polynomial relation;  // generator of ker phi* from the oracle
  SubductionTrace trace;
};

// For any complex: subducts phi(g) over the oracle's generators g of ker phi*
// and returns those with a nonzero remainder.
std::vector<DiagnosticItem> sagbi_diagnostic(const SimplicialComplex& delta);

struct CompletionOptions {
  int max_rounds = 3;
  long degree_budget = 12;  // total degree of toric relations among leading monomials
};

struct CompletionReport {
  SubalgebraGens gens;
  std::vector<Polynomial> added;
  int rounds = 0;
  bool complete = false;  // last round produced no new generator within the budget
};

// Bounded SAGBI completion: adds nonzero subduction remainders of the toric
// relations among leading monomials.
CompletionReport sagbi_complete(SubalgebraGens S, const CompletionOptions& opts = {});

}  // namespace rees
