#include "rees/sagbi.hpp"

#include <algorithm>
#include <exception>

#include "rees/dfi.hpp"
#include "rees/oracle.hpp"

namespace rees {

void SubalgebraGens::push(Polynomial g) {
  auto [lm, lc] = leading_term(g, order);
  gens.push_back(std::move(g));
  leading.push_back(lm);
  leading_coefficient.push_back(lc);
  std::size_t idx = gens.size() - 1;
  auto pos = std::lower_bound(descending.begin(), descending.end(), idx, [this](std::size_t a, std::size_t b) {
    return order.greater(leading[a], leading[b]);
  });
  descending.insert(pos, idx);
}

namespace {

bool factor_rec(const Monomial& rest, std::size_t start, const SubalgebraGens& S, std::vector<std::size_t>& out) {
  if (rest.is_one()) return true;
  for (std::size_t k = start; k < S.descending.size(); ++k) {
    std::size_t g = S.descending[k];
    auto q = rest.try_divide(S.leading[g]);
    if (!q) continue;
    out.push_back(g);
    if (factor_rec(*q, k, S, out)) return true;
    out.pop_back();
  }
  return false;
}

Polynomial generator_product(const SubalgebraGens& S, const std::vector<std::size_t>& factors) {
  Polynomial p(1);
  for (std::size_t g : factors) p = p * S.gens[g];
  return p;
}

// Runs `body(k)` for k < n, in parallel when asked; rethrows the first error.
template <class Body>
void for_each_index(std::size_t n, bool parallel, Body body) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t k = 0; k < n; ++k) {
    try {
      body(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SagbiReport run_verification(const CliqueIndex& ctx, const GeneratorSet& initial, const SubalgebraGens& S,
                             PresentationMap map, PresentationMap star, const SagbiOptions& opts) {
  const int m = ctx.m();
  const auto quadrics = plucker_quadrics(ctx);
  SagbiReport rep;
  rep.items.resize(initial.items.size());
  for_each_index(initial.items.size(), opts.parallel, [&](std::size_t k) {
    const GeneratorItem& item = initial.items[k];
    SagbiItemReport& r = rep.items[k];
    r.family = item.family;
    r.facets = item.facets;
    r.initial = item.poly;
    Polynomial image = apply_map(map, item.poly, m);
    Monomial top = leading_monomial(apply_map(star, Polynomial::term(*item.marked), m), S.order);
    r.below_marked = image.is_zero() || S.order.greater(top, leading_monomial(image, S.order));
    r.trace = subduct(image, S);
    try {
      r.lift = sagbi_lift(item, ctx, &quadrics);
      r.lift_in_kernel = apply_map(map, r.lift, m).is_zero();
      r.lift_dominated = lift_dominated(r.lift, item.poly, *item.marked);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotLiftable) throw;
    }
  });
  rep.verified = std::all_of(rep.items.begin(), rep.items.end(), [](const SagbiItemReport& r) { return r.ok(); });
  return rep;
}

}  // namespace

SubalgebraGens rees_algebra_gens(const SimplicialComplex& delta) {
  SubalgebraGens S;
  for (int i = 1; i <= delta.m(); ++i) {
    for (int j = 1; j <= delta.n(); ++j) S.push(Polynomial::variable(Variable::x(i, j)));
  }
  Polynomial t = Polynomial::variable(Variable::t());
  for (const auto& a : delta.facets()) S.push(minor(delta.m(), a) * t);
  return S;
}

SubalgebraGens fiber_algebra_gens(const SimplicialComplex& delta) {
  SubalgebraGens S;
  for (const auto& a : delta.facets()) S.push(minor(delta.m(), a));
  return S;
}

std::optional<std::vector<std::size_t>> factor_leading(const Monomial& mono, const SubalgebraGens& S) {
  std::vector<std::size_t> out;
  if (!factor_rec(mono, 0, S, out)) return std::nullopt;
  return out;
}

SubductionTrace subduct(const Polynomial& p, const SubalgebraGens& S, std::size_t step_budget) {
  SubductionTrace tr;
  tr.input = p;
  Polynomial cur = p;
  while (!cur.is_zero()) {
    auto [lm, lc] = leading_term(cur, S.order);
    auto f = factor_leading(lm, S);
    if (!f) break;
    if (tr.steps.size() >= step_budget) throw Error(ErrorCode::NonTermination, "subduction step budget exhausted");
    Rational denom = 1;
    for (std::size_t g : *f) denom *= S.leading_coefficient[g];
    Rational coef = lc / denom;
    cur = cur - generator_product(S, *f).scaled(coef);
    if (!cur.is_zero() && !S.order.greater(lm, leading_monomial(cur, S.order))) tr.strictly_descending = false;
    tr.steps.push_back({lm, std::move(*f), coef});
    if (!tr.strictly_descending) break;
  }
  tr.remainder = std::move(cur);
  return tr;
}

SagbiReport verify_sagbi(const SimplicialComplex& delta, const SagbiOptions& opts) {
  CliqueIndex ctx(delta);
  GeneratorSet initial = gens_rees_initial(ctx);
  return run_verification(ctx, initial, rees_algebra_gens(delta), PresentationMap::Phi, PresentationMap::PhiStar, opts);
}

SagbiReport verify_fiber_sagbi(const SimplicialComplex& delta, const SagbiOptions& opts) {
  CliqueIndex ctx(delta);
  GeneratorSet initial = gens_fiber_initial(ctx);
  return run_verification(ctx, initial, fiber_algebra_gens(delta), PresentationMap::Psi, PresentationMap::PsiStar, opts);
}

std::vector<DiagnosticItem> sagbi_diagnostic(const SimplicialComplex& delta) {
  IdealBasis k = kernel_of_map(PresentationMap::PhiStar, delta);
  SubalgebraGens S = rees_algebra_gens(delta);
  std::vector<DiagnosticItem> out;
  for (const auto& g : k.generators) {
    SubductionTrace tr = subduct(apply_map(PresentationMap::Phi, g, delta.m()), S);
    if (!tr.remainder.is_zero() || !tr.strictly_descending) out.push_back({g, std::move(tr)});
  }
  return out;
}

CompletionReport sagbi_complete(SubalgebraGens S, const CompletionOptions& opts) {
  CompletionReport rep;
  for (int round = 0; round < opts.max_rounds; ++round) {
    rep.rounds = round + 1;
    if (S.gens.size() > 255) throw Error(ErrorCode::OracleBudgetExceeded, "too many subalgebra generators");
    // Toric relations among the leading monomials, with Y_k encoded as T_{k}.
    std::vector<Polynomial> graph;
    for (std::size_t k = 0; k < S.gens.size(); ++k) {
      Variable y = Variable::T(Facet{static_cast<int>(k) + 1});
      graph.push_back(Polynomial::variable(y) - Polynomial::term(S.leading[k]));
    }
    OracleOptions oo;
    oo.degree_budget = opts.degree_budget;
    MonomialOrder elim = MonomialOrder::weighted("EliminateXt", {KindWeights{1, 0, 1}}, TieBreak::Lex);
    IdealBasis gb = groebner_basis(graph, elim, oo);
    VariableMap sub = [&S](const Variable& v) -> std::optional<Polynomial> {
      if (v.kind() != VarKind::T) return Polynomial::variable(v);
      std::size_t k = static_cast<std::size_t>(v.facet()[0]) - 1;
      return S.gens[k].scaled(Rational(1) / S.leading_coefficient[k]);
    };
    std::vector<Polynomial> fresh;
    for (const auto& g : gb.generators) {
      if (g.degree(VarKind::X) > 0 || g.degree(VarKind::Tdeg) > 0) continue;
      SubductionTrace tr = subduct(evaluate(g, sub), S);
      if (tr.remainder.is_zero()) continue;
      Monomial lm = leading_monomial(tr.remainder, S.order);
      bool known = std::any_of(fresh.begin(), fresh.end(),
                               [&](const Polynomial& f) { return leading_monomial(f, S.order) == lm; });
      if (!known) fresh.push_back(std::move(tr.remainder));
    }
    if (fresh.empty()) {
      rep.complete = !gb.truncated;
      break;
    }
    for (auto& f : fresh) {
      rep.added.push_back(f);
      S.push(std::move(f));
    }
  }
  rep.gens = std::move(S);
  return rep;
}

}  // namespace rees
