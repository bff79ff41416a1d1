#include "rees/oracle.hpp"

#include <algorithm>
#include <set>

#include "engine.hpp"
#include "rees/dfi.hpp"

namespace rees {

namespace {

std::vector<Variable> collect_variables(const std::vector<const std::vector<Polynomial>*>& lists) {
  std::set<Variable> vs;
  for (const auto* l : lists) {
    for (const auto& p : *l) {
      for (const auto& v : p.variables()) vs.insert(v);
    }
  }
  return {vs.begin(), vs.end()};
}

engine::Options engine_options(const OracleOptions& opts, std::optional<long> budget) {
  engine::Options e;
  e.degree_budget = budget;
  e.strict = opts.strict;
  e.parallel = opts.parallel;
  return e;
}

template <class F>
engine::Result<F> run_engine(const engine::Ring& R, const std::vector<Polynomial>& gens, const engine::Options& eo) {
  std::vector<engine::Poly<F>> in;
  in.reserve(gens.size());
  for (const auto& g : gens) in.push_back(engine::from_polynomial<F>(R, g));
  engine::Buchberger<F> bb(R, eo);
  return bb.run(in);
}

bool is_constant_nonzero(const std::vector<Polynomial>& gens) {
  return std::any_of(gens.begin(), gens.end(), [](const Polynomial& p) {
    return !p.is_zero() && p.terms().size() == 1 && p.terms().front().first.is_one();
  });
}

IdealBasis groebner_with_budget(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                const OracleOptions& opts, std::optional<long> budget) {
  IdealBasis out;
  out.order = order;
  if (is_constant_nonzero(gens)) {
    out.generators = {Polynomial(1)};
    out.is_groebner = true;
    return out;
  }
  auto vars = collect_variables({&gens});
  engine::Ring R(vars, order);
  engine::Options eo = engine_options(opts, budget);

  std::vector<Monomial> modular_leading;
  bool modular_done = false;
  if (opts.field == FieldKind::Fp32003) {
    try {
      auto res = run_engine<engine::PField>(R, gens, eo);
      for (const auto& p : res.basis) modular_leading.push_back(R.to_monomial(p.t.front().m));
      modular_done = true;
    } catch (const Error& e) {
      // Bad reduction of a denominator: fall through to the rational run.
      if (e.code() != ErrorCode::Internal) throw;
      if (opts.warnings) opts.warnings->push_back(std::string("modular pre-pass skipped: ") + e.what());
    }
  }

  auto res = run_engine<engine::QField>(R, gens, eo);
  for (const auto& p : res.basis) out.generators.push_back(engine::to_polynomial<engine::QField>(R, p));
  out.truncated = res.truncated;
  out.is_groebner = !res.truncated;
  out.degree_reached = res.max_degree_done;

  if (modular_done && opts.warnings) {
    std::vector<Monomial> lead;
    for (const auto& p : res.basis) lead.push_back(R.to_monomial(p.t.front().m));
    if (lead != modular_leading) {
      opts.warnings->push_back("modular and rational leading ideals differ; rational result kept");
    }
  }
  return out;
}

// Largest value of the engine's sugar grading over the terms of p.
long engine_degree(const engine::Ring& R, const Polynomial& p) {
  long d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max<long>(d, R.make(m).deg);
  return d;
}

Reduction reduce_in_ring(const engine::Ring& R, const Polynomial& f, const std::vector<Polynomial>& gb) {
  std::vector<engine::Poly<engine::QField>> G;
  G.reserve(gb.size());
  for (const auto& g : gb) {
    G.push_back(engine::from_polynomial<engine::QField>(R, g));
    engine::make_monic<engine::QField>(G.back());
  }
  engine::Reducers<engine::QField> red;
  red.R = &R;
  for (const auto& g : G) {
    if (!g.empty()) red.polys.push_back(&g);
  }
  Reduction out;
  auto r = engine::reduce_full<engine::QField>(R, engine::from_polynomial<engine::QField>(R, f), red, &out.steps);
  out.remainder = engine::to_polynomial<engine::QField>(R, r);
  return out;
}

bool has_kind(const Polynomial& p, VarKind k) {
  for (const auto& [m, c] : p.terms()) {
    if (m.degree(k) > 0) return true;
  }
  return false;
}

bool t_linear(const Polynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    if (m.degree(VarKind::T) != 1) return false;
  }
  return true;
}

}  // namespace

long default_degree_budget(int m) {
  // x has weight 1 and T weight m + 1; 2m + 4 in T-units is generous for the
  // quadratic generators while still bounding runaway eliminations.
  return static_cast<long>(2 * m + 4) * (m + 1);
}

IdealBasis groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order, const OracleOptions& opts) {
  return groebner_with_budget(gens, order, opts, opts.degree_budget);
}

Reduction normal_form(const Polynomial& f, const IdealBasis& gb) {
  if (f.is_zero()) return {};
  std::vector<Polynomial> one{f};
  auto vars = collect_variables({&one, &gb.generators});
  engine::Ring R(vars, gb.order);
  return reduce_in_ring(R, f, gb.generators);
}

bool ideal_member(const Polynomial& f, const IdealBasis& gb) { return normal_form(f, gb).remainder.is_zero(); }

MonomialOrder kernel_order(PresentationMap map, int m) {
  switch (map) {
    case PresentationMap::Rho:
    case PresentationMap::Phi:
    case PresentationMap::PhiStar:
      return MonomialOrder::weighted("KernelPhi", {KindWeights{1, m + 1, 1}, KindWeights{0, 0, 1}}, TieBreak::RevLex);
    case PresentationMap::Psi:
    case PresentationMap::PsiStar:
      return MonomialOrder::weighted("KernelPsi", {KindWeights{1, m, 1}, KindWeights{1, 0, 0}}, TieBreak::RevLex);
  }
  throw Error(ErrorCode::Internal, "unknown presentation");
}

IdealBasis kernel_of_map(PresentationMap map, const SimplicialComplex& delta, const OracleOptions& opts) {
  const int m = delta.m();
  const PresentationMap subst = map == PresentationMap::Rho ? PresentationMap::Phi : map;
  auto image = presentation_substitution(subst, m);
  std::vector<Polynomial> gens;
  for (const auto& a : delta.facets()) {
    Variable T = Variable::T(a);
    gens.push_back(Polynomial::variable(T) - *image(T));
  }
  MonomialOrder order = kernel_order(map, m);
  std::optional<long> budget = opts.degree_budget ? opts.degree_budget : std::optional<long>(default_degree_budget(m));
  IdealBasis full = groebner_with_budget(gens, order, opts, budget);

  IdealBasis out;
  out.order = order;
  out.truncated = full.truncated;
  out.is_groebner = full.is_groebner;
  out.degree_reached = full.degree_reached;
  const bool eliminate_x = subst == PresentationMap::Psi || subst == PresentationMap::PsiStar;
  for (auto& g : full.generators) {
    if (has_kind(g, VarKind::Tdeg)) continue;
    if (eliminate_x && has_kind(g, VarKind::X)) continue;
    if (map == PresentationMap::Rho && !t_linear(g)) continue;
    out.generators.push_back(std::move(g));
  }
  return out;
}

EqualityReport ideal_equal(const std::vector<Polynomial>& A, const std::vector<Polynomial>& B,
                           const MonomialOrder& order, const OracleOptions& opts) {
  EqualityReport rep;
  auto vars = collect_variables({&A, &B});
  if (vars.empty()) {
    rep.equal = is_constant_nonzero(A) == is_constant_nonzero(B);
    return rep;
  }
  engine::Ring R(vars, order);
  auto max_degree = [&R](const std::vector<Polynomial>& ps) {
    long d = 0;
    for (const auto& p : ps) d = std::max(d, engine_degree(R, p));
    return d;
  };
  // Contains(X, Y): every generator of Y lies in ideal(X).
  auto contains = [&](const std::vector<Polynomial>& X, const std::vector<Polynomial>& Y, int side) {
    long need = max_degree(Y);
    std::optional<long> budget = need;
    bool short_budget = opts.degree_budget && *opts.degree_budget < need;
    if (short_budget) {
      if (opts.strict) throw Error(ErrorCode::BudgetExceeded, "ideal equality needs degree " + std::to_string(need));
      budget = opts.degree_budget;
      rep.truncated = true;
    }
    // Stopping at `need` is exact for membership of Y, so it never counts as a budget hit.
    OracleOptions capped = opts;
    capped.strict = false;
    IdealBasis gb = groebner_with_budget(X, order, capped, budget);
    engine::Ring RX(vars, order);
    for (const auto& y : Y) {
      if (y.is_zero()) continue;
      Reduction r = reduce_in_ring(RX, y, gb.generators);
      if (!r.remainder.is_zero()) {
        rep.witness = y;
        rep.side = side;
        rep.witness_steps = r.steps;
        return false;
      }
    }
    return true;
  };
  // Side 0: a generator of A outside ideal(B).
  rep.equal = contains(B, A, 0) && contains(A, B, 1);
  return rep;
}

std::vector<Monomial> standard_monomials(const std::vector<Variable>& vars, const std::vector<Monomial>& leading,
                                         int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<std::uint32_t> e(vars.size(), 0);
  auto emit = [&]() {
    std::vector<VarPower> vp;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (e[i]) vp.push_back({vars[i], e[i]});
    }
    Monomial mono = Monomial::from_powers(std::move(vp));
    for (const auto& l : leading) {
      if (l.divides(mono)) return;
    }
    out.push_back(std::move(mono));
  };
  // Compositions of `degree` into vars.size() parts, lex descending.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 >= vars.size()) {
      if (vars.empty()) {
        if (left == 0) emit();
        return;
      }
      e[i] = static_cast<std::uint32_t>(left);
      emit();
      e[i] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<std::uint32_t>(k);
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

const char* to_string(ReesType t) {
  switch (t) {
    case ReesType::LinearType: return "LinearType";
    case ReesType::FiberType: return "FiberType";
    case ReesType::Neither: return "Neither";
  }
  return "?";
}

Classification classify_type(const SimplicialComplex& delta, const OracleOptions& opts) {
  Classification cl;
  const int m = delta.m();
  cl.rees = kernel_of_map(PresentationMap::Phi, delta, opts);
  cl.fiber = kernel_of_map(PresentationMap::Psi, delta, opts);
  cl.symmetric.order = cl.rees.order;
  for (const auto& g : cl.rees.generators) {
    if (t_linear(g)) cl.symmetric.generators.push_back(g);
  }
  cl.symmetric.is_groebner = cl.rees.is_groebner;
  cl.truncated = cl.rees.truncated || cl.fiber.truncated;

  const MonomialOrder order = kernel_order(PresentationMap::Phi, m);
  std::vector<Polynomial> L = cl.symmetric.generators;
  std::vector<Polynomial> LK = L;
  LK.insert(LK.end(), cl.fiber.generators.begin(), cl.fiber.generators.end());
  auto vars = collect_variables({&cl.rees.generators, &LK});
  if (vars.empty()) {
    cl.type = ReesType::LinearType;
    return cl;
  }
  engine::Ring R(vars, order);
  long need = 0;
  for (const auto& g : cl.rees.generators) need = std::max(need, engine_degree(R, g));

  OracleOptions capped = opts;
  capped.strict = false;
  auto outside = [&](const std::vector<Polynomial>& gens) {
    IdealBasis gb = groebner_with_budget(gens, order, capped, need);
    std::vector<TypeCertificate> certs;
    for (const auto& g : cl.rees.generators) {
      Reduction r = reduce_in_ring(R, g, gb.generators);
      if (!r.remainder.is_zero()) certs.push_back({g, r.steps, r.remainder});
    }
    return certs;
  };

  auto not_in_L = outside(L);
  if (not_in_L.empty()) {
    cl.type = ReesType::LinearType;
    return cl;
  }
  auto not_in_LK = outside(LK);
  if (not_in_LK.empty()) {
    cl.type = ReesType::FiberType;
    cl.certificates = std::move(not_in_L);
  } else {
    cl.type = ReesType::Neither;
    cl.certificates = std::move(not_in_LK);
  }
  return cl;
}

GeneratorSet gens_symmetric(const SimplicialComplex& delta, const OracleOptions& opts) {
  IdealBasis L = kernel_of_map(PresentationMap::Rho, delta, opts);
  GeneratorSet out;
  out.target = Target::SymmetricLifted;
  for (auto& g : L.generators) {
    GeneratorItem item;
    item.family = Family::LinearSyzygy;
    item.poly = std::move(g);
    out.items.push_back(std::move(item));
  }
  return out;
}

}  // namespace rees
