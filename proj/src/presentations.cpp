#include "rees/presentations.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rees/dfi.hpp"

namespace rees {

PluckerRelation plucker_compare(const Facet& a, const Facet& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::BadIndex, "Plucker comparison needs equal sizes");
  bool le = true;
  bool ge = true;
  for (int i = 0; i < a.size(); ++i) {
    le = le && a[i] <= b[i];
    ge = ge && a[i] >= b[i];
  }
  if (le && ge) return PluckerRelation::EQ;
  if (le) return PluckerRelation::LE;
  if (ge) return PluckerRelation::GE;
  return PluckerRelation::Incomparable;
}

Facet plucker_meet(const Facet& a, const Facet& b) {
  std::vector<int> v;
  for (int i = 0; i < a.size(); ++i) v.push_back(std::min(a[i], b[i]));
  return Facet(v);
}

Facet plucker_join(const Facet& a, const Facet& b) {
  std::vector<int> v;
  for (int i = 0; i < a.size(); ++i) v.push_back(std::max(a[i], b[i]));
  return Facet(v);
}

const char* to_string(PresentationMap map) {
  switch (map) {
    case PresentationMap::Rho: return "rho";
    case PresentationMap::Phi: return "phi";
    case PresentationMap::Psi: return "psi";
    case PresentationMap::PhiStar: return "phi*";
    case PresentationMap::PsiStar: return "psi*";
  }
  return "?";
}

VariableMap presentation_substitution(PresentationMap map, int m) {
  if (map == PresentationMap::Rho) throw Error(ErrorCode::Internal, "rho is not a polynomial substitution");
  return [map, m](const Variable& v) -> std::optional<Polynomial> {
    if (v.kind() != VarKind::T) return Polynomial::variable(v);
    const Facet& a = v.facet();
    if (a.size() != m) return std::nullopt;
    Polynomial t = Polynomial::variable(Variable::t());
    switch (map) {
      case PresentationMap::Phi: return minor(m, a) * t;
      case PresentationMap::Psi: return minor(m, a);
      case PresentationMap::PhiStar: return Polynomial::term(initial_monomial(a)) * t;
      case PresentationMap::PsiStar: return Polynomial::term(initial_monomial(a));
      case PresentationMap::Rho: break;
    }
    return std::nullopt;
  };
}

Polynomial apply_map(PresentationMap map, const Polynomial& p, int m) {
  return evaluate(p, presentation_substitution(map, m));
}

Monomial phi_star(const Monomial& mono) {
  std::vector<VarPower> vp;
  std::uint32_t tdeg = 0;
  for (const auto& p : mono.powers()) {
    if (p.var.kind() == VarKind::T) {
      const Facet& a = p.var.facet();
      for (int i = 0; i < a.size(); ++i) vp.push_back({Variable::x(i + 1, a[i]), p.exp});
      tdeg += p.exp;
    } else if (p.var.kind() == VarKind::Tdeg) {
      tdeg += p.exp;
    } else {
      vp.push_back(p);
    }
  }
  if (tdeg > 0) vp.push_back({Variable::t(), tdeg});
  return Monomial::from_powers(std::move(vp));
}

const char* to_string(Target t) {
  switch (t) {
    case Target::ReesInitial: return "rees-initial";
    case Target::FiberInitial: return "fiber-initial";
    case Target::ReesLifted: return "rees-lifted";
    case Target::FiberLifted: return "fiber-lifted";
    case Target::SymmetricLifted: return "symmetric";
  }
  return "?";
}

PresentationMap kernel_map(Target t) {
  switch (t) {
    case Target::ReesInitial: return PresentationMap::PhiStar;
    case Target::FiberInitial: return PresentationMap::PsiStar;
    case Target::ReesLifted: return PresentationMap::Phi;
    case Target::FiberLifted: return PresentationMap::Psi;
    case Target::SymmetricLifted: return PresentationMap::Phi;
  }
  return PresentationMap::Phi;
}

std::size_t GeneratorSet::count(Family f) const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [f](const auto& it) { return it.family == f; }));
}

std::vector<Polynomial> GeneratorSet::polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& it : items) out.push_back(it.poly);
  return out;
}

std::vector<MarkedPolynomial> GeneratorSet::marked() const {
  std::vector<MarkedPolynomial> out;
  for (const auto& it : items) {
    if (!it.marked) throw Error(ErrorCode::Internal, "generator without marked term");
    out.push_back({it.poly, *it.marked, it.family});
  }
  return out;
}

namespace {

Polynomial T(const Facet& a) { return Polynomial::variable(Variable::T(a)); }
Polynomial x(int i, int j) { return Polynomial::variable(Variable::x(i, j)); }

void require_closed(const CliqueIndex& ctx) {
  if (!ctx.closed()) {
    const auto& w = *ctx.closedness().witness;
    throw Error(ErrorCode::NotClosed, "facets {" + w.F.to_string() + "} and {" + w.G.to_string() +
                                          "} agree in coordinate " + std::to_string(w.coordinate));
  }
}

void assert_kernel(const GeneratorSet& gs, int m) {
  auto sub = presentation_substitution(kernel_map(gs.target), m);
  for (const auto& it : gs.items) {
    if (!evaluate(it.poly, sub).is_zero()) {
      throw Error(ErrorCode::Internal, std::string(to_string(it.family)) + " generator outside the kernel: " +
                                           to_string(it.poly, MonomialOrder::lex_x_prime()));
    }
  }
}

// (m+1)-subsets of maximal cliques, deduplicated.
std::vector<Facet> clique_m_faces(const CliqueIndex& ctx) {
  std::set<Facet> faces;
  for (const auto& c : ctx.decomposition().cliques) {
    for (const auto& f : subsets_of_size(c, ctx.m() + 1)) faces.insert(f);
  }
  return {faces.begin(), faces.end()};
}

std::vector<std::pair<Facet, Facet>> koszul_pairs(const CliqueIndex& ctx) {
  std::vector<std::pair<Facet, Facet>> out;
  const auto& fs = ctx.complex().facets();
  for (const auto& a : fs) {
    for (const auto& b : fs) {
      if (!ctx.share_clique(a, b) && ctx.earliest_clique(a) < ctx.earliest_clique(b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::pair<Facet, Facet>> plucker_pairs(const CliqueIndex& ctx) {
  std::vector<std::pair<Facet, Facet>> out;
  const auto& fs = ctx.complex().facets();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      if (plucker_compare(fs[i], fs[j]) == PluckerRelation::Incomparable && ctx.share_clique(fs[i], fs[j])) {
        out.emplace_back(fs[i], fs[j]);
      }
    }
  }
  return out;
}

Polynomial xa(const Facet& a) { return Polynomial::term(initial_monomial(a)); }

void add_plucker_initial(const CliqueIndex& ctx, GeneratorSet& gs) {
  for (const auto& [a, b] : plucker_pairs(ctx)) {
    Polynomial p = T(a) * T(b) - T(plucker_meet(a, b)) * T(plucker_join(a, b));
    Monomial marked = Monomial::of(Variable::T(a)) * Monomial::of(Variable::T(b));
    gs.items.push_back({Family::Plucker, p, marked, {a, b}, 0});
  }
}

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

// Sign of the permutation sorting v, or 0 when v has a repeat.
int sort_sign(std::vector<int>& v) {
  int inv = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      inv += v[i] > v[j];
    }
  }
  std::sort(v.begin(), v.end());
  return parity_sign(inv);
}

}  // namespace

GeneratorSet gens_rees_initial(const CliqueIndex& ctx) {
  require_closed(ctx);
  const int m = ctx.m();
  GeneratorSet gs{Target::ReesInitial, {}};
  for (const auto& [a, b] : koszul_pairs(ctx)) {
    Polynomial p = xa(a) * T(b) - xa(b) * T(a);
    gs.items.push_back({Family::Koszul, p, initial_monomial(a) * Monomial::of(Variable::T(b)), {a, b}, 0});
  }
  for (const auto& c : clique_m_faces(ctx)) {
    for (int i = 1; i <= m; ++i) {
      Facet without_i = c.without_position(i - 1);
      Facet without_next = c.without_position(i);
      Polynomial p = x(i, c[i - 1]) * T(without_i) - x(i, c[i]) * T(without_next);
      Monomial marked = Monomial::of(Variable::x(i, c[i - 1])) * Monomial::of(Variable::T(without_i));
      gs.items.push_back({Family::LinearSyzygy, p, marked, {c}, i});
    }
  }
  add_plucker_initial(ctx, gs);
  assert_kernel(gs, m);
  return gs;
}

GeneratorSet gens_fiber_initial(const CliqueIndex& ctx) {
  require_closed(ctx);
  GeneratorSet gs{Target::FiberInitial, {}};
  add_plucker_initial(ctx, gs);
  assert_kernel(gs, ctx.m());
  return gs;
}

std::vector<Polynomial> plucker_quadrics(const CliqueIndex& ctx) {
  const int m = ctx.m();
  std::uint64_t used = 0;
  for (const auto& f : ctx.complex().facets()) used |= vertex_mask(f);
  std::vector<int> verts = mask_vertices(used);
  std::vector<Polynomial> out;
  std::set<std::vector<std::pair<std::string, std::string>>> seen;
  for (int k = 1; k <= m - 1; ++k) {
    auto cs = subsets_of_size(verts, k);
    auto ds = subsets_of_size(verts, m - k - 1);
    if (m - k - 1 == 0) ds = {Facet()};
    auto as = subsets_of_size(verts, m + 1);
    auto firsts = subsets_of_size([&] {
      std::vector<int> pos(static_cast<std::size_t>(m + 1));
      std::iota(pos.begin(), pos.end(), 1);
      return pos;
    }(), m - k);
    for (const auto& c : cs) {
      for (const auto& d : ds) {
        for (const auto& a : as) {
          std::vector<Polynomial::Term> terms;
          bool admissible = true;
          for (const auto& first : firsts) {
            std::vector<int> perm;
            std::vector<int> second;
            for (int p = 0; p < first.size(); ++p) perm.push_back(first[p]);
            for (int p = 1; p <= m + 1; ++p) {
              if (!first.contains(p)) second.push_back(p);
            }
            perm.insert(perm.end(), second.begin(), second.end());
            std::vector<int> probe = perm;
            int sg = sort_sign(probe);
            std::vector<int> s1 = c.to_vector();
            for (int p = 0; p < first.size(); ++p) s1.push_back(a[first[p] - 1]);
            std::vector<int> s2;
            for (int p : second) s2.push_back(a[p - 1]);
            for (int v : d.to_vector()) s2.push_back(v);
            int g1 = sort_sign(s1);
            int g2 = sort_sign(s2);
            if (g1 == 0 || g2 == 0) continue;
            Facet f1(s1);
            Facet f2(s2);
            if (!ctx.complex().contains(f1) || !ctx.complex().contains(f2)) {
              admissible = false;
              break;
            }
            terms.emplace_back(Monomial::of(Variable::T(f1)) * Monomial::of(Variable::T(f2)), Rational(sg * g1 * g2));
          }
          if (!admissible) continue;
          Polynomial q = Polynomial::from_terms(std::move(terms));
          if (q.is_zero()) continue;
          if (q.terms().front().second < 0) q = -q;
          std::vector<std::pair<std::string, std::string>> key;
          for (const auto& [mono, coef] : q.terms()) key.emplace_back(mono.to_string(), to_string(coef));
          if (seen.insert(key).second) out.push_back(std::move(q));
        }
      }
    }
  }
  return out;
}

GeneratorSet gens_fiber_lifted(const CliqueIndex& ctx) {
  require_closed(ctx);
  GeneratorSet gs{Target::FiberLifted, {}};
  for (auto& q : plucker_quadrics(ctx)) gs.items.push_back({Family::Plucker, std::move(q), std::nullopt, {}, 0});
  assert_kernel(gs, ctx.m());
  return gs;
}

GeneratorSet gens_rees_lifted(const CliqueIndex& ctx) {
  GeneratorSet initial = gens_rees_initial(ctx);
  GeneratorSet gs{Target::ReesLifted, {}};
  for (const auto& it : initial.items) {
    if (it.family == Family::Plucker) continue;
    gs.items.push_back({it.family, sagbi_lift(it, ctx), it.marked, it.facets, it.row});
  }
  for (auto& q : plucker_quadrics(ctx)) gs.items.push_back({Family::Plucker, std::move(q), std::nullopt, {}, 0});
  assert_kernel(gs, ctx.m());
  return gs;
}

bool lift_dominated(const Polynomial& lift, const Polynomial& initial, const Monomial& marked) {
  const auto order = MonomialOrder::lex_x_prime();
  Monomial top = phi_star(marked);
  for (const auto& [mono, coef] : lift.terms()) {
    Rational c0 = initial.coefficient(mono);
    if (c0 != 0) {
      if (c0 != coef) return false;
      continue;
    }
    if (!order.greater(top, phi_star(mono))) return false;
  }
  for (const auto& [mono, coef] : initial.terms()) {
    if (lift.coefficient(mono) != coef) return false;
  }
  return true;
}

Polynomial sagbi_lift(const GeneratorItem& item, const CliqueIndex& ctx, const std::vector<Polynomial>* quadrics) {
  const int m = ctx.m();
  switch (item.family) {
    case Family::Koszul: {
      const Facet& a = item.facets.at(0);
      const Facet& b = item.facets.at(1);
      return minor(m, a) * T(b) - minor(m, b) * T(a);
    }
    case Family::LinearSyzygy: {
      const Facet& c = item.facets.at(0);
      const int i = item.row;
      Polynomial p;
      for (int j = 1; j <= m + 1; ++j) {
        p += x(i, c[j - 1]) * T(c.without_position(j - 1)) * Polynomial(parity_sign(i + j));
      }
      return p;
    }
    case Family::Plucker: break;
  }
  std::vector<Polynomial> local;
  if (quadrics == nullptr) {
    local = plucker_quadrics(ctx);
    quadrics = &local;
  }
  const Facet& a = item.facets.at(0);
  const Facet& b = item.facets.at(1);
  Monomial ab = Monomial::of(Variable::T(a)) * Monomial::of(Variable::T(b));
  Monomial cd = Monomial::of(Variable::T(plucker_meet(a, b))) * Monomial::of(Variable::T(plucker_join(a, b)));
  Polynomial initial = Polynomial::term(ab) - Polynomial::term(cd);
  for (const auto& q : *quadrics) {
    Rational cab = q.coefficient(ab);
    if (cab == 0 || q.coefficient(cd) != -cab) continue;
    Polynomial lift = q.scaled(Rational(1 / cab));
    if (lift_dominated(lift, initial, ab)) return lift;
  }
  throw Error(ErrorCode::NotLiftable, "no dominated quadric through T_{" + a.to_string() + "} T_{" + b.to_string() + "}");
}

}  // namespace rees
