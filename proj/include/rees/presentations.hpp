#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rees/complex.hpp"
#include "rees/polyring.hpp"
#include "rees/sorting.hpp"

namespace rees {

enum class PluckerRelation { LE, GE, EQ, Incomparable };
PluckerRelation plucker_compare(const Facet& a, const Facet& b);
Facet plucker_meet(const Facet& a, const Facet& b);
Facet plucker_join(const Facet& a, const Facet& b);

// rho: symmetric algebra, phi: T_a -> [a]t, psi: T_a -> [a],
// phi*: T_a -> x_a t, psi*: T_a -> x_a.
enum class PresentationMap { Rho, Phi, Psi, PhiStar, PsiStar };
const char* to_string(PresentationMap map);

// Substitution for phi, psi, phi*, psi* (x-variables map to themselves).
VariableMap presentation_substitution(PresentationMap map, int m);
Polynomial apply_map(PresentationMap map, const Polynomial& p, int m);
// phi* on a monomial of R[T].
Monomial phi_star(const Monomial& mono);

enum class Target { ReesInitial, FiberInitial, ReesLifted, FiberLifted, SymmetricLifted };
const char* to_string(Target t);
// Map whose kernel the target's items belong to.
PresentationMap kernel_map(Target t);

struct GeneratorItem {
  Family family = Family::Plucker;
  Polynomial poly;
  std::optional<Monomial> marked;
  // Koszul: {a, b} with a in the earlier clique. LinearSyzygy: {c}.
  // Plucker: {a, b} incomparable, lex-ordered.
  std::vector<Facet> facets;
  int row = 0;  // LinearSyzygy row i
};

struct GeneratorSet {
  Target target = Target::ReesInitial;
  std::vector<GeneratorItem> items;

  std::size_t count(Family f) const;
  std::vector<Polynomial> polynomials() const;
  std::vector<MarkedPolynomial> marked() const;
};

GeneratorSet gens_rees_initial(const CliqueIndex& ctx);
GeneratorSet gens_fiber_initial(const CliqueIndex& ctx);
GeneratorSet gens_rees_lifted(const CliqueIndex& ctx);
GeneratorSet gens_fiber_lifted(const CliqueIndex& ctx);

// Shuffle-sum Grassmann-Plucker quadrics whose terms are all facets,
// deduplicated up to sign with the canonical-first term positive.
std::vector<Polynomial> plucker_quadrics(const CliqueIndex& ctx);

// Lift of an initial generator to the kernel of phi. `quadrics` may carry a
// precomputed plucker_quadrics(ctx).
Polynomial sagbi_lift(const GeneratorItem& item, const CliqueIndex& ctx,
                      const std::vector<Polynomial>* quadrics = nullptr);

// The lift restricts to the initial binomial on the binomial's support, and
// every other term has phi*-image strictly below phi*(marked) under LexXPrime.
bool lift_dominated(const Polynomial& lift, const Polynomial& initial, const Monomial& marked);

}  // namespace rees
