#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rees/complex.hpp"
#include "rees/polyring.hpp"
#include "rees/presentations.hpp"

namespace rees {

enum class FieldKind { Rational, Fp32003 };

struct OracleOptions {
  // Sugar-degree cap; nullopt uses default_degree_budget(m).
  std::optional<long> degree_budget;
  bool strict = false;  // budget hit throws BudgetExceeded
  FieldKind field = FieldKind::Rational;
  bool parallel = true;
  // Appended to when the modular pre-pass disagrees with the rational run.
  std::vector<std::string>* warnings = nullptr;
};

// Default budget in the grading of the kernel orders (x = 1, T = m + 1).
long default_degree_budget(int m);

struct IdealBasis {
  std::vector<Polynomial> generators;
  MonomialOrder order = MonomialOrder::lex_x();
  bool is_groebner = false;  // reduced GB from a complete pass
  bool truncated = false;
  long degree_reached = 0;
};

// Reduced monic Groebner basis sorted by leading monomial, ascending.
IdealBasis groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const OracleOptions& opts = {});

struct Reduction {
  Polynomial remainder;
  std::size_t steps = 0;
};
Reduction normal_form(const Polynomial& f, const IdealBasis& gb);
bool ideal_member(const Polynomial& f, const IdealBasis& gb);

// Weighted reverse-lex order eliminating the image-side variables of `map`.
MonomialOrder kernel_order(PresentationMap map, int m);

// Generators of ker(map) for the presentation of Delta, as the part of the
// elimination basis free of image-side variables. Rho gives the ideal of the
// T-linear elements of ker(phi).
IdealBasis kernel_of_map(PresentationMap map, const SimplicialComplex& delta, const OracleOptions& opts = {});

struct EqualityReport {
  bool equal = false;
  bool truncated = false;
  // A generator of one side outside the other ideal; side 0 means a
  // generator of A not in B.
  std::optional<Polynomial> witness;
  int side = -1;
  std::size_t witness_steps = 0;
};

EqualityReport ideal_equal(const std::vector<Polynomial>& A, const std::vector<Polynomial>& B,
                           const MonomialOrder& order, const OracleOptions& opts = {});

// All monomials in `vars` of total degree `degree` divisible by no element of `leading`.
std::vector<Monomial> standard_monomials(const std::vector<Variable>& vars, const std::vector<Monomial>& leading,
                                         int degree);

enum class ReesType { LinearType, FiberType, Neither };
const char* to_string(ReesType t);

struct TypeCertificate {
  Polynomial poly;
  std::size_t reduction_steps = 0;
  Polynomial remainder;
};

struct Classification {
  ReesType type = ReesType::Neither;
  bool truncated = false;
  // Generators of ker(phi) outside L (for FiberType) or outside L + K R[T] (for Neither).
  std::vector<TypeCertificate> certificates;
  IdealBasis rees;       // ker(phi)
  IdealBasis symmetric;  // L
  IdealBasis fiber;      // ker(psi)
};

Classification classify_type(const SimplicialComplex& delta, const OracleOptions& opts = {});

// T-linear generators of L: the T-degree-1 part of the reduced basis of ker(phi).
GeneratorSet gens_symmetric(const SimplicialComplex& delta, const OracleOptions& opts = {});

}  // namespace rees
