#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "rees/error.hpp"

namespace rees {

using Rational = mpq_class;

inline constexpr int kMaxFacetSize = 8;

// Strictly increasing tuple of 1-based column indices.
class Facet {
 public:
  Facet() = default;
  Facet(std::initializer_list<int> cols);
  explicit Facet(const std::vector<int>& cols);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  int front() const { return v_[0]; }
  int back() const { return v_[static_cast<std::size_t>(size_) - 1]; }
  bool contains(int col) const;
  std::vector<int> to_vector() const;
  // Copy with the entry at 0-based position `pos` removed.
  Facet without_position(int pos) const;
  // "145" when every index is a single digit, else "1,10,11".
  std::string to_string() const;

  auto operator<=>(const Facet&) const = default;
  bool operator==(const Facet&) const = default;

 private:
  std::array<std::uint8_t, kMaxFacetSize> v_{};
  std::uint8_t size_ = 0;
};

enum class VarKind : std::uint8_t { X = 0, T = 1, Tdeg = 2 };

// x_{ij}, T_a or t. The defaulted comparison is the canonical order:
// x row-major, then T by tuple lex, then t.
class Variable {
 public:
  Variable() = default;
  static Variable x(int row, int col);
  static Variable T(const Facet& a);
  static Variable t();

  VarKind kind() const { return kind_; }
  int row() const { return row_; }
  int col() const { return col_; }
  const Facet& facet() const { return facet_; }
  std::string to_string() const;

  auto operator<=>(const Variable&) const = default;
  bool operator==(const Variable&) const = default;

 private:
  VarKind kind_ = VarKind::X;
  std::uint8_t row_ = 0;
  std::uint8_t col_ = 0;
  Facet facet_;
};

struct VarPower {
  Variable var;
  std::uint32_t exp = 0;
  auto operator<=>(const VarPower&) const = default;
  bool operator==(const VarPower&) const = default;
};

class Monomial {
 public:
  using Storage = boost::container::small_vector<VarPower, 6>;

  Monomial() = default;
  static Monomial of(const Variable& v, std::uint32_t exp = 1);
  // Sorts, merges repeated variables and drops zero exponents.
  static Monomial from_powers(std::vector<VarPower> powers);

  const Storage& powers() const { return p_; }
  bool is_one() const { return p_.empty(); }
  std::uint32_t exponent(const Variable& v) const;
  std::uint32_t degree() const;
  std::uint32_t degree(VarKind kind) const;
  bool is_squarefree() const;
  Monomial restrict(VarKind kind) const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  std::optional<Monomial> try_divide(const Monomial& d) const;
  Monomial operator/(const Monomial& d) const;  // throws unless d divides *this
  Monomial lcm(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;

  std::string to_string() const;
  std::size_t hash() const;

  bool operator==(const Monomial& o) const { return p_ == o.p_; }
  bool operator<(const Monomial& o) const { return p_ < o.p_; }

 private:
  Storage p_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Finite map Monomial -> nonzero rational, stored sorted by the canonical
// monomial comparison.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial term(const Monomial& m, const Rational& c = 1);
  static Polynomial variable(const Variable& v);
  // Builds from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  Rational coefficient(const Monomial& m) const;
  std::uint32_t degree() const;
  std::uint32_t degree(VarKind kind) const;
  std::vector<Variable> variables() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Rational& c, const Monomial& m = Monomial()) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return t_ == o.t_; }

 private:
  std::vector<Term> t_;
};

enum class TieBreak { Lex, RevLex };

struct KindWeights {
  int x = 0;
  int T = 0;
  int t = 0;
  int of(VarKind k) const { return k == VarKind::X ? x : (k == VarKind::T ? T : t); }
  bool operator==(const KindWeights&) const = default;
};

// Weight vectors (constant on each variable kind) refined by a lex or
// reverse-lex tie-break over the canonical variable order.
class MonomialOrder {
 public:
  MonomialOrder(std::string name, std::vector<KindWeights> weights, TieBreak tie);

  static MonomialOrder lex_x();
  static MonomialOrder lex_x_prime();
  static MonomialOrder block_elimination(const std::vector<std::vector<VarKind>>& blocks);
  static MonomialOrder weighted(std::string name, std::vector<KindWeights> weights, TieBreak tie);

  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  long weight(std::size_t k, const Monomial& m) const;

  const std::string& name() const { return name_; }
  const std::vector<KindWeights>& weights() const { return weights_; }
  TieBreak tie_break() const { return tie_; }

 private:
  std::string name_;
  std::vector<KindWeights> weights_;
  TieBreak tie_;
};

Polynomial::Term leading_term(const Polynomial& p, const MonomialOrder& order);
Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order);
std::vector<Polynomial::Term> sorted_terms(const Polynomial& p, const MonomialOrder& order);

// Variable images; returning nullopt means "unbound".
using VariableMap = std::function<std::optional<Polynomial>(const Variable&)>;
Polynomial evaluate(const Polynomial& p, const VariableMap& map);
Polynomial evaluate(const Monomial& m, const VariableMap& map);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);
// Remainder of multivariate division (full reduction, first divisor wins).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors,
                  const MonomialOrder& order);

std::string to_string(const Polynomial& p, const MonomialOrder& order);
std::string to_string(const Rational& c);

}  // namespace rees
