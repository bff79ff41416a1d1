#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rees/complex.hpp"
#include "rees/polyring.hpp"

namespace rees {

struct InsertResult {
  std::vector<int> tuple;
  int position = 0;  // 1-based slot of the inserted vertex
};

InsertResult insert_index(const Facet& a, int j);

struct SortingDistance {
  int r = 0;
  std::vector<int> s;  // inversions per row
  bool is_sorted() const;
  std::string to_string() const;  // "(2;0,1,1)"
};

// Every (a u j) counts, as for a single clique.
SortingDistance sorting_distance(const Monomial& mono, int m);
// Only pairs with (a u j) a clique face count.
SortingDistance sorting_distance(const Monomial& mono, const CliqueIndex& ctx);

enum class Family { Koszul, LinearSyzygy, Plucker };
const char* to_string(Family f);

struct MarkedPolynomial {
  Polynomial body;
  Monomial marked;
  Family family = Family::Plucker;
};

enum class CliqueCondition { None, I, II, III, IV };
const char* to_string(CliqueCondition c);

struct CliqueSortedResult {
  bool sorted = true;
  CliqueCondition violated = CliqueCondition::None;
  std::string detail;
};

// (i) is read per maximal clique: T-factors lying in a common clique must be
// pairwise comparable.
CliqueSortedResult is_clique_sorted(const Monomial& mono, const CliqueIndex& ctx);

// Lexicographic termination measure of the rewriter.
struct RewriteMeasure {
  long clique_mass = 0;     // sum over T-factors of (earliest clique index + 1)
  long column_deficit = 0;  // sum over x-factors of (n - column)
  long inversions = 0;      // total inversions of the lex-sorted T-factors
  auto operator<=>(const RewriteMeasure&) const = default;
  std::string to_string() const;
};

RewriteMeasure rewrite_measure(const Monomial& mono, const CliqueIndex& ctx);

struct RewriteStep {
  Family family = Family::Plucker;
  std::size_t rule = 0;
  Monomial consumed;
  Monomial produced;
  RewriteMeasure before;
  RewriteMeasure after;
};

bool reduction_measure_decreases(const RewriteStep& step);

enum class Strategy {
  Canonical,   // first applicable rule in list order
  ProofOrder,  // Plucker, then linear syzygies (smallest facet, smallest x), then Koszul
  Random,
};

struct RewriteOptions {
  Strategy strategy = Strategy::ProofOrder;
  std::uint64_t seed = 0;
  std::optional<std::size_t> step_budget;  // default 10 * degree^2
  bool record_trace = false;
};

struct NormalFormResult {
  Monomial result;
  Rational coefficient = 1;
  std::size_t num_steps = 0;
  std::vector<RewriteStep> steps;  // filled when record_trace is set
};

// Marked-binomial rewriting. Termination is measured against `ctx` when given.
class Rewriter {
 public:
  Rewriter(std::vector<MarkedPolynomial> rules, const CliqueIndex* ctx = nullptr);

  NormalFormResult normal_form(const Monomial& mono, const RewriteOptions& opts = {}) const;
  Polynomial normal_form(const Polynomial& p, const RewriteOptions& opts = {}) const;
  std::vector<std::size_t> applicable(const Monomial& mono) const;
  bool is_normal(const Monomial& mono) const { return applicable(mono).empty(); }
  const std::vector<MarkedPolynomial>& rules() const { return rules_; }

 private:
  struct Rule {
    Monomial lhs;
    Monomial rhs;
    Rational factor;  // lhs == factor * rhs modulo the ideal
  };
  std::size_t choose(const Monomial& mono, const std::vector<std::size_t>& options, const RewriteOptions& opts,
                     std::uint64_t& rng_state) const;

  std::vector<MarkedPolynomial> rules_;
  std::vector<Rule> compiled_;
  std::vector<std::pair<Variable, std::vector<std::size_t>>> index_;  // sorted by variable
  std::vector<std::size_t> unindexed_;
  const CliqueIndex* ctx_;
};

struct SortedFactorization {
  Monomial u;
  std::vector<Facet> facets;  // a^1 <= ... <= a^d
};

// Unique sorted preimage of a monomial in the image of phi*, single clique.
SortedFactorization sorted_factorization(const Monomial& mono, int m);

struct CliqueSortedFactorization {
  Monomial u;
  std::vector<std::vector<Facet>> per_clique;
  Monomial as_monomial() const;
};

CliqueSortedFactorization clique_sorted_factorization(const Monomial& mono, const CliqueIndex& ctx);

// "[[1,2,4],[3,4,5]]": one row per facet.
std::string tableau_string(const std::vector<Facet>& facets);

}  // namespace rees
