#include "rees/dfi.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

namespace rees {

Polynomial leibniz_determinant(int m, const std::vector<int>& columns) {
  if (static_cast<int>(columns.size()) != m) throw Error(ErrorCode::BadIndex, "need exactly m columns");
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Polynomial::Term> terms;
  do {
    int inversions = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    }
    std::vector<VarPower> vp;
    for (int i = 0; i < m; ++i) vp.push_back({Variable::x(i + 1, columns[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]), 1});
    terms.emplace_back(Monomial::from_powers(std::move(vp)), Rational(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial::from_terms(std::move(terms));
}

const Polynomial& minor(int m, const Facet& a) {
  static std::shared_mutex mutex;
  static std::map<std::pair<int, Facet>, Polynomial> memo;
  if (a.size() != m) throw Error(ErrorCode::BadIndex, "minor needs m columns");
  auto key = std::make_pair(m, a);
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Polynomial p = leibniz_determinant(m, a.to_vector());
  std::unique_lock lock(mutex);
  return memo.emplace(key, std::move(p)).first->second;
}

Monomial initial_monomial(const Facet& a) {
  std::vector<VarPower> vp;
  for (int i = 0; i < a.size(); ++i) vp.push_back({Variable::x(i + 1, a[i]), 1});
  return Monomial::from_powers(std::move(vp));
}

DeterminantalFacetIdeal build_dfi(const SimplicialComplex& delta) {
  DeterminantalFacetIdeal J{delta, {}};
  for (const auto& f : delta.facets()) J.generators.push_back(minor(delta.m(), f));
  return J;
}

SPairReport spair_report(const DeterminantalFacetIdeal& J) {
  const auto order = MonomialOrder::lex_x();
  const auto& fs = J.delta.facets();
  SPairReport report;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      Monomial li = initial_monomial(fs[i]);
      Monomial lj = initial_monomial(fs[j]);
      if (li.gcd(lj).is_one()) continue;  // coprime leading terms reduce to zero
      Polynomial r = reduce(s_polynomial(J.generators[i], J.generators[j], order), J.generators, order);
      if (!r.is_zero()) {
        report.all_zero = false;
        report.failing = std::make_pair(fs[i], fs[j]);
        report.remainder = r;
        return report;
      }
    }
  }
  return report;
}

bool closed_gb_check(const DeterminantalFacetIdeal& J) {
  auto closed = is_closed(J.delta);
  if (!closed.closed) throw Error(ErrorCode::NotClosed, "minors of a non-closed complex");
  return spair_report(J).all_zero;
}

}  // namespace rees
