#include "rees/sorting.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

#include "rees/dfi.hpp"

namespace rees {

InsertResult insert_index(const Facet& a, int j) {
  if (a.contains(j)) throw Error(ErrorCode::DuplicateVertex, std::to_string(j) + " already in {" + a.to_string() + "}");
  InsertResult r;
  r.tuple = a.to_vector();
  auto it = std::upper_bound(r.tuple.begin(), r.tuple.end(), j);
  r.position = static_cast<int>(it - r.tuple.begin()) + 1;
  r.tuple.insert(it, j);
  return r;
}

bool SortingDistance::is_sorted() const {
  return r == 0 && std::all_of(s.begin(), s.end(), [](int v) { return v == 0; });
}

std::string SortingDistance::to_string() const {
  std::string out = "(" + std::to_string(r) + ";";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

namespace {

std::vector<Facet> t_factors(const Monomial& mono) {
  std::vector<Facet> out;
  for (const auto& vp : mono.powers()) {
    if (vp.var.kind() != VarKind::T) continue;
    for (std::uint32_t e = 0; e < vp.exp; ++e) out.push_back(vp.var.facet());
  }
  return out;  // canonical order of T variables is tuple lex
}

std::vector<int> inversion_counts(const std::vector<Facet>& ts, int m) {
  std::vector<int> s(static_cast<std::size_t>(m), 0);
  for (std::size_t p = 0; p < ts.size(); ++p) {
    for (std::size_t q = p + 1; q < ts.size(); ++q) {
      for (int j = 0; j < m && j < ts[p].size() && j < ts[q].size(); ++j) {
        if (ts[p][j] > ts[q][j]) ++s[static_cast<std::size_t>(j)];
      }
    }
  }
  return s;
}

template <class FacePred>
SortingDistance sorting_distance_impl(const Monomial& mono, int m, FacePred is_face) {
  SortingDistance sd;
  for (const auto& xv : mono.powers()) {
    if (xv.var.kind() != VarKind::X) continue;
    for (const auto& tv : mono.powers()) {
      if (tv.var.kind() != VarKind::T) continue;
      const Facet& a = tv.var.facet();
      int j = xv.var.col();
      if (a.contains(j)) continue;
      auto ins = insert_index(a, j);
      if (ins.position == xv.var.row() && is_face(ins.tuple)) ++sd.r;
    }
  }
  sd.s = inversion_counts(t_factors(mono), m);
  return sd;
}

std::uint64_t mask_of(const std::vector<int>& vs) {
  std::uint64_t mask = 0;
  for (int v : vs) mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

bool comparable(const Facet& a, const Facet& b) {
  bool le = true;
  bool ge = true;
  for (int i = 0; i < a.size(); ++i) {
    le = le && a[i] <= b[i];
    ge = ge && a[i] >= b[i];
  }
  return le || ge;
}

}  // namespace

SortingDistance sorting_distance(const Monomial& mono, int m) {
  return sorting_distance_impl(mono, m, [](const std::vector<int>&) { return true; });
}

SortingDistance sorting_distance(const Monomial& mono, const CliqueIndex& ctx) {
  return sorting_distance_impl(mono, ctx.m(), [&ctx](const std::vector<int>& s) { return ctx.is_clique_face(mask_of(s)); });
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Koszul: return "Koszul";
    case Family::LinearSyzygy: return "LinearSyzygy";
    case Family::Plucker: return "Plucker";
  }
  return "?";
}

const char* to_string(CliqueCondition c) {
  switch (c) {
    case CliqueCondition::None: return "none";
    case CliqueCondition::I: return "i";
    case CliqueCondition::II: return "ii";
    case CliqueCondition::III: return "iii";
    case CliqueCondition::IV: return "iv";
  }
  return "?";
}

CliqueSortedResult is_clique_sorted(const Monomial& mono, const CliqueIndex& ctx) {
  if (!ctx.closed()) throw Error(ErrorCode::NotClosed, "clique-sortedness needs a closed complex");
  std::vector<Facet> ts = t_factors(mono);
  for (const auto& a : ts) {
    if (!ctx.complex().contains(a)) throw Error(ErrorCode::BadIndex, "T_{" + a.to_string() + "} is not a facet");
  }
  for (std::size_t p = 0; p < ts.size(); ++p) {
    for (std::size_t q = p + 1; q < ts.size(); ++q) {
      if (ctx.share_clique(ts[p], ts[q]) && !comparable(ts[p], ts[q])) {
        return {false, CliqueCondition::I, "T_{" + ts[p].to_string() + "} and T_{" + ts[q].to_string() + "} incomparable"};
      }
    }
  }
  Monomial xs = mono.restrict(VarKind::X);
  for (const auto& xv : xs.powers()) {
    int i = xv.var.row();
    int j = xv.var.col();
    for (const auto& a : ts) {
      if (a.contains(j)) continue;
      auto ins = insert_index(a, j);
      if (ins.position == i && ctx.is_clique_face(mask_of(ins.tuple))) {
        return {false, CliqueCondition::III, xv.var.to_string() + " with T_{" + a.to_string() + "}"};
      }
    }
  }
  for (const auto& a : ctx.complex().facets()) {
    if (!initial_monomial(a).divides(xs)) continue;
    for (const auto& b : ts) {
      if (!ctx.share_clique(a, b) && ctx.earliest_clique(a) < ctx.earliest_clique(b)) {
        return {false, CliqueCondition::IV, "x_{" + a.to_string() + "} with T_{" + b.to_string() + "}"};
      }
    }
  }
  return {};
}

std::string RewriteMeasure::to_string() const {
  return "(" + std::to_string(clique_mass) + "," + std::to_string(column_deficit) + "," + std::to_string(inversions) + ")";
}

RewriteMeasure rewrite_measure(const Monomial& mono, const CliqueIndex& ctx) {
  RewriteMeasure mu;
  for (const auto& vp : mono.powers()) {
    if (vp.var.kind() == VarKind::T) {
      mu.clique_mass += static_cast<long>(vp.exp) * (ctx.earliest_clique(vp.var.facet()) + 1);
    } else if (vp.var.kind() == VarKind::X) {
      mu.column_deficit += static_cast<long>(vp.exp) * (ctx.n() - vp.var.col());
    }
  }
  for (int s : inversion_counts(t_factors(mono), ctx.m())) mu.inversions += s;
  return mu;
}

bool reduction_measure_decreases(const RewriteStep& step) { return step.after < step.before; }

// ---- Rewriter ----

Rewriter::Rewriter(std::vector<MarkedPolynomial> rules, const CliqueIndex* ctx) : rules_(std::move(rules)), ctx_(ctx) {
  std::vector<std::pair<Variable, std::size_t>> keyed;
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    const auto& r = rules_[k];
    if (r.body.size() != 2) throw Error(ErrorCode::Internal, "rewrite rules must be binomials");
    Rational cm = r.body.coefficient(r.marked);
    if (cm == 0) throw Error(ErrorCode::Internal, "marked term not in rule body");
    const auto& other = r.body.terms()[0].first == r.marked ? r.body.terms()[1] : r.body.terms()[0];
    compiled_.push_back({r.marked, other.first, Rational(-other.second / cm)});
    auto it = std::find_if(r.marked.powers().begin(), r.marked.powers().end(),
                           [](const VarPower& vp) { return vp.var.kind() == VarKind::T; });
    if (it == r.marked.powers().end()) {
      unindexed_.push_back(k);
    } else {
      keyed.emplace_back(it->var, k);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  for (const auto& [v, k] : keyed) {
    if (index_.empty() || !(index_.back().first == v)) index_.emplace_back(v, std::vector<std::size_t>{});
    index_.back().second.push_back(k);
  }
}

std::vector<std::size_t> Rewriter::applicable(const Monomial& mono) const {
  std::vector<std::size_t> out;
  auto consider = [&](std::size_t k) {
    if (compiled_[k].lhs.divides(mono)) out.push_back(k);
  };
  for (const auto& vp : mono.powers()) {
    if (vp.var.kind() != VarKind::T) continue;
    auto it = std::lower_bound(index_.begin(), index_.end(), vp.var,
                               [](const auto& e, const Variable& v) { return e.first < v; });
    if (it != index_.end() && it->first == vp.var) {
      for (std::size_t k : it->second) consider(k);
    }
  }
  for (std::size_t k : unindexed_) consider(k);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Rewriter::choose(const Monomial& mono, const std::vector<std::size_t>& options, const RewriteOptions& opts,
                             std::uint64_t& rng_state) const {
  (void)mono;
  switch (opts.strategy) {
    case Strategy::Canonical: return options.front();
    case Strategy::Random: {
      rng_state += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = rng_state;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      z ^= z >> 31;
      return options[z % options.size()];
    }
    case Strategy::ProofOrder: break;
  }
  auto rank = [this](std::size_t k) {
    const auto& r = rules_[k];
    int fam = r.family == Family::Plucker ? 0 : (r.family == Family::LinearSyzygy ? 1 : 2);
    Facet a;
    int xkey = 0;
    if (r.family == Family::LinearSyzygy) {
      for (const auto& vp : r.marked.powers()) {
        if (vp.var.kind() == VarKind::T) a = vp.var.facet();
        // LexX-smallest x comes last in the canonical order.
        if (vp.var.kind() == VarKind::X) xkey = -(vp.var.row() * 256 + vp.var.col());
      }
    }
    return std::make_tuple(fam, a, xkey, k);
  };
  return *std::min_element(options.begin(), options.end(),
                           [&rank](std::size_t p, std::size_t q) { return rank(p) < rank(q); });
}

NormalFormResult Rewriter::normal_form(const Monomial& mono, const RewriteOptions& opts) const {
  NormalFormResult res;
  res.result = mono;
  std::size_t deg = std::max<std::size_t>(1, mono.degree());
  std::size_t budget = opts.step_budget.value_or(10 * deg * deg);
  std::uint64_t rng = opts.seed;
  while (true) {
    auto options = applicable(res.result);
    if (options.empty()) break;
    if (res.num_steps >= budget) {
      throw Error(ErrorCode::NonTermination, "step budget " + std::to_string(budget) + " exhausted on " + mono.to_string());
    }
    std::size_t k = choose(res.result, options, opts, rng);
    const Rule& rule = compiled_[k];
    Monomial next = (res.result / rule.lhs) * rule.rhs;
    if (opts.record_trace) {
      RewriteStep step{rules_[k].family, k, res.result, next, {}, {}};
      if (ctx_ != nullptr) {
        step.before = rewrite_measure(res.result, *ctx_);
        step.after = rewrite_measure(next, *ctx_);
      }
      res.steps.push_back(std::move(step));
    }
    res.coefficient *= rule.factor;
    res.result = std::move(next);
    ++res.num_steps;
  }
  return res;
}

Polynomial Rewriter::normal_form(const Polynomial& p, const RewriteOptions& opts) const {
  std::vector<Polynomial::Term> out;
  for (const auto& [m, c] : p.terms()) {
    auto nf = normal_form(m, opts);
    out.emplace_back(nf.result, c * nf.coefficient);
  }
  return Polynomial::from_terms(std::move(out));
}

// ---- factorizations ----

namespace {

using Rows = std::vector<std::vector<int>>;  // sorted column multisets per row

// Fills up to max_cols tableau columns greedily; consumed entries leave rows.
std::vector<Facet> greedy_fill(Rows& rows, int m, std::size_t max_cols, std::uint64_t allowed) {
  std::vector<Facet> facets;
  std::vector<int> prev_col(static_cast<std::size_t>(m), 0);
  while (facets.size() < max_cols) {
    std::vector<int> col;
    std::vector<std::size_t> taken;
    int above = 0;
    for (int p = 0; p < m; ++p) {
      const auto& row = rows[static_cast<std::size_t>(p)];
      std::size_t pick = row.size();
      for (std::size_t k = 0; k < row.size(); ++k) {
        int j = row[k];
        if (j > above && j >= prev_col[static_cast<std::size_t>(p)] && ((allowed >> (j - 1)) & 1U)) {
          pick = k;
          break;
        }
      }
      if (pick == row.size()) return facets;
      above = row[pick];
      col.push_back(above);
      taken.push_back(pick);
    }
    for (int p = 0; p < m; ++p) {
      auto& row = rows[static_cast<std::size_t>(p)];
      row.erase(row.begin() + static_cast<long>(taken[static_cast<std::size_t>(p)]));
    }
    prev_col = col;
    facets.emplace_back(col);
  }
  return facets;
}

Rows x_rows(const Monomial& mono, int m) {
  Rows rows(static_cast<std::size_t>(m));
  for (const auto& vp : mono.powers()) {
    if (vp.var.kind() == VarKind::X) {
      if (vp.var.row() > m) throw Error(ErrorCode::NotInImage, "row index above m");
      for (std::uint32_t e = 0; e < vp.exp; ++e) rows[static_cast<std::size_t>(vp.var.row() - 1)].push_back(vp.var.col());
    } else if (vp.var.kind() == VarKind::T) {
      throw Error(ErrorCode::NotInImage, "monomial has T-variables");
    }
  }
  for (auto& r : rows) std::sort(r.begin(), r.end());
  return rows;
}

Monomial rows_monomial(const Rows& rows) {
  std::vector<VarPower> vp;
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (int j : rows[p]) vp.push_back({Variable::x(static_cast<int>(p) + 1, j), 1});
  }
  return Monomial::from_powers(std::move(vp));
}

// Some m-subset of the clique has a_i = j.
bool usable(const std::vector<int>& clique, int m, int i, int j) {
  if (!std::binary_search(clique.begin(), clique.end(), j)) return false;
  auto below = std::lower_bound(clique.begin(), clique.end(), j) - clique.begin();
  auto above = static_cast<long>(clique.size()) - below - 1;
  return below >= i - 1 && above >= m - i;
}

}  // namespace

SortedFactorization sorted_factorization(const Monomial& mono, int m) {
  std::size_t d = mono.degree(VarKind::Tdeg);
  Rows rows = x_rows(mono, m);
  SortedFactorization out;
  out.facets = greedy_fill(rows, m, d, ~std::uint64_t{0});
  if (out.facets.size() != d) throw Error(ErrorCode::NotInImage, mono.to_string());
  out.u = rows_monomial(rows);
  return out;
}

Monomial CliqueSortedFactorization::as_monomial() const {
  std::vector<VarPower> vp(u.powers().begin(), u.powers().end());
  for (const auto& fs : per_clique) {
    for (const auto& f : fs) vp.push_back({Variable::T(f), 1});
  }
  return Monomial::from_powers(std::move(vp));
}

CliqueSortedFactorization clique_sorted_factorization(const Monomial& mono, const CliqueIndex& ctx) {
  if (!ctx.closed()) throw Error(ErrorCode::NotClosed, "clique-sorted factorization");
  const int m = ctx.m();
  const auto& cliques = ctx.decomposition().cliques;
  std::size_t remaining = mono.degree(VarKind::Tdeg);
  Rows all = x_rows(mono, m);

  // Split the x-part by the earliest clique able to use each variable.
  std::vector<Rows> home(cliques.size(), Rows(static_cast<std::size_t>(m)));
  Rows pool(static_cast<std::size_t>(m));
  for (int p = 0; p < m; ++p) {
    for (int j : all[static_cast<std::size_t>(p)]) {
      std::size_t k = 0;
      while (k < cliques.size() && !usable(cliques[k], m, p + 1, j)) ++k;
      (k < cliques.size() ? home[k] : pool)[static_cast<std::size_t>(p)].push_back(j);
    }
  }
  Rows homeless = pool;
  for (auto& r : pool) r.clear();

  CliqueSortedFactorization out;
  out.per_clique.resize(cliques.size());
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    Rows work = home[k];
    for (int p = 0; p < m; ++p) {
      auto& src = pool[static_cast<std::size_t>(p)];
      std::vector<int> keep;
      for (int j : src) {
        (usable(cliques[k], m, p + 1, j) ? work[static_cast<std::size_t>(p)] : keep).push_back(j);
      }
      src = std::move(keep);
    }
    for (auto& r : work) std::sort(r.begin(), r.end());
    out.per_clique[k] = greedy_fill(work, m, remaining, ctx.clique_mask(static_cast<int>(k)));
    remaining -= out.per_clique[k].size();
    for (int p = 0; p < m; ++p) {
      auto& dst = pool[static_cast<std::size_t>(p)];
      dst.insert(dst.end(), work[static_cast<std::size_t>(p)].begin(), work[static_cast<std::size_t>(p)].end());
    }
  }
  if (remaining != 0) throw Error(ErrorCode::NotInImage, mono.to_string());
  for (int p = 0; p < m; ++p) {
    auto& dst = pool[static_cast<std::size_t>(p)];
    dst.insert(dst.end(), homeless[static_cast<std::size_t>(p)].begin(), homeless[static_cast<std::size_t>(p)].end());
  }
  out.u = rows_monomial(pool);
  return out;
}

std::string tableau_string(const std::vector<Facet>& facets) {
  std::string s = "[";
  for (std::size_t k = 0; k < facets.size(); ++k) {
    if (k) s += ",";
    s += "[";
    for (int i = 0; i < facets[k].size(); ++i) s += (i ? "," : "") + std::to_string(facets[k][i]);
    s += "]";
  }
  return s + "]";
}

}  // namespace rees
