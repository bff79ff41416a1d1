// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "properties.hpp"
#include "rees/dfi.hpp"
#include "rees/oracle.hpp"
#include "rees/presentations.hpp"
#include "rees/sagbi.hpp"
#include "rees/sorting.hpp"

using namespace rees;
using namespace rees::fixtures;

namespace {

Monomial mono(std::initializer_list<Variable> vs) {
  std::vector<VarPower> vp;
  for (const auto& v : vs) vp.push_back({v, 1});
  return Monomial::from_powers(std::move(vp));
}
Variable X(int i, int j) { return Variable::x(i, j); }
Variable TV(std::initializer_list<int> a) { return Variable::T(Facet(a)); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs < limit_seconds;
  bool ok = o.pass && in_time;
  if (o.pass && !in_time) o.detail = "time limit exceeded";
  std::printf("criterion %d: %s  %s  (%.2fs, limit %.0fs)%s%s\n", id, ok ? "PASS" : "FAIL", title, secs, limit_seconds,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

OracleOptions strict_options() {
  OracleOptions o;
  o.strict = true;
  return o;
}

bool contains_up_to_sign(const GeneratorSet& gs, const Polynomial& p) {
  return std::any_of(gs.items.begin(), gs.items.end(), [&](const GeneratorItem& it) { return it.poly == p || it.poly == -p; });
}

bool scalar_multiple(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [m, c] = *b.terms().begin();
  Rational lambda = a.coefficient(m) / c;
  return lambda != 0 && a == b * Polynomial(lambda);
}

// All multisets of size <= max_degree over `count` items, as index lists.
std::vector<std::vector<std::size_t>> multisets(std::size_t count, int max_degree) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : frontier) {
      for (std::size_t k = s.empty() ? 0 : s.back(); k < count; ++k) {
        auto e = s;
        e.push_back(k);
        next.push_back(std::move(e));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

struct InjectivityStats {
  std::size_t monomials = 0;
  std::size_t sorted = 0;
  std::size_t collisions = 0;
  std::size_t bad_reductions = 0;
  std::string first_problem;
};

InjectivityStats standard_monomial_sweep(const SimplicialComplex& delta, int max_t, int max_x) {
  CliqueIndex ctx(delta);
  Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
  std::vector<Variable> tvars;
  for (const auto& a : delta.facets()) tvars.push_back(Variable::T(a));
  std::vector<Variable> xvars;
  for (int i = 1; i <= delta.m(); ++i) {
    for (int j = 1; j <= delta.n(); ++j) xvars.push_back(Variable::x(i, j));
  }
  auto tsets = multisets(tvars.size(), max_t);
  auto xsets = multisets(xvars.size(), max_x);
  const std::size_t total = tsets.size() * xsets.size();

  auto build = [&](std::size_t k) {
    std::vector<VarPower> vp;
    for (auto i : tsets[k / xsets.size()]) vp.push_back({tvars[i], 1});
    for (auto i : xsets[k % xsets.size()]) vp.push_back({xvars[i], 1});
    return Monomial::from_powers(std::move(vp));
  };

  std::vector<std::pair<std::size_t, std::size_t>> images;  // (hash of phi*, index) for sorted monomials
  std::atomic<std::size_t> bad{0};
  std::string problem;
#pragma omp parallel
  {
    std::vector<std::pair<std::size_t, std::size_t>> local;
#pragma omp for schedule(dynamic, 4096)
    for (std::size_t k = 0; k < total; ++k) {
      Monomial mm = build(k);
      if (is_clique_sorted(mm, ctx).sorted) {
        bool normal = rw.is_normal(mm);
        if (!normal) {
          ++bad;
#pragma omp critical
          if (problem.empty()) problem = "sorted but reducible: " + mm.to_string();
        }
        local.emplace_back(phi_star(mm).hash(), k);
        continue;
      }
      RewriteOptions ro;
      ro.record_trace = true;
      auto nf = rw.normal_form(mm, ro);
      bool ok = is_clique_sorted(nf.result, ctx).sorted && phi_star(nf.result) == phi_star(mm);
      for (const auto& s : nf.steps) ok = ok && reduction_measure_decreases(s);
      if (!ok) {
        ++bad;
#pragma omp critical
        if (problem.empty()) problem = "bad reduction of " + mm.to_string();
      }
    }
#pragma omp critical
    images.insert(images.end(), local.begin(), local.end());
  }
  std::sort(images.begin(), images.end());
  InjectivityStats st;
  st.monomials = total;
  st.sorted = images.size();
  st.bad_reductions = bad;
  st.first_problem = problem;
  // Equal hashes are compared exactly.
  for (std::size_t a = 0; a < images.size();) {
    std::size_t b = a + 1;
    while (b < images.size() && images[b].first == images[a].first) ++b;
    for (std::size_t i = a; i < b; ++i) {
      for (std::size_t j = i + 1; j < b; ++j) {
        if (phi_star(build(images[i].second)) == phi_star(build(images[j].second))) {
          ++st.collisions;
          if (st.first_problem.empty()) {
            st.first_problem = "same image: " + build(images[i].second).to_string() + " and " +
                               build(images[j].second).to_string();
          }
        }
      }
    }
    a = b;
  }
  return st;
}

}  // namespace

int main() {
  criterion(1, "sorting distance and phi* images on the 3x5 example", 1, [] {
    Outcome o;
    CliqueIndex ctx(full_complex(3, 5));
    Monomial m1 = mono({X(1, 1), X(2, 2), TV({1, 4, 5}), TV({2, 3, 4})});
    Monomial m2 = mono({X(1, 2), X(2, 4), TV({1, 2, 4}), TV({1, 3, 5})});
    Monomial image = Monomial::from_powers({{X(1, 1), 2}, {X(1, 2), 1}, {X(2, 2), 1}, {X(2, 3), 1}, {X(2, 4), 1},
                                            {X(3, 4), 1}, {X(3, 5), 1}, {Variable::t(), 2}});
    std::string sd = sorting_distance(m1, 3).to_string();
    o.require(sd == "(2;0,1,1)", "sorting distance " + sd);
    o.require(sorting_distance(m2, 3).is_sorted() && is_clique_sorted(m2, ctx).sorted, "second monomial not sorted");
    o.require(phi_star(m1) == image && phi_star(m2) == image, "phi* image mismatch");
    return o;
  });

  criterion(2, "sorted factorization and tableau", 1, [] {
    Outcome o;
    Monomial m = Monomial::from_powers({{X(1, 1), 1}, {X(1, 3), 2}, {X(2, 2), 1}, {X(2, 3), 1}, {X(2, 4), 1},
                                        {X(3, 4), 1}, {X(3, 5), 1}, {Variable::t(), 2}});
    auto f = sorted_factorization(m, 3);
    o.require(f.u == mono({X(1, 3), X(2, 3)}), "u = " + f.u.to_string());
    o.require(f.facets == std::vector<Facet>{Facet{1, 2, 4}, Facet{3, 4, 5}}, "facets differ");
    std::string tab = tableau_string(f.facets);
    o.require(tab == "[[1,2,4],[3,4,5]]", "tableau " + tab);
    return o;
  });

  criterion(3, "initial and lifted generators of the two-clique graph", 5, [] {
    Outcome o;
    CliqueIndex ctx(two_clique_graph());
    GeneratorSet gs = gens_rees_initial(ctx);
    std::vector<Polynomial> listed{
        x(1, 1) * x(2, 2) * T({3, 6}) - x(1, 3) * x(2, 6) * T({1, 2}),
        x(1, 1) * T({2, 3}) - x(1, 2) * T({1, 3}),
        x(2, 3) * T({2, 4}) - x(2, 4) * T({2, 3}),
        x(1, 4) * T({5, 6}) - x(1, 5) * T({4, 6}),
        T({1, 4}) * T({2, 3}) - T({1, 3}) * T({2, 4}),
        T({2, 5}) * T({3, 4}) - T({2, 4}) * T({3, 5}),
        T({3, 6}) * T({4, 5}) - T({3, 5}) * T({4, 6}),
    };
    for (const auto& p : listed) o.require(contains_up_to_sign(gs, p), "missing " + to_string(p, MonomialOrder::lex_x()));
    o.require(contains_up_to_sign(gens_rees_lifted(ctx), T({2, 5}) * T({3, 4}) - T({2, 4}) * T({3, 5}) + T({2, 3}) * T({4, 5})),
              "missing lifted Plucker quadric");
    return o;
  });

  criterion(4, "emitted families equal the oracle kernels (4 targets x 5 instances)", 600, [] {
    Outcome o;
    auto opts = strict_options();
    int checked = 0;
    for (const auto& inst : closed_instances()) {
      CliqueIndex ctx(inst.delta);
      for (const auto& gs : {gens_rees_initial(ctx), gens_fiber_initial(ctx), gens_rees_lifted(ctx), gens_fiber_lifted(ctx)}) {
        auto map = kernel_map(gs.target);
        auto k = kernel_of_map(map, inst.delta, opts);
        auto rep = ideal_equal(gs.polynomials(), k.generators, kernel_order(map, inst.delta.m()), opts);
        o.require(k.is_groebner && rep.equal && !rep.truncated, inst.name + " " + to_string(gs.target) + " differs");
        ++checked;
      }
    }
    o.detail = o.pass ? std::to_string(checked) + " equalities" : o.detail;
    return o;
  });

  criterion(5, "standard-monomial injectivity and measured reduction (t-degree <= 3, x-degree <= 4)", 1800, [] {
    Outcome o;
    std::size_t total = 0;
    std::size_t sorted = 0;
    for (const auto& inst : closed_instances()) {
      auto st = standard_monomial_sweep(inst.delta, 3, 4);
      total += st.monomials;
      sorted += st.sorted;
      o.require(st.collisions == 0 && st.bad_reductions == 0,
                inst.name + ": " + std::to_string(st.collisions) + " collisions, " + std::to_string(st.bad_reductions) +
                    " bad reductions; " + st.first_problem);
    }
    if (o.pass) o.detail = std::to_string(total) + " monomials, " + std::to_string(sorted) + " clique-sorted";
    return o;
  });

  criterion(6, "linear/fiber type dichotomy and the non-closed certificate", 600, [] {
    Outcome o;
    struct Case {
      std::string name;
      SimplicialComplex delta;
      ReesType expect;
    };
    std::vector<Case> grid{
        {"m=2 {123}", complex_from_cliques(2, 3, {{1, 2, 3}}), ReesType::LinearType},
        {"m=2 {123},{345}", complex_from_cliques(2, 5, {{1, 2, 3}, {3, 4, 5}}), ReesType::LinearType},
        {"m=2 {1234}", complex_from_cliques(2, 4, {{1, 2, 3, 4}}), ReesType::FiberType},
        {"m=2 {1234},{456}", complex_from_cliques(2, 6, {{1, 2, 3, 4}, {4, 5, 6}}), ReesType::FiberType},
        {"m=3 {1234}", complex_from_cliques(3, 4, {{1, 2, 3, 4}}), ReesType::LinearType},
        {"m=3 {1234},{3456}", complex_from_cliques(3, 6, {{1, 2, 3, 4}, {3, 4, 5, 6}}), ReesType::LinearType},
        {"m=3 {12345}", complex_from_cliques(3, 5, {{1, 2, 3, 4, 5}}), ReesType::FiberType},
        {"m=3 {12345},{456}", complex_from_cliques(3, 6, {{1, 2, 3, 4, 5}, {4, 5, 6}}), ReesType::FiberType},
    };
    auto opts = strict_options();
    for (const auto& c : grid) {
      o.require(is_closed(c.delta).closed, c.name + " is not closed");
      auto cl = classify_type(c.delta, opts);
      o.require(cl.type == c.expect, c.name + " classified " + to_string(cl.type));
      // Plucker generators exist exactly when some clique has m+2 vertices.
      bool plucker = gens_rees_initial(CliqueIndex(c.delta)).count(Family::Plucker) > 0;
      o.require(plucker == (c.expect == ReesType::FiberType), c.name + " Plucker family mismatch");
    }
    auto cl = classify_type(open_graph(), opts);
    o.require(cl.type == ReesType::Neither, std::string("open graph classified ") + to_string(cl.type));
    Polynomial f = x(1, 5) * T({1, 4}) * T({2, 3}) - x(1, 4) * T({1, 5}) * T({2, 3}) + x(1, 5) * T({1, 2}) * T({3, 4}) -
                   x(1, 2) * T({1, 5}) * T({3, 4}) - x(1, 4) * T({1, 2}) * T({3, 5}) + x(1, 2) * T({1, 4}) * T({3, 5});
    bool matched = std::any_of(cl.certificates.begin(), cl.certificates.end(), [&](const TypeCertificate& c) {
      return c.poly.degree(VarKind::T) == 2 && scalar_multiple(c.poly, f);
    });
    o.require(matched, "no T-degree-2 certificate matches f");
    return o;
  });

  criterion(7, "SAGBI lifting criterion on the closed instances", 300, [] {
    Outcome o;
    std::size_t relations = 0;
    for (const auto& inst : closed_instances()) {
      for (const auto& rep : {verify_sagbi(inst.delta), verify_fiber_sagbi(inst.delta)}) {
        bool all = rep.verified;
        for (const auto& it : rep.items) {
          all = all && it.ok() && it.trace.remainder.is_zero() && it.trace.strictly_descending;
        }
        relations += rep.items.size();
        o.require(all, inst.name + " not certified");
      }
    }
    if (o.pass) o.detail = std::to_string(relations) + " relations subducted to zero";
    return o;
  });

  criterion(8, "property suites", 300, [] {
    Outcome o;
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 10000; ++k) {
      auto a = properties::random_polynomial(rng);
      auto b = properties::random_polynomial(rng);
      auto c = properties::random_polynomial(rng);
      std::string law = properties::ring_axiom_failure(a, b, c);
      o.require(law.empty(), "ring axiom " + law + " failed at triple " + std::to_string(k));
    }
    auto instances = closed_instances();
    for (int k = 0; k < 500; ++k) {
      const auto& inst = instances[static_cast<std::size_t>(k) % instances.size()];
      CliqueIndex ctx(inst.delta);
      Rewriter rw(gens_rees_initial(ctx).marked(), &ctx);
      Monomial m = properties::random_rees_monomial(rng, ctx, 1 + k % 3, k % 5);
      o.require(properties::confluent_on(rw, m, static_cast<std::uint64_t>(k)), "not confluent on " + m.to_string());
    }
    std::size_t generators = 0;
    for (const auto& inst : instances) {
      CliqueIndex ctx(inst.delta);
      for (const auto& gs : {gens_rees_initial(ctx), gens_fiber_initial(ctx), gens_rees_lifted(ctx), gens_fiber_lifted(ctx)}) {
        for (const auto& it : gs.items) {
          ++generators;
          o.require(apply_map(kernel_map(gs.target), it.poly, inst.delta.m()).is_zero(),
                    inst.name + ": generator outside the kernel");
          if (it.marked) o.require(it.marked->is_squarefree(), inst.name + ": marked term not squarefree");
        }
      }
    }
    if (o.pass) o.detail = "10000 ring triples, 500 confluence runs, " + std::to_string(generators) + " generators";
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
