// Dense-exponent Buchberger engine used by the oracle. Internal header.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rees/error.hpp"
#include "rees/polyring.hpp"

namespace rees::engine {

inline constexpr int kMaxVars = 96;
inline constexpr int kMaxWeights = 4;

struct QField {
  using E = mpq_class;
  static E from(const Rational& r) { return r; }
  static Rational to(const E& e) { return e; }
  static bool is_zero(const E& e) { return sgn(e) == 0; }
  static E one() { return E(1); }
  static E mul(const E& a, const E& b) { return a * b; }
  static E sub(const E& a, const E& b) { return a - b; }
  static E neg(const E& a) { return -a; }
  static E inv(const E& a) { return E(1) / a; }
};

struct PField {
  using E = std::uint32_t;
  static constexpr std::uint32_t p = 32003;
  static E reduce(const mpz_class& z) {
    mpz_class r = z % p;
    if (r < 0) r += p;
    return static_cast<E>(r.get_ui());
  }
  static E from(const Rational& r) {
    E den = reduce(r.get_den());
    if (den == 0) throw Error(ErrorCode::Internal, "denominator divisible by the modulus");
    return mul(reduce(r.get_num()), inv(den));
  }
  static Rational to(const E& e) { return e > p / 2 ? Rational(static_cast<long>(e) - static_cast<long>(p)) : Rational(static_cast<long>(e)); }
  static bool is_zero(const E& e) { return e == 0; }
  static E one() { return 1; }
  static E mul(E a, E b) { return static_cast<E>((static_cast<std::uint64_t>(a) * b) % p); }
  static E sub(E a, E b) { return a >= b ? a - b : a + p - b; }
  static E neg(E a) { return a == 0 ? 0 : p - a; }
  static E inv(E a) {
    std::uint64_t result = 1;
    std::uint64_t base = a;
    std::uint32_t e = p - 2;
    while (e) {
      if (e & 1U) result = result * base % p;
      base = base * base % p;
      e >>= 1U;
    }
    return static_cast<E>(result);
  }
};

struct Mono {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint64_t mask = 0;
  std::array<std::int32_t, kMaxWeights> w{};
  std::int32_t deg = 0;  // sugar grading
};

// Variables, weight matrix and tie-break of one engine run.
class Ring {
 public:
  Ring(std::vector<Variable> vars, const MonomialOrder& order) : vars_(std::move(vars)), tie_(order.tie_break()) {
    if (vars_.size() > static_cast<std::size_t>(kMaxVars)) throw Error(ErrorCode::OracleBudgetExceeded, "too many variables for the engine");
    if (order.weights().size() > static_cast<std::size_t>(kMaxWeights)) throw Error(ErrorCode::Internal, "too many weight vectors");
    n_ = static_cast<int>(vars_.size());
    nw_ = static_cast<int>(order.weights().size());
    for (int k = 0; k < nw_; ++k) {
      std::vector<int> col;
      for (const auto& v : vars_) col.push_back(order.weights()[static_cast<std::size_t>(k)].of(v.kind()));
      weights_.push_back(col);
    }
    // Sugar: first weight when it is positive everywhere, else total degree.
    sugar_.assign(vars_.size(), 1);
    if (nw_ > 0 && std::all_of(weights_[0].begin(), weights_[0].end(), [](int x) { return x > 0; })) sugar_ = weights_[0];
  }

  int nvars() const { return n_; }
  const std::vector<Variable>& vars() const { return vars_; }

  int index(const Variable& v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || !(*it == v)) throw Error(ErrorCode::UnboundVariable, v.to_string() + " not in engine ring");
    return static_cast<int>(it - vars_.begin());
  }

  Mono make(const Monomial& m) const {
    Mono r;
    for (const auto& vp : m.powers()) {
      if (vp.exp > 255) throw Error(ErrorCode::OracleBudgetExceeded, "exponent too large for the engine");
      r.e[static_cast<std::size_t>(index(vp.var))] = static_cast<std::uint8_t>(vp.exp);
    }
    finish(r);
    return r;
  }

  Monomial to_monomial(const Mono& m) const {
    std::vector<VarPower> vp;
    for (int i = 0; i < n_; ++i) {
      if (m.e[static_cast<std::size_t>(i)]) vp.push_back({vars_[static_cast<std::size_t>(i)], m.e[static_cast<std::size_t>(i)]});
    }
    return Monomial::from_powers(std::move(vp));
  }

  void finish(Mono& r) const {
    r.mask = 0;
    r.deg = 0;
    r.w.fill(0);
    for (int i = 0; i < n_; ++i) {
      int x = r.e[static_cast<std::size_t>(i)];
      if (!x) continue;
      r.mask |= std::uint64_t{1} << (i & 63);
      r.deg += x * sugar_[static_cast<std::size_t>(i)];
      for (int k = 0; k < nw_; ++k) r.w[static_cast<std::size_t>(k)] += x * weights_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
  }

  int cmp(const Mono& a, const Mono& b) const {
    for (int k = 0; k < nw_; ++k) {
      auto x = a.w[static_cast<std::size_t>(k)];
      auto y = b.w[static_cast<std::size_t>(k)];
      if (x != y) return x > y ? 1 : -1;
    }
    if (tie_ == TieBreak::Lex) {
      for (int i = 0; i < n_; ++i) {
        auto x = a.e[static_cast<std::size_t>(i)];
        auto y = b.e[static_cast<std::size_t>(i)];
        if (x != y) return x > y ? 1 : -1;
      }
    } else {
      for (int i = n_ - 1; i >= 0; --i) {
        auto x = a.e[static_cast<std::size_t>(i)];
        auto y = b.e[static_cast<std::size_t>(i)];
        if (x != y) return x < y ? 1 : -1;
      }
    }
    return 0;
  }

  Mono mul(const Mono& a, const Mono& b) const {
    Mono r;
    for (int i = 0; i < n_; ++i) {
      int s = a.e[static_cast<std::size_t>(i)] + b.e[static_cast<std::size_t>(i)];
      if (s > 255) throw Error(ErrorCode::OracleBudgetExceeded, "exponent overflow in the engine");
      r.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(s);
    }
    r.mask = a.mask | b.mask;
    r.deg = a.deg + b.deg;
    for (int k = 0; k < kMaxWeights; ++k) r.w[static_cast<std::size_t>(k)] = a.w[static_cast<std::size_t>(k)] + b.w[static_cast<std::size_t>(k)];
    return r;
  }

  bool divides(const Mono& a, const Mono& b) const {
    if ((a.mask & ~b.mask) != 0) return false;
    for (int i = 0; i < n_; ++i) {
      if (a.e[static_cast<std::size_t>(i)] > b.e[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }

  // b / a, assuming a | b.
  Mono quo(const Mono& b, const Mono& a) const {
    Mono r;
    for (int i = 0; i < n_; ++i) r.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(b.e[static_cast<std::size_t>(i)] - a.e[static_cast<std::size_t>(i)]);
    finish(r);
    return r;
  }

  Mono lcm(const Mono& a, const Mono& b) const {
    Mono r;
    for (int i = 0; i < n_; ++i) r.e[static_cast<std::size_t>(i)] = std::max(a.e[static_cast<std::size_t>(i)], b.e[static_cast<std::size_t>(i)]);
    finish(r);
    return r;
  }

  bool coprime(const Mono& a, const Mono& b) const {
    for (int i = 0; i < n_; ++i) {
      if (a.e[static_cast<std::size_t>(i)] && b.e[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }

  bool equal(const Mono& a, const Mono& b) const {
    for (int i = 0; i < n_; ++i) {
      if (a.e[static_cast<std::size_t>(i)] != b.e[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }

 private:
  std::vector<Variable> vars_;
  TieBreak tie_;
  int n_ = 0;
  int nw_ = 0;
  std::vector<std::vector<int>> weights_;
  std::vector<int> sugar_;
};

template <class F>
struct Term {
  Mono m;
  typename F::E c;
};

// Terms sorted strictly descending.
template <class F>
struct Poly {
  std::vector<Term<F>> t;
  int sugar = 0;
  bool empty() const { return t.empty(); }
};

template <class F>
Poly<F> from_polynomial(const Ring& R, const Polynomial& p) {
  Poly<F> out;
  for (const auto& [m, c] : p.terms()) {
    typename F::E e = F::from(c);
    if (!F::is_zero(e)) out.t.push_back({R.make(m), e});
  }
  std::sort(out.t.begin(), out.t.end(), [&R](const Term<F>& a, const Term<F>& b) { return R.cmp(a.m, b.m) > 0; });
  for (const auto& tm : out.t) out.sugar = std::max(out.sugar, tm.m.deg);
  return out;
}

template <class F>
Polynomial to_polynomial(const Ring& R, const Poly<F>& p) {
  std::vector<Polynomial::Term> ts;
  for (const auto& tm : p.t) ts.emplace_back(R.to_monomial(tm.m), F::to(tm.c));
  return Polynomial::from_terms(std::move(ts));
}

// p[start..] - c * q * g[gstart..], merged in descending order.
template <class F>
std::vector<Term<F>> sub_mul(const Ring& R, const std::vector<Term<F>>& p, std::size_t start, const typename F::E& c,
                             const Mono& q, const std::vector<Term<F>>& g, std::size_t gstart) {
  std::vector<Term<F>> out;
  out.reserve(p.size() - start + g.size() - gstart);
  std::size_t i = start;
  std::size_t j = gstart;
  std::optional<Term<F>> pending;
  auto next_g = [&]() {
    Term<F> t{R.mul(q, g[j].m), F::neg(F::mul(c, g[j].c))};
    ++j;
    return t;
  };
  if (j < g.size()) pending = next_g();
  while (i < p.size() || pending) {
    if (!pending) {
      out.push_back(p[i++]);
      continue;
    }
    if (i >= p.size()) {
      out.push_back(*pending);
      pending.reset();
      if (j < g.size()) pending = next_g();
      continue;
    }
    int s = R.cmp(p[i].m, pending->m);
    if (s > 0) {
      out.push_back(p[i++]);
    } else if (s < 0) {
      out.push_back(*pending);
      pending.reset();
      if (j < g.size()) pending = next_g();
    } else {
      auto sum = F::sub(p[i].c, F::neg(pending->c));
      if (!F::is_zero(sum)) out.push_back({p[i].m, sum});
      ++i;
      pending.reset();
      if (j < g.size()) pending = next_g();
    }
  }
  return out;
}

template <class F>
struct Reducers {
  const Ring* R = nullptr;
  std::vector<const Poly<F>*> polys;  // monic, in insertion order

  const Poly<F>* find(const Mono& m) const {
    for (const auto* g : polys) {
      if (R->divides(g->t.front().m, m)) return g;
    }
    return nullptr;
  }
};

// Full reduction; `steps` counts reduction steps.
template <class F>
Poly<F> reduce_full(const Ring& R, Poly<F> p, const Reducers<F>& G, std::size_t* steps = nullptr) {
  std::vector<Term<F>> rem;
  std::size_t pos = 0;
  while (pos < p.t.size()) {
    const Term<F>& lt = p.t[pos];
    const Poly<F>* g = G.find(lt.m);
    if (g == nullptr) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    Mono q = R.quo(lt.m, g->t.front().m);
    p.sugar = std::max(p.sugar, q.deg + g->sugar);
    p.t = sub_mul<F>(R, p.t, pos + 1, lt.c, q, g->t, 1);
    pos = 0;
    if (steps) ++*steps;
  }
  p.t = std::move(rem);
  return p;
}

template <class F>
void make_monic(Poly<F>& p) {
  if (p.t.empty()) return;
  auto inv = F::inv(p.t.front().c);
  for (auto& tm : p.t) tm.c = F::mul(tm.c, inv);
}

struct Options {
  std::optional<long> degree_budget;
  bool strict = false;
  bool parallel = true;
};

template <class F>
struct Result {
  std::vector<Poly<F>> basis;  // reduced, sorted by leading monomial ascending
  bool truncated = false;
  long max_degree_done = 0;
  std::size_t pairs_reduced = 0;
};

template <class F>
class Buchberger {
 public:
  Buchberger(const Ring& R, Options opts) : R_(R), opts_(opts) {}

  Result<F> run(const std::vector<Poly<F>>& input);

 private:
  struct Item {
    int i;  // basis index, or -1 for an input generator
    int j;  // basis index, or input index when i == -1
    Mono lcm;
    int sugar;
  };

  Poly<F> spoly(const Item& it, const std::vector<Poly<F>>& input) const;
  void update(int h);
  Reducers<F> reducers() const;

  const Ring& R_;
  Options opts_;
  std::vector<Poly<F>> polys_;
  std::vector<bool> active_;
  std::vector<Item> queue_;
};

template <class F>
Reducers<F> Buchberger<F>::reducers() const {
  Reducers<F> red;
  red.R = &R_;
  for (std::size_t k = 0; k < polys_.size(); ++k) {
    if (active_[k]) red.polys.push_back(&polys_[k]);
  }
  return red;
}

template <class F>
Poly<F> Buchberger<F>::spoly(const Item& it, const std::vector<Poly<F>>& input) const {
  if (it.i < 0) return input[static_cast<std::size_t>(it.j)];
  const Poly<F>& f = polys_[static_cast<std::size_t>(it.i)];
  const Poly<F>& g = polys_[static_cast<std::size_t>(it.j)];
  Mono qf = R_.quo(it.lcm, f.t.front().m);
  Mono qg = R_.quo(it.lcm, g.t.front().m);
  Poly<F> s;
  // Both are monic: s = qf*f - qg*g, leading terms cancel.
  std::vector<Term<F>> a;
  a.reserve(f.t.size());
  for (std::size_t k = 1; k < f.t.size(); ++k) a.push_back({R_.mul(qf, f.t[k].m), f.t[k].c});
  s.t = sub_mul<F>(R_, a, 0, F::one(), qg, g.t, 1);
  s.sugar = std::max(qf.deg + f.sugar, qg.deg + g.sugar);
  return s;
}

// Gebauer-Moeller update after appending polys_[h].
template <class F>
void Buchberger<F>::update(int h) {
  const Mono& lh = polys_[static_cast<std::size_t>(h)].t.front().m;
  std::vector<Item> C;
  for (std::size_t k = 0; k < polys_.size(); ++k) {
    if (!active_[k] || static_cast<int>(k) == h) continue;
    const Poly<F>& g = polys_[k];
    Mono l = R_.lcm(lh, g.t.front().m);
    int sug = std::max(l.deg - lh.deg + polys_[static_cast<std::size_t>(h)].sugar, l.deg - g.t.front().m.deg + g.sugar);
    C.push_back({static_cast<int>(k), h, l, sug});
  }
  std::vector<bool> coprime(C.size());
  for (std::size_t a = 0; a < C.size(); ++a) {
    coprime[a] = R_.coprime(lh, polys_[static_cast<std::size_t>(C[a].i)].t.front().m);
  }
  // Keep a pair unless another pair's lcm properly divides it (ties keep the earliest).
  std::vector<Item> D;
  std::vector<bool> keepD;
  for (std::size_t a = 0; a < C.size(); ++a) {
    bool keep = coprime[a];
    if (!keep) {
      keep = true;
      for (std::size_t b = 0; b < C.size() && keep; ++b) {
        if (b == a) continue;
        if (R_.divides(C[b].lcm, C[a].lcm)) {
          bool same = R_.equal(C[b].lcm, C[a].lcm);
          // Equal lcms: keep one representative, preferring a coprime one.
          if (!same) keep = false;
          else if (coprime[b] || (b < a)) keep = false;
        }
      }
    }
    if (keep) {
      D.push_back(C[a]);
      keepD.push_back(!coprime[a]);
    }
  }
  // Chain criterion on old pairs.
  std::vector<Item> kept;
  for (const auto& it : queue_) {
    if (it.i >= 0) {
      const Mono& l = it.lcm;
      if (R_.divides(lh, l)) {
        Mono l1 = R_.lcm(polys_[static_cast<std::size_t>(it.i)].t.front().m, lh);
        Mono l2 = R_.lcm(polys_[static_cast<std::size_t>(it.j)].t.front().m, lh);
        if (!R_.equal(l1, l) && !R_.equal(l2, l)) continue;
      }
    }
    kept.push_back(it);
  }
  queue_ = std::move(kept);
  for (std::size_t a = 0; a < D.size(); ++a) {
    if (keepD[a]) queue_.push_back(D[a]);
  }
  for (std::size_t k = 0; k < polys_.size(); ++k) {
    if (active_[k] && static_cast<int>(k) != h && R_.divides(lh, polys_[k].t.front().m)) active_[k] = false;
  }
}

template <class F>
Result<F> Buchberger<F>::run(const std::vector<Poly<F>>& input) {
  Result<F> res;
  for (std::size_t k = 0; k < input.size(); ++k) {
    if (input[k].empty()) continue;
    queue_.push_back({-1, static_cast<int>(k), input[k].t.front().m, input[k].sugar});
  }
  auto item_less = [this](const Item& a, const Item& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = R_.cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  while (!queue_.empty()) {
    std::sort(queue_.begin(), queue_.end(), item_less);
    int d = queue_.front().sugar;
    if (opts_.degree_budget && d > *opts_.degree_budget) {
      if (opts_.strict) throw Error(ErrorCode::BudgetExceeded, "Groebner basis needs sugar degree " + std::to_string(d));
      res.truncated = true;
      break;
    }
    res.max_degree_done = d;
    std::size_t batch_end = 0;
    while (batch_end < queue_.size() && queue_[batch_end].sugar == d) ++batch_end;
    std::vector<Item> batch(queue_.begin(), queue_.begin() + static_cast<long>(batch_end));
    queue_.erase(queue_.begin(), queue_.begin() + static_cast<long>(batch_end));
    res.pairs_reduced += batch.size();

    if (opts_.parallel) {
      // Reduce the whole degree batch against a snapshot, then fold in serially.
      std::vector<Poly<F>> reduced(batch.size());
      Reducers<F> snap = reducers();
#pragma omp parallel for schedule(dynamic)
      for (std::size_t k = 0; k < batch.size(); ++k) {
        reduced[k] = reduce_full<F>(R_, spoly(batch[k], input), snap);
      }
      for (auto& p : reduced) {
        if (p.empty()) continue;
        p = reduce_full<F>(R_, std::move(p), reducers());
        if (p.empty()) continue;
        make_monic<F>(p);
        polys_.push_back(std::move(p));
        active_.push_back(true);
        update(static_cast<int>(polys_.size()) - 1);
      }
    } else {
      for (const auto& it : batch) {
        Poly<F> p = reduce_full<F>(R_, spoly(it, input), reducers());
        if (p.empty()) continue;
        make_monic<F>(p);
        polys_.push_back(std::move(p));
        active_.push_back(true);
        update(static_cast<int>(polys_.size()) - 1);
      }
    }
  }

  // Interreduce the minimal basis.
  std::vector<Poly<F>> minimal;
  for (std::size_t k = 0; k < polys_.size(); ++k) {
    if (active_[k]) minimal.push_back(polys_[k]);
  }
  std::sort(minimal.begin(), minimal.end(),
            [this](const Poly<F>& a, const Poly<F>& b) { return R_.cmp(a.t.front().m, b.t.front().m) < 0; });
  std::vector<Poly<F>> out(minimal.size());
  auto tail_reduce = [&](std::size_t k) {
    Reducers<F> others;
    others.R = &R_;
    for (std::size_t o = 0; o < minimal.size(); ++o) {
      if (o != k) others.polys.push_back(&minimal[o]);
    }
    Poly<F> head;
    head.t.push_back(minimal[k].t.front());
    Poly<F> tail;
    tail.t.assign(minimal[k].t.begin() + 1, minimal[k].t.end());
    tail = reduce_full<F>(R_, std::move(tail), others);
    head.t.insert(head.t.end(), tail.t.begin(), tail.t.end());
    head.sugar = minimal[k].sugar;
    return head;
  };
  if (opts_.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < minimal.size(); ++k) out[k] = tail_reduce(k);
  } else {
    for (std::size_t k = 0; k < minimal.size(); ++k) out[k] = tail_reduce(k);
  }
  res.basis = std::move(out);
  return res;
}

}  // namespace rees::engine
