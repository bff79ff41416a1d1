#include "rees/polyring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rees {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::NotLiftable: return "NotLiftable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OracleBudgetExceeded: return "OracleBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

// ---- Facet ----

Facet::Facet(std::initializer_list<int> cols) : Facet(std::vector<int>(cols)) {}

Facet::Facet(const std::vector<int>& cols) {
  if (cols.size() > static_cast<std::size_t>(kMaxFacetSize)) {
    throw Error(ErrorCode::BadIndex, "facet larger than supported size");
  }
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] < 1 || cols[i] > 255) throw Error(ErrorCode::BadIndex, "column index out of range");
    if (i > 0 && cols[i] <= cols[i - 1]) {
      throw Error(ErrorCode::BadIndex, "facet indices must be strictly increasing");
    }
    v_[i] = static_cast<std::uint8_t>(cols[i]);
  }
  size_ = static_cast<std::uint8_t>(cols.size());
}

bool Facet::contains(int col) const {
  for (int i = 0; i < size_; ++i) {
    if (v_[i] == col) return true;
  }
  return false;
}

std::vector<int> Facet::to_vector() const { return std::vector<int>(v_.begin(), v_.begin() + size_); }

Facet Facet::without_position(int pos) const {
  Facet f;
  for (int i = 0, k = 0; i < size_; ++i) {
    if (i != pos) f.v_[k++] = v_[i];
  }
  f.size_ = static_cast<std::uint8_t>(size_ - 1);
  return f;
}

std::string Facet::to_string() const {
  bool single = std::all_of(v_.begin(), v_.begin() + size_, [](int c) { return c <= 9; });
  std::string s;
  for (int i = 0; i < size_; ++i) {
    if (!single && i > 0) s += ',';
    s += std::to_string(v_[i]);
  }
  return s;
}

// ---- Variable ----

Variable Variable::x(int row, int col) {
  if (row < 1 || col < 1 || row > 255 || col > 255) throw Error(ErrorCode::BadIndex, "x index out of range");
  Variable v;
  v.kind_ = VarKind::X;
  v.row_ = static_cast<std::uint8_t>(row);
  v.col_ = static_cast<std::uint8_t>(col);
  return v;
}

Variable Variable::T(const Facet& a) {
  if (a.empty()) throw Error(ErrorCode::BadIndex, "T needs a nonempty index tuple");
  Variable v;
  v.kind_ = VarKind::T;
  v.facet_ = a;
  return v;
}

Variable Variable::t() {
  Variable v;
  v.kind_ = VarKind::Tdeg;
  return v;
}

std::string Variable::to_string() const {
  switch (kind_) {
    case VarKind::X:
      if (row_ <= 9 && col_ <= 9) return "x" + std::to_string(row_) + std::to_string(col_);
      return "x{" + std::to_string(row_) + "," + std::to_string(col_) + "}";
    case VarKind::T: return "T_{" + facet_.to_string() + "}";
    case VarKind::Tdeg: return "t";
  }
  return "?";
}

// ---- Monomial ----

Monomial Monomial::of(const Variable& v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.p_.push_back({v, exp});
  return m;
}

Monomial Monomial::from_powers(std::vector<VarPower> powers) {
  std::sort(powers.begin(), powers.end(),
            [](const VarPower& a, const VarPower& b) { return a.var < b.var; });
  Monomial m;
  for (const auto& vp : powers) {
    if (vp.exp == 0) continue;
    if (!m.p_.empty() && m.p_.back().var == vp.var) {
      m.p_.back().exp += vp.exp;
    } else {
      m.p_.push_back(vp);
    }
  }
  return m;
}

std::uint32_t Monomial::exponent(const Variable& v) const {
  auto it = std::lower_bound(p_.begin(), p_.end(), v,
                             [](const VarPower& a, const Variable& b) { return a.var < b; });
  return (it != p_.end() && it->var == v) ? it->exp : 0;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& vp : p_) d += vp.exp;
  return d;
}

std::uint32_t Monomial::degree(VarKind kind) const {
  std::uint32_t d = 0;
  for (const auto& vp : p_) {
    if (vp.var.kind() == kind) d += vp.exp;
  }
  return d;
}

bool Monomial::is_squarefree() const {
  return std::all_of(p_.begin(), p_.end(), [](const VarPower& vp) { return vp.exp == 1; });
}

Monomial Monomial::restrict(VarKind kind) const {
  Monomial m;
  for (const auto& vp : p_) {
    if (vp.var.kind() == kind) m.p_.push_back(vp);
  }
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  auto j = other.p_.begin();
  for (const auto& vp : p_) {
    while (j != other.p_.end() && j->var < vp.var) ++j;
    if (j == other.p_.end() || !(j->var == vp.var) || j->exp < vp.exp) return false;
    ++j;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  auto i = p_.begin();
  auto j = o.p_.begin();
  while (i != p_.end() || j != o.p_.end()) {
    if (j == o.p_.end() || (i != p_.end() && i->var < j->var)) {
      r.p_.push_back(*i++);
    } else if (i == p_.end() || j->var < i->var) {
      r.p_.push_back(*j++);
    } else {
      r.p_.push_back({i->var, i->exp + j->exp});
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::try_divide(const Monomial& d) const {
  Monomial r;
  auto j = d.p_.begin();
  for (const auto& vp : p_) {
    if (j != d.p_.end() && j->var < vp.var) return std::nullopt;
    if (j != d.p_.end() && j->var == vp.var) {
      if (j->exp > vp.exp) return std::nullopt;
      if (j->exp < vp.exp) r.p_.push_back({vp.var, vp.exp - j->exp});
      ++j;
    } else {
      r.p_.push_back(vp);
    }
  }
  if (j != d.p_.end()) return std::nullopt;
  return r;
}

Monomial Monomial::operator/(const Monomial& d) const {
  auto q = try_divide(d);
  if (!q) throw Error(ErrorCode::Internal, "monomial " + d.to_string() + " does not divide " + to_string());
  return *q;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  auto i = p_.begin();
  auto j = o.p_.begin();
  while (i != p_.end() || j != o.p_.end()) {
    if (j == o.p_.end() || (i != p_.end() && i->var < j->var)) {
      r.p_.push_back(*i++);
    } else if (i == p_.end() || j->var < i->var) {
      r.p_.push_back(*j++);
    } else {
      r.p_.push_back({i->var, std::max(i->exp, j->exp)});
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  auto j = o.p_.begin();
  for (const auto& vp : p_) {
    while (j != o.p_.end() && j->var < vp.var) ++j;
    if (j != o.p_.end() && j->var == vp.var) r.p_.push_back({vp.var, std::min(vp.exp, j->exp)});
  }
  return r;
}

std::string Monomial::to_string() const {
  if (p_.empty()) return "1";
  std::string s;
  for (const auto& vp : p_) {
    if (!s.empty()) s += ' ';
    s += vp.var.to_string();
    if (vp.exp > 1) s += "^" + std::to_string(vp.exp);
  }
  return s;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ULL; };
  for (const auto& vp : p_) {
    const Variable& v = vp.var;
    mix(static_cast<std::size_t>(v.kind()));
    mix(static_cast<std::size_t>(v.row() * 256 + v.col()));
    for (int i = 0; i < v.facet().size(); ++i) mix(static_cast<std::size_t>(v.facet()[i]));
    mix(vp.exp);
  }
  return h;
}

// ---- Polynomial ----

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) t_.emplace_back(Monomial(), c);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.t_.emplace_back(m, c);
  return p;
}

Polynomial Polynomial::variable(const Variable& v) { return term(Monomial::of(v)); }

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Polynomial p;
  for (auto& tm : terms) {
    if (!p.t_.empty() && p.t_.back().first == tm.first) {
      p.t_.back().second += tm.second;
    } else {
      if (!p.t_.empty() && p.t_.back().second == 0) p.t_.pop_back();
      p.t_.push_back(std::move(tm));
    }
  }
  if (!p.t_.empty() && p.t_.back().second == 0) p.t_.pop_back();
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, const Monomial& b) { return a.first < b; });
  return (it != t_.end() && it->first == m) ? it->second : Rational(0);
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& tm : t_) d = std::max(d, tm.first.degree());
  return d;
}

std::uint32_t Polynomial::degree(VarKind kind) const {
  std::uint32_t d = 0;
  for (const auto& tm : t_) d = std::max(d, tm.first.degree(kind));
  return d;
}

std::vector<Variable> Polynomial::variables() const {
  std::vector<Variable> vs;
  for (const auto& tm : t_) {
    for (const auto& vp : tm.first.powers()) vs.push_back(vp.var);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

namespace {

Polynomial merge(const std::vector<Polynomial::Term>& a, const std::vector<Polynomial::Term>& b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, subtract ? Rational(-j->second) : j->second);
      ++j;
    } else {
      Rational c = subtract ? Rational(i->second - j->second) : Rational(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return Polynomial::from_terms(std::move(out));
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const { return merge(t_, o.t_, false); }
Polynomial Polynomial::operator-(const Polynomial& o) const { return merge(t_, o.t_, true); }

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& tm : p.t_) tm.second = -tm.second;
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Term> out;
  out.reserve(t_.size() * o.t_.size());
  for (const auto& a : t_) {
    for (const auto& b : o.t_) out.emplace_back(a.first * b.first, a.second * b.second);
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c, const Monomial& m) const {
  Polynomial p;
  if (c == 0) return p;
  p.t_.reserve(t_.size());
  for (const auto& tm : t_) p.t_.emplace_back(tm.first * m, tm.second * c);
  // Multiplying by a monomial preserves the canonical order only when m = 1.
  if (!m.is_one()) return from_terms(std::move(p.t_));
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

// ---- MonomialOrder ----

MonomialOrder::MonomialOrder(std::string name, std::vector<KindWeights> weights, TieBreak tie)
    : name_(std::move(name)), weights_(std::move(weights)), tie_(tie) {
  if (tie_ == TieBreak::RevLex) {
    if (weights_.empty() || weights_[0].x <= 0 || weights_[0].T <= 0 || weights_[0].t <= 0) {
      throw Error(ErrorCode::BadIndex, "reverse-lex tie-break needs a positive leading weight");
    }
  }
}

MonomialOrder MonomialOrder::lex_x() { return MonomialOrder("LexX", {}, TieBreak::Lex); }

MonomialOrder MonomialOrder::lex_x_prime() {
  return MonomialOrder("LexXPrime", {KindWeights{0, 0, 1}}, TieBreak::Lex);
}

MonomialOrder MonomialOrder::block_elimination(const std::vector<std::vector<VarKind>>& blocks) {
  std::vector<KindWeights> ws;
  int covered = 0;
  std::string name = "BlockElimination(";
  for (const auto& block : blocks) {
    KindWeights w;
    for (VarKind k : block) {
      int bit = 1 << static_cast<int>(k);
      if (covered & bit) throw Error(ErrorCode::BadIndex, "variable kind in two blocks");
      covered |= bit;
      (k == VarKind::X ? w.x : (k == VarKind::T ? w.T : w.t)) = 1;
      name += (k == VarKind::X ? "x" : (k == VarKind::T ? "T" : "t"));
    }
    name += ';';
    ws.push_back(w);
  }
  if (covered != 7) throw Error(ErrorCode::BadIndex, "blocks must cover x, T and t");
  name.back() = ')';
  // Total degree first keeps the reverse-lex tie-break a monomial order.
  ws.insert(ws.begin(), KindWeights{1, 1, 1});
  return MonomialOrder(name, ws, TieBreak::RevLex);
}

MonomialOrder MonomialOrder::weighted(std::string name, std::vector<KindWeights> weights, TieBreak tie) {
  return MonomialOrder(std::move(name), std::move(weights), tie);
}

long MonomialOrder::weight(std::size_t k, const Monomial& m) const {
  long w = 0;
  for (const auto& vp : m.powers()) w += static_cast<long>(weights_[k].of(vp.var.kind())) * vp.exp;
  return w;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    long wa = weight(k, a);
    long wb = weight(k, b);
    if (wa != wb) return wa > wb ? 1 : -1;
  }
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  if (tie_ == TieBreak::Lex) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pa.size() && j < pb.size()) {
      if (pa[i].var < pb[j].var) return 1;
      if (pb[j].var < pa[i].var) return -1;
      if (pa[i].exp != pb[j].exp) return pa[i].exp > pb[j].exp ? 1 : -1;
      ++i;
      ++j;
    }
    if (i < pa.size()) return 1;
    if (j < pb.size()) return -1;
    return 0;
  }
  auto i = static_cast<long>(pa.size()) - 1;
  auto j = static_cast<long>(pb.size()) - 1;
  while (i >= 0 && j >= 0) {
    const auto& x = pa[static_cast<std::size_t>(i)];
    const auto& y = pb[static_cast<std::size_t>(j)];
    if (y.var < x.var) return -1;  // a has a later variable that b lacks
    if (x.var < y.var) return 1;
    if (x.exp != y.exp) return x.exp < y.exp ? 1 : -1;
    --i;
    --j;
  }
  if (i >= 0) return -1;
  if (j >= 0) return 1;
  return 0;
}

Polynomial::Term leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "leading term of zero");
  const auto& ts = p.terms();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (order.greater(ts[i].first, ts[best].first)) best = i;
  }
  return ts[best];
}

Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) {
  return leading_term(p, order).first;
}

std::vector<Polynomial::Term> sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  std::vector<Polynomial::Term> ts = p.terms();
  std::sort(ts.begin(), ts.end(),
            [&order](const Polynomial::Term& a, const Polynomial::Term& b) { return order.greater(a.first, b.first); });
  return ts;
}

// ---- evaluation ----

namespace {

class Evaluator {
 public:
  explicit Evaluator(const VariableMap& map) : map_(map) {}

  const Polynomial& power(const Variable& v, std::uint32_t e) {
    auto key = std::make_pair(v, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Polynomial val;
    if (e == 1) {
      auto img = map_(v);
      if (!img) throw Error(ErrorCode::UnboundVariable, v.to_string());
      val = std::move(*img);
    } else {
      val = power(v, e - 1) * power(v, 1);
    }
    return cache_.emplace(key, std::move(val)).first->second;
  }

  Polynomial monomial(const Monomial& m) {
    Polynomial r(1);
    for (const auto& vp : m.powers()) r = r * power(vp.var, vp.exp);
    return r;
  }

 private:
  const VariableMap& map_;
  std::map<std::pair<Variable, std::uint32_t>, Polynomial> cache_;
};

}  // namespace

Polynomial evaluate(const Polynomial& p, const VariableMap& map) {
  Evaluator ev(map);
  std::vector<Polynomial::Term> acc;
  for (const auto& [m, c] : p.terms()) {
    Polynomial img = ev.monomial(m);
    for (const auto& [mm, cc] : img.terms()) acc.emplace_back(mm, cc * c);
  }
  return Polynomial::from_terms(std::move(acc));
}

Polynomial evaluate(const Monomial& m, const VariableMap& map) {
  Evaluator ev(map);
  return ev.monomial(m);
}

// ---- division ----

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  auto [mf, cf] = leading_term(f, order);
  auto [mg, cg] = leading_term(g, order);
  Monomial l = mf.lcm(mg);
  return f.scaled(Rational(1 / cf), l / mf) - g.scaled(Rational(1 / cg), l / mg);
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, const MonomialOrder& order) {
  std::vector<Polynomial::Term> leads;
  leads.reserve(divisors.size());
  for (const auto& g : divisors) leads.push_back(leading_term(g, order));
  Polynomial p = f;
  std::vector<Polynomial::Term> rem;
  while (!p.is_zero()) {
    auto [m, c] = leading_term(p, order);
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (auto q = m.try_divide(leads[i].first)) {
        p = p - divisors[i].scaled(Rational(c / leads[i].second), *q);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.emplace_back(m, c);
      p = p - Polynomial::term(m, c);
    }
  }
  return Polynomial::from_terms(std::move(rem));
}

// ---- rendering ----

std::string to_string(const Rational& c) {
  Rational r = c;
  r.canonicalize();
  return r.get_str();
}

std::string to_string(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : sorted_terms(p, order)) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += to_string(a);
    } else {
      if (a != 1) s += to_string(a) + " ";
      s += m.to_string();
    }
  }
  return s;
}

}  // namespace rees
