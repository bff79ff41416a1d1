#include "rees/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "rees/dfi.hpp"

namespace rees {

using nlohmann::json;

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  Polynomial parse() {
    Polynomial total;
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      total += parse_term() * Polynomial(sign);
      first = false;
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
  }

  long number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000000L) fail("number too large");
    }
    return v;
  }

  // "{1,4,5}", "{145}" or bare "145".
  std::vector<int> index_list(char close) {
    std::vector<int> out;
    std::string body;
    while (pos_ < s_.size() && s_[pos_] != close) body += s_[pos_++];
    if (peek() != close) fail(std::string("missing '") + close + "'");
    ++pos_;
    if (body.find(',') != std::string::npos) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) fail("empty index");
        item = item.substr(b, e - b + 1);
        for (char c : item) {
          if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad index '" + item + "'");
        }
        out.push_back(std::stoi(item));
      }
    } else {
      for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(std::string("bad index character '") + c + "'");
        out.push_back(c - '0');
      }
    }
    if (out.empty()) fail("empty index list");
    return out;
  }

  std::vector<int> bare_digits() {
    std::vector<int> out;
    while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(s_[pos_++] - '0');
    if (out.empty()) fail("expected indices");
    return out;
  }

  Facet facet(const std::vector<int>& cols) {
    try {
      return Facet(cols);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Polynomial factor() {
    char c = peek();
    if (c == 'x') {
      ++pos_;
      if (peek() == '_') ++pos_;
      std::vector<int> rc;
      if (peek() == '{') {
        ++pos_;
        rc = index_list('}');
      } else {
        rc = bare_digits();
      }
      if (rc.size() != 2) fail("x needs a row and a column");
      if (rc[0] < 1 || rc[1] < 1 || rc[0] > 255 || rc[1] > 255) fail("x index out of range");
      return Polynomial::variable(Variable::x(rc[0], rc[1]));
    }
    if (c == 'T') {
      ++pos_;
      if (peek() == '_') ++pos_;
      std::vector<int> cols;
      if (peek() == '{') {
        ++pos_;
        cols = index_list('}');
      } else {
        cols = bare_digits();
      }
      return Polynomial::variable(Variable::T(facet(cols)));
    }
    if (c == 't') {
      ++pos_;
      return Polynomial::variable(Variable::t());
    }
    if (c == '[') {
      ++pos_;
      Facet a = facet(index_list(']'));
      return minor(a.size(), a);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = number();
      long den = 1;
      if (peek() == '/') {
        ++pos_;
        den = number();
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial(q);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Polynomial parse_term() {
    Polynomial p(1);
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (c == '\0' || c == '+' || c == '-') break;
      Polynomial f = factor();
      if (peek() == '^') {
        ++pos_;
        long e = number();
        if (e > 1000) fail("exponent too large");
        f = f.pow(static_cast<unsigned>(e));
      }
      p = p * f;
      any = true;
    }
    if (!any) fail("empty term");
    return p;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(what) + " must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

json facets_json(const std::vector<Facet>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(f.to_vector());
  return a;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) { return PolyParser(text).parse(); }

Monomial parse_monomial(const std::string& text) {
  Polynomial p = parse_polynomial(text);
  if (p.size() != 1 || p.terms().front().second != 1) {
    throw Error(ErrorCode::ParseError, "expected a monomial with coefficient 1: \"" + text + "\"");
  }
  return p.terms().front().first;
}

SimplicialComplex parse_complex(const std::string& json_text, std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "complex must be a JSON object");
  static const std::set<std::string> known = {"m", "n", "facets", "cliques", "name", "comment"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key) && warnings) warnings->push_back("ignoring unknown key \"" + key + "\"");
  }
  if (!j.contains("m") || !j["m"].is_number_integer()) throw Error(ErrorCode::ParseError, "missing integer \"m\"");
  const int m = j["m"].get<int>();
  if (m < 1 || m > kMaxFacetSize) throw Error(ErrorCode::ParseError, "m out of range");
  const bool has_f = j.contains("facets");
  const bool has_c = j.contains("cliques");
  if (has_f == has_c) throw Error(ErrorCode::ParseError, "give exactly one of \"facets\" and \"cliques\"");
  std::vector<std::vector<int>> sets;
  const json& arr = has_f ? j["facets"] : j["cliques"];
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, "facet list must be an array");
  int max_vertex = 0;
  for (const auto& e : arr) {
    auto v = int_list(e, has_f ? "facet" : "clique");
    for (int x : v) max_vertex = std::max(max_vertex, x);
    sets.push_back(std::move(v));
  }
  int n = max_vertex;
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw Error(ErrorCode::ParseError, "\"n\" must be an integer");
    n = j["n"].get<int>();
  }
  try {
    if (has_c) return complex_from_cliques(m, n, sets);
    std::vector<Facet> fs;
    for (auto& v : sets) {
      std::sort(v.begin(), v.end());
      fs.emplace_back(v);
    }
    return SimplicialComplex(m, n, std::move(fs), warnings);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

SimplicialComplex load_complex(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_complex(ss.str(), warnings);
}

json complex_to_json(const SimplicialComplex& delta) {
  return json{{"m", delta.m()}, {"n", delta.n()}, {"facets", facets_json(delta.facets())}};
}

std::string poly_text(const Polynomial& p, const MonomialOrder& order) { return to_string(p, order); }

json to_json(const GeneratorSet& gs, int m) {
  json counts = json::object();
  for (Family f : {Family::Koszul, Family::LinearSyzygy, Family::Plucker}) counts[to_string(f)] = gs.count(f);
  json items = json::array();
  for (const auto& it : gs.items) {
    json e{{"family", to_string(it.family)}, {"poly", poly_text(it.poly)}, {"facets", facets_json(it.facets)}};
    if (it.marked) e["marked"] = it.marked->to_string();
    if (it.family == Family::LinearSyzygy && it.row > 0) e["row"] = it.row;
    items.push_back(std::move(e));
  }
  return json{{"target", to_string(gs.target)}, {"m", m}, {"count", gs.items.size()}, {"counts", counts}, {"items", items}};
}

Target parse_target(const std::string& name) {
  if (name == "rees-initial") return Target::ReesInitial;
  if (name == "fiber-initial") return Target::FiberInitial;
  if (name == "rees" || name == "rees-lifted") return Target::ReesLifted;
  if (name == "fiber" || name == "fiber-lifted") return Target::FiberLifted;
  if (name == "symmetric") return Target::SymmetricLifted;
  throw Error(ErrorCode::ParseError, "unknown target \"" + name + "\"");
}

GeneratorSet generator_set_from_json(const json& j) {
  try {
    GeneratorSet gs;
    gs.target = parse_target(j.at("target").get<std::string>());
    for (const auto& e : j.at("items")) {
      GeneratorItem it;
      const std::string fam = e.at("family").get<std::string>();
      if (fam == "Koszul") it.family = Family::Koszul;
      else if (fam == "LinearSyzygy") it.family = Family::LinearSyzygy;
      else if (fam == "Plucker") it.family = Family::Plucker;
      else throw Error(ErrorCode::ParseError, "unknown family \"" + fam + "\"");
      it.poly = parse_polynomial(e.at("poly").get<std::string>());
      if (e.contains("marked")) it.marked = parse_monomial(e["marked"].get<std::string>());
      if (e.contains("facets")) {
        for (const auto& f : e["facets"]) it.facets.emplace_back(int_list(f, "facet"));
      }
      if (e.contains("row")) it.row = e["row"].get<int>();
      gs.items.push_back(std::move(it));
    }
    return gs;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad generator file: ") + e.what());
  }
}

json to_json(const SagbiReport& rep) {
  json items = json::array();
  for (const auto& r : rep.items) {
    items.push_back(json{{"family", to_string(r.family)},
                         {"facets", facets_json(r.facets)},
                         {"initial_text", poly_text(r.initial)},
                         {"lift_text", poly_text(r.lift)},
                         {"steps", r.trace.steps.size()},
                         {"remainder_zero", r.trace.remainder.is_zero()},
                         {"strictly_descending", r.trace.strictly_descending},
                         {"lift_dominated", r.lift_dominated},
                         {"lift_in_kernel", r.lift_in_kernel}});
  }
  return json{{"verified", rep.verified}, {"items", items}};
}

json to_json(const Classification& cl) {
  json certs = json::array();
  for (const auto& c : cl.certificates) {
    certs.push_back(json{{"poly", poly_text(c.poly, cl.rees.order)},
                         {"t_degree", c.poly.degree(VarKind::T)},
                         {"reduction_steps", c.reduction_steps},
                         {"remainder", poly_text(c.remainder, cl.rees.order)}});
  }
  return json{{"type", to_string(cl.type)},
              {"truncated", cl.truncated},
              {"rees_basis_size", cl.rees.generators.size()},
              {"symmetric_size", cl.symmetric.generators.size()},
              {"fiber_size", cl.fiber.generators.size()},
              {"certificates", certs}};
}

json to_json(const EqualityReport& rep, const MonomialOrder& order) {
  json j{{"equal", rep.equal}, {"truncated", rep.truncated}};
  if (rep.witness) {
    j["witness"] = poly_text(*rep.witness, order);
    j["witness_side"] = rep.side;
    j["reduction_steps"] = rep.witness_steps;
  }
  return j;
}

json to_json(const IdealBasis& basis) {
  json gens = json::array();
  for (const auto& g : basis.generators) gens.push_back(poly_text(g, basis.order));
  return json{{"order", basis.order.name()},
              {"is_groebner", basis.is_groebner},
              {"truncated", basis.truncated},
              {"generators", gens}};
}

}  // namespace rees
