#pragma once

// Canonical text form of scalars and the flat key=value scenario format.
//
// Scenario grammar, one entry per line:
//   line    := blank | '#' comment | key '=' value
//   key     := name | type | rank | N | torus | signs | xi | depth | task | module | out
//   list    := '[' item (',' item)* ']'
// `torus` holds exponents a_i with eps_i(t) = zeta_N^{a_i}; `signs` holds + or - per simple root;
// `xi` holds rationals in epsilon coordinates.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/rootdata.hpp"
#include "qcc/scalars.hpp"

namespace qcc {

/// Malformed input text; the CLI maps it to exit status 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that names an unsupported or inconsistent configuration (exit status 3).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits on " + " outside parentheses.
inline std::vector<std::string> splitTerms(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s.compare(i, 3, " + ") == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 3;
      i += 2;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

inline long parseInt(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("not an integer: '" + s + "'");
  return v;
}

inline Rat parseRat(const std::string& s) {
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos)
    throw ParseError("not a rational number: '" + s + "'");
  Rat r;
  try {
    r = Rat(s[0] == '+' ? s.substr(1) : s);
  } catch (const std::exception&) {
    throw ParseError("not a rational number: '" + s + "'");
  }
  if (r.get_den() == 0) throw ParseError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline Cyclotomic parseCyclotomic(const std::string& s, int order) {
  if (s == "0") return Cyclotomic();
  std::vector<mpq_class> coeffs;
  for (const auto& term : splitTerms(s)) {
    std::size_t star = term.find("*z^");
    std::size_t k = 0;
    if (star != std::string::npos) {
      long e = parseInt(term.substr(star + 3));
      if (e < 0) throw ParseError("negative power of z");
      k = static_cast<std::size_t>(e);
    }
    if (k > 0 && order == 0) throw ParseError("z used without a cyclotomic order prefix");
    if (coeffs.size() <= k) coeffs.resize(k + 1);
    coeffs[k] += parseRat(term.substr(0, star));
  }
  if (order == 0) return Cyclotomic(coeffs.at(0));
  return Cyclotomic(order, std::move(coeffs));
}

inline LaurentV parseLaurent(const std::string& s, int order) {
  if (s == "0") return LaurentV();
  LaurentV acc;
  for (const auto& term : splitTerms(s)) {
    if (term.size() < 2 || term.front() != '(') throw ParseError("malformed Laurent term: '" + term + "'");
    std::size_t close = term.rfind(')');
    int e = 0;
    std::string rest = term.substr(close + 1);
    if (!rest.empty()) {
      if (rest.rfind("*v^", 0) != 0) throw ParseError("malformed Laurent term: '" + term + "'");
      e = static_cast<int>(parseInt(rest.substr(3)));
    }
    acc += LaurentV::monomial(parseCyclotomic(term.substr(1, close - 1), order), e);
  }
  return acc;
}

}  // namespace detail

/// Canonical text of an element of K; "z<N>:" prefixes elements that involve zeta_N.
inline std::string toText(const FieldElem& x) {
  std::string body = x.str();
  if (body.find("z^") == std::string::npos) return body;
  return "z" + std::to_string(x.order()) + ":" + body;
}

/// Inverse of toText.
inline FieldElem parseFieldElem(const std::string& text) {
  std::string s = text;
  int order = 0;
  if (!s.empty() && s[0] == 'z') {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("missing ':' after cyclotomic order");
    order = static_cast<int>(detail::parseInt(s.substr(1, colon - 1)));
    if (order <= 0) throw ParseError("cyclotomic order must be positive");
    s = s.substr(colon + 1);
  }
  if (!s.empty() && s[0] == '[') {
    auto mid = s.find("]/[");
    if (mid == std::string::npos || s.back() != ']') throw ParseError("malformed fraction: '" + text + "'");
    auto num = detail::parseLaurent(s.substr(1, mid - 1), order);
    auto den = detail::parseLaurent(s.substr(mid + 3, s.size() - mid - 4), order);
    if (den.isZero()) throw ParseError("zero denominator: '" + text + "'");
    return FieldElem(num, den);
  }
  return FieldElem(detail::parseLaurent(s, order));
}

inline std::string toText(const Rat& r) { return r.get_str(); }

struct Scenario {
  std::string name;
  RootType type = RootType::A;
  int rank = 1;
  int order = 1;
  std::vector<int> torus;
  std::vector<int> signs;
  EVec xi;  ///< empty means zero
  int depth = 3;
  std::string task;
  std::string module = "natural";
  std::optional<std::string> out;
};

inline const std::set<std::string>& knownTasks() {
  static const std::set<std::string> tasks{"character", "shapovalov", "twist", "decompose", "irreducibility",
                                           "starprod"};
  return tasks;
}

namespace detail {

inline std::vector<std::string> parseList(const std::string& key, const std::string& value) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']')
    throw ParseError(key + ": expected a bracketed list");
  std::vector<std::string> out;
  std::string inner = value.substr(1, value.size() - 2);
  if (trim(inner).empty()) return out;
  std::stringstream in(inner);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError(key + ": empty list entry");
    out.push_back(item);
  }
  return out;
}

}  // namespace detail

inline Scenario parseScenario(std::istream& in) {
  static const std::set<std::string> keys{"name", "type", "rank", "N", "torus", "signs",
                                          "xi", "depth", "task", "module", "out"};
  std::map<std::string, std::string> kv;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineNo) + ": expected key = value");
    auto key = detail::trim(t.substr(0, eq));
    auto value = detail::trim(t.substr(eq + 1));
    if (!keys.count(key)) throw ParseError("line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ParseError("line " + std::to_string(lineNo) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  for (const char* k : {"type", "rank", "N", "torus", "signs", "task"})
    if (!kv.count(k)) throw ParseError(std::string("missing key '") + k + "'");
  Scenario s;
  s.name = kv.count("name") ? kv["name"] : "";
  if (kv["type"].size() != 1 || std::string("ABCD").find(kv["type"][0]) == std::string::npos)
    throw ParseError("type must be one of A, B, C, D");
  s.type = parseRootType(kv["type"]);
  s.rank = static_cast<int>(detail::parseInt(kv["rank"]));
  s.order = static_cast<int>(detail::parseInt(kv["N"]));
  try {
    for (const auto& a : detail::parseList("torus", kv["torus"]))
      s.torus.push_back(static_cast<int>(detail::parseInt(a)));
  } catch (const ParseError& e) {
    throw ValidationError(std::string("malformed torus vector: ") + e.what());
  }
  for (const auto& a : detail::parseList("signs", kv["signs"])) {
    if (a == "+" || a == "1" || a == "+1")
      s.signs.push_back(1);
    else if (a == "-" || a == "-1")
      s.signs.push_back(-1);
    else
      throw ParseError("signs: expected + or -, got '" + a + "'");
  }
  if (kv.count("xi"))
    for (const auto& a : detail::parseList("xi", kv["xi"])) s.xi.push_back(detail::parseRat(a));
  if (kv.count("depth")) s.depth = static_cast<int>(detail::parseInt(kv["depth"]));
  s.task = kv["task"];
  if (kv.count("module")) s.module = kv["module"];
  if (kv.count("out")) s.out = kv["out"];
  return s;
}

inline Scenario loadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario '" + path + "'");
  return parseScenario(in);
}

/// Writes a scenario back in the flat format; parseScenario(writeScenario(s)) reproduces s.
inline std::string writeScenario(const Scenario& s) {
  std::ostringstream out;
  auto list = [&](const auto& xs, auto f) {
    out << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << f(xs[i]);
    out << "]\n";
  };
  if (!s.name.empty()) out << "name = " << s.name << "\n";
  out << "type = " << typeLetter(s.type) << "\nrank = " << s.rank << "\nN = " << s.order << "\ntorus = ";
  list(s.torus, [](int a) { return std::to_string(a); });
  out << "signs = ";
  list(s.signs, [](int a) { return std::string(a > 0 ? "+" : "-"); });
  if (!s.xi.empty()) {
    out << "xi = ";
    list(s.xi, [](const Rat& r) { return r.get_str(); });
  }
  out << "depth = " << s.depth << "\ntask = " << s.task << "\nmodule = " << s.module << "\n";
  if (s.out) out << "out = " << *s.out << "\n";
  return out.str();
}

/// Rescales the torus exponents to a new cyclotomic order, which must be a multiple of the old one.
inline void changeOrder(Scenario& s, int order) {
  if (order <= 0 || order % s.order != 0)
    throw ValidationError("--N " + std::to_string(order) + " is not a multiple of N = " + std::to_string(s.order));
  int f = order / s.order;
  for (auto& a : s.torus) a *= f;
  s.order = order;
}

/// Checks a scenario against the root datum; returns the validated root system.
inline RootSystem validate(const Scenario& s) {
  std::optional<RootSystem> rs;
  try {
    rs.emplace(s.type, s.rank);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (s.order <= 0) throw ValidationError("N must be positive");
  if (static_cast<int>(s.torus.size()) != rs->dimE())
    throw ValidationError("torus needs " + std::to_string(rs->dimE()) + " exponents, got " +
                          std::to_string(s.torus.size()));
  for (int a : s.torus)
    if (a < 0 || a >= s.order) throw ValidationError("torus exponents must lie in [0, N)");
  if (static_cast<int>(s.signs.size()) != rs->rank())
    throw ValidationError("signs needs " + std::to_string(rs->rank()) + " entries");
  if (!s.xi.empty() && static_cast<int>(s.xi.size()) != rs->dimE())
    throw ValidationError("xi needs " + std::to_string(rs->dimE()) + " entries");
  if (!s.xi.empty())
    for (int i = 0; i < rs->rank(); ++i)
      if (rs->coroot(s.xi, rs->simple(i)).get_den() != 1) throw ValidationError("xi is not an integral weight");
  if (s.depth < 0 || s.depth > 8) throw ValidationError("depth must lie in [0, 8]");
  if (!knownTasks().count(s.task)) throw ValidationError("unknown task '" + s.task + "'");
  if (s.module != "natural" && s.module != "spin") throw ValidationError("module must be natural or spin");
  if (s.module == "spin" && rs->type() != RootType::B) throw ValidationError("the spin module needs type B");
  try {
    baseWeight(*rs, TorusPoint{s.order, s.torus}, s.signs);
  } catch (const std::domain_error& e) {
    throw ValidationError(e.what());
  }
  return *rs;
}

}  // namespace qcc
