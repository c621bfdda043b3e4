#pragma once

// Scenario tasks rendered as deterministic JSON.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcc/io.hpp"
#include "qcc/projector.hpp"
#include "qcc/shapovalov.hpp"
#include "qcc/starprod.hpp"

namespace qcc {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "qcc.result/1";

inline Json toJson(const RootVec& mu) { return Json(mu); }

inline Json toJson(const EVec& x) {
  Json a = Json::array();
  for (const auto& r : x) a.push_back(toText(r));
  return a;
}

inline Json toJson(const MultWeight& w) {
  return Json{{"order", w.order}, {"unity", w.unity}, {"x", toJson(w.x)}};
}

inline Json toJson(const NilpotentAlgebra& alg, const AlgElem<FieldElem>& x) {
  Json a = Json::array();
  for (const auto& [w, c] : x.terms(alg)) a.push_back(Json{{"word", w.str()}, {"coeff", toText(c)}});
  return a;
}

inline Json toJson(const Matrix<FieldElem>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(toText(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Json toJson(const BlockElement& e) {
  Json a = Json::array();
  for (const auto& [m, c] : e.coeffs) a.push_back(Json{{"index", m}, {"coeff", toText(c)}});
  return a;
}

inline Json toJson(const Scenario& s) {
  Json j{{"name", s.name},
         {"type", std::string(1, typeLetter(s.type))},
         {"rank", s.rank},
         {"N", s.order},
         {"torus", s.torus},
         {"signs", s.signs},
         {"depth", s.depth},
         {"task", s.task},
         {"module", s.module}};
  j["xi"] = toJson(s.xi);
  return j;
}

/// Highest weight of the dual of L(nu): -w_0 nu.
inline EVec dualHighestWeight(const RootSystem& rs, const EVec& nu) {
  if (rs.type() != RootType::A) return nu;
  EVec d(nu.rbegin(), nu.rend());
  for (auto& x : d) x = -x;
  return d;
}

/// Objects shared by every task of one scenario.
struct ScenarioContext {
  Scenario scenario;
  RootSystem rs;
  std::shared_ptr<NilpotentAlgebra> alg;
  std::shared_ptr<ShapovalovEngine> eng;
  TorusPoint torus;
  CentralizerData cd;
  MultWeight lambda;
  EVec xi;

  explicit ScenarioContext(Scenario s)
      : scenario(std::move(s)),
        rs(validate(scenario)),
        alg(std::make_shared<NilpotentAlgebra>(rs)),
        eng(std::make_shared<ShapovalovEngine>(alg, 4)),
        torus{scenario.order, scenario.torus},
        cd(centralizer(rs, torus)),
        lambda(baseWeight(rs, torus, scenario.signs)),
        xi(scenario.xi.empty() ? EVec(rs.dimE(), Rat(0)) : scenario.xi) {}

  int depth() const { return scenario.depth; }

  std::shared_ptr<const FiniteModule<FieldElem>> module() const {
    return finiteModule<FieldElem>(alg, scenario.module == "spin" ? spinHighestWeight(rs) : naturalHighestWeight(rs));
  }
};

/// Outcome of a task: a JSON body and, when some certificate fails, a diagnostic.
struct TaskResult {
  Json body = Json::object();
  std::optional<std::string> diagnostic;
};

inline TaskResult characterTask(const ScenarioContext& c) {
  TaskResult r;
  auto gp = generalizedParabolic(*c.eng, c.cd, c.lambda, c.xi, c.depth());
  auto xk = kCharacter(c.rs, c.cd, c.xi, c.depth());
  auto base = productCharacter(c.rs, c.cd, c.depth());
  Json weights = Json::array();
  bool match = true;
  for (const auto& mu : c.rs.cone(c.depth())) {
    mpz_class expected = 0;
    for (const auto& [a, ca] : xk) {
      RootVec b = mu - a;
      if (!isNonnegative(b) || ca == 0) continue;
      auto it = base.find(b);
      if (it != base.end()) expected += ca * it->second;
    }
    std::size_t dim = gp.module->dim(mu);
    if (expected != static_cast<long>(dim)) match = false;
    weights.push_back(Json{{"depth", toJson(mu)}, {"dim", dim}, {"expected", expected.get_si()}});
  }
  r.body["lambda"] = toJson(c.lambda);
  r.body["generators"] = Json::array();
  for (const auto& g : gp.generators) r.body["generators"].push_back(Json{{"root", toJson(g.root)}, {"m", g.m}});
  r.body["weights"] = weights;
  r.body["matches_product_formula"] = match;
  if (!match) r.diagnostic = "weight-space dimensions differ from the product formula";
  return r;
}

inline TaskResult shapovalovTask(const ScenarioContext& c) {
  TaskResult r;
  auto zeta = c.lambda.plus(c.xi);
  Json elements = Json::array();
  for (const auto& [beta, m] : kkScan(c.rs, zeta, c.depth())) {
    Json e{{"beta", toJson(beta)}, {"m", m}};
    try {
      auto elt = c.eng->element(beta, m, zeta);
      e["extremal"] = elt.extremal;
      e["classical_ratio"] = elt.classicalRatio ? Json(toText(*elt.classicalRatio)) : Json(nullptr);
      e["factor_valuations"] = elt.factorValuations;
      e["phi"] = toJson(*c.alg, elt.value);
      if (!elt.classicalRatio) r.diagnostic = "classical limit of phi is not a power of f_beta";
      if (height(beta) > 1) {
        auto rep = quantizabilityCheck(*c.eng, c.torus, zeta, beta, m);
        Json nodes = Json::array();
        for (const auto& n : rep.nodes)
          nodes.push_back(Json{{"weight", toJson(n.weight)},
                               {"singular", n.singular},
                               {"root_splitting", n.rootSplitting},
                               {"regular_at_one", n.regularAtOne},
                               {"vanishes_at_one", n.vanishesAtOne}});
        e["quantizability"] = Json{{"nodes", nodes},
                                   {"regular", rep.regular},
                                   {"divisibility_checked", rep.divisibilityChecked},
                                   {"divisible", rep.divisible}};
      }
    } catch (const std::domain_error& ex) {
      e["error"] = ex.what();
      r.diagnostic = ex.what();
    }
    elements.push_back(e);
  }
  r.body["zeta"] = toJson(zeta);
  r.body["elements"] = elements;
  return r;
}

inline Json twistJson(const TwistData& td) {
  Json weights = Json::array();
  for (const auto& w : td.weights)
    weights.push_back(Json{{"depth", toJson(w.mu)},
                           {"weight", toJson(w.weight)},
                           {"vplus_dim", w.basis.size()},
                           {"determinant", toText(w.determinant)},
                           {"inverse_verified", w.inverseVerified}});
  Json j{{"weights", weights}, {"invertible", td.invertible}};
  j["diagnostic"] = td.diagnostic ? Json(*td.diagnostic) : Json(nullptr);
  return j;
}

inline TaskResult twistTask(const ScenarioContext& c) {
  TaskResult r;
  auto v = c.module();
  int reach = c.depth();
  for (const auto& mu : v->depths()) reach = std::max(reach, height(mu));
  auto gp = generalizedParabolic(*c.eng, c.cd, c.lambda, c.xi, reach);
  RootVectors rv(c.alg, convexOrder(c.rs, false));
  auto td = extremalTwist(c.alg, v, gp, rv);
  r.body = twistJson(td);
  if (!td.invertible) r.diagnostic = td.diagnostic.value_or("extremal twist not invertible");
  return r;
}

inline TaskResult decomposeTask(const ScenarioContext& c) {
  TaskResult r;
  auto v = c.module();
  int height = 0;
  for (const auto& mu : v->depths()) height = std::max(height, qcc::height(mu));
  auto gp = generalizedParabolic(*c.eng, c.cd, c.lambda, c.xi, c.depth() + height);
  RootVectors rv(c.alg, convexOrder(c.rs, false));
  auto td = extremalTwist(c.alg, v, gp, rv);
  auto dec = decomposeTensor(c.alg, v, gp, td, c.cd, c.depth());
  Json summands = Json::array();
  for (const auto& s : dec.summands) {
    Json ch = Json::array();
    for (const auto& [mu, d] : s.character) ch.push_back(Json{{"depth", toJson(mu)}, {"dim", d}});
    summands.push_back(Json{{"depth", toJson(s.mu)}, {"nu", toJson(s.nu)}, {"character", ch}});
  }
  auto counts = [](const std::map<EVec, long>& m) {
    Json a = Json::array();
    for (const auto& [k, n] : m) a.push_back(Json{{"weight", toJson(k)}, {"count", n}});
    return a;
  };
  r.body = Json{{"twist", twistJson(td)},
                {"summands", summands},
                {"multiplicities", counts(dec.multiplicities)},
                {"classical_hom_counts", counts(dec.classical)},
                {"direct", dec.direct},
                {"balanced", dec.balanced},
                {"multiplicities_match", dec.multiplicitiesMatch},
                {"summand_characters_match", dec.summandCharactersMatch}};
  if (dec.diagnostic)
    r.diagnostic = dec.diagnostic;
  else if (!(dec.direct && dec.balanced && dec.multiplicitiesMatch && dec.summandCharactersMatch))
    r.diagnostic = "decomposition certificate failed";
  return r;
}

inline TaskResult irreducibilityTask(const ScenarioContext& c) {
  TaskResult r;
  auto gp = generalizedParabolic(*c.eng, c.cd, c.lambda, c.xi, c.depth());
  auto rep = irreducibilityCheck(gp.module, c.depth());
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(Json{{"depth", toJson(e.mu)},
                           {"dim", e.dim},
                           {"gram_determinant", toText(e.gramDeterminant)},
                           {"singular", e.singular}});
  r.body = Json{{"entries", entries}, {"irreducible", rep.irreducible}};
  if (!rep.irreducible) r.diagnostic = "singular vectors below the top";
  return r;
}

inline TaskResult starprodTask(const ScenarioContext& c) {
  TaskResult r;
  StarProduct sp(*c.eng, c.cd, c.lambda, c.depth());
  Json lift = Json::array();
  for (const auto& comp : sp.lift().components) {
    Json words = Json::array();
    for (const auto& w : comp.words) words.push_back(Word{false, w}.str());
    lift.push_back(Json{{"depth", toJson(comp.mu)}, {"words", words}, {"coeffs", toJson(comp.coeffs)}});
  }
  auto cl = classicalLimitS(sp.lift());
  r.body["s_lift"] = lift;
  r.body["s_lift_classical_limit"] = cl.passes;
  if (!cl.passes) r.diagnostic = "S-lift does not reduce to 1 x 1 at q = 1";

  std::shared_ptr<const FiniteModule<FieldElem>> v = c.module();
  std::shared_ptr<const FiniteModule<FieldElem>> dual =
      finiteModule<FieldElem>(c.alg, dualHighestWeight(c.rs, v->top().x));
  auto block = sp.blocks().get({v, dual});
  EVec zero(c.rs.dimE(), Rat(0));
  auto basis = sp.invariants(block, zero, zero);
  long expected = classicalHomCounts(c.rs, c.cd, blockWeights(*block), zero)[zero];
  Json inv = Json::array();
  for (const auto& b : basis) inv.push_back(toJson(b.element));
  r.body["invariants"] = inv;
  r.body["invariants_expected_dim"] = expected;
  if (static_cast<long>(basis.size()) != expected) r.diagnostic = "invariant dimension differs from Hom_k count";

  Json table = Json::array();
  bool closed = true, classical = true;
  if (block->span() > sp.lift().depth) {
    r.body["table"] = nullptr;
    r.body["table_skipped"] = "depth below the block span";
    return r;
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto p = sp.multiply(basis[i], basis[j]);
      closed = closed && sp.isInvariant(p);
      auto lim = limitAtOne(canonical(p.element));
      auto plain = limitAtOne(canonical(sp.plainProduct(basis[i], basis[j]).element));
      classical = classical && lim && plain && *lim == *plain;
      table.push_back(Json{{"left", i}, {"right", j}, {"product", toJson(p.element)}});
    }
  r.body["table"] = table;
  r.body["products_invariant"] = closed;
  r.body["classical_table_matches"] = classical;
  if (!closed || !classical) r.diagnostic = "star product table certificate failed";
  return r;
}

/// Runs the scenario's task; the envelope carries the schema version and the scenario echo.
inline Json runScenario(const Scenario& s) {
  ScenarioContext c(s);
  TaskResult r;
  try {
    if (s.task == "character")
      r = characterTask(c);
    else if (s.task == "shapovalov")
      r = shapovalovTask(c);
    else if (s.task == "twist")
      r = twistTask(c);
    else if (s.task == "decompose")
      r = decomposeTask(c);
    else if (s.task == "irreducibility")
      r = irreducibilityTask(c);
    else
      r = starprodTask(c);
  } catch (const std::domain_error& e) {
    r.body = nullptr;
    r.diagnostic = e.what();
  }
  Json out{{"schema", kSchemaVersion}, {"scenario", toJson(s)}, {"result", r.body}};
  out["status"] = r.diagnostic ? "diagnostic" : "ok";
  out["diagnostic"] = r.diagnostic ? Json(*r.diagnostic) : Json(nullptr);
  return out;
}

}  // namespace qcc
