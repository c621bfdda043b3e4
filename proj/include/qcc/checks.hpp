#pragma once

// Acceptance criteria and module property suites shared by the CLI and the test binaries.

#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcc/report.hpp"

namespace qcc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Every criterion compares elements of K for equality; no numeric tolerance is involved.
inline constexpr const char* kTolerance = "exact equality in K";

namespace checks {

inline Scenario shippedScenario(const std::string& dir, const std::string& file) {
  return loadScenario((std::filesystem::path(dir) / file).string());
}

inline std::vector<std::string> scenarioFiles(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".scn") files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  return files;
}

inline CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

/// Weight-space dimensions of U_q(n_-) against Kostant's partition function.
inline bool pbwMatches(const NilpotentAlgebra& alg, int depth, std::string& detail) {
  for (const auto& mu : alg.roots().cone(depth)) {
    std::size_t dim = alg.basis(mu).dim();
    mpz_class k = kostant(alg.roots(), mu);
    if (k != static_cast<long>(dim)) {
      detail = alg.roots().label() + " dimension " + std::to_string(dim) + " != K(" + rootString(mu) +
               ") = " + k.get_str();
      return false;
    }
  }
  return true;
}

/// The first of +-eps_i that is k-dominant, as a nonzero xi.
inline EVec sampleXi(const RootSystem& rs, const CentralizerData& cd) {
  for (int sign : {1, -1})
    for (int i = 0; i < rs.dimE(); ++i) {
      EVec xi(rs.dimE(), Rat(0));
      xi[i] = sign;
      bool dominant = true;
      for (const auto& a : cd.simpleK) dominant = dominant && rs.coroot(xi + cd.kappa, a) > 0;
      if (dominant) return xi;
    }
  throw std::logic_error("no k-dominant unit weight");
}

inline Decomposition decompose(const ScenarioContext& c, std::shared_ptr<const FiniteModule<FieldElem>> v,
                               const EVec& xi, int depth) {
  int h = 0;
  for (const auto& mu : v->depths()) h = std::max(h, height(mu));
  auto gp = generalizedParabolic(*c.eng, c.cd, c.lambda, xi, depth + h);
  RootVectors rv(c.alg, convexOrder(c.rs, false));
  auto td = extremalTwist(c.alg, v, gp, rv);
  return decomposeTensor(c.alg, v, gp, td, c.cd, depth);
}

inline bool certified(const Decomposition& d) {
  return !d.diagnostic && d.direct && d.balanced && d.multiplicitiesMatch && d.summandCharactersMatch;
}

/// Finds every string under the given keys and checks the text round trip of K.
inline bool scalarsRoundTrip(const Json& j, std::size_t& count) {
  static const std::set<std::string> keys{"coeff", "coeffs", "determinant", "gram_determinant", "classical_ratio"};
  std::function<bool(const Json&, bool)> walk = [&](const Json& x, bool scalar) -> bool {
    if (x.is_string() && scalar) {
      ++count;
      return toText(parseFieldElem(x.get<std::string>())) == x.get<std::string>();
    }
    if (x.is_array()) {
      for (const auto& y : x)
        if (!walk(y, scalar)) return false;
    }
    if (x.is_object()) {
      for (const auto& [k, y] : x.items())
        if (!walk(y, keys.count(k) > 0)) return false;
    }
    return true;
  };
  return walk(j, false);
}

/// Invariant basis of T^{(xi,eta)} across several blocks.
inline std::vector<InvariantElement> invariantsIn(StarProduct& sp,
                                                  const std::vector<std::shared_ptr<const BlockModule>>& blocks,
                                                  const EVec& xi, const EVec& eta) {
  std::vector<InvariantElement> out;
  for (const auto& b : blocks)
    for (auto& x : sp.invariants(b, xi, eta)) out.push_back(std::move(x));
  return out;
}

inline bool sameElement(const InvariantElement& a, const InvariantElement& b) {
  return canonical(a.element) == canonical(b.element);
}

}  // namespace checks

/// Criterion 1: PBW dimensions equal Kostant's partition function up to height 6.
inline CheckResult criterionPbw() {
  const std::string name = "1 PBW dimensions = Kostant partition function (A2, B2, C2, A3; height <= 6)";
  return checks::guarded(name, [&]() {
    constexpr int kHeight = 6;
    std::size_t weights = 0;
    for (auto [type, rank] : std::vector<std::pair<RootType, int>>{
             {RootType::A, 2}, {RootType::B, 2}, {RootType::C, 2}, {RootType::A, 3}}) {
      NilpotentAlgebra alg(RootSystem(type, rank));
      std::string detail;
      if (!checks::pbwMatches(alg, kHeight, detail)) return CheckResult{name, false, detail};
      weights += alg.roots().cone(kHeight).size();
    }
    return CheckResult{name, true, std::to_string(weights) + " weights"};
  });
}

/// Criterion 2: the root factor of the shifted projector on rank-one Verma modules.
inline CheckResult criterionEigenvalues() {
  const std::string name = "2 projector eigenvalue formula on A1 Verma modules (l <= 5, s in {4, -3, 2})";
  return checks::guarded(name, [&]() {
    constexpr int kMaxLevel = 5;
    RootSystem rs(RootType::A, 1);
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    RootVectors rv(alg, convexOrder(rs, false));
    const EVec x{Rat(3, 4), Rat(-3, 4)};
    const Rat top = rs.coroot(x, rs.simple(0));
    VermaModule<FieldElem> verma(alg, MultWeight::classical(rs, x));
    std::size_t zeros = 0, nonzero = 0;
    for (int s : {4, -3, 2})
      for (int l = 0; l <= kMaxLevel; ++l) {
        ProjectorFactor<FieldElem> pf;
        pf.root = rs.simple(0);
        pf.halfNorm = 1;
        pf.shift = FieldElem::qpow(Rat(s));
        pf.e = rv.all()[0].e;
        pf.f = rv.all()[0].f;
        auto w = applyRootFactor(*alg, verma, pf, RootVec{l}, {FieldElem(1L)});
        Rat eta = top - 2 * l;
        FieldElem product(1L);
        for (int k = 1; k <= l; ++k)
          product = product * qnum(Rat(s - k)) / qnum(Rat(s) + eta + k);
        FieldElem c = FieldElem::qpow(-l * eta - l * (l + 1));
        if (!(w.at(0) == c * product))
          return CheckResult{name, false, "mismatch at s=" + std::to_string(s) + " l=" + std::to_string(l)};
        (product.isZero() ? zeros : nonzero) += 1;
      }
    return CheckResult{name, true,
                       "unit c = q^{-l eta(h) - l(l+1)}; " + std::to_string(nonzero) + " nonzero and " +
                           std::to_string(zeros) + " vanishing eigenvalues"};
  });
}

/// Criterion 3: Yang-Baxter equation for the assembled braiding and uniqueness of the quasi-R-matrix.
inline CheckResult criterionYangBaxter() {
  const std::string name = "3 Yang-Baxter on V x V x V (A1, A2, B2 natural); quasi-R nullity 0 to height 4";
  return checks::guarded(name, [&]() {
    constexpr int kHeight = 4;
    for (auto [type, rank] :
         std::vector<std::pair<RootType, int>>{{RootType::A, 1}, {RootType::A, 2}, {RootType::B, 2}}) {
      RootSystem rs(type, rank);
      auto alg = std::make_shared<NilpotentAlgebra>(rs);
      QuasiR qr(alg, kHeight);
      for (const auto& mu : rs.cone(kHeight))
        if (qr.nullity(mu) != 0) return CheckResult{name, false, rs.label() + " nullity at " + rootString(mu)};
      auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
      auto r = rMatrix(qr, *v, *v);
      if (!rMatrixIntertwines(r, *v)) return CheckResult{name, false, rs.label() + " braiding is not an intertwiner"};
      if (!yangBaxter(r, v->totalDim())) return CheckResult{name, false, rs.label() + " YBE fails"};
    }
    return CheckResult{name, true, ""};
  });
}

/// Criterion 4: Shapovalov elements are extremal and reduce to powers of root vectors.
inline CheckResult criterionShapovalov(const std::string& dir) {
  const std::string name = "4 Shapovalov contract on the scenario pack (extremal, classical limit = f_beta^m)";
  return checks::guarded(name, [&]() {
    std::size_t count = 0;
    std::set<std::string> ratios, off;
    for (const auto& file : checks::scenarioFiles(dir)) {
      ScenarioContext c(checks::shippedScenario(dir, file));
      auto zeta = c.lambda.plus(c.xi);
      for (const auto& [beta, m] : kkScan(c.rs, zeta, c.depth())) {
        bool simple = c.rs.simpleIndex(beta) >= 0;
        if (m > (simple ? 3 : 2)) continue;
        auto elt = c.eng->element(beta, m, zeta);
        if (!elt.extremal) return CheckResult{name, false, file + ": phi not extremal at " + rootString(beta)};
        if (!elt.classicalRatio || elt.classicalRatio->isZero())
          return CheckResult{name, false, file + ": classical limit of phi is not f_beta^m at " + rootString(beta)};
        if (!(*elt.classicalRatio == FieldElem(1)))
          off.insert(file + " " + rootString(beta) + "^" + std::to_string(m) + ": " + toText(*elt.classicalRatio));
        ratios.insert(toText(*elt.classicalRatio));
        ++count;
      }
    }
    if (count == 0) return CheckResult{name, false, "no Shapovalov elements in the scan"};
    std::string seen;
    for (const auto& r : ratios) seen += (seen.empty() ? "" : ", ") + r;
    std::string detail = std::to_string(count) + " elements; limit / f_beta^m in {" + seen + "}";
    if (off.empty()) return CheckResult{name, true, detail};
    std::string where;
    for (const auto& r : off) where += (where.empty() ? "" : "; ") + r;
    return CheckResult{name, false, detail + "; not equal to f_beta^m: " + where};
  });
}

/// Criterion 5: path sums against the extremality solver.
inline CheckResult criterionOracle(const std::string& dir) {
  const std::string name = "5 path-sum matrix elements = extremal-lift columns (A2, B2 scenarios, eps-shifted)";
  return checks::guarded(name, [&]() {
    std::size_t pairs = 0;
    for (const char* file : {"a2_pseudo_levi.scn", "b2_levi.scn"}) {
      ScenarioContext c(checks::shippedScenario(dir, file));
      auto z = c.eng->regularized(c.lambda.plus(c.xi));
      for (const auto& beta : c.rs.positive()) {
        const auto& tr = c.eng->triple(beta);
        PathSum<EpsSeries> ps(c.eng->cMatrixFor(tr), z);
        ps.setAlgebra(c.alg);
        auto lift = extremalLift<EpsSeries>(c.alg, *tr.module, tr.a, z);
        const auto& fb = ps.basis();
        for (std::size_t k = 0; k < fb.size(); ++k) {
          if (!fb.succeeds(k, tr.a)) continue;
          auto s = ps.s(k, tr.a);
          auto chains = scale(ps.pathSum(k, tr.a), nodeFactor<EpsSeries>(c.rs, z, fb.depth(tr.a) - fb.depth(k)));
          if (!(s.coords == lift.column.at(k)) || !(chains.coords == s.coords))
            return CheckResult{name, false, std::string(file) + ": mismatch for beta " + rootString(beta)};
          ++pairs;
        }
      }
    }
    return CheckResult{name, true, std::to_string(pairs) + " matrix elements"};
  });
}

/// Criterion 6: cancellation at the singular node of an orthogonal long root.
inline CheckResult criterionSingularNode(const std::string& dir) {
  const std::string name = "6 D3 singular node: check-s divisible by d_j, regularized s vanishes at q = 1";
  return checks::guarded(name, [&]() {
    ScenarioContext c(checks::shippedScenario(dir, "d3_singular.scn"));
    auto zeta = c.lambda.plus(c.xi);
    RootVec beta = *c.rs.toSimple(EVec{Rat(1), Rat(1), Rat(0)});
    int m = 0;
    for (const auto& [b, k] : kkScan(c.rs, zeta, c.depth()))
      if (b == beta) m = k;
    if (m == 0) return CheckResult{name, false, "eps1 + eps2 is not a Kac-Kazhdan root of the scenario"};
    auto rep = quantizabilityCheck(*c.eng, c.torus, zeta, beta, m);
    bool singularSeen = false;
    for (const auto& n : rep.nodes)
      if (n.singular) {
        singularSeen = true;
        if (!n.regularAtOne || !n.vanishesAtOne) return CheckResult{name, false, "singular node not cancelled"};
      }
    if (!singularSeen) return CheckResult{name, false, "no singular node"};
    if (!rep.divisibilityChecked || !rep.divisible) return CheckResult{name, false, "check-s not divisible by d_j"};
    return CheckResult{name, true, std::to_string(rep.nodes.size()) + " intermediate nodes"};
  });
}

/// Criterion 7: base modules are irreducible with the product character.
inline CheckResult criterionBaseModule(const std::string& dir) {
  const std::string name = "7 base modules irreducible with product character (A1 sphere, A2 pseudo-Levi; depth 6)";
  return checks::guarded(name, [&]() {
    constexpr int kDepth = 6;
    for (const char* file : {"a1_sphere.scn", "a2_pseudo_levi.scn"}) {
      ScenarioContext c(checks::shippedScenario(dir, file));
      auto gp = generalizedParabolic(*c.eng, c.cd, c.lambda, EVec(c.rs.dimE(), Rat(0)), kDepth);
      auto rep = irreducibilityCheck(gp.module, kDepth);
      if (!rep.irreducible) return CheckResult{name, false, std::string(file) + ": singular vectors found"};
      for (const auto& [mu, d] : productCharacter(c.rs, c.cd, kDepth))
        if (d != static_cast<long>(gp.module->dim(mu)))
          return CheckResult{name, false, std::string(file) + ": character differs at " + rootString(mu)};
    }
    return CheckResult{name, true, ""};
  });
}

/// Criterion 8: complete reducibility of V x M_lambda and V x M_{lambda,xi}.
inline CheckResult criterionDecomposition(const std::string& dir) {
  const std::string name = "8 V x M_lambda, V x M_{lambda,xi} decompose; characters and Hom_k counts (depth 5)";
  return checks::guarded(name, [&]() {
    constexpr int kDepth = 5;
    std::size_t cases = 0;
    for (const auto& file : checks::scenarioFiles(dir)) {
      ScenarioContext c(checks::shippedScenario(dir, file));
      auto v = c.module();
      for (const auto& xi : {EVec(c.rs.dimE(), Rat(0)), checks::sampleXi(c.rs, c.cd)}) {
        auto d = checks::decompose(c, v, xi, kDepth);
        if (!checks::certified(d))
          return CheckResult{name, false, file + ": " + d.diagnostic.value_or("certificate failed")};
        ++cases;
      }
    }
    return CheckResult{name, true, std::to_string(cases) + " tensor products"};
  });
}

/// Criterion 9: the star product on the A1 sphere.
inline CheckResult criterionStarProduct(const std::string& dir) {
  const std::string name = "9 A1 sphere star product: associativity, unit, module actions, classical table";
  return checks::guarded(name, [&]() {
    ScenarioContext c(checks::shippedScenario(dir, "a1_sphere.scn"));
    StarProduct sp(*c.eng, c.cd, c.lambda, c.depth());
    FiniteModulePtr v = c.module();
    FiniteModulePtr dual = finiteModule<FieldElem>(c.alg, dualHighestWeight(c.rs, v->top().x));
    FiniteModulePtr trivial = finiteModule<FieldElem>(c.alg, EVec(c.rs.dimE(), Rat(0)));
    std::vector<std::shared_ptr<const BlockModule>> blocks{sp.blocks().get({trivial}), sp.blocks().get({v}),
                                                           sp.blocks().get({dual}),    sp.blocks().get({v, dual}),
                                                           sp.blocks().get({dual, v}), sp.blocks().get({v, v}),
                                                           sp.blocks().get({dual, dual})};
    EVec zero(c.rs.dimE(), Rat(0));
    auto basis = checks::invariantsIn(sp, blocks, zero, zero);
    auto unit = sp.invariants(blocks[0], zero, zero).at(0);
    std::size_t triples = 0, actions = 0;
    for (const auto& a : basis) {
      if (!checks::sameElement(sp.multiply(unit, a), a) || !checks::sameElement(sp.multiply(a, unit), a))
        return CheckResult{name, false, "unit law fails"};
      for (const auto& b : basis) {
        auto ab = sp.multiply(a, b);
        if (!sp.isInvariant(ab)) return CheckResult{name, false, "product leaves T^k"};
        auto lim = limitAtOne(canonical(ab.element));
        auto plain = limitAtOne(canonical(sp.plainProduct(a, b).element));
        if (!lim || !plain || *lim != *plain) return CheckResult{name, false, "classical table differs"};
        for (const auto& d : basis) {
          if (!checks::sameElement(sp.multiply(ab, d), sp.multiply(a, sp.multiply(b, d))))
            return CheckResult{name, false, "associativity fails"};
          ++triples;
        }
      }
    }
    EVec alpha = c.rs.toE(c.rs.simple(0));
    for (const auto& xi : {alpha, Rat(-1) * alpha}) {
      auto right = checks::invariantsIn(sp, blocks, xi, zero);
      auto left = checks::invariantsIn(sp, blocks, zero, xi);
      if (right.empty() || left.empty()) return CheckResult{name, false, "no sections for xi = " + rootString(c.rs.simple(0))};
      for (const auto& f1 : basis)
        for (const auto& f2 : basis) {
          auto f12 = sp.multiply(f1, f2);
          for (const auto& h : right) {
            if (!checks::sameElement(sp.multiply(sp.multiply(h, f1), f2), sp.multiply(h, f12)))
              return CheckResult{name, false, "right action is not compatible with the product"};
            ++actions;
          }
          for (const auto& g : left) {
            if (!checks::sameElement(sp.multiply(f1, sp.multiply(f2, g)), sp.multiply(f12, g)))
              return CheckResult{name, false, "left action is not compatible with the product"};
            ++actions;
          }
        }
    }
    return CheckResult{name, true,
                       std::to_string(basis.size()) + " invariants, " + std::to_string(triples) + " triples, " +
                           std::to_string(actions) + " action checks"};
  });
}

/// Criterion 10: byte-identical reruns and the text round trip of every serialized scalar.
inline CheckResult criterionDeterminism(const std::string& dir) {
  const std::string name = "10 determinism and serialization round trip on every shipped scenario";
  return checks::guarded(name, [&]() {
    std::size_t scalars = 0;
    auto files = checks::scenarioFiles(dir);
    for (const auto& file : files) {
      auto s = checks::shippedScenario(dir, file);
      std::istringstream again(writeScenario(s));
      if (writeScenario(parseScenario(again)) != writeScenario(s))
        return CheckResult{name, false, file + ": scenario text does not round-trip"};
      std::string first = runScenario(s).dump(2);
      std::string second = runScenario(s).dump(2);
      if (first != second) return CheckResult{name, false, file + ": reruns differ"};
      auto parsed = Json::parse(first);
      if (parsed.dump(2) != first) return CheckResult{name, false, file + ": JSON does not round-trip"};
      if (!checks::scalarsRoundTrip(parsed, scalars)) return CheckResult{name, false, file + ": scalar round trip"};
    }
    return CheckResult{name, true, std::to_string(files.size()) + " scenarios, " + std::to_string(scalars) + " scalars"};
  });
}

inline std::vector<std::function<CheckResult()>> acceptanceCriteria(const std::string& dir) {
  return {criterionPbw,
          criterionEigenvalues,
          criterionYangBaxter,
          [dir] { return criterionShapovalov(dir); },
          [dir] { return criterionOracle(dir); },
          [dir] { return criterionSingularNode(dir); },
          [dir] { return criterionBaseModule(dir); },
          [dir] { return criterionDecomposition(dir); },
          [dir] { return criterionStarProduct(dir); },
          [dir] { return criterionDeterminism(dir); }};
}

inline std::vector<CheckResult> acceptanceSuite(const std::string& dir) {
  std::vector<CheckResult> out;
  for (const auto& c : acceptanceCriteria(dir)) out.push_back(c());
  return out;
}

/// Module property checks at small sizes; serreDefect >= 0 perturbs that Serre relation.
inline std::vector<CheckResult> invariantSuite(int serreDefect = -1) {
  std::vector<CheckResult> out;
  out.push_back(checks::guarded("scalars: field identities and text round trip", [] {
    std::mt19937 rng(20260);
    std::uniform_int_distribution<int> coef(-4, 4), expo(-3, 3), unity(0, 7);
    auto sample = [&] {
      LaurentV p;
      for (int k = 0; k < 3; ++k) p += LaurentV::monomial(Cyclotomic::rootOfUnity(8, unity(rng)) * Cyclotomic(coef(rng)), expo(rng));
      return FieldElem(p);
    };
    for (int trial = 0; trial < 40; ++trial) {
      FieldElem a = sample(), b = sample(), c = sample();
      if (!(a * (b + c) == a * b + a * c)) return CheckResult{"scalars", false, "distributivity"};
      if (!b.isZero() && !(a / b * b == a)) return CheckResult{"scalars", false, "division"};
      FieldElem x = c.isZero() ? a : a / c;
      if (!(parseFieldElem(toText(x)) == x)) return CheckResult{"scalars", false, "text round trip"};
    }
    for (int n = -5; n <= 5; ++n) {
      auto lim = limitAtOne(qnum(Rat(n)));
      if (!(std::get<Cyclotomic>(lim) == Cyclotomic(static_cast<long>(n))))
        return CheckResult{"scalars", false, "[n] at q = 1"};
    }
    return CheckResult{"scalars: field identities and text round trip", true, ""};
  }));
  out.push_back(checks::guarded("rootdata: root counts, Kostant brute force, Pi_k", [] {
    const std::string name = "rootdata: root counts, Kostant brute force, Pi_k";
    for (int n = 1; n <= 4; ++n) {
      if (RootSystem(RootType::A, n).positive().size() != static_cast<std::size_t>(n * (n + 1) / 2))
        return CheckResult{name, false, "A count"};
      if (n >= 2 && RootSystem(RootType::B, n).positive().size() != static_cast<std::size_t>(n * n))
        return CheckResult{name, false, "B count"};
      if (n >= 2 && RootSystem(RootType::C, n).positive().size() != static_cast<std::size_t>(n * n))
        return CheckResult{name, false, "C count"};
      if (n >= 3 && RootSystem(RootType::D, n).positive().size() != static_cast<std::size_t>(n * (n - 1)))
        return CheckResult{name, false, "D count"};
    }
    for (auto [type, rank] :
         std::vector<std::pair<RootType, int>>{{RootType::A, 2}, {RootType::B, 2}, {RootType::A, 3}}) {
      RootSystem rs(type, rank);
      const auto& roots = rs.positive();
      std::function<long(RootVec, std::size_t)> brute = [&](RootVec rest, std::size_t from) -> long {
        if (isZeroVec(rest)) return 1;
        long total = 0;
        for (std::size_t k = from; k < roots.size(); ++k) {
          RootVec next = rest - roots[k];
          if (isNonnegative(next)) total += brute(next, k);
        }
        return total;
      };
      for (const auto& mu : rs.cone(6))
        if (kostant(rs, mu) != brute(mu, 0)) return CheckResult{name, false, rs.label() + " " + rootString(mu)};
    }
    RootSystem a2(RootType::A, 2);
    auto cd = centralizer(a2, TorusPoint{8, {2, 4, 2}});
    for (const auto& a : cd.simpleK)
      for (const auto& b : cd.simpleK)
        if (cd.inK(a + b)) return CheckResult{name, false, "Pi_k elements summable"};
    return CheckResult{name, true, ""};
  }));
  out.push_back(checks::guarded("uqcore: PBW dimensions (A2, B2; height 5)", [serreDefect] {
    const std::string name = "uqcore: PBW dimensions (A2, B2; height 5)";
    for (auto type : {RootType::A, RootType::B}) {
      NilpotentAlgebra alg(RootSystem(type, 2), false, serreDefect);
      std::string detail;
      if (!checks::pbwMatches(alg, 5, detail)) return CheckResult{name, false, detail};
    }
    return CheckResult{name, true, ""};
  }));
  out.push_back(checks::guarded("shapovalov: Yang-Baxter (A1) and extremality (A2 pseudo-Levi)", [] {
    const std::string name = "shapovalov: Yang-Baxter (A1) and extremality (A2 pseudo-Levi)";
    RootSystem a1(RootType::A, 1);
    auto alg1 = std::make_shared<NilpotentAlgebra>(a1);
    QuasiR qr(alg1, 2);
    auto v = finiteModule<FieldElem>(alg1, naturalHighestWeight(a1));
    if (!yangBaxter(rMatrix(qr, *v, *v), v->totalDim())) return CheckResult{name, false, "YBE"};
    RootSystem a2(RootType::A, 2);
    auto alg2 = std::make_shared<NilpotentAlgebra>(a2);
    ShapovalovEngine eng(alg2, 4);
    TorusPoint t{8, {2, 4, 2}};
    auto zeta = baseWeight(a2, t, {1, 1});
    for (const auto& [beta, m] : kkScan(a2, zeta, 3))
      if (!eng.element(beta, m, zeta).extremal) return CheckResult{name, false, "phi not extremal"};
    return CheckResult{name, true, ""};
  }));
  out.push_back(checks::guarded("projector: idempotent, extremal, order independent (A2 natural x Verma)", [] {
    const std::string name = "projector: idempotent, extremal, order independent (A2 natural x Verma)";
    RootSystem rs(RootType::A, 2);
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    auto v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
    EVec x = Rat(-3) * rs.rho();
    x[0] += Rat(5);
    x[1] += Rat(2);
    MultWeight zeta = MultWeight::classical(rs, x);
    zeta.order = 7;
    zeta.unity = {1, 2};
    auto verma = std::make_shared<VermaModule<FieldElem>>(alg, zeta);
    TensorModule<FieldElem> tensor(v, verma);
    MultWeight zero = MultWeight::classical(rs, EVec(rs.dimE(), Rat(0)));
    ShiftedProjector<FieldElem> p1(alg, RootVectors(alg, convexOrder(rs, false)), zero);
    ShiftedProjector<FieldElem> p2(alg, RootVectors(alg, convexOrder(rs, true)), zero);
    for (const auto& mu : rs.cone(3)) {
      if (tensor.dim(mu) == 0) continue;
      auto m1 = p1.matrix(tensor, mu);
      if (!(m1 == p2.matrix(tensor, mu))) return CheckResult{name, false, "order dependence"};
      if (!(m1 * m1 == m1)) return CheckResult{name, false, "not idempotent"};
      for (std::size_t k = 0; k < m1.cols(); ++k)
        if (!isExtremalVector(tensor, mu, m1.column(k))) return CheckResult{name, false, "not extremal"};
    }
    return CheckResult{name, true, ""};
  }));
  out.push_back(checks::guarded("starprod: associativity and Hom realization (A1 sphere)", [] {
    const std::string name = "starprod: associativity and Hom realization (A1 sphere)";
    RootSystem rs(RootType::A, 1);
    auto alg = std::make_shared<NilpotentAlgebra>(rs);
    ShapovalovEngine eng(alg, 4);
    TorusPoint t{8, {2, 6}};
    StarProduct sp(eng, centralizer(rs, t), baseWeight(rs, t, {1}), 4);
    FiniteModulePtr v = finiteModule<FieldElem>(alg, naturalHighestWeight(rs));
    FiniteModulePtr dual = finiteModule<FieldElem>(alg, dualHighestWeight(rs, v->top().x));
    EVec zero(2, Rat(0));
    auto basis = sp.invariants(sp.blocks().get({v, dual}), zero, zero);
    for (const auto& a : basis)
      for (const auto& b : basis) {
        if (!sp.homRealizationAgrees(a, b)) return CheckResult{name, false, "Hom realization"};
        for (const auto& c : basis)
          if (!checks::sameElement(sp.multiply(sp.multiply(a, b), c), sp.multiply(a, sp.multiply(b, c))))
            return CheckResult{name, false, "associativity"};
      }
    return CheckResult{name, true, ""};
  }));
  return out;
}

}  // namespace qcc
