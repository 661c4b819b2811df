#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "tritype/fixtures.hpp"
#include "tritype/supertheory.hpp"

using namespace tritype;

namespace {

std::unique_ptr<Theory> make_theory(const char* name, std::int64_t q, int n = 0, int k = 0,
                                    TheoryConfig cfg = {}) {
  return std::make_unique<Theory>(fixture_presentation(name, q, n, k), cfg);
}

std::multiset<std::size_t> class_sizes(Theory& th) {
  std::multiset<std::size_t> out;
  for (const auto& c : th.superclasses()) out.insert(c.x_members.size());
  return out;
}

} // namespace

TEST_CASE("axb(3) superclasses: sizes 1, 2, 3", "[supertheory]") {
  auto th = make_theory("axb", 3);
  CHECK(th->superclasses().size() == 3);
  CHECK(class_sizes(*th) == std::multiset<std::size_t>{1, 2, 3});
  // the class of 1 is a singleton with label (e=0, h=1, omega={0})
  std::size_t one = th->identity_class_index();
  const auto& k1 = th->superclasses()[one];
  CHECK(k1.x_members.size() == 1);
  CHECK(k1.label.e_mask == 0);
  CHECK(k1.label.h_coords == th->alg().unity());
  CHECK(k1.label.omega_rep.empty());
}

TEST_CASE("ut(3,2) has five superclasses", "[supertheory]") {
  auto th = make_theory("ut", 2, 3);
  CHECK(th->superclasses().size() == 5);
  CHECK(class_sizes(*th) == std::multiset<std::size_t>{1, 1, 2, 2, 2});
}

TEST_CASE("superclass labels round trip through the orbit map", "[supertheory]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 3, 0, 0}, T{"ut", 2, 3, 0}, T{"trunc", 3, 0, 2}, T{"tri", 3, 2, 0}}) {
    auto th = make_theory(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec), std::get<3>(spec));
    std::set<std::tuple<std::uint32_t, Vec, Vec>> seen_labels;
    for (const auto& sc : th->superclasses()) {
      // labels are unique
      CHECK(seen_labels.insert({sc.label.e_mask, sc.label.h_coords, sc.label.omega_rep}).second);
      // rebuilding the class from (h, embedded omega representative) recovers it
      const Corner& ce = th->corner(sc.label.e_mask);
      Vec y_amb = ce.embed_j(sc.label.omega_rep);
      auto rebuilt = th->ambient_context().orbit_g(sc.h, y_amb);
      CHECK(rebuilt == sc.x_members);
      // h stabilizes e, and the normal-form member satisfies hx = xh = x
      Vec xe = th->alg().j_embed(sc.normal_rep.x);
      const Vec& hv = th->alg().h_elem(sc.h);
      CHECK(th->alg().mul(hv, xe) == xe);
      CHECK(th->alg().mul(xe, hv) == xe);
    }
  }
}

TEST_CASE("alpha labels: axb(3) has two linear strata labels plus one", "[supertheory]") {
  auto th = make_theory("axb", 3);
  const auto& as = th->alphas();
  REQUIRE(as.size() == 3);
  CHECK(as[0].label.e_mask == 0);
  CHECK(as[1].label.e_mask == 0);
  CHECK(as[2].label.e_mask == th->kh().full_mask());
  CHECK(as[0].degree == 1);
  CHECK(as[1].degree == 1);
  CHECK(as[2].degree == 2);
  // the full-stratum theta is the trivial character of H(1) = {1}
  CHECK(as[2].theta.is_trivial());
}

TEST_CASE("alpha labels: ut(3,2) has five with degrees 1,1,1,1,2", "[supertheory]") {
  auto th = make_theory("ut", 2, 3);
  const auto& as = th->alphas();
  REQUIRE(as.size() == 5);
  std::multiset<std::int64_t> degs;
  for (const auto& a : as) degs.insert(a.degree);
  CHECK(degs == std::multiset<std::int64_t>{1, 1, 1, 1, 2});
}

TEST_CASE("J = 0 yields |H| linear labels in the zero stratum", "[supertheory]") {
  auto th = make_theory("trunc", 5, 0, 1);
  const auto& as = th->alphas();
  REQUIRE(as.size() == 4);
  for (const auto& a : as) {
    CHECK(a.label.e_mask == 0);
    CHECK(a.degree == 1);
  }
}

TEST_CASE("stabilizer subgroups", "[supertheory]") {
  // lambda = 0 at e = 0: everything stabilizes
  auto th0 = make_theory("trunc", 5, 0, 1);
  CHECK(th0->alphas()[0].g_lambda_order == th0->group().order());

  // axb(q), lambda != 0: G_lambda = N of size q
  for (std::int64_t q : {3, 5}) {
    auto th = make_theory("axb", q);
    const auto& top = th->alphas().back();
    CHECK(top.label.e_mask == th->kh().full_mask());
    CHECK(top.g_lambda_order == q);
    CHECK(top.degree == q - 1);
  }

  // ut(3,q), lambda dual to e13: |G_lambda| = q^2
  for (std::int64_t q : {2, 3}) {
    auto th = make_theory("ut", q, 3);
    bool found = false;
    for (const auto& a : th->alphas()) {
      if (a.label.e_mask != th->kh().full_mask()) continue;
      // e13 dual = the lambda fixing only the second J coordinate
      if (a.lambda_ambient == Vec{0, 1, 0}) {
        found = true;
        CHECK(a.g_lambda_order == q * q);
      }
    }
    CHECK(found);
  }
}

TEST_CASE("xi is multiplicative on G_lambda and matches the examples", "[supertheory]") {
  auto th = make_theory("ut", 3, 3);
  const Algebra& a = th->alg();
  const Alpha* al = nullptr;
  for (const auto& cand : th->alphas())
    if (cand.lambda_ambient == Vec{0, 1, 0}) al = &cand;
  REQUIRE(al);
  CHECK(th->xi_eval(*al, g_identity(a)) == Cyclo::one());
  GroupElem g{a.h_unit(), Vec{0, 1, 0}}; // 1 + e13
  CHECK(th->xi_eval(*al, g) == Cyclo::root_of_unity(3, 1));
  // multiplicative on the stabilizer: members are h + x with x in J_{lambda,right}
  GroupIndex gi(a, 100000);
  std::vector<GroupElem> stab;
  for (std::int64_t i = 0; i < gi.order(); ++i) {
    GroupElem cand = gi.at(i);
    bool ok = true;
    try {
      th->xi_eval(*al, cand);
    } catch (const error&) {
      ok = false;
    }
    if (ok) stab.push_back(cand);
  }
  CHECK((std::int64_t)stab.size() == al->g_lambda_order);
  for (const auto& g1 : stab)
    for (const auto& g2 : stab)
      CHECK(th->xi_eval(*al, g_mul(a, g1, g2)) == th->xi_eval(*al, g1) * th->xi_eval(*al, g2));
  // outside the stabilizer the evaluation refuses
  GroupElem bad{a.h_unit(), Vec{1, 0, 0}};
  CHECK_THROWS_AS(th->xi_eval(*al, bad), error);
}

TEST_CASE("induced supercharacter of axb(3): frozen values 2, -1, 0", "[supertheory]") {
  auto th = make_theory("axb", 3);
  auto t = th->table();
  // locate the degree-2 character and the three classes
  std::size_t a2 = 0;
  for (std::size_t i = 0; i < t.degrees.size(); ++i)
    if (t.degrees[i] == 2) a2 = i;
  std::size_t one = th->identity_class_index();
  REQUIRE(t.values[a2][one] == Cyclo(Rational(2)));
  for (std::size_t b = 0; b < t.betas.size(); ++b) {
    if (b == one) continue;
    const auto& sc = th->superclasses()[b];
    if (sc.h == th->alg().h_unit())
      CHECK(t.values[a2][b] == Cyclo(Rational(-1))); // class of 1 + x0
    else
      CHECK(t.values[a2][b].is_zero()); // class of the nontrivial h
  }
}

TEST_CASE("a degree-one alpha of the zero stratum extends theta", "[supertheory]") {
  auto th = make_theory("axb", 5);
  auto t = th->table();
  for (std::size_t ai = 0; ai < th->alphas().size(); ++ai) {
    const auto& a = th->alphas()[ai];
    if (a.label.e_mask != 0) continue;
    CHECK(a.degree == 1);
    for (std::size_t bi = 0; bi < th->superclasses().size(); ++bi)
      CHECK(t.values[ai][bi] == a.theta.eval(th->superclasses()[bi].h));
  }
}

TEST_CASE("J = 0 reproduces the abelian character table of H", "[supertheory]") {
  auto th = make_theory("trunc", 5, 0, 1); // G = H = Z_4
  auto t = th->table();
  REQUIRE(t.alphas.size() == 4);
  REQUIRE(t.betas.size() == 4);
  auto st = std::make_shared<const AbelianStructure>(
      abelian_structure(th->alg(), subgroup_h_of_e(th->alg(), th->alg().zero())));
  auto chars = characters_of(st);
  // every superclass is a singleton {h}; compare value grids as sets of rows
  std::set<std::vector<std::string>> expect, got;
  for (const auto& th_char : chars) {
    std::vector<std::string> row;
    for (const auto& sc : th->superclasses()) row.push_back(th_char.eval(sc.h).exact_string());
    expect.insert(row);
  }
  for (std::size_t ai = 0; ai < t.values.size(); ++ai) {
    std::vector<std::string> row;
    for (const auto& v : t.values[ai]) row.push_back(v.exact_string());
    got.insert(row);
  }
  CHECK(got == expect);
}

TEST_CASE("tri(2,2) is an algebra group in disguise", "[supertheory]") {
  auto th = make_theory("tri", 2, 2); // (q-1)^2 = 1, so G = 1 + J of dim 1
  auto t = th->table();
  CHECK(t.alphas.size() == 2);
  CHECK(t.group_order == 2);
}

TEST_CASE("verify_theory passes on the small fixtures", "[supertheory]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 3, 0, 0}, T{"ut", 2, 3, 0}, T{"trunc", 5, 0, 1}}) {
    auto th = make_theory(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec), std::get<3>(spec));
    auto rep = th->verify();
    INFO(std::get<0>(spec));
    for (const auto& c : rep.checks) {
      INFO(c.name << " " << c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("axb norms are all 1: the theory is the irreducible one", "[supertheory]") {
  for (std::int64_t q : {3, 5}) {
    auto th = make_theory("axb", q);
    auto t = th->table();
    for (std::size_t ai = 0; ai < t.values.size(); ++ai) {
      Cyclo ip = Cyclo::zero();
      for (std::size_t bi = 0; bi < t.values[ai].size(); ++bi)
        ip = ip + Rational(t.class_sizes[bi]) * t.values[ai][bi] * t.values[ai][bi].conjugate();
      CHECK(ip == Cyclo(Rational(t.group_order)));
    }
  }
}

TEST_CASE("ut(3,2) norms: every supercharacter here is irreducible", "[supertheory]") {
  // the degree-2 supercharacter of ut(3,2) is the 2-dimensional irreducible
  // of the dihedral group of order 8, so its norm is 1 like the linear ones
  auto th = make_theory("ut", 2, 3);
  auto t = th->table();
  for (std::size_t ai = 0; ai < t.values.size(); ++ai) {
    Cyclo ip = Cyclo::zero();
    for (std::size_t bi = 0; bi < t.values[ai].size(); ++bi)
      ip = ip + Rational(t.class_sizes[bi]) * t.values[ai][bi] * t.values[ai][bi].conjugate();
    CHECK(ip == Cyclo(Rational(t.group_order)));
  }
}

TEST_CASE("orbit count identities across all strata", "[supertheory]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 3, 0, 0}, T{"axb", 5, 0, 0}, T{"ut", 2, 3, 0}, T{"tri", 3, 2, 0},
                    T{"trunc", 3, 0, 2}}) {
    auto th = make_theory(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec), std::get<3>(spec));
    for (std::uint32_t m = 0; m <= th->kh().full_mask(); ++m) {
      const auto& rc = th->counts(m);
      CHECK(rc.j_regular == rc.dual_regular);
      CHECK(rc.j_regular == th->count_regular_inclusion_exclusion(m));
    }
  }
}

TEST_CASE("frozen orbit counts for the worked examples", "[supertheory]") {
  auto axb = make_theory("axb", 3);
  CHECK(axb->counts(0).j_regular == 1); // the zero stratum convention
  CHECK(axb->counts(1).j_regular == 0); // J_e = 0 at a proper corner
  CHECK(axb->counts(2).j_regular == 0);
  CHECK(axb->counts(3).j_regular == 1);
  CHECK(axb->counts(3).j_orbits == 2);
  // inclusion-exclusion at the top: 2 - 1 - 1 + 1 = 1
  CHECK(axb->count_regular_inclusion_exclusion(3) == 1);

  auto ut = make_theory("ut", 2, 3);
  CHECK(ut->counts(1).j_regular == 4); // 1 + 3(q-1) + (q-1)^2 - 1 at q = 2
  CHECK(ut->counts(1).j_orbits == 5);
}

TEST_CASE("count formula: sum of |H(e)| n_E(J_e) matches both enumerations", "[supertheory]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 3, 0, 0}, T{"ut", 2, 3, 0}, T{"tri", 3, 2, 0}, T{"trunc", 2, 0, 3}}) {
    auto th = make_theory(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec), std::get<3>(spec));
    std::int64_t formula = 0;
    for (std::uint32_t m = 0; m <= th->kh().full_mask(); ++m) {
      std::int64_t ne = th->counts(m).j_regular;
      if (ne)
        formula +=
            (std::int64_t)subgroup_h_of_e(th->alg(), th->kh().idem(m)).size() * ne;
    }
    CHECK(formula == (std::int64_t)th->superclasses().size());
    CHECK(formula == (std::int64_t)th->alphas().size());
  }
}

TEST_CASE("localize_orbit on the worked examples", "[supertheory]") {
  auto th = make_theory("axb", 3);
  // O = {0}: localizes to e = 0
  CHECK(th->localize_orbit(th->kh().full_mask(), {th->alg().j_zero()}) == 0);
  // O = J \ {0}: localizes to e = full
  std::vector<Vec> nonzero = {Vec{1}, Vec{2}};
  CHECK(th->localize_orbit(th->kh().full_mask(), nonzero) == th->kh().full_mask());
}

TEST_CASE("induced values do not depend on the lambda choice", "[supertheory]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 3, 0, 0}, T{"ut", 2, 3, 0}, T{"trunc", 3, 0, 2}}) {
    TheoryConfig c0, c1;
    c1.lambda_choice = 1;
    auto th0 = make_theory(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                           std::get<3>(spec), c0);
    auto th1 = make_theory(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                           std::get<3>(spec), c1);
    auto t0 = th0->table(), t1 = th1->table();
    REQUIRE(t0.values.size() == t1.values.size());
    for (std::size_t ai = 0; ai < t0.values.size(); ++ai)
      for (std::size_t bi = 0; bi < t0.values[ai].size(); ++bi)
        CHECK(t0.values[ai][bi] == t1.values[ai][bi]);
  }
}

TEST_CASE("tables are identical across thread counts", "[supertheory]") {
  TheoryConfig c1, c4;
  c1.threads = 1;
  c4.threads = 4;
  auto th1 = make_theory("ut", 3, 3, 0, c1);
  auto th4 = make_theory("ut", 3, 3, 0, c4);
  auto t1 = th1->table(), t4 = th4->table();
  REQUIRE(t1.values.size() == t4.values.size());
  for (std::size_t ai = 0; ai < t1.values.size(); ++ai)
    for (std::size_t bi = 0; bi < t1.values[ai].size(); ++bi) {
      CHECK(t1.values[ai][bi].conductor() == t4.values[ai][bi].conductor());
      CHECK(t1.values[ai][bi].coeffs() == t4.values[ai][bi].coeffs());
    }
}

TEST_CASE("additive character: frozen values and homomorphism", "[supertheory]") {
  // eps(0) = 1 always; F_3: eps(1) = zeta_3; F_4: eps(t) = -1
  Fq f3 = Fq::prime_field(3);
  CHECK(additive_char(f3, 0) == Cyclo::one());
  CHECK(additive_char(f3, 1) == Cyclo::root_of_unity(3, 1));
  Fq f4 = Fq::prime_power(4);
  CHECK(additive_char(f4, 2) == Cyclo(Rational(-1))); // t has code 2
  for (const Fq& F : {f3, f4, Fq::prime_power(9), Fq::prime_field(5)}) {
    bool nontrivial = false;
    for (FqElem a = 0; a < (FqElem)F.q(); ++a) {
      nontrivial |= additive_char(F, a) != Cyclo::one();
      CHECK(additive_char(F, a).conjugate() == additive_char(F, F.neg(a)));
      for (FqElem b = 0; b < (FqElem)F.q(); ++b)
        CHECK(additive_char(F, F.add(a, b)) == additive_char(F, a) * additive_char(F, b));
    }
    CHECK(nontrivial);
  }
}

TEST_CASE("verify refuses groups beyond the scan bound", "[supertheory]") {
  TheoryConfig cfg;
  cfg.s2_scan_bound = 4;
  Theory th(fixture_presentation("axb", 3, 0, 0), cfg);
  CHECK_THROWS_AS(th.verify(), error);
}
