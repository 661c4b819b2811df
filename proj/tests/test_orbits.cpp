#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "tritype/fixtures.hpp"
#include "tritype/orbits.hpp"

using namespace tritype;

namespace {

// Oracle: orbits by enumerating all of tilde-G = H x N x N and applying the
// action pointwise. Independent of the generator-closure BFS.
struct TildeG {
  const Algebra& a;
  ActionContext& ctx;
  std::vector<Vec> n_elems; // J coordinates u of 1+u

  TildeG(const Algebra& alg, ActionContext& c) : a(alg), ctx(c) {
    std::int64_t total = 1;
    for (int i = 0; i < a.dim_j(); ++i) total *= a.field().q();
    for (std::int64_t code = 0; code < total; ++code) n_elems.push_back(ctx.unpack(code));
  }

  template <class Fn>
  void for_each_tau(Fn&& fn) const {
    for (int t = 0; t < a.h_count(); ++t)
      for (const Vec& ua : n_elems)
        for (const Vec& ub : n_elems) fn(t, ua, ub);
  }

  std::vector<std::int64_t> orbit_j(const Vec& seed) const {
    std::set<std::int64_t> out;
    for_each_tau([&](int t, const Vec& ua, const Vec& ub) {
      out.insert(ctx.pack(ctx.act_j(t, ua, ub, seed)));
    });
    return {out.begin(), out.end()};
  }

  std::vector<std::int64_t> orbit_dual(const Vec& seed) const {
    std::set<std::int64_t> out;
    for_each_tau([&](int t, const Vec& ua, const Vec& ub) {
      out.insert(ctx.pack(ctx.act_dual(t, ua, ub, seed)));
    });
    return {out.begin(), out.end()};
  }

  std::vector<std::int64_t> orbit_g(const GroupElem& seed) const {
    std::set<std::int64_t> out;
    for_each_tau([&](int t, const Vec& ua, const Vec& ub) {
      GroupElem img = ctx.act_g(t, ua, ub, seed);
      REQUIRE(img.h == seed.h);
      out.insert(ctx.pack(img.x));
    });
    return {out.begin(), out.end()};
  }
};

Vec unit_j(const Algebra& a, int j) {
  Vec x(a.dim_j(), 0);
  x[j] = 1;
  return x;
}

} // namespace

TEST_CASE("direct actions: identities and special cases", "[orbits]") {
  Algebra a(fixture_presentation("axb", 3, 0, 0));
  ActionContext ctx(a);
  Vec x0 = unit_j(a, 0);
  Vec zero_u = a.j_zero();
  // identity tau fixes everything
  CHECK(ctx.act_j(a.h_unit(), zero_u, zero_u, x0) == x0);
  CHECK(ctx.act_dual(a.h_unit(), zero_u, zero_u, x0) == x0);
  // tau = (1, a, 1) acts by left multiplication
  Vec ua = {2};
  Vec ax = a.j_coords(a.mul(a.add(a.unity(), a.j_embed(ua)), a.j_embed(x0)));
  CHECK(ctx.act_j(a.h_unit(), ua, zero_u, x0) == ax);
  // tau = (g, 1, 1) conjugates: g x0 g^{-1} = zeta x0 = 2 x0
  int g_idx = -1;
  for (int h = 0; h < a.h_count(); ++h)
    if (h != a.h_unit()) g_idx = h;
  CHECK(ctx.act_j(g_idx, zero_u, zero_u, x0) == Vec{2});
  // g = 1 is fixed by every tau
  ActionContext ctx2(a);
  TildeG oracle(a, ctx2);
  oracle.for_each_tau([&](int t, const Vec& u1, const Vec& u2) {
    CHECK(ctx.act_g(t, u1, u2, g_identity(a)) == g_identity(a));
  });
}

TEST_CASE("the tilde-G composition law is respected", "[orbits]") {
  for (auto pres : {fixture_presentation("axb", 3, 0, 0), fixture_presentation("trunc", 3, 0, 2)}) {
    Algebra a(std::move(pres));
    ActionContext ctx(a);
    TildeG tg(a, ctx);
    auto compose = [&](int t1, const Vec& a1, const Vec& b1, int t2, const Vec& a2, const Vec& b2) {
      // (t1t2, t2^{-1} a1 t2 a2, t2^{-1} b1 t2 b2), components as elements of N
      auto comp_n = [&](const Vec& u1, const Vec& u2, int t) {
        Vec n1 = a.add(a.unity(), a.j_embed(u1));
        Vec n2 = a.add(a.unity(), a.j_embed(u2));
        const Vec& tv = a.h_elem(t);
        const Vec& ti = a.h_elem(a.h_inv(t));
        Vec prod = a.mul(ti, a.mul(n1, a.mul(tv, n2)));
        return a.j_coords(a.sub(prod, a.unity()));
      };
      return std::tuple<int, Vec, Vec>{a.h_mul(t1, t2), comp_n(a1, a2, t2), comp_n(b1, b2, t2)};
    };
    // sample a few taus exhaustively on the small fixtures
    int checked = 0;
    tg.for_each_tau([&](int t1, const Vec& a1, const Vec& b1) {
      tg.for_each_tau([&](int t2, const Vec& a2, const Vec& b2) {
        if (++checked % 7 != 0) return; // thin out the quadratic loop
        auto [t, ac, bc] = compose(t1, a1, b1, t2, a2, b2);
        for (int j = 0; j < a.dim_j(); ++j) {
          Vec x = unit_j(a, j);
          Vec lhs = ctx.act_j(t, ac, bc, x);
          Vec rhs = ctx.act_j(t1, a1, b1, ctx.act_j(t2, a2, b2, x));
          CHECK(lhs == rhs);
        }
      });
    });
  }
}

TEST_CASE("the dual action is contragredient to the J action", "[orbits]") {
  for (auto pres : {fixture_presentation("axb", 3, 0, 0), fixture_presentation("ut", 2, 3, 0)}) {
    Algebra a(std::move(pres));
    ActionContext ctx(a);
    TildeG tg(a, ctx);
    std::int64_t count = 0;
    tg.for_each_tau([&](int t, const Vec& ua, const Vec& ub) {
      if (a.dim_j() > 1 && ++count % 5 != 0) return;
      for (std::int64_t lc = 0; lc < ctx.space_size(); ++lc)
        for (std::int64_t xc = 0; xc < ctx.space_size(); ++xc) {
          Vec lam = ctx.unpack(lc), x = ctx.unpack(xc);
          Vec lam2 = ctx.act_dual(t, ua, ub, lam);
          Vec x2 = ctx.act_j(t, ua, ub, x);
          CHECK(ctx.pair_(lam2, x2) == ctx.pair_(lam, x));
        }
    });
  }
}

TEST_CASE("BFS orbits equal full tilde-G enumeration", "[orbits]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 3, 0, 0}, T{"trunc", 3, 0, 2}, T{"ut", 2, 3, 0}}) {
    Algebra a(fixture_presentation(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                                   std::get<3>(spec)));
    ActionContext ctx(a);
    TildeG tg(a, ctx);
    for (std::int64_t code = 0; code < ctx.space_size(); ++code) {
      Vec seed = ctx.unpack(code);
      CHECK(ctx.orbit_j(seed) == tg.orbit_j(seed));
      CHECK(ctx.orbit_dual(seed) == tg.orbit_dual(seed));
    }
    for (int h = 0; h < a.h_count(); ++h)
      for (std::int64_t code = 0; code < ctx.space_size(); ++code) {
        GroupElem g{h, ctx.unpack(code)};
        CHECK(ctx.orbit_g(h, g.x) == tg.orbit_g(g));
      }
  }
}

TEST_CASE("orbit special cases from the examples", "[orbits]") {
  // seed 0 is always alone
  Algebra ut(fixture_presentation("ut", 2, 3, 0));
  ActionContext ctx(ut);
  CHECK(ctx.orbit_j(ut.j_zero()) == std::vector<std::int64_t>{0});
  // ut(3,2): e13 spans a central singleton orbit; basis order is e12,e13,e23
  Vec e13 = unit_j(ut, 1);
  CHECK(ctx.orbit_j(e13).size() == 1);
  // axb(3): any nonzero seed sweeps J \ {0}, and dually
  Algebra axb(fixture_presentation("axb", 3, 0, 0));
  ActionContext actx(axb);
  CHECK(actx.orbit_j(Vec{1}).size() == 2);
  CHECK(actx.orbit_dual(Vec{1}).size() == 2);
  // axb(3): class of g = (zeta, 0) is {g + c x0}
  int g_idx = 0;
  for (int h = 0; h < axb.h_count(); ++h)
    if (h != axb.h_unit()) g_idx = h;
  CHECK(actx.orbit_g(g_idx, axb.j_zero()).size() == 3);
}

TEST_CASE("orbits partition their spaces", "[orbits]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 5, 0, 0}, T{"ut", 2, 3, 0}, T{"tri", 3, 2, 0}}) {
    Algebra a(fixture_presentation(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                                   std::get<3>(spec)));
    ActionContext ctx(a);
    for (auto parts : {ctx.partition_j(), ctx.partition_dual()}) {
      std::set<std::int64_t> all;
      std::int64_t total = 0;
      for (const auto& orb : parts) {
        total += (std::int64_t)orb.size();
        for (auto m : orb) CHECK(all.insert(m).second);
      }
      CHECK(total == ctx.space_size());
    }
  }
}

TEST_CASE("regularity tests on J elements", "[orbits]") {
  // zero is singular whenever the corner algebra is nonzero
  Algebra axb(fixture_presentation("axb", 3, 0, 0));
  ActionContext actx(axb);
  CHECK(!actx.is_regular(axb.j_zero()));
  CHECK(!actx.is_regular_dual(axb.j_zero()));
  CHECK(actx.is_regular(Vec{1}));
  CHECK(actx.is_regular_dual(Vec{2}));

  // ut(3,2): e13 is regular (all annihilators live in J); so is every nonzero x
  Algebra ut(fixture_presentation("ut", 2, 3, 0));
  ActionContext uctx(ut);
  CHECK(uctx.is_regular(unit_j(ut, 1)));
  for (std::int64_t code = 1; code < uctx.space_size(); ++code)
    CHECK(uctx.is_regular(uctx.unpack(code)));
  CHECK(!uctx.is_regular(ut.j_zero()));
}

TEST_CASE("regularity is constant along orbits", "[orbits]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 5, 0, 0}, T{"tri", 3, 2, 0}, T{"trunc", 2, 0, 3}}) {
    Algebra a(fixture_presentation(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                                   std::get<3>(spec)));
    ActionContext ctx(a);
    for (const auto& orb : ctx.partition_j()) {
      bool flag = ctx.is_regular(ctx.unpack(orb.front()));
      for (auto m : orb) CHECK(ctx.is_regular(ctx.unpack(m)) == flag);
    }
    for (const auto& orb : ctx.partition_dual()) {
      bool flag = ctx.is_regular_dual(ctx.unpack(orb.front()));
      for (auto m : orb) CHECK(ctx.is_regular_dual(ctx.unpack(m)) == flag);
    }
  }
}

TEST_CASE("orbit meeting two corners meets their product corner", "[orbits]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 5, 0, 0}, T{"tri", 3, 2, 0}}) {
    Algebra a(fixture_presentation(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                                   std::get<3>(spec)));
    KHDecomposition kh(a);
    ActionContext ctx(a);
    auto meets = [&](const std::vector<std::int64_t>& orbit, std::uint32_t mask) {
      const Vec& e = kh.idem(mask);
      for (auto m : orbit) {
        Vec xe = a.j_embed(ctx.unpack(m));
        if (a.mul(e, a.mul(xe, e)) == xe) return true;
      }
      return false;
    };
    for (const auto& orb : ctx.partition_j())
      for (std::uint32_t e = 0; e <= kh.full_mask(); ++e)
        for (std::uint32_t f = 0; f <= kh.full_mask(); ++f)
          if (meets(orb, e) && meets(orb, f)) CHECK(meets(orb, e & f));
  }
}

TEST_CASE("generation certificate passes on the fixtures", "[orbits]") {
  using T = std::tuple<const char*, std::int64_t, int, int>;
  for (auto spec : {T{"axb", 4, 0, 0}, T{"ut", 3, 3, 0}, T{"tri", 3, 2, 0}, T{"trunc", 2, 0, 3}}) {
    Algebra a(fixture_presentation(std::get<0>(spec), std::get<1>(spec), std::get<2>(spec),
                                   std::get<3>(spec)));
    ActionContext ctx(a);
    CHECK_NOTHROW(ctx.certify_generation());
  }
}
