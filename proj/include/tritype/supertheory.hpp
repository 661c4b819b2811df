#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tritype/orbits.hpp"

namespace tritype {

inline Cyclo additive_char(const Fq& F, FqElem a) {
  return Cyclo::root_of_unity(F.p(), F.trace(a)).reduced();
}

/// Index-addressed parallel map; results are written by slot, so the outcome
/// does not depend on the thread count or schedule.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

struct TheoryConfig {
  std::int64_t max_group_order = 100000;
  std::int64_t s2_scan_bound = 5000;
  std::int64_t orbit_space_bound = 2000000;
  int threads = 1;
  int lambda_choice = 0; // 0 = orbit representative, 1 = next member when available
};

struct SuperclassLabel {
  std::uint32_t e_mask = 0;
  Vec h_coords;  // ambient coordinates of h
  Vec omega_rep; // corner-e J coordinates of the orbit representative
};

struct Superclass {
  SuperclassLabel label;
  int h = 0;
  std::vector<std::int64_t> x_members; // packed ambient J coordinates, sorted
  GroupElem rep;                       // minimal member
  GroupElem normal_rep;                // member with hx = xh = x
};

struct AlphaLabel {
  std::uint32_t e_mask = 0;
  std::vector<std::int64_t> theta_exps;
  Vec omega_star_rep; // corner-e dual coordinates
};

struct Alpha {
  AlphaLabel label;
  LinearCharacter theta;
  std::vector<int> h_of_e;   // H(e), canonical order
  Vec lambda_corner;         // inducing functional, corner-e dual coordinates
  Vec lambda_ambient;        // embedded into J*
  FqMatrix right_kernel_mat; // x in J_{lambda,right}  <=>  mat * x = 0
  std::int64_t j_lr_dim = 0;
  std::int64_t g_lambda_order = 0;
  std::int64_t degree = 0;

  bool in_h_of_e(int h) const {
    for (int v : h_of_e)
      if (v == h) return true;
    return false;
  }
};

struct RegularCounts {
  std::int64_t j_orbits = 0;       // n(J_e)
  std::int64_t j_regular = 0;      // n_E(J_e)
  std::int64_t dual_orbits = 0;    // n(J_e*)
  std::int64_t dual_regular = 0;   // n_E(J_e*)
};

struct SupercharacterTable {
  std::vector<AlphaLabel> alphas;
  std::vector<SuperclassLabel> betas;
  std::vector<std::int64_t> class_sizes;
  std::vector<std::int64_t> degrees;
  std::vector<std::vector<Cyclo>> values; // [alpha][beta]
  std::int64_t group_order = 0;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Orchestrates the whole construction for one validated presentation:
/// idempotent strata, corners, superclass partition, supercharacter labels,
/// induced values, and the axiom verification suite.
class Theory {
 public:
  explicit Theory(Presentation pres, TheoryConfig cfg = {})
      : alg_(std::move(pres)), cfg_(cfg), kh_(alg_), gi_(alg_, cfg.max_group_order) {
    ambient_ctx_ = std::make_unique<ActionContext>(alg_, cfg_.orbit_space_bound);
    ambient_ctx_->certify_generation();
  }

  Theory(const Theory&) = delete;
  Theory& operator=(const Theory&) = delete;

  const Algebra& alg() const { return alg_; }
  const KHDecomposition& kh() const { return kh_; }
  const GroupIndex& group() const { return gi_; }
  const TheoryConfig& config() const { return cfg_; }

  /// Precomputes the group-inverse cache so later evaluation is read-only
  /// and safe to run data-parallel.
  void precompute_inverses() { ensure_inverses_(); }
  ActionContext& ambient_context() { return *ambient_ctx_; }

  const Corner& corner(std::uint32_t mask) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = corners_.find(mask);
    if (it == corners_.end())
      it = corners_.emplace(mask, std::make_unique<Corner>(alg_, kh_, mask)).first;
    return *it->second;
  }

  ActionContext& context(std::uint32_t mask) {
    const Corner& c = corner(mask);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = contexts_.find(mask);
    if (it == contexts_.end()) {
      it = contexts_.emplace(mask, std::make_unique<ActionContext>(c.alg(), cfg_.orbit_space_bound))
               .first;
      it->second->certify_generation();
    }
    return *it->second;
  }

  /// Orbit census of one corner; also asserts that the regular flag is
  /// constant along every orbit and that n_E(J_e) = n_E(J_e*).
  const RegularCounts& counts(std::uint32_t mask) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = counts_.find(mask);
      if (it != counts_.end()) return it->second;
    }
    ActionContext& ctx = context(mask);
    RegularCounts rc;
    for (const auto& orb : ctx.partition_j()) {
      ++rc.j_orbits;
      bool reg = ctx.is_regular(ctx.unpack(orb.front()));
      for (auto m : orb)
        require(ctx.is_regular(ctx.unpack(m)) == reg, errc::internal,
                "regularity is not constant on an orbit");
      if (reg) ++rc.j_regular;
    }
    for (const auto& orb : ctx.partition_dual()) {
      ++rc.dual_orbits;
      bool reg = ctx.is_regular_dual(ctx.unpack(orb.front()));
      for (auto m : orb)
        require(ctx.is_regular_dual(ctx.unpack(m)) == reg, errc::internal,
                "dual regularity is not constant on an orbit");
      if (reg) ++rc.dual_regular;
    }
    require(rc.j_regular == rc.dual_regular, errc::internal,
            "regular orbit counts differ between J_e and J_e*");
    std::lock_guard<std::mutex> lock(mu_);
    return counts_.emplace(mask, rc).first->second;
  }

  /// Regular orbit count via the alternating sum over sub-idempotents:
  /// sum over f <= e of (-1)^(l(f)) n(J_f), l counting missing primitive parts.
  std::int64_t count_regular_inclusion_exclusion(std::uint32_t mask) {
    std::int64_t total = 0;
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      int l = std::popcount(mask) - std::popcount(sub);
      total += (l % 2 == 0 ? 1 : -1) * counts(sub).j_orbits;
      if (sub == 0) break;
    }
    return total;
  }

  // ---- superclasses ----

  const std::vector<Superclass>& superclasses() {
    if (!classes_.empty()) return classes_;
    std::vector<bool> seen(gi_.order(), false);
    std::vector<Superclass> raw;
    for (std::int64_t idx = 0; idx < gi_.order(); ++idx) {
      if (seen[idx]) continue;
      GroupElem g = gi_.at(idx);
      Superclass sc;
      sc.h = g.h;
      sc.x_members = ambient_ctx_->orbit_g(g.h, g.x);
      for (auto xm : sc.x_members) seen[g.h * gi_.x_count() + xm] = true;
      sc.rep = {g.h, gi_.unpack_x(sc.x_members.front())};
      label_class_(sc);
      raw.push_back(std::move(sc));
    }
    std::sort(raw.begin(), raw.end(), [&](const Superclass& a, const Superclass& b) {
      if (a.label.e_mask != b.label.e_mask) return a.label.e_mask < b.label.e_mask;
      if (a.label.h_coords != b.label.h_coords) return a.label.h_coords < b.label.h_coords;
      return a.label.omega_rep < b.label.omega_rep;
    });
    classes_ = std::move(raw);
    return classes_;
  }

  /// Unique minimal idempotent e <= f whose corner meets the orbit, plus the
  /// checks from the localization corollary. Members are ambient J coords.
  std::uint32_t localize_orbit(std::uint32_t f_mask, const std::vector<Vec>& members,
                               std::vector<Vec>* intersection = nullptr) {
    require(!members.empty(), errc::localization_failed, "empty orbit");
    std::vector<std::uint32_t> hits;
    for (std::uint32_t sub = f_mask;; sub = (sub - 1) & f_mask) {
      const Vec& e = kh_.idem(sub);
      for (const Vec& x : members) {
        Vec xe = alg_.j_embed(x);
        if (alg_.mul(e, alg_.mul(xe, e)) == xe) {
          hits.push_back(sub);
          break;
        }
      }
      if (sub == 0) break;
    }
    require(!hits.empty(), errc::localization_failed, "orbit misses every corner");
    std::uint32_t meet = f_mask;
    for (auto m : hits) meet &= m;
    bool meet_hit = false;
    for (auto m : hits) meet_hit |= m == meet;
    require(meet_hit, errc::localization_failed, "corner intersections are not a filter");

    const Corner& ce = corner(meet);
    ActionContext& ctx_e = context(meet);
    std::vector<Vec> inter;
    for (const Vec& x : members) {
      Vec xe = alg_.j_embed(x);
      if (alg_.mul(ce.idem(), alg_.mul(xe, ce.idem())) == xe) inter.push_back(ce.restrict_j(x));
    }
    std::vector<std::int64_t> packed;
    for (const Vec& y : inter) packed.push_back(ctx_e.pack(y));
    std::sort(packed.begin(), packed.end());
    auto orb = ctx_e.orbit_j(ctx_e.unpack(packed.front()));
    require(orb == packed, errc::localization_failed,
            "corner intersection is not a single orbit");
    for (const Vec& y : inter)
      require(ctx_e.is_regular(y), errc::localization_failed,
              "corner intersection contains a singular element");
    if (intersection) *intersection = std::move(inter);
    return meet;
  }

  // ---- supercharacter labels ----

  const std::vector<Alpha>& alphas() {
    if (!alphas_.empty()) return alphas_;
    std::vector<Alpha> out;
    for (std::uint32_t mask = 0; mask <= kh_.full_mask(); ++mask) {
      ActionContext& ctx = context(mask);
      std::vector<Vec> regular_reps;
      for (const auto& orb : ctx.partition_dual()) {
        Vec rep = ctx.unpack(orb.front());
        if (ctx.is_regular_dual(rep)) regular_reps.push_back(rep);
      }
      if (regular_reps.empty()) continue;
      const Corner& c = corner(mask);
      auto h_of_e = subgroup_h_of_e(alg_, c.idem());
      auto st = std::make_shared<const AbelianStructure>(abelian_structure(alg_, h_of_e));
      for (const auto& theta : characters_of(st)) {
        for (const Vec& rep : regular_reps) {
          Alpha a;
          a.label = {mask, theta.exps, rep};
          a.theta = theta;
          a.h_of_e = h_of_e;
          pick_lambda_(a, ctx, c);
          build_stabilizer_(a);
          out.push_back(std::move(a));
        }
      }
    }
    alphas_ = std::move(out);
    return alphas_;
  }

  /// xi_{theta,lambda}(g) = theta(h) eps(lambda(x)) on G_lambda = H(e)(1 + J_{lambda,right}).
  Cyclo xi_eval(const Alpha& a, const GroupElem& g) const {
    require(a.in_h_of_e(g.h) && in_right_kernel_(a, g.x), errc::not_in_stabilizer,
            "element outside G_lambda");
    FqElem lx = 0;
    const Fq& F = alg_.field();
    for (std::size_t i = 0; i < g.x.size(); ++i)
      if (a.lambda_ambient[i] && g.x[i]) lx = F.add(lx, F.mul(a.lambda_ambient[i], g.x[i]));
    return (a.theta.eval(g.h) * additive_char(F, lx)).reduced();
  }

  /// Induced character by direct summation over G:
  /// chi(g) = (1/|G_lambda|) sum_s xi_dot(s g s^{-1}).
  Cyclo induced_value(const Alpha& a, const GroupElem& g) {
    ensure_inverses_();
    // the H part is constant under conjugation, so theta factors out
    if (!a.in_h_of_e(g.h)) return Cyclo::zero();
    const Fq& F = alg_.field();
    std::vector<std::int64_t> trace_count(F.p(), 0);
    for (std::int64_t s = 0; s < gi_.order(); ++s) {
      GroupElem se = gi_.at(s);
      GroupElem c = g_mul(alg_, g_mul(alg_, se, g), inv_cache_[s]);
      if (!in_right_kernel_(a, c.x)) continue;
      FqElem lx = 0;
      for (std::size_t i = 0; i < c.x.size(); ++i)
        if (a.lambda_ambient[i] && c.x[i]) lx = F.add(lx, F.mul(a.lambda_ambient[i], c.x[i]));
      ++trace_count[F.trace(lx)];
    }
    Cyclo sum = Cyclo::zero();
    for (std::int64_t t = 0; t < F.p(); ++t)
      if (trace_count[t]) sum = sum + Rational(trace_count[t]) * Cyclo::root_of_unity(F.p(), t);
    return (a.theta.eval(g.h) * sum).divided_by(Rational(a.g_lambda_order)).reduced();
  }

  SupercharacterTable table() {
    superclasses();
    alphas();
    SupercharacterTable t;
    t.group_order = gi_.order();
    for (const auto& a : alphas_) {
      t.alphas.push_back(a.label);
      t.degrees.push_back(a.degree);
    }
    for (const auto& b : classes_) {
      t.betas.push_back(b.label);
      t.class_sizes.push_back((std::int64_t)b.x_members.size());
    }
    require(t.alphas.size() == t.betas.size(), errc::internal,
            "supercharacter and superclass counts differ");
    std::int64_t size_sum = 0;
    for (auto s : t.class_sizes) size_sum += s;
    require(size_sum == gi_.order(), errc::internal, "superclasses do not cover G");
    // the label count formula: sum over strata of |H(e)| * n_E(J_e)
    std::int64_t formula = 0;
    for (std::uint32_t mask = 0; mask <= kh_.full_mask(); ++mask) {
      std::int64_t ne = counts(mask).j_regular;
      if (ne == 0) continue;
      formula += (std::int64_t)subgroup_h_of_e(alg_, kh_.idem(mask)).size() * ne;
    }
    require(formula == (std::int64_t)t.betas.size(), errc::internal,
            "stratified count formula disagrees with enumeration");

    ensure_inverses_();
    t.values.assign(alphas_.size(), std::vector<Cyclo>(classes_.size()));
    parallel_for(alphas_.size(), cfg_.threads, [&](std::size_t ai) {
      for (std::size_t bi = 0; bi < classes_.size(); ++bi)
        t.values[ai][bi] = induced_value(alphas_[ai], classes_[bi].rep);
    });
    // degree = value at the class of 1 = [G : G_lambda]
    std::size_t one_idx = identity_class_index();
    for (std::size_t ai = 0; ai < alphas_.size(); ++ai)
      require(t.values[ai][one_idx] == Cyclo(Rational(alphas_[ai].degree)), errc::internal,
              "induced degree mismatch");
    return t;
  }

  VerifyReport verify() {
    require(gi_.order() <= cfg_.s2_scan_bound, errc::too_large,
            "group too large for the full verification scan");
    SupercharacterTable t = table();
    VerifyReport rep;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
      rep.checks.push_back({name, pass, detail});
    };

    // (a) S1
    check("S1_counts", t.alphas.size() == t.betas.size(),
          std::to_string(t.alphas.size()) + " supercharacters, " + std::to_string(t.betas.size()) +
              " superclasses");

    // (b) S2: every chi at every element of every class
    bool s2 = true;
    std::string s2_witness;
    for (std::size_t ai = 0; ai < alphas_.size() && s2; ++ai)
      for (std::size_t bi = 0; bi < classes_.size() && s2; ++bi)
        for (auto xm : classes_[bi].x_members) {
          GroupElem g{classes_[bi].h, gi_.unpack_x(xm)};
          if (induced_value(alphas_[ai], g) != t.values[ai][bi]) {
            s2 = false;
            s2_witness = "alpha " + std::to_string(ai) + " not constant on class " +
                         std::to_string(bi);
            break;
          }
        }
    check("S2_constancy", s2, s2_witness);

    // (c) S3
    std::size_t one_idx = identity_class_index();
    check("S3_identity_singleton", classes_[one_idx].x_members.size() == 1 &&
                                       classes_[one_idx].rep == g_identity(alg_),
          "");

    // (d) pairwise disjointness via exact inner products
    bool disjoint = true;
    std::string dw;
    std::vector<Cyclo> norms(alphas_.size());
    for (std::size_t ai = 0; ai < alphas_.size(); ++ai)
      for (std::size_t bi = ai; bi < alphas_.size(); ++bi) {
        Cyclo ip = Cyclo::zero();
        for (std::size_t k = 0; k < classes_.size(); ++k)
          ip = ip + Rational(t.class_sizes[k]) * t.values[ai][k] * t.values[bi][k].conjugate();
        ip = ip.divided_by(Rational(gi_.order()));
        if (ai == bi) {
          norms[ai] = ip;
        } else if (!ip.is_zero()) {
          disjoint = false;
          dw = "alphas " + std::to_string(ai) + "," + std::to_string(bi);
        }
      }
    check("disjointness", disjoint, dw);

    // (e) regular character identity: sum_a (deg_a / <chi,chi>) chi_a(g) = |G|[g=1]
    bool regid = true;
    std::string rw;
    for (std::size_t bi = 0; bi < classes_.size() && regid; ++bi) {
      Cyclo acc = Cyclo::zero();
      for (std::size_t ai = 0; ai < alphas_.size(); ++ai) {
        auto nr = norms[ai].as_rational();
        if (!nr || *nr == 0) {
          regid = false;
          rw = "norm of alpha " + std::to_string(ai) + " is not a nonzero rational";
          break;
        }
        acc = acc + (Rational(alphas_[ai].degree) / *nr) * t.values[ai][bi];
      }
      Cyclo expect = bi == one_idx ? Cyclo(Rational(gi_.order())) : Cyclo::zero();
      if (regid && acc != expect) {
        regid = false;
        rw = "fails at class " + std::to_string(bi);
      }
    }
    check("regular_character_identity", regid, rw);

    // (f) each superclass is a union of conjugacy classes
    bool refine = true;
    std::string fw;
    auto conj_classes = conjugacy_classes();
    std::vector<std::int64_t> class_of(gi_.order(), -1);
    for (std::size_t k = 0; k < classes_.size(); ++k)
      for (auto xm : classes_[k].x_members)
        class_of[classes_[k].h * gi_.x_count() + xm] = (std::int64_t)k;
    for (const auto& cc : conj_classes) {
      std::int64_t owner = class_of[cc.front()];
      for (auto m : cc)
        if (class_of[m] != owner) {
          refine = false;
          fw = "conjugacy class split across superclasses";
        }
    }
    check("conjugacy_refinement", refine, fw);

    // (g) sizes add up
    std::int64_t size_sum = 0;
    for (auto s : t.class_sizes) size_sum += s;
    check("partition_sizes", size_sum == gi_.order(),
          std::to_string(size_sum) + " vs |G|=" + std::to_string(gi_.order()));

    return rep;
  }

  /// Conjugacy classes as sorted vectors of packed group indices.
  std::vector<std::vector<std::int64_t>> conjugacy_classes() {
    ensure_inverses_();
    // closure under conjugation by the generators of G: H and 1 + c b_j
    std::vector<GroupElem> gens;
    for (int h = 0; h < alg_.h_count(); ++h) gens.push_back({h, alg_.j_zero()});
    for (int j = 0; j < alg_.dim_j(); ++j)
      for (FqElem c = 1; c < (FqElem)alg_.field().q(); ++c) {
        Vec x = alg_.j_zero();
        x[j] = c;
        gens.push_back({alg_.h_unit(), x});
      }
    std::vector<bool> seen(gi_.order(), false);
    std::vector<std::vector<std::int64_t>> out;
    for (std::int64_t idx = 0; idx < gi_.order(); ++idx) {
      if (seen[idx]) continue;
      std::vector<std::int64_t> cls = {idx};
      seen[idx] = true;
      std::vector<GroupElem> frontier = {gi_.at(idx)};
      while (!frontier.empty()) {
        std::vector<GroupElem> next;
        for (const auto& g : frontier)
          for (const auto& s : gens) {
            GroupElem c = g_conj(alg_, s, g);
            std::int64_t ci = gi_.index_of(c);
            if (!seen[ci]) {
              seen[ci] = true;
              cls.push_back(ci);
              next.push_back(c);
            }
          }
        frontier = std::move(next);
      }
      std::sort(cls.begin(), cls.end());
      out.push_back(std::move(cls));
    }
    return out;
  }

  std::size_t identity_class_index() {
    superclasses();
    GroupElem one = g_identity(alg_);
    for (std::size_t k = 0; k < classes_.size(); ++k)
      if (classes_[k].h == one.h && classes_[k].x_members.size() == 1 &&
          classes_[k].rep == one)
        return k;
    // identity may sit in a larger class only if something is broken
    for (std::size_t k = 0; k < classes_.size(); ++k)
      if (classes_[k].h == one.h)
        for (auto xm : classes_[k].x_members)
          if (gi_.unpack_x(xm) == one.x) return k;
    fail(errc::internal, "identity class not found");
  }

 private:
  Algebra alg_;
  TheoryConfig cfg_;
  KHDecomposition kh_;
  GroupIndex gi_;
  std::unique_ptr<ActionContext> ambient_ctx_;
  std::mutex mu_;
  std::map<std::uint32_t, std::unique_ptr<Corner>> corners_;
  std::map<std::uint32_t, std::unique_ptr<ActionContext>> contexts_;
  std::map<std::uint32_t, RegularCounts> counts_;
  std::vector<Superclass> classes_;
  std::vector<Alpha> alphas_;
  std::vector<GroupElem> inv_cache_;

  void ensure_inverses_() {
    if (!inv_cache_.empty()) return;
    inv_cache_.resize(gi_.order());
    for (std::int64_t s = 0; s < gi_.order(); ++s) inv_cache_[s] = g_inv(alg_, gi_.at(s));
  }

  /// Attaches the label (e, h, omega) to a freshly computed class.
  void label_class_(Superclass& sc) {
    const Vec& hv = alg_.h_elem(sc.h);
    Vec s = alg_.sub(hv, alg_.unity());
    std::uint32_t f_mask = kh_.full_mask() & ~kh_.associated_mask(s);

    // members h + y with hy = yh = y, i.e. y in J_f
    std::vector<Vec> in_jf;
    bool have_normal = false;
    for (auto xm : sc.x_members) {
      Vec x = gi_.unpack_x(xm);
      Vec xe = alg_.j_embed(x);
      if (alg_.mul(hv, xe) == xe && alg_.mul(xe, hv) == xe) {
        if (!have_normal) {
          sc.normal_rep = {sc.h, x};
          have_normal = true;
        }
        in_jf.push_back(std::move(x));
      }
    }
    require(have_normal, errc::localization_failed,
            "superclass has no representative in normal form");

    // those members must form a single corner-f orbit
    {
      const Corner& cf = corner(f_mask);
      ActionContext& ctx_f = context(f_mask);
      std::vector<std::int64_t> packed;
      for (const Vec& y : in_jf) packed.push_back(ctx_f.pack(cf.restrict_j(y)));
      std::sort(packed.begin(), packed.end());
      auto orb = ctx_f.orbit_j(ctx_f.unpack(packed.front()));
      require(orb == packed, errc::localization_failed,
              "normal-form members do not form one corner orbit");
    }

    std::vector<Vec> inter;
    std::uint32_t e_mask = localize_orbit(f_mask, in_jf, &inter);
    ActionContext& ctx_e = context(e_mask);
    std::int64_t best = ctx_e.pack(inter.front());
    for (const Vec& y : inter) best = std::min(best, ctx_e.pack(y));
    sc.label.e_mask = e_mask;
    sc.label.h_coords = hv;
    sc.label.omega_rep = ctx_e.unpack(best);
    require(alg_.mul(hv, kh_.idem(e_mask)) == kh_.idem(e_mask), errc::internal,
            "class H part does not stabilize its idempotent");
  }

  void pick_lambda_(Alpha& a, ActionContext& ctx, const Corner& c) {
    a.lambda_corner = a.label.omega_star_rep;
    if (cfg_.lambda_choice > 0) {
      auto orb = ctx.orbit_dual(a.label.omega_star_rep);
      std::size_t pick = std::min((std::size_t)cfg_.lambda_choice, orb.size() - 1);
      a.lambda_corner = ctx.unpack(orb[pick]);
    }
    a.lambda_ambient = c.embed_dual(a.lambda_corner);
  }

  void build_stabilizer_(Alpha& a) {
    const Fq& F = alg_.field();
    const int dj = alg_.dim_j();
    // x in J_{lambda,right}  <=>  lambda(x b_j) = 0 for all j
    a.right_kernel_mat = FqMatrix(dj, dj);
    for (int i = 0; i < dj; ++i) {
      Vec bi = alg_.j_embed(Vec(dj, 0));
      bi[alg_.j_first() + i] = 1;
      for (int j = 0; j < dj; ++j) {
        Vec bj(dj, 0);
        bj[j] = 1;
        Vec prod = alg_.j_coords(alg_.mul(bi, alg_.j_embed(bj)));
        FqElem acc = 0;
        for (int k = 0; k < dj; ++k)
          if (a.lambda_ambient[k] && prod[k]) acc = F.add(acc, F.mul(a.lambda_ambient[k], prod[k]));
        a.right_kernel_mat.at(j, i) = acc;
      }
    }
    a.j_lr_dim = (std::int64_t)kernel_basis(F, a.right_kernel_mat).size();
    std::int64_t nsize = 1;
    for (std::int64_t i = 0; i < a.j_lr_dim; ++i) nsize *= F.q();
    a.g_lambda_order = (std::int64_t)a.h_of_e.size() * nsize;
    require(gi_.order() % a.g_lambda_order == 0, errc::internal, "stabilizer order mismatch");
    a.degree = gi_.order() / a.g_lambda_order;
  }

  bool in_right_kernel_(const Alpha& a, const Vec& x) const {
    const Fq& F = alg_.field();
    for (std::size_t r = 0; r < a.right_kernel_mat.rows; ++r) {
      FqElem acc = 0;
      for (std::size_t i = 0; i < a.right_kernel_mat.cols; ++i)
        if (a.right_kernel_mat.at(r, i) && x[i])
          acc = F.add(acc, F.mul(a.right_kernel_mat.at(r, i), x[i]));
      if (acc) return false;
    }
    return true;
  }
};

} // namespace tritype
