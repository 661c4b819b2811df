#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "tritype/supertheory.hpp"

namespace tritype {

struct CrossWitness {
  std::size_t alpha_index = 0;
  std::size_t beta_index = 0;
  std::string detail;
};

struct CrossReport {
  std::int64_t cells = 0;
  std::vector<CrossWitness> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Closed-form supercharacter values: the orbit-sum formulas over Omega* in
/// J_f* and over the tilde-G_f-orbit of x in J_f, plus the algebra-group
/// specializations. All divisions are checked to land on algebraic integers.
class KirillovEvaluator {
 public:
  explicit KirillovEvaluator(Theory& th) : th_(&th) {}

  /// chi_alpha(h + x) = (|H_e| theta(h) / n(Omega*)) sum_{mu in Omega*} eps(mu(x)),
  /// for hx = xh = x; zero when h is outside H(e).
  Cyclo value(const Alpha& a, const GroupElem& g) {
    Setup s = setup_(a, g);
    if (s.vanishes) return Cyclo::zero();
    const OmegaData& od = omega_data_(a, s.f_mask);
    ActionContext& ctx_f = th_->context(s.f_mask);
    const Fq& F = th_->alg().field();
    std::vector<std::int64_t> trace_count(F.p(), 0);
    for (auto mu_packed : od.omega_star) {
      Vec mu = ctx_f.unpack(mu_packed);
      ++trace_count[F.trace(ctx_f.pair_(mu, s.x_f))];
    }
    Cyclo sum = Cyclo::zero();
    for (std::int64_t t = 0; t < F.p(); ++t)
      if (trace_count[t]) sum = sum + Rational(trace_count[t]) * Cyclo::root_of_unity(F.p(), t);
    Cyclo val = (Rational(s.h_e_size) * (a.theta.eval(g.h) * sum))
                    .divided_by(Rational(od.n_right_orbits));
    require(val.has_integer_coeffs(), errc::non_integral,
            "orbit sum is not divisible by n(Omega*)");
    return val.reduced();
  }

  /// chi_alpha(h + x) = (|H_e| |lambda N_f| theta(h) / |orbit of x|)
  ///                    sum_{y in orbit of x} eps(lambda(y)).
  Cyclo value_v2(const Alpha& a, const GroupElem& g) {
    Setup s = setup_(a, g);
    if (s.vanishes) return Cyclo::zero();
    ActionContext& ctx_f = th_->context(s.f_mask);
    const Fq& F = th_->alg().field();
    auto orbit_x = ctx_f.orbit_j(s.x_f);
    std::int64_t lambda_right = (std::int64_t)ctx_f.orbit_dual(s.lambda_f, ActionContext::right_n).size();
    std::vector<std::int64_t> trace_count(F.p(), 0);
    for (auto yp : orbit_x) ++trace_count[F.trace(ctx_f.pair_(s.lambda_f, ctx_f.unpack(yp)))];
    Cyclo sum = Cyclo::zero();
    for (std::int64_t t = 0; t < F.p(); ++t)
      if (trace_count[t]) sum = sum + Rational(trace_count[t]) * Cyclo::root_of_unity(F.p(), t);
    Cyclo val = (Rational(s.h_e_size * lambda_right) * (a.theta.eval(g.h) * sum))
                    .divided_by(Rational((std::int64_t)orbit_x.size()));
    require(val.has_integer_coeffs(), errc::non_integral,
            "orbit sum is not divisible by the orbit size");
    return val.reduced();
  }

  /// Algebra-group case (|H| = 1): both published variants, computed with
  /// two-sided N x N orbits only, and required to agree.
  std::pair<Cyclo, Cyclo> di_values(const Vec& lambda_ambient, const Vec& x) {
    require(th_->alg().h_count() == 1, errc::internal, "di_values requires trivial H");
    ActionContext& ctx = th_->ambient_context();
    const Fq& F = th_->alg().field();
    unsigned two_sided = ActionContext::left_n | ActionContext::right_n;

    auto big_orbit = ctx.orbit_dual(lambda_ambient, two_sided); // G lambda G
    // n(lambda) = number of right G-orbits inside G lambda G
    std::vector<bool> seen_local(big_orbit.size(), false);
    std::int64_t n_lambda = 0;
    std::map<std::int64_t, std::size_t> pos;
    for (std::size_t i = 0; i < big_orbit.size(); ++i) pos[big_orbit[i]] = i;
    for (std::size_t i = 0; i < big_orbit.size(); ++i) {
      if (seen_local[i]) continue;
      ++n_lambda;
      for (auto m : ctx.orbit_dual(ctx.unpack(big_orbit[i]), ActionContext::right_n))
        seen_local[pos.at(m)] = true;
    }
    Cyclo v1 = Cyclo::zero();
    for (auto mp : big_orbit) {
      Vec mu = ctx.unpack(mp);
      v1 = v1 + additive_char(F, ctx.pair_(mu, x));
    }
    v1 = v1.divided_by(Rational(n_lambda));
    require(v1.has_integer_coeffs(), errc::non_integral, "Gλ G sum not divisible by n(lambda)");

    auto x_orbit = ctx.orbit_j(x, two_sided); // G x G
    std::int64_t lambda_right = (std::int64_t)ctx.orbit_dual(lambda_ambient, ActionContext::right_n).size();
    Cyclo v2 = Cyclo::zero();
    for (auto yp : x_orbit) v2 = v2 + additive_char(F, ctx.pair_(lambda_ambient, ctx.unpack(yp)));
    v2 = Rational(lambda_right) * v2;
    v2 = v2.divided_by(Rational((std::int64_t)x_orbit.size()));
    require(v2.has_integer_coeffs(), errc::non_integral, "GxG sum not divisible by |GxG|");

    require(v1 == v2, errc::mismatch, "the two algebra-group formulas disagree");
    return {v1.reduced(), v2.reduced()};
  }

  /// Every (alpha, superclass) cell, evaluated three ways at the normal-form
  /// representative: induction, the Omega* formula, and the x-orbit formula.
  CrossReport cross_validate() {
    const auto& alphas = th_->alphas();
    const auto& classes = th_->superclasses();
    th_->precompute_inverses();
    // touch every corner and context up front; parallel workers then only read
    for (const auto& a : alphas) warm_(a);
    CrossReport rep;
    std::vector<std::vector<CrossWitness>> cell_issues(alphas.size());
    parallel_for(alphas.size(), th_->config().threads, [&](std::size_t ai) {
      for (std::size_t bi = 0; bi < classes.size(); ++bi) {
        const GroupElem& g = classes[bi].normal_rep;
        Cyclo ind = th_->induced_value(alphas[ai], g);
        Cyclo k1 = value(alphas[ai], g);
        Cyclo k2 = value_v2(alphas[ai], g);
        if (!(ind == k1 && k1 == k2))
          cell_issues[ai].push_back({ai, bi, "induced=" + ind.exact_string() + " kirillov=" +
                                                 k1.exact_string() + " v2=" + k2.exact_string()});
      }
    });
    rep.cells = (std::int64_t)(alphas.size() * classes.size());
    for (const auto& issues : cell_issues)
      rep.mismatches.insert(rep.mismatches.end(), issues.begin(), issues.end());
    return rep;
  }

 private:
  struct Setup {
    bool vanishes = false;
    std::uint32_t f_mask = 0;
    Vec x_f;      // corner-f J coordinates of x
    Vec lambda_f; // corner-f dual coordinates of lambda
    std::int64_t h_e_size = 0; // |H_e| = |H| / |H(e)|
  };

  struct OmegaData {
    std::vector<std::int64_t> omega_star; // packed corner-f dual vectors
    std::int64_t n_right_orbits = 0;
  };

  Theory* th_;
  std::mutex memo_mu_;
  std::map<std::tuple<std::uint32_t, std::int64_t, std::uint32_t>, OmegaData> omega_memo_;

  void warm_(const Alpha& a) {
    for (int h = 0; h < th_->alg().h_count(); ++h) {
      Vec diff = th_->alg().sub(th_->alg().h_elem(h), th_->alg().unity());
      std::uint32_t f = th_->kh().full_mask() & ~th_->kh().associated_mask(diff);
      th_->context(f);
      th_->context(a.label.e_mask);
    }
  }

  Setup setup_(const Alpha& a, const GroupElem& g) {
    const Algebra& alg = th_->alg();
    const Vec& hv = alg.h_elem(g.h);
    Vec xe = alg.j_embed(g.x);
    require(alg.mul(hv, xe) == xe && alg.mul(xe, hv) == xe, errc::bad_representative,
            "evaluation point must satisfy hx = xh = x");
    Setup s;
    if (!a.in_h_of_e(g.h)) {
      s.vanishes = true;
      return s;
    }
    Vec diff = alg.sub(hv, alg.unity());
    s.f_mask = th_->kh().full_mask() & ~th_->kh().associated_mask(diff);
    require((a.label.e_mask & s.f_mask) == a.label.e_mask, errc::internal,
            "stratum idempotent does not sit below f");
    const Corner& cf = th_->corner(s.f_mask);
    s.x_f = cf.restrict_j(g.x);
    require(cf.dual_supported(a.lambda_ambient), errc::internal,
            "inducing functional escapes the f corner");
    s.lambda_f = cf.restrict_dual(a.lambda_ambient);
    s.h_e_size = th_->alg().h_count() / (std::int64_t)a.h_of_e.size();
    return s;
  }

  const OmegaData& omega_data_(const Alpha& a, std::uint32_t f_mask) {
    ActionContext& ctx_e = th_->context(a.label.e_mask);
    auto key = std::make_tuple(a.label.e_mask, ctx_e.pack(a.lambda_corner), f_mask);
    {
      std::lock_guard<std::mutex> lock(memo_mu_);
      auto it = omega_memo_.find(key);
      if (it != omega_memo_.end()) return it->second;
    }
    const Corner& cf = th_->corner(f_mask);
    const Corner& ce = th_->corner(a.label.e_mask);
    ActionContext& ctx_f = th_->context(f_mask);
    OmegaData od;
    od.omega_star = ctx_f.orbit_dual(cf.restrict_dual(a.lambda_ambient));

    // Omega* must slice down to omega* exactly (its uniqueness property):
    // members supported on the e corner, read in ambient coordinates.
    std::vector<std::int64_t> sliced;
    for (auto mp : od.omega_star) {
      Vec mu_amb = cf.embed_dual(ctx_f.unpack(mp));
      if (ce.dual_supported(mu_amb)) sliced.push_back(th_->ambient_context().pack(mu_amb));
    }
    std::sort(sliced.begin(), sliced.end());
    std::vector<std::int64_t> omega_star_e;
    for (auto op : ctx_e.orbit_dual(a.label.omega_star_rep))
      omega_star_e.push_back(th_->ambient_context().pack(ce.embed_dual(ctx_e.unpack(op))));
    std::sort(omega_star_e.begin(), omega_star_e.end());
    require(sliced == omega_star_e, errc::internal,
            "Omega* does not restrict to omega* on the e corner");

    // right N_f-orbit count inside Omega*
    std::map<std::int64_t, bool> seen;
    for (auto m : od.omega_star) seen[m] = false;
    for (auto m : od.omega_star) {
      if (seen.at(m)) continue;
      ++od.n_right_orbits;
      for (auto r : ctx_f.orbit_dual(ctx_f.unpack(m), ActionContext::right_n)) seen.at(r) = true;
    }
    std::lock_guard<std::mutex> lock(memo_mu_);
    return omega_memo_.emplace(key, std::move(od)).first->second;
  }
};

} // namespace tritype
