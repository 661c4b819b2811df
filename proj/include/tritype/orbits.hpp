#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "tritype/group.hpp"
#include "tritype/idempotents.hpp"

namespace tritype {

/// The actions of tilde-G = { (t, a, b) : t in H, a,b in N } on J, on J*, and
/// on G, over one algebra (ambient or a corner). Orbit closures run over the
/// generator set { 1 + c b_j } of N plus conjugation by H; a one-time check
/// certifies that those multipliers really generate all of N.
class ActionContext {
 public:
  explicit ActionContext(const Algebra& a, std::int64_t space_bound = 2000000)
      : a_(&a), bound_(space_bound) {
    const Fq& F = a.field();
    const int dj = a.dim_j();
    space_size_ = 1;
    for (int i = 0; i < dj; ++i) {
      require(space_size_ <= bound_, errc::too_large, "orbit space exceeds bound");
      space_size_ *= F.q();
    }
    lmat_.reserve(dj);
    rmat_.reserve(dj);
    for (int j = 0; j < dj; ++j) {
      FqMatrix lm(dj, dj), rm(dj, dj);
      Vec bj = basis_j_(j);
      for (int jp = 0; jp < dj; ++jp) {
        Vec bjp = basis_j_(jp);
        Vec lc = a.j_coords(a.mul(a.j_embed(bj), a.j_embed(bjp)));
        Vec rc = a.j_coords(a.mul(a.j_embed(bjp), a.j_embed(bj)));
        for (int i = 0; i < dj; ++i) {
          lm.at(i, jp) = lc[i];
          rm.at(i, jp) = rc[i];
        }
      }
      lmat_.push_back(std::move(lm));
      rmat_.push_back(std::move(rm));
    }
    conj_.reserve(a.h_count());
    for (int h = 0; h < a.h_count(); ++h) {
      FqMatrix cm(dj, dj);
      const Vec& hv = a.h_elem(h);
      const Vec& hinv = a.h_elem(a.h_inv(h));
      for (int jp = 0; jp < dj; ++jp) {
        Vec col = a.j_coords(a.mul(hv, a.mul(a.j_embed(basis_j_(jp)), hinv)));
        for (int i = 0; i < dj; ++i) cm.at(i, jp) = col[i];
      }
      conj_.push_back(std::move(cm));
    }
  }

  const Algebra& alg() const { return *a_; }
  std::int64_t space_size() const { return space_size_; }

  std::int64_t pack(const Vec& x) const {
    std::int64_t code = 0;
    for (std::size_t i = 0; i < x.size(); ++i) code = code * a_->field().q() + x[i];
    return code;
  }

  Vec unpack(std::int64_t code) const {
    Vec x(a_->dim_j());
    for (int i = a_->dim_j() - 1; i >= 0; --i) {
      x[i] = (FqElem)(code % a_->field().q());
      code /= a_->field().q();
    }
    return x;
  }

  /// Certifies that { 1 + c b_j } generates N = 1 + J: the closure of 1 under
  /// left multiplication must have q^dim_J elements.
  void certify_generation() const {
    if (generation_ok_) return;
    std::unordered_set<std::int64_t> seen = {pack(a_->j_zero())};
    std::vector<Vec> frontier = {a_->j_zero()};
    const Fq& F = a_->field();
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const Vec& u : frontier) {
        for (int j = 0; j < a_->dim_j(); ++j) {
          Vec lu = mat_vec(F, lmat_[j], u);
          for (FqElem c = 1; c < (FqElem)F.q(); ++c) {
            // (1 + c b_j)(1 + u) = 1 + u + c b_j + c b_j u
            Vec v = u;
            for (int i = 0; i < a_->dim_j(); ++i) v[i] = F.add(v[i], F.mul(c, lu[i]));
            v[j] = F.add(v[j], c);
            if (seen.insert(pack(v)).second) next.push_back(std::move(v));
          }
        }
      }
      frontier = std::move(next);
    }
    require((std::int64_t)seen.size() == space_size_, errc::generation_check_failed,
            "elementary multipliers generate only " + std::to_string(seen.size()) + " of " +
                std::to_string(space_size_) + " elements of N");
    generation_ok_ = true;
  }

  // ---- direct actions (tau given explicitly), mainly for property tests ----

  /// rho(tau)(x) = t a x b^{-1} t^{-1} with a = 1+ua, b = 1+ub.
  Vec act_j(int t, const Vec& ua, const Vec& ub, const Vec& x) const {
    Vec a_el = n_elem_(ua);
    Vec b_inv = n_elem_(a_->n_inv(ub));
    Vec v = a_->mul(a_->h_elem(t), a_->mul(a_el, a_->mul(a_->j_embed(x), a_->mul(b_inv, a_->h_elem(a_->h_inv(t))))));
    return a_->j_coords(v);
  }

  /// R_tau(g) = 1 + t a (g-1) b^{-1} t^{-1}; fixes the H part of g.
  GroupElem act_g(int t, const Vec& ua, const Vec& ub, const GroupElem& g) const {
    Vec g_minus_1 = a_->sub(g_to_vec(*a_, g), a_->unity());
    Vec a_el = n_elem_(ua);
    Vec b_inv = n_elem_(a_->n_inv(ub));
    Vec v = a_->mul(a_->h_elem(t), a_->mul(a_el, a_->mul(g_minus_1, a_->mul(b_inv, a_->h_elem(a_->h_inv(t))))));
    return g_from_vec(*a_, a_->add(a_->unity(), v));
  }

  /// rho*(tau)(lambda) = lambda o rho(tau^{-1}); coordinates over the J basis.
  Vec act_dual(int t, const Vec& ua, const Vec& ub, const Vec& lam) const {
    // tau^{-1} = (t^{-1}, t a^{-1} t^{-1}, t b^{-1} t^{-1})
    int ti = a_->h_inv(t);
    Vec a_inv_c = conj_n_(t, a_->n_inv(ua));
    Vec b_inv_c = conj_n_(t, a_->n_inv(ub));
    Vec out(a_->dim_j(), 0);
    for (int j = 0; j < a_->dim_j(); ++j) {
      Vec img = act_j(ti, a_inv_c, b_inv_c, basis_j_(j));
      out[j] = pair_(lam, img);
    }
    return out;
  }

  FqElem pair_(const Vec& lam, const Vec& x) const {
    FqElem acc = 0;
    for (std::size_t i = 0; i < lam.size(); ++i)
      if (lam[i] && x[i]) acc = a_->field().add(acc, a_->field().mul(lam[i], x[i]));
    return acc;
  }

  // ---- orbit closures (packed, sorted; representative = front) ----

  enum move_mask : unsigned {
    left_n = 1,   // x -> (1 + c b_j) x        | lambda -> lambda (1 + c b_j)
    right_n = 2,  // x -> x (1 + c b_j)        | lambda -> (1 + c b_j) lambda
    conj_h = 4,
    all_moves = 7
  };

  std::vector<std::int64_t> orbit_j(const Vec& seed, unsigned moves = all_moves) const {
    certify_generation();
    const Fq& F = a_->field();
    return bfs_(seed, [&](const Vec& x, auto&& emit) {
      if (moves & left_n)
        for (int j = 0; j < a_->dim_j(); ++j) apply_scaled_(mat_vec(F, lmat_[j], x), x, emit);
      if (moves & right_n)
        for (int j = 0; j < a_->dim_j(); ++j) apply_scaled_(mat_vec(F, rmat_[j], x), x, emit);
      if (moves & conj_h)
        for (int h = 0; h < a_->h_count(); ++h) emit(mat_vec(F, conj_[h], x));
    });
  }

  /// tilde-G-orbit of the J part of h + x inside the superclass of h + x:
  /// x -> x + c(b_j (h-1) + b_j x), x -> x + c((h-1) b_j + x b_j), x -> h0 x h0^{-1}.
  std::vector<std::int64_t> orbit_g(int h, const Vec& seed) const {
    certify_generation();
    const Fq& F = a_->field();
    Vec hm1 = a_->sub(a_->h_elem(h), a_->unity());
    std::vector<Vec> vl(a_->dim_j()), vr(a_->dim_j());
    for (int j = 0; j < a_->dim_j(); ++j) {
      vl[j] = a_->j_coords(a_->mul(a_->j_embed(basis_j_(j)), hm1));
      vr[j] = a_->j_coords(a_->mul(hm1, a_->j_embed(basis_j_(j))));
    }
    return bfs_(seed, [&](const Vec& x, auto&& emit) {
      for (int j = 0; j < a_->dim_j(); ++j) {
        Vec lx = mat_vec(F, lmat_[j], x);
        for (int i = 0; i < a_->dim_j(); ++i) lx[i] = F.add(lx[i], vl[j][i]);
        apply_scaled_(lx, x, emit);
        Vec rx = mat_vec(F, rmat_[j], x);
        for (int i = 0; i < a_->dim_j(); ++i) rx[i] = F.add(rx[i], vr[j][i]);
        apply_scaled_(rx, x, emit);
      }
      for (int h0 = 0; h0 < a_->h_count(); ++h0) emit(mat_vec(F, conj_[h0], x));
    });
  }

  /// Dual orbits. right_n here means the right translation action
  /// (lambda a)(x) = lambda(ax), i.e. lambda -> lambda + c (lambda o L_j).
  std::vector<std::int64_t> orbit_dual(const Vec& seed, unsigned moves = all_moves) const {
    certify_generation();
    const Fq& F = a_->field();
    return bfs_(seed, [&](const Vec& lam, auto&& emit) {
      if (moves & right_n)
        for (int j = 0; j < a_->dim_j(); ++j) apply_scaled_(vec_mat(F, lam, lmat_[j]), lam, emit);
      if (moves & left_n)
        for (int j = 0; j < a_->dim_j(); ++j) apply_scaled_(vec_mat(F, lam, rmat_[j]), lam, emit);
      if (moves & conj_h)
        for (int h = 0; h < a_->h_count(); ++h)
          emit(vec_mat(F, lam, conj_[a_->h_inv(h)]));
    });
  }

  /// Partition of the whole space into orbits, ordered by minimal member.
  std::vector<std::vector<std::int64_t>> partition_j(unsigned moves = all_moves) const {
    return partition_([&](const Vec& s) { return orbit_j(s, moves); });
  }
  std::vector<std::vector<std::int64_t>> partition_dual(unsigned moves = all_moves) const {
    return partition_([&](const Vec& s) { return orbit_dual(s, moves); });
  }

  // ---- regularity ----

  /// x in J is regular inside this algebra when every two-sided annihilator
  /// { c : cx = xc = 0 } lies in J.
  bool is_regular(const Vec& x) const {
    const int da = a_->dim_a();
    const Vec xe = a_->j_embed(x);
    FqMatrix m(2 * da, da);
    for (int i = 0; i < da; ++i) {
      Vec bi = a_->pres().basis_vec(i);
      Vec cx = a_->mul(bi, xe);
      Vec xc = a_->mul(xe, bi);
      for (int r = 0; r < da; ++r) {
        m.at(r, i) = cx[r];
        m.at(da + r, i) = xc[r];
      }
    }
    return annihilator_inside_j_(m);
  }

  /// Dual criterion with (c lambda)(x) = lambda(xc), (lambda c)(x) = lambda(cx).
  bool is_regular_dual(const Vec& lam) const {
    const int da = a_->dim_a();
    const int dj = a_->dim_j();
    FqMatrix m(2 * dj, da);
    for (int i = 0; i < da; ++i) {
      Vec bi = a_->pres().basis_vec(i);
      for (int j = 0; j < dj; ++j) {
        Vec xj = a_->j_embed(basis_j_(j));
        m.at(j, i) = pair_(lam, a_->j_coords(a_->mul(xj, bi)));
        m.at(dj + j, i) = pair_(lam, a_->j_coords(a_->mul(bi, xj)));
      }
    }
    return annihilator_inside_j_(m);
  }

 private:
  const Algebra* a_;
  std::int64_t bound_;
  std::int64_t space_size_ = 1;
  std::vector<FqMatrix> lmat_, rmat_, conj_;
  mutable bool generation_ok_ = false;

  Vec basis_j_(int j) const {
    Vec x(a_->dim_j(), 0);
    x[j] = 1;
    return x;
  }

  Vec n_elem_(const Vec& u) const { return a_->add(a_->unity(), a_->j_embed(u)); }

  /// t u t^{-1} as J coordinates.
  Vec conj_n_(int t, const Vec& u) const { return mat_vec(a_->field(), conj_[t], u); }

  template <class Emit>
  void apply_scaled_(const Vec& delta, const Vec& base, Emit&& emit) const {
    const Fq& F = a_->field();
    for (FqElem c = 1; c < (FqElem)F.q(); ++c) {
      Vec v = base;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (delta[i]) v[i] = F.add(v[i], F.mul(c, delta[i]));
      emit(std::move(v));
    }
  }

  template <class Moves>
  std::vector<std::int64_t> bfs_(const Vec& seed, Moves&& moves) const {
    std::unordered_set<std::int64_t> seen = {pack(seed)};
    std::vector<Vec> frontier = {seed};
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const Vec& x : frontier)
        moves(x, [&](Vec v) {
          if (seen.insert(pack(v)).second) next.push_back(std::move(v));
        });
      frontier = std::move(next);
    }
    std::vector<std::int64_t> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  template <class OrbitFn>
  std::vector<std::vector<std::int64_t>> partition_(OrbitFn&& orbit) const {
    require(space_size_ <= bound_, errc::too_large, "space too large to partition");
    std::vector<bool> seen(space_size_, false);
    std::vector<std::vector<std::int64_t>> parts;
    for (std::int64_t code = 0; code < space_size_; ++code) {
      if (seen[code]) continue;
      auto orb = orbit(unpack(code));
      for (auto m : orb) seen[m] = true;
      parts.push_back(std::move(orb));
    }
    return parts;
  }

  bool annihilator_inside_j_(const FqMatrix& m) const {
    auto ker = kernel_basis(a_->field(), m);
    // kernel dimension restricted to c in J
    FqMatrix mj(m.rows, a_->dim_j());
    for (std::size_t r = 0; r < m.rows; ++r)
      for (int j = 0; j < a_->dim_j(); ++j) mj.at(r, j) = m.at(r, a_->j_first() + j);
    auto ker_j = kernel_basis(a_->field(), mj);
    return ker.size() == ker_j.size();
  }
};

} // namespace tritype
