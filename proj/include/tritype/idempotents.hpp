#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "tritype/algebra.hpp"
#include "tritype/fqpoly.hpp"

namespace tritype {

struct PrimitiveComponent {
  Vec idem;               // ambient coordinates, idem^2 = idem
  std::vector<Vec> basis; // basis of idem * kH; size = dim_k(k_i)
};

/// The commutative semisimple group algebra kH inside A: primitive
/// idempotents, the full 2^n idempotent lattice keyed by support masks, and
/// the association map of arbitrary kH elements to idempotents.
class KHDecomposition {
 public:
  explicit KHDecomposition(const Algebra& a) : a_(&a) {
    const Fq& F = a.field();
    kh_basis_ = span_basis(F, a.pres().h_elements, a.dim_a());
    kh_solver_ = CoordSolver(F, kh_basis_, a.dim_a());

    // Split components by factoring minimal polynomials of multiplication
    // operators; a component is final when every h acts irreducibly.
    std::vector<PrimitiveComponent> comps = {{a.unity(), kh_basis_}};
    bool changed = true;
    while (changed) {
      changed = false;
      for (int hi = 0; hi < a.h_count() && !changed; ++hi) {
        const Vec& h = a.h_elem(hi);
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
          auto& comp = comps[ci];
          if (comp.basis.size() <= 1) continue;
          CoordSolver cs(F, comp.basis, a.dim_a());
          const std::size_t d = comp.basis.size();
          FqMatrix op(d, d);
          for (std::size_t j = 0; j < d; ++j) {
            Vec col = cs.coords(a.mul(h, comp.basis[j]));
            for (std::size_t i = 0; i < d; ++i) op.at(i, j) = col[i];
          }
          Poly mp = minimal_polynomial(F, op);
          auto factors = berlekamp_factors(F, mp);
          if (factors.size() <= 1) continue;
          std::vector<PrimitiveComponent> split;
          for (const Poly& f : factors) {
            Poly cof = p_divmod(F, mp, f).first;
            Poly w = p_inv_mod(F, cof, f);
            Poly u = p_mod(F, p_mul(F, cof, w), mp); // u = 1 mod f, 0 mod cofactor
            // evaluate u at h inside the component (constant term acts as comp.idem)
            Vec e(a.dim_a(), 0);
            Vec pw = comp.idem;
            for (std::size_t k = 0; k < u.size(); ++k) {
              if (u[k]) e = a.add(e, a.scale(u[k], pw));
              pw = a.mul(pw, h);
            }
            std::vector<Vec> rows;
            for (const auto& b : comp.basis) rows.push_back(a.mul(e, b));
            split.push_back({e, span_basis(F, rows, a.dim_a())});
          }
          comps.erase(comps.begin() + ci);
          comps.insert(comps.end(), split.begin(), split.end());
          changed = true;
          break;
        }
      }
    }
    std::sort(comps.begin(), comps.end(),
              [](const PrimitiveComponent& x, const PrimitiveComponent& y) { return x.idem < y.idem; });
    prims_ = std::move(comps);
    require(prims_.size() <= 30, errc::too_large, "too many primitive idempotents");

    // internal sanity: orthogonal decomposition of unity
    Vec sum = a.zero();
    for (std::size_t i = 0; i < prims_.size(); ++i) {
      require(a.mul(prims_[i].idem, prims_[i].idem) == prims_[i].idem, errc::internal,
              "primitive idempotent is not idempotent");
      for (std::size_t j = i + 1; j < prims_.size(); ++j)
        require(a.is_zero(a.mul(prims_[i].idem, prims_[j].idem)), errc::internal,
                "primitive idempotents not orthogonal");
      sum = a.add(sum, prims_[i].idem);
    }
    require(sum == a.unity(), errc::internal, "primitive idempotents do not sum to unity");
  }

  int n() const { return (int)prims_.size(); }
  const std::vector<PrimitiveComponent>& prims() const { return prims_; }
  std::uint32_t full_mask() const { return (n() == 32) ? ~0u : ((1u << n()) - 1); }
  int ell(std::uint32_t mask) const { return n() - std::popcount(mask); }

  const Vec& idem(std::uint32_t mask) const {
    auto it = idem_cache_.find(mask);
    if (it != idem_cache_.end()) return it->second;
    Vec e = a_->zero();
    for (int i = 0; i < n(); ++i)
      if (mask & (1u << i)) e = a_->add(e, prims_[i].idem);
    return idem_cache_.emplace(mask, std::move(e)).first->second;
  }

  Vec complement(std::uint32_t mask) const { return idem(full_mask() & ~mask); }

  bool in_kh(const Vec& v) const { return kh_solver_.contains(v); }
  const std::vector<Vec>& kh_basis() const { return kh_basis_; }

  /// Support of s in the primitive decomposition; s = u * idem(support) for a
  /// unit u of kH.
  std::uint32_t associated_mask(const Vec& s) const {
    require(in_kh(s), errc::not_in_kh, "element outside span(H)");
    std::uint32_t mask = 0;
    for (int i = 0; i < n(); ++i)
      if (!a_->is_zero(a_->mul(s, prims_[i].idem))) mask |= 1u << i;
    return mask;
  }

  /// A unit u of kH with s = u * idem(associated_mask(s)).
  Vec unit_witness(const Vec& s) const {
    std::uint32_t mask = associated_mask(s);
    Vec u = a_->add(s, complement(mask));
    return u;
  }

  /// All 2^n idempotents in mask order.
  std::vector<std::uint32_t> all_masks() const {
    std::vector<std::uint32_t> ms;
    for (std::uint32_t m = 0; m <= full_mask(); ++m) ms.push_back(m);
    return ms;
  }

 private:
  const Algebra* a_;
  std::vector<PrimitiveComponent> prims_;
  std::vector<Vec> kh_basis_;
  CoordSolver kh_solver_;
  mutable std::map<std::uint32_t, Vec> idem_cache_;
};

/// Pierce components (exe, exe', e'xe, e'xe') of x.
inline std::array<Vec, 4> pierce(const Algebra& a, const Vec& e, const Vec& x) {
  Vec ec = a.sub(a.unity(), e);
  return {a.mul(e, a.mul(x, e)), a.mul(e, a.mul(x, ec)), a.mul(ec, a.mul(x, e)),
          a.mul(ec, a.mul(x, ec))};
}

/// The corner algebra A_e = eAe with its own triangular presentation
/// (H_e = He, J_e = eJe) and the coordinate maps between ambient and corner
/// J and J* vectors.
class Corner {
 public:
  Corner(const Algebra& ambient, const KHDecomposition& kh, std::uint32_t mask)
      : ambient_(&ambient), mask_(mask), e_(kh.idem(mask)) {
    const Fq& F = ambient.field();
    const int dim_a = ambient.dim_a();
    const int dim_j = ambient.dim_j();

    // J_e = eJe, echelonized over ambient J coordinates
    std::vector<Vec> eje;
    for (int j = 0; j < dim_j; ++j) {
      Vec bj = ambient.j_embed(ambient.j_zero());
      bj[ambient.j_first() + j] = 1;
      eje.push_back(ambient.mul(e_, ambient.mul(bj, e_)));
    }
    j_rows_ = span_basis(F, eje, dim_a);
    for (const auto& r : j_rows_) require(ambient.in_j(r), errc::internal, "eJe escaped J");

    // H_e = He, deduplicated along the canonical H order
    h_map_.assign(ambient.h_count(), -1);
    std::map<Vec, int> seen;
    for (int hc : ambient.h_canonical()) {
      Vec he = ambient.mul(ambient.h_elem(hc), e_);
      auto it = seen.find(he);
      if (it == seen.end()) {
        it = seen.emplace(he, (int)h_reps_.size()).first;
        h_reps_.push_back(he);
      }
      h_map_[hc] = it->second;
    }

    // corner presentation over basis [span(H_e) rows; J_e rows]
    std::vector<Vec> h_span = span_basis(F, h_reps_, dim_a);
    std::vector<Vec> basis = h_span;
    basis.insert(basis.end(), j_rows_.begin(), j_rows_.end());
    CoordSolver cs(F, basis, dim_a);
    const int dim = (int)basis.size();
    Presentation p{F, dim, (int)j_rows_.size(), {}, {}, {}};
    p.sc.resize((std::size_t)dim * dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Vec coords = cs.coords(ambient.mul(basis[i], basis[j]));
        for (int k = 0; k < dim; ++k)
          if (coords[k]) p.sc[(std::size_t)i * dim + j].push_back({k, coords[k]});
      }
    p.unity = cs.coords(e_);
    for (const auto& h : h_reps_) p.h_elements.push_back(cs.coords(h));
    alg_ = std::make_shared<Algebra>(std::move(p));

    // coordinate maps for J_e and its dual
    std::vector<Vec> j_rows_in_j;
    for (const auto& r : j_rows_) j_rows_in_j.push_back(ambient.j_coords(r));
    j_solver_ = CoordSolver(F, j_rows_in_j, dim_j);
    // embed matrix for duals: P[k][j] = corner coords of e b_j e
    dual_embed_ = FqMatrix(j_rows_.size(), dim_j);
    for (int j = 0; j < dim_j; ++j) {
      Vec c;
      require(j_solver_.try_coords(ambient.j_coords(eje[j]), c), errc::internal,
              "eJe projection escaped its own span");
      for (std::size_t k = 0; k < j_rows_.size(); ++k) dual_embed_.at(k, j) = c[k];
    }
  }

  std::uint32_t mask() const { return mask_; }
  const Vec& idem() const { return e_; }
  const Algebra& alg() const { return *alg_; }
  int dim_j() const { return (int)j_rows_.size(); }
  const std::vector<Vec>& j_rows() const { return j_rows_; }
  int h_of_ambient(int ambient_h) const { return h_map_[ambient_h]; }
  int h_rep_count() const { return (int)h_reps_.size(); }

  /// Is the ambient J vector inside eJe?
  bool contains_j(const Vec& x_amb) const { return j_solver_.contains(x_amb); }

  /// corner J coordinates of an ambient J vector in eJe
  Vec restrict_j(const Vec& x_amb) const { return j_solver_.coords(x_amb); }

  /// ambient J coordinates of a corner J vector
  Vec embed_j(const Vec& x_corner) const {
    Vec amb(ambient_->dim_j(), 0);
    const Fq& F = ambient_->field();
    for (std::size_t k = 0; k < j_rows_.size(); ++k) {
      if (x_corner[k] == 0) continue;
      Vec jc = ambient_->j_coords(j_rows_[k]);
      for (int i = 0; i < ambient_->dim_j(); ++i)
        amb[i] = F.add(amb[i], F.mul(x_corner[k], jc[i]));
    }
    return amb;
  }

  /// ambient dual coordinates of a corner dual vector (zero off eJe)
  Vec embed_dual(const Vec& mu) const { return vec_mat(ambient_->field(), mu, dual_embed_); }

  /// corner dual coordinates of an ambient dual vector
  Vec restrict_dual(const Vec& lam) const {
    const Fq& F = ambient_->field();
    Vec mu(j_rows_.size(), 0);
    for (std::size_t k = 0; k < j_rows_.size(); ++k) {
      Vec jc = ambient_->j_coords(j_rows_[k]);
      FqElem acc = 0;
      for (int i = 0; i < ambient_->dim_j(); ++i)
        if (jc[i] && lam[i]) acc = F.add(acc, F.mul(jc[i], lam[i]));
      mu[k] = acc;
    }
    return mu;
  }

  /// True when the ambient dual vector vanishes off the eJe Pierce slice.
  bool dual_supported(const Vec& lam) const { return embed_dual(restrict_dual(lam)) == lam; }

 private:
  const Algebra* ambient_;
  std::uint32_t mask_;
  Vec e_;
  std::shared_ptr<Algebra> alg_;
  std::vector<Vec> j_rows_;
  std::vector<Vec> h_reps_;
  std::vector<int> h_map_;
  CoordSolver j_solver_;
  FqMatrix dual_embed_;
};

} // namespace tritype
