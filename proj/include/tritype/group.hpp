#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "tritype/algebra.hpp"
#include "tritype/cyclotomic.hpp"

namespace tritype {

/// Element h + x of G = H + J: an index into the H list plus J coordinates.
struct GroupElem {
  int h = 0;
  Vec x;

  friend bool operator==(const GroupElem& a, const GroupElem& b) = default;
};

inline GroupElem g_identity(const Algebra& a) { return {a.h_unit(), a.j_zero()}; }

inline GroupElem g_mul(const Algebra& a, const GroupElem& g1, const GroupElem& g2) {
  Vec xa = a.j_embed(g1.x), xb = a.j_embed(g2.x);
  Vec jpart = a.add(a.add(a.mul(a.h_elem(g1.h), xb), a.mul(xa, a.h_elem(g2.h))), a.mul(xa, xb));
  return {a.h_mul(g1.h, g2.h), a.j_coords(jpart)};
}

inline GroupElem g_inv(const Algebra& a, const GroupElem& g) {
  int hi = a.h_inv(g.h);
  // (h+x)^{-1} = (1 + h^{-1}x)^{-1} h^{-1}
  Vec u = a.j_coords(a.mul(a.h_elem(hi), a.j_embed(g.x)));
  Vec w = a.n_inv(u);
  return {hi, a.j_coords(a.mul(a.j_embed(w), a.h_elem(hi)))};
}

inline GroupElem g_conj(const Algebra& a, const GroupElem& s, const GroupElem& g) {
  return g_mul(a, g_mul(a, s, g), g_inv(a, s));
}

inline Vec g_to_vec(const Algebra& a, const GroupElem& g) { return a.element_of(g.h, g.x); }

inline GroupElem g_from_vec(const Algebra& a, const Vec& v) {
  GroupElem g;
  require(a.split(v, g.h, g.x), errc::internal, "vector is not an element of G");
  return g;
}

/// Deterministic enumeration of G: index = h * q^dim_J + packed x, with x
/// packed most-significant-first so numeric order matches lexicographic order.
class GroupIndex {
 public:
  GroupIndex(const Algebra& a, std::int64_t bound) : a_(&a) {
    qd_ = 1;
    for (int i = 0; i < a.dim_j(); ++i) {
      require(qd_ <= bound, errc::too_large, "group order exceeds bound");
      qd_ *= a.field().q();
    }
    order_ = (std::int64_t)a.h_count() * qd_;
    require(order_ <= bound, errc::too_large,
            "group order " + std::to_string(order_) + " exceeds bound " + std::to_string(bound));
  }

  std::int64_t order() const { return order_; }
  std::int64_t x_count() const { return qd_; }

  std::int64_t pack_x(const Vec& x) const {
    std::int64_t code = 0;
    for (int i = 0; i < a_->dim_j(); ++i) code = code * a_->field().q() + x[i];
    return code;
  }

  Vec unpack_x(std::int64_t code) const {
    Vec x(a_->dim_j());
    for (int i = a_->dim_j() - 1; i >= 0; --i) {
      x[i] = (FqElem)(code % a_->field().q());
      code /= a_->field().q();
    }
    return x;
  }

  std::int64_t index_of(const GroupElem& g) const { return g.h * qd_ + pack_x(g.x); }
  GroupElem at(std::int64_t idx) const { return {(int)(idx / qd_), unpack_x(idx % qd_)}; }

 private:
  const Algebra* a_;
  std::int64_t qd_ = 1;
  std::int64_t order_ = 0;
};

/// H(e) = { h : he = e }, the kernel of h -> he; canonical order.
inline std::vector<int> subgroup_h_of_e(const Algebra& a, const Vec& e) {
  std::vector<int> out;
  for (int hc : a.h_canonical())
    if (a.mul(a.h_elem(hc), e) == e) out.push_back(hc);
  return out;
}

/// A finite abelian group decomposed as a direct product of cyclic factors,
/// with explicit exponent coordinates for every element.
struct AbelianStructure {
  std::vector<int> carrier;             // h indices, canonical order
  std::vector<int> gens;                // one per cyclic factor
  std::vector<std::int64_t> dims;       // factor orders, product = |carrier|
  std::map<int, std::vector<std::int64_t>> coords;
  std::int64_t exponent = 1;
};

/// Greedy decomposition: repeatedly extract an element of maximal order in
/// the current quotient (lowest canonical index breaks ties), lifting the
/// representative so its order matches its coset order.
inline AbelianStructure abelian_structure(const Algebra& a, std::vector<int> subset) {
  AbelianStructure st;
  st.carrier = std::move(subset);
  std::map<int, std::vector<std::int64_t>> table;
  table[a.h_unit()] = {};
  bool has_unit = false;
  for (int s : st.carrier) has_unit |= s == a.h_unit();
  require(has_unit, errc::internal, "subgroup does not contain the identity");

  auto h_pow = [&](int g, std::int64_t k) {
    int r = a.h_unit();
    for (std::int64_t i = 0; i < k; ++i) r = a.h_mul(r, g);
    return r;
  };

  while ((std::int64_t)table.size() < (std::int64_t)st.carrier.size()) {
    int best = -1;
    std::int64_t best_ord = 0;
    for (int s : st.carrier) {
      if (table.count(s)) continue;
      std::int64_t k = 1;
      int t = s;
      while (!table.count(t)) {
        t = a.h_mul(t, s);
        ++k;
      }
      if (k > best_ord) {
        best_ord = k;
        best = s;
      }
    }
    require(best >= 0, errc::internal, "quotient exhausted unexpectedly");
    std::int64_t r = best_ord;
    // best^r lies in the span of the chosen generators; divide its exponents
    // by r to correct the representative (basis extension lemma)
    int rep_pow = h_pow(best, r);
    std::vector<std::int64_t> c = table.at(rep_pow);
    int h = best;
    for (std::size_t i = 0; i < st.gens.size(); ++i) {
      require(c[i] % r == 0, errc::internal, "generator lift failed");
      std::int64_t adj = (st.dims[i] - (c[i] / r) % st.dims[i]) % st.dims[i];
      h = a.h_mul(h, h_pow(st.gens[i], adj));
    }
    require(h_pow(h, r) == a.h_unit(), errc::internal, "lifted generator has wrong order");
    st.gens.push_back(h);
    st.dims.push_back(r);
    std::map<int, std::vector<std::int64_t>> next;
    for (const auto& [el, cs] : table) {
      int cur = el;
      for (std::int64_t j = 0; j < r; ++j) {
        std::vector<std::int64_t> ext = cs;
        ext.push_back(j);
        next[cur] = std::move(ext);
        cur = a.h_mul(cur, h);
      }
    }
    table = std::move(next);
  }
  for (int s : st.carrier)
    require(table.count(s), errc::internal, "carrier element missed by decomposition");
  st.coords = std::move(table);
  st.exponent = 1;
  for (auto d : st.dims) st.exponent = std::lcm(st.exponent, d);

  // the coordinate map must be an isomorphism; check all pairs at desk scale
  if (st.carrier.size() <= 512) {
    for (int x : st.carrier)
      for (int y : st.carrier) {
        const auto& cx = st.coords.at(x);
        const auto& cy = st.coords.at(y);
        const auto& cxy = st.coords.at(a.h_mul(x, y));
        for (std::size_t i = 0; i < st.dims.size(); ++i)
          require((cx[i] + cy[i]) % st.dims[i] == cxy[i], errc::internal,
                  "abelian coordinates are not a homomorphism");
      }
  }
  return st;
}

/// theta(g) = prod zeta_{d_i}^{a_i * coord_i(g)}.
struct LinearCharacter {
  std::shared_ptr<const AbelianStructure> st;
  std::vector<std::int64_t> exps;

  Cyclo eval(int h_index) const {
    const auto& c = st->coords.at(h_index);
    Cyclo v = Cyclo::one();
    for (std::size_t i = 0; i < st->dims.size(); ++i)
      if (exps[i] && c[i]) v = v * Cyclo::root_of_unity(st->dims[i], exps[i] * c[i]);
    return v.reduced();
  }

  bool is_trivial() const {
    for (auto e : exps)
      if (e) return false;
    return true;
  }
};

/// All |S| linear characters, exponent tuples in lexicographic order.
inline std::vector<LinearCharacter> characters_of(std::shared_ptr<const AbelianStructure> st) {
  std::vector<LinearCharacter> out;
  std::vector<std::int64_t> e(st->dims.size(), 0);
  for (;;) {
    out.push_back({st, e});
    int i = (int)e.size() - 1;
    while (i >= 0) {
      if (++e[i] < st->dims[i]) break;
      e[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  require((std::int64_t)out.size() ==
              std::accumulate(st->dims.begin(), st->dims.end(), (std::int64_t)1,
                              std::multiplies<>()),
          errc::internal, "character count mismatch");
  return out;
}

} // namespace tritype
