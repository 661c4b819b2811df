#pragma once

#include <algorithm>
#include <vector>

#include "tritype/linalg.hpp"

namespace tritype {

// Dense univariate polynomials over F_q, low degree first, no trailing zeros
// (the zero polynomial is the empty vector).
using Poly = std::vector<FqElem>;

inline Poly p_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline int p_deg(const Poly& p) { return (int)p.size() - 1; } // deg(0) = -1

inline Poly p_add(const Fq& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    FqElem x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  return p_trim(std::move(r));
}

inline Poly p_sub(const Fq& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    FqElem x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  return p_trim(std::move(r));
}

inline Poly p_mul(const Fq& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a[i] && b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return p_trim(std::move(r));
}

inline Poly p_scale(const Fq& F, const Poly& a, FqElem c) {
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

inline std::pair<Poly, Poly> p_divmod(const Fq& F, Poly a, const Poly& b) {
  require(!b.empty(), errc::division_by_zero, "polynomial division by zero");
  if (a.size() < b.size()) return {{}, p_trim(std::move(a))};
  Poly q(a.size() - b.size() + 1, 0);
  FqElem lead_inv = F.inv(b.back());
  for (int k = (int)a.size() - 1; k >= (int)b.size() - 1; --k) {
    if (a[k] == 0) continue;
    FqElem c = F.mul(a[k], lead_inv);
    q[k - (b.size() - 1)] = c;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[k - (b.size() - 1) + i] = F.sub(a[k - (b.size() - 1) + i], F.mul(c, b[i]));
  }
  return {p_trim(std::move(q)), p_trim(std::move(a))};
}

inline Poly p_mod(const Fq& F, Poly a, const Poly& b) { return p_divmod(F, std::move(a), b).second; }

inline Poly p_monic(const Fq& F, Poly a) {
  if (a.empty() || a.back() == 1) return a;
  return p_scale(F, a, F.inv(a.back()));
}

inline Poly p_gcd(const Fq& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = p_mod(F, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return p_monic(F, std::move(a));
}

inline Poly p_lcm(const Fq& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly g = p_gcd(F, a, b);
  return p_monic(F, p_divmod(F, p_mul(F, a, b), g).first);
}

inline Poly p_derivative(const Fq& F, const Poly& a) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], F.from_int((std::int64_t)i)));
  return p_trim(std::move(r));
}

/// Inverse of a modulo m (extended Euclid); requires gcd(a, m) = 1.
inline Poly p_inv_mod(const Fq& F, Poly a, const Poly& m) {
  Poly r0 = m, r1 = p_mod(F, std::move(a), m);
  Poly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = p_divmod(F, r0, r1);
    Poly t2 = p_sub(F, t0, p_mul(F, q, t1));
    r0 = std::move(r1); r1 = std::move(r2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  require(p_deg(r0) == 0, errc::no_solution, "polynomial not invertible modulo m");
  return p_mod(F, p_scale(F, t0, F.inv(r0[0])), m);
}

inline Poly p_powmod(const Fq& F, Poly base, std::int64_t e, const Poly& m) {
  Poly r = {1};
  base = p_mod(F, std::move(base), m);
  while (e) {
    if (e & 1) r = p_mod(F, p_mul(F, r, base), m);
    base = p_mod(F, p_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

/// Minimal polynomial of a square matrix acting on F_q^d (lcm of the minimal
/// polynomials of the standard basis vectors, via Krylov chains).
inline Poly minimal_polynomial(const Fq& F, const FqMatrix& t) {
  require(t.rows == t.cols, errc::internal, "minimal polynomial of non-square matrix");
  std::size_t d = t.rows;
  Poly m = {1};
  for (std::size_t s = 0; s < d; ++s) {
    if ((std::size_t)p_deg(m) == d) break;
    Vec v(d, 0);
    v[s] = 1;
    std::vector<Vec> krylov = {v};
    for (;;) {
      Vec next = mat_vec(F, t, krylov.back());
      // the chain is independent by construction, so a consistent solve
      // pins down the (unique, monic) dependence of next on it
      FqMatrix bt(d, krylov.size());
      for (std::size_t j = 0; j < krylov.size(); ++j)
        for (std::size_t i = 0; i < d; ++i) bt.at(i, j) = krylov[j][i];
      auto sol = solve(F, bt, next);
      if (sol.has_value()) {
        Poly mv(krylov.size() + 1, 0);
        for (std::size_t i = 0; i < krylov.size(); ++i) mv[i] = F.neg((*sol)[i]);
        mv.back() = 1;
        m = p_lcm(F, m, mv);
        break;
      }
      krylov.push_back(std::move(next));
    }
  }
  return m;
}

/// Berlekamp factorization of a squarefree monic polynomial into monic
/// irreducible factors, sorted by (degree, coefficients) for determinism.
inline std::vector<Poly> berlekamp_factors(const Fq& F, Poly f) {
  f = p_monic(F, p_trim(std::move(f)));
  require(p_deg(f) >= 1, errc::internal, "factoring a constant");
  require(p_deg(p_gcd(F, f, p_derivative(F, f))) == 0, errc::internal,
          "berlekamp requires squarefree input");
  std::size_t d = (std::size_t)p_deg(f);
  if (d == 1) return {f};

  // Frobenius matrix: column i holds x^(i*q) mod f
  Poly xq = p_powmod(F, Poly{0, 1}, F.q(), f);
  FqMatrix bm(d, d);
  Poly cur = {1};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t r = 0; r < cur.size(); ++r) bm.at(r, i) = cur[r];
    cur = p_mod(F, p_mul(F, cur, xq), f);
  }
  for (std::size_t i = 0; i < d; ++i) bm.at(i, i) = F.sub(bm.at(i, i), 1);
  std::vector<Vec> null_space = kernel_basis(F, bm);
  std::size_t r = null_space.size(); // number of irreducible factors

  std::vector<Poly> factors = {f};
  for (const Vec& nv : null_space) {
    if (factors.size() == r) break;
    Poly v = p_trim(Poly(nv.begin(), nv.end()));
    if (p_deg(v) < 1) continue; // constant kernel vector splits nothing
    std::vector<Poly> next;
    for (const Poly& g : factors) {
      if (p_deg(g) == 1) { next.push_back(g); continue; }
      Poly rest = g;
      for (std::int64_t c = 0; c < F.q() && p_deg(rest) > 0; ++c) {
        Poly shifted = p_sub(F, v, Poly{(FqElem)c});
        Poly h = p_gcd(F, rest, shifted);
        if (p_deg(h) >= 1 && p_deg(h) < p_deg(rest)) {
          next.push_back(h);
          rest = p_divmod(F, rest, h).first;
        }
      }
      if (p_deg(rest) >= 1) next.push_back(p_monic(F, rest));
    }
    factors = std::move(next);
  }
  require(factors.size() == r, errc::internal, "berlekamp split incomplete");
  std::sort(factors.begin(), factors.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return factors;
}

inline bool p_is_irreducible(const Fq& F, const Poly& f) {
  if (p_deg(f) <= 0) return false;
  if (p_deg(f) == 1) return true;
  if (p_deg(p_gcd(F, f, p_derivative(F, f))) != 0) return false;
  return berlekamp_factors(F, f).size() == 1;
}

} // namespace tritype
