#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tritype/errors.hpp"

namespace tritype {

using FqElem = std::uint32_t; // packed code: sum of digit_i * p^i, digits in [0,p)

/// Ground field F_q, q = p^m, presented as Z_p[x] modulo a monic irreducible
/// polynomial (coefficients low degree first, length m+1).
struct FieldDescriptor {
  std::int64_t p = 2;
  int m = 1;
  std::vector<std::int64_t> modulus = {0, 1};
};

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace detail

/// Arithmetic context for F_q. Elements are packed codes; all operations are
/// pure and the context is immutable, so sharing across threads is safe.
class Fq {
 public:
  explicit Fq(FieldDescriptor d, bool waive_irreducibility = false) : d_(std::move(d)) {
    require(detail::is_prime(d_.p), errc::validation_failed,
            "field characteristic " + std::to_string(d_.p) + " is not prime");
    require(d_.m >= 1, errc::validation_failed, "field degree must be positive");
    require((int)d_.modulus.size() == d_.m + 1, errc::validation_failed,
            "modulus must have degree m");
    for (auto& c : d_.modulus) c = ((c % d_.p) + d_.p) % d_.p;
    require(d_.modulus.back() == 1, errc::validation_failed, "modulus must be monic");
    q_ = 1;
    for (int i = 0; i < d_.m; ++i) {
      require(q_ <= (1ll << 40) / d_.p, errc::too_large, "field too large");
      q_ *= d_.p;
    }
    if (d_.m > 1 && !waive_irreducibility) {
      require(d_.m <= 4, errc::validation_failed,
              "irreducibility check only implemented for m <= 4; pass the waive flag for larger m");
      require(modulus_irreducible_(), errc::validation_failed, "modulus is reducible");
    }
    if (q_ <= 256) build_tables_();
  }

  static Fq prime_field(std::int64_t p) { return Fq(FieldDescriptor{p, 1, {0, 1}}); }

  /// F_q for a prime power q, with the lexicographically first monic
  /// irreducible modulus of the right degree.
  static Fq prime_power(std::int64_t q) {
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) { p = d; break; }
    if (p == 0) return prime_field(q);
    require(detail::is_prime(p), errc::validation_failed, std::to_string(q) + " is not a prime power");
    int m = 0;
    std::int64_t t = q;
    while (t > 1) {
      require(t % p == 0, errc::validation_failed, std::to_string(q) + " is not a prime power");
      t /= p;
      ++m;
    }
    // scan moduli x^m + a_{m-1} x^{m-1} + ... + a_0 in lexicographic order
    std::vector<std::int64_t> coeffs(m + 1, 0);
    coeffs[m] = 1;
    std::int64_t count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      std::int64_t c = code;
      for (int i = 0; i < m; ++i) { coeffs[i] = c % p; c /= p; }
      Fq cand(FieldDescriptor{p, m, coeffs}, true);
      if (cand.modulus_irreducible_()) return Fq(FieldDescriptor{p, m, coeffs});
    }
    fail(errc::internal, "no irreducible modulus found");
  }

  std::int64_t p() const { return d_.p; }
  int m() const { return d_.m; }
  std::int64_t q() const { return q_; }
  const FieldDescriptor& descriptor() const { return d_; }

  bool same_field(const Fq& o) const { return d_.p == o.d_.p && d_.m == o.d_.m && d_.modulus == o.d_.modulus; }

  FqElem zero() const { return 0; }
  FqElem one() const { return 1; }

  FqElem from_int(std::int64_t n) const {
    std::int64_t r = ((n % d_.p) + d_.p) % d_.p;
    return (FqElem)r;
  }

  FqElem from_digits(std::span<const std::int64_t> dg) const {
    require((int)dg.size() <= d_.m, errc::validation_failed, "too many digits");
    std::int64_t code = 0, w = 1;
    for (std::size_t i = 0; i < dg.size(); ++i) {
      std::int64_t c = ((dg[i] % d_.p) + d_.p) % d_.p;
      code += c * w;
      w *= d_.p;
    }
    return (FqElem)code;
  }

  std::vector<std::int64_t> digits(FqElem a) const {
    std::vector<std::int64_t> dg(d_.m);
    std::int64_t c = a;
    for (int i = 0; i < d_.m; ++i) { dg[i] = c % d_.p; c /= d_.p; }
    return dg;
  }

  FqElem add(FqElem a, FqElem b) const {
    if (d_.m == 1) return (FqElem)(((std::int64_t)a + b) % d_.p);
    if (tables_) return add_t_[(std::size_t)a * q_ + b];
    return add_raw_(a, b);
  }

  FqElem neg(FqElem a) const {
    if (d_.m == 1) return (FqElem)((d_.p - a) % d_.p);
    if (tables_) return neg_t_[a];
    auto dg = digits(a);
    for (auto& c : dg) c = (d_.p - c) % d_.p;
    return from_digits(dg);
  }

  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

  FqElem mul(FqElem a, FqElem b) const {
    if (d_.m == 1) return (FqElem)(((std::int64_t)a * b) % d_.p);
    if (tables_) return mul_t_[(std::size_t)a * q_ + b];
    return mul_raw_(a, b);
  }

  FqElem inv(FqElem a) const {
    require(a != 0, errc::division_by_zero, "inverse of zero");
    if (tables_) return inv_t_[a];
    return pow(a, q_ - 2);
  }

  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

  FqElem pow(FqElem a, std::int64_t e) const {
    if (e < 0) { a = inv(a); e = -e; }
    FqElem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Absolute trace a + a^p + ... + a^{p^(m-1)}, landing in the prime field.
  std::int64_t trace(FqElem a) const {
    FqElem s = 0, t = a;
    for (int i = 0; i < d_.m; ++i) {
      s = add(s, t);
      t = pow(t, d_.p);
    }
    require(s < (FqElem)d_.p, errc::internal, "trace not in prime field");
    return s;
  }

  std::string to_string(FqElem a) const { return std::to_string(a); }

 private:
  FieldDescriptor d_;
  std::int64_t q_ = 0;
  bool tables_ = false;
  std::vector<FqElem> add_t_, mul_t_, inv_t_, neg_t_;

  FqElem add_raw_(FqElem a, FqElem b) const {
    auto da = digits(a), db = digits(b);
    for (int i = 0; i < d_.m; ++i) da[i] = (da[i] + db[i]) % d_.p;
    return from_digits(da);
  }

  FqElem mul_raw_(FqElem a, FqElem b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::int64_t> prod(2 * d_.m - 1, 0);
    for (int i = 0; i < d_.m; ++i)
      for (int j = 0; j < d_.m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % d_.p;
    // reduce modulo the monic modulus
    for (int k = (int)prod.size() - 1; k >= d_.m; --k) {
      std::int64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (int i = 0; i < d_.m; ++i)
        prod[k - d_.m + i] = ((prod[k - d_.m + i] - c * d_.modulus[i]) % d_.p + d_.p) % d_.p;
    }
    prod.resize(d_.m);
    return from_digits(prod);
  }

  void build_tables_() {
    tables_ = false; // raw ops during construction
    add_t_.resize((std::size_t)q_ * q_);
    mul_t_.resize((std::size_t)q_ * q_);
    inv_t_.assign(q_, 0);
    neg_t_.resize(q_);
    for (std::int64_t a = 0; a < q_; ++a) {
      auto dg = digits((FqElem)a);
      for (auto& c : dg) c = (d_.p - c) % d_.p;
      neg_t_[a] = from_digits(dg);
      for (std::int64_t b = 0; b < q_; ++b) {
        add_t_[(std::size_t)a * q_ + b] = d_.m == 1 ? (FqElem)((a + b) % d_.p) : add_raw_((FqElem)a, (FqElem)b);
        FqElem pr = d_.m == 1 ? (FqElem)((a * b) % d_.p) : mul_raw_((FqElem)a, (FqElem)b);
        mul_t_[(std::size_t)a * q_ + b] = pr;
        if (pr == 1) inv_t_[a] = (FqElem)b;
      }
    }
    tables_ = true;
  }

  // Exhaustive irreducibility test for m <= 4: no roots, and for m = 4 also
  // no monic quadratic factors.
  bool modulus_irreducible_() {
    if (d_.m == 1) return true;
    Fq pf = Fq::prime_field(d_.p);
    auto eval = [&](const std::vector<std::int64_t>& poly, FqElem x) {
      FqElem acc = 0;
      for (int k = (int)poly.size() - 1; k >= 0; --k)
        acc = pf.add(pf.mul(acc, x), pf.from_int(poly[k]));
      return acc;
    };
    for (std::int64_t r = 0; r < d_.p; ++r)
      if (eval(d_.modulus, (FqElem)r) == 0) return false;
    if (d_.m < 4) return true;
    // trial division by x^2 + bx + c over Z_p
    for (std::int64_t b = 0; b < d_.p; ++b)
      for (std::int64_t c = 0; c < d_.p; ++c) {
        std::vector<std::int64_t> rem(d_.modulus);
        for (int k = (int)rem.size() - 1; k >= 2; --k) {
          std::int64_t t = rem[k];
          if (t == 0) continue;
          rem[k] = 0;
          rem[k - 1] = ((rem[k - 1] - t * b) % d_.p + d_.p) % d_.p;
          rem[k - 2] = ((rem[k - 2] - t * c) % d_.p + d_.p) % d_.p;
        }
        if (rem[0] == 0 && rem[1] == 0) return false;
      }
    return true;
  }
};

} // namespace tritype
