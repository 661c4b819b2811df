#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tritype/errors.hpp"

namespace tritype {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace cyclo_detail {

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

// Integer polynomials, low degree first.
using ZPoly = std::vector<BigInt>;

inline ZPoly z_trim(ZPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// Exact division; the remainder must vanish.
inline ZPoly z_divexact(ZPoly a, const ZPoly& b) {
  ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (int k = (int)a.size() - 1; k >= (int)b.size() - 1; --k) {
    if (a[k] == 0) continue;
    BigInt c = a[k] / b.back();
    require(c * b.back() == a[k], errc::internal, "inexact cyclotomic division");
    q[k - (b.size() - 1)] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k - (b.size() - 1) + i] -= c * b[i];
  }
  require(z_trim(std::move(a)).empty(), errc::internal, "nonzero remainder in cyclotomic division");
  return q;
}

struct ConductorData {
  std::int64_t n = 1;
  std::int64_t phi = 1;
  ZPoly poly;                               // the n-th cyclotomic polynomial, monic
  std::vector<std::vector<Rational>> pow;   // x^j reduced, for j in [0, n)
};

// Shared cache of cyclotomic polynomials and power reductions; guarded so
// table construction is safe under data-parallel evaluation.
inline const ConductorData& conductor_data(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, ConductorData*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  require(n >= 1, errc::internal, "conductor must be positive");
  require(n <= 4096, errc::too_large, "conductor too large: " + std::to_string(n));

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, recursively from the cache.
  std::function<const ZPoly&(std::int64_t)> phi_poly = [&](std::int64_t k) -> const ZPoly& {
    auto jt = cache.find(k);
    if (jt != cache.end()) return jt->second->poly;
    ZPoly num(k + 1, 0);
    num[0] = -1;
    num[k] = 1;
    for (std::int64_t d = 1; d < k; ++d)
      if (k % d == 0) num = z_divexact(std::move(num), phi_poly(d));
    auto* data = new ConductorData;
    data->n = k;
    data->phi = euler_phi(k);
    require((std::int64_t)num.size() == data->phi + 1, errc::internal, "cyclotomic degree mismatch");
    data->poly = std::move(num);
    // power reductions: x^{j+1} = shift(x^j), reduced against the monic poly
    data->pow.resize(k);
    std::vector<Rational> cur(data->phi, 0);
    if (data->phi > 0) cur[0] = 1;
    for (std::int64_t j = 0; j < k; ++j) {
      data->pow[j] = cur;
      // multiply by x
      Rational lead = data->phi > 0 ? cur[data->phi - 1] : Rational(0);
      for (std::int64_t i = data->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      if (data->phi > 0) cur[0] = 0;
      if (lead != 0)
        for (std::int64_t i = 0; i < data->phi; ++i)
          cur[i] -= lead * Rational(data->poly[i]);
    }
    cache.emplace(k, data);
    return data->poly;
  };
  phi_poly(n);
  return *cache.at(n);
}

} // namespace cyclo_detail

/// An element of the cyclotomic field Q(zeta_N), stored as exact rational
/// coordinates in the power basis 1, z, ..., z^(phi(N)-1) modulo Phi_N.
/// Mixed-conductor operands are lifted to the lcm automatically.
class Cyclo {
 public:
  Cyclo() : n_(1), c_(1, Rational(0)) {}
  explicit Cyclo(const Rational& r) : n_(1), c_(1, r) {}
  explicit Cyclo(std::int64_t k) : n_(1), c_(1, Rational(k)) {}

  static Cyclo zero() { return Cyclo(); }
  static Cyclo one() { return Cyclo(Rational(1)); }

  /// zeta_N^k, reduced into the power basis.
  static Cyclo root_of_unity(std::int64_t n, std::int64_t k) {
    const auto& cd = cyclo_detail::conductor_data(n);
    std::int64_t j = ((k % n) + n) % n;
    Cyclo r;
    r.n_ = n;
    r.c_ = cd.pow[j];
    return r;
  }

  static Cyclo from_coeffs(std::int64_t n, std::vector<Rational> coeffs) {
    const auto& cd = cyclo_detail::conductor_data(n);
    require((std::int64_t)coeffs.size() == cd.phi, errc::parse_error,
            "coefficient count must equal phi(conductor)");
    Cyclo r;
    r.n_ = n;
    r.c_ = std::move(coeffs);
    return r;
  }

  std::int64_t conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// The value as a rational, when it lies in Q.
  std::optional<Rational> as_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return std::nullopt;
    return c_[0];
  }

  /// True when every power-basis coordinate is an integer, i.e. the value is
  /// an algebraic integer of Q(zeta_N).
  bool has_integer_coeffs() const {
    for (const auto& x : c_)
      if (denominator(x) != 1) return false;
    return true;
  }

  Cyclo lift_to(std::int64_t m) const {
    if (m == n_) return *this;
    require(m % n_ == 0, errc::internal, "can only lift to a multiple conductor");
    const auto& cd = cyclo_detail::conductor_data(m);
    std::int64_t stride = m / n_;
    Cyclo r;
    r.n_ = m;
    r.c_.assign(cd.phi, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const auto& red = cd.pow[((std::int64_t)k * stride) % m];
      for (std::int64_t i = 0; i < cd.phi; ++i) r.c_[i] += c_[k] * red[i];
    }
    return r;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    std::int64_t l = std::lcm(a.n_, b.n_);
    Cyclo x = a.lift_to(l), y = b.lift_to(l);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }

  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    std::int64_t l = std::lcm(a.n_, b.n_);
    Cyclo x = a.lift_to(l), y = b.lift_to(l);
    const auto& cd = cyclo_detail::conductor_data(l);
    std::size_t phi = cd.phi;
    std::vector<Rational> prod(2 * phi > 0 ? 2 * phi - 1 : 1, Rational(0));
    for (std::size_t i = 0; i < phi; ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j)
        if (y.c_[j] != 0) prod[i + j] += x.c_[i] * y.c_[j];
    }
    Cyclo r;
    r.n_ = l;
    r.c_.assign(phi, Rational(0));
    for (std::size_t k = 0; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      if ((std::int64_t)k < (std::int64_t)phi) {
        r.c_[k] += prod[k];
      } else {
        const auto& red = cd.pow[k % l];
        for (std::size_t i = 0; i < phi; ++i) r.c_[i] += prod[k] * red[i];
      }
    }
    return r;
  }

  friend Cyclo operator*(const Rational& s, const Cyclo& a) {
    Cyclo r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  Cyclo divided_by(const Rational& s) const {
    require(s != 0, errc::division_by_zero, "cyclotomic division by zero scalar");
    Cyclo r = *this;
    for (auto& x : r.c_) x /= s;
    return r;
  }

  /// Canonical form: the smallest conductor d | N whose field contains the
  /// value, with coordinates rewritten in that power basis.
  Cyclo reduced() const {
    for (std::int64_t d = 1; d < n_; ++d) {
      if (n_ % d != 0) continue;
      const auto& cd = cyclo_detail::conductor_data(d);
      const auto& cn = cyclo_detail::conductor_data(n_);
      // columns: lift of z_d^k into the z_N basis
      std::size_t rows = c_.size(), cols = (std::size_t)cd.phi;
      std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1, Rational(0)));
      std::int64_t stride = n_ / d;
      for (std::size_t k = 0; k < cols; ++k) {
        const auto& red = cn.pow[((std::int64_t)k * stride) % n_];
        for (std::size_t r = 0; r < rows; ++r) aug[r][k] = red[r];
      }
      for (std::size_t r = 0; r < rows; ++r) aug[r][cols] = c_[r];
      // rational elimination
      std::size_t lead = 0;
      std::vector<std::int64_t> pivot_col_of_row;
      for (std::size_t col = 0; col < cols && lead < rows; ++col) {
        std::size_t piv = lead;
        while (piv < rows && aug[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(aug[piv], aug[lead]);
        Rational s = aug[lead][col];
        for (auto& x : aug[lead]) x /= s;
        for (std::size_t r = 0; r < rows; ++r) {
          if (r == lead || aug[r][col] == 0) continue;
          Rational f = aug[r][col];
          for (std::size_t cc = col; cc <= cols; ++cc) aug[r][cc] -= f * aug[lead][cc];
        }
        pivot_col_of_row.push_back((std::int64_t)col);
        ++lead;
      }
      bool consistent = true;
      for (std::size_t r = lead; r < rows; ++r)
        if (aug[r][cols] != 0) consistent = false;
      if (!consistent) continue;
      std::vector<Rational> coeffs(cols, Rational(0));
      for (std::size_t r = 0; r < lead; ++r) coeffs[pivot_col_of_row[r]] = aug[r][cols];
      Cyclo out;
      out.n_ = d;
      out.c_ = std::move(coeffs);
      return out;
    }
    return *this;
  }

  /// Complex conjugation, the field automorphism z -> z^(-1).
  Cyclo conjugate() const {
    const auto& cd = cyclo_detail::conductor_data(n_);
    Cyclo r;
    r.n_ = n_;
    r.c_.assign(cd.phi, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const auto& red = cd.pow[((n_ - (std::int64_t)k) % n_ + n_) % n_];
      for (std::int64_t i = 0; i < cd.phi; ++i) r.c_[i] += c_[k] * red[i];
    }
    return r;
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    std::int64_t l = std::lcm(a.n_, b.n_);
    return a.lift_to(l).c_ == b.lift_to(l).c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Exact rendering: "c0[ + ck*z^k]*; conductor=N", zero terms skipped
  /// beyond the constant one.
  std::string exact_string() const {
    std::ostringstream os;
    os << c_[0].str();
    for (std::size_t k = 1; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      os << " + " << c_[k].str() << "*z^" << k;
    }
    os << "; conductor=" << n_;
    return os.str();
  }

  static Cyclo parse_exact(const std::string& s) {
    auto semi = s.rfind(';');
    require(semi != std::string::npos, errc::parse_error, "missing ';' in cyclotomic literal");
    std::string tail = s.substr(semi + 1);
    auto eq = tail.find('=');
    require(eq != std::string::npos && tail.find("conductor") != std::string::npos,
            errc::parse_error, "missing conductor in cyclotomic literal");
    std::int64_t n = std::stoll(tail.substr(eq + 1));
    const auto& cd = cyclo_detail::conductor_data(n);
    std::vector<Rational> coeffs(cd.phi, Rational(0));
    std::string body = s.substr(0, semi);
    std::size_t pos = 0;
    bool first = true;
    while (pos < body.size()) {
      std::size_t next = body.find(" + ", pos);
      std::string term = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      pos = next == std::string::npos ? body.size() : next + 3;
      std::size_t star = term.find("*z^");
      try {
        if (star == std::string::npos) {
          require(first, errc::parse_error, "plain rational only allowed as leading term");
          coeffs[0] = Rational(term);
        } else {
          std::int64_t k = std::stoll(term.substr(star + 3));
          require(k >= 1 && k < cd.phi, errc::parse_error, "power out of range");
          coeffs[k] = Rational(term.substr(0, star));
        }
      } catch (const std::exception& e) {
        if (dynamic_cast<const error*>(&e)) throw;
        fail(errc::parse_error, "bad cyclotomic term '" + term + "'");
      }
      first = false;
    }
    return from_coeffs(n, std::move(coeffs));
  }

  std::complex<double> approx() const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      double coef = (double)numerator(c_[k]) / (double)denominator(c_[k]);
      double ang = 2.0 * 3.14159265358979323846 * (double)k / (double)n_;
      acc += coef * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
  }

 private:
  std::int64_t n_;
  std::vector<Rational> c_;
};

} // namespace tritype
