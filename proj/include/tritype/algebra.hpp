#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tritype/linalg.hpp"

namespace tritype {

/// Finite-dimensional associative F_q-algebra A = span(H) + J given by
/// structure constants. The J basis is the designated suffix of the ambient
/// basis; H is a full element list of coordinate vectors.
struct Presentation {
  Fq field;
  int dim_a = 0;
  int dim_j = 0;                                      // J spans basis indices [dim_a-dim_j, dim_a)
  std::vector<std::vector<std::pair<int, FqElem>>> sc; // sc[i*dim_a+j] = product b_i b_j, sparse
  Vec unity;
  std::vector<Vec> h_elements;

  int j_first() const { return dim_a - dim_j; }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec r(dim_a, 0);
    for (int i = 0; i < dim_a; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < dim_a; ++j) {
        if (b[j] == 0) continue;
        FqElem f = field.mul(a[i], b[j]);
        for (const auto& [k, c] : sc[(std::size_t)i * dim_a + j])
          r[k] = field.add(r[k], field.mul(f, c));
      }
    }
    return r;
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec r(dim_a);
    for (int i = 0; i < dim_a; ++i) r[i] = field.add(a[i], b[i]);
    return r;
  }

  Vec sub(const Vec& a, const Vec& b) const {
    Vec r(dim_a);
    for (int i = 0; i < dim_a; ++i) r[i] = field.sub(a[i], b[i]);
    return r;
  }

  Vec neg(const Vec& a) const {
    Vec r(dim_a);
    for (int i = 0; i < dim_a; ++i) r[i] = field.neg(a[i]);
    return r;
  }

  Vec scale(FqElem c, const Vec& a) const {
    Vec r(dim_a);
    for (int i = 0; i < dim_a; ++i) r[i] = field.mul(c, a[i]);
    return r;
  }

  Vec basis_vec(int i) const {
    Vec r(dim_a, 0);
    r[i] = 1;
    return r;
  }

  bool is_zero(const Vec& a) const {
    for (auto c : a)
      if (c) return false;
    return true;
  }
};

struct ValidationIssue {
  std::string code;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::int64_t h_order = 0;
  int dim_j = 0;
  int nilpotency = 0; // least M with J^M = 0

  bool ok() const { return issues.empty(); }
  std::string summary() const {
    if (ok())
      return "VALID |H|=" + std::to_string(h_order) + " dim_J=" + std::to_string(dim_j) +
             " M=" + std::to_string(nilpotency);
    std::string s;
    for (const auto& i : issues) s += i.code + "(" + i.witness + ") ";
    return s;
  }
};

/// Checks every axiom of a triangular-type presentation and reports all
/// violations with witnesses.
inline ValidationReport validate(const Presentation& p) {
  ValidationReport rep;
  auto issue = [&](const std::string& c, const std::string& w) {
    rep.issues.push_back({c, w});
  };
  const int d = p.dim_a;

  if ((int)p.unity.size() != d) {
    issue("NO_UNITY", "unity vector has wrong length");
    return rep;
  }
  for (const auto& h : p.h_elements)
    if ((int)h.size() != d) {
      issue("H_NOT_GROUP", "H element has wrong length");
      return rep;
    }
  if (p.dim_j < 0 || p.dim_j > d || (std::int64_t)p.sc.size() != (std::int64_t)d * d) {
    issue("BAD_DIRECT_SUM", "inconsistent dimensions");
    return rep;
  }

  // unity
  for (int i = 0; i < d; ++i) {
    Vec b = p.basis_vec(i);
    if (p.mul(p.unity, b) != b || p.mul(b, p.unity) != b) {
      issue("NO_UNITY", "basis index " + std::to_string(i));
      break;
    }
  }

  // associativity on basis triples
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Vec ij = p.mul(p.basis_vec(i), p.basis_vec(j));
      for (int k = 0; k < d; ++k) {
        Vec lhs = p.mul(ij, p.basis_vec(k));
        Vec rhs = p.mul(p.basis_vec(i), p.mul(p.basis_vec(j), p.basis_vec(k)));
        if (lhs != rhs) {
          issue("NOT_ASSOCIATIVE",
                "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
          i = j = d; // one witness is enough
          break;
        }
      }
    }
  }

  // J is a two-sided ideal
  auto in_j_span = [&](const Vec& v) {
    for (int i = 0; i < p.j_first(); ++i)
      if (v[i]) return false;
    return true;
  };
  for (int i = 0; i < d && rep.issues.empty(); ++i)
    for (int j = p.j_first(); j < d; ++j) {
      if (!in_j_span(p.mul(p.basis_vec(i), p.basis_vec(j))) ||
          !in_j_span(p.mul(p.basis_vec(j), p.basis_vec(i)))) {
        issue("J_NOT_IDEAL", "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
        i = d;
        break;
      }
    }

  // J nilpotent: iterate row spans of J^k
  {
    std::vector<Vec> power;
    for (int j = p.j_first(); j < d; ++j) power.push_back(p.basis_vec(j));
    int m = 1;
    bool nil = p.dim_j == 0;
    if (p.dim_j == 0) rep.nilpotency = 1;
    while (!nil && m <= d + 1) {
      std::vector<Vec> next_rows;
      for (const auto& v : power)
        for (int j = p.j_first(); j < d; ++j) next_rows.push_back(p.mul(v, p.basis_vec(j)));
      power = span_basis(p.field, next_rows, d);
      ++m;
      if (power.empty()) {
        nil = true;
        rep.nilpotency = m;
      }
    }
    if (!nil) issue("J_NOT_NILPOTENT", "J^" + std::to_string(m) + " still nonzero");
  }

  // direct sum span(H) + span(J) = A
  {
    std::vector<Vec> h_rows = p.h_elements;
    std::size_t h_rank = span_basis(p.field, h_rows, d).size();
    std::vector<Vec> all_rows = h_rows;
    for (int j = p.j_first(); j < d; ++j) all_rows.push_back(p.basis_vec(j));
    std::size_t total = span_basis(p.field, all_rows, d).size();
    if (h_rank + p.dim_j != (std::size_t)d || total != (std::size_t)d)
      issue("BAD_DIRECT_SUM",
            "rank(H)=" + std::to_string(h_rank) + " dim_J=" + std::to_string(p.dim_j) +
                " dim_A=" + std::to_string(d));
  }

  // H is an abelian group under multiplication
  {
    std::map<Vec, int> index;
    bool dup = false;
    for (std::size_t i = 0; i < p.h_elements.size(); ++i)
      if (!index.emplace(p.h_elements[i], (int)i).second) dup = true;
    if (dup) issue("H_NOT_GROUP", "duplicate elements");
    if (!index.count(p.unity)) issue("H_NOT_GROUP", "unity not listed in H");
    bool closed = true, abelian = true;
    std::vector<bool> has_inverse(p.h_elements.size(), false);
    for (std::size_t i = 0; i < p.h_elements.size() && closed; ++i)
      for (std::size_t j = 0; j < p.h_elements.size(); ++j) {
        Vec ij = p.mul(p.h_elements[i], p.h_elements[j]);
        if (!index.count(ij)) {
          issue("H_NOT_GROUP", "product of elements " + std::to_string(i) + "," + std::to_string(j) +
                                   " leaves H");
          closed = false;
          break;
        }
        if (ij == p.unity) has_inverse[i] = true;
        if (abelian && ij != p.mul(p.h_elements[j], p.h_elements[i])) {
          issue("H_NOT_ABELIAN", "elements " + std::to_string(i) + "," + std::to_string(j));
          abelian = false;
        }
      }
    if (closed)
      for (std::size_t i = 0; i < p.h_elements.size(); ++i)
        if (!has_inverse[i]) {
          issue("H_NOT_GROUP", "element " + std::to_string(i) + " has no inverse");
          break;
        }
    rep.h_order = (std::int64_t)p.h_elements.size();
    if (rep.h_order % p.field.p() == 0)
      issue("CHAR_DIVIDES_H", "|H|=" + std::to_string(rep.h_order) + ", p=" + std::to_string(p.field.p()));
  }

  rep.dim_j = p.dim_j;
  return rep;
}

/// A validated triangular-type presentation together with the derived
/// multiplication tables of H. Immutable after construction.
class Algebra {
 public:
  explicit Algebra(Presentation pres) : p_(std::move(pres)) {
    report_ = validate(p_);
    require(report_.ok(), errc::validation_failed, report_.summary());
    const std::size_t n = p_.h_elements.size();
    for (std::size_t i = 0; i < n; ++i) {
      h_index_[p_.h_elements[i]] = (int)i;
      h_prefix_index_[Vec(p_.h_elements[i].begin(), p_.h_elements[i].begin() + p_.j_first())] =
          (int)i;
    }
    require(h_prefix_index_.size() == n, errc::internal, "H elements share a coset mod J");
    h_unit_ = h_index_.at(p_.unity);
    h_mul_.assign(n * n, 0);
    h_inv_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int k = h_index_.at(p_.mul(p_.h_elements[i], p_.h_elements[j]));
        h_mul_[i * n + j] = k;
        if (k == h_unit_) h_inv_[i] = (int)j;
      }
    h_canonical_.resize(n);
    for (std::size_t i = 0; i < n; ++i) h_canonical_[i] = (int)i;
    std::sort(h_canonical_.begin(), h_canonical_.end(),
              [&](int a, int b) { return p_.h_elements[a] < p_.h_elements[b]; });
  }

  const Presentation& pres() const { return p_; }
  const Fq& field() const { return p_.field; }
  const ValidationReport& report() const { return report_; }

  int dim_a() const { return p_.dim_a; }
  int dim_j() const { return p_.dim_j; }
  int j_first() const { return p_.j_first(); }
  int nilpotency() const { return report_.nilpotency; }

  Vec mul(const Vec& a, const Vec& b) const { return p_.mul(a, b); }
  Vec add(const Vec& a, const Vec& b) const { return p_.add(a, b); }
  Vec sub(const Vec& a, const Vec& b) const { return p_.sub(a, b); }
  Vec neg(const Vec& a) const { return p_.neg(a); }
  Vec scale(FqElem c, const Vec& a) const { return p_.scale(c, a); }
  const Vec& unity() const { return p_.unity; }
  Vec zero() const { return Vec(p_.dim_a, 0); }
  bool is_zero(const Vec& a) const { return p_.is_zero(a); }

  int h_count() const { return (int)p_.h_elements.size(); }
  const Vec& h_elem(int i) const { return p_.h_elements[i]; }
  int h_mul(int i, int j) const { return h_mul_[(std::size_t)i * h_count() + j]; }
  int h_inv(int i) const { return h_inv_[i]; }
  int h_unit() const { return h_unit_; }
  int h_index_of(const Vec& v) const {
    auto it = h_index_.find(v);
    return it == h_index_.end() ? -1 : it->second;
  }
  /// Indices of H sorted by coordinate vectors; all label orders derive from
  /// this so they do not depend on the input listing order.
  const std::vector<int>& h_canonical() const { return h_canonical_; }

  // J is the span of the trailing basis vectors, so J-coordinates are plain
  // suffix slices.
  bool in_j(const Vec& v) const {
    for (int i = 0; i < j_first(); ++i)
      if (v[i]) return false;
    return true;
  }
  Vec j_embed(const Vec& x) const {
    Vec v(p_.dim_a, 0);
    for (int i = 0; i < p_.dim_j; ++i) v[j_first() + i] = x[i];
    return v;
  }
  Vec j_coords(const Vec& v) const {
    require(in_j(v), errc::internal, "element not in J");
    return Vec(v.begin() + j_first(), v.end());
  }
  Vec j_zero() const { return Vec(p_.dim_j, 0); }

  /// h + x for an H index and J coordinates.
  Vec element_of(int h, const Vec& x) const {
    Vec v = p_.h_elements[h];
    for (int i = 0; i < p_.dim_j; ++i) v[j_first() + i] = p_.field.add(v[j_first() + i], x[i]);
    return v;
  }

  /// Splits v = h + x; returns false when the H part is not an element of H.
  /// The H part is pinned down by the coset of v modulo J, i.e. its prefix.
  bool split(const Vec& v, int& h, Vec& x) const {
    auto it = h_prefix_index_.find(Vec(v.begin(), v.begin() + j_first()));
    if (it == h_prefix_index_.end()) return false;
    Vec rest = p_.sub(v, p_.h_elements[it->second]);
    if (!in_j(rest)) return false;
    h = it->second;
    x = j_coords(rest);
    return true;
  }

  /// Inverse of 1 + u for nilpotent u in J coordinates (geometric series).
  Vec n_inv(const Vec& x) const {
    Vec acc = j_zero(), pw = x;
    bool odd = true;
    for (int k = 1; k < nilpotency(); ++k) {
      for (int i = 0; i < p_.dim_j; ++i)
        acc[i] = odd ? p_.field.sub(acc[i], pw[i]) : p_.field.add(acc[i], pw[i]);
      pw = j_coords(p_.mul(j_embed(pw), j_embed(x)));
      odd = !odd;
    }
    return acc;
  }

  /// Solves u * v = unity for a unit u of A.
  Vec unit_inverse(const Vec& u) const {
    FqMatrix m(p_.dim_a, p_.dim_a);
    for (int j = 0; j < p_.dim_a; ++j) {
      Vec col = p_.mul(u, p_.basis_vec(j));
      for (int i = 0; i < p_.dim_a; ++i) m.at(i, j) = col[i];
    }
    auto sol = solve(p_.field, m, p_.unity);
    require(sol.has_value(), errc::singular, "element is not invertible");
    return *sol;
  }

 private:
  Presentation p_;
  ValidationReport report_;
  std::map<Vec, int> h_index_;
  std::map<Vec, int> h_prefix_index_;
  std::vector<int> h_mul_, h_inv_;
  std::vector<int> h_canonical_;
  int h_unit_ = 0;
};

inline Vec mat_mul_flat(const Fq& F, std::size_t n, const Vec& a, const Vec& b) {
  Vec r(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i * n + k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[k * n + j]) r[i * n + j] = F.add(r[i * n + j], F.mul(a[i * n + k], b[k * n + j]));
    }
  return r;
}

/// Converts a matrix model (H element matrices plus a J basis of n x n
/// matrices over F_q, row-major) into a structure-constant presentation.
/// The chosen basis is the echelon basis of span(H) followed by the given
/// J matrices, so the conversion is deterministic.
inline Presentation presentation_from_matrices(const Fq& F, std::size_t n,
                                               const std::vector<Vec>& h_mats,
                                               const std::vector<Vec>& j_mats) {
  const std::size_t nn = n * n;
  for (const auto& m : h_mats)
    require(m.size() == nn, errc::parse_error, "H matrix has wrong size");
  for (const auto& m : j_mats)
    require(m.size() == nn, errc::parse_error, "J matrix has wrong size");

  std::vector<Vec> h_span = span_basis(F, h_mats, nn);
  require(span_basis(F, j_mats, nn).size() == j_mats.size(), errc::validation_failed,
          "J matrices are linearly dependent");
  std::vector<Vec> basis = h_span;
  basis.insert(basis.end(), j_mats.begin(), j_mats.end());
  require(span_basis(F, basis, nn).size() == basis.size(), errc::validation_failed,
          "span(H) and span(J) overlap");

  CoordSolver cs(F, basis, nn);
  const int dim = (int)basis.size();
  Presentation p{F, dim, (int)j_mats.size(), {}, {}, {}};
  p.sc.resize((std::size_t)dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Vec prod = mat_mul_flat(F, n, basis[i], basis[j]);
      Vec coords;
      require(cs.try_coords(prod, coords), errc::validation_failed,
              "matrix model is not multiplicatively closed");
      for (int k = 0; k < dim; ++k)
        if (coords[k]) p.sc[(std::size_t)i * dim + j].push_back({k, coords[k]});
    }
  Vec ident(nn, 0);
  for (std::size_t i = 0; i < n; ++i) ident[i * n + i] = 1;
  p.unity = cs.coords(ident);
  for (const auto& h : h_mats) p.h_elements.push_back(cs.coords(h));
  return p;
}

} // namespace tritype
