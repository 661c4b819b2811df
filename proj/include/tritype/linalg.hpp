#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tritype/fq.hpp"

namespace tritype {

using Vec = std::vector<FqElem>;

struct FqMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<FqElem> a; // row-major, rows*cols entries

  FqMatrix() = default;
  FqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  FqElem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  FqElem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  Vec row(std::size_t r) const { return Vec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }

  static FqMatrix from_rows(const std::vector<Vec>& rs, std::size_t cols) {
    FqMatrix m(rs.size(), cols);
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rs[r][c];
    return m;
  }

  static FqMatrix identity(std::size_t n) {
    FqMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

/// Reduced row echelon form. Pivoting is leftmost column first, first nonzero
/// row, which keeps every downstream basis and representative deterministic.
struct Echelon {
  FqMatrix r;
  std::vector<std::size_t> pivot_cols; // one per nonzero row
  std::size_t rank() const { return pivot_cols.size(); }
};

inline Echelon rref(const Fq& F, FqMatrix m) {
  Echelon e;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols && lead < m.rows; ++col) {
    std::size_t piv = lead;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != lead)
      for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(lead, c));
    FqElem s = F.inv(m.at(lead, col));
    for (std::size_t c = col; c < m.cols; ++c) m.at(lead, c) = F.mul(s, m.at(lead, c));
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == lead || m.at(r, col) == 0) continue;
      FqElem f = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) = F.sub(m.at(r, c), F.mul(f, m.at(lead, c)));
    }
    e.pivot_cols.push_back(col);
    ++lead;
  }
  e.r = std::move(m);
  return e;
}

inline std::size_t rank(const Fq& F, const FqMatrix& m) { return rref(F, m).rank(); }

/// Basis of { x : M x = 0 }, one vector per free column, in free-column order.
inline std::vector<Vec> kernel_basis(const Fq& F, const FqMatrix& m) {
  Echelon e = rref(F, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r)
      v[e.pivot_cols[r]] = F.neg(e.r.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of M x = rhs, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Fq& F, const FqMatrix& m, const Vec& rhs) {
  FqMatrix aug(m.rows, m.cols + 1);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols) = rhs[r];
  }
  Echelon e = rref(F, aug);
  for (std::size_t r = 0; r < e.rank(); ++r)
    if (e.pivot_cols[r] == m.cols) return std::nullopt;
  Vec x(m.cols, 0);
  for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivot_cols[r]] = e.r.at(r, m.cols);
  return x;
}

inline FqMatrix inverse(const Fq& F, const FqMatrix& m) {
  require(m.rows == m.cols, errc::singular, "inverse of non-square matrix");
  std::size_t n = m.rows;
  FqMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  Echelon e = rref(F, aug);
  require(e.rank() >= n && e.pivot_cols[n - 1] == n - 1, errc::singular,
          "matrix is rank-deficient");
  FqMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = e.r.at(r, n + c);
  return inv;
}

inline Vec mat_vec(const Fq& F, const FqMatrix& m, const Vec& x) {
  Vec y(m.rows, 0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    FqElem acc = 0;
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m.at(r, c) && x[c]) acc = F.add(acc, F.mul(m.at(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

inline Vec vec_mat(const Fq& F, const Vec& x, const FqMatrix& m) {
  Vec y(m.cols, 0);
  for (std::size_t c = 0; c < m.cols; ++c) {
    FqElem acc = 0;
    for (std::size_t r = 0; r < m.rows; ++r)
      if (m.at(r, c) && x[r]) acc = F.add(acc, F.mul(m.at(r, c), x[r]));
    y[c] = acc;
  }
  return y;
}

/// Expresses vectors in terms of a fixed list of (independent) basis rows.
/// The elimination transform is computed once; each solve is one mat-vec.
class CoordSolver {
 public:
  CoordSolver() = default;
  CoordSolver(const Fq& F, const std::vector<Vec>& basis_rows, std::size_t ambient_dim)
      : F_(&F), n_(basis_rows.size()), dim_(ambient_dim), basis_(basis_rows) {
    // rref of [B^T | I]; the right block records the row operations, so
    // transform * v reduces v against the span in one multiplication.
    FqMatrix aug(dim_, n_ + dim_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) aug.at(i, j) = basis_rows[j][i];
    for (std::size_t i = 0; i < dim_; ++i) aug.at(i, n_ + i) = 1;
    Echelon e = rref(*F_, std::move(aug));
    std::size_t rk = 0;
    pivot_row_of_col_.assign(n_, (std::size_t)-1);
    for (std::size_t r = 0; r < e.rank(); ++r) {
      if (e.pivot_cols[r] < n_) {
        pivot_row_of_col_[e.pivot_cols[r]] = r;
        ++rk;
      }
    }
    require(rk == n_, errc::internal, "basis rows are dependent");
    transform_ = FqMatrix(dim_, dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) transform_.at(r, c) = e.r.at(r, n_ + c);
  }

  std::size_t basis_size() const { return n_; }

  /// Coordinates c with sum_j c_j * basis_j = v; throws NO_SOLUTION otherwise.
  Vec coords(const Vec& v) const {
    Vec c(n_, 0);
    require(try_coords(v, c), errc::no_solution, "vector not in span");
    return c;
  }

  bool contains(const Vec& v) const {
    Vec c(n_, 0);
    return try_coords(v, c);
  }

  bool try_coords(const Vec& v, Vec& out) const {
    require(v.size() == dim_, errc::internal, "dimension mismatch");
    Vec w = mat_vec(*F_, transform_, v);
    out.assign(n_, 0);
    for (std::size_t j = 0; j < n_; ++j) out[j] = w[pivot_row_of_col_[j]];
    // consistency: the residue of v off the span must vanish
    Vec rec = combine(out);
    return rec == v;
  }

  Vec combine(const Vec& coords) const {
    Vec v(dim_, 0);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < dim_; ++i)
        if (basis_[j][i] && coords[j]) v[i] = F_->add(v[i], F_->mul(coords[j], basis_[j][i]));
    return v;
  }

 private:
  const Fq* F_ = nullptr;
  std::size_t n_ = 0, dim_ = 0;
  std::vector<Vec> basis_;
  FqMatrix transform_;
  std::vector<std::size_t> pivot_row_of_col_;
};

/// Canonical (reduced-echelon) basis of the row span.
inline std::vector<Vec> span_basis(const Fq& F, const std::vector<Vec>& rows, std::size_t dim) {
  if (rows.empty()) return {};
  Echelon e = rref(F, FqMatrix::from_rows(rows, dim));
  std::vector<Vec> basis;
  for (std::size_t r = 0; r < e.rank(); ++r) basis.push_back(e.r.row(r));
  return basis;
}

} // namespace tritype
