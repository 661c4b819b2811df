#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tritype/algebra.hpp"

namespace tritype {

struct MatrixModel {
  std::size_t size = 0;
  std::vector<Vec> h_mats; // row-major n x n over F_q
  std::vector<Vec> j_mats;
};

namespace fixture_detail {

inline Vec e_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Vec m(n * n, 0);
  m[i * n + j] = 1;
  return m;
}

inline std::int64_t pow_i64_checked(std::int64_t b, int e, std::int64_t cap) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    require(r <= cap / b, errc::too_large, "fixture group order exceeds bound");
    r *= b;
  }
  return r;
}

} // namespace fixture_detail

/// The matrix-model families:
///   axb(q)   2x2 matrices [[a,b],[0,1]], H the invertible diagonals of that shape
///   ut(n,q)  algebra group 1 + (strictly upper triangular n x n)
///   tri(n,q) full invertible upper triangular n x n
inline std::optional<MatrixModel> fixture_matrix_model(const std::string& name, std::int64_t q,
                                                       int n, std::int64_t max_order = 100000) {
  using namespace fixture_detail;

  if (name == "axb") {
    require(q - 1 <= max_order / q, errc::too_large, "axb group too large");
    MatrixModel m;
    m.size = 2;
    for (FqElem a = 1; a < (FqElem)q; ++a) {
      Vec h(4, 0);
      h[0] = a;
      h[3] = 1;
      m.h_mats.push_back(h);
    }
    m.j_mats = {e_matrix(2, 0, 1)};
    return m;
  }

  if (name == "ut" || name == "tri") {
    require(n >= 1 && n <= 8, errc::too_large, "matrix size out of range");
    std::size_t sz = (std::size_t)n;
    MatrixModel m;
    m.size = sz;
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i + 1; j < sz; ++j) m.j_mats.push_back(e_matrix(sz, i, j));
    if (name == "ut") {
      Vec ident(sz * sz, 0);
      for (std::size_t i = 0; i < sz; ++i) ident[i * sz + i] = 1;
      m.h_mats.push_back(ident);
      pow_i64_checked(q, (int)m.j_mats.size(), max_order);
    } else {
      std::int64_t h_count = pow_i64_checked(q - 1, n, max_order);
      std::int64_t jd = pow_i64_checked(q, (int)m.j_mats.size(), max_order);
      require(h_count <= max_order / jd, errc::too_large, "tri group too large");
      std::vector<FqElem> diag(sz, 1);
      for (;;) {
        Vec h(sz * sz, 0);
        for (std::size_t i = 0; i < sz; ++i) h[i * sz + i] = diag[i];
        m.h_mats.push_back(h);
        int pos = n - 1;
        while (pos >= 0) {
          if (++diag[pos] < (FqElem)q) break;
          diag[pos] = 1;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    return m;
  }

  return std::nullopt;
}

/// trunc(k,q): units of F_q[x]/(x^k), given directly by structure constants.
inline Presentation fixture_trunc(std::int64_t q, int k, std::int64_t max_order = 100000) {
  using namespace fixture_detail;
  require(k >= 1 && k <= 16, errc::too_large, "truncation degree out of range");
  Fq F = Fq::prime_power(q);
  std::int64_t jd = pow_i64_checked(q, k - 1, max_order);
  require(q - 1 <= max_order / jd, errc::too_large, "trunc group too large");
  Presentation p{F, k, k - 1, {}, {}, {}};
  p.sc.resize((std::size_t)k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j < k) p.sc[(std::size_t)i * k + j].push_back({i + j, 1});
  p.unity = Vec(k, 0);
  p.unity[0] = 1;
  for (FqElem c = 1; c < (FqElem)q; ++c) {
    Vec h(k, 0);
    h[0] = c;
    p.h_elements.push_back(h);
  }
  return p;
}

inline Presentation fixture_presentation(const std::string& name, std::int64_t q, int n, int k,
                                         std::int64_t max_order = 100000) {
  if (name == "trunc") return fixture_trunc(q, k, max_order);
  auto mm = fixture_matrix_model(name, q, n, max_order);
  require(mm.has_value(), errc::unknown_fixture, "unknown fixture '" + name + "'");
  Fq F = Fq::prime_power(q);
  return presentation_from_matrices(F, mm->size, mm->h_mats, mm->j_mats);
}

} // namespace tritype
