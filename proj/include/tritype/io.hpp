#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "tritype/fixtures.hpp"
#include "tritype/supertheory.hpp"

namespace tritype {

using Json = nlohmann::json;

/// On-disk presentation: either explicit structure constants or a matrix
/// model that the loader converts. Field elements appear as packed integer
/// codes (sum of digit_i * p^i).
struct PresentationDocument {
  FieldDescriptor field;
  bool matrix_model = false;

  // structure-constant form
  int dim = 0;
  int j_dim = 0;
  std::vector<std::array<std::int64_t, 4>> structure_constants; // (i, j, k, code)
  std::vector<std::int64_t> unity;
  std::vector<std::vector<std::int64_t>> h_elements;

  // matrix-model form
  int matrix_size = 0;
  std::vector<std::vector<std::int64_t>> h_matrices;
  std::vector<std::vector<std::int64_t>> j_matrices;

  Json to_json() const {
    Json j;
    j["field"] = {{"p", field.p}, {"m", field.m}, {"modulus", field.modulus}};
    if (matrix_model) {
      j["matrix_model"] = {{"matrix_size", matrix_size},
                           {"h_element_matrices", h_matrices},
                           {"j_basis_matrices", j_matrices}};
    } else {
      j["algebra"] = {{"dim", dim}, {"structure_constants", structure_constants}};
      j["j_basis"] = {{"first", dim - j_dim}, {"count", j_dim}};
      j["unity"] = unity;
      j["h_elements"] = h_elements;
    }
    return j;
  }

  static PresentationDocument from_json(const Json& j) {
    PresentationDocument d;
    try {
      d.field.p = j.at("field").at("p").get<std::int64_t>();
      d.field.m = j.at("field").at("m").get<int>();
      d.field.modulus = j.at("field").at("modulus").get<std::vector<std::int64_t>>();
      if (j.contains("matrix_model")) {
        d.matrix_model = true;
        const auto& mm = j.at("matrix_model");
        d.matrix_size = mm.at("matrix_size").get<int>();
        d.h_matrices = mm.at("h_element_matrices").get<std::vector<std::vector<std::int64_t>>>();
        d.j_matrices = mm.at("j_basis_matrices").get<std::vector<std::vector<std::int64_t>>>();
      } else {
        const auto& alg = j.at("algebra");
        d.dim = alg.at("dim").get<int>();
        int first = j.at("j_basis").at("first").get<int>();
        d.j_dim = j.at("j_basis").at("count").get<int>();
        require(first == d.dim - d.j_dim, errc::parse_error,
                "the J basis must be the trailing range of basis indices");
        d.structure_constants =
            alg.at("structure_constants").get<std::vector<std::array<std::int64_t, 4>>>();
        d.unity = j.at("unity").get<std::vector<std::int64_t>>();
        d.h_elements = j.at("h_elements").get<std::vector<std::vector<std::int64_t>>>();
      }
    } catch (const Json::exception& e) {
      fail(errc::parse_error, std::string("presentation document: ") + e.what());
    }
    return d;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }

  static PresentationDocument parse(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    require(!j.is_discarded(), errc::parse_error, "invalid JSON in presentation document");
    return from_json(j);
  }

  Presentation to_presentation() const {
    Fq F(field);
    if (matrix_model) {
      std::vector<Vec> hm, jm;
      auto to_vec = [&](const std::vector<std::int64_t>& codes) {
        Vec v;
        for (auto c : codes) {
          require(c >= 0 && c < F.q(), errc::parse_error, "field code out of range");
          v.push_back((FqElem)c);
        }
        return v;
      };
      for (const auto& m : h_matrices) hm.push_back(to_vec(m));
      for (const auto& m : j_matrices) jm.push_back(to_vec(m));
      return presentation_from_matrices(F, (std::size_t)matrix_size, hm, jm);
    }
    Presentation p{F, dim, j_dim, {}, {}, {}};
    require(dim >= 0 && j_dim >= 0 && j_dim <= dim, errc::parse_error, "bad dimensions");
    p.sc.resize((std::size_t)dim * dim);
    for (const auto& [i, jj, k, code] : structure_constants) {
      require(i >= 0 && i < dim && jj >= 0 && jj < dim && k >= 0 && k < dim, errc::parse_error,
              "structure constant index out of range");
      require(code >= 0 && code < F.q(), errc::parse_error, "field code out of range");
      if (code) p.sc[(std::size_t)i * dim + jj].push_back({(int)k, (FqElem)code});
    }
    auto to_vec = [&](const std::vector<std::int64_t>& codes) {
      require((int)codes.size() == dim, errc::parse_error, "coordinate vector has wrong length");
      Vec v;
      for (auto c : codes) {
        require(c >= 0 && c < F.q(), errc::parse_error, "field code out of range");
        v.push_back((FqElem)c);
      }
      return v;
    };
    p.unity = to_vec(unity);
    for (const auto& h : h_elements) p.h_elements.push_back(to_vec(h));
    return p;
  }

  static PresentationDocument from_presentation(const Presentation& p) {
    PresentationDocument d;
    d.field = p.field.descriptor();
    d.dim = p.dim_a;
    d.j_dim = p.dim_j;
    for (int i = 0; i < p.dim_a; ++i)
      for (int j = 0; j < p.dim_a; ++j)
        for (const auto& [k, c] : p.sc[(std::size_t)i * p.dim_a + j])
          d.structure_constants.push_back({i, j, k, (std::int64_t)c});
    for (auto c : p.unity) d.unity.push_back(c);
    for (const auto& h : p.h_elements) {
      std::vector<std::int64_t> row(h.begin(), h.end());
      d.h_elements.push_back(std::move(row));
    }
    return d;
  }
};

/// Deterministic document for a built-in fixture; the matrix families keep
/// their matrix form, trunc ships structure constants.
inline PresentationDocument fixture_document(const std::string& name, std::int64_t q, int n, int k,
                                             std::int64_t max_order = 100000) {
  if (auto mm = fixture_matrix_model(name, q, n, max_order)) {
    PresentationDocument d;
    d.field = Fq::prime_power(q).descriptor();
    d.matrix_model = true;
    d.matrix_size = (int)mm->size;
    for (const auto& m : mm->h_mats) d.h_matrices.emplace_back(m.begin(), m.end());
    for (const auto& m : mm->j_mats) d.j_matrices.emplace_back(m.begin(), m.end());
    return d;
  }
  if (name == "trunc") return PresentationDocument::from_presentation(fixture_trunc(q, k, max_order));
  fail(errc::unknown_fixture, "unknown fixture '" + name + "'");
}

// ---- label rendering ----

inline std::string brace_list(const std::vector<std::int64_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(xs[i]);
  }
  return s + "}";
}

inline std::vector<std::int64_t> support_list(std::uint32_t mask) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

inline std::vector<std::int64_t> codes_of(const Vec& v) {
  return std::vector<std::int64_t>(v.begin(), v.end());
}

// ---- supercharacter table emission ----

inline Json table_to_json(const SupercharacterTable& t) {
  Json j;
  j["group_order"] = t.group_order;
  Json alphas = Json::array();
  for (std::size_t i = 0; i < t.alphas.size(); ++i)
    alphas.push_back({{"e_support", support_list(t.alphas[i].e_mask)},
                      {"theta", t.alphas[i].theta_exps},
                      {"omega_star", codes_of(t.alphas[i].omega_star_rep)},
                      {"degree", t.degrees[i]}});
  j["alphas"] = alphas;
  Json betas = Json::array();
  for (std::size_t i = 0; i < t.betas.size(); ++i)
    betas.push_back({{"e_support", support_list(t.betas[i].e_mask)},
                     {"h", codes_of(t.betas[i].h_coords)},
                     {"omega", codes_of(t.betas[i].omega_rep)},
                     {"size", t.class_sizes[i]}});
  j["betas"] = betas;
  Json values = Json::array();
  Json approx = Json::array();
  for (const auto& row : t.values) {
    Json vr = Json::array(), ar = Json::array();
    for (const auto& c : row) {
      vr.push_back(c.exact_string());
      auto z = c.approx();
      ar.push_back({z.real(), z.imag()});
    }
    values.push_back(vr);
    approx.push_back(ar);
  }
  j["values"] = values;
  j["values_approx"] = approx;
  return j;
}

/// Reads back the exact cells of an emitted table (labels plus values).
struct ParsedTable {
  std::vector<std::vector<std::int64_t>> alpha_e, beta_e;
  std::vector<std::vector<std::int64_t>> alpha_theta, beta_h;
  std::vector<std::vector<Cyclo>> values;
};

inline ParsedTable table_from_json(const Json& j) {
  ParsedTable p;
  try {
    for (const auto& a : j.at("alphas")) {
      p.alpha_e.push_back(a.at("e_support").get<std::vector<std::int64_t>>());
      p.alpha_theta.push_back(a.at("theta").get<std::vector<std::int64_t>>());
    }
    for (const auto& b : j.at("betas")) {
      p.beta_e.push_back(b.at("e_support").get<std::vector<std::int64_t>>());
      p.beta_h.push_back(b.at("h").get<std::vector<std::int64_t>>());
    }
    for (const auto& row : j.at("values")) {
      std::vector<Cyclo> vr;
      for (const auto& cell : row) vr.push_back(Cyclo::parse_exact(cell.get<std::string>()));
      p.values.push_back(std::move(vr));
    }
  } catch (const Json::exception& e) {
    fail(errc::parse_error, std::string("table document: ") + e.what());
  }
  return p;
}

inline std::string table_to_csv(const SupercharacterTable& t) {
  std::ostringstream os;
  os << "# supercharacter table, exact cell grammar: \"<rational>[ + <rational>*z^<k>]*; conductor=<N>\"\n";
  os << "# group_order," << t.group_order << "\n";
  for (std::size_t i = 0; i < t.betas.size(); ++i)
    os << "# beta," << i << ",e_support," << brace_list(support_list(t.betas[i].e_mask)) << ",h,"
       << brace_list(codes_of(t.betas[i].h_coords)) << ",omega,"
       << brace_list(codes_of(t.betas[i].omega_rep)) << ",size," << t.class_sizes[i] << "\n";
  os << "alpha,e_support,theta,omega_star,degree";
  for (std::size_t i = 0; i < t.betas.size(); ++i) os << ",K" << i;
  os << "\n";
  for (std::size_t i = 0; i < t.alphas.size(); ++i) {
    os << i << "," << brace_list(support_list(t.alphas[i].e_mask)) << ","
       << brace_list(t.alphas[i].theta_exps) << ","
       << brace_list(codes_of(t.alphas[i].omega_star_rep)) << "," << t.degrees[i];
    for (const auto& cell : t.values[i]) os << ",\"" << cell.exact_string() << "\"";
    os << "\n";
  }
  return os.str();
}

/// Exact cells of a CSV table emitted by table_to_csv.
inline std::vector<std::vector<Cyclo>> table_values_from_csv(const std::string& text) {
  std::vector<std::vector<Cyclo>> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("alpha,", 0) == 0) continue;
    std::vector<Cyclo> row;
    std::size_t pos = 0;
    while ((pos = line.find('"', pos)) != std::string::npos) {
      std::size_t end = line.find('"', pos + 1);
      require(end != std::string::npos, errc::parse_error, "unterminated cell quote");
      row.push_back(Cyclo::parse_exact(line.substr(pos + 1, end - pos - 1)));
      pos = end + 1;
    }
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

// ---- report emission ----

inline Json validation_to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.ok();
  if (r.ok()) {
    j["h_order"] = r.h_order;
    j["dim_j"] = r.dim_j;
    j["nilpotency_index"] = r.nilpotency;
  }
  Json issues = Json::array();
  for (const auto& i : r.issues) issues.push_back({{"code", i.code}, {"witness", i.witness}});
  j["issues"] = issues;
  return j;
}

inline Json verify_to_json(const VerifyReport& r) {
  Json j;
  j["all_pass"] = r.all_pass();
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

inline void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  require(f.good(), errc::parse_error, "cannot open output file " + out_path);
  f << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), errc::parse_error, "cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace tritype
