// Command-line front end: loads a presentation (file or built-in fixture),
// validates it, and runs the requested computation. Exit codes: 0 all-pass,
// 1 invalid input, 2 verification mismatch.

#include <CLI11.hpp>

#include "tritype/io.hpp"
#include "tritype/kirillov.hpp"

using namespace tritype;

namespace {

struct Opts {
  std::string input;
  std::string fixture;
  std::int64_t q = 0;
  int n = 0;
  int k = 0;
  std::string format = "json";
  std::string out;
  int threads = 1;
  std::int64_t max_group_order = 100000;
  std::int64_t seed = 1;
};

void add_common(CLI::App* cmd, Opts& o) {
  auto* input = cmd->add_option("--input", o.input, "presentation document (JSON)");
  auto* fixture =
      cmd->add_option("--fixture", o.fixture, "built-in fixture: axb | ut | tri | trunc");
  cmd->add_option("--q", o.q, "field size for the fixture");
  cmd->add_option("--n", o.n, "matrix size for ut/tri");
  cmd->add_option("--k", o.k, "truncation degree for trunc");
  cmd->add_option("--format", o.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--threads", o.threads, "worker threads for table evaluation");
  cmd->add_option("--max-group-order", o.max_group_order, "enumeration bound on |G|");
  cmd->add_option("--seed", o.seed, "reserved for sampling diagnostics; outputs are deterministic");
  input->excludes(fixture);
}

PresentationDocument load_document(const Opts& o) {
  if (!o.input.empty()) return PresentationDocument::parse(read_file(o.input));
  require(!o.fixture.empty(), errc::parse_error, "either --input or --fixture is required");
  require(o.q > 0, errc::parse_error, "--q is required with --fixture");
  return fixture_document(o.fixture, o.q, o.n ? o.n : 3, o.k ? o.k : 2, o.max_group_order);
}

TheoryConfig theory_config(const Opts& o) {
  TheoryConfig cfg;
  cfg.max_group_order = o.max_group_order;
  cfg.threads = o.threads;
  return cfg;
}

int run_validate(const Opts& o) {
  auto doc = load_document(o);
  ValidationReport rep;
  try {
    rep = validate(doc.to_presentation());
  } catch (const error& e) {
    // conversion itself can fail (e.g. a matrix model that is not closed)
    rep.issues.push_back({errc_name(e.code()), e.what()});
  }
  write_output(validation_to_json(rep).dump(2) + "\n", o.out);
  return rep.ok() ? 0 : 1;
}

int run_emit(const Opts& o) {
  write_output(load_document(o).dump(), o.out);
  return 0;
}

int run_superclasses(const Opts& o) {
  Theory th(load_document(o).to_presentation(), theory_config(o));
  const auto& classes = th.superclasses();
  if (o.format == "csv") {
    std::ostringstream os;
    os << "beta,e_support,h,omega,size,representative_h,representative_x\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& c = classes[i];
      os << i << "," << brace_list(support_list(c.label.e_mask)) << ","
         << brace_list(codes_of(c.label.h_coords)) << ","
         << brace_list(codes_of(c.label.omega_rep)) << "," << c.x_members.size() << ","
         << brace_list(codes_of(th.alg().h_elem(c.rep.h))) << ","
         << brace_list(codes_of(c.rep.x)) << "\n";
    }
    write_output(os.str(), o.out);
  } else {
    Json j = Json::array();
    for (const auto& c : classes)
      j.push_back({{"e_support", support_list(c.label.e_mask)},
                   {"h", codes_of(c.label.h_coords)},
                   {"omega", codes_of(c.label.omega_rep)},
                   {"size", c.x_members.size()},
                   {"representative_x", codes_of(c.rep.x)}});
    write_output(j.dump(2) + "\n", o.out);
  }
  return 0;
}

int run_characters(const Opts& o) {
  Theory th(load_document(o).to_presentation(), theory_config(o));
  const auto& alphas = th.alphas();
  if (o.format == "csv") {
    std::ostringstream os;
    os << "alpha,e_support,theta,omega_star,degree,stabilizer_order\n";
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const auto& a = alphas[i];
      os << i << "," << brace_list(support_list(a.label.e_mask)) << ","
         << brace_list(a.label.theta_exps) << "," << brace_list(codes_of(a.label.omega_star_rep))
         << "," << a.degree << "," << a.g_lambda_order << "\n";
    }
    write_output(os.str(), o.out);
  } else {
    Json j = Json::array();
    for (const auto& a : alphas)
      j.push_back({{"e_support", support_list(a.label.e_mask)},
                   {"theta", a.label.theta_exps},
                   {"omega_star", codes_of(a.label.omega_star_rep)},
                   {"degree", a.degree},
                   {"stabilizer_order", a.g_lambda_order}});
    write_output(j.dump(2) + "\n", o.out);
  }
  return 0;
}

int run_table(const Opts& o) {
  Theory th(load_document(o).to_presentation(), theory_config(o));
  auto t = th.table();
  write_output(o.format == "csv" ? table_to_csv(t) : table_to_json(t).dump(2) + "\n", o.out);
  return 0;
}

int run_verify(const Opts& o) {
  Theory th(load_document(o).to_presentation(), theory_config(o));
  auto rep = th.verify();
  write_output(verify_to_json(rep).dump(2) + "\n", o.out);
  return rep.all_pass() ? 0 : 2;
}

int run_kirillov_check(const Opts& o) {
  Theory th(load_document(o).to_presentation(), theory_config(o));
  KirillovEvaluator ke(th);
  auto rep = ke.cross_validate();
  Json j;
  j["cells"] = rep.cells;
  j["ok"] = rep.ok();
  Json ws = Json::array();
  for (const auto& w : rep.mismatches)
    ws.push_back({{"alpha", w.alpha_index}, {"beta", w.beta_index}, {"detail", w.detail}});
  j["mismatches"] = ws;
  write_output(j.dump(2) + "\n", o.out);
  return rep.ok() ? 0 : 2;
}

int run_census(const Opts& o) {
  Theory th(load_document(o).to_presentation(), theory_config(o));
  Json rows = Json::array();
  bool all_match = true;
  for (std::uint32_t m = 0; m <= th.kh().full_mask(); ++m) {
    const auto& rc = th.counts(m);
    std::int64_t ie = th.count_regular_inclusion_exclusion(m);
    const auto& c = th.corner(m);
    bool match = rc.j_regular == rc.dual_regular && rc.j_regular == ie;
    all_match &= match;
    rows.push_back({{"e_support", support_list(m)},
                    {"dim_J_e", c.dim_j()},
                    {"H_of_e_order", subgroup_h_of_e(th.alg(), c.idem()).size()},
                    {"H_e_order", c.h_rep_count()},
                    {"orbits_J", rc.j_orbits},
                    {"regular_orbits_J", rc.j_regular},
                    {"orbits_J_dual", rc.dual_orbits},
                    {"regular_orbits_J_dual", rc.dual_regular},
                    {"inclusion_exclusion", ie},
                    {"identities_hold", match}});
  }
  if (o.format == "csv") {
    std::ostringstream os;
    os << "e_support,dim_J_e,H_of_e,H_e,n_J,nE_J,n_Jdual,nE_Jdual,incl_excl,match\n";
    for (const auto& r : rows) {
      os << brace_list(r.at("e_support").get<std::vector<std::int64_t>>()) << ","
         << r.at("dim_J_e") << "," << r.at("H_of_e_order") << "," << r.at("H_e_order") << ","
         << r.at("orbits_J") << "," << r.at("regular_orbits_J") << "," << r.at("orbits_J_dual")
         << "," << r.at("regular_orbits_J_dual") << "," << r.at("inclusion_exclusion") << ","
         << (r.at("identities_hold").get<bool>() ? "yes" : "no") << "\n";
    }
    write_output(os.str(), o.out);
  } else {
    write_output(rows.dump(2) + "\n", o.out);
  }
  return all_match ? 0 : 2;
}

int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::mismatch:
    case errc::non_integral:
    case errc::localization_failed:
    case errc::generation_check_failed:
      return 2;
    default:
      return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"supercharacter theories of finite triangular-type groups"};
  app.require_subcommand(1);

  Opts o;
  std::map<std::string, std::function<int(const Opts&)>> actions = {
      {"validate", run_validate},     {"emit", run_emit},
      {"superclasses", run_superclasses}, {"characters", run_characters},
      {"table", run_table},           {"verify", run_verify},
      {"kirillov-check", run_kirillov_check}, {"census", run_census},
  };
  std::map<std::string, std::string> descriptions = {
      {"validate", "check the triangular-type axioms and report violations"},
      {"emit", "write the (fixture or parsed) presentation document"},
      {"superclasses", "partition G into superclasses with labels"},
      {"characters", "list supercharacter labels and degrees"},
      {"table", "compute the full exact supercharacter table"},
      {"verify", "run the supercharacter-theory axiom suite"},
      {"kirillov-check", "cross-validate the closed orbit-sum formulas against induction"},
      {"census", "orbit statistics and counting identities per idempotent"},
  };
  for (auto& [name, fn] : actions) {
    CLI::App* cmd = app.add_subcommand(name, descriptions.at(name));
    add_common(cmd, o);
    cmd->callback([&o, name = name, &actions] {
      int rc = actions.at(name)(o);
      if (rc != 0) std::exit(rc);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
