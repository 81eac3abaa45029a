#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sipkit/auerbach.hpp"
#include "sipkit/checker.hpp"
#include "sipkit/geometry.hpp"
#include "sipkit/norms.hpp"
#include "sipkit/sip.hpp"

namespace sipkit::cli {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string norm_path;
  std::string op_path;
  std::uint64_t seed = 7;
  int samples = 512;
  double tol = 1e-7;
  double group_tol = 1e-8;
  std::string strategy = "mixed";
  std::string output = "json";

  // Operation arguments.
  std::string x, y, z, u, v;
  std::string u_path, v_path, subspaces_path, pairs_path;
  int n = 1;
  int restarts = 8;
  bool strict = false;
  double theta = 0.0;
  double x0 = 0.0;
  int grid = 64;
  int mesh = 64;
  int refine = 3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vector parse_vector(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidInput(std::string("invalid number in --") + what + ": '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw InvalidInput(std::string("empty vector for --") + what);
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json to_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

json columns_as_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) rows.push_back(to_json(m.col(c)));
  return rows;
}

json rows_of(const Eigen::Matrix2d& m) {
  return json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

void emit(const json& report, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output == "text") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows) {
      out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
  } else {
    out << report.dump() << '\n';
  }
}

Sampler sampler_of(const RunConfig& cfg) {
  if (cfg.samples < 1) throw InvalidInput("--samples must be >= 1");
  return Sampler{cfg.seed, cfg.samples, parse_strategy(cfg.strategy)};
}

json theorem_json(const TheoremReport& r) {
  return {
      {"aa_residual", r.aa_residual},
      {"cond1", r.cond1_residual},
      {"cond2", r.cond2_residual},
      {"cond3", r.cond3_residual},
      {"verdicts",
       {{"aa", r.verdicts.adjoint_abelian},
        {"cond1", r.verdicts.direct_sum},
        {"cond2", r.verdicts.transversal},
        {"cond3", r.verdicts.scaled_isometry}}},
      {"consistent", r.consistent},
      {"tol", r.tol},
      {"lambdas", r.lambdas},
      {"group_dims", r.group_dims},
      {"lipschitz_caveat", r.lipschitz_caveat},
  };
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SIP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("SIP_SEED is not an integer: ") + env);
    }
  }
  return 7;
}

json execute(const std::string& cmd, const RunConfig& cfg, int& exit_code) {
  const NormSpec spec = parse_norm_spec(read_file(cfg.norm_path));
  auto op = [&] {
    if (cfg.op_path.empty()) throw InvalidInput("--op is required");
    return parse_operator(read_file(cfg.op_path));
  };
  auto vec = [&](const std::string& text, const char* what) {
    if (text.empty()) throw InvalidInput(std::string("--") + what + " is required");
    Vector v = parse_vector(text, what);
    require_dim(spec, v);
    return v;
  };
  auto verdict = [&](double residual) { return residual <= cfg.tol; };
  if (!(cfg.tol > 0.0)) throw InvalidInput("--tol must be positive");

  if (cmd == "eval") {
    return {{"value", sip_eval(spec, vec(cfg.x, "x"), vec(cfg.y, "y"))}};
  }
  if (cmd == "axioms") {
    const auto r = sip_axiom_report(spec, cfg.samples, cfg.seed);
    return {{"samples", r.samples},
            {"linearity", r.linearity},
            {"positivity", r.positivity},
            {"schwartz", r.schwartz},
            {"second_homogeneity", r.second_homogeneity},
            {"norm_identity", r.norm_identity},
            {"max_residual", r.max_residual()}};
  }
  if (cmd == "check-aa") {
    const double r = adjoint_abelian_residual(spec, op(), sampler_of(cfg));
    return {{"aa_residual", r}, {"verdict", verdict(r)}, {"tol", cfg.tol}};
  }
  if (cmd == "transversal") {
    const Matrix u = parse_subspace(read_file(cfg.u_path), spec.dim());
    const Matrix v = parse_subspace(read_file(cfg.v_path), spec.dim());
    const double r = check_transversal_normal(spec, u, v, sampler_of(cfg));
    return {{"residual", r}, {"verdict", verdict(r)}, {"tol", cfg.tol}};
  }
  if (cmd == "direct-sum") {
    const auto subs = parse_subspace_list(read_file(cfg.subspaces_path), spec.dim());
    const double r = check_direct_sum(spec, subs, sampler_of(cfg));
    return {{"residual", r}, {"verdict", verdict(r)}, {"tol", cfg.tol}};
  }
  if (cmd == "isometry") {
    const double r = check_isometry(spec, op(), sampler_of(cfg));
    return {{"residual", r}, {"verdict", verdict(r)}, {"tol", cfg.tol}};
  }
  if (cmd == "lemma5" || cmd == "power-id") {
    const Matrix a = op();
    if (a.rows() != spec.dim()) throw InvalidInput("dimension mismatch: operator vs norm");
    const SpectralData sd = spectral_decompose(a, cfg.group_tol);
    const Vector z = vec(cfg.z, "z");
    const Vector x = vec(cfg.x, "x");
    if (!sd.diagonalizable()) {
      throw InvalidInput("operator is not real-diagonalizable (" + sd.reason() + ")");
    }
    if (cmd == "lemma5") {
      const double r = lemma_decomposition_residual(spec, sd, z, x);
      return {{"residual", r}, {"group", sd.group_containing(z) + 1}};
    }
    return {{"residual", power_identity_residual(spec, sd, z, x, cfg.n)}, {"n", cfg.n}};
  }
  if (cmd == "verify-theorem") {
    return theorem_json(verify_theorem(spec, op(), sampler_of(cfg), cfg.tol, cfg.group_tol));
  }
  if (cmd == "auerbach") {
    const auto b = auerbach_search(spec, cfg.seed, cfg.restarts);
    if (cfg.strict && !b.converged) exit_code = kNumericalFailure;
    return {{"basis", columns_as_rows(b.vectors)},
            {"pair_residual", b.pair_residual},
            {"det_value", b.det_value},
            {"converged", b.converged},
            {"restart", b.restart},
            {"sweeps", b.sweeps}};
  }
  if (cmd == "section" || cmd == "ellipse" || cmd == "ode") {
    const PlaneFrame frame = PlaneFrame::make(spec, vec(cfg.u, "u"), vec(cfg.v, "v"));
    if (cmd == "section") {
      return {{"point", to_json(section_point(spec, frame, cfg.theta))}};
    }
    if (cmd == "ellipse") {
      const auto fit = fit_section_ellipse(spec, frame, cfg.grid);
      return {{"residual", fit.residual},
              {"form", rows_of(fit.form)},
              {"positive_definite", fit.positive_definite}};
    }
    const auto r = ode_residual(spec, frame, cfg.x0);
    return {{"residual", r.residual},
            {"f", r.f},
            {"f_prime", r.f_prime},
            {"rhs", r.rhs},
            {"premise_gap", r.premise_gap},
            {"premise", r.premise_holds ? "ok" : "premise-violated"}};
  }
  if (cmd == "lipschitz") {
    const auto est = lipschitz_scan(spec, vec(cfg.x, "x"), cfg.mesh, cfg.refine);
    json levels = json::array();
    for (std::size_t i = 0; i < est.level_gaps.size(); ++i) {
      levels.push_back({{"gap", est.level_gaps[i]}, {"kappa", est.level_kappas[i]}});
    }
    return {{"kappa_hat", est.kappa_hat},
            {"witness", {{"y", to_json(est.witness_y)}, {"z", to_json(est.witness_z)}}},
            {"mesh", est.mesh_size},
            {"levels", levels},
            {"stability_ratio", est.stability_ratio()}};
  }
  if (cmd == "ucont") {
    const json j = [&] {
      try {
        return json::parse(read_file(cfg.pairs_path));
      } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("invalid JSON: ") + e.what());
      }
    }();
    if (!j.is_object() || j.size() != 1 || !j.contains("pairs") || !j["pairs"].is_array()) {
      throw InvalidInput("pairs file must be {\"pairs\":[[[y...],[z...]],...]}");
    }
    std::vector<std::pair<Vector, Vector>> pairs;
    for (const auto& p : j["pairs"]) {
      if (!p.is_array() || p.size() != 2) throw InvalidInput("each pair must hold two vectors");
      auto to_vec = [&](const json& a) {
        if (!a.is_array()) throw InvalidInput("pair entries must be arrays");
        Vector v(static_cast<Eigen::Index>(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (!a[i].is_number()) throw InvalidInput("pair entries must be numbers");
          v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
        }
        return v;
      };
      pairs.emplace_back(to_vec(p[0]), to_vec(p[1]));
    }
    const auto probe = uniform_continuity_probe(spec, vec(cfg.x, "x"), pairs);
    json entries = json::array();
    for (const auto& e : probe.entries) {
      entries.push_back({{"distance", e.distance}, {"gap", e.gap}});
    }
    return {{"entries", entries},
            {"final_gap", probe.final_gap},
            {"final_distance", probe.final_distance},
            {"gap_vanishes", probe.gap_vanishes},
            {"monotone_from", probe.monotone_from}};
  }
  throw InvalidInput("unknown subcommand " + cmd);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Semi-inner-product toolkit for smooth finite-dimensional norms", "sip"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  try {
    cfg.seed = default_seed();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--norm", cfg.norm_path, "Norm spec JSON file")->required();
    sub->add_option("--seed", cfg.seed, "Sampling seed (default 7, or $SIP_SEED)");
    sub->add_option("--samples", cfg.samples, "Number of samples")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Verdict tolerance")->capture_default_str();
    sub->add_option("--strategy", cfg.strategy, "sphere_random | basis_pairs | mixed")
        ->capture_default_str();
    sub->add_option("--output", cfg.output, "json | text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    return sub;
  };
  auto with_op = [&](CLI::App* sub) {
    sub->add_option("--op", cfg.op_path, "Operator JSON file")->required();
    sub->add_option("--group-tol", cfg.group_tol, "Relative |lambda| grouping tolerance")
        ->capture_default_str();
    return sub;
  };
  auto frame = [&](CLI::App* sub) {
    sub->add_option("--u", cfg.u, "First frame vector, comma separated")->required();
    sub->add_option("--v", cfg.v, "Second frame vector, comma separated")->required();
    return sub;
  };

  auto* eval = common(app.add_subcommand("eval", "Evaluate [x, y]"));
  eval->add_option("--x", cfg.x)->required();
  eval->add_option("--y", cfg.y)->required();

  common(app.add_subcommand("axioms", "Check the semi-inner-product axioms on samples"));
  with_op(common(app.add_subcommand("check-aa", "Adjoint-abelian residual of an operator")));

  auto* trans = common(app.add_subcommand("transversal", "Mutual transversality of two subspaces"));
  trans->add_option("--U", cfg.u_path, "Subspace JSON file")->required();
  trans->add_option("--V", cfg.v_path, "Subspace JSON file")->required();

  auto* dsum = common(app.add_subcommand("direct-sum", "Direct-sum splitting over subspaces"));
  dsum->add_option("--subspaces", cfg.subspaces_path, "Subspace list JSON file")->required();

  with_op(common(app.add_subcommand("isometry", "Isometry residual of an operator")));

  auto* lemma = with_op(common(app.add_subcommand("lemma5", "|[z,x] - [z,x_i]| for z in a group")));
  lemma->add_option("--z", cfg.z)->required();
  lemma->add_option("--x", cfg.x)->required();

  auto* power = with_op(common(app.add_subcommand("power-id", "Power identity residual for z in the top group")));
  power->add_option("--z", cfg.z)->required();
  power->add_option("--x", cfg.x)->required();
  power->add_option("--n", cfg.n)->capture_default_str();

  with_op(common(app.add_subcommand("verify-theorem", "Full adjoint-abelian characterization report")));

  auto* auer = common(app.add_subcommand("auerbach", "Search for an Auerbach basis"));
  auer->add_option("--restarts", cfg.restarts)->capture_default_str();
  auer->add_flag("--strict", cfg.strict, "Exit 3 if the search does not converge");

  auto* sec = frame(common(app.add_subcommand("section", "Point of the unit sphere in a plane")));
  sec->add_option("--theta", cfg.theta, "Angle in radians")->required();

  auto* ell = frame(common(app.add_subcommand("ellipse", "Centered-ellipse fit of a plane section")));
  ell->add_option("--grid", cfg.grid)->capture_default_str();

  auto* ode = frame(common(app.add_subcommand("ode", "Section graph ODE residual")));
  ode->add_option("--x0", cfg.x0)->required();

  auto* lip = common(app.add_subcommand("lipschitz", "Lipschitz constant lower bound at x"));
  lip->add_option("--x", cfg.x)->required();
  lip->add_option("--mesh", cfg.mesh)->capture_default_str();
  lip->add_option("--refine", cfg.refine)->capture_default_str();

  auto* ucont = common(app.add_subcommand("ucont", "Uniform continuity probe over pairs"));
  ucont->add_option("--x", cfg.x)->required();
  ucont->add_option("--pairs", cfg.pairs_path, "Pairs JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  int exit_code = kComputed;
  try {
    const json report = execute(cmd, cfg, exit_code);
    emit(report, cfg, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return exit_code;
}

}  // namespace sipkit::cli
