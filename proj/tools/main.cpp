#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simproj/bench.hpp"
#include "simproj/instance.hpp"
#include "simproj/lcp.hpp"
#include "simproj/newton.hpp"
#include "simproj/oracle.hpp"

namespace {

using namespace simproj;

// stdout unless --out was given
struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw BadParam("cannot open output file: " + path);
    stream = &file;
  }
};

std::string json_vector(const Vector& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) {
    s += format_double(v(i));
    if (i + 1 < v.size()) s += ", ";
  }
  return s + "]";
}

void print_certificate(const MoreauCertificate& cert, std::ostream& out) {
  out << "  \"certificate\": {\n"
      << "    \"decomposition\": " << format_double(cert.decomposition_error) << ",\n"
      << "    \"orthogonality\": " << format_double(cert.orthogonality_error) << ",\n"
      << "    \"primal_membership\": " << format_double(cert.primal_violation) << ",\n"
      << "    \"polar_membership\": " << format_double(cert.polar_violation) << ",\n"
      << "    \"max_violation\": " << format_double(cert.max_violation) << "\n"
      << "  }\n";
}

int solve_command(const std::string& path, const std::string& method_name, double tol,
                  int max_iters, const std::string& start, int pivot_limit,
                  const std::string& out_path) {
  const ProblemInstance inst = load_instance(path);
  const SimplicialCone cone(inst.generator);
  const Method method = method_from_string(method_name);

  OutputTarget out;
  out.open(out_path);
  std::ostream& os = *out.stream;

  Vector solution;
  Vector projection;
  Vector polar_part;
  std::string status;
  std::int64_t iterations = 0;
  bool success = false;

  switch (method) {
    case Method::Newton: {
      SolverConfig cfg;
      cfg.residual_tol = tol;
      cfg.max_iters = max_iters;
      if (start == "zero") {
        cfg.start = StartRule::Zero;
      } else if (start == "gram-rhs") {
        cfg.start = StartRule::GramRhs;
      } else {
        throw BadParam("unknown start rule: " + start);
      }
      const SolveReport rep = solve(cone, inst.point, cfg);
      solution = rep.solution;
      projection = rep.projection;
      polar_part = rep.polar_part;
      status = to_string(rep.status);
      iterations = rep.iterations;
      success = is_converged(rep.status);
      break;
    }
    case Method::Lemke: {
      const LcpSolution sol = lemke_solve(from_projection(cone, inst.point), pivot_limit);
      solution = sol.u - sol.v;
      projection = cone.generator() * sol.u;
      polar_part = -lu_solve(cone.transpose_lu(), sol.v);
      status = to_string(sol.status);
      iterations = sol.pivots;
      success = sol.status == LcpStatus::Solved;
      if (!sol.note.empty()) std::cerr << sol.note << "\n";
      break;
    }
    case Method::Oracle: {
      const OracleResult res = enumerate_project(cone, inst.point);
      solution = res.solution;
      projection = res.projection;
      polar_part = -lu_solve(cone.transpose_lu(), Vector(negative_part(res.solution)));
      status = "solved";
      iterations = static_cast<std::int64_t>(res.candidates_tested);
      success = true;
      break;
    }
  }

  const MoreauCertificate cert = moreau_certificate(cone, inst.point, solution);
  os << "{\n"
     << "  \"label\": " << nlohmann::json(inst.label).dump() << ",\n"
     << "  \"method\": \"" << to_string(method) << "\",\n"
     << "  \"m\": " << inst.m << ",\n"
     << "  \"status\": \"" << status << "\",\n"
     << "  \"iterations\": " << iterations << ",\n"
     << "  \"residual\": " << format_double(residual(cone, inst.point, solution).norm())
     << ",\n"
     << "  \"distance\": " << format_double((inst.point - projection).norm()) << ",\n"
     << "  \"u\": " << json_vector(solution) << ",\n"
     << "  \"projection\": " << json_vector(projection) << ",\n"
     << "  \"polar_part\": " << json_vector(polar_part) << ",\n";
  print_certificate(cert, os);
  os << "}\n";
  return success ? 0 : 2;
}

int check_command(const std::string& path, double cc_a, const std::string& out_path) {
  const ProblemInstance inst = load_instance(path);
  const SimplicialCone cone(inst.generator);

  OutputTarget out;
  out.open(out_path);
  std::ostream& os = *out.stream;

  const SufficientConditionReport suff = check_sufficient_condition(cone);
  os << "{\n"
     << "  \"label\": " << nlohmann::json(inst.label).dump() << ",\n"
     << "  \"m\": " << inst.m << ",\n"
     << "  \"gram_defect\": " << format_double(suff.defect) << ",\n"
     << "  \"guaranteed\": " << (suff.guaranteed ? "true" : "false");
  if (suff.guaranteed) {
    os << ",\n  \"rate_bound\": " << format_double(suff.rate_bound);
  }
  if (inst.m <= 20) {
    const CcConditionReport cc = check_cc_condition(cone, cc_a);
    os << ",\n  \"cc\": {\n"
       << "    \"a\": " << format_double(cc_a) << ",\n"
       << "    \"holds\": " << (cc.holds ? "true" : "false") << ",\n"
       << "    \"worst_norm\": " << format_double(cc.worst_norm) << ",\n"
       << "    \"worst_pattern\": \"" << cc.worst_pattern.to_string() << "\"\n"
       << "  }";
  }
  os << "\n}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric projection onto simplicial cones"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random problem instance");
  std::string gen_kind = "random-nonsingular";
  int gen_m = 4;
  double gen_param = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_label;
  std::string gen_out;
  gen->add_option("--kind", gen_kind,
                  "identity-perturbed | random-nonsingular | gram-defect-targeted");
  gen->add_option("--m", gen_m, "dimension");
  gen->add_option("--param", gen_param, "perturbation size / gram defect target");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--label", gen_label, "instance label override");
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  // solve
  auto* slv = app.add_subcommand("solve", "project the instance point onto its cone");
  std::string slv_file;
  std::string slv_method = "newton";
  double slv_tol = 1e-10;
  int slv_max_iters = 200;
  std::string slv_start = "gram-rhs";
  int slv_pivot_limit = 10000;
  std::string slv_out;
  slv->add_option("instance", slv_file, "instance JSON file")->required();
  slv->add_option("--method", slv_method, "newton | lemke | oracle");
  slv->add_option("--tol", slv_tol, "relative residual tolerance");
  slv->add_option("--max-iters", slv_max_iters, "newton iteration cap");
  slv->add_option("--start", slv_start, "gram-rhs | zero");
  slv->add_option("--pivot-limit", slv_pivot_limit, "lemke pivot cap");
  slv->add_option("--out", slv_out, "output path (stdout when omitted)");

  // bench
  auto* bch = app.add_subcommand("bench", "cross-method comparison CSV");
  BenchSuite suite;
  std::vector<int> bch_dims = {4};
  std::vector<std::string> bch_kinds = {"random-nonsingular"};
  std::vector<std::string> bch_methods = {"newton", "lemke", "oracle"};
  std::uint64_t bch_seed = 0;
  std::string bch_out;
  bch->add_option("--count", suite.count, "instances per (kind, dimension)");
  bch->add_option("--dims", bch_dims, "dimensions")->delimiter(',');
  bch->add_option("--kinds", bch_kinds, "instance kinds")->delimiter(',');
  bch->add_option("--methods", bch_methods, "methods to run")->delimiter(',');
  bch->add_option("--seed", bch_seed, "suite seed");
  bch->add_option("--param-identity", suite.identity_param, "identity-perturbed param");
  bch->add_option("--param-gram", suite.gram_defect_param, "gram-defect target");
  bch->add_option("--tol", suite.newton_cfg.residual_tol, "newton residual tolerance");
  bch->add_option("--max-iters", suite.newton_cfg.max_iters, "newton iteration cap");
  bch->add_option("--pivot-limit", suite.pivot_limit, "lemke pivot cap");
  bch->add_option("--out", bch_out, "CSV path (stdout when omitted)");

  // check
  auto* chk = app.add_subcommand("check", "convergence-condition diagnostics");
  std::string chk_file;
  double chk_cc_a = 0.499;
  std::string chk_out;
  chk->add_option("instance", chk_file, "instance JSON file")->required();
  chk->add_option("--cc-a", chk_cc_a, "threshold for the per-pattern norm check");
  chk->add_option("--out", chk_out, "output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ProblemInstance inst =
          generate(instance_kind_from_string(gen_kind), gen_m, gen_param, gen_seed);
      if (!gen_label.empty()) inst.label = gen_label;
      OutputTarget out;
      out.open(gen_out);
      write_instance(inst, *out.stream);
      return 0;
    }
    if (slv->parsed()) {
      return solve_command(slv_file, slv_method, slv_tol, slv_max_iters, slv_start,
                           slv_pivot_limit, slv_out);
    }
    if (bch->parsed()) {
      suite.dims = bch_dims;
      suite.seed = bch_seed;
      suite.kinds.clear();
      for (const auto& k : bch_kinds) suite.kinds.push_back(instance_kind_from_string(k));
      suite.methods.clear();
      for (const auto& m : bch_methods) suite.methods.push_back(method_from_string(m));
      OutputTarget out;
      out.open(bch_out);
      run_bench(suite, *out.stream);
      return 0;
    }
    if (chk->parsed()) {
      return check_command(chk_file, chk_cc_a, chk_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
