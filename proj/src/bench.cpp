#include "simproj/bench.hpp"

#include <chrono>
#include <ostream>
#include <sstream>

#include "simproj/lcp.hpp"
#include "simproj/oracle.hpp"
#include "simproj/rng.hpp"

namespace simproj {

const char* to_string(Method m) {
  switch (m) {
    case Method::Newton:
      return "newton";
    case Method::Lemke:
      return "lemke";
    case Method::Oracle:
      return "oracle";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "newton") return Method::Newton;
  if (name == "lemke") return Method::Lemke;
  if (name == "oracle") return Method::Oracle;
  throw BadParam("unknown method: " + name);
}

const char* const kBenchCsvHeader =
    "label,method,m,status,iters,residual,distance,wall_time_ns,disagreement";

void write_csv_row(const BenchRecord& r, std::ostream& out) {
  out << r.label << ',' << to_string(r.method) << ',' << r.m << ',' << r.status << ','
      << r.iters << ',' << format_double(r.residual) << ',' << format_double(r.distance)
      << ',' << r.wall_time_ns << ',' << r.disagreement << '\n';
}

namespace {

struct MethodOutcome {
  BenchRecord record;
  bool has_projection = false;
  Vector projection;
};

std::uint64_t elapsed_ns(std::chrono::steady_clock::time_point t0) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count());
}

MethodOutcome run_method(Method method, const SimplicialCone& cone,
                         const ProblemInstance& inst, const BenchSuite& suite) {
  MethodOutcome out;
  out.record.label = inst.label;
  out.record.method = method;
  out.record.m = inst.m;
  const auto t0 = std::chrono::steady_clock::now();

  switch (method) {
    case Method::Newton: {
      const SolveReport rep = solve(cone, inst.point, suite.newton_cfg);
      out.record.wall_time_ns = elapsed_ns(t0);
      out.record.status = to_string(rep.status);
      out.record.iters = rep.iterations;
      out.record.residual = residual(cone, inst.point, rep.solution).norm();
      out.projection = rep.projection;
      out.has_projection = is_converged(rep.status);
      break;
    }
    case Method::Lemke: {
      const LcpSolution sol = lemke_solve(from_projection(cone, inst.point), suite.pivot_limit);
      out.record.wall_time_ns = elapsed_ns(t0);
      out.record.status = to_string(sol.status);
      out.record.iters = sol.pivots;
      const Vector x = sol.u - sol.v;
      out.record.residual = residual(cone, inst.point, x).norm();
      out.projection = cone.generator() * sol.u;
      out.has_projection = sol.status == LcpStatus::Solved;
      break;
    }
    case Method::Oracle: {
      const OracleResult res = enumerate_project(cone, inst.point);
      out.record.wall_time_ns = elapsed_ns(t0);
      out.record.status = "solved";
      out.record.iters = static_cast<std::int64_t>(res.candidates_tested);
      out.record.residual = residual(cone, inst.point, res.solution).norm();
      out.projection = res.projection;
      out.has_projection = true;
      break;
    }
  }
  out.record.distance = (inst.point - out.projection).norm();
  return out;
}

double kind_param(const BenchSuite& suite, InstanceKind kind) {
  switch (kind) {
    case InstanceKind::IdentityPerturbed:
      return suite.identity_param;
    case InstanceKind::GramDefectTargeted:
      return suite.gram_defect_param;
    case InstanceKind::RandomNonsingular:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchSuite& suite, std::ostream& csv_out) {
  if (suite.count < 0) throw BadParam("bench count must be nonnegative");
  csv_out << kBenchCsvHeader << '\n';
  csv_out.flush();

  std::vector<BenchRecord> all;
  for (std::size_t ki = 0; ki < suite.kinds.size(); ++ki) {
    const InstanceKind kind = suite.kinds[ki];
    for (const int m : suite.dims) {
      for (int i = 0; i < suite.count; ++i) {
        const std::uint64_t inst_seed =
            mix_seed(mix_seed(mix_seed(suite.seed, ki), static_cast<std::uint64_t>(m)),
                     static_cast<std::uint64_t>(i));
        ProblemInstance inst = generate(kind, m, kind_param(suite, kind), inst_seed);
        {
          std::ostringstream label;
          label << to_string(kind) << "-m" << m << "-s" << inst_seed << "-i" << i;
          inst.label = label.str();
        }
        const SimplicialCone cone(inst.generator);

        std::vector<MethodOutcome> outcomes;
        for (const Method method : suite.methods) {
          if (method == Method::Oracle && m > 12) continue;
          outcomes.push_back(run_method(method, cone, inst, suite));
        }

        const double agree_tol = 1e-6 * (1.0 + inst.point.norm());
        bool disagreement = false;
        for (std::size_t a = 0; a < outcomes.size() && !disagreement; ++a) {
          for (std::size_t b = a + 1; b < outcomes.size() && !disagreement; ++b) {
            if (!outcomes[a].has_projection || !outcomes[b].has_projection) continue;
            disagreement =
                (outcomes[a].projection - outcomes[b].projection).norm() > agree_tol;
          }
        }
        for (auto& o : outcomes) {
          o.record.disagreement = disagreement ? 1 : 0;
          write_csv_row(o.record, csv_out);
          all.push_back(std::move(o.record));
        }
        csv_out.flush();
      }
    }
  }
  return all;
}

}  // namespace simproj
