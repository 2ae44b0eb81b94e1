#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "simproj/instance.hpp"
#include "simproj/newton.hpp"

namespace simproj {

enum class Method { Newton, Lemke, Oracle };

const char* to_string(Method m);
Method method_from_string(const std::string& name);

struct BenchSuite {
  int count = 1;  // instances per (kind, dimension) pair
  std::vector<int> dims;
  std::vector<InstanceKind> kinds;
  std::vector<Method> methods = {Method::Newton, Method::Lemke, Method::Oracle};
  std::uint64_t seed = 0;
  double identity_param = 0.5;
  double gram_defect_param = 0.25;
  int pivot_limit = 10000;
  SolverConfig newton_cfg{};
};

struct BenchRecord {
  std::string label;
  Method method = Method::Newton;
  int m = 0;
  std::string status;
  std::int64_t iters = 0;  // newton iterations / lemke pivots / oracle candidates
  double residual = 0.0;   // ‖F(x)‖ of the reported solution
  double distance = 0.0;   // ‖z − P‖
  std::uint64_t wall_time_ns = 0;
  int disagreement = 0;
};

extern const char* const kBenchCsvHeader;

void write_csv_row(const BenchRecord& r, std::ostream& out);

/// One row per (instance, method) in deterministic order; oracle rows are
/// emitted only for m ≤ 12. Rows for an instance are written and flushed as
/// soon as all of its methods finish. A row gets disagreement = 1 when the
/// methods on its instance do not all agree on the projection within
/// 1e-6·(1+‖z‖).
std::vector<BenchRecord> run_bench(const BenchSuite& suite, std::ostream& csv_out);

}  // namespace simproj
