#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "simproj/types.hpp"

namespace simproj {

enum class InstanceKind { IdentityPerturbed, RandomNonsingular, GramDefectTargeted };

const char* to_string(InstanceKind k);
InstanceKind instance_kind_from_string(const std::string& name);

struct ProblemInstance {
  int m = 0;
  Matrix generator;  // A, nonsingular
  Vector point;      // z, scaled to ‖z‖ = √m when generated
  std::string label;
  std::uint64_t seed = 0;  // set when generated; not serialized
};

/// Deterministic instance generation from a splitmix64 stream. Kinds:
///   identity-perturbed   A = I + param·E, E uniform in [−1,1]
///   random-nonsingular   A with standard normal entries
///   gram-defect-targeted A = Q·(I+S) with ‖AᵀA−I‖ ≤ param < 1/3
/// Singular draws are rejected and resampled.
ProblemInstance generate(InstanceKind kind, int m, double param, std::uint64_t seed);

std::string format_double(double v);  // %.17g, round-trip exact

/// JSON document {"m":…, "A":[[rows]], "z":[…], "label":…} with numbers
/// printed to 17 significant digits, so write→read is bit-exact.
void write_instance(const ProblemInstance& inst, std::ostream& out);
ProblemInstance read_instance(std::istream& in);

ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& inst, const std::string& path);

}  // namespace simproj
