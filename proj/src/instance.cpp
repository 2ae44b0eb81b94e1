#include "simproj/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "simproj/cone.hpp"
#include "simproj/rng.hpp"

namespace simproj {

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::IdentityPerturbed:
      return "identity-perturbed";
    case InstanceKind::RandomNonsingular:
      return "random-nonsingular";
    case InstanceKind::GramDefectTargeted:
      return "gram-defect-targeted";
  }
  return "unknown";
}

InstanceKind instance_kind_from_string(const std::string& name) {
  if (name == "identity-perturbed") return InstanceKind::IdentityPerturbed;
  if (name == "random-nonsingular") return InstanceKind::RandomNonsingular;
  if (name == "gram-defect-targeted") return InstanceKind::GramDefectTargeted;
  throw BadParam("unknown instance kind: " + name);
}

namespace {

constexpr int kMaxResamples = 256;

Matrix draw_matrix(int m, SplitMix64& rng, bool normal_entries) {
  Matrix a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      a(i, j) = normal_entries ? rng.normal() : rng.uniform_sym();
    }
  }
  return a;
}

bool nonsingular(const Matrix& a) {
  try {
    lu_factor(a);
    return true;
  } catch (const SingularMatrix&) {
    return false;
  }
}

Vector draw_point(int m, SplitMix64& rng) {
  Vector z(m);
  for (int i = 0; i < m; ++i) z(i) = rng.normal();
  const double n = z.norm();
  if (n == 0.0) return Vector::Zero(m);
  return z * (std::sqrt(static_cast<double>(m)) / n);
}

Matrix identity_perturbed(int m, double param, SplitMix64& rng) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Matrix a = Matrix::Identity(m, m) + param * draw_matrix(m, rng, false);
    if (nonsingular(a)) return a;
  }
  throw BadParam("identity-perturbed generator kept drawing singular matrices");
}

Matrix random_nonsingular(int m, SplitMix64& rng) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Matrix a = draw_matrix(m, rng, true);
    if (nonsingular(a)) return a;
  }
  throw BadParam("random-nonsingular generator kept drawing singular matrices");
}

Matrix gram_defect_targeted(int m, double param, SplitMix64& rng) {
  // (1+s)² − 1 = 2s + s² peaks at s_max over [−s_max, s_max], so choosing
  // 2·s_max + s_max² = param keeps ‖(I+S)²−I‖ within param
  const double s_max = std::sqrt(1.0 + param) - 1.0;
  Matrix a = orthonormal_factor(draw_matrix(m, rng, true));
  for (int j = 0; j < m; ++j) {
    a.col(j) *= 1.0 + rng.uniform_in(-s_max, s_max);
  }
  return a;
}

}  // namespace

ProblemInstance generate(InstanceKind kind, int m, double param, std::uint64_t seed) {
  if (m < 1) throw BadParam("dimension must be at least 1");
  if (!std::isfinite(param)) throw BadParam("param must be finite");
  if (kind == InstanceKind::GramDefectTargeted && !(param > 0.0 && param < 1.0 / 3.0)) {
    throw BadParam("gram-defect-targeted requires 0 < param < 1/3");
  }

  SplitMix64 rng(seed);
  ProblemInstance inst;
  inst.m = m;
  inst.seed = seed;

  switch (kind) {
    case InstanceKind::IdentityPerturbed:
      inst.generator = identity_perturbed(m, param, rng);
      break;
    case InstanceKind::RandomNonsingular:
      inst.generator = random_nonsingular(m, rng);
      break;
    case InstanceKind::GramDefectTargeted:
      inst.generator = gram_defect_targeted(m, param, rng);
      break;
  }
  inst.point = draw_point(m, rng);

  std::ostringstream label;
  label << to_string(kind) << "-m" << m << "-seed" << seed;
  inst.label = label.str();

  if (kind == InstanceKind::GramDefectTargeted) {
    const SimplicialCone cone(inst.generator);
    if (!(cone.gram_defect() < 1.0 / 3.0)) {
      throw BadParam("generated gram defect is not below 1/3");
    }
  }
  return inst;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_instance(const ProblemInstance& inst, std::ostream& out) {
  if (inst.m < 1 || inst.generator.rows() != inst.m || inst.generator.cols() != inst.m ||
      inst.point.size() != inst.m) {
    throw InvalidInstance("instance fields are inconsistent with its dimension");
  }
  out << "{\n  \"m\": " << inst.m << ",\n  \"A\": [\n";
  for (int i = 0; i < inst.m; ++i) {
    out << "    [";
    for (int j = 0; j < inst.m; ++j) {
      out << format_double(inst.generator(i, j));
      if (j + 1 < inst.m) out << ", ";
    }
    out << (i + 1 < inst.m ? "],\n" : "]\n");
  }
  out << "  ],\n  \"z\": [";
  for (int i = 0; i < inst.m; ++i) {
    out << format_double(inst.point(i));
    if (i + 1 < inst.m) out << ", ";
  }
  out << "],\n  \"label\": " << nlohmann::json(inst.label).dump() << "\n}\n";
}

ProblemInstance read_instance(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInstance(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("A") || !doc.contains("z")) {
    throw InvalidInstance("instance must be an object with m, A and z");
  }
  if (!doc["m"].is_number_integer() || doc["m"].get<int>() < 1) {
    throw InvalidInstance("m must be a positive integer");
  }

  ProblemInstance inst;
  inst.m = doc["m"].get<int>();
  const auto& a = doc["A"];
  const auto& z = doc["z"];
  if (!a.is_array() || a.size() != static_cast<std::size_t>(inst.m)) {
    throw InvalidInstance("A must be an array of m rows");
  }
  if (!z.is_array() || z.size() != static_cast<std::size_t>(inst.m)) {
    throw InvalidInstance("z must have length m");
  }

  inst.generator.resize(inst.m, inst.m);
  for (int i = 0; i < inst.m; ++i) {
    const auto& row = a[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(inst.m)) {
      throw InvalidInstance("each row of A must have length m");
    }
    for (int j = 0; j < inst.m; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) throw InvalidInstance("A entries must be numbers");
      inst.generator(i, j) = cell.get<double>();
    }
  }
  inst.point.resize(inst.m);
  for (int i = 0; i < inst.m; ++i) {
    const auto& cell = z[static_cast<std::size_t>(i)];
    if (!cell.is_number()) throw InvalidInstance("z entries must be numbers");
    inst.point(i) = cell.get<double>();
  }
  if (!inst.generator.allFinite() || !inst.point.allFinite()) {
    throw InvalidInstance("instance entries must be finite");
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw InvalidInstance("label must be a string");
    inst.label = doc["label"].get<std::string>();
  }
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open instance file: " + path);
  return read_instance(in);
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInstance("cannot open output file: " + path);
  write_instance(inst, out);
}

}  // namespace simproj
