#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "simproj/errors.hpp"

namespace simproj {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// 0/1 mask over vector components: bit i is 1 exactly when the component is
/// strictly positive. Zero always maps to bit 0; applied to x these are the
/// nonzero positions of x⁺.
class SignPattern {
 public:
  SignPattern() = default;

  explicit SignPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
      if (b > 1) throw BadParam("sign pattern bits must be 0 or 1");
    }
  }

  /// Pattern at position `index` in lexicographic order over {0,1}^m
  /// (bit 0 is the most significant digit of the index).
  static SignPattern from_index(Index m, std::uint64_t index) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) {
      bits[static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>((index >> (m - 1 - j)) & 1u);
    }
    return SignPattern(std::move(bits));
  }

  Index size() const { return static_cast<Index>(bits_.size()); }

  int operator[](Index i) const { return bits_[static_cast<std::size_t>(i)]; }

  std::uint64_t to_index() const {
    std::uint64_t idx = 0;
    for (auto b : bits_) idx = (idx << 1) | b;
    return idx;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
  friend auto operator<=>(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

template <typename Derived>
SignPattern sign_pattern(const Eigen::MatrixBase<Derived>& x) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) {
    bits[static_cast<std::size_t>(i)] = x(i) > 0 ? 1 : 0;
  }
  return SignPattern(std::move(bits));
}

}  // namespace simproj
