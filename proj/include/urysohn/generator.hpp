#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "urysohn/amalgam.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Finite distance grid {k/q : 1 <= k <= max_numerator}.
struct DistanceGrid {
  std::int64_t denominator = 1;
  std::int64_t max_numerator = 1;

  /// Ascending grid values. Throws MalformedInput for non-positive parameters.
  [[nodiscard]] std::vector<Rational> values() const;
  [[nodiscard]] bool contains(const Rational& r) const;
};

/// Portable seeded randomness. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; bounded draws use rejection sampling
/// on the raw 64-bit output rather than std::uniform_int_distribution, whose
/// algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Zero-padded labels p0..p{n-1}, so that label order matches index order.
std::vector<Label> point_labels(std::size_t n, const std::string& prefix = "p");

/// Adds `label` to `base`, sampling its distance to each existing point (in
/// label order) uniformly from the grid values inside the current admissible
/// interval. Throws GridExhausted(label, point, interval) when none fits.
FiniteMetricSpace random_extension(const FiniteMetricSpace& base, const DistanceGrid& grid, const Label& label,
                                   Rng& rng);

/// n - 1 successive random one-point extensions of a single point.
FiniteMetricSpace random_space(std::size_t n, const DistanceGrid& grid, std::uint64_t seed);

/// All metrics on n points (labels from point_labels) with grid distances, in
/// lexicographic order of the upper-triangle entries, truncated at `limit`.
std::vector<FiniteMetricSpace> enumerate_spaces(std::size_t n, const DistanceGrid& grid,
                                                std::optional<std::size_t> limit = std::nullopt);

}  // namespace urysohn
