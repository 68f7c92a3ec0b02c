#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Partial map between the labels of two spaces, stored as (source, target)
/// pairs. The spaces themselves are passed alongside wherever it is checked.
struct PartialIsometry {
  std::vector<std::pair<Label, Label>> pairs;

  [[nodiscard]] std::size_t size() const { return pairs.size(); }
  [[nodiscard]] bool empty() const { return pairs.empty(); }
  [[nodiscard]] std::optional<Label> image_of(const Label& source) const;
  [[nodiscard]] std::optional<Label> preimage_of(const Label& target) const;
  [[nodiscard]] std::vector<Label> domain() const;
  [[nodiscard]] std::vector<Label> range() const;

  /// Pairs sorted by source label.
  [[nodiscard]] PartialIsometry sorted() const;

  friend bool operator==(const PartialIsometry&, const PartialIsometry&) = default;
};

struct EmbeddingCheck {
  enum class Failure { None, NotInjective, DistanceMismatch };

  Failure failure = Failure::None;
  /// Source labels of the first offending pair of pairs.
  Label first, second;
  std::optional<Rational> source_distance, target_distance;

  [[nodiscard]] bool ok() const { return failure == Failure::None; }
  explicit operator bool() const { return ok(); }
};

/// Checks that `map` is injective in both coordinates and preserves every
/// pairwise distance exactly. Throws Error(UnknownLabel) for labels missing
/// from either space.
EmbeddingCheck is_isometric_embedding(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
                                      const PartialIsometry& map);

/// Exhaustive backtracking enumeration of total isometric embeddings of
/// `pattern` into `host` agreeing with `fixed`. Pattern points are assigned in
/// lexicographic label order, host candidates tried in lexicographic order.
std::vector<PartialIsometry> find_embeddings(const FiniteMetricSpace& pattern, const FiniteMetricSpace& host,
                                             std::optional<std::size_t> limit = std::nullopt,
                                             const PartialIsometry& fixed = {});

}  // namespace urysohn
