#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "urysohn/error.hpp"
#include "urysohn/rational.hpp"

namespace urysohn {

using Label = std::string;
using DistanceRows = std::vector<std::vector<Rational>>;

/// First failed metric axiom, with the labels that witness it.
struct MetricViolation {
  ErrorKind kind;
  std::vector<Label> witness;
};

/// Finite metric space over labeled points with exact rational distances.
///
/// Matrix order follows label order. Values are immutable; copies share the
/// underlying storage. Spaces obtained through validate_metric() satisfy the
/// metric axioms; library constructions use from_trusted() and are checked by
/// the test suites instead of on every build.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace();

  /// Builds without checking metric axioms. Label shape (distinct, well formed)
  /// and matrix shape are still enforced.
  static FiniteMetricSpace from_trusted(std::vector<Label> labels, std::vector<Rational> flat);

  [[nodiscard]] std::size_t size() const { return data_->labels.size(); }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] const std::vector<Label>& labels() const { return data_->labels; }
  [[nodiscard]] const Label& label(std::size_t i) const { return data_->labels[i]; }

  [[nodiscard]] std::optional<std::size_t> find(const Label& label) const;
  [[nodiscard]] bool contains(const Label& label) const { return find(label).has_value(); }
  /// Throws Error(UnknownLabel).
  [[nodiscard]] std::size_t index_of(const Label& label) const;

  [[nodiscard]] const Rational& dist(std::size_t i, std::size_t j) const {
    return data_->dist[i * size() + j];
  }
  [[nodiscard]] const Rational& dist(const Label& a, const Label& b) const {
    return dist(index_of(a), index_of(b));
  }

  /// Labels sorted lexicographically (enumeration order used across the library).
  [[nodiscard]] std::vector<Label> sorted_labels() const;

  /// New space with one extra point; `to_existing[i]` is its distance to point i.
  [[nodiscard]] FiniteMetricSpace with_point(const Label& label, std::span<const Rational> to_existing) const;

  [[nodiscard]] DistanceRows rows() const;

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

 private:
  struct Data {
    std::vector<Label> labels;
    std::unordered_map<Label, std::size_t> index;
    std::vector<Rational> dist;
  };
  explicit FiniteMetricSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// True when a label can appear in the text formats: non-empty, no whitespace,
/// no '#' prefix, no '|'.
[[nodiscard]] bool is_well_formed_label(const Label& label);

/// Returns the first violated axiom in the order: shape, zero diagonal,
/// symmetry, positivity, triangle inequality.
[[nodiscard]] std::optional<MetricViolation> find_metric_violation(const std::vector<Label>& labels,
                                                                   const DistanceRows& dist);

/// Throws Error carrying the first violated axiom and its witnesses.
FiniteMetricSpace validate_metric(std::vector<Label> labels, const DistanceRows& dist);

/// Induced subspace on `subset`, keeping the parent's point order.
FiniteMetricSpace restrict(const FiniteMetricSpace& space, std::span<const Label> subset);

}  // namespace urysohn
