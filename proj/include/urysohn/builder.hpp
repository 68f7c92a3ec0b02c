#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "urysohn/amalgam.hpp"
#include "urysohn/generator.hpp"
#include "urysohn/isometry.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

/// A grid-valued Katetov function on a subset, keyed for the realization index.
struct RealizationKey {
  std::vector<Label> subset;     // sorted
  std::vector<Rational> values;  // aligned with subset

  friend bool operator==(const RealizationKey&, const RealizationKey&) = default;
  friend bool operator<(const RealizationKey& a, const RealizationKey& b) {
    if (a.subset != b.subset) return a.subset < b.subset;
    return a.values < b.values;
  }
};

/// Finite stand-in for the Urysohn space: a growing space built in stages,
/// where every stage realizes all small grid-valued Katetov functions over the
/// previous stage.
struct Approximant {
  FiniteMetricSpace space;
  DistanceGrid grid;
  std::size_t stage = 0;
  /// stage_sizes[s] is the number of points present when stage s completed;
  /// points keep their insertion order, so the stage-s point set is a prefix.
  std::vector<std::size_t> stage_sizes;
  std::map<RealizationKey, Label> realizations;

  static Approximant from_space(FiniteMetricSpace space, DistanceGrid grid);
  static Approximant single_point(DistanceGrid grid, const Label& label = "p");
};

/// How a Katetov function given on S is extended to the whole space before the
/// realizing point is added.
enum class ExtensionRule {
  /// Points in label order each get the lowest value admissible against S and
  /// the points already assigned.
  GreedyMinimal,
  /// y -> min over x in S of f(x) + d(x, y).
  Maximal,
};

struct SaturateOptions {
  std::size_t arity_cap = 1;
  std::size_t stages = 1;
  std::size_t point_budget = 10000;
  ExtensionRule rule = ExtensionRule::Maximal;
};

struct SaturateResult {
  Approximant approximant;
  bool budget_exceeded = false;
};

/// Runs `options.stages` saturation rounds. On hitting the point budget the
/// partial approximant is returned with `budget_exceeded` set.
SaturateResult saturate(Approximant approximant, const SaturateOptions& options);

/// Runs the round that builds stage `stage` (>= 1) over the stage-(stage-1)
/// point set, without touching the stage counter when `stage` is already
/// complete. Re-running a completed round adds no points.
SaturateResult saturation_round(Approximant approximant, std::size_t stage, const SaturateOptions& options);

/// The extension of f (given on a subset) to every point of `space` under
/// `rule`, aligned with space's point order.
std::vector<Rational> katetov_total_extension(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset,
                                              const std::vector<Rational>& values, ExtensionRule rule);

enum class EmbedMode { Strict, Extending };

struct EmbedResult {
  PartialIsometry embedding;  // total on L
  Approximant approximant;
};

/// Extends `anchor` (a partial isometry from L into the approximant) to an
/// isometric embedding of all of L. Strict mode only uses existing points and
/// throws NotRealizable when impossible; extending mode glues L onto the
/// approximant along the anchor, so every point of L outside the anchor
/// becomes a new point (named by `naming`).
EmbedResult embed_via_injectivity(const Approximant& approximant, const FiniteMetricSpace& pattern,
                                  const PartialIsometry& anchor, EmbedMode mode, const NamingPolicy& naming = {});

struct BackAndForthOptions {
  /// Maximum number of translated copies of the approximant used to close the
  /// map when no automorphism of the current approximant extends it.
  std::size_t rounds = 64;
  /// Candidate checks allowed when searching inside the current approximant.
  std::size_t search_budget = 200000;
};

struct BackAndForthResult {
  PartialIsometry automorphism;  // total bijection of approximant.space
  Approximant approximant;
  std::size_t copies = 1;  // 1 when no points were added
};

/// Extends a partial isometry of the approximant to a bijective
/// self-isometry. First alternates forth and back inside the approximant
/// (self-match preferred, then label order, with backtracking); if that fails,
/// glues N translated copies of the approximant cyclically so that the shift
/// between copies is an isometry extending `map`. Throws BudgetExceeded when
/// more than `options.rounds` copies would be needed.
BackAndForthResult back_and_forth(const Approximant& approximant, const PartialIsometry& map,
                                  const BackAndForthOptions& options = {});

// Sidecar index: "# stage s", "# grid q B", "# stage-sizes ..." header lines,
// then one "S-labels | f-values | realizing-label" line per realization.
void write_index(std::ostream& out, const Approximant& approximant);
std::string serialize_index(const Approximant& approximant);
/// Attaches a parsed index to `space`. Missing header lines default to stage 0,
/// unit grid and a single stage covering every point.
Approximant parse_index(std::istream& in, FiniteMetricSpace space);

}  // namespace urysohn
