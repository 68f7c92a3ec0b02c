#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/isometry.hpp"
#include "urysohn/metric_space.hpp"

namespace urysohn {

/// Two spaces glued along a common subspace A. `a_pairs` lists (label in m1,
/// label in m2) and must be a nonempty isometry between the two copies of A.
struct AmalgamSpec {
  FiniteMetricSpace m1;
  FiniteMetricSpace m2;
  std::vector<std::pair<Label, Label>> a_pairs;
};

/// How labels of the amalgam are chosen. Amalgamated points keep their m1
/// label. A label of m1 \ A that collides with one of m2 \ A gets
/// `left_suffix`; a label of m2 \ A colliding with any m1 label gets
/// `right_suffix`. With `always_suffix`, every non-amalgamated point is
/// suffixed.
struct NamingPolicy {
  std::string left_suffix = ".1";
  std::string right_suffix = ".2";
  bool always_suffix = false;
};

struct AmalgamResult {
  FiniteMetricSpace space;
  PartialIsometry h1;  // m1 -> space
  PartialIsometry h2;  // m2 -> space
};

/// Union of m1 and m2 with A amalgamated. Cross distances between
/// x in m1 \ A and y in m2 \ A are min over z in A of d1(x, z) + d2(z, y).
AmalgamResult amalgamated_union(const AmalgamSpec& spec, const NamingPolicy& naming = {});

/// Prescribed distances from a prospective new point to (part of) a base space.
struct KatetovFunction {
  FiniteMetricSpace base;
  std::map<Label, Rational> values;
};

/// Lexicographically first pair (x, y), x < y, violating
/// |f(x) - f(y)| <= d(x, y) <= f(x) + f(y).
std::optional<std::pair<Label, Label>> find_katetov_violation(const KatetovFunction& f);

/// Feasible values for f at an unassigned point. With no assigned values the
/// interval is (0, unbounded).
struct AdmissibleInterval {
  Rational lo;
  std::optional<Rational> hi;  // nullopt: unbounded
  bool lo_exclusive = false;

  [[nodiscard]] bool empty() const { return hi && (*hi < lo || (lo_exclusive && *hi == lo)); }
  [[nodiscard]] bool contains(const Rational& r) const {
    if (lo_exclusive ? r <= lo : r < lo) return false;
    return !hi || r <= *hi;
  }
  [[nodiscard]] std::string str() const;
};

AdmissibleInterval admissible_interval(const KatetovFunction& f, const Label& target);

/// Adds `new_label` at distance f(x) from every x of f.base. f must be total
/// and positive. Throws DuplicateLabel, UnknownLabel, MissingValue,
/// PositivityViolation or KatetovViolation (lexicographically first pair).
FiniteMetricSpace one_point_extension(const KatetovFunction& f, const Label& new_label);

}  // namespace urysohn
