#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/generator.hpp"
#include "urysohn/isometry.hpp"
#include "urysohn/metric_space.hpp"

// Finite replay of the discrete approximation construction: for families
// K_1..K_m of an ambient space and a positive displacement h, build sets L_n
// and maps f_n : K_n -> L_n with d(x, f_n(x)) = h(x) and L_n kept at distance
// >= h(x) from every earlier L_i.
namespace urysohn::dap {

using Displacement = std::map<Label, Rational>;

struct DapInstance {
  FiniteMetricSpace ambient;
  std::vector<std::vector<Label>> families;
  Displacement h;  // defined and positive on every family member
};

/// K x {0} together with the graph of h over K, metrized by
/// rho((x,t),(y,s)) = d(x,y) + |s - t|. Base points keep their K label; the
/// graph point over x is labeled x + graph_suffix.
struct GraphSpace {
  FiniteMetricSpace space;
  std::vector<Label> base_part;
  std::vector<Label> graph_part;  // aligned with base_part
};

GraphSpace graph_space(const FiniteMetricSpace& family, const Displacement& h, const std::string& graph_suffix = "'");

struct DapStep {
  std::size_t n = 0;                // 1-based
  std::vector<Label> family;        // K_n
  FiniteMetricSpace amalgam;        // P_n = (earlier L_i u K_n) glued with N_n along K_n
  std::vector<Label> image;         // L_n, labels in the grown ambient
  PartialIsometry map;              // f_n : K_n -> L_n
};

struct DapTrace {
  FiniteMetricSpace initial;      // ambient before the construction
  FiniteMetricSpace final_space;  // ambient after all steps
  Displacement h;
  std::vector<DapStep> steps;
};

/// Throws MalformedInput / UnknownLabel / EmptySubset / MissingValue /
/// NonPositiveH on an invalid instance.
void validate_instance(const DapInstance& instance);

DapTrace dap_construct(const DapInstance& instance);

struct DapCheck {
  std::string id;  // V1..V4, DISJOINT
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<Rational> lhs, rhs;
  std::string relation = "=";
  bool pass = true;
};

struct DapReport {
  std::vector<DapCheck> checks;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::size_t count(const std::string& id, bool pass) const;
};

/// Checks, exactly:
///   V1  d(x, f_n(x)) = h(x)
///   V2  d(f_n(x), y) = d(x, y) + h(x) for y in earlier L_i
///   V3  min distance between different L_n >= min h
///   V4  distances among the initial ambient points are unchanged
/// plus pairwise disjointness of the L_n.
DapReport dap_verify(const DapTrace& trace);

/// "CHECK V2 n=2 x=a y=b@L1 lhs=5/2 rhs=5/2 PASS" lines, then "RESULT PASS|FAIL".
void write_report_lines(std::ostream& out, const DapReport& report);
void write_report_text(std::ostream& out, const DapReport& report);

struct RandomInstanceOptions {
  std::size_t max_points = 12;
  std::size_t max_families = 4;
  DistanceGrid grid{1, 4};
};

/// Random ambient (via random_space), 1..max_families nonempty families and a
/// grid-valued h, all drawn from `seed`.
DapInstance random_instance(std::uint64_t seed, const RandomInstanceOptions& options = {});

}  // namespace urysohn::dap
