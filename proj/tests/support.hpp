#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urysohn/amalgam.hpp"
#include "urysohn/error.hpp"
#include "urysohn/generator.hpp"
#include "urysohn/metric_space.hpp"
#include "urysohn/rational.hpp"

namespace testing_support {

using urysohn::DistanceRows;
using urysohn::FiniteMetricSpace;
using urysohn::Label;
using urysohn::Rational;

inline DistanceRows int_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  DistanceRows out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

inline FiniteMetricSpace make_space(std::vector<Label> labels, const std::vector<std::vector<std::int64_t>>& rows) {
  return urysohn::validate_metric(std::move(labels), int_rows(rows));
}

// Path a - b - c with unit steps.
inline FiniteMetricSpace path3() { return make_space({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}); }

inline FiniteMetricSpace equilateral(const std::vector<Label>& labels, std::int64_t side = 1) {
  std::vector<std::vector<std::int64_t>> rows(labels.size(), std::vector<std::int64_t>(labels.size(), side));
  for (std::size_t i = 0; i < labels.size(); ++i) rows[i][i] = 0;
  return make_space(labels, rows);
}

// Independent triple loop over the metric axioms.
inline bool oracle_is_metric(const DistanceRows& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n || !d[i][i].is_zero()) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] != d[j][i]) return false;
      if (i != j && d[i][j].sign() <= 0) return false;
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i][k] > d[i][j] + d[j][k]) return false;
      }
    }
  }
  return true;
}

inline bool oracle_is_metric(const FiniteMetricSpace& m) { return oracle_is_metric(m.rows()); }

inline Rational random_rational(urysohn::Rng& rng, std::int64_t max_num = 40, std::int64_t max_den = 12) {
  const auto num = static_cast<std::int64_t>(rng.below(2 * max_num + 1)) - max_num;
  const auto den = static_cast<std::int64_t>(rng.below(max_den)) + 1;
  return Rational(num, den);
}

inline FiniteMetricSpace relabel(const FiniteMetricSpace& m, const std::vector<Label>& labels) {
  std::vector<Rational> flat;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) flat.push_back(m.dist(i, j));
  }
  return FiniteMetricSpace::from_trusted(labels, std::move(flat));
}

// M1 random; A a random nonempty subset of M1; M2 grown from a copy of A by
// random one-point extensions. A is renamed inside M2 half of the time, and
// M2's own points reuse M1-style labels so collisions are common.
inline urysohn::AmalgamSpec random_amalgam_spec(urysohn::Rng& rng, std::size_t max_side = 8,
                                                std::int64_t max_q = 4, std::int64_t max_b = 8) {
  const urysohn::DistanceGrid grid{1 + static_cast<std::int64_t>(rng.below(max_q)),
                                   1 + static_cast<std::int64_t>(rng.below(max_b))};
  const std::size_t n1 = 1 + rng.below(max_side);
  const auto m1 = urysohn::random_space(n1, grid, rng.next());
  std::vector<Label> a;
  for (const auto& l : m1.labels()) {
    if (rng.coin()) a.push_back(l);
  }
  if (a.empty()) a.push_back(m1.label(rng.below(n1)));
  const bool rename = rng.coin();
  std::vector<Label> a2;
  for (const auto& l : a) a2.push_back(rename ? "q" + l : l);
  auto m2 = relabel(urysohn::restrict(m1, a), a2);
  const std::size_t extra = rng.below(max_side - a.size() + 1);
  const auto fresh = urysohn::point_labels(extra + 8, "p");
  std::size_t next = 0;
  for (std::size_t i = 0; i < extra; ++i) {
    Label l;
    do {
      l = fresh[next++];
    } while (m2.contains(l));
    m2 = urysohn::random_extension(m2, grid, l, rng);
  }
  urysohn::AmalgamSpec spec{m1, m2, {}};
  for (std::size_t i = 0; i < a.size(); ++i) spec.a_pairs.emplace_back(a[i], a2[i]);
  return spec;
}

// Cross distance straight from the gluing formula.
inline Rational oracle_cross(const urysohn::AmalgamSpec& spec, const Label& x, const Label& y) {
  std::optional<Rational> best;
  for (const auto& [z1, z2] : spec.a_pairs) {
    Rational v = spec.m1.dist(x, z1) + spec.m2.dist(z2, y);
    if (!best || v < *best) best = v;
  }
  return *best;
}

template <class F>
urysohn::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const urysohn::Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected an urysohn::Error");
}

}  // namespace testing_support
