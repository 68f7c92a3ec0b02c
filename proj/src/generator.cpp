#include "urysohn/generator.hpp"

#include <algorithm>
#include <limits>

namespace urysohn {

std::vector<Rational> DistanceGrid::values() const {
  if (denominator <= 0 || max_numerator <= 0) {
    throw Error(ErrorKind::MalformedInput, {std::to_string(denominator), std::to_string(max_numerator)},
                "grid parameters must be positive");
  }
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(max_numerator));
  for (std::int64_t k = 1; k <= max_numerator; ++k) out.emplace_back(k, denominator);
  return out;
}

bool DistanceGrid::contains(const Rational& r) const {
  const auto v = values();
  return std::binary_search(v.begin(), v.end(), r);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::vector<Label> point_labels(std::size_t n, const std::string& prefix) {
  const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  std::vector<Label> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    out.push_back(prefix + std::string(width - digits.size(), '0') + digits);
  }
  return out;
}

FiniteMetricSpace random_extension(const FiniteMetricSpace& base, const DistanceGrid& grid, const Label& label,
                                   Rng& rng) {
  const auto grid_values = grid.values();
  KatetovFunction f{base, {}};
  for (const auto& x : base.sorted_labels()) {
    const auto interval = admissible_interval(f, x);
    std::vector<const Rational*> feasible;
    for (const auto& g : grid_values) {
      if (interval.contains(g)) feasible.push_back(&g);
    }
    if (feasible.empty()) throw Error(ErrorKind::GridExhausted, {label, x, interval.str()});
    f.values.emplace(x, *feasible[rng.below(feasible.size())]);
  }
  return one_point_extension(f, label);
}

FiniteMetricSpace random_space(std::size_t n, const DistanceGrid& grid, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::MalformedInput, {"0"}, "random_space needs at least one point");
  const auto labels = point_labels(n);
  Rng rng(seed);
  auto space = FiniteMetricSpace::from_trusted({labels[0]}, {Rational(0)});
  for (std::size_t i = 1; i < n; ++i) space = random_extension(space, grid, labels[i], rng);
  return space;
}

namespace {

class SpaceEnumerator {
 public:
  SpaceEnumerator(std::size_t n, const DistanceGrid& grid, std::optional<std::size_t> limit)
      : n_(n), grid_(grid.values()), limit_(limit), labels_(point_labels(n)), dist_(n * n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) slots_.emplace_back(i, j);
    }
  }

  std::vector<FiniteMetricSpace> run() {
    if (limit_ && *limit_ == 0) return {};
    recurse(0);
    return std::move(out_);
  }

 private:
  bool full() const { return limit_ && out_.size() >= *limit_; }

  // Triangle checks for every triple whose three sides are assigned once
  // slot (i, j) is set; slots are filled row by row.
  bool consistent(std::size_t i, std::size_t j) const {
    auto known = [&](std::size_t a, std::size_t b) {
      const auto lo = std::min(a, b), hi = std::max(a, b);
      return lo < i || (lo == i && hi <= j);
    };
    auto d = [&](std::size_t a, std::size_t b) -> const Rational& { return dist_[a * n_ + b]; };
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == i || k == j || !known(i, k) || !known(j, k)) continue;
      if (d(i, j) > d(i, k) + d(k, j) || d(i, k) > d(i, j) + d(j, k) || d(j, k) > d(j, i) + d(i, k)) return false;
    }
    return true;
  }

  void recurse(std::size_t slot) {
    if (full()) return;
    if (slot == slots_.size()) {
      out_.push_back(FiniteMetricSpace::from_trusted(labels_, dist_));
      return;
    }
    const auto [i, j] = slots_[slot];
    for (const auto& g : grid_) {
      dist_[i * n_ + j] = g;
      dist_[j * n_ + i] = g;
      if (consistent(i, j)) recurse(slot + 1);
      if (full()) return;
    }
  }

  std::size_t n_;
  std::vector<Rational> grid_;
  std::optional<std::size_t> limit_;
  std::vector<Label> labels_;
  std::vector<Rational> dist_;
  std::vector<std::pair<std::size_t, std::size_t>> slots_;
  std::vector<FiniteMetricSpace> out_;
};

}  // namespace

std::vector<FiniteMetricSpace> enumerate_spaces(std::size_t n, const DistanceGrid& grid,
                                                std::optional<std::size_t> limit) {
  if (n == 0) return {FiniteMetricSpace()};
  return SpaceEnumerator(n, grid, limit).run();
}

}  // namespace urysohn
