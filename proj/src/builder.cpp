#include "urysohn/builder.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "urysohn/io.hpp"

namespace urysohn {

Approximant Approximant::from_space(FiniteMetricSpace space, DistanceGrid grid) {
  Approximant a;
  a.stage_sizes = {space.size()};
  a.space = std::move(space);
  a.grid = grid;
  return a;
}

Approximant Approximant::single_point(DistanceGrid grid, const Label& label) {
  return from_space(FiniteMetricSpace::from_trusted({label}, {Rational(0)}), grid);
}

namespace {

// Row-per-point storage that grows without copying the whole table.
class GrowingSpace {
 public:
  explicit GrowingSpace(const FiniteMetricSpace& space) : labels_(space.labels()) {
    const std::size_t n = space.size();
    rows_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows_[i].reserve(n);
      for (std::size_t j = 0; j < n; ++j) rows_[i].push_back(space.dist(i, j));
      taken_.insert(labels_[i]);
    }
    lex_.resize(n);
    std::iota(lex_.begin(), lex_.end(), 0);
    std::sort(lex_.begin(), lex_.end(), [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });
  }

  std::size_t size() const { return labels_.size(); }
  const Rational& dist(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const Label& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::size_t>& lex_order() const { return lex_; }
  bool taken(const Label& l) const { return taken_.contains(l); }

  void add(const Label& label, std::vector<Rational> to_existing) {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) rows_[i].push_back(to_existing[i]);
    to_existing.push_back(Rational(0));
    rows_.push_back(std::move(to_existing));
    labels_.push_back(label);
    taken_.insert(label);
    const auto pos = std::lower_bound(lex_.begin(), lex_.end(), label,
                                      [&](std::size_t i, const Label& l) { return labels_[i] < l; });
    lex_.insert(pos, n);
  }

  FiniteMetricSpace to_space() const {
    const std::size_t n = size();
    std::vector<Rational> flat;
    flat.reserve(n * n);
    for (const auto& row : rows_) flat.insert(flat.end(), row.begin(), row.end());
    return FiniteMetricSpace::from_trusted(labels_, std::move(flat));
  }

 private:
  std::vector<Label> labels_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> lex_;
  std::unordered_set<Label> taken_;
};

template <class Space>
std::vector<Rational> total_extension(const Space& space, const std::vector<std::size_t>& lex,
                                      const std::vector<std::size_t>& subset, const std::vector<Rational>& values,
                                      ExtensionRule rule) {
  const std::size_t n = space.size();
  std::vector<Rational> out(n);
  std::vector<bool> assigned(n, false);
  std::vector<std::size_t> done;  // assigned points, S first
  for (std::size_t k = 0; k < subset.size(); ++k) {
    out[subset[k]] = values[k];
    assigned[subset[k]] = true;
    done.push_back(subset[k]);
  }
  for (std::size_t y : lex) {
    if (assigned[y]) continue;
    if (rule == ExtensionRule::Maximal) {
      Rational best = values[0] + space.dist(subset[0], y);
      for (std::size_t k = 1; k < subset.size(); ++k) best = min(best, values[k] + space.dist(subset[k], y));
      out[y] = std::move(best);
    } else {
      Rational lo(0);
      for (std::size_t z : done) lo = max(lo, abs(out[z] - space.dist(z, y)));
      // lo == 0 would mean y already realizes f on S.
      if (lo.is_zero()) throw std::logic_error("greedy extension reached a realizing point");
      out[y] = std::move(lo);
    }
    assigned[y] = true;
    done.push_back(y);
  }
  return out;
}

bool is_katetov(const GrowingSpace& space, const std::vector<std::size_t>& subset, const std::vector<Rational>& v) {
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      const Rational& d = space.dist(subset[a], subset[b]);
      if (abs(v[a] - v[b]) > d || d > v[a] + v[b]) return false;
    }
  }
  return true;
}

// Advances `idx` to the next k-combination of {0..m-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool next_tuple(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<Rational> katetov_total_extension(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset,
                                              const std::vector<Rational>& values, ExtensionRule rule) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, {});
  std::vector<std::size_t> lex(space.size());
  std::iota(lex.begin(), lex.end(), 0);
  std::sort(lex.begin(), lex.end(), [&](std::size_t a, std::size_t b) { return space.label(a) < space.label(b); });
  return total_extension(space, lex, subset, values, rule);
}

SaturateResult saturation_round(Approximant approximant, std::size_t stage, const SaturateOptions& options) {
  if (stage == 0 || stage > approximant.stage + 1 || stage > approximant.stage_sizes.size()) {
    throw Error(ErrorKind::MalformedInput, {std::to_string(stage)}, "saturation round out of sequence");
  }
  const std::size_t start_count = approximant.stage_sizes[stage - 1];
  const auto grid = approximant.grid.values();

  GrowingSpace work(approximant.space);
  std::vector<std::size_t> start;  // round-start points in label order
  for (std::size_t i : work.lex_order()) {
    if (i < start_count) start.push_back(i);
  }

  const std::string prefix = "u" + std::to_string(stage) + "_";
  std::size_t counter = 0;
  auto next_label = [&] {
    Label l;
    do {
      l = prefix + std::to_string(counter++);
    } while (work.taken(l));
    return l;
  };

  SaturateResult result;
  const std::size_t max_k = std::min(options.arity_cap, start.size());
  for (std::size_t k = 0; k <= max_k && !result.budget_exceeded; ++k) {
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      std::vector<std::size_t> subset;
      RealizationKey key;
      for (std::size_t c : comb) {
        subset.push_back(start[c]);
        key.subset.push_back(work.label(start[c]));
      }
      std::vector<std::size_t> digits(k, 0);
      do {
        std::vector<Rational> values;
        for (std::size_t d : digits) values.push_back(grid[d]);
        if (!is_katetov(work, subset, values)) continue;

        std::optional<std::size_t> realizer;
        for (std::size_t r : work.lex_order()) {
          bool ok = true;
          for (std::size_t s = 0; s < k && ok; ++s) ok = work.dist(r, subset[s]) == values[s];
          if (ok) {
            realizer = r;
            break;
          }
        }
        key.values = values;
        if (!realizer) {
          if (work.size() >= options.point_budget) {
            result.budget_exceeded = true;
            break;
          }
          const Label label = next_label();
          if (k == 0) {
            work.add(label, {});
          } else {
            work.add(label, total_extension(work, work.lex_order(), subset, values, options.rule));
          }
          realizer = work.size() - 1;
        }
        approximant.realizations.try_emplace(key, work.label(*realizer));
      } while (next_tuple(digits, grid.size()));
      if (result.budget_exceeded) break;
    } while (k > 0 && next_combination(comb, start.size()));
  }

  approximant.space = work.to_space();
  if (!result.budget_exceeded && stage == approximant.stage + 1) {
    approximant.stage = stage;
    approximant.stage_sizes.push_back(approximant.space.size());
  }
  result.approximant = std::move(approximant);
  return result;
}

SaturateResult saturate(Approximant approximant, const SaturateOptions& options) {
  if (options.arity_cap == 0) throw Error(ErrorKind::MalformedInput, {"0"}, "arity cap must be at least 1");
  SaturateResult result{std::move(approximant), false};
  for (std::size_t r = 0; r < options.stages; ++r) {
    result = saturation_round(std::move(result.approximant), result.approximant.stage + 1, options);
    if (result.budget_exceeded) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Embedding

namespace {

// Backtracking over candidate pools pre-filtered against the anchor.
class AnchoredSearch {
 public:
  AnchoredSearch(const FiniteMetricSpace& pattern, const FiniteMetricSpace& host, const PartialIsometry& anchor)
      : pattern_(pattern), host_(host) {
    std::vector<bool> anchored(pattern.size(), false), used(host.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    for (const auto& [l, a] : anchor.pairs) {
      fixed.emplace_back(pattern.index_of(l), host.index_of(a));
      anchored[fixed.back().first] = true;
      used[fixed.back().second] = true;
    }
    std::vector<std::size_t> host_lex(host.size());
    std::iota(host_lex.begin(), host_lex.end(), 0);
    std::sort(host_lex.begin(), host_lex.end(), [&](auto a, auto b) { return host.label(a) < host.label(b); });
    for (const auto& l : pattern.sorted_labels()) {
      const std::size_t p = pattern.index_of(l);
      if (anchored[p]) continue;
      free_.push_back(p);
      std::vector<std::size_t> pool;
      for (std::size_t h : host_lex) {
        if (used[h]) continue;
        bool ok = true;
        for (const auto& [q, g] : fixed) {
          if (pattern.dist(p, q) != host.dist(h, g)) {
            ok = false;
            break;
          }
        }
        if (ok) pool.push_back(h);
      }
      pools_.push_back(std::move(pool));
    }
    image_.assign(free_.size(), 0);
  }

  bool run() { return place(0); }
  const std::vector<std::size_t>& free_points() const { return free_; }
  const std::vector<std::size_t>& images() const { return image_; }

 private:
  bool place(std::size_t depth) {
    if (depth == free_.size()) return true;
    const std::size_t p = free_[depth];
    for (std::size_t h : pools_[depth]) {
      bool ok = true;
      for (std::size_t e = 0; e < depth && ok; ++e) {
        ok = image_[e] != h && pattern_.dist(p, free_[e]) == host_.dist(h, image_[e]);
      }
      if (!ok) continue;
      image_[depth] = h;
      if (place(depth + 1)) return true;
    }
    return false;
  }

  const FiniteMetricSpace& pattern_;
  const FiniteMetricSpace& host_;
  std::vector<std::size_t> free_;
  std::vector<std::vector<std::size_t>> pools_;
  std::vector<std::size_t> image_;
};

}  // namespace

EmbedResult embed_via_injectivity(const Approximant& approximant, const FiniteMetricSpace& pattern,
                                  const PartialIsometry& anchor, EmbedMode mode, const NamingPolicy& naming) {
  const auto& host = approximant.space;
  if (const auto check = is_isometric_embedding(pattern, host, anchor); !check) {
    throw Error(ErrorKind::NonIsometricAnchor, {check.first, check.second});
  }
  if (anchor.size() == pattern.size()) return {anchor, approximant};

  if (mode == EmbedMode::Strict) {
    if (anchor.empty() && host.empty()) throw Error(ErrorKind::EmptyAnchorNotSupported, {});
    AnchoredSearch search(pattern, host, anchor);
    if (!search.run()) {
      throw Error(ErrorKind::NotRealizable, {pattern.label(search.free_points().front())},
                  "no extension of the anchor inside the approximant");
    }
    EmbedResult result{anchor, approximant};
    for (std::size_t e = 0; e < search.free_points().size(); ++e) {
      result.embedding.pairs.emplace_back(pattern.label(search.free_points()[e]), host.label(search.images()[e]));
    }
    result.embedding = result.embedding.sorted();
    return result;
  }

  if (anchor.empty()) {
    if (!host.empty()) throw Error(ErrorKind::EmptyAnchorNotSupported, {}, "extending mode needs an anchor");
    EmbedResult result{{}, approximant};
    result.approximant.space = pattern;
    for (const auto& l : pattern.sorted_labels()) result.embedding.pairs.emplace_back(l, l);
    return result;
  }

  AmalgamSpec spec{host, pattern, {}};
  for (const auto& [l, a] : anchor.pairs) spec.a_pairs.emplace_back(a, l);
  auto glued = amalgamated_union(spec, naming);
  EmbedResult result{glued.h2.sorted(), approximant};
  result.approximant.space = std::move(glued.space);
  return result;
}

// ---------------------------------------------------------------------------
// Back and forth

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

class AutomorphismSearch {
 public:
  AutomorphismSearch(const FiniteMetricSpace& space, std::size_t budget) : space_(space), budget_(budget) {
    const std::size_t n = space.size();
    lex_.resize(n);
    std::iota(lex_.begin(), lex_.end(), 0);
    std::sort(lex_.begin(), lex_.end(), [&](auto a, auto b) { return space.label(a) < space.label(b); });
    // Points with different sorted distance rows can never be swapped.
    std::map<std::vector<Rational>, std::size_t> classes;
    profile_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row;
      row.reserve(n);
      for (std::size_t j = 0; j < n; ++j) row.push_back(space.dist(i, j));
      std::sort(row.begin(), row.end());
      profile_[i] = classes.try_emplace(std::move(row), classes.size()).first->second;
    }
    fwd_.assign(n, kNone);
    inv_.assign(n, kNone);
  }

  bool fix(std::size_t x, std::size_t y) {
    if (fwd_[x] != kNone || inv_[y] != kNone) return fwd_[x] == y && inv_[y] == x;
    if (profile_[x] != profile_[y]) return false;
    if (!compatible(x, y)) return false;
    assign(x, y);
    return true;
  }

  bool run() { return step(true); }
  bool exhausted() const { return checks_ > budget_; }
  const std::vector<std::size_t>& forward() const { return fwd_; }

 private:
  bool compatible(std::size_t x, std::size_t y) {
    ++checks_;
    for (std::size_t a : matched_) {
      if (space_.dist(x, a) != space_.dist(y, fwd_[a])) return false;
    }
    return true;
  }

  void assign(std::size_t x, std::size_t y) {
    fwd_[x] = y;
    inv_[y] = x;
    matched_.push_back(x);
  }

  void unassign() {
    const std::size_t x = matched_.back();
    matched_.pop_back();
    inv_[fwd_[x]] = kNone;
    fwd_[x] = kNone;
  }

  bool step(bool forth) {
    if (exhausted()) return false;
    if (matched_.size() == space_.size()) return true;
    const auto& side = forth ? fwd_ : inv_;
    const auto& other = forth ? inv_ : fwd_;
    const std::size_t u = *std::find_if(lex_.begin(), lex_.end(), [&](std::size_t i) { return side[i] == kNone; });

    auto attempt = [&](std::size_t v) {
      if (other[v] != kNone || profile_[u] != profile_[v]) return false;
      const std::size_t x = forth ? u : v;
      const std::size_t y = forth ? v : u;
      if (!compatible(x, y)) return false;
      assign(x, y);
      if (step(!forth)) return true;
      unassign();
      return false;
    };
    if (attempt(u)) return true;
    for (std::size_t v : lex_) {
      if (v != u && attempt(v)) return true;
      if (exhausted()) return false;
    }
    return false;
  }

  const FiniteMetricSpace& space_;
  std::size_t budget_;
  std::size_t checks_ = 0;
  std::vector<std::size_t> lex_, profile_, fwd_, inv_, matched_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// N copies of the space, copy k+1's point d glued to copy k's point map(d).
// Node (x, k) has id k * n + x. The shift (x, k) -> (x, k + 1) is well defined
// on glued classes and is an isometry of the shortest-path metric.
class CyclicClosure {
 public:
  CyclicClosure(const FiniteMetricSpace& space, const std::vector<std::pair<std::size_t, std::size_t>>& map,
                std::size_t copies)
      : space_(space), n_(space.size()), copies_(copies), uf_(space.size() * copies) {
    for (std::size_t k = 0; k < copies_; ++k) {
      for (const auto& [d, r] : map) uf_.unite(node(d, (k + 1) % copies_), node(r, k));
    }
    std::vector<bool> is_gate(n_, false);
    for (const auto& [d, r] : map) is_gate[d] = is_gate[r] = true;
    for (std::size_t x = 0; x < n_; ++x) {
      if (is_gate[x]) gates_.push_back(x);
    }
  }

  /// Copy 0 stays isometric to the original space.
  bool valid() {
    std::unordered_set<std::size_t> roots;
    for (std::size_t x = 0; x < n_; ++x) {
      if (!roots.insert(uf_.find(node(x, 0))).second) return false;
    }
    compute_gate_paths();
    for (std::size_t a = 0; a < gates_.size(); ++a) {
      for (std::size_t b = 0; b < gates_.size(); ++b) {
        if (gate_dist_[a][gate_node_.at(uf_.find(node(gates_[b], 0)))] != space_.dist(gates_[a], gates_[b])) {
          return false;
        }
      }
    }
    return true;
  }

  /// Builds the glued space; copy-0 points come first with their old labels.
  std::pair<FiniteMetricSpace, PartialIsometry> build() {
    const std::size_t total = n_ * copies_;
    std::vector<std::size_t> class_id(total, kNone);
    std::vector<std::size_t> rep;  // class -> representative node
    std::unordered_set<Label> taken(space_.labels().begin(), space_.labels().end());
    std::vector<Label> labels;
    std::vector<std::size_t> root_class(total, kNone);
    for (std::size_t k = 0; k < copies_; ++k) {
      for (std::size_t x = 0; x < n_; ++x) {
        const std::size_t v = node(x, k);
        const std::size_t root = uf_.find(v);
        if (root_class[root] == kNone) {
          root_class[root] = rep.size();
          rep.push_back(v);
          if (k == 0) {
            labels.push_back(space_.label(x));
          } else {
            Label l = space_.label(x) + "^" + std::to_string(k);
            while (taken.contains(l)) l += "'";
            taken.insert(l);
            labels.push_back(std::move(l));
          }
        }
        class_id[v] = root_class[root];
      }
    }
    const std::size_t m = rep.size();
    auto shift = [&](std::size_t v, std::size_t by) {
      return node(v % n_, (v / n_ + by) % copies_);
    };

    // from_copy0[x][c]: distance from (x, 0) to class c.
    std::vector<std::vector<Rational>> from_copy0(n_, std::vector<Rational>(m));
    std::vector<std::vector<bool>> seen(n_, std::vector<bool>(m, false));
    const std::size_t g = gates_.size();
    for (std::size_t x = 0; x < n_; ++x) {
      // via[j][b]: best cost from (x, 0) to gate b of copy j through some copy-0 gate.
      std::vector<std::vector<std::optional<Rational>>> via(copies_, std::vector<std::optional<Rational>>(g));
      for (std::size_t j = 0; j < copies_; ++j) {
        for (std::size_t b = 0; b < g; ++b) {
          const std::size_t target = gate_node_.at(uf_.find(node(gates_[b], j)));
          for (std::size_t a = 0; a < g; ++a) {
            Rational c = space_.dist(x, gates_[a]) + gate_dist_[a][target];
            if (!via[j][b] || c < *via[j][b]) via[j][b] = std::move(c);
          }
        }
      }
      for (std::size_t j = 0; j < copies_; ++j) {
        for (std::size_t y = 0; y < n_; ++y) {
          const std::size_t c = class_id[node(y, j)];
          std::optional<Rational> best;
          if (j == 0) best = space_.dist(x, y);
          for (std::size_t b = 0; b < g; ++b) {
            Rational cand = *via[j][b] + space_.dist(gates_[b], y);
            if (!best || cand < *best) best = std::move(cand);
          }
          if (!seen[x][c] || *best < from_copy0[x][c]) {
            from_copy0[x][c] = std::move(*best);
            seen[x][c] = true;
          }
        }
      }
    }

    std::vector<Rational> flat(m * m);
    for (std::size_t c1 = 0; c1 < m; ++c1) {
      const std::size_t v = rep[c1];
      const std::size_t x = v % n_;
      const std::size_t back = (copies_ - v / n_) % copies_;  // shift class c1 into copy 0
      for (std::size_t c2 = 0; c2 < m; ++c2) {
        if (c1 == c2) continue;
        flat[c1 * m + c2] = from_copy0[x][class_id[shift(rep[c2], back)]];
      }
    }
    PartialIsometry sigma;
    for (std::size_t c = 0; c < m; ++c) sigma.pairs.emplace_back(labels[c], labels[class_id[shift(rep[c], 1)]]);
    return {FiniteMetricSpace::from_trusted(std::move(labels), std::move(flat)), sigma.sorted()};
  }

 private:
  std::size_t node(std::size_t x, std::size_t k) const { return k * n_ + x; }

  // Shortest paths between glued gate classes, from every copy-0 gate.
  void compute_gate_paths() {
    std::vector<std::size_t> roots;
    for (std::size_t k = 0; k < copies_; ++k) {
      for (std::size_t x : gates_) {
        const std::size_t r = uf_.find(node(x, k));
        if (gate_node_.try_emplace(r, roots.size()).second) roots.push_back(r);
      }
    }
    const std::size_t v = roots.size();
    std::vector<std::vector<std::optional<Rational>>> w(v, std::vector<std::optional<Rational>>(v));
    for (std::size_t k = 0; k < copies_; ++k) {
      for (std::size_t a : gates_) {
        for (std::size_t b : gates_) {
          if (a == b) continue;
          const std::size_t u = gate_node_.at(uf_.find(node(a, k)));
          const std::size_t t = gate_node_.at(uf_.find(node(b, k)));
          if (u == t) continue;
          if (!w[u][t] || space_.dist(a, b) < *w[u][t]) w[u][t] = space_.dist(a, b);
        }
      }
    }
    gate_dist_.clear();
    for (std::size_t a : gates_) {
      const std::size_t src = gate_node_.at(uf_.find(node(a, 0)));
      std::vector<std::optional<Rational>> dist(v);
      std::vector<bool> done(v, false);
      dist[src] = Rational(0);
      for (std::size_t it = 0; it < v; ++it) {
        std::size_t best = kNone;
        for (std::size_t u = 0; u < v; ++u) {
          if (!done[u] && dist[u] && (best == kNone || *dist[u] < *dist[best])) best = u;
        }
        if (best == kNone) break;
        done[best] = true;
        for (std::size_t t = 0; t < v; ++t) {
          if (!w[best][t]) continue;
          Rational c = *dist[best] + *w[best][t];
          if (!dist[t] || c < *dist[t]) dist[t] = std::move(c);
        }
      }
      std::vector<Rational> row(v);
      for (std::size_t u = 0; u < v; ++u) {
        // Every gate class is reachable: copies are chained through the map.
        row[u] = dist[u] ? *dist[u] : Rational(-1);
      }
      gate_dist_.push_back(std::move(row));
    }
  }

  const FiniteMetricSpace& space_;
  std::size_t n_, copies_;
  UnionFind uf_;
  std::vector<std::size_t> gates_;
  std::map<std::size_t, std::size_t> gate_node_;
  std::vector<std::vector<Rational>> gate_dist_;  // [copy-0 gate][gate class]
};

}  // namespace

BackAndForthResult back_and_forth(const Approximant& approximant, const PartialIsometry& map,
                                  const BackAndForthOptions& options) {
  const auto& space = approximant.space;
  if (const auto check = is_isometric_embedding(space, space, map); !check) {
    throw Error(ErrorKind::NonIsometricAnchor, {check.first, check.second});
  }

  AutomorphismSearch search(space, options.search_budget);
  bool seeded = true;
  for (const auto& [x, y] : map.pairs) seeded = seeded && search.fix(space.index_of(x), space.index_of(y));
  if (seeded && search.run()) {
    BackAndForthResult result{{}, approximant, 1};
    for (std::size_t i = 0; i < space.size(); ++i) {
      result.automorphism.pairs.emplace_back(space.label(i), space.label(search.forward()[i]));
    }
    result.automorphism = result.automorphism.sorted();
    return result;
  }

  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (const auto& [x, y] : map.pairs) idx.emplace_back(space.index_of(x), space.index_of(y));
  for (std::size_t copies = 2; copies <= options.rounds; ++copies) {
    CyclicClosure closure(space, idx, copies);
    if (!closure.valid()) continue;
    auto [glued, sigma] = closure.build();
    BackAndForthResult result{std::move(sigma), approximant, copies};
    result.approximant.space = std::move(glued);
    return result;
  }
  throw Error(ErrorKind::BudgetExceeded, {std::to_string(options.rounds)},
              "partial isometry not closed within the allowed number of copies");
}

// ---------------------------------------------------------------------------
// Index persistence

void write_index(std::ostream& out, const Approximant& approximant) {
  out << "# stage " << approximant.stage << '\n';
  out << "# grid " << approximant.grid.denominator << ' ' << approximant.grid.max_numerator << '\n';
  out << "# stage-sizes";
  for (std::size_t s : approximant.stage_sizes) out << ' ' << s;
  out << '\n';
  for (const auto& [key, label] : approximant.realizations) {
    for (std::size_t i = 0; i < key.subset.size(); ++i) out << (i ? " " : "") << key.subset[i];
    out << (key.subset.empty() ? "| " : " | ");
    for (std::size_t i = 0; i < key.values.size(); ++i) out << (i ? " " : "") << key.values[i];
    out << (key.values.empty() ? "| " : " | ") << label << '\n';
  }
}

std::string serialize_index(const Approximant& approximant) {
  std::ostringstream out;
  write_index(out, approximant);
  return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::size_t to_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::MalformedInput, {s}, "expected a non-negative integer");
  }
  return std::stoul(s);
}

}  // namespace

Approximant parse_index(std::istream& in, FiniteMetricSpace space) {
  Approximant a = Approximant::from_space(std::move(space), DistanceGrid{});
  bool sizes_given = false;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "#") {
      if (tokens.size() == 3 && tokens[1] == "stage") {
        a.stage = to_size(tokens[2]);
      } else if (tokens.size() == 4 && tokens[1] == "grid") {
        a.grid = {static_cast<std::int64_t>(to_size(tokens[2])), static_cast<std::int64_t>(to_size(tokens[3]))};
      } else if (tokens.size() >= 2 && tokens[1] == "stage-sizes") {
        a.stage_sizes.clear();
        for (std::size_t i = 2; i < tokens.size(); ++i) a.stage_sizes.push_back(to_size(tokens[i]));
        sizes_given = true;
      }
      continue;
    }
    if (tokens[0].front() == '#') continue;
    const auto bar1 = line.find('|');
    const auto bar2 = bar1 == std::string::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string::npos) throw Error(ErrorKind::MalformedInput, {line}, "expected 'S | f | label'");
    RealizationKey key;
    key.subset = split_ws(line.substr(0, bar1));
    for (const auto& v : split_ws(line.substr(bar1 + 1, bar2 - bar1 - 1))) {
      try {
        key.values.push_back(Rational::parse(v));
      } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::MalformedInput, {v}, e.what());
      }
    }
    const auto realizer = split_ws(line.substr(bar2 + 1));
    if (realizer.size() != 1 || key.subset.size() != key.values.size()) {
      throw Error(ErrorKind::MalformedInput, {line}, "expected 'S | f | label'");
    }
    for (const auto& l : key.subset) (void)a.space.index_of(l);
    (void)a.space.index_of(realizer[0]);
    a.realizations.emplace(std::move(key), realizer[0]);
  }
  if (!sizes_given) a.stage_sizes.assign(a.stage + 1, a.space.size());
  if (a.stage_sizes.size() != a.stage + 1) {
    throw Error(ErrorKind::MalformedInput, {}, "stage-sizes must list one count per stage");
  }
  return a;
}

}  // namespace urysohn
