#include "urysohn/isometry.hpp"

#include <algorithm>
#include <unordered_map>

namespace urysohn {

std::optional<Label> PartialIsometry::image_of(const Label& source) const {
  for (const auto& [s, t] : pairs) {
    if (s == source) return t;
  }
  return std::nullopt;
}

std::optional<Label> PartialIsometry::preimage_of(const Label& target) const {
  for (const auto& [s, t] : pairs) {
    if (t == target) return s;
  }
  return std::nullopt;
}

std::vector<Label> PartialIsometry::domain() const {
  std::vector<Label> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.first);
  return out;
}

std::vector<Label> PartialIsometry::range() const {
  std::vector<Label> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.second);
  return out;
}

PartialIsometry PartialIsometry::sorted() const {
  PartialIsometry out = *this;
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

EmbeddingCheck is_isometric_embedding(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
                                      const PartialIsometry& map) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  idx.reserve(map.size());
  for (const auto& [s, t] : map.pairs) idx.emplace_back(source.index_of(s), target.index_of(t));

  EmbeddingCheck check;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a].first == idx[b].first || idx[a].second == idx[b].second) {
        check.failure = EmbeddingCheck::Failure::NotInjective;
      } else if (source.dist(idx[a].first, idx[b].first) != target.dist(idx[a].second, idx[b].second)) {
        check.failure = EmbeddingCheck::Failure::DistanceMismatch;
        check.source_distance = source.dist(idx[a].first, idx[b].first);
        check.target_distance = target.dist(idx[a].second, idx[b].second);
      } else {
        continue;
      }
      check.first = map.pairs[a].first;
      check.second = map.pairs[b].first;
      return check;
    }
  }
  return check;
}

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const FiniteMetricSpace& pattern, const FiniteMetricSpace& host, std::optional<std::size_t> limit)
      : pattern_(pattern), host_(host), limit_(limit) {
    for (const auto& l : pattern.sorted_labels()) order_.push_back(pattern.index_of(l));
    for (const auto& l : host.sorted_labels()) candidates_.push_back(host.index_of(l));
    assigned_.assign(pattern.size(), kUnassigned);
    used_.assign(host.size(), false);
  }

  bool fix(std::size_t p, std::size_t h) {
    if (assigned_[p] != kUnassigned) return assigned_[p] == h;
    if (used_[h]) return false;
    for (std::size_t q = 0; q < pattern_.size(); ++q) {
      if (assigned_[q] != kUnassigned && pattern_.dist(p, q) != host_.dist(h, assigned_[q])) return false;
    }
    assigned_[p] = h;
    used_[h] = true;
    return true;
  }

  std::vector<PartialIsometry> run() {
    recurse(0);
    return std::move(found_);
  }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  bool done() const { return limit_ && found_.size() >= *limit_; }

  void recurse(std::size_t depth) {
    if (done()) return;
    if (depth == order_.size()) {
      PartialIsometry emb;
      for (std::size_t p : order_) emb.pairs.emplace_back(pattern_.label(p), host_.label(assigned_[p]));
      found_.push_back(std::move(emb));
      return;
    }
    const std::size_t p = order_[depth];
    if (assigned_[p] != kUnassigned) {
      recurse(depth + 1);
      return;
    }
    for (std::size_t h : candidates_) {
      if (!fix(p, h)) continue;
      recurse(depth + 1);
      assigned_[p] = kUnassigned;
      used_[h] = false;
      if (done()) return;
    }
  }

  const FiniteMetricSpace& pattern_;
  const FiniteMetricSpace& host_;
  std::optional<std::size_t> limit_;
  std::vector<std::size_t> order_, candidates_, assigned_;
  std::vector<bool> used_;
  std::vector<PartialIsometry> found_;
};

}  // namespace

std::vector<PartialIsometry> find_embeddings(const FiniteMetricSpace& pattern, const FiniteMetricSpace& host,
                                             std::optional<std::size_t> limit, const PartialIsometry& fixed) {
  if (limit && *limit == 0) return {};
  EmbeddingSearch search(pattern, host, limit);
  for (const auto& [p, h] : fixed.pairs) {
    if (!search.fix(pattern.index_of(p), host.index_of(h))) return {};
  }
  return search.run();
}

}  // namespace urysohn
