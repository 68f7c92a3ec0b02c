#include "urysohn/metric_space.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace urysohn {

namespace {

std::unordered_map<Label, std::size_t> build_index(const std::vector<Label>& labels) {
  std::unordered_map<Label, std::size_t> index;
  index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!is_well_formed_label(labels[i])) {
      throw Error(ErrorKind::MalformedInput, {labels[i]}, "malformed label");
    }
    if (!index.emplace(labels[i], i).second) throw Error(ErrorKind::DuplicateLabel, {labels[i]});
  }
  return index;
}

}  // namespace

bool is_well_formed_label(const Label& label) {
  if (label.empty() || label.front() == '#') return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return c == '|' || std::isspace(static_cast<unsigned char>(c));
  });
}

FiniteMetricSpace::FiniteMetricSpace() : data_(std::make_shared<const Data>()) {}

FiniteMetricSpace FiniteMetricSpace::from_trusted(std::vector<Label> labels, std::vector<Rational> flat) {
  if (flat.size() != labels.size() * labels.size()) {
    throw Error(ErrorKind::MalformedInput, {}, "distance table does not match label count");
  }
  auto data = std::make_shared<Data>();
  data->index = build_index(labels);
  data->labels = std::move(labels);
  data->dist = std::move(flat);
  return FiniteMetricSpace(std::move(data));
}

std::optional<std::size_t> FiniteMetricSpace::find(const Label& label) const {
  const auto it = data_->index.find(label);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteMetricSpace::index_of(const Label& label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorKind::UnknownLabel, {label});
}

std::vector<Label> FiniteMetricSpace::sorted_labels() const {
  std::vector<Label> out = labels();
  std::sort(out.begin(), out.end());
  return out;
}

FiniteMetricSpace FiniteMetricSpace::with_point(const Label& label, std::span<const Rational> to_existing) const {
  const std::size_t n = size();
  if (to_existing.size() != n) {
    throw Error(ErrorKind::MalformedInput, {label}, "extension needs one distance per existing point");
  }
  if (contains(label)) throw Error(ErrorKind::DuplicateLabel, {label});
  std::vector<Label> labels = data_->labels;
  labels.push_back(label);
  std::vector<Rational> flat((n + 1) * (n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) flat[i * (n + 1) + j] = dist(i, j);
    flat[i * (n + 1) + n] = to_existing[i];
    flat[n * (n + 1) + i] = to_existing[i];
  }
  return from_trusted(std::move(labels), std::move(flat));
}

DistanceRows FiniteMetricSpace::rows() const {
  const std::size_t n = size();
  DistanceRows out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = dist(i, j);
  }
  return out;
}

bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  return a.data_ == b.data_ || (a.labels() == b.labels() && a.data_->dist == b.data_->dist);
}

std::optional<MetricViolation> find_metric_violation(const std::vector<Label>& labels, const DistanceRows& dist) {
  const std::size_t n = labels.size();
  if (dist.size() != n) return MetricViolation{ErrorKind::MalformedInput, {}};
  for (const auto& row : dist) {
    if (row.size() != n) return MetricViolation{ErrorKind::MalformedInput, {}};
  }
  std::unordered_set<Label> seen;
  for (const auto& l : labels) {
    if (!is_well_formed_label(l)) return MetricViolation{ErrorKind::MalformedInput, {l}};
    if (!seen.insert(l).second) return MetricViolation{ErrorKind::DuplicateLabel, {l}};
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!dist[i][i].is_zero()) return MetricViolation{ErrorKind::ZeroDiagonalViolation, {labels[i]}};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) return MetricViolation{ErrorKind::SymmetryViolation, {labels[i], labels[j]}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j].sign() <= 0) return MetricViolation{ErrorKind::PositivityViolation, {labels[i], labels[j]}};
    }
  }
  // Symmetry holds here, so checking each unordered pair (i,k) against every
  // intermediate j covers all triples.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (dist[i][k] > dist[i][j] + dist[j][k]) {
          return MetricViolation{ErrorKind::TriangleViolation, {labels[i], labels[k], labels[j]}};
        }
      }
    }
  }
  return std::nullopt;
}

FiniteMetricSpace validate_metric(std::vector<Label> labels, const DistanceRows& dist) {
  if (auto v = find_metric_violation(labels, dist)) throw Error(v->kind, v->witness);
  const std::size_t n = labels.size();
  std::vector<Rational> flat;
  flat.reserve(n * n);
  for (const auto& row : dist) flat.insert(flat.end(), row.begin(), row.end());
  return FiniteMetricSpace::from_trusted(std::move(labels), std::move(flat));
}

FiniteMetricSpace restrict(const FiniteMetricSpace& space, std::span<const Label> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, {});
  std::vector<bool> keep(space.size(), false);
  for (const auto& l : subset) {
    const std::size_t i = space.index_of(l);
    if (keep[i]) throw Error(ErrorKind::DuplicateLabel, {l});
    keep[i] = true;
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (keep[i]) idx.push_back(i);
  }
  std::vector<Label> labels;
  std::vector<Rational> flat;
  flat.reserve(idx.size() * idx.size());
  for (std::size_t i : idx) {
    labels.push_back(space.label(i));
    for (std::size_t j : idx) flat.push_back(space.dist(i, j));
  }
  return FiniteMetricSpace::from_trusted(std::move(labels), std::move(flat));
}

}  // namespace urysohn
