#include "urysohn/amalgam.hpp"

#include <unordered_set>

namespace urysohn {

namespace {

Label fresh(Label candidate, const std::string& suffix, const std::unordered_set<Label>& taken) {
  while (taken.contains(candidate)) candidate += suffix;
  return candidate;
}

}  // namespace

AmalgamResult amalgamated_union(const AmalgamSpec& spec, const NamingPolicy& naming) {
  const auto& m1 = spec.m1;
  const auto& m2 = spec.m2;
  if (spec.a_pairs.empty()) throw Error(ErrorKind::EmptyAmalgam, {});

  const PartialIsometry f{spec.a_pairs};
  if (const auto check = is_isometric_embedding(m1, m2, f); !check) {
    throw Error(ErrorKind::NonIsometricAmalgamPairs, {check.first, check.second});
  }

  std::vector<std::size_t> a1, a2;  // indices of A inside m1, m2
  std::vector<long> m2_to_a(m2.size(), -1);
  for (const auto& [l1, l2] : spec.a_pairs) {
    a1.push_back(m1.index_of(l1));
    a2.push_back(m2.index_of(l2));
    m2_to_a[a2.back()] = static_cast<long>(a1.size() - 1);
  }
  std::vector<bool> in_a1(m1.size(), false);
  for (std::size_t i : a1) in_a1[i] = true;

  std::vector<std::size_t> rest2;
  for (std::size_t j = 0; j < m2.size(); ++j) {
    if (m2_to_a[j] < 0) rest2.push_back(j);
  }

  // Labels. Every original label stays reserved so renamed points never take one.
  std::unordered_set<Label> rest2_labels;
  for (std::size_t j : rest2) rest2_labels.insert(m2.label(j));
  std::unordered_set<Label> taken(m1.labels().begin(), m1.labels().end());
  taken.insert(rest2_labels.begin(), rest2_labels.end());
  std::vector<Label> labels;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    Label l = m1.label(i);
    if (!in_a1[i] && (naming.always_suffix || rest2_labels.contains(l))) {
      l = fresh(l + naming.left_suffix, naming.left_suffix, taken);
      taken.insert(l);
    }
    labels.push_back(std::move(l));
  }
  for (std::size_t j : rest2) {
    Label l = m2.label(j);
    if (naming.always_suffix || m1.contains(l)) {
      l = fresh(l + naming.right_suffix, naming.right_suffix, taken);
      taken.insert(l);
    }
    labels.push_back(std::move(l));
  }

  const std::size_t n1 = m1.size();
  const std::size_t n = n1 + rest2.size();
  std::vector<std::size_t> pos2(m2.size());  // m2 index -> result index
  for (std::size_t j = 0; j < m2.size(); ++j) {
    if (m2_to_a[j] >= 0) pos2[j] = a1[static_cast<std::size_t>(m2_to_a[j])];
  }
  for (std::size_t k = 0; k < rest2.size(); ++k) pos2[rest2[k]] = n1 + k;

  std::vector<Rational> flat(n * n);
  auto set = [&](std::size_t i, std::size_t j, const Rational& v) {
    flat[i * n + j] = v;
    flat[j * n + i] = v;
  };
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = i + 1; j < n1; ++j) set(i, j, m1.dist(i, j));
  }
  for (std::size_t j = 0; j < m2.size(); ++j) {
    for (std::size_t k = j + 1; k < m2.size(); ++k) {
      if (m2_to_a[j] >= 0 && m2_to_a[k] >= 0) continue;  // already copied from m1
      set(pos2[j], pos2[k], m2.dist(j, k));
    }
  }
  for (std::size_t x = 0; x < n1; ++x) {
    if (in_a1[x]) continue;
    for (std::size_t y : rest2) {
      Rational best = m1.dist(x, a1[0]) + m2.dist(a2[0], y);
      for (std::size_t z = 1; z < a1.size(); ++z) {
        Rational via = m1.dist(x, a1[z]) + m2.dist(a2[z], y);
        if (via < best) best = std::move(via);
      }
      set(x, pos2[y], best);
    }
  }

  AmalgamResult result{FiniteMetricSpace::from_trusted(labels, std::move(flat)), {}, {}};
  for (std::size_t i = 0; i < n1; ++i) result.h1.pairs.emplace_back(m1.label(i), labels[i]);
  for (std::size_t j = 0; j < m2.size(); ++j) result.h2.pairs.emplace_back(m2.label(j), labels[pos2[j]]);
  return result;
}

std::optional<std::pair<Label, Label>> find_katetov_violation(const KatetovFunction& f) {
  // std::map iterates in label order, so the first hit is the lexicographic one.
  for (auto x = f.values.begin(); x != f.values.end(); ++x) {
    for (auto y = std::next(x); y != f.values.end(); ++y) {
      const Rational& d = f.base.dist(x->first, y->first);
      if (abs(x->second - y->second) > d || d > x->second + y->second) return std::make_pair(x->first, y->first);
    }
  }
  return std::nullopt;
}

std::string AdmissibleInterval::str() const {
  return std::string(lo_exclusive ? "(" : "[") + lo.str() + ", " + (hi ? hi->str() + "]" : "inf)");
}

AdmissibleInterval admissible_interval(const KatetovFunction& f, const Label& target) {
  const std::size_t t = f.base.index_of(target);
  if (f.values.empty()) return {Rational(0), std::nullopt, true};
  AdmissibleInterval out{Rational(0), std::nullopt, false};
  for (const auto& [x, fx] : f.values) {
    const Rational& d = f.base.dist(f.base.index_of(x), t);
    out.lo = max(out.lo, abs(fx - d));
    Rational upper = fx + d;
    if (!out.hi || upper < *out.hi) out.hi = std::move(upper);
  }
  return out;
}

FiniteMetricSpace one_point_extension(const KatetovFunction& f, const Label& new_label) {
  const auto& base = f.base;
  if (base.contains(new_label)) throw Error(ErrorKind::DuplicateLabel, {new_label});
  if (!is_well_formed_label(new_label)) throw Error(ErrorKind::MalformedInput, {new_label}, "malformed label");
  for (const auto& [x, v] : f.values) {
    if (!base.contains(x)) throw Error(ErrorKind::UnknownLabel, {x});
  }
  for (const auto& x : base.sorted_labels()) {
    const auto it = f.values.find(x);
    if (it == f.values.end()) throw Error(ErrorKind::MissingValue, {x});
    if (it->second.sign() <= 0) throw Error(ErrorKind::PositivityViolation, {new_label, x});
  }
  if (auto v = find_katetov_violation(f)) throw Error(ErrorKind::KatetovViolation, {v->first, v->second});

  std::vector<Rational> to_existing;
  to_existing.reserve(base.size());
  for (const auto& l : base.labels()) to_existing.push_back(f.values.at(l));
  return base.with_point(new_label, to_existing);
}

}  // namespace urysohn
