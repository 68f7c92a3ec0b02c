#include "urysohn/dap.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "urysohn/amalgam.hpp"
#include "urysohn/builder.hpp"

namespace urysohn::dap {

GraphSpace graph_space(const FiniteMetricSpace& family, const Displacement& h, const std::string& graph_suffix) {
  const std::size_t k = family.size();
  std::vector<Rational> height(k);
  GraphSpace out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& x = family.label(i);
    const auto it = h.find(x);
    if (it == h.end()) throw Error(ErrorKind::MissingValue, {x});
    if (it->second.sign() <= 0) throw Error(ErrorKind::NonPositiveH, {x, it->second.str()});
    height[i] = it->second;
    out.base_part.push_back(x);
    out.graph_part.push_back(x + graph_suffix);
  }
  std::vector<Label> labels = out.base_part;
  labels.insert(labels.end(), out.graph_part.begin(), out.graph_part.end());

  // Point p < k is (x_p, 0); point p >= k is (x_{p-k}, h(x_{p-k})).
  auto level = [&](std::size_t p) { return p < k ? Rational(0) : height[p - k]; };
  const std::size_t n = 2 * k;
  std::vector<Rational> flat(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      flat[p * n + q] = family.dist(p % k, q % k) + abs(level(p) - level(q));
    }
  }
  out.space = FiniteMetricSpace::from_trusted(std::move(labels), std::move(flat));
  return out;
}

void validate_instance(const DapInstance& instance) {
  if (instance.families.empty()) throw Error(ErrorKind::EmptySubset, {}, "no families");
  for (std::size_t i = 0; i < instance.families.size(); ++i) {
    const auto& family = instance.families[i];
    if (family.empty()) throw Error(ErrorKind::EmptySubset, {std::to_string(i + 1)}, "empty family");
    std::set<Label> seen;
    for (const auto& x : family) {
      (void)instance.ambient.index_of(x);
      if (!seen.insert(x).second) throw Error(ErrorKind::DuplicateLabel, {x});
      const auto it = instance.h.find(x);
      if (it == instance.h.end()) throw Error(ErrorKind::MissingValue, {x});
      if (it->second.sign() <= 0) throw Error(ErrorKind::NonPositiveH, {x, it->second.str()});
    }
  }
}

DapTrace dap_construct(const DapInstance& instance) {
  validate_instance(instance);
  DapTrace trace{instance.ambient, instance.ambient, instance.h, {}};
  Approximant ambient = Approximant::from_space(instance.ambient, DistanceGrid{});
  std::vector<Label> earlier;  // union of L_i so far

  for (std::size_t n = 1; n <= instance.families.size(); ++n) {
    DapStep step;
    step.n = n;
    step.family = instance.families[n - 1];

    const auto graph = graph_space(restrict(ambient.space, step.family), instance.h, "@L" + std::to_string(n));
    std::vector<Label> fixed = earlier;
    fixed.insert(fixed.end(), step.family.begin(), step.family.end());

    AmalgamSpec spec{restrict(ambient.space, fixed), graph.space, {}};
    for (const auto& x : step.family) spec.a_pairs.emplace_back(x, x);
    const auto glued = amalgamated_union(spec);
    step.amalgam = glued.space;

    PartialIsometry identity;
    for (const auto& l : fixed) identity.pairs.emplace_back(l, l);
    auto realized = embed_via_injectivity(ambient, glued.space, identity, EmbedMode::Extending);

    for (std::size_t i = 0; i < graph.base_part.size(); ++i) {
      const Label in_p = *glued.h2.image_of(graph.graph_part[i]);
      const Label in_ambient = *realized.embedding.image_of(in_p);
      step.image.push_back(in_ambient);
      step.map.pairs.emplace_back(graph.base_part[i], in_ambient);
    }
    ambient = std::move(realized.approximant);
    earlier.insert(earlier.end(), step.image.begin(), step.image.end());
    trace.steps.push_back(std::move(step));
  }
  trace.final_space = ambient.space;
  return trace;
}

bool DapReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const DapCheck& c) { return c.pass; });
}

std::size_t DapReport::count(const std::string& id, bool pass) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const DapCheck& c) { return c.id == id && c.pass == pass; }));
}

DapReport dap_verify(const DapTrace& trace) {
  const auto& space = trace.final_space;
  DapReport report;
  auto h_of = [&](const Label& x) -> Rational {
    const auto it = trace.h.find(x);
    return it == trace.h.end() ? Rational(0) : it->second;
  };
  auto n_str = [](std::size_t n) { return std::to_string(n); };

  std::vector<Label> earlier;
  for (const auto& step : trace.steps) {
    for (const auto& x : step.family) {
      const auto fx = step.map.image_of(x);
      const Rational hx = h_of(x);
      if (!fx) {
        report.checks.push_back({"V1", {{"n", n_str(step.n)}, {"x", x}, {"missing", "f_n(x)"}}, {}, hx, "=", false});
        continue;
      }
      report.checks.push_back(
          {"V1", {{"n", n_str(step.n)}, {"x", x}}, space.dist(x, *fx), hx, "=", space.dist(x, *fx) == hx});
      for (const auto& y : earlier) {
        Rational lhs = space.dist(*fx, y);
        Rational rhs = space.dist(x, y) + hx;
        const bool ok = lhs == rhs && lhs >= hx;
        report.checks.push_back({"V2", {{"n", n_str(step.n)}, {"x", x}, {"y", y}}, std::move(lhs), std::move(rhs), "=", ok});
      }
    }
    earlier.insert(earlier.end(), step.image.begin(), step.image.end());
  }

  // V3: uniform separation between different families' images.
  std::optional<Rational> min_h;
  for (const auto& step : trace.steps) {
    for (const auto& x : step.family) {
      const Rational hx = h_of(x);
      if (!min_h || hx < *min_h) min_h = hx;
    }
  }
  std::optional<Rational> closest;
  Label wu, wv;
  for (std::size_t a = 0; a < trace.steps.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      for (const auto& u : trace.steps[a].image) {
        for (const auto& v : trace.steps[b].image) {
          const Rational& d = space.dist(u, v);
          if (!closest || d < *closest) {
            closest = d;
            wu = u;
            wv = v;
          }
        }
      }
    }
  }
  if (closest) {
    const bool ok = *closest >= *min_h;
    report.checks.push_back({"V3", {{"u", wu}, {"v", wv}}, closest, min_h, ">=", ok});
  } else {
    report.checks.push_back({"V3", {{"pairs", "0"}}, std::nullopt, min_h, ">=", true});
  }

  // V4: the construction only ever adds points.
  std::size_t pairs = 0;
  bool v4 = true;
  for (std::size_t i = 0; i < trace.initial.size() && v4; ++i) {
    for (std::size_t j = i + 1; j < trace.initial.size(); ++j) {
      const auto& x = trace.initial.label(i);
      const auto& y = trace.initial.label(j);
      ++pairs;
      if (!space.contains(x) || !space.contains(y) || space.dist(x, y) != trace.initial.dist(i, j)) {
        std::optional<Rational> after;
        if (space.contains(x) && space.contains(y)) after = space.dist(x, y);
        report.checks.push_back({"V4", {{"x", x}, {"y", y}}, after, trace.initial.dist(i, j), "=", false});
        v4 = false;
        break;
      }
    }
  }
  if (v4) report.checks.push_back({"V4", {{"pairs", std::to_string(pairs)}}, std::nullopt, std::nullopt, "=", true});

  std::set<Label> seen;
  std::optional<Label> repeated;
  for (const auto& step : trace.steps) {
    for (const auto& u : step.image) {
      if (!seen.insert(u).second && !repeated) repeated = u;
    }
  }
  if (repeated) {
    report.checks.push_back({"DISJOINT", {{"label", *repeated}}, std::nullopt, std::nullopt, "=", false});
  } else {
    report.checks.push_back({"DISJOINT", {}, std::nullopt, std::nullopt, "=", true});
  }
  return report;
}

void write_report_lines(std::ostream& out, const DapReport& report) {
  for (const auto& c : report.checks) {
    out << "CHECK " << c.id;
    for (const auto& [k, v] : c.fields) out << ' ' << k << '=' << v;
    if (c.lhs) out << " lhs=" << *c.lhs;
    if (c.rhs) out << " rhs=" << *c.rhs;
    out << (c.pass ? " PASS" : " FAIL") << '\n';
  }
  out << "RESULT " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

void write_report_text(std::ostream& out, const DapReport& report) {
  static const std::map<std::string, std::string> titles = {
      {"V1", "displacement d(x, f_n(x)) = h(x)"},
      {"V2", "separation d(f_n(x), y) = d(x, y) + h(x)"},
      {"V3", "cross-family distance >= min h"},
      {"V4", "ambient distances unchanged"},
      {"DISJOINT", "images L_n pairwise disjoint"},
  };
  std::string current;
  for (const auto& c : report.checks) {
    if (c.id != current) {
      current = c.id;
      out << current << ": " << titles.at(current) << " (" << report.count(current, true) << " passed, "
          << report.count(current, false) << " failed)\n";
    }
    out << "  [" << (c.pass ? "ok" : "FAILED") << "]";
    for (const auto& [k, v] : c.fields) out << ' ' << k << '=' << v;
    if (c.lhs || c.rhs) {
      out << "  " << (c.lhs ? c.lhs->str() : "-") << ' ' << c.relation << ' ' << (c.rhs ? c.rhs->str() : "-");
    }
    out << '\n';
  }
  out << (report.passed() ? "all identities hold\n" : "some identities FAILED\n");
}

DapInstance random_instance(std::uint64_t seed, const RandomInstanceOptions& options) {
  Rng rng(seed);
  const std::size_t n = 1 + rng.below(options.max_points);
  DapInstance inst;
  inst.ambient = random_space(n, options.grid, rng.next());
  const auto labels = inst.ambient.labels();
  const auto grid = options.grid.values();
  const std::size_t m = 1 + rng.below(options.max_families);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Label> family;
    for (const auto& l : labels) {
      if (rng.coin()) family.push_back(l);
    }
    if (family.empty()) family.push_back(labels[rng.below(labels.size())]);
    for (const auto& x : family) {
      if (!inst.h.contains(x)) inst.h.emplace(x, grid[rng.below(grid.size())]);
    }
    inst.families.push_back(std::move(family));
  }
  return inst;
}

}  // namespace urysohn::dap
