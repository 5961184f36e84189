#include "shiftgrp/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"

namespace shiftgrp {

WeightFunction WeightFunction::constant(const Graph& g, Rational value) {
  return WeightFunction(std::vector<Rational>(g.edge_count(), value));
}

WeightFunction WeightFunction::parse(const Graph& g, std::string_view text) {
  text = detail::trim(text);
  if (text.find('=') == std::string_view::npos) return constant(g, parse_rational(text));
  std::vector<std::optional<Rational>> w(g.edge_count());
  for (auto item : detail::split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("weight entry needs '='");
    auto name = detail::trim(item.substr(0, eq));
    auto e = g.find_edge(name);
    if (!e) throw ReferenceError("unknown edge '" + std::string(name) + "' in weights");
    w[*e] = parse_rational(item.substr(eq + 1));
  }
  std::vector<Rational> out;
  for (Edge e = 0; e < g.edge_count(); ++e) {
    if (!w[e]) throw DomainError("no weight given for edge '" + g.edge_id(e) + "'");
    out.push_back(*w[e]);
  }
  return WeightFunction(std::move(out));
}

Rational extend_weight(const WeightFunction& k, const Path& mu) {
  Rational sum = 0;
  for (Edge e : mu.edges) sum += k(e);
  return sum;
}

bool GroupoidElement::operator<(const GroupoidElement& o) const {
  if (x != o.x) return x < o.x;
  if (p != o.p) return p < o.p;
  return y < o.y;
}

std::size_t ElementHash::operator()(const GroupoidElement& g) const noexcept {
  LassoHash h;
  return h(g.x) * 31 + h(g.y) * 131 + static_cast<std::size_t>(g.p) * 1000003;
}

GroupoidElement make_element(const Graph& g, const LassoPoint& x, const LassoPoint& y,
                             std::size_t m, std::size_t n) {
  if (shift(g, x, m) != shift(g, y, n)) {
    throw DomainError("witness (" + std::to_string(m) + "," + std::to_string(n) +
                      ") does not relate " + to_string(g, x) + " and " + to_string(g, y));
  }
  return GroupoidElement{x, static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n), y, m, n};
}

GroupoidElement unit(const LassoPoint& x) { return GroupoidElement{x, 0, x, 0, 0}; }

bool is_unit(const GroupoidElement& g) { return g.p == 0 && g.x == g.y; }

GroupoidElement compose(const Graph& g, const GroupoidElement& a, const GroupoidElement& b) {
  if (a.y != b.x) {
    throw ComposabilityError("cannot compose " + to_string(g, a) + " with " + to_string(g, b));
  }
  auto t = std::max(a.n, b.m);
  return GroupoidElement{a.x, a.p + b.p, b.y, a.m + t - a.n, b.n + t - b.m};
}

GroupoidElement inverse(const GroupoidElement& a) { return GroupoidElement{a.y, -a.p, a.x, a.n, a.m}; }

Rational cocycle_value(const Graph& g, const WeightFunction& k, const GroupoidElement& a) {
  return extend_weight(k, a.x.prefix(g, a.m)) - extend_weight(k, a.y.prefix(g, a.n));
}

std::vector<LassoPoint> witness_lassos(const Graph& g, Vertex v, std::size_t depth) {
  std::set<LassoPoint> out;
  // Closed primitive paths of length <= depth at every vertex reachable from v.
  std::vector<bool> reach(g.vertex_count(), false);
  std::vector<Vertex> stack{v};
  reach[v] = true;
  while (!stack.empty()) {
    auto at = stack.back();
    stack.pop_back();
    for (Edge e : g.out_edges(at)) {
      if (!reach[g.rng(e)]) {
        reach[g.rng(e)] = true;
        stack.push_back(g.rng(e));
      }
    }
  }
  for (Vertex w = 0; w < g.vertex_count(); ++w) {
    if (!reach[w]) continue;
    // Shortest, then lexicographically least, lead-in from v to w.
    std::optional<Path> lead;
    for (std::size_t len = 0; len <= g.vertex_count() && !lead; ++len) {
      for (auto& p : enumerate_paths(g, v, len)) {
        if (path_range(g, p) == w) {
          lead = p;
          break;
        }
      }
    }
    if (g.is_sink(w)) {
      out.insert(LassoPoint::finite(g, *lead));
      continue;
    }
    for (std::size_t len = 1; len <= depth; ++len) {
      for (auto& c : enumerate_paths(g, w, len)) {
        if (path_range(g, c) != w) continue;
        auto z = LassoPoint::make(g, vertex_path(w), c);
        if (z.cycle().size() != len) continue;  // not primitive
        out.insert(z.prepend(g, *lead));
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<GroupoidElement> elements_to_depth(const Graph& g, std::size_t depth) {
  std::vector<std::vector<Path>> ending_at(g.vertex_count());
  for (std::size_t len = 0; len <= depth; ++len) {
    for (auto& p : enumerate_paths(g, std::nullopt, len)) ending_at[path_range(g, p)].push_back(p);
  }
  std::unordered_set<GroupoidElement, ElementHash> seen;
  std::vector<GroupoidElement> out;
  for (Vertex w = 0; w < g.vertex_count(); ++w) {
    auto tails = witness_lassos(g, w, depth);
    for (auto const& z : tails) {
      std::vector<LassoPoint> heads;
      heads.reserve(ending_at[w].size());
      for (auto const& mu : ending_at[w]) heads.push_back(z.prepend(g, mu));
      for (std::size_t i = 0; i < heads.size(); ++i) {
        for (std::size_t j = 0; j < heads.size(); ++j) {
          GroupoidElement el{heads[i],
                             static_cast<std::int64_t>(ending_at[w][i].length()) -
                                 static_cast<std::int64_t>(ending_at[w][j].length()),
                             heads[j], ending_at[w][i].length(), ending_at[w][j].length()};
          if (seen.insert(el).second) out.push_back(std::move(el));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Graph& g, const GroupoidElement& a) {
  return "(" + to_string(g, a.x) + ", " + std::to_string(a.p) + ", " + to_string(g, a.y) + ")";
}

}  // namespace shiftgrp
