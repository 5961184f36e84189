#include "shiftgrp/boundary.hpp"

#include <algorithm>
#include <deque>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"

namespace shiftgrp {

namespace {

std::vector<Edge> primitive_root(std::vector<Edge> c) {
  auto n = c.size();
  for (std::size_t q = 1; q < n; ++q) {
    if (n % q != 0) continue;
    bool periodic = true;
    for (std::size_t i = q; i < n && periodic; ++i) periodic = c[i] == c[i - q];
    if (periodic) {
      c.resize(q);
      return c;
    }
  }
  return c;
}

// Shortest path (lexicographically least among shortest) from v to any
// vertex satisfying `target`.
template <typename Pred>
std::optional<Path> bfs_path(const Graph& g, Vertex v, Pred target) {
  std::vector<std::optional<Edge>> via(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<Vertex> queue{v};
  seen[v] = true;
  while (!queue.empty()) {
    Vertex at = queue.front();
    queue.pop_front();
    if (target(at)) {
      Path p{v, {}};
      for (Vertex w = at; w != v; w = g.src(*via[w])) p.edges.push_back(*via[w]);
      std::reverse(p.edges.begin(), p.edges.end());
      return p;
    }
    for (Edge e : g.out_edges(at)) {
      if (!seen[g.rng(e)]) {
        seen[g.rng(e)] = true;
        via[g.rng(e)] = e;
        queue.push_back(g.rng(e));
      }
    }
  }
  return std::nullopt;
}

// Shortest cycle based at v, if any.
std::optional<Path> shortest_cycle(const Graph& g, Vertex v) {
  std::optional<Path> best;
  for (Edge e : g.out_edges(v)) {
    auto back = bfs_path(g, g.rng(e), [v](Vertex w) { return w == v; });
    if (!back) continue;
    Path c{v, {e}};
    c.edges.insert(c.edges.end(), back->edges.begin(), back->edges.end());
    if (!best || c.length() < best->length()) best = c;
  }
  return best;
}

}  // namespace

const std::shared_ptr<const LassoPoint::Body>& LassoPoint::empty_body() {
  static const std::shared_ptr<const Body> body = std::make_shared<const Body>();
  return body;
}

LassoPoint LassoPoint::canonical(const Graph& g, Vertex source, std::vector<Edge> stem,
                                 std::vector<Edge> cycle) {
  if (!cycle.empty()) {
    cycle = primitive_root(std::move(cycle));
    while (!stem.empty() && stem.back() == cycle.back()) {
      stem.pop_back();
      std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
  }
  if (!stem.empty()) {
    source = g.src(stem.front());
  } else if (!cycle.empty()) {
    source = g.src(cycle.front());
  }
  std::size_t h = source * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (auto e : stem) mix(e + 1);
  mix(0xffff);
  for (auto e : cycle) mix(e + 1);
  LassoPoint x;
  x.body_ = std::make_shared<const Body>(Body{source, std::move(stem), std::move(cycle), h});
  return x;
}

LassoPoint LassoPoint::make(const Graph& g, const Path& stem, const Path& cycle) {
  if (!is_valid_path(g, stem) || !is_valid_path(g, cycle)) {
    throw DomainError("lasso components are not paths");
  }
  if (cycle.empty()) {
    if (!g.is_sink(path_range(g, stem))) {
      throw DomainError("finite boundary path must end at a singular vertex: " + to_string(g, stem));
    }
    return canonical(g, stem.start, stem.edges, {});
  }
  if (cycle.start != path_range(g, stem) || path_range(g, cycle) != cycle.start) {
    throw DomainError("cycle " + to_string(g, cycle) + " does not close at the end of the stem");
  }
  return canonical(g, stem.start, stem.edges, cycle.edges);
}

LassoPoint LassoPoint::finite(const Graph& g, const Path& path) {
  return make(g, path, vertex_path(path_range(g, path)));
}

std::optional<std::size_t> LassoPoint::length() const {
  if (is_infinite()) return std::nullopt;
  return stem().size();
}

Edge LassoPoint::edge_at(std::size_t i) const {
  auto const& st = stem();
  auto const& cy = cycle();
  if (i < st.size()) return st[i];
  if (cy.empty()) throw DomainError("index past the end of a finite boundary path");
  return cy[(i - st.size()) % cy.size()];
}

Path LassoPoint::prefix(const Graph& g, std::size_t n) const {
  (void)g;
  if (!is_infinite() && n > stem().size()) throw DomainError("prefix longer than finite boundary path");
  Path p{source(), {}};
  p.edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.edges.push_back(edge_at(i));
  return p;
}

bool LassoPoint::starts_with(const Path& p) const {
  if (p.start != source()) return false;
  if (!is_infinite() && p.length() > stem().size()) return false;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (edge_at(i) != p.edges[i]) return false;
  }
  return true;
}

LassoPoint LassoPoint::prepend(const Graph& g, const Path& p) const {
  if (path_range(g, p) != source()) throw DomainError("prepended path does not end at the point's source");
  if (p.empty()) return *this;
  std::vector<Edge> st(p.edges);
  st.insert(st.end(), stem().begin(), stem().end());
  return canonical(g, p.start, std::move(st), cycle());
}

std::strong_ordering LassoPoint::operator<=>(const LassoPoint& o) const {
  if (body_ == o.body_) return std::strong_ordering::equal;
  if (auto c = source() <=> o.source(); c != 0) return c;
  if (auto c = stem() <=> o.stem(); c != 0) return c;
  return cycle() <=> o.cycle();
}

bool LassoPoint::operator==(const LassoPoint& o) const {
  if (body_ == o.body_) return true;
  return hash() == o.hash() && source() == o.source() && stem() == o.stem() && cycle() == o.cycle();
}

std::size_t LassoHash::operator()(const LassoPoint& x) const noexcept { return x.hash(); }

LassoPoint shift(const Graph& g, const LassoPoint& x, std::size_t n) {
  if (n == 0) return x;
  auto const& stem = x.stem();
  auto const& cycle = x.cycle();
  if (!x.is_infinite()) {
    if (n > stem.size()) throw DomainError("shift exceeds the length of a finite boundary path");
    Path rest = drop_front(g, Path{x.source(), stem}, n);
    return LassoPoint::make(g, rest, vertex_path(path_range(g, rest)));
  }
  if (n <= stem.size()) {
    Path rest = drop_front(g, Path{x.source(), stem}, n);
    return LassoPoint::make(g, rest, Path{path_range(g, rest), cycle});
  }
  auto k = (n - stem.size()) % cycle.size();
  std::vector<Edge> rotated(cycle.begin() + k, cycle.end());
  rotated.insert(rotated.end(), cycle.begin(), cycle.begin() + k);
  Vertex v = g.src(rotated.front());
  return LassoPoint::make(g, vertex_path(v), Path{v, rotated});
}

bool member(const LassoPoint& x, const CylinderSet& z) {
  if (!x.starts_with(z.base)) return false;
  auto n = z.base.length();
  if (!x.is_infinite() && *x.length() == n) return true;
  auto next = x.edge_at(n);
  return std::find(z.excluded.begin(), z.excluded.end(), next) == z.excluded.end();
}

std::vector<CylinderSet> cylinder_partition(const Graph& g, std::size_t depth) {
  std::vector<CylinderSet> cells;
  for (std::size_t len = 0; len < depth; ++len) {
    for (auto& p : enumerate_paths(g, std::nullopt, len)) {
      if (g.is_sink(path_range(g, p))) cells.push_back({std::move(p), {}});
    }
  }
  for (auto& p : enumerate_paths(g, std::nullopt, depth)) cells.push_back({std::move(p), {}});
  return cells;
}

std::optional<LassoPoint> lasso_witness(const Graph& g, const Path& base) {
  Vertex v = path_range(g, base);
  auto on_cycle = [&g](Vertex w) { return shortest_cycle(g, w).has_value(); };
  auto lead = bfs_path(g, v, on_cycle);
  if (!lead) return std::nullopt;
  Path stem = concat(g, base, *lead);
  auto c = shortest_cycle(g, path_range(g, stem));
  return LassoPoint::make(g, stem, *c);
}

LassoPoint parse_lasso(const Graph& g, std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw DomainError("lasso literal needs '|'");
  auto stem_text = detail::trim(text.substr(0, bar));
  auto cycle_text = detail::trim(text.substr(bar + 1));
  std::optional<Path> cycle;
  if (!cycle_text.empty()) cycle = parse_path(g, cycle_text);
  Path stem;
  if (!stem_text.empty()) {
    stem = parse_path(g, stem_text);
  } else if (cycle) {
    stem = vertex_path(cycle->start);
  } else {
    throw DomainError("empty lasso literal");
  }
  return LassoPoint::make(g, stem, cycle ? *cycle : vertex_path(path_range(g, stem)));
}

std::string to_string(const Graph& g, const LassoPoint& x) {
  std::string out;
  if (!x.stem().empty()) {
    out = to_string(g, Path{x.source(), x.stem()});
  } else if (!x.is_infinite()) {
    out = "@" + g.vertex_id(x.source());
  }
  out += '|';
  if (x.is_infinite()) out += to_string(g, Path{g.src(x.cycle().front()), x.cycle()});
  return out;
}

}  // namespace shiftgrp
