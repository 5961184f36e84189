#include "shiftgrp/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"

namespace shiftgrp {

Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeDecl> edges)
    : vertex_ids_(std::move(vertices)) {
  std::set<std::string> seen;
  for (auto const& v : vertex_ids_) {
    if (!seen.insert(v).second) {
      throw ShapeError("duplicate vertex id '" + v + "'");
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](EdgeDecl const& a, EdgeDecl const& b) { return a.id < b.id; });
  out_.resize(vertex_ids_.size());
  for (auto const& e : edges) {
    if (!seen.insert(e.id).second) {
      throw ShapeError("duplicate or clashing edge id '" + e.id + "'");
    }
    auto s = find_vertex(e.src);
    auto r = find_vertex(e.rng);
    if (!s) throw ReferenceError("edge '" + e.id + "' references unknown vertex '" + e.src + "'");
    if (!r) throw ReferenceError("edge '" + e.id + "' references unknown vertex '" + e.rng + "'");
    out_[*s].push_back(edge_ids_.size());
    edge_ids_.push_back(e.id);
    src_.push_back(*s);
    rng_.push_back(*r);
  }
}

std::optional<Vertex> Graph::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < vertex_ids_.size(); ++i) {
    if (vertex_ids_[i] == id) return i;
  }
  return std::nullopt;
}

std::optional<Edge> Graph::find_edge(std::string_view id) const {
  auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id,
                             [](std::string const& a, std::string_view b) { return a < b; });
  if (it != edge_ids_.end() && *it == id) return static_cast<Edge>(it - edge_ids_.begin());
  return std::nullopt;
}

bool Graph::has_sinks() const {
  return std::any_of(out_.begin(), out_.end(), [](auto const& o) { return o.empty(); });
}

bool Graph::has_sources() const {
  std::vector<bool> hit(vertex_count(), false);
  for (auto r : rng_) hit[r] = true;
  return std::find(hit.begin(), hit.end(), false) != hit.end();
}

VertexClass Graph::classify() const {
  VertexClass c;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    (is_sink(v) ? c.singular : c.regular).push_back(v);
  }
  return c;
}

CountMatrix Graph::adjacency() const {
  CountMatrix a{vertex_count(), std::vector<long long>(vertex_count() * vertex_count(), 0)};
  for (Edge e = 0; e < edge_count(); ++e) a.at(src_[e], rng_[e]) += 1;
  return a;
}

std::strong_ordering Path::operator<=>(const Path& other) const {
  if (auto c = std::lexicographical_compare_three_way(edges.begin(), edges.end(),
                                                      other.edges.begin(), other.edges.end());
      c != 0) {
    return c;
  }
  return start <=> other.start;
}

Path vertex_path(Vertex v) { return Path{v, {}}; }

Vertex path_source(const Path& p) { return p.start; }

Vertex path_range(const Graph& g, const Path& p) {
  return p.edges.empty() ? p.start : g.rng(p.edges.back());
}

bool is_valid_path(const Graph& g, const Path& p) {
  if (p.start >= g.vertex_count()) return false;
  Vertex at = p.start;
  for (Edge e : p.edges) {
    if (e >= g.edge_count() || g.src(e) != at) return false;
    at = g.rng(e);
  }
  return true;
}

Path concat(const Graph& g, const Path& a, const Path& b) {
  if (path_range(g, a) != b.start) {
    throw DomainError("cannot concatenate " + to_string(g, a) + " and " + to_string(g, b));
  }
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

Path prefix(const Graph& g, const Path& p, std::size_t n) {
  (void)g;
  if (n > p.length()) throw DomainError("prefix longer than path");
  return Path{p.start, std::vector<Edge>(p.edges.begin(), p.edges.begin() + n)};
}

Path drop_front(const Graph& g, const Path& p, std::size_t n) {
  if (n > p.length()) throw DomainError("cannot drop more edges than the path has");
  if (n == p.length()) return vertex_path(path_range(g, p));
  return Path{g.src(p.edges[n]), std::vector<Edge>(p.edges.begin() + n, p.edges.end())};
}

bool is_prefix(const Path& pre, const Path& p) {
  if (pre.start != p.start || pre.length() > p.length()) return false;
  return std::equal(pre.edges.begin(), pre.edges.end(), p.edges.begin());
}

std::string to_string(const Graph& g, const Path& p) {
  if (p.edges.empty()) return "@" + g.vertex_id(p.start);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += ',';
    out += g.edge_id(p.edges[i]);
  }
  return out;
}

Path parse_path(const Graph& g, std::string_view text) {
  auto t = detail::trim(text);
  if (t.empty()) throw DomainError("empty path literal");
  if (t.front() == '@') {
    auto v = g.find_vertex(detail::trim(t.substr(1)));
    if (!v) throw ReferenceError("unknown vertex '" + std::string(t.substr(1)) + "'");
    return vertex_path(*v);
  }
  Path p;
  for (auto tok : detail::split(t, ',')) {
    auto name = detail::trim(tok);
    auto e = g.find_edge(name);
    if (!e) throw ReferenceError("unknown edge '" + std::string(name) + "'");
    if (p.edges.empty()) p.start = g.src(*e);
    p.edges.push_back(*e);
  }
  if (!is_valid_path(g, p)) throw DomainError("'" + std::string(t) + "' is not a path");
  return p;
}

Graph parse_graph(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<EdgeDecl> edges;
  std::size_t lineno = 0;
  for (auto line : detail::split(text, '\n')) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (detail::trim(line).empty()) continue;
    auto decls = detail::split(line, ';');
    if (!detail::trim(decls.back()).empty()) {
      throw ParseError(lineno, "declaration not terminated by ';'");
    }
    decls.pop_back();
    for (auto decl : decls) {
      decl = detail::trim(decl);
      if (decl.empty()) throw ParseError(lineno, "empty declaration");
      auto colon = decl.find(':');
      if (colon == std::string_view::npos) {
        if (!detail::is_token(decl)) throw ParseError(lineno, "bad vertex id '" + std::string(decl) + "'");
        vertices.emplace_back(decl);
        continue;
      }
      auto id = detail::trim(decl.substr(0, colon));
      auto rest = decl.substr(colon + 1);
      auto arrow = rest.find("->");
      if (arrow == std::string_view::npos) throw ParseError(lineno, "edge without '->'");
      auto s = detail::trim(rest.substr(0, arrow));
      auto r = detail::trim(rest.substr(arrow + 2));
      if (!detail::is_token(id) || !detail::is_token(s) || !detail::is_token(r)) {
        throw ParseError(lineno, "bad token in edge declaration");
      }
      edges.push_back({std::string(id), std::string(s), std::string(r)});
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << g.vertex_id(v) << ";\n";
  for (Edge e = 0; e < g.edge_count(); ++e) {
    out << g.edge_id(e) << ": " << g.vertex_id(g.src(e)) << " -> " << g.vertex_id(g.rng(e)) << ";\n";
  }
  return out.str();
}

std::vector<std::vector<int>> parse_matrix(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::size_t lineno = 0;
  for (auto line : detail::split(text, '\n')) {
    ++lineno;
    line = detail::trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    std::istringstream in{std::string(line)};
    std::vector<int> row;
    std::string entry;
    while (in >> entry) {
      if (entry.find_first_not_of("0123456789") != std::string::npos || entry.size() > 6)
        throw ParseError(lineno, "bad matrix entry '" + entry + "'");
      row.push_back(std::stoi(entry));
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError(lineno, "ragged matrix row");
    rows.push_back(std::move(row));
  }
  return rows;
}

Graph graph_from_matrix(const std::vector<std::vector<int>>& a, std::vector<std::string>* warnings) {
  auto n = a.size();
  for (auto const& row : a) {
    if (row.size() != n) throw ShapeError("matrix is not square");
  }
  auto width = std::to_string(n).size();
  auto pad = [width](std::size_t i) {
    auto s = std::to_string(i);
    return std::string(width - s.size(), '0') + s;
  };
  std::vector<std::string> vertices;
  for (std::size_t i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  std::vector<EdgeDecl> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] != 0 && a[i][j] != 1) throw ShapeError("matrix entries must be 0 or 1");
      if (a[i][j] == 1) {
        edges.push_back({"e" + pad(i + 1) + "_" + pad(j + 1), vertices[i], vertices[j]});
      }
    }
  }
  if (warnings) {
    for (std::size_t i = 0; i < n; ++i) {
      bool row = false, col = false;
      for (std::size_t j = 0; j < n; ++j) {
        row = row || a[i][j];
        col = col || a[j][i];
      }
      if (!row) warnings->push_back("row " + std::to_string(i + 1) + " is zero");
      if (!col) warnings->push_back("column " + std::to_string(i + 1) + " is zero");
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

std::vector<Path> enumerate_paths(const Graph& g, std::optional<Vertex> from, std::size_t n) {
  std::vector<Path> layer;
  if (from) {
    layer.push_back(vertex_path(*from));
  } else {
    for (Vertex v = 0; v < g.vertex_count(); ++v) layer.push_back(vertex_path(v));
  }
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Path> next;
    for (auto const& p : layer) {
      for (Edge e : g.out_edges(path_range(g, p))) {
        Path q = p;
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

bool has_condition_L(const Graph& g) {
  // A cycle without an exit runs through vertices of out-degree one only.
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Vertex at = v;
    for (std::size_t step = 0; step < g.vertex_count(); ++step) {
      if (g.out_edges(at).size() != 1) break;
      at = g.rng(g.out_edges(at).front());
      if (at == v) return false;
    }
  }
  return true;
}

}  // namespace shiftgrp
