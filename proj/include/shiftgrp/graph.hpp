#pragma once

// Finite directed multigraphs and their paths.
//
// Vertices and edges are addressed by dense indices. Edge indices follow the
// lexicographic order of the edge ids, so sorting by index is the canonical
// enumeration order used throughout the library.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftgrp {

using Vertex = std::size_t;
using Edge = std::size_t;

struct EdgeDecl {
  std::string id;
  std::string src;
  std::string rng;
};

// Square matrix of natural numbers, row-major.
struct CountMatrix {
  std::size_t n = 0;
  std::vector<long long> entries;

  long long& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  long long at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  bool operator==(const CountMatrix&) const = default;
};

struct VertexClass {
  std::vector<Vertex> regular;
  std::vector<Vertex> singular;
};

class Graph {
 public:
  Graph() = default;
  // Throws ReferenceError on dangling endpoints and ShapeError on duplicate
  // or overlapping ids.
  Graph(std::vector<std::string> vertices, std::vector<EdgeDecl> edges);

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_ids_.size(); }

  const std::string& vertex_id(Vertex v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(Edge e) const { return edge_ids_.at(e); }
  Vertex src(Edge e) const { return src_.at(e); }
  Vertex rng(Edge e) const { return rng_.at(e); }

  std::optional<Vertex> find_vertex(std::string_view id) const;
  std::optional<Edge> find_edge(std::string_view id) const;

  // Outgoing edges of v in canonical order.
  std::span<const Edge> out_edges(Vertex v) const { return out_.at(v); }

  bool is_sink(Vertex v) const { return out_.at(v).empty(); }
  bool has_sinks() const;
  bool has_sources() const;
  VertexClass classify() const;

  // Edge-count adjacency matrix indexed by vertex index.
  CountMatrix adjacency() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<Vertex> src_;
  std::vector<Vertex> rng_;
  std::vector<std::vector<Edge>> out_;
};

// A finite path. An empty edge sequence denotes the vertex path at `start`.
struct Path {
  Vertex start = 0;
  std::vector<Edge> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }

  // Lexicographic in the edge sequence, ties broken by start vertex.
  std::strong_ordering operator<=>(const Path& other) const;
  bool operator==(const Path&) const = default;
};

Path vertex_path(Vertex v);
Vertex path_source(const Path& p);
Vertex path_range(const Graph& g, const Path& p);
bool is_valid_path(const Graph& g, const Path& p);
// Throws DomainError when rng(a) != src(b).
Path concat(const Graph& g, const Path& a, const Path& b);
Path prefix(const Graph& g, const Path& p, std::size_t n);
Path drop_front(const Graph& g, const Path& p, std::size_t n);
bool is_prefix(const Path& pre, const Path& p);

std::string to_string(const Graph& g, const Path& p);
// Comma-separated edge ids, or "@v" for a vertex path.
Path parse_path(const Graph& g, std::string_view text);

Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

// Vertex ids are 1-based indices; the edge for A(i,j)=1 is named "e<i>_<j>".
// Zero rows or columns are reported through `warnings`.
// One row per line, entries separated by whitespace; '#' starts a comment.
// Throws ParseError for non-numeric entries and ragged rows.
std::vector<std::vector<int>> parse_matrix(std::string_view text);

Graph graph_from_matrix(const std::vector<std::vector<int>>& a,
                        std::vector<std::string>* warnings = nullptr);

std::vector<Path> enumerate_paths(const Graph& g, std::optional<Vertex> from,
                                  std::size_t n);

bool has_condition_L(const Graph& g);

}  // namespace shiftgrp
