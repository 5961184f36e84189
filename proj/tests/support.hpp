#pragma once

// Corpus loading and independent oracles shared by the unit and acceptance
// tests.

#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shiftgrp/graph.hpp"
#include "shiftgrp/groupoid.hpp"
#include "shiftgrp/lpa.hpp"

namespace testing {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SHIFTGRP_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline shiftgrp::Graph load_graph(const std::string& name) { return shiftgrp::parse_graph(read_data(name)); }

// Closed walks of length p found by depth-first search over edges, counted
// once per starting edge.
inline long long count_closed_walks(const shiftgrp::Graph& g, std::size_t p) {
  long long total = 0;
  std::vector<shiftgrp::Edge> walk;
  auto dfs = [&](auto&& self, shiftgrp::Vertex start, shiftgrp::Vertex at) -> void {
    if (walk.size() == p) {
      if (at == start) ++total;
      return;
    }
    for (auto e : g.out_edges(at)) {
      walk.push_back(e);
      self(self, start, g.rng(e));
      walk.pop_back();
    }
  };
  for (shiftgrp::Vertex v = 0; v < g.vertex_count(); ++v) dfs(dfs, v, v);
  return total;
}

// Entry sum of A^n by repeated vector-matrix products.
inline long long matrix_power_entry_sum(const shiftgrp::CountMatrix& a, std::size_t n) {
  std::vector<long long> row(a.n, 1);
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<long long> next(a.n, 0);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) next[j] += row[i] * a.at(i, j);
    row = next;
  }
  long long s = 0;
  for (auto x : row) s += x;
  return s;
}

inline const std::vector<std::string>& corpus_graph_files() {
  static const std::vector<std::string> files = {"loop.g", "e2.g", "f2.g", "golden.g", "sink.g", "tri.g"};
  return files;
}

// All words s_mu s_nu^* with |mu|, |nu| <= n.
inline std::vector<shiftgrp::LpaWord> words_to(const shiftgrp::Graph& g, std::size_t n) {
  std::vector<shiftgrp::LpaWord> out;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      for (auto const& mu : shiftgrp::enumerate_paths(g, std::nullopt, a))
        for (auto const& nu : shiftgrp::enumerate_paths(g, std::nullopt, b))
          if (shiftgrp::path_range(g, mu) == shiftgrp::path_range(g, nu)) out.push_back({mu, nu});
  return out;
}

// One to three words with small rational coefficients.
inline shiftgrp::LpaElement random_element(const shiftgrp::Graph& g, const std::vector<shiftgrp::LpaWord>& words,
                                           std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), count(1, 3);
  shiftgrp::LpaElement out;
  for (int i = count(rng); i > 0; --i) {
    auto const& w = words[pick(rng)];
    out += shiftgrp::LpaElement::word(g, w.mu, w.nu, shiftgrp::Rational(num(rng), den(rng)));
  }
  return out;
}

}  // namespace testing
