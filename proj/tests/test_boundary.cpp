#include "doctest.h"

#include "shiftgrp/boundary.hpp"
#include "shiftgrp/errors.hpp"
#include "support.hpp"

using namespace shiftgrp;

TEST_CASE("shifting lassos") {
  auto e2 = testing::load_graph("e2.g");
  CHECK(shift(e2, parse_lasso(e2, "a|b"), 1) == parse_lasso(e2, "|b"));
  CHECK(shift(e2, parse_lasso(e2, "|a,b"), 1) == parse_lasso(e2, "|b,a"));
  CHECK(to_string(e2, shift(e2, parse_lasso(e2, "|a,b"), 1)) == "|b,a");

  auto sink = testing::load_graph("sink.g");
  auto c = parse_lasso(sink, "c|");
  CHECK(shift(sink, c, 1) == LassoPoint::finite(sink, vertex_path(1)));
  CHECK(to_string(sink, shift(sink, c, 1)) == "@w|");
  CHECK_THROWS_AS(shift(sink, c, 2), DomainError);
}

TEST_CASE("shifts compose") {
  auto tri = testing::load_graph("tri.g");
  for (auto const& text : {"a,c,d|b,c,f,d", "|c,f,d,a", "b,c|f"}) {
    auto x = parse_lasso(tri, text);
    for (std::size_t m = 0; m <= 4; ++m)
      for (std::size_t n = 0; n <= 4; ++n) CHECK(shift(tri, shift(tri, x, m), n) == shift(tri, x, m + n));
  }
}

TEST_CASE("canonical form absorbs stems and powers") {
  auto e2 = testing::load_graph("e2.g");
  auto x = parse_lasso(e2, "a|b,a");
  CHECK(x == parse_lasso(e2, "a,b,a|b,a"));
  CHECK(x == parse_lasso(e2, "a|b,a,b,a"));
  CHECK(x == parse_lasso(e2, "|a,b"));
  CHECK(x.stem().empty());
  CHECK(parse_lasso(e2, "a,a|a") == parse_lasso(e2, "|a"));
  CHECK(parse_lasso(e2, to_string(e2, x)) == x);
  CHECK_THROWS_AS(parse_lasso(e2, "a|"), DomainError);
}

TEST_CASE("cylinder membership") {
  auto e2 = testing::load_graph("e2.g");
  auto x = parse_lasso(e2, "|a,b");
  CHECK(member(x, {parse_path(e2, "a,b"), {}}));
  CHECK_FALSE(member(x, {parse_path(e2, "a"), {*e2.find_edge("b")}}));
  CHECK(member(x, {parse_path(e2, "a"), {*e2.find_edge("a")}}));

  auto sink = testing::load_graph("sink.g");
  CHECK(member(parse_lasso(sink, "@w|"), {vertex_path(1), {}}));
}

TEST_CASE("depth partitions") {
  auto e2 = testing::load_graph("e2.g");
  auto one = cylinder_partition(e2, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].base == parse_path(e2, "a"));
  CHECK(one[1].base == parse_path(e2, "b"));
  CHECK(cylinder_partition(e2, 2).size() == 4);

  auto sink = testing::load_graph("sink.g");
  auto cells = cylinder_partition(sink, 2);
  bool has_c = false;
  for (auto const& z : cells) has_c |= z.base == parse_path(sink, "c");
  CHECK(has_c);
}

TEST_CASE("every lasso lies in exactly one cell") {
  for (auto const& name : testing::corpus_graph_files()) {
    auto g = testing::load_graph(name);
    std::vector<LassoPoint> points;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      for (auto const& mu : enumerate_paths(g, v, 3))
        if (auto w = lasso_witness(g, mu)) points.push_back(*w);
    if (g.has_sinks()) {
      for (auto const& text : {"@w|", "c|", "a,c|", "a,a,a,c|"}) points.push_back(parse_lasso(g, text));
    }
    for (std::size_t d = 0; d <= 8; ++d) {
      auto cells = cylinder_partition(g, d);
      for (auto const& x : points) {
        std::size_t hits = 0;
        for (auto const& z : cells) hits += member(x, z) ? 1 : 0;
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("cells with infinite members have lasso witnesses") {
  for (auto const& name : testing::corpus_graph_files()) {
    auto g = testing::load_graph(name);
    for (auto const& z : cylinder_partition(g, 3)) {
      auto w = lasso_witness(g, z.base);
      bool finite_cell = !w.has_value();
      if (w) CHECK(member(*w, z));
      // Only the sink graph has cells without infinite points.
      if (finite_cell) CHECK(g.has_sinks());
    }
  }
}
