#include "doctest.h"

#include "shiftgrp/errors.hpp"
#include "shiftgrp/graph.hpp"
#include "support.hpp"

using namespace shiftgrp;

TEST_CASE("smallest graph parses to one loop") {
  auto g = parse_graph("v;\ne: v -> v;");
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 1);
  CHECK(g.src(0) == 0);
  CHECK(g.rng(0) == 0);
}

TEST_CASE("two loops at one vertex") {
  auto g = parse_graph("v;\na: v -> v; b: v -> v;");
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge_id(0) == "a");
  CHECK(g.edge_id(1) == "b");
}

TEST_CASE("dangling edge endpoint is a reference error") {
  CHECK_THROWS_AS(parse_graph("v;\nc: v -> w;"), ReferenceError);
}

TEST_CASE("malformed lines report their line number") {
  try {
    parse_graph("v;\n# comment\nx: v => v;\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_graph("v"), ParseError);
  CHECK_THROWS_AS(parse_graph("v;\nv;"), ShapeError);
}

TEST_CASE("graph text round trips through the formatter") {
  for (auto const& name : testing::corpus_graph_files()) {
    auto g = testing::load_graph(name);
    CHECK(parse_graph(format_graph(g)) == g);
  }
}

TEST_CASE("graphs from matrices") {
  auto one = graph_from_matrix({{1}});
  CHECK(one.vertex_count() == 1);
  CHECK(one.edge_count() == 1);

  auto golden = graph_from_matrix({{1, 1}, {1, 0}});
  CHECK(golden.vertex_count() == 2);
  CHECK(golden.edge_count() == 3);
  CHECK(golden == testing::load_graph("golden.g"));

  auto full = graph_from_matrix({{1, 1}, {1, 1}});
  CHECK(full.edge_count() == 4);
  CHECK(full == testing::load_graph("f2.g"));

  CHECK_THROWS_AS(graph_from_matrix({{1, 1}}), ShapeError);

  std::vector<std::string> warnings;
  graph_from_matrix({{1, 0}, {0, 0}}, &warnings);
  CHECK(warnings.size() == 2);
}

TEST_CASE("matrix import then adjacency extraction is the identity") {
  std::vector<std::vector<int>> m = {{0, 1, 1}, {1, 0, 0}, {1, 1, 1}};
  auto a = graph_from_matrix(m).adjacency();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(a.at(i, j) == m[i][j]);
}

TEST_CASE("enumerating paths") {
  auto e2 = testing::load_graph("e2.g");
  auto p = enumerate_paths(e2, 0, 2);
  REQUIRE(p.size() == 4);
  CHECK(to_string(e2, p[0]) == "a,a");
  CHECK(to_string(e2, p[1]) == "a,b");
  CHECK(to_string(e2, p[2]) == "b,a");
  CHECK(to_string(e2, p[3]) == "b,b");

  auto gm = testing::load_graph("golden.g");
  auto from2 = enumerate_paths(gm, *gm.find_vertex("2"), 2);
  REQUIRE(from2.size() == 2);
  CHECK(to_string(gm, from2[0]) == "e2_1,e1_1");
  CHECK(to_string(gm, from2[1]) == "e2_1,e1_2");

  auto zero = enumerate_paths(gm, 1, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == vertex_path(1));
}

TEST_CASE("path counts match independent matrix powers") {
  for (auto const& name : testing::corpus_graph_files()) {
    auto g = testing::load_graph(name);
    for (std::size_t n = 0; n <= 5; ++n) {
      CHECK(static_cast<long long>(enumerate_paths(g, std::nullopt, n).size()) ==
            testing::matrix_power_entry_sum(g.adjacency(), n));
    }
  }
}

TEST_CASE("concatenating shorter paths reproduces longer ones") {
  for (auto const& name : testing::corpus_graph_files()) {
    auto g = testing::load_graph(name);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      std::vector<Path> joined;
      for (auto const& mu : enumerate_paths(g, v, 2))
        for (auto const& nu : enumerate_paths(g, path_range(g, mu), 1)) joined.push_back(concat(g, mu, nu));
      std::sort(joined.begin(), joined.end());
      CHECK(joined == enumerate_paths(g, v, 3));
    }
  }
}

TEST_CASE("path helpers") {
  auto e2 = testing::load_graph("e2.g");
  auto ab = parse_path(e2, "a,b");
  CHECK(prefix(e2, ab, 1) == parse_path(e2, "a"));
  CHECK(drop_front(e2, ab, 1) == parse_path(e2, "b"));
  CHECK(drop_front(e2, ab, 2) == parse_path(e2, "@v"));
  CHECK(is_prefix(parse_path(e2, "@v"), ab));
  CHECK_FALSE(is_prefix(parse_path(e2, "b"), ab));
  CHECK(to_string(e2, parse_path(e2, "@v")) == "@v");

  auto sink = testing::load_graph("sink.g");
  CHECK_THROWS_AS(concat(sink, parse_path(sink, "c"), parse_path(sink, "a")), DomainError);
}

TEST_CASE("cycles without exits") {
  CHECK_FALSE(has_condition_L(testing::load_graph("loop.g")));
  CHECK(has_condition_L(testing::load_graph("e2.g")));
  CHECK(has_condition_L(testing::load_graph("golden.g")));
  CHECK(has_condition_L(testing::load_graph("sink.g")));
}

TEST_CASE("vertex classification") {
  auto sink = testing::load_graph("sink.g");
  auto cls = sink.classify();
  CHECK(cls.regular == std::vector<Vertex>{0});
  CHECK(cls.singular == std::vector<Vertex>{1});
  CHECK(sink.has_sinks());
  CHECK_FALSE(testing::load_graph("e2.g").has_sinks());
}

TEST_CASE("matrix files") {
  auto rows = parse_matrix(testing::read_data("golden.mat"));
  CHECK(rows == std::vector<std::vector<int>>{{1, 1}, {1, 0}});
  CHECK(graph_from_matrix(rows).adjacency() == testing::load_graph("golden.g").adjacency());
  CHECK_THROWS_AS(parse_matrix("1 1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 x\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 -1\n0 1\n"), ParseError);
}
