#include "doctest.h"

#include "shiftgrp/errors.hpp"
#include "shiftgrp/invariants.hpp"
#include "support.hpp"

using namespace shiftgrp;

TEST_CASE("periodic point counts") {
  auto e2 = testing::load_graph("e2.g");
  for (std::size_t p = 1; p <= 6; ++p) CHECK(periodic_count(e2, p) == (std::int64_t{1} << p));
  auto loop = testing::load_graph("loop.g");
  for (std::size_t p = 1; p <= 6; ++p) CHECK(periodic_count(loop, p) == 1);
  auto gm = testing::load_graph("golden.g");
  CHECK(periodic_count(gm, 1) == 1);
  CHECK(periodic_count(gm, 2) == 3);
  CHECK_THROWS_AS(periodic_count(gm, 0), DomainError);
}

TEST_CASE("periodic counts agree with cycle enumeration") {
  for (auto const& name : testing::corpus_graph_files()) {
    auto g = testing::load_graph(name);
    for (std::size_t p = 1; p <= 5; ++p) CHECK(periodic_count(g, p) == testing::count_closed_walks(g, p));
  }
}

TEST_CASE("Smith diagonals") {
  CHECK(smith_diagonal(1, {-2}) == std::vector<std::int64_t>{2});
  CHECK(smith_diagonal(2, {2, 0, 0, 3}) == std::vector<std::int64_t>{1, 6});
  CHECK(smith_diagonal(2, {4, 6, 6, 4}) == std::vector<std::int64_t>{2, 10});
  CHECK(smith_diagonal(2, {0, 0, 0, 0}) == std::vector<std::int64_t>{0, 0});
  CHECK(smith_diagonal(3, {2, 4, 4, -6, 6, 12, 10, -4, -16}) == std::vector<std::int64_t>{2, 6, 12});
}

TEST_CASE("Bowen-Franks groups") {
  CHECK(bowen_franks(testing::load_graph("e2.g")) == AbelianGroupPresentation{});
  CHECK(bowen_franks(testing::load_graph("golden.g")) == AbelianGroupPresentation{});
  auto three = parse_graph("v; a: v -> v; b: v -> v; c: v -> v;");
  CHECK(bowen_franks(three) == AbelianGroupPresentation{0, {2}});
  CHECK(to_string(bowen_franks(three)) == "Z/2");
  auto loop = testing::load_graph("loop.g");
  CHECK(bowen_franks(loop) == AbelianGroupPresentation{1, {}});
  CHECK(to_string(AbelianGroupPresentation{}) == "0");
}

TEST_CASE("Bowen-Franks groups ignore vertex relabelling") {
  auto a = graph_from_matrix({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  auto b = graph_from_matrix({{1, 0, 1}, {1, 1, 0}, {0, 1, 1}});  // swap of the last two vertices
  CHECK(bowen_franks(a) == bowen_franks(b));
  CHECK(bowen_franks(testing::load_graph("tri.g")) ==
        bowen_franks(parse_graph("w; u; v; a: u -> v; b: u -> v; c: v -> w; d: w -> u; f: w -> w;")));
}
