#include "doctest.h"

#include "shiftgrp/codes.hpp"
#include "shiftgrp/errors.hpp"
#include "shiftgrp/invariants.hpp"
#include "support.hpp"

using namespace shiftgrp;

namespace {

struct Corpus {
  Graph e2 = testing::load_graph("e2.g");
  Graph f2 = testing::load_graph("f2.g");
  BlockCode two_block = parse_block_code(e2, f2, testing::read_data("e2_f2.bc"));
  BlockCode first = parse_block_code(f2, e2, testing::read_data("f2_e2.bc"));
  BlockCode second = parse_block_code(f2, e2, testing::read_data("f2_e2_second.bc"));
  BlockCode trailing = parse_block_code(e2, f2, testing::read_data("e2_f2_memory1.bc"));
};

std::vector<LassoPoint> lassos(const Graph& g, std::size_t max_cycle) {
  std::vector<LassoPoint> out;
  for (std::size_t p = 1; p <= max_cycle; ++p)
    for (auto const& w : periodic_words(g, p)) {
      out.push_back(LassoPoint::make(g, vertex_path(g.src(w.front())), Path{g.src(w.front()), w}));
      for (Edge e = 0; e < g.edge_count(); ++e)
        if (g.rng(e) == g.src(w.front()))
          out.push_back(LassoPoint::make(g, Path{g.src(e), {e}}, Path{g.rng(e), w}));
    }
  return out;
}

}  // namespace

TEST_CASE("applying codes to periodic words and windows") {
  Corpus c;
  auto ab = parse_word(c.e2, "a,b");
  CHECK(apply_periodic(c.two_block, ab) == parse_word(c.f2, "e1_2,e2_1"));
  CHECK(apply_periodic(identity_code(c.e2), ab) == ab);
  CHECK(apply_window(c.two_block, parse_word(c.e2, "a,a,b")) == parse_word(c.f2, "e1_1,e1_2"));
  CHECK(apply_window(c.trailing, parse_word(c.e2, "a,a,b")) == parse_word(c.f2, "e1_1,e1_2"));

  auto gm = testing::load_graph("golden.g");
  CHECK_THROWS_AS(apply_periodic(identity_code(gm), parse_word(gm, "e1_2,e1_2")), DomainError);
  CHECK_THROWS_AS(apply_window(identity_code(gm), parse_word(gm, "e2_1,e2_1")), DomainError);
}

TEST_CASE("codes commute with the shift on periodic words") {
  Corpus c;
  for (std::size_t p = 1; p <= 5; ++p)
    for (auto const& w : periodic_words(c.e2, p)) {
      Word rotated(w.begin() + 1, w.end());
      rotated.push_back(w.front());
      auto img = apply_periodic(c.two_block, w);
      Word img_rot(img.begin() + 1, img.end());
      img_rot.push_back(img.front());
      CHECK(apply_periodic(c.two_block, rotated) == img_rot);
    }
}

TEST_CASE("block code files round trip") {
  Corpus c;
  CHECK(parse_block_code(c.e2, c.f2, format_block_code(c.two_block)).table == c.two_block.table);
  CHECK(c.trailing.memory == 1);
  CHECK(c.trailing.anticipation == 0);
  CHECK_THROWS_AS(parse_block_code(c.e2, c.f2, "code E -> F memory 0 anticipation 0\na => e1_1\n"), DomainError);
}

TEST_CASE("two-sided conjugacy checks") {
  Corpus c;
  CHECK(check_two_sided_conjugacy(c.two_block, c.first, 6).passed());
  CHECK(check_two_sided_conjugacy(c.second, c.trailing, 6).passed());
  CHECK(check_two_sided_conjugacy(identity_code(c.e2), identity_code(c.e2), 6).passed());

  auto corrupted = c.first;
  corrupted.table[parse_word(c.f2, "e1_1")] = *c.e2.find_edge("b");
  auto rep = check_two_sided_conjugacy(c.two_block, corrupted, 6);
  CHECK(rep.overall() == Outcome::Fail);
  auto v = rep.find("periodic-inverse");
  REQUIRE(v);
  CHECK(v->outcome == Outcome::Fail);
  CHECK_FALSE(v->witness.empty());

  CHECK_THROWS_AS(check_two_sided_conjugacy(c.two_block, c.two_block, 3), InterfaceError);
}

TEST_CASE("conjugate pairs share periodic point counts") {
  Corpus c;
  for (std::size_t p = 1; p <= 6; ++p) {
    CHECK(periodic_count(c.e2, p) == periodic_count(c.f2, p));
    CHECK(static_cast<std::int64_t>(periodic_words(c.e2, p).size()) == periodic_count(c.e2, p));
  }
}

TEST_CASE("one-sided maps and their collapse bounds") {
  Corpus c;
  auto m = induced_one_sided_map(c.two_block, c.first);
  CHECK(m.collapse == 0);
  CHECK(m.pi.memory == 0);
  CHECK(m.pi.table == c.two_block.table);

  auto id = induced_one_sided_map(identity_code(c.e2), identity_code(c.e2));
  CHECK(id.collapse == 0);

  auto split = induced_one_sided_map(c.second, c.trailing);
  CHECK(split.collapse == 1);
  CHECK_FALSE(collapse_bound_holds(split.pi, 0, split.trim, 6));
  CHECK(minimize_collapse(split).collapse == 1);

  // Brute force over lasso pairs: equal images force equal tails after l.
  auto points = lassos(c.f2, 4);
  for (auto const& x : points)
    for (auto const& y : points)
      if (apply_anchored(split.pi, x) == apply_anchored(split.pi, y)) CHECK(shift(c.f2, x, 1) == shift(c.f2, y, 1));
}

TEST_CASE("one-sided maps intertwine the shifts") {
  Corpus c;
  for (auto const& [code, inv] : {std::pair{&c.two_block, &c.first}, {&c.second, &c.trailing}}) {
    auto m = induced_one_sided_map(*code, *inv);
    for (auto const& x : lassos(code->source, 6))
      CHECK(apply_anchored(m.pi, shift(code->source, x, 1)) == shift(code->target, apply_anchored(m.pi, x), 1));
  }
}

TEST_CASE("eventual conjugacy verdicts") {
  auto e2 = testing::load_graph("e2.g");
  auto f2 = testing::load_graph("f2.g");
  auto good = parse_candidate(e2, f2, testing::read_data("e2_f2.cand"));
  CHECK(check_eventual_conjugacy(good, 5).overall() == Outcome::Pass);

  auto lagged = parse_candidate(e2, e2, testing::read_data("e2_lagged_h.cand"));
  auto rep = check_eventual_conjugacy(lagged, 5);
  CHECK(rep.find("h-equation")->outcome == Outcome::Fail);
  CHECK_FALSE(rep.find("h-equation")->witness.empty());

  auto shallow = parse_candidate(e2, e2, testing::read_data("e2_shallow.cand"));
  CHECK(check_eventual_conjugacy(shallow, 3).overall() == Outcome::Inconclusive);

  auto malformed = shallow;
  malformed.h[parse_word(e2, "a")] = parse_word(e2, "a");
  malformed.h[parse_word(e2, "a,a")] = parse_word(e2, "b");
  CHECK_THROWS_AS(check_eventual_conjugacy(malformed, 2), MalformedCandidateError);
}

TEST_CASE("candidate files round trip") {
  auto e2 = testing::load_graph("e2.g");
  auto f2 = testing::load_graph("f2.g");
  auto cand = parse_candidate(e2, f2, testing::read_data("e2_f2.cand"));
  auto again = parse_candidate(e2, f2, format_candidate(cand));
  CHECK(again.h == cand.h);
  CHECK(again.hinv == cand.hinv);
  CHECK(again.k == cand.k);
  CHECK(again.kprime == cand.kprime);
  CHECK(cand.h_depth() == 4);
}

TEST_CASE("conjugacies are eventual conjugacies with zero lags") {
  Corpus c;
  auto cand = candidate_from_codes(c.two_block, c.first, 4);
  for (auto const& [w, n] : cand.k) CHECK(n == 0);
  CHECK(check_eventual_conjugacy(cand, 5).passed());
  CHECK(check_eventual_conjugacy(swap_direction(cand), 5).passed());
  CHECK_THROWS_AS(candidate_from_codes(c.trailing, c.second, 4), PreconditionError);
}
