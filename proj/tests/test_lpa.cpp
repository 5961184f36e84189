#include "doctest.h"

#include <random>
#include <set>

#include "shiftgrp/errors.hpp"
#include "shiftgrp/lpa.hpp"
#include "support.hpp"

using namespace shiftgrp;

using testing::random_element;
using testing::words_to;

TEST_CASE("products of generators") {
  auto sink = testing::load_graph("sink.g");
  CHECK(multiply(sink, LpaElement::vertex(0), LpaElement::vertex(1)).is_zero());

  auto e2 = testing::load_graph("e2.g");
  for (Edge e = 0; e < 2; ++e)
    CHECK(multiply(e2, LpaElement::edge_star(e2, e), LpaElement::edge(e2, e)) == LpaElement::vertex(e2.rng(e)));
  auto ab = parse_lpa(e2, "s(a)*st(b)");
  auto ba = parse_lpa(e2, "s(b)*st(a)");
  CHECK(multiply(e2, ab, ba) == parse_lpa(e2, "s(a)*st(a)"));
  CHECK(multiply(e2, ab, ab).is_zero());
}

TEST_CASE("normal forms") {
  auto e2 = testing::load_graph("e2.g");
  auto p = LpaElement::vertex(0);
  auto sum = parse_lpa(e2, "s(a)*st(a) + s(b)*st(b)");
  CHECK(normal_form(e2, p) == p);
  CHECK(normal_form(e2, p - sum).is_zero());
  CHECK(lpa_equal(e2, p, sum));
  CHECK(normal_form(e2, LpaElement{}).is_zero());
  CHECK(normal_form(e2, parse_lpa(e2, "s(a)*st(a)"), 2) == parse_lpa(e2, "s(a,a)*st(a,a) + s(a,b)*st(a,b)"));

  auto sink = testing::load_graph("sink.g");
  CHECK_THROWS_AS(normal_form(sink, parse_lpa(sink, "p(w)"), 1), AlignmentError);
}

TEST_CASE("graded degrees") {
  auto e2 = testing::load_graph("e2.g");
  auto k = WeightFunction::parse(e2, "a=2,b=3");
  CHECK(degree(e2, LpaElement::vertex(0), k) == GradedDegree{0, 0});
  CHECK(degree(e2, parse_lpa(e2, "s(a,b)*st(a)"), k) == GradedDegree{1, 3});
  auto mixed = parse_lpa(e2, "s(a)*st(a) + s(a)*st(b)");
  CHECK_FALSE(degree(e2, mixed, k).has_value());
  CHECK(degree(e2, mixed, WeightFunction::constant(e2, 1)) == GradedDegree{0, 0});
  CHECK_FALSE(degree(e2, LpaElement{}, k).has_value());
}

TEST_CASE("element literals") {
  auto e2 = testing::load_graph("e2.g");
  auto x = parse_lpa(e2, "1/2*s(a,b)*st(b) + 1*p(v)");
  CHECK(x.terms().size() == 2);
  CHECK(parse_lpa(e2, to_string(e2, x)) == x);
  CHECK(parse_lpa(e2, "-3*s(a) - st(b)") == LpaElement::edge(e2, 0).scaled(-3) - LpaElement::edge_star(e2, 1));
  CHECK_THROWS(parse_lpa(e2, "s(a"));
  CHECK_THROWS(parse_lpa(e2, "s(a)*st(q)"));
}

TEST_CASE("multiplication is associative and star is an anti-involution") {
  for (auto const& name : {"e2.g", "golden.g", "tri.g"}) {
    auto g = testing::load_graph(name);
    auto words = words_to(g, 3);
    std::mt19937 rng(20240917);
    for (int i = 0; i < 150; ++i) {
      auto a = random_element(g, words, rng);
      auto b = random_element(g, words, rng);
      auto c = random_element(g, words, rng);
      CHECK(multiply(g, multiply(g, a, b), c) == multiply(g, a, multiply(g, b, c)));
      CHECK(star(multiply(g, a, b)) == multiply(g, star(b), star(a)));
      CHECK(star(star(a)) == a);
    }
  }
}

TEST_CASE("degrees add under multiplication") {
  auto tri = testing::load_graph("tri.g");
  auto k = WeightFunction::parse(tri, "a=1/2,b=-1,c=2,d=0,f=3/4");
  auto words = words_to(tri, 3);
  for (auto const& x : words)
    for (auto const& y : words) {
      auto a = LpaElement::word(tri, x.mu, x.nu);
      auto b = LpaElement::word(tri, y.mu, y.nu);
      auto ab = multiply(tri, a, b);
      if (ab.is_zero()) continue;
      auto da = *degree(tri, a, k), db = *degree(tri, b, k);
      CHECK(degree(tri, ab, k) == GradedDegree{da.z + db.z, da.weight + db.weight});
    }
}

TEST_CASE("the diagonal is a commutative subalgebra") {
  auto gm = testing::load_graph("golden.g");
  std::vector<LpaElement> diag;
  for (std::size_t n = 0; n <= 3; ++n)
    for (auto const& mu : enumerate_paths(gm, std::nullopt, n)) diag.push_back(LpaElement::word(gm, mu, mu));
  auto diagonal = [](const LpaElement& x) {
    for (auto const& [w, c] : x.terms())
      if (w.mu != w.nu) return false;
    return true;
  };
  for (auto const& a : diag) {
    CHECK(star(a) == a);
    for (auto const& b : diag) {
      auto ab = multiply(gm, a, b);
      CHECK(diagonal(ab));
      CHECK(lpa_equal(gm, ab, multiply(gm, b, a)));
    }
  }
}

TEST_CASE("single loop words have one normal form per degree") {
  auto loop = testing::load_graph("loop.g");
  std::map<std::int64_t, std::set<LpaElement, bool (*)(const LpaElement&, const LpaElement&)>> forms;
  auto less = [](const LpaElement& a, const LpaElement& b) { return a.terms() < b.terms(); };
  for (auto const& w : words_to(loop, 4)) {
    auto z = static_cast<std::int64_t>(w.mu.length()) - static_cast<std::int64_t>(w.nu.length());
    auto [it, fresh] = forms.try_emplace(z, +less);
    it->second.insert(normal_form(loop, LpaElement::word(loop, w.mu, w.nu), 4));
  }
  CHECK(forms.size() == 9);
  for (auto const& [z, set] : forms) {
    CHECK(set.size() == 1);
    auto const& only = *set.begin();
    REQUIRE(only.terms().size() == 1);
    auto const& w = only.terms().begin()->first;
    CHECK(w.nu.length() == 4);
    CHECK(static_cast<std::int64_t>(w.mu.length()) == 4 + z);
  }
}

TEST_CASE("identity images satisfy every relation") {
  for (auto const& name : {"e2.g", "golden.g", "tri.g"}) {
    auto g = testing::load_graph(name);
    auto k = WeightFunction::constant(g, Rational(2, 3));
    auto id = identity_images(g);
    CHECK(verify_generator_hom(g, g, id, k, k, 3, &id).passed());
  }
}
