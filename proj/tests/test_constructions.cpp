#include "doctest.h"

#include "shiftgrp/constructions.hpp"
#include "shiftgrp/errors.hpp"
#include "shiftgrp/lpa.hpp"
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
  WeightFunction ones_e = WeightFunction::constant(e2, 1);
  WeightFunction ones_f = WeightFunction::constant(f2, 1);
};

}  // namespace

TEST_CASE("identity eventual conjugacy gives the identity table") {
  Corpus c;
  auto cand = candidate_from_codes(identity_code(c.e2), identity_code(c.e2), 3);
  auto iso = iso_from_eventual_conjugacy(cand, 3);
  CHECK(iso.forward == identity_table(c.e2));
  auto back = eventual_conjugacy_from_iso(c.e2, c.e2, iso, 3);
  for (auto const& [w, n] : back.k) CHECK(n == 0);
  for (auto const& [w, n] : back.kprime) CHECK(n == 0);
  for (auto const& [w, img] : back.h) CHECK(img == w);
}

TEST_CASE("the E2 to F2 table splits each edge by its successor") {
  Corpus c;
  auto cand = parse_candidate(c.e2, c.f2, testing::read_data("e2_f2.cand"));
  auto iso = iso_from_eventual_conjugacy(cand, 4);
  CHECK(iso.forward == parse_table(c.e2, c.f2, testing::read_data("e2_f2.tbl")));
  auto rep = verify_table(c.e2, c.f2, iso.forward, c.ones_e, c.ones_f, 3);
  CHECK(rep.passed());
}

TEST_CASE("refuted or inconclusive candidates are refused") {
  Corpus c;
  auto lagged = parse_candidate(c.e2, c.e2, testing::read_data("e2_lagged_h.cand"));
  CHECK_THROWS_AS(iso_from_eventual_conjugacy(lagged, 4), PreconditionError);
  auto shallow = parse_candidate(c.e2, c.e2, testing::read_data("e2_shallow.cand"));
  CHECK_THROWS_AS(iso_from_eventual_conjugacy(shallow, 3), InconclusiveError);
}

TEST_CASE("lags survive the round trip through tables") {
  Corpus c;
  auto cand = parse_candidate(c.e2, c.e2, testing::read_data("e2_lagged_identity.cand"));
  auto iso = iso_from_eventual_conjugacy(cand, 4);
  auto back = eventual_conjugacy_from_iso(c.e2, c.e2, iso, 4);
  CHECK(back.k_window == 1);
  CHECK(back.k == cand.k);
  CHECK(back.kprime == cand.kprime);
  CHECK(check_eventual_conjugacy(back, 4).passed());
}

TEST_CASE("levelled tables are not groupoid tables") {
  Corpus c;
  auto stab = parse_table(c.f2, c.e2, testing::read_data("f2_e2_stab.tbl"));
  CHECK_THROWS_AS(eventual_conjugacy_from_iso(c.f2, c.e2, {stab, stab}, 3), PreconditionError);
  CHECK_THROWS_AS(induced_hom_from_table(c.f2, c.e2, stab), PreconditionError);
}

TEST_CASE("tables that break the unit cocycle are refused") {
  Corpus c;
  auto bad = parse_table(c.e2, c.e2, "Z(@v;@v) -> Z(@v;@v)\nZ(a;@v) -> Z(a,a;a) | Z(a,b;@v)\nZ(b;@v) -> Z(b;@v)\n");
  CHECK_THROWS_AS(eventual_conjugacy_from_iso(c.e2, c.e2, {bad, identity_table(c.e2)}, 3), PreconditionError);
}

TEST_CASE("stabilizing the identity conjugacy") {
  Corpus c;
  auto s = stabilized_iso_from_conjugacy(identity_code(c.e2), identity_code(c.e2));
  CHECK(s.one_sided.collapse == 0);
  CHECK(s.window == 0);
  for (auto const& cls : s.relation.classes) CHECK(cls.size() == 1);
  auto x = StabilizedPoint{parse_lasso(c.e2, "a|b"), 4};
  CHECK(s.psi(x) == x);
  TableMap ours(c.e2, c.e2, s.table());
  for (auto const& a : stab_elements_to_depth(c.e2, 3)) CHECK(ours.apply(a) == a);
}

TEST_CASE("stabilizing the 2-block conjugacy") {
  Corpus c;
  auto s = stabilized_iso_from_conjugacy(c.two_block, c.first);
  CHECK(s.one_sided.collapse == 0);
  CHECK(s.window == 0);
  CHECK(s.relation.classes.size() == 1);
  auto x = StabilizedPoint{parse_lasso(c.e2, "a|b"), 3};
  CHECK(s.psi(x) == StabilizedPoint{parse_lasso(c.f2, "e1_2|e2_2"), 3});
}

TEST_CASE("stabilizing a memory-1 conjugacy uses residue classes") {
  Corpus c;
  auto s = stabilized_iso_from_conjugacy(c.second, c.trailing);
  CHECK(s.one_sided.collapse == 1);
  CHECK(s.window == 1);
  REQUIRE(s.relation.classes.size() == 2);
  CHECK(s.relation.classes[0].size() == 2);
  CHECK(s.relation.classes[1].size() == 2);
  auto levels = s.levels();
  CHECK(levels.validate());
  auto e11 = parse_path(c.f2, "e1_1");
  auto e21 = parse_path(c.f2, "e2_1");
  CHECK(s.relation.locate(e11) == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(s.relation.locate(e21) == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(levels.inverse_f(e11, 3) == 6);
  CHECK(levels.inverse_f(e21, 3) == 7);
  CHECK(levels.f(e21, 7) == std::optional<std::size_t>{3});
  CHECK_FALSE(levels.f(e21, 6).has_value());
  CHECK_THROWS_AS(s.relation.locate(parse_path(c.f2, "e1_1,e1_1")), DomainError);

  auto rep = verify_stabilized_map(
      c.f2, c.e2, [&](const StabilizedElement& a) { return s.apply(a); }, c.ones_f, c.ones_e, 3);
  CHECK(rep.passed());
}

TEST_CASE("bookkeeping partitions initial segments") {
  EquivalenceRelationOnWords rel;
  rel.length = 1;
  rel.classes = {{Path{0, {0}}, Path{0, {1}}, Path{0, {2}}}};
  LevelBookkeeping b{&rel};
  CHECK(b.validate());
  for (std::size_t n = 0; n < 24; ++n) {
    std::size_t owners = 0;
    for (auto const& mu : rel.classes[0]) {
      if (auto m = b.f(mu, n)) {
        ++owners;
        CHECK(b.inverse_f(mu, *m) == n);
      }
    }
    CHECK(owners == 1);
  }
}

TEST_CASE("extracting conjugacies from stabilized tables") {
  Corpus c;
  auto id = conjugacy_from_stabilized_iso(c.e2, c.e2, identity_table(c.e2, true));
  CHECK(id.code.table == identity_code(c.e2).table);
  CHECK(id.lag_bound == 0);
  CHECK(id.injectivity == 0);
  CHECK(id.surjectivity == 0);
  CHECK(id.check.passed());

  auto t = stabilized_iso_from_conjugacy(c.two_block, c.first).table();
  auto x = conjugacy_from_stabilized_iso(c.e2, c.f2, t);
  CHECK(x.check.passed());
  for (std::size_t p = 1; p <= 6; ++p)
    for (auto const& w : periodic_words(c.e2, p)) CHECK(apply_periodic(x.code, w) == apply_periodic(c.two_block, w));

  CHECK_THROWS_AS(conjugacy_from_stabilized_iso(c.e2, c.e2, identity_table(c.e2)), PreconditionError);
}

TEST_CASE("broken level arithmetic is reported with a witness") {
  Corpus c;
  auto t = parse_table(c.f2, c.e2, testing::read_data("f2_e2_stab_broken.tbl"));
  try {
    conjugacy_from_stabilized_iso(c.f2, c.e2, t);
    FAIL("expected an inconsistency");
  } catch (const InconsistencyError& e) {
    CHECK(std::string(e.what()).find("(") != std::string::npos);
  }
}

TEST_CASE("transported generator images") {
  Corpus c;
  CHECK(induced_hom_from_table(c.e2, c.e2, identity_table(c.e2)).edge == identity_images(c.e2).edge);

  auto fwd = parse_table(c.e2, c.f2, testing::read_data("e2_f2.tbl"));
  auto inv = parse_table(c.f2, c.e2, testing::read_data("f2_e2.tbl"));
  auto images = induced_hom_from_table(c.e2, c.f2, fwd);
  auto back = induced_hom_from_table(c.f2, c.e2, inv);
  CHECK(verify_generator_hom(c.e2, c.f2, images, c.ones_e, c.ones_f, 4, &back).passed());

  // The flip a <-> b is a groupoid automorphism but moves weight between edges.
  auto flip = parse_table(c.e2, c.e2, "Z(@v;@v) -> Z(@v;@v)\nZ(a;@v) -> Z(b;@v)\nZ(b;@v) -> Z(a;@v)\n");
  auto k = WeightFunction::parse(c.e2, "a=1,b=2");
  auto table_rep = verify_table(c.e2, c.e2, flip, k, k, 2);
  CHECK(table_rep.find("cocycle")->outcome == Outcome::Fail);
  CHECK(table_rep.find("morphism")->passed());
  auto rep = verify_generator_hom(c.e2, c.e2, induced_hom_from_table(c.e2, c.e2, flip), k, k, 3);
  for (auto const* name : {"projections", "CK1", "CK2", "CK3", "diagonal"}) CHECK(rep.find(name)->passed());
  CHECK(rep.find("grading")->outcome == Outcome::Fail);
  CHECK_FALSE(rep.find("grading")->witness.empty());
}

TEST_CASE("sinks are outside the constructions") {
  auto sink = testing::load_graph("sink.g");
  CHECK_THROWS_AS(stabilized_iso_from_conjugacy(identity_code(sink), identity_code(sink)), PreconditionError);
}
