#pragma once

// Exact Leavitt path algebra over the rationals, in the spanning set of words
// s_mu s_nu^* with r(mu) = r(nu).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftgrp/groupoid.hpp"
#include "shiftgrp/rational.hpp"
#include "shiftgrp/report.hpp"
#include "shiftgrp/table.hpp"

namespace shiftgrp {

struct LpaWord {
  Path mu;
  Path nu;
  auto operator<=>(const LpaWord&) const = default;
  bool operator==(const LpaWord&) const = default;
};

class LpaElement {
 public:
  LpaElement() = default;

  static LpaElement word(const Graph& g, const Path& mu, const Path& nu, Rational c = 1);
  static LpaElement vertex(Vertex v) { return word_unchecked({vertex_path(v), vertex_path(v)}, 1); }
  static LpaElement edge(const Graph& g, Edge e);
  static LpaElement edge_star(const Graph& g, Edge e);

  const std::map<LpaWord, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const LpaWord& w, const Rational& c);
  LpaElement& operator+=(const LpaElement& o);
  LpaElement& operator-=(const LpaElement& o);
  LpaElement operator+(const LpaElement& o) const;
  LpaElement operator-(const LpaElement& o) const;
  LpaElement scaled(const Rational& c) const;

  // Term-wise identity; use lpa_equal for equality in the algebra.
  bool operator==(const LpaElement&) const = default;

 private:
  static LpaElement word_unchecked(const LpaWord& w, Rational c);
  std::map<LpaWord, Rational> terms_;
};

LpaElement multiply(const Graph& g, const LpaElement& a, const LpaElement& b);
LpaElement star(const LpaElement& a);

// Expands terms by p_v = sum_e s_e s_e^* until, within each z-degree, every
// term has |nu| = max(d, largest |nu| present). Throws AlignmentError naming
// the sink when a term ends at one.
LpaElement normal_form(const Graph& g, const LpaElement& a, std::size_t d = 0);
bool lpa_equal(const Graph& g, const LpaElement& a, const LpaElement& b);

// (z-degree, k-weight) of a homogeneous element; nullopt for mixed ones and
// for zero.
struct GradedDegree {
  std::int64_t z = 0;
  Rational weight;
  bool operator==(const GradedDegree&) const = default;
};
std::optional<GradedDegree> degree(const Graph& g, const LpaElement& a, const WeightFunction& k);

// Literal syntax: terms "c * s(mu) * st(nu)" or "c * p(v)" joined by + or -;
// the coefficient and either factor may be omitted.
LpaElement parse_lpa(const Graph& g, std::string_view text);
std::string to_string(const Graph& g, const LpaElement& a);

// Images of the generators p_v and s_e of L(E) inside L(F).
struct GeneratorImages {
  std::vector<LpaElement> vertex;
  std::vector<LpaElement> edge;
};

GeneratorImages identity_images(const Graph& g);
// Image of s_mu s_nu^* under the homomorphism the generators determine.
LpaElement image_of_word(const Graph& e, const Graph& f, const GeneratorImages& images, const LpaWord& w);

// p_v -> sum of s_alpha s_alpha^* over the unit pieces of rules at v;
// s_e -> sum of s_alpha s_beta^* over the pieces of the rules for e.
// Throws PreconditionError for levelled tables.
GeneratorImages induced_hom_from_table(const Graph& e, const Graph& f, const BisectionTable& t);

// Verdicts "projections", "CK1", "CK2", "CK3", "diagonal" and "grading". When
// `inverse` is given, diagonal preservation is also checked backwards.
Report verify_generator_hom(const Graph& e, const Graph& f, const GeneratorImages& images,
                            const WeightFunction& ke, const WeightFunction& kf, std::size_t depth,
                            const GeneratorImages* inverse = nullptr);

}  // namespace shiftgrp
