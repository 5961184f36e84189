#pragma once

// Bisection tables: finite presentations of groupoid maps G_E -> G_F on the
// generating bisections Z(e, r(e)) and Z(v, v).
//
// A piece Z(alpha; beta) is read pointwise as the partial homeomorphism
// beta w -> alpha w. An edge rule Z(e tau; tau) -> pieces says that for
// x in Z(e tau) the generator (x, 1, sigma x) maps to the element of the
// matching piece whose source is h(sigma x), where h is the induced map on
// boundary points; the matching piece is the one whose beta is a prefix of
// h(sigma x). This makes h recursive,
//
//   h(x) = alpha . sigma^|beta| (h(sigma x)),
//
// and on an eventually periodic point the recursion has a unique fixed point
// whenever the pieces around the cycle gain length. Unit rules
// Z(tau; tau) -> Z(alpha; alpha) constrain h on Z(tau) and supply h at sinks.
//
// Levelled tables present maps G_SE -> G_SF. Their rules carry affine level
// expressions in a variable n: unit rules "@ n,n", head rules "@ n+1,n"
// (the head edge from level n+1 down to n) and edge rules "@ 0,0".

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shiftgrp/boundary.hpp"
#include "shiftgrp/groupoid.hpp"
#include "shiftgrp/report.hpp"
#include "shiftgrp/stabilization.hpp"

namespace shiftgrp {

// scale * n + offset; a constant when scale == 0.
struct LevelExpr {
  std::int64_t scale = 0;
  std::int64_t offset = 0;

  std::int64_t eval(std::int64_t n) const { return scale * n + offset; }
  bool operator==(const LevelExpr&) const = default;

  static LevelExpr constant(std::int64_t c) { return {0, c}; }
  static LevelExpr affine(std::int64_t a, std::int64_t b) { return {a, b}; }
};

LevelExpr parse_level(std::string_view text);
std::string to_string(const LevelExpr& l);

struct BasicBisection {
  Path mu;
  Path nu;
  bool operator==(const BasicBisection&) const = default;
};

struct BisectionPiece {
  Path alpha;
  Path beta;
  LevelExpr range_level;
  LevelExpr source_level;
  bool operator==(const BisectionPiece&) const = default;
};

struct BisectionRule {
  BasicBisection source;
  LevelExpr range_level;
  LevelExpr source_level;
  std::vector<BisectionPiece> image;
  bool operator==(const BisectionRule&) const = default;
};

enum class RuleKind { Unit, Edge, Head };

struct BisectionTable {
  bool levelled = false;
  std::vector<BisectionRule> rules;
  bool operator==(const BisectionTable&) const = default;
};

// Throws DomainError for rule sources that are not generator-shaped.
RuleKind rule_kind(const Graph& e, const BisectionRule& rule, bool levelled);

BisectionTable identity_table(const Graph& g, bool levelled = false);

// Line format: "Z(mu;nu) -> Z(a1;b1) | Z(a2;b2)", with "@ i,j" level
// annotations inside the parentheses for levelled tables. Paths use
// comma-separated edge ids or "@v".
BisectionTable parse_table(const Graph& e, const Graph& f, std::string_view text);
std::string format_table(const Graph& e, const Graph& f, const BisectionTable& t);

// Pointwise evaluation of a table. Results are memoized, so an instance must
// not be shared between threads.
class TableMap {
 public:
  // Validates rule shapes and path data; throws DomainError.
  TableMap(const Graph& e, const Graph& f, BisectionTable table);

  const Graph& source_graph() const { return e_; }
  const Graph& target_graph() const { return f_; }
  const BisectionTable& table() const { return table_; }

  // The induced map h on boundary points. Throws CoverageError when no rule
  // matches and InconsistencyError when the rules do not determine a unique
  // image.
  LassoPoint image_point(const LassoPoint& x);

  // Rule and piece used for the generator (x, 1, sigma x).
  std::pair<const BisectionRule*, const BisectionPiece*> edge_step(const LassoPoint& x);

  GroupoidElement apply(const GroupoidElement& a);
  StabilizedElement apply(const StabilizedElement& a);

 private:
  const BisectionRule& match(RuleKind kind, const LassoPoint& x) const;
  const BisectionPiece& unit_piece(const LassoPoint& x);
  void solve_cycle(const LassoPoint& x);
  GroupoidElement generator_image(const LassoPoint& z);
  StabilizedElement stab_edge_image(const LassoPoint& z);
  StabilizedElement stab_head_image(const LassoPoint& x, std::size_t level);
  StabilizedElement stab_unit_image(const StabilizedPoint& x);

  Graph e_;
  Graph f_;
  BisectionTable table_;
  std::vector<RuleKind> kinds_;
  std::unordered_map<LassoPoint, LassoPoint, LassoHash> h_;
  std::unordered_map<LassoPoint, std::pair<std::size_t, std::size_t>, LassoHash> steps_;
};

GroupoidElement apply_table(const Graph& e, const Graph& f, const BisectionTable& t,
                            const GroupoidElement& a);

using GroupoidMap = std::function<GroupoidElement(const GroupoidElement&)>;

Report verify_groupoid_map(const Graph& e, const Graph& f, const GroupoidMap& phi,
                           const WeightFunction& ke, const WeightFunction& kf,
                           std::size_t depth);

// Verdicts "bijectivity", "morphism" and "cocycle" over elements_to_depth(E, D).
Report verify_table(const Graph& e, const Graph& f, const BisectionTable& t,
                    const WeightFunction& ke, const WeightFunction& kf, std::size_t depth);

// Same verdicts for a levelled table over stab_elements_to_depth(E, D), with
// the weights extended by zero on head edges.
Report verify_stabilized_table(const Graph& e, const Graph& f, const BisectionTable& t,
                               const WeightFunction& ke, const WeightFunction& kf,
                               std::size_t depth);

}  // namespace shiftgrp
