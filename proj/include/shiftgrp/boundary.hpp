#pragma once

// Exactly representable boundary paths: finite paths into sinks and
// eventually periodic infinite paths stem . cycle^inf ("lassos").

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftgrp/graph.hpp"

namespace shiftgrp {

// Always held in canonical form: the cycle is primitive and the stem is as
// short as possible (its last edge differs from the cycle's last edge).
// Canonical forms make equality structural.
class LassoPoint {
 public:
  LassoPoint() = default;

  // Builds and canonicalizes stem . cycle^inf, or the finite path `stem`
  // when `cycle` is empty. Throws DomainError when the data does not describe
  // a boundary path.
  static LassoPoint make(const Graph& g, const Path& stem, const Path& cycle);
  static LassoPoint finite(const Graph& g, const Path& path);

  Vertex source() const noexcept { return body_->source; }
  const std::vector<Edge>& stem() const noexcept { return body_->stem; }
  const std::vector<Edge>& cycle() const noexcept { return body_->cycle; }
  bool is_infinite() const noexcept { return !body_->cycle.empty(); }
  // nullopt for infinite points.
  std::optional<std::size_t> length() const;

  Edge edge_at(std::size_t i) const;
  Path prefix(const Graph& g, std::size_t n) const;
  // True iff this point lies in Z(p).
  bool starts_with(const Path& p) const;

  // Prepends a path ending at this point's source.
  LassoPoint prepend(const Graph& g, const Path& p) const;

  std::size_t hash() const noexcept { return body_->hash; }

  // Ordered by source, then stem, then cycle.
  std::strong_ordering operator<=>(const LassoPoint& o) const;
  bool operator==(const LassoPoint& o) const;

 private:
  // Immutable and shared between copies.
  struct Body {
    Vertex source = 0;
    std::vector<Edge> stem;
    std::vector<Edge> cycle;
    std::size_t hash = 0;
  };
  static LassoPoint canonical(const Graph& g, Vertex source, std::vector<Edge> stem, std::vector<Edge> cycle);
  static const std::shared_ptr<const Body>& empty_body();

  std::shared_ptr<const Body> body_ = empty_body();
};

struct LassoHash {
  std::size_t operator()(const LassoPoint& x) const noexcept;
};

// sigma^n. Throws DomainError when x is finite and shorter than n.
LassoPoint shift(const Graph& g, const LassoPoint& x, std::size_t n);

// Z(base \ excluded).
struct CylinderSet {
  Path base;
  std::vector<Edge> excluded;
  bool operator==(const CylinderSet&) const = default;
};

bool member(const LassoPoint& x, const CylinderSet& z);

// Cells are Z(mu) for mu of length D plus the finite boundary paths shorter
// than D, which are singleton cells.
std::vector<CylinderSet> cylinder_partition(const Graph& g, std::size_t depth);

// A lasso inside Z(base), when the cylinder has infinite members.
std::optional<LassoPoint> lasso_witness(const Graph& g, const Path& base);

// Literal syntax "stem|cycle": "a|b,c" is a.(b c)^inf, "a,b|" is a finite
// path and "@v|" the vertex path at v.
LassoPoint parse_lasso(const Graph& g, std::string_view text);
std::string to_string(const Graph& g, const LassoPoint& x);

}  // namespace shiftgrp
