#pragma once

// The graph groupoid: triples (x, m - n, y) with sigma^m(x) = sigma^n(y),
// restricted to lasso points, together with weight cocycles.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shiftgrp/boundary.hpp"
#include "shiftgrp/graph.hpp"
#include "shiftgrp/rational.hpp"

namespace shiftgrp {

class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(std::vector<Rational> per_edge) : weights_(std::move(per_edge)) {}

  static WeightFunction constant(const Graph& g, Rational value);
  // "1" (constant) or "a=1,b=-3/2" (every edge listed).
  static WeightFunction parse(const Graph& g, std::string_view text);

  const Rational& operator()(Edge e) const { return weights_.at(e); }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<Rational>& values() const noexcept { return weights_; }

 private:
  std::vector<Rational> weights_;
};

Rational extend_weight(const WeightFunction& k, const Path& mu);

// (x, p, y) with a stored witness (m, n): p = m - n and
// sigma^m(x) = sigma^n(y). Identity ignores the witness.
struct GroupoidElement {
  LassoPoint x;
  std::int64_t p = 0;
  LassoPoint y;
  std::size_t m = 0;
  std::size_t n = 0;

  bool operator==(const GroupoidElement& o) const { return p == o.p && x == o.x && y == o.y; }
  bool operator<(const GroupoidElement& o) const;
};

struct ElementHash {
  std::size_t operator()(const GroupoidElement& g) const noexcept;
};

// Throws DomainError when sigma^m(x) != sigma^n(y).
GroupoidElement make_element(const Graph& g, const LassoPoint& x, const LassoPoint& y,
                             std::size_t m, std::size_t n);
GroupoidElement unit(const LassoPoint& x);
bool is_unit(const GroupoidElement& g);

// Throws ComposabilityError when a.y != b.x.
GroupoidElement compose(const Graph& g, const GroupoidElement& a, const GroupoidElement& b);
GroupoidElement inverse(const GroupoidElement& a);

Rational cocycle_value(const Graph& g, const WeightFunction& k, const GroupoidElement& a);

// Tails used by the finite samples: for each primitive cycle of length <= D
// reachable from v, the shortest lead-in followed by the cycle forever, plus
// the shortest path to each reachable sink.
std::vector<LassoPoint> witness_lassos(const Graph& g, Vertex v, std::size_t depth);

// All (mu z, |mu| - |nu|, nu z) with |mu|, |nu| <= D and z a witness lasso at
// r(mu) = r(nu); sorted, duplicates removed.
std::vector<GroupoidElement> elements_to_depth(const Graph& g, std::size_t depth);

std::string to_string(const Graph& g, const GroupoidElement& a);

}  // namespace shiftgrp
