#pragma once

// The groupoid of the stabilized graph SE, realized on pairs (x, i): the
// point of SE that walks i head edges down to s(x) and then follows x.
// SE itself is never built.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftgrp/boundary.hpp"
#include "shiftgrp/groupoid.hpp"
#include "shiftgrp/report.hpp"

namespace shiftgrp {

struct StabilizedPoint {
  LassoPoint base;
  std::size_t level = 0;

  auto operator<=>(const StabilizedPoint&) const = default;
  bool operator==(const StabilizedPoint&) const = default;
};

// Witness (m, n) satisfies m >= x.level, n >= y.level and
// sigma^(m - x.level)(x.base) = sigma^(n - y.level)(y.base). The integer p
// is the SE path-length cocycle m - n.
struct StabilizedElement {
  StabilizedPoint x;
  std::int64_t p = 0;
  StabilizedPoint y;
  std::size_t m = 0;
  std::size_t n = 0;

  bool operator==(const StabilizedElement& o) const { return p == o.p && x == o.x && y == o.y; }
  bool operator<(const StabilizedElement& o) const;
};

struct StabilizedElementHash {
  std::size_t operator()(const StabilizedElement& g) const noexcept;
};

StabilizedElement make_stab_element(const Graph& g, const StabilizedPoint& x,
                                    const StabilizedPoint& y, std::size_t m, std::size_t n);
StabilizedElement stab_unit(const StabilizedPoint& x);
StabilizedElement embed(const GroupoidElement& a);

StabilizedElement stab_compose(const Graph& g, const StabilizedElement& a,
                               const StabilizedElement& b);
StabilizedElement stab_inverse(const StabilizedElement& a);

// Head edges weigh 0, so only the base moves contribute.
Rational stab_cocycle(const Graph& g, const WeightFunction& k, const StabilizedElement& a);

// Base elements of elements_to_depth(g, D) lifted to levels i, j with total
// witness exponents at most D.
std::vector<StabilizedElement> stab_elements_to_depth(const Graph& g, std::size_t depth);

// Literal "(a|b @ 3)".
StabilizedPoint parse_stab_point(const Graph& g, std::string_view text);
std::string to_string(const Graph& g, const StabilizedPoint& x);
std::string to_string(const Graph& g, const StabilizedElement& a);

using StabilizedMap = std::function<StabilizedElement(const StabilizedElement&)>;

// Depth-bounded verification of a candidate isomorphism G_SE -> G_SF:
// bijectivity on the sample, morphism on composable sampled pairs and exact
// preservation of the k-bar cocycles.
Report verify_stabilized_map(const Graph& e, const Graph& f, const StabilizedMap& phi,
                             const WeightFunction& ke, const WeightFunction& kf,
                             std::size_t depth);

}  // namespace shiftgrp
