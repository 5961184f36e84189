#pragma once

// Classical conjugacy and flow-equivalence invariants, used as independent
// oracles for negative results.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftgrp/graph.hpp"

namespace shiftgrp {

// Z^rank + sum of Z/t for t in torsion; torsion entries are > 1 and each
// divides the next.
struct AbelianGroupPresentation {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
  bool operator==(const AbelianGroupPresentation&) const = default;
};

std::string to_string(const AbelianGroupPresentation& g);

// tr(A^p) for the edge-count adjacency matrix A. Throws DomainError for p = 0
// and BoundExceededError on 64-bit overflow.
std::int64_t periodic_count(const Graph& g, std::size_t p);

// Diagonal of the Smith normal form of a square integer matrix (row-major),
// with nonnegative entries each dividing the next.
std::vector<std::int64_t> smith_diagonal(std::size_t n, std::vector<std::int64_t> m);

// cokernel of I - A^t.
AbelianGroupPresentation bowen_franks(const Graph& g);

}  // namespace shiftgrp
