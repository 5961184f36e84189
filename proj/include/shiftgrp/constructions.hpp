#pragma once

// Constructive passages between (eventual) conjugacies of edge shifts and
// cocycle-preserving isomorphisms of graph groupoids and their
// stabilizations.
//
// Graphs with sinks are not supported here; every construction throws
// PreconditionError on them.

#include <cstddef>
#include <optional>
#include <vector>

#include "shiftgrp/codes.hpp"
#include "shiftgrp/stabilization.hpp"
#include "shiftgrp/table.hpp"

namespace shiftgrp {

// A table and the table of the inverse isomorphism.
struct IsoTables {
  BisectionTable forward;
  BisectionTable inverse;
};

// What a table determines about h(x) for x in Z(w): a prefix of h(x), its
// start vertex when known, and the lag |beta| of the generator piece at x
// when all candidate pieces agree on it.
struct ImagePrefix {
  Word prefix;
  std::optional<Vertex> start;
  std::optional<std::size_t> lag;
};

// Folds the edge rules right to left along w, intersecting with unit rules
// at each position. Throws InconsistencyError when no piece fits.
ImagePrefix determined_image(const Graph& e, const Graph& f, const BisectionTable& t, const Path& w);

// The table of (x, n, y) -> (h(x), n, h(y)): each Z(e, r(e)) is cut into
// cells Z(e tau; tau) on which k is constant and h is determined, each cell
// giving the piece Z(h(x)_[0,k+1); h(sigma x)_[0,k)). Cells are merged into
// one rule per edge when their pieces stay distinguishable.
//
// Throws PreconditionError when check_eventual_conjugacy refutes the
// candidate at `depth` and InconclusiveError when it is inconclusive or the
// tables are too shallow.
IsoTables iso_from_eventual_conjugacy(const EventualConjugacyCandidate& c, std::size_t depth);
BisectionTable table_from_candidate(const EventualConjugacyCandidate& c);

// Reads h off the unit action and k off the lags of the generator pieces, at
// the smallest window that fixes them; k' and h^-1 come from the inverse
// table. Throws PreconditionError for levelled tables or when verify_table
// with unit weights fails at `verify_depth`.
EventualConjugacyCandidate eventual_conjugacy_from_iso(const Graph& e, const Graph& f, const IsoTables& t,
                                                       std::size_t depth, std::size_t verify_depth = 3);

// The relation on E^L that identifies words whose cylinders meet a common
// pi-fibre. Classes are listed in lexicographic order, members sorted.
struct EquivalenceRelationOnWords {
  std::size_t length = 0;
  std::vector<std::vector<Path>> classes;

  // (class index, position inside the class); throws DomainError for
  // words of the wrong length.
  std::pair<std::size_t, std::size_t> locate(const Path& mu) const;
};

// Residue-class bookkeeping: in a class of size r the t-th member owns
// A = {n : n = t mod r} with f(n) = (n - t) / r.
struct LevelBookkeeping {
  const EquivalenceRelationOnWords* relation = nullptr;

  std::size_t inverse_f(const Path& mu, std::size_t n) const;
  std::optional<std::size_t> f(const Path& mu, std::size_t n) const;
  // The A-sets of each class partition {0, ..., 8r - 1} and f inverts
  // inverse_f there.
  bool validate() const;
};

struct StabilizedIso {
  OneSidedMap one_sided;
  std::size_t window = 0;  // L
  EquivalenceRelationOnWords relation;

  const Graph& source() const { return one_sided.pi.source; }
  const Graph& target() const { return one_sided.pi.target; }
  LevelBookkeeping levels() const { return {&relation}; }

  StabilizedPoint psi(const StabilizedPoint& x) const;
  StabilizedElement apply(const StabilizedElement& a) const;
  // The same map as a levelled table.
  BisectionTable table() const;
};

// Throws BoundExceededError when no window constant L <= window_cap works
// and InconsistencyError when the relation is not transitive.
StabilizedIso stabilized_iso_from_conjugacy(const BlockCode& c, const BlockCode& cinv,
                                            std::size_t window_cap = 8);

struct ConjugacyExtraction {
  BlockCode code;     // phi = sigma^L o psi, memory 0
  BlockCode inverse;  // two-sided inverse found by window search
  std::size_t lag_bound = 0;     // L
  std::size_t injectivity = 0;   // K
  std::size_t surjectivity = 0;  // H
  Report check;
};

// Throws PreconditionError for plain tables, InconsistencyError (with the
// failing witness) when the stabilized verifier rejects the table at
// `verify_depth`, and BoundExceededError when a window search passes `cap`.
ConjugacyExtraction conjugacy_from_stabilized_iso(const Graph& e, const Graph& f, const BisectionTable& t,
                                                  std::size_t verify_depth = 3, std::size_t cap = 8);

}  // namespace shiftgrp
