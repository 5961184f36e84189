#pragma once

// Sliding block codes between edge shifts, two-sided conjugacy checks, and
// eventual-conjugacy candidates given as finite window tables.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftgrp/boundary.hpp"
#include "shiftgrp/graph.hpp"
#include "shiftgrp/report.hpp"

namespace shiftgrp {

// An edge sequence without a base vertex. Admissible when consecutive edges
// chain.
using Word = std::vector<Edge>;

bool is_admissible(const Graph& g, const Word& w);
std::vector<Word> admissible_words(const Graph& g, std::size_t n);
// Closed paths of length p, one per starting position (so rotations count
// separately, matching |Per_p|).
std::vector<Word> periodic_words(const Graph& g, std::size_t p);
std::string to_string(const Graph& g, const Word& w);
// Comma-separated edge ids; "@" is the empty word.
Word parse_word(const Graph& g, std::string_view text);

// phi(x)_n = table(x_[n-memory, n+anticipation]).
struct BlockCode {
  Graph source;
  Graph target;
  std::size_t memory = 0;
  std::size_t anticipation = 0;
  std::map<Word, Edge> table;

  std::size_t window() const noexcept { return memory + 1 + anticipation; }
};

// Checks totality on admissible windows and that overlapping windows map to
// chaining edges; throws DomainError otherwise.
BlockCode make_block_code(const Graph& e, const Graph& f, std::size_t memory,
                          std::size_t anticipation, std::map<Word, Edge> table);
BlockCode identity_code(const Graph& g);

// Header "code E -> F memory m anticipation a", then "w => f" lines.
BlockCode parse_block_code(const Graph& e, const Graph& f, std::string_view text);
std::string format_block_code(const BlockCode& c, const std::string& e_name = "E",
                              const std::string& f_name = "F");

// The 2-block presentation of g: the graph of its edge-adjacency matrix
// (vertex i is the i-th edge of g) with the 2-block code and its 1-block
// inverse.
struct HigherBlockPresentation {
  Graph graph;
  BlockCode code;
  BlockCode inverse;
};
HigherBlockPresentation two_block_presentation(const Graph& g);

// Output position n is read from input positions n-memory .. n+anticipation
// (indices wrap for periodic input).
Word apply_periodic(const BlockCode& c, const Word& cycle);
// Output has length |w| - memory - anticipation; entry i sits over input
// position i + memory.
Word apply_window(const BlockCode& c, const Word& w);
// One-sided application with the window anchored at n:
// out_n = table(x_[n, n+window)).
LassoPoint apply_anchored(const BlockCode& c, const LassoPoint& x);

// Verdicts "shift-commutation", "periodic-inverse" and "window-inverse".
Report check_two_sided_conjugacy(const BlockCode& c, const BlockCode& cinv, std::size_t max_period);

// The one-sided map pi(x)_n = c.table(x_[n, n+m+a]) and a collapse bound l
// with pi(x) = pi(x') => sigma^l(x) = sigma^l(x').
struct OneSidedMap {
  BlockCode pi;  // memory 0
  std::size_t collapse = 0;
  // Symbols at the right end of a window that the inverse cannot recover:
  // anticipation(c) + anticipation(cinv).
  std::size_t trim = 0;
};

// Takes l = memory(c) + memory(cinv) and validates it on all windows of
// length l + window(pi) + anticipation(cinv) + `slack`. Throws
// InconsistencyError when the validation fails.
OneSidedMap induced_one_sided_map(const BlockCode& c, const BlockCode& cinv, std::size_t slack = 3);
// True when equal pi-images force all words of length `width` to agree on
// positions [l, width - trim).
bool collapse_bound_holds(const BlockCode& pi, std::size_t l, std::size_t trim, std::size_t width);
// Decrements the collapse bound while validation still passes.
OneSidedMap minimize_collapse(const OneSidedMap& m, std::size_t slack = 3);

// h is given on E-words of length 1..depth and k, k' on windows of fixed
// width. Words in the h tables map to the determined prefix of the image.
struct EventualConjugacyCandidate {
  Graph source;
  Graph target;
  std::map<Word, Word> h;
  std::map<Word, Word> hinv;
  std::size_t k_window = 1;
  std::map<Word, std::size_t> k;
  std::size_t kprime_window = 1;
  std::map<Word, std::size_t> kprime;

  std::size_t h_depth() const;
  std::size_t hinv_depth() const;
};

// Checks prefix consistency, coverage and path validity; throws
// MalformedCandidateError.
void validate_candidate(const EventualConjugacyCandidate& c);

// Determined prefix of h(x) for x in Z(w); words longer than the table are
// truncated.
Word image_prefix(const std::map<Word, Word>& table, std::size_t depth, const Word& w);
// nullopt when w is shorter than the window.
std::optional<std::size_t> window_value(const std::map<Word, std::size_t>& table, std::size_t width,
                                        const Word& w);

// Candidate with h and h^-1 read off a memory-0 code pair and k = k' = 0.
// Tables are filled to `depth`.
EventualConjugacyCandidate candidate_from_codes(const BlockCode& c, const BlockCode& cinv,
                                                std::size_t depth);
// Swaps the roles of E and F.
EventualConjugacyCandidate swap_direction(const EventualConjugacyCandidate& c);

// Sections [h], [hinv], [k], [kprime] with "word => word" and
// "word => integer" lines.
EventualConjugacyCandidate parse_candidate(const Graph& e, const Graph& f, std::string_view text);
std::string format_candidate(const EventualConjugacyCandidate& c);

// Verdicts "h-equation", "hinv-equation" and "inverse" over all admissible
// words of length `depth`. Three-valued: a refuted word fails, an empty
// comparable overlap is inconclusive.
Report check_eventual_conjugacy(const EventualConjugacyCandidate& c, std::size_t depth);

}  // namespace shiftgrp
