#include "shiftgrp/codes.hpp"

#include <algorithm>
#include <sstream>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"

namespace shiftgrp {

bool is_admissible(const Graph& g, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= g.edge_count()) return false;
    if (i > 0 && g.rng(w[i - 1]) != g.src(w[i])) return false;
  }
  return true;
}

std::vector<Word> admissible_words(const Graph& g, std::size_t n) {
  if (n == 0) return {Word{}};
  std::vector<Word> out;
  for (auto& p : enumerate_paths(g, std::nullopt, n)) out.push_back(std::move(p.edges));
  return out;
}

std::vector<Word> periodic_words(const Graph& g, std::size_t p) {
  std::vector<Word> out;
  if (p == 0) return out;
  for (auto& w : admissible_words(g, p)) {
    if (g.rng(w.back()) == g.src(w.front())) out.push_back(std::move(w));
  }
  return out;
}

std::string to_string(const Graph& g, const Word& w) {
  if (w.empty()) return "@";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += g.edge_id(w[i]);
  }
  return out;
}

Word parse_word(const Graph& g, std::string_view text) {
  auto t = detail::trim(text);
  if (t.empty() || t == "@") return {};
  Word w;
  for (auto id : detail::split(t, ',')) {
    auto e = g.find_edge(detail::trim(id));
    if (!e) throw ReferenceError("unknown edge '" + std::string(detail::trim(id)) + "'");
    w.push_back(*e);
  }
  if (!is_admissible(g, w)) throw DomainError("word '" + std::string(t) + "' is not a path");
  return w;
}

BlockCode make_block_code(const Graph& e, const Graph& f, std::size_t memory,
                          std::size_t anticipation, std::map<Word, Edge> table) {
  BlockCode c{e, f, memory, anticipation, std::move(table)};
  auto w = c.window();
  for (auto const& [key, val] : c.table) {
    if (key.size() != w || !is_admissible(e, key)) {
      throw DomainError("code key " + to_string(e, key) + " is not an admissible window");
    }
    if (val >= f.edge_count()) throw DomainError("code value out of range");
  }
  for (auto const& key : admissible_words(e, w)) {
    if (!c.table.contains(key)) throw DomainError("code has no entry for " + to_string(e, key));
  }
  for (auto const& word : admissible_words(e, w + 1)) {
    Word left(word.begin(), word.end() - 1), right(word.begin() + 1, word.end());
    if (f.rng(c.table.at(left)) != f.src(c.table.at(right))) {
      throw DomainError("images of " + to_string(e, left) + " and " + to_string(e, right) +
                        " do not chain");
    }
  }
  return c;
}

BlockCode identity_code(const Graph& g) {
  std::map<Word, Edge> t;
  for (Edge e = 0; e < g.edge_count(); ++e) t[{e}] = e;
  return make_block_code(g, g, 0, 0, std::move(t));
}

BlockCode parse_block_code(const Graph& e, const Graph& f, std::string_view text) {
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::map<Word, Edge> table;
  std::size_t lineno = 0;
  for (auto line : detail::split(text, '\n')) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (!shape) {
      std::istringstream in{std::string(line)};
      std::string code, src, arrow, dst, mem_kw, ant_kw;
      long long m = -1, a = -1;
      in >> code >> src >> arrow >> dst >> mem_kw >> m >> ant_kw >> a;
      if (!in || code != "code" || arrow != "->" || mem_kw != "memory" || ant_kw != "anticipation" ||
          m < 0 || a < 0) {
        throw ParseError(lineno, "expected 'code E -> F memory m anticipation a'");
      }
      shape = {static_cast<std::size_t>(m), static_cast<std::size_t>(a)};
      continue;
    }
    auto arrow = line.find("=>");
    if (arrow == std::string_view::npos) throw ParseError(lineno, "expected 'word => edge'");
    Word key;
    Word val;
    try {
      key = parse_word(e, line.substr(0, arrow));
      val = parse_word(f, line.substr(arrow + 2));
    } catch (const ReferenceError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(lineno, err.what());
    }
    if (val.size() != 1) throw ParseError(lineno, "code value must be a single edge");
    if (!table.emplace(key, val[0]).second) throw ParseError(lineno, "duplicate window");
  }
  if (!shape) throw ParseError(lineno, "missing code header");
  return make_block_code(e, f, shape->first, shape->second, std::move(table));
}

std::string format_block_code(const BlockCode& c, const std::string& e_name, const std::string& f_name) {
  std::ostringstream out;
  out << "code " << e_name << " -> " << f_name << " memory " << c.memory << " anticipation "
      << c.anticipation << "\n";
  for (auto const& [k, v] : c.table) out << to_string(c.source, k) << " => " << c.target.edge_id(v) << "\n";
  return out.str();
}

HigherBlockPresentation two_block_presentation(const Graph& g) {
  auto n = g.edge_count();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (Edge i = 0; i < n; ++i) {
    for (Edge j = 0; j < n; ++j) a[i][j] = g.rng(i) == g.src(j) ? 1 : 0;
  }
  auto f = graph_from_matrix(a);
  std::vector<std::vector<std::optional<Edge>>> edge_of(n, std::vector<std::optional<Edge>>(n));
  for (Edge e = 0; e < f.edge_count(); ++e) edge_of[f.src(e)][f.rng(e)] = e;
  std::map<Word, Edge> code, inverse;
  for (Edge i = 0; i < n; ++i) {
    for (Edge j = 0; j < n; ++j) {
      if (a[i][j]) code[{i, j}] = *edge_of[i][j];
    }
  }
  for (Edge e = 0; e < f.edge_count(); ++e) inverse[{e}] = f.src(e);
  auto c = make_block_code(g, f, 0, 1, std::move(code));
  auto ci = make_block_code(f, g, 0, 0, std::move(inverse));
  return {f, std::move(c), std::move(ci)};
}

Word apply_periodic(const BlockCode& c, const Word& cycle) {
  auto p = cycle.size();
  if (p == 0 || !is_admissible(c.source, cycle) || c.source.rng(cycle.back()) != c.source.src(cycle.front())) {
    throw DomainError("input " + to_string(c.source, cycle) + " is not a closed path");
  }
  Word out(p);
  Word window(c.window());
  for (std::size_t n = 0; n < p; ++n) {
    for (std::size_t t = 0; t < window.size(); ++t) {
      window[t] = cycle[(n + p * c.window() + t - c.memory) % p];
    }
    out[n] = c.table.at(window);
  }
  return out;
}

Word apply_window(const BlockCode& c, const Word& w) {
  if (!is_admissible(c.source, w)) throw DomainError("input " + to_string(c.source, w) + " is not a path");
  Word out;
  auto width = c.window();
  for (std::size_t i = 0; i + width <= w.size(); ++i) {
    out.push_back(c.table.at(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                                  w.begin() + static_cast<std::ptrdiff_t>(i + width))));
  }
  return out;
}

LassoPoint apply_anchored(const BlockCode& c, const LassoPoint& x) {
  if (!x.is_infinite()) throw DomainError("block codes act on infinite points only");
  auto s = x.stem().size();
  auto q = x.cycle().size();
  auto width = c.window();
  Word window(width);
  auto out_at = [&](std::size_t n) {
    for (std::size_t t = 0; t < width; ++t) window[t] = x.edge_at(n + t);
    return c.table.at(window);
  };
  Word stem, cycle;
  for (std::size_t n = 0; n < s; ++n) stem.push_back(out_at(n));
  for (std::size_t n = s; n < s + q; ++n) cycle.push_back(out_at(n));
  auto const& f = c.target;
  Vertex start = f.src(stem.empty() ? cycle.front() : stem.front());
  return LassoPoint::make(f, Path{start, stem}, Path{f.src(cycle.front()), cycle});
}

namespace {

// Checks inverse(code(w)) = w on windows of E and returns the first failure.
std::optional<std::string> window_inverse_failure(const BlockCode& c, const BlockCode& cinv,
                                                  std::size_t max_len, std::size_t& checked) {
  auto reach = c.window() + cinv.window() - 1;
  auto offset = c.memory + cinv.memory;
  for (std::size_t n = reach; n <= max_len; ++n) {
    for (auto const& w : admissible_words(c.source, n)) {
      auto back = apply_window(cinv, apply_window(c, w));
      ++checked;
      if (!std::equal(back.begin(), back.end(), w.begin() + static_cast<std::ptrdiff_t>(offset))) {
        return to_string(c.source, w) + " comes back as " + to_string(c.source, back) +
               " at offset " + std::to_string(offset);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> periodic_inverse_failure(const BlockCode& c, const BlockCode& cinv,
                                                    std::size_t max_period, std::size_t& checked) {
  for (std::size_t p = 1; p <= max_period; ++p) {
    for (auto const& w : periodic_words(c.source, p)) {
      auto back = apply_periodic(cinv, apply_periodic(c, w));
      ++checked;
      if (back != w) {
        return "(" + to_string(c.source, w) + ")^inf comes back as (" + to_string(c.source, back) + ")^inf";
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Report check_two_sided_conjugacy(const BlockCode& c, const BlockCode& cinv, std::size_t max_period) {
  if (!(c.source == cinv.target) || !(c.target == cinv.source)) {
    throw InterfaceError("code and inverse do not run between the same graphs");
  }
  Report r;
  r.title = "two-sided conjugacy checked to period " + std::to_string(max_period);
  r.parameters["period"] = std::to_string(max_period);
  r.verdicts.push_back(Verdict::pass("shift-commutation", "structural for sliding block codes"));

  std::size_t checked = 0;
  auto fail = periodic_inverse_failure(c, cinv, max_period, checked);
  if (!fail) fail = periodic_inverse_failure(cinv, c, max_period, checked);
  r.verdicts.push_back(fail ? Verdict::fail("periodic-inverse", *fail)
                            : Verdict::pass("periodic-inverse",
                                            std::to_string(checked) + " periodic points"));

  checked = 0;
  auto max_len = max_period + c.window() + cinv.window();
  fail = window_inverse_failure(c, cinv, max_len, checked);
  if (!fail) fail = window_inverse_failure(cinv, c, max_len, checked);
  r.parameters["window_length"] = std::to_string(max_len);
  r.verdicts.push_back(fail ? Verdict::fail("window-inverse", *fail)
                            : Verdict::pass("window-inverse", std::to_string(checked) + " windows"));
  return r;
}

bool collapse_bound_holds(const BlockCode& pi, std::size_t l, std::size_t trim, std::size_t width) {
  if (width < trim || width - trim <= l) return true;
  std::map<Word, Word> first_with_image;
  for (auto const& w : admissible_words(pi.source, width)) {
    auto [it, fresh] = first_with_image.emplace(apply_window(pi, w), w);
    if (fresh) continue;
    auto const& v = it->second;
    if (!std::equal(w.begin() + static_cast<std::ptrdiff_t>(l), w.end() - static_cast<std::ptrdiff_t>(trim),
                    v.begin() + static_cast<std::ptrdiff_t>(l))) {
      return false;
    }
  }
  return true;
}

namespace {

std::size_t collapse_width(const OneSidedMap& m, std::size_t slack) {
  return m.collapse + m.pi.window() + m.trim + slack;
}

}  // namespace

OneSidedMap induced_one_sided_map(const BlockCode& c, const BlockCode& cinv, std::size_t slack) {
  OneSidedMap m;
  m.pi = BlockCode{c.source, c.target, 0, c.memory + c.anticipation, c.table};
  m.collapse = c.memory + cinv.memory;
  m.trim = c.anticipation + cinv.anticipation;
  if (!collapse_bound_holds(m.pi, m.collapse, m.trim, collapse_width(m, slack))) {
    throw InconsistencyError("collapse bound " + std::to_string(m.collapse) +
                             " fails on finite windows; the pair is not a conjugacy");
  }
  return m;
}

OneSidedMap minimize_collapse(const OneSidedMap& m, std::size_t slack) {
  auto out = m;
  auto width = collapse_width(m, slack);
  while (out.collapse > 0 && collapse_bound_holds(out.pi, out.collapse - 1, out.trim, width)) {
    --out.collapse;
  }
  return out;
}

namespace {

std::size_t max_key_length(const std::map<Word, Word>& t) {
  std::size_t d = 0;
  for (auto const& [k, v] : t) d = std::max(d, k.size());
  return d;
}

void validate_h_table(const Graph& src, const Graph& dst, const std::map<Word, Word>& t,
                      const char* name) {
  auto depth = max_key_length(t);
  for (auto const& [k, v] : t) {
    if (k.empty() || !is_admissible(src, k)) {
      throw MalformedCandidateError(std::string(name) + " key " + to_string(src, k) + " is not a path");
    }
    if (!is_admissible(dst, v)) {
      throw MalformedCandidateError(std::string(name) + " value for " + to_string(src, k) + " is not a path");
    }
  }
  for (std::size_t d = 1; d <= depth; ++d) {
    for (auto const& w : admissible_words(src, d)) {
      auto it = t.find(w);
      if (it == t.end()) throw MalformedCandidateError(std::string(name) + " has no entry for " + to_string(src, w));
      if (d == 1) continue;
      auto const& shorter = t.at(Word(w.begin(), w.end() - 1));
      auto const& longer = it->second;
      if (shorter.size() > longer.size() || !std::equal(shorter.begin(), shorter.end(), longer.begin())) {
        throw MalformedCandidateError(std::string(name) + " is not prefix consistent at " + to_string(src, w));
      }
    }
  }
}

void validate_window_table(const Graph& g, const std::map<Word, std::size_t>& t, std::size_t width,
                           const char* name) {
  if (width == 0) throw MalformedCandidateError(std::string(name) + " window must be positive");
  for (auto const& [k, v] : t) {
    if (k.size() != width || !is_admissible(g, k)) {
      throw MalformedCandidateError(std::string(name) + " key " + to_string(g, k) + " has the wrong shape");
    }
  }
  for (auto const& w : admissible_words(g, width)) {
    if (!t.contains(w)) throw MalformedCandidateError(std::string(name) + " has no entry for " + to_string(g, w));
  }
}

}  // namespace

std::size_t EventualConjugacyCandidate::h_depth() const { return max_key_length(h); }
std::size_t EventualConjugacyCandidate::hinv_depth() const { return max_key_length(hinv); }

void validate_candidate(const EventualConjugacyCandidate& c) {
  validate_h_table(c.source, c.target, c.h, "h");
  validate_h_table(c.target, c.source, c.hinv, "hinv");
  validate_window_table(c.source, c.k, c.k_window, "k");
  validate_window_table(c.target, c.kprime, c.kprime_window, "kprime");
}

Word image_prefix(const std::map<Word, Word>& table, std::size_t depth, const Word& w) {
  if (w.empty() || depth == 0) return {};
  Word key = w.size() > depth ? Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(depth)) : w;
  auto it = table.find(key);
  if (it == table.end()) throw MalformedCandidateError("no table entry for a word of length " + std::to_string(key.size()));
  return it->second;
}

std::optional<std::size_t> window_value(const std::map<Word, std::size_t>& table, std::size_t width,
                                        const Word& w) {
  if (w.size() < width) return std::nullopt;
  auto it = table.find(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(width)));
  if (it == table.end()) throw MalformedCandidateError("no window entry");
  return it->second;
}

EventualConjugacyCandidate candidate_from_codes(const BlockCode& c, const BlockCode& cinv, std::size_t depth) {
  if (c.memory != 0 || cinv.memory != 0) {
    throw PreconditionError("one-sided candidates need memory-0 codes");
  }
  EventualConjugacyCandidate out;
  out.source = c.source;
  out.target = c.target;
  for (std::size_t d = 1; d <= depth; ++d) {
    for (auto const& w : admissible_words(c.source, d)) out.h[w] = apply_window(c, w);
    for (auto const& w : admissible_words(c.target, d)) out.hinv[w] = apply_window(cinv, w);
  }
  for (auto const& w : admissible_words(c.source, 1)) out.k[w] = 0;
  for (auto const& w : admissible_words(c.target, 1)) out.kprime[w] = 0;
  return out;
}

EventualConjugacyCandidate swap_direction(const EventualConjugacyCandidate& c) {
  return EventualConjugacyCandidate{c.target, c.source, c.hinv, c.h, c.kprime_window, c.kprime, c.k_window, c.k};
}

EventualConjugacyCandidate parse_candidate(const Graph& e, const Graph& f, std::string_view text) {
  EventualConjugacyCandidate c;
  c.source = e;
  c.target = f;
  std::string section;
  std::optional<std::size_t> kw, kpw;
  std::size_t lineno = 0;
  for (auto line : detail::split(text, '\n')) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = std::string(line);
      if (section != "[h]" && section != "[hinv]" && section != "[k]" && section != "[kprime]") {
        throw ParseError(lineno, "unknown section " + section);
      }
      continue;
    }
    if (section.empty()) throw ParseError(lineno, "entry outside a section");
    auto arrow = line.find("=>");
    if (arrow == std::string_view::npos) throw ParseError(lineno, "expected 'key => value'");
    auto lhs = line.substr(0, arrow);
    auto rhs = detail::trim(line.substr(arrow + 2));
    try {
      if (section == "[h]") {
        c.h[parse_word(e, lhs)] = parse_word(f, rhs);
      } else if (section == "[hinv]") {
        c.hinv[parse_word(f, lhs)] = parse_word(e, rhs);
      } else {
        bool is_k = section == "[k]";
        auto key = parse_word(is_k ? e : f, lhs);
        if (rhs.empty() || !std::all_of(rhs.begin(), rhs.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
          throw ParseError(lineno, "window value must be a natural number");
        }
        auto& width = is_k ? kw : kpw;
        if (width && *width != key.size()) throw ParseError(lineno, "window keys must share one length");
        width = key.size();
        (is_k ? c.k : c.kprime)[key] = std::stoull(std::string(rhs));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const ReferenceError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(lineno, err.what());
    }
  }
  c.k_window = kw.value_or(1);
  c.kprime_window = kpw.value_or(1);
  return c;
}

std::string format_candidate(const EventualConjugacyCandidate& c) {
  std::ostringstream out;
  out << "[h]\n";
  for (auto const& [k, v] : c.h) out << to_string(c.source, k) << " => " << to_string(c.target, v) << "\n";
  out << "[hinv]\n";
  for (auto const& [k, v] : c.hinv) out << to_string(c.target, k) << " => " << to_string(c.source, v) << "\n";
  out << "[k]\n";
  for (auto const& [k, v] : c.k) out << to_string(c.source, k) << " => " << v << "\n";
  out << "[kprime]\n";
  for (auto const& [k, v] : c.kprime) out << to_string(c.target, k) << " => " << v << "\n";
  return out.str();
}

namespace {

Word drop(const Word& w, std::size_t n) {
  return n >= w.size() ? Word{} : Word(w.begin() + static_cast<std::ptrdiff_t>(n), w.end());
}

// sigma^k(h(sigma x)) = sigma^(k+1)(h(x)) on the determined prefixes of all
// words of the given length.
Verdict equation_verdict(const char* name, const Graph& src, const Graph& dst,
                         const std::map<Word, Word>& h, std::size_t h_depth,
                         const std::map<Word, std::size_t>& k, std::size_t k_width, std::size_t depth) {
  std::size_t consistent = 0, undetermined = 0;
  for (auto const& w : admissible_words(src, depth)) {
    auto kv = window_value(k, k_width, w);
    if (!kv) {
      ++undetermined;
      continue;
    }
    auto lhs = drop(image_prefix(h, h_depth, drop(w, 1)), *kv);
    auto rhs = drop(image_prefix(h, h_depth, w), *kv + 1);
    auto overlap = std::min(lhs.size(), rhs.size());
    if (overlap == 0) {
      ++undetermined;
      continue;
    }
    if (!std::equal(lhs.begin(), lhs.begin() + static_cast<std::ptrdiff_t>(overlap), rhs.begin())) {
      return Verdict::fail(name, to_string(src, w),
                           "with k = " + std::to_string(*kv) + " the left side starts " + to_string(dst, lhs) +
                               " but the right side starts " + to_string(dst, rhs));
    }
    ++consistent;
  }
  if (undetermined > 0) {
    return Verdict::inconclusive(name, std::to_string(undetermined) + " words with too short a determined prefix");
  }
  return Verdict::pass(name, std::to_string(consistent) + " words consistent");
}

// h^-1(h(w)) must be prefix-comparable with w.
std::optional<std::string> round_trip_failure(const Graph& src, const Graph& dst, const std::map<Word, Word>& h,
                                              std::size_t h_depth, const std::map<Word, Word>& back,
                                              std::size_t back_depth, std::size_t depth, std::size_t& undetermined) {
  for (auto const& w : admissible_words(src, depth)) {
    auto image = image_prefix(h, h_depth, w);
    auto again = image_prefix(back, back_depth, image);
    auto overlap = std::min(again.size(), w.size());
    if (overlap == 0) {
      ++undetermined;
      continue;
    }
    if (!std::equal(again.begin(), again.begin() + static_cast<std::ptrdiff_t>(overlap), w.begin())) {
      return to_string(src, w) + " maps to " + to_string(dst, image) + " and back to " + to_string(src, again);
    }
  }
  return std::nullopt;
}

}  // namespace

Report check_eventual_conjugacy(const EventualConjugacyCandidate& c, std::size_t depth) {
  if (depth == 0) throw DomainError("depth must be positive");
  validate_candidate(c);
  Report r;
  r.title = "eventual conjugacy checked to depth " + std::to_string(depth);
  r.parameters["depth"] = std::to_string(depth);
  r.parameters["h_depth"] = std::to_string(c.h_depth());
  r.parameters["hinv_depth"] = std::to_string(c.hinv_depth());
  r.verdicts.push_back(
      equation_verdict("h-equation", c.source, c.target, c.h, c.h_depth(), c.k, c.k_window, depth));
  r.verdicts.push_back(equation_verdict("hinv-equation", c.target, c.source, c.hinv, c.hinv_depth(), c.kprime,
                                        c.kprime_window, depth));
  std::size_t undetermined = 0;
  auto fail = round_trip_failure(c.source, c.target, c.h, c.h_depth(), c.hinv, c.hinv_depth(), depth, undetermined);
  if (!fail) {
    fail = round_trip_failure(c.target, c.source, c.hinv, c.hinv_depth(), c.h, c.h_depth(), depth, undetermined);
  }
  if (fail) {
    r.verdicts.push_back(Verdict::fail("inverse", *fail));
  } else if (undetermined > 0) {
    r.verdicts.push_back(Verdict::inconclusive("inverse", std::to_string(undetermined) + " undetermined round trips"));
  } else {
    r.verdicts.push_back(Verdict::pass("inverse", "h and hinv agree on determined prefixes"));
  }
  return r;
}

}  // namespace shiftgrp
