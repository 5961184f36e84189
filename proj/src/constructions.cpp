#include "shiftgrp/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "shiftgrp/errors.hpp"

namespace shiftgrp {

namespace {

WeightFunction ones(const Graph& g) { return WeightFunction::constant(g, 1); }

void require_no_sinks(const Graph& e, const Graph& f) {
  if (e.has_sinks() || f.has_sinks()) {
    throw PreconditionError("constructions need graphs without sinks");
  }
}

// Knowledge about an image point: a prefix and possibly its start vertex.
struct Info {
  Word known;
  std::optional<Vertex> start;
};

bool compatible(const Info& i, const Path& p) {
  if (i.start && *i.start != p.start) return false;
  auto overlap = std::min(i.known.size(), p.length());
  return std::equal(i.known.begin(), i.known.begin() + static_cast<std::ptrdiff_t>(overlap), p.edges.begin());
}

Info merge(Info i, const Path& p) {
  if (p.length() > i.known.size()) i.known = p.edges;
  i.start = p.start;
  return i;
}

Info common(const std::vector<Info>& all) {
  Info out = all.front();
  for (auto const& i : all) {
    std::size_t n = 0;
    while (n < out.known.size() && n < i.known.size() && out.known[n] == i.known[n]) ++n;
    out.known.resize(n);
    if (out.start != i.start) out.start.reset();
  }
  return out;
}

void refine_by_units(const Graph& e, const BisectionTable& t, const std::vector<RuleKind>& kinds,
                     const Path& s, Info& info) {
  for (std::size_t r = 0; r < t.rules.size(); ++r) {
    if (kinds[r] != RuleKind::Unit || !is_prefix(t.rules[r].source.mu, s)) continue;
    std::vector<Info> options;
    for (auto const& p : t.rules[r].image) {
      if (compatible(info, p.alpha)) options.push_back(merge(info, p.alpha));
    }
    if (options.empty()) {
      throw InconsistencyError("unit rule for " + to_string(e, t.rules[r].source.mu) +
                               " contradicts the edge rules along " + to_string(e, s));
    }
    info = common(options);
  }
}

}  // namespace

ImagePrefix determined_image(const Graph& e, const Graph& f, const BisectionTable& t, const Path& w) {
  (void)f;
  std::vector<RuleKind> kinds;
  for (auto const& r : t.rules) kinds.push_back(rule_kind(e, r, t.levelled));
  Info info;
  refine_by_units(e, t, kinds, drop_front(e, w, w.length()), info);
  std::optional<std::size_t> lag;
  for (std::size_t i = w.length(); i-- > 0;) {
    auto s = drop_front(e, w, i);
    std::vector<std::size_t> rules;
    bool definite = false;
    for (std::size_t r = 0; r < t.rules.size(); ++r) {
      if (kinds[r] != RuleKind::Edge) continue;
      auto const& mu = t.rules[r].source.mu;
      if (is_prefix(mu, s)) {
        if (!definite) rules.clear();
        definite = true;
        rules.push_back(r);
      } else if (!definite && is_prefix(s, mu)) {
        rules.push_back(r);
      }
    }
    if (rules.empty()) throw CoverageError("no edge rule covers " + to_string(e, s));
    std::vector<Info> options;
    std::set<std::size_t> lags;
    for (auto r : rules) {
      for (auto const& p : t.rules[r].image) {
        if (!compatible(info, p.beta)) continue;
        Info next;
        next.known = p.alpha.edges;
        next.start = p.alpha.start;
        if (p.beta.length() <= info.known.size()) {
          next.known.insert(next.known.end(), info.known.begin() + static_cast<std::ptrdiff_t>(p.beta.length()),
                            info.known.end());
        }
        options.push_back(std::move(next));
        lags.insert(p.beta.length());
      }
    }
    if (options.empty()) throw InconsistencyError("no piece fits along " + to_string(e, s));
    info = common(options);
    lag = lags.size() == 1 ? std::optional<std::size_t>(*lags.begin()) : std::nullopt;
    refine_by_units(e, t, kinds, s, info);
  }
  return ImagePrefix{info.known, info.start, lag};
}

namespace {

std::optional<Vertex> known_start(const EventualConjugacyCandidate& c, const Path& tau, std::size_t depth) {
  auto h = image_prefix(c.h, depth, tau.edges);
  if (!h.empty()) return c.target.src(h.front());
  if (tau.length() >= depth) return std::nullopt;
  std::optional<Vertex> seen;
  for (Edge x : c.source.out_edges(path_range(c.source, tau))) {
    Path next = tau;
    next.edges.push_back(x);
    auto s = known_start(c, next, depth);
    if (!s || (seen && *seen != *s)) return std::nullopt;
    seen = s;
  }
  return seen;
}

bool comparable(const Path& a, const Path& b) { return is_prefix(a, b) || is_prefix(b, a); }

}  // namespace

BisectionTable table_from_candidate(const EventualConjugacyCandidate& c) {
  require_no_sinks(c.source, c.target);
  auto const& e = c.source;
  auto const& f = c.target;
  auto depth = c.h_depth();
  auto shallow = [&](const Path& w) {
    return InconclusiveError("h table of depth " + std::to_string(depth) + " does not determine the image of " +
                             to_string(e, w));
  };
  BisectionTable t;

  for (Vertex v = 0; v < e.vertex_count(); ++v) {
    std::deque<Path> todo{vertex_path(v)};
    while (!todo.empty()) {
      auto tau = todo.front();
      todo.pop_front();
      if (auto s = known_start(c, tau, depth)) {
        Path alpha{*s, image_prefix(c.h, depth, tau.edges)};
        t.rules.push_back({{tau, tau}, {}, {}, {{alpha, alpha, {}, {}}}});
        continue;
      }
      if (tau.length() >= depth) throw shallow(tau);
      for (Edge x : e.out_edges(path_range(e, tau))) {
        Path next = tau;
        next.edges.push_back(x);
        todo.push_back(std::move(next));
      }
    }
  }

  for (Edge first = 0; first < e.edge_count(); ++first) {
    std::vector<std::pair<Path, BisectionPiece>> cells;
    std::deque<Path> todo{Path{e.src(first), {first}}};
    while (!todo.empty()) {
      auto w = todo.front();
      todo.pop_front();
      auto kv = window_value(c.k, c.k_window, w.edges);
      auto hw = image_prefix(c.h, depth, w.edges);
      auto tail = drop_front(e, w, 1);
      auto hs = image_prefix(c.h, depth, tail.edges);
      if (kv && hw.size() >= *kv + 1 && hs.size() >= *kv) {
        Path alpha{f.src(hw.front()), Word(hw.begin(), hw.begin() + static_cast<std::ptrdiff_t>(*kv + 1))};
        Path beta = *kv == 0 ? vertex_path(path_range(f, alpha))
                             : Path{f.src(hs.front()), Word(hs.begin(), hs.begin() + static_cast<std::ptrdiff_t>(*kv))};
        if (path_range(f, alpha) != path_range(f, beta)) {
          throw InconsistencyError("h does not satisfy its defining equation on " + to_string(e, w));
        }
        cells.push_back({w, {alpha, beta, {}, {}}});
        continue;
      }
      if (w.length() >= depth) throw shallow(w);
      for (Edge x : e.out_edges(path_range(e, w))) {
        Path next = w;
        next.edges.push_back(x);
        todo.push_back(std::move(next));
      }
    }
    std::vector<BisectionPiece> pieces;
    bool separable = true;
    for (auto const& [w, p] : cells) {
      if (std::find(pieces.begin(), pieces.end(), p) != pieces.end()) continue;
      for (auto const& q : pieces) {
        if (comparable(p.beta, q.beta)) separable = false;
      }
      pieces.push_back(p);
    }
    if (separable) {
      Path mu{e.src(first), {first}};
      t.rules.push_back({{mu, drop_front(e, mu, 1)}, {}, {}, std::move(pieces)});
    } else {
      for (auto const& [w, p] : cells) t.rules.push_back({{w, drop_front(e, w, 1)}, {}, {}, {p}});
    }
  }
  return t;
}

IsoTables iso_from_eventual_conjugacy(const EventualConjugacyCandidate& c, std::size_t depth) {
  require_no_sinks(c.source, c.target);
  auto report = check_eventual_conjugacy(c, depth);
  if (report.overall() == Outcome::Fail) {
    for (auto const& v : report.verdicts) {
      if (v.outcome == Outcome::Fail) {
        throw PreconditionError("candidate refuted (" + v.name + ") at " + v.witness);
      }
    }
  }
  if (report.overall() == Outcome::Inconclusive) {
    throw InconclusiveError("candidate is not verified to depth " + std::to_string(depth));
  }
  return {table_from_candidate(c), table_from_candidate(swap_direction(c))};
}

namespace {

struct Extracted {
  std::map<Word, Word> h;
  std::size_t k_window = 0;
  std::map<Word, std::size_t> k;
};

Extracted extract_direction(const Graph& e, const Graph& f, const BisectionTable& t, std::size_t depth) {
  Extracted out;
  std::map<Word, std::optional<std::size_t>> lags;
  for (std::size_t d = 1; d <= depth; ++d) {
    for (auto& p : enumerate_paths(e, std::nullopt, d)) {
      auto img = determined_image(e, f, t, p);
      out.h[p.edges] = img.prefix;
      lags[p.edges] = img.lag;
    }
  }
  for (std::size_t w = 1; w <= depth && out.k.empty(); ++w) {
    bool all = true;
    for (auto const& word : admissible_words(e, w)) {
      if (!lags.at(word)) {
        all = false;
        break;
      }
    }
    if (!all) continue;
    out.k_window = w;
    for (auto const& word : admissible_words(e, w)) out.k[word] = *lags.at(word);
  }
  if (out.k.empty()) {
    throw InconclusiveError("generator lags are not fixed by windows up to length " + std::to_string(depth));
  }
  return out;
}

}  // namespace

EventualConjugacyCandidate eventual_conjugacy_from_iso(const Graph& e, const Graph& f, const IsoTables& t,
                                                       std::size_t depth, std::size_t verify_depth) {
  if (t.forward.levelled || t.inverse.levelled) {
    throw PreconditionError("levelled tables present stabilized maps, not maps of G_E");
  }
  require_no_sinks(e, f);
  auto report = verify_table(e, f, t.forward, ones(e), ones(f), verify_depth);
  if (!report.passed()) {
    for (auto const& v : report.verdicts) {
      if (!v.passed()) {
        throw PreconditionError("table fails verification (" + v.name + "): " + v.witness + " " + v.detail);
      }
    }
  }
  auto fwd = extract_direction(e, f, t.forward, depth);
  auto bwd = extract_direction(f, e, t.inverse, depth);
  EventualConjugacyCandidate c{e, f, fwd.h, bwd.h, fwd.k_window, fwd.k, bwd.k_window, bwd.k};
  validate_candidate(c);
  return c;
}

std::pair<std::size_t, std::size_t> EquivalenceRelationOnWords::locate(const Path& mu) const {
  if (mu.length() != length) throw DomainError("word of length " + std::to_string(mu.length()) + " given to a relation on length " + std::to_string(length));
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto it = std::find(classes[c].begin(), classes[c].end(), mu);
    if (it != classes[c].end()) return {c, static_cast<std::size_t>(it - classes[c].begin())};
  }
  throw DomainError("word is not in any class");
}

std::size_t LevelBookkeeping::inverse_f(const Path& mu, std::size_t n) const {
  auto [c, t] = relation->locate(mu);
  return n * relation->classes[c].size() + t;
}

std::optional<std::size_t> LevelBookkeeping::f(const Path& mu, std::size_t n) const {
  auto [c, t] = relation->locate(mu);
  auto r = relation->classes[c].size();
  if (n % r != t) return std::nullopt;
  return (n - t) / r;
}

bool LevelBookkeeping::validate() const {
  for (auto const& cls : relation->classes) {
    auto r = cls.size();
    for (std::size_t n = 0; n < 8 * r; ++n) {
      std::size_t owners = 0;
      for (auto const& mu : cls) {
        if (auto m = f(mu, n)) {
          ++owners;
          if (inverse_f(mu, *m) != n) return false;
        }
      }
      if (owners != 1) return false;
    }
  }
  return true;
}

StabilizedPoint StabilizedIso::psi(const StabilizedPoint& x) const {
  auto base = apply_anchored(one_sided.pi, x.base);
  return {base, levels().inverse_f(x.base.prefix(source(), window), x.level)};
}

StabilizedElement StabilizedIso::apply(const StabilizedElement& a) const {
  if (a.m < a.x.level || a.n < a.y.level) throw DomainError("invalid stabilized witness");
  auto x = psi(a.x);
  auto y = psi(a.y);
  auto m = (a.m - a.x.level) + x.level;
  auto n = (a.n - a.y.level) + y.level;
  return {x, static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n), y, m, n};
}

BisectionTable StabilizedIso::table() const {
  auto const& e = source();
  auto const& f = target();
  auto const& pi = one_sided.pi;
  auto a = pi.anticipation;
  auto unit_depth = std::max(window, a + 1);
  auto edge_depth = std::max(window + 1, a + 1);
  auto class_shape = [&](const Path& w) {
    auto [c, t] = relation.locate(prefix(e, w, window));
    return std::pair<std::int64_t, std::int64_t>(static_cast<std::int64_t>(relation.classes[c].size()),
                                                 static_cast<std::int64_t>(t));
  };
  BisectionTable t;
  t.levelled = true;
  LevelExpr n0{1, 0}, n1{1, 1};
  for (auto const& tau : enumerate_paths(e, std::nullopt, unit_depth)) {
    auto out = apply_window(pi, tau.edges);
    Path alpha{f.src(out.front()), out};
    auto [r, s] = class_shape(tau);
    t.rules.push_back({{tau, tau}, n0, n0, {{alpha, alpha, {r, s}, {r, s}}}});
    t.rules.push_back({{tau, tau}, n1, n0, {{alpha, alpha, {r, r + s}, {r, s}}}});
  }
  for (auto const& w : enumerate_paths(e, std::nullopt, edge_depth)) {
    Word window_word(w.edges.begin(), w.edges.begin() + static_cast<std::ptrdiff_t>(a + 1));
    Edge o = pi.table.at(window_word);
    auto tail = drop_front(e, w, 1);
    t.rules.push_back({{w, tail},
                       {},
                       {},
                       {{Path{f.src(o), {o}}, vertex_path(f.rng(o)), LevelExpr::constant(class_shape(w).second),
                         LevelExpr::constant(class_shape(tail).second)}}});
  }
  return t;
}

StabilizedIso stabilized_iso_from_conjugacy(const BlockCode& c, const BlockCode& cinv, std::size_t window_cap) {
  require_no_sinks(c.source, c.target);
  auto check = check_two_sided_conjugacy(c, cinv, 6);
  if (!check.passed()) throw PreconditionError("code pair is not a conjugacy:\n" + check.to_text());
  StabilizedIso iso;
  iso.one_sided = induced_one_sided_map(c, cinv);
  auto const& e = c.source;
  auto const& pi = iso.one_sided.pi;
  auto l = iso.one_sided.collapse;
  auto a = pi.anticipation;

  // Smallest L >= l with x_[0,L) fixing pi(x)_[0,l).
  std::optional<std::size_t> found;
  auto words = admissible_words(e, l + a);
  for (std::size_t len = l; len <= window_cap && !found; ++len) {
    if (len >= l + a || l == 0) {
      found = len;
      break;
    }
    std::map<Word, Word> seen;
    bool ok = true;
    for (auto const& w : words) {
      Word key(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
      auto out = apply_window(pi, w);
      out.resize(l);
      auto [it, fresh] = seen.emplace(key, out);
      if (!fresh && it->second != out) {
        ok = false;
        break;
      }
    }
    if (ok) found = len;
  }
  if (!found) throw BoundExceededError("no window constant L <= " + std::to_string(window_cap));
  iso.window = *found;
  auto L = iso.window;

  auto members = enumerate_paths(e, std::nullopt, L);
  auto related = [&](const Path& mu, const Path& nu) {
    if (!(drop_front(e, mu, l) == drop_front(e, nu, l))) return false;
    if (l == 0) return true;
    for (auto const& zeta : enumerate_paths(e, path_range(e, mu), a)) {
      Word x = mu.edges, y = nu.edges;
      x.insert(x.end(), zeta.edges.begin(), zeta.edges.end());
      y.insert(y.end(), zeta.edges.begin(), zeta.edges.end());
      auto px = apply_window(pi, x);
      auto py = apply_window(pi, y);
      if (std::equal(px.begin(), px.begin() + static_cast<std::ptrdiff_t>(l), py.begin())) return true;
    }
    return false;
  };
  auto n = members.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = related(members[i], members[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i][i]) throw InconsistencyError("relation is not reflexive at " + to_string(e, members[i]));
    for (std::size_t j = 0; j < n; ++j) {
      if (rel[i][j] != rel[j][i]) throw InconsistencyError("relation is not symmetric");
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (rel[j][k] && !rel[i][k]) {
          throw InconsistencyError("relation is not transitive at " + to_string(e, members[i]) + ", " +
                                   to_string(e, members[j]) + ", " + to_string(e, members[k]));
        }
      }
    }
  }
  iso.relation.length = L;
  std::vector<bool> placed(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (placed[i]) continue;
    std::vector<Path> cls;
    for (std::size_t j = i; j < n; ++j) {
      if (rel[i][j]) {
        placed[j] = true;
        cls.push_back(members[j]);
      }
    }
    iso.relation.classes.push_back(std::move(cls));
  }
  if (!iso.levels().validate()) throw InconsistencyError("level bookkeeping does not partition the levels");
  return iso;
}

namespace {

std::optional<BlockCode> find_inverse(const BlockCode& phi, std::size_t memory, std::size_t anticipation) {
  auto width = memory + 1 + anticipation;
  std::map<Word, Edge> table;
  for (auto const& w : admissible_words(phi.source, width + phi.window() - 1)) {
    auto out = apply_window(phi, w);
    auto [it, fresh] = table.emplace(out, w[memory]);
    if (!fresh && it->second != w[memory]) return std::nullopt;
  }
  try {
    auto inv = make_block_code(phi.target, phi.source, memory, anticipation, std::move(table));
    if (!check_two_sided_conjugacy(phi, inv, 6).passed()) return std::nullopt;
    return inv;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

ConjugacyExtraction conjugacy_from_stabilized_iso(const Graph& e, const Graph& f, const BisectionTable& t,
                                                  std::size_t verify_depth, std::size_t cap) {
  if (!t.levelled) throw PreconditionError("extraction needs a levelled table");
  require_no_sinks(e, f);
  auto report = verify_stabilized_table(e, f, t, ones(e), ones(f), verify_depth);
  if (!report.passed()) {
    for (auto const& v : report.verdicts) {
      if (!v.passed()) {
        throw InconsistencyError("stabilized table fails " + v.name + " at " + v.witness +
                                 (v.detail.empty() ? "" : " (" + v.detail + ")"));
      }
    }
  }
  ConjugacyExtraction out;
  std::size_t lag = 0;
  for (std::size_t r = 0; r < t.rules.size(); ++r) {
    if (rule_kind(e, t.rules[r], true) != RuleKind::Edge) continue;
    for (auto const& p : t.rules[r].image) lag = std::max(lag, p.beta.length());
  }
  out.lag_bound = lag;

  // phi(x)_0 = psi(x)_L read from the smallest window that fixes it.
  std::optional<BlockCode> phi;
  std::map<Word, Word> prefixes;
  for (std::size_t w = 1; w <= cap && !phi; ++w) {
    std::map<Word, Edge> table;
    bool ok = true;
    for (auto const& p : enumerate_paths(e, std::nullopt, w)) {
      auto img = determined_image(e, f, t, p);
      if (img.prefix.size() <= lag) {
        ok = false;
        break;
      }
      table[p.edges] = img.prefix[lag];
      prefixes[p.edges] = img.prefix;
    }
    if (ok) phi = make_block_code(e, f, 0, w - 1, std::move(table));
  }
  if (!phi) throw BoundExceededError("psi(x)_L is not fixed by windows up to length " + std::to_string(cap));
  out.code = *phi;

  std::optional<BlockCode> inverse;
  for (std::size_t s = 0; s <= cap && !inverse; ++s) {
    for (std::size_t m = 0; m <= s && !inverse; ++m) inverse = find_inverse(out.code, m, s - m);
  }
  if (!inverse) throw BoundExceededError("no inverse code with memory + anticipation <= " + std::to_string(cap));
  out.inverse = *inverse;

  OneSidedMap one{out.code, out.inverse.memory, out.code.anticipation + out.inverse.anticipation};
  if (!collapse_bound_holds(one.pi, one.collapse, one.trim, one.collapse + one.pi.window() + one.trim + 3)) {
    throw InconsistencyError("extracted code does not collapse within the inverse's memory");
  }
  out.injectivity = minimize_collapse(one).collapse;

  // H: smallest h with every F-word of length L+1 matched on [h, L] by some
  // determined psi-prefix.
  std::optional<std::size_t> reach;
  auto targets = admissible_words(f, lag + 1);
  for (std::size_t h = 0; h <= lag && !reach; ++h) {
    std::set<Word> hit;
    for (auto const& [w, pre] : prefixes) {
      if (w.size() != out.code.window()) continue;
      hit.insert(Word(pre.begin() + static_cast<std::ptrdiff_t>(h), pre.begin() + static_cast<std::ptrdiff_t>(lag + 1)));
    }
    bool all = std::all_of(targets.begin(), targets.end(), [&](const Word& v) {
      return hit.contains(Word(v.begin() + static_cast<std::ptrdiff_t>(h), v.end()));
    });
    if (all) reach = h;
  }
  if (!reach) throw InconsistencyError("psi does not reach every F-word even after " + std::to_string(lag) + " shifts");
  out.surjectivity = *reach;

  out.check = check_two_sided_conjugacy(out.code, out.inverse, 6);
  return out;
}

}  // namespace shiftgrp
