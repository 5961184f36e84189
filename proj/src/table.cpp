#include "shiftgrp/table.hpp"

#include <algorithm>
#include <sstream>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"
#include "verify_impl.hpp"

namespace shiftgrp {

namespace {

struct GroupoidOps {
  std::vector<GroupoidElement> sample(const Graph& g, std::size_t d) const {
    return elements_to_depth(g, d);
  }
  GroupoidElement compose(const Graph& g, const GroupoidElement& a, const GroupoidElement& b) const {
    return shiftgrp::compose(g, a, b);
  }
  Rational cocycle(const Graph& g, const WeightFunction& k, const GroupoidElement& a) const {
    return cocycle_value(g, k, a);
  }
  std::string str(const Graph& g, const GroupoidElement& a) const { return to_string(g, a); }
  LassoPoint range(const GroupoidElement& a) const { return a.x; }
  LassoPoint source(const GroupoidElement& a) const { return a.y; }
};

bool is_var(const LevelExpr& l, std::int64_t offset) { return l.scale == 1 && l.offset == offset; }

// A word map y -> A . sigma^B(y).
struct WordMap {
  std::vector<Edge> a;
  std::size_t b = 0;
};

// (outer o inner)(y) = outer(inner(y)).
WordMap after(const WordMap& outer, const WordMap& inner) {
  WordMap out;
  out.a = outer.a;
  if (outer.b <= inner.a.size()) {
    out.a.insert(out.a.end(), inner.a.begin() + static_cast<std::ptrdiff_t>(outer.b), inner.a.end());
    out.b = inner.b;
  } else {
    out.b = outer.b - inner.a.size() + inner.b;
  }
  return out;
}

std::int64_t checked_level(std::int64_t v, const std::string& where) {
  if (v < 0) throw InconsistencyError("negative level at " + where);
  return v;
}

}  // namespace

LevelExpr parse_level(std::string_view text) {
  auto t = detail::trim(text);
  auto digits = [](std::string_view s) -> std::int64_t {
    s = detail::trim(s);
    if (s.empty()) throw DomainError("missing number in level expression");
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw DomainError("bad number '" + std::string(s) + "' in level expression");
      v = v * 10 + (c - '0');
    }
    return v;
  };
  auto npos = t.find('n');
  if (npos == std::string_view::npos) return LevelExpr::constant(digits(t));
  LevelExpr l{1, 0};
  auto head = detail::trim(t.substr(0, npos));
  if (!head.empty()) {
    if (head.back() != '*') throw DomainError("bad level expression '" + std::string(t) + "'");
    l.scale = digits(head.substr(0, head.size() - 1));
  }
  auto tail = detail::trim(t.substr(npos + 1));
  if (!tail.empty()) {
    if (tail.front() != '+') throw DomainError("bad level expression '" + std::string(t) + "'");
    l.offset = digits(tail.substr(1));
  }
  return l;
}

std::string to_string(const LevelExpr& l) {
  if (l.scale == 0) return std::to_string(l.offset);
  std::string out = l.scale == 1 ? "n" : std::to_string(l.scale) + "*n";
  if (l.offset != 0) out += "+" + std::to_string(l.offset);
  return out;
}

RuleKind rule_kind(const Graph& e, const BisectionRule& rule, bool levelled) {
  auto const& mu = rule.source.mu;
  auto const& nu = rule.source.nu;
  if (mu == nu) {
    if (!levelled) return RuleKind::Unit;
    if (is_var(rule.range_level, 0) && is_var(rule.source_level, 0)) return RuleKind::Unit;
    if (is_var(rule.range_level, 1) && is_var(rule.source_level, 0)) return RuleKind::Head;
    throw DomainError("unit-shaped rule needs levels 'n,n' or 'n+1,n'");
  }
  if (!mu.empty() && mu.length() == nu.length() + 1 && drop_front(e, mu, 1) == nu) {
    if (levelled && !(rule.range_level == LevelExpr{} && rule.source_level == LevelExpr{})) {
      throw DomainError("edge rules act on level 0 only");
    }
    return RuleKind::Edge;
  }
  throw DomainError("rule source Z(" + to_string(e, mu) + ";" + to_string(e, nu) +
                    ") is not a generator bisection");
}

BisectionTable identity_table(const Graph& g, bool levelled) {
  BisectionTable t;
  t.levelled = levelled;
  LevelExpr n0{1, 0}, n1{1, 1};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    Path p = vertex_path(v);
    if (levelled) {
      t.rules.push_back({{p, p}, n0, n0, {{p, p, n0, n0}}});
      t.rules.push_back({{p, p}, n1, n0, {{p, p, n1, n0}}});
    } else {
      t.rules.push_back({{p, p}, {}, {}, {{p, p, {}, {}}}});
    }
  }
  for (Edge e = 0; e < g.edge_count(); ++e) {
    Path mu{g.src(e), {e}};
    Path nu = vertex_path(g.rng(e));
    t.rules.push_back({{mu, nu}, {}, {}, {{mu, nu, {}, {}}}});
  }
  return t;
}

namespace {

struct ParsedBisection {
  Path mu, nu;
  std::optional<std::pair<LevelExpr, LevelExpr>> levels;
};

ParsedBisection parse_bisection(const Graph& g, std::string_view text, std::size_t line) {
  auto t = detail::trim(text);
  if (!detail::starts_with(t, "Z(") || t.back() != ')') {
    throw ParseError(line, "expected Z(...) but found '" + std::string(t) + "'");
  }
  t = t.substr(2, t.size() - 3);
  auto semi = t.find(';');
  if (semi == std::string_view::npos) throw ParseError(line, "bisection needs ';'");
  auto mu_text = t.substr(0, semi);
  auto rest = t.substr(semi + 1);
  ParsedBisection out;
  auto at = rest.rfind('@');
  if (at != std::string_view::npos && rest.substr(at).find(',') != std::string_view::npos) {
    auto lv = detail::split(rest.substr(at + 1), ',');
    if (lv.size() != 2) throw ParseError(line, "level annotation needs two entries");
    try {
      out.levels = std::make_pair(parse_level(lv[0]), parse_level(lv[1]));
    } catch (const DomainError& err) {
      throw ParseError(line, err.what());
    }
    rest = rest.substr(0, at);
  }
  try {
    out.mu = parse_path(g, mu_text);
    out.nu = parse_path(g, rest);
  } catch (const ReferenceError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(line, err.what());
  }
  return out;
}

}  // namespace

BisectionTable parse_table(const Graph& e, const Graph& f, std::string_view text) {
  BisectionTable t;
  std::optional<bool> levelled;
  std::size_t lineno = 0;
  for (auto line : detail::split(text, '\n')) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError(lineno, "rule needs '->'");
    auto src = parse_bisection(e, line.substr(0, arrow), lineno);
    bool this_levelled = src.levels.has_value();
    if (levelled && *levelled != this_levelled) throw ParseError(lineno, "mixed levelled and plain rules");
    levelled = this_levelled;
    BisectionRule rule;
    rule.source = {src.mu, src.nu};
    if (src.levels) std::tie(rule.range_level, rule.source_level) = *src.levels;
    for (auto piece_text : detail::split(line.substr(arrow + 2), '|')) {
      auto piece = parse_bisection(f, piece_text, lineno);
      if (piece.levels.has_value() != this_levelled) throw ParseError(lineno, "mixed levelled and plain pieces");
      BisectionPiece p{piece.mu, piece.nu, {}, {}};
      if (piece.levels) std::tie(p.range_level, p.source_level) = *piece.levels;
      rule.image.push_back(std::move(p));
    }
    t.rules.push_back(std::move(rule));
  }
  t.levelled = levelled.value_or(false);
  return t;
}

std::string format_table(const Graph& e, const Graph& f, const BisectionTable& t) {
  std::ostringstream out;
  auto levels = [&t](const LevelExpr& a, const LevelExpr& b) {
    return t.levelled ? " @ " + to_string(a) + "," + to_string(b) : std::string{};
  };
  for (auto const& r : t.rules) {
    out << "Z(" << to_string(e, r.source.mu) << ";" << to_string(e, r.source.nu)
        << levels(r.range_level, r.source_level) << ") ->";
    for (std::size_t i = 0; i < r.image.size(); ++i) {
      auto const& p = r.image[i];
      out << (i ? " | " : " ") << "Z(" << to_string(f, p.alpha) << ";" << to_string(f, p.beta)
          << levels(p.range_level, p.source_level) << ")";
    }
    out << "\n";
  }
  return out.str();
}

TableMap::TableMap(const Graph& e, const Graph& f, BisectionTable table)
    : e_(e), f_(f), table_(std::move(table)) {
  for (auto const& r : table_.rules) {
    auto const& [mu, nu] = r.source;
    if (!is_valid_path(e_, mu) || !is_valid_path(e_, nu) || path_range(e_, mu) != path_range(e_, nu)) {
      throw DomainError("rule source Z(" + to_string(e_, mu) + ";" + to_string(e_, nu) +
                        ") is not a bisection");
    }
    auto kind = rule_kind(e_, r, table_.levelled);
    kinds_.push_back(kind);
    if (r.image.empty()) throw DomainError("rule with empty image");
    for (auto const& p : r.image) {
      if (!is_valid_path(f_, p.alpha) || !is_valid_path(f_, p.beta) ||
          path_range(f_, p.alpha) != path_range(f_, p.beta)) {
        throw DomainError("image piece Z(" + to_string(f_, p.alpha) + ";" + to_string(f_, p.beta) +
                          ") is not a bisection");
      }
      if (kind != RuleKind::Edge && p.alpha != p.beta) {
        throw DomainError("unit and head rules must map to pieces of the form Z(alpha;alpha)");
      }
    }
  }
}

const BisectionRule& TableMap::match(RuleKind kind, const LassoPoint& x) const {
  const BisectionRule* found = nullptr;
  for (std::size_t i = 0; i < table_.rules.size(); ++i) {
    if (kinds_[i] != kind || !x.starts_with(table_.rules[i].source.mu)) continue;
    if (kind == RuleKind::Edge && !x.is_infinite() && *x.length() == 0) continue;
    if (found) {
      throw InconsistencyError("overlapping rules for " + to_string(e_, x));
    }
    found = &table_.rules[i];
  }
  if (!found) {
    const char* what = kind == RuleKind::Edge ? "edge" : kind == RuleKind::Unit ? "unit" : "head";
    throw CoverageError(std::string("no ") + what + " rule covers " + to_string(e_, x));
  }
  return *found;
}

void TableMap::solve_cycle(const LassoPoint& x) {
  auto len = x.cycle().size();
  std::vector<LassoPoint> pts;
  std::vector<std::size_t> rules;
  for (std::size_t k = 0; k < len; ++k) {
    pts.push_back(shift(e_, x, k));
    auto const& r = match(RuleKind::Edge, pts.back());
    rules.push_back(static_cast<std::size_t>(&r - table_.rules.data()));
  }
  std::size_t combos = 1;
  for (auto r : rules) {
    combos *= table_.rules[r].image.size();
    if (combos > (1u << 20)) throw InconsistencyError("too many piece choices around " + to_string(e_, x));
  }
  std::vector<std::size_t> choice(len, 0);
  std::optional<std::vector<LassoPoint>> solution;
  std::vector<std::size_t> solution_choice;
  for (std::size_t c = 0; c < combos; ++c) {
    auto rest = c;
    for (std::size_t k = 0; k < len; ++k) {
      auto n = table_.rules[rules[k]].image.size();
      choice[k] = rest % n;
      rest /= n;
    }
    WordMap total;
    for (std::size_t k = 0; k < len; ++k) {
      auto const& p = table_.rules[rules[k]].image[choice[k]];
      total = after(total, WordMap{p.alpha.edges, p.beta.length()});
    }
    if (total.a.size() <= total.b) continue;
    std::vector<LassoPoint> images(len + 1);
    try {
      std::vector<Edge> lead(total.a.begin(), total.a.begin() + static_cast<std::ptrdiff_t>(total.b));
      std::vector<Edge> loop(total.a.begin() + static_cast<std::ptrdiff_t>(total.b), total.a.end());
      Vertex start = f_.src(total.a.front());
      images[len] = LassoPoint::make(f_, Path{start, lead}, Path{f_.src(loop.front()), loop});
      bool ok = true;
      for (std::size_t k = len; k-- > 0 && ok;) {
        auto const& p = table_.rules[rules[k]].image[choice[k]];
        if (!images[k + 1].starts_with(p.beta)) {
          ok = false;
          break;
        }
        images[k] = shift(f_, images[k + 1], p.beta.length()).prepend(f_, p.alpha);
      }
      if (!ok || images[0] != images[len]) continue;
    } catch (const DomainError&) {
      continue;
    }
    if (solution) {
      throw InconsistencyError("pieces do not determine a unique image of " + to_string(e_, x));
    }
    solution = std::move(images);
    solution_choice = choice;
  }
  if (!solution) throw InconsistencyError("no consistent image for " + to_string(e_, x));
  for (std::size_t k = 0; k < len; ++k) {
    h_[pts[k]] = (*solution)[k];
    steps_[pts[k]] = {rules[k], solution_choice[k]};
  }
}

LassoPoint TableMap::image_point(const LassoPoint& x) {
  if (auto it = h_.find(x); it != h_.end()) return it->second;
  if (!x.is_infinite() && *x.length() == 0) {
    auto const& r = match(RuleKind::Unit, x);
    const BisectionPiece* piece = nullptr;
    for (auto const& p : r.image) {
      if (f_.is_sink(path_range(f_, p.alpha))) {
        if (piece) throw InconsistencyError("ambiguous image of sink " + to_string(e_, x));
        piece = &p;
      }
    }
    if (!piece) throw InconsistencyError("sink " + to_string(e_, x) + " must map to a finite boundary path");
    return h_[x] = LassoPoint::finite(f_, piece->alpha);
  }
  if (x.is_infinite() && x.stem().empty()) {
    solve_cycle(x);
    return h_.at(x);
  }
  auto tail = image_point(shift(e_, x, 1));
  auto const& r = match(RuleKind::Edge, x);
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < r.image.size(); ++i) {
    if (tail.starts_with(r.image[i].beta)) {
      if (chosen) throw InconsistencyError("ambiguous piece for " + to_string(e_, x));
      chosen = i;
    }
  }
  if (!chosen) {
    throw InconsistencyError("no piece of the rule for " + to_string(e_, x) + " accepts " +
                             to_string(f_, tail));
  }
  auto const& p = r.image[*chosen];
  LassoPoint out;
  try {
    out = shift(f_, tail, p.beta.length()).prepend(f_, p.alpha);
  } catch (const DomainError& err) {
    throw InconsistencyError(std::string("piece does not chain: ") + err.what());
  }
  steps_[x] = {static_cast<std::size_t>(&r - table_.rules.data()), *chosen};
  return h_[x] = out;
}

std::pair<const BisectionRule*, const BisectionPiece*> TableMap::edge_step(const LassoPoint& x) {
  if (!x.is_infinite() && *x.length() == 0) throw DomainError("edge step needs a point of length >= 1");
  image_point(x);
  auto [r, p] = steps_.at(x);
  return {&table_.rules[r], &table_.rules[r].image[p]};
}

const BisectionPiece& TableMap::unit_piece(const LassoPoint& x) {
  auto hx = image_point(x);
  auto const& r = match(RuleKind::Unit, x);
  for (auto const& p : r.image) {
    if (hx.starts_with(p.alpha)) return p;
  }
  throw InconsistencyError("image " + to_string(f_, hx) + " of " + to_string(e_, x) +
                           " lies outside its unit rule");
}

GroupoidElement TableMap::generator_image(const LassoPoint& z) {
  auto [rule, piece] = edge_step(z);
  auto hz = image_point(z);
  auto hs = image_point(shift(e_, z, 1));
  auto a = piece->alpha.length();
  auto b = piece->beta.length();
  return GroupoidElement{hz, static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b), hs, a, b};
}

namespace {

template <typename El, typename Compose>
El compose_checked(const El& a, const El& b, const std::string& context, Compose c) {
  try {
    return c(a, b);
  } catch (const ComposabilityError&) {
    throw InconsistencyError("generator images do not compose for " + context);
  }
}

}  // namespace

GroupoidElement TableMap::apply(const GroupoidElement& a) {
  if (table_.levelled) throw PreconditionError("levelled table applied to a G_E element");
  auto ctx = to_string(e_, a);
  auto comp = [this](const GroupoidElement& u, const GroupoidElement& v) { return compose(f_, u, v); };
  unit_piece(a.x);
  auto result = unit(image_point(a.x));
  for (std::size_t i = 0; i < a.m; ++i) {
    result = compose_checked(result, generator_image(shift(e_, a.x, i)), ctx, comp);
  }
  for (std::size_t j = a.n; j-- > 0;) {
    result = compose_checked(result, inverse(generator_image(shift(e_, a.y, j))), ctx, comp);
  }
  unit_piece(a.y);
  return compose_checked(result, unit(image_point(a.y)), ctx, comp);
}

StabilizedElement TableMap::stab_unit_image(const StabilizedPoint& x) {
  auto const& p = unit_piece(x.base);
  auto lvl = static_cast<std::int64_t>(x.level);
  auto a = checked_level(p.range_level.eval(lvl), to_string(e_, x));
  if (p.source_level.eval(lvl) != a) throw InconsistencyError("unit piece with unequal levels");
  return stab_unit(StabilizedPoint{image_point(x.base), static_cast<std::size_t>(a)});
}

StabilizedElement TableMap::stab_head_image(const LassoPoint& x, std::size_t level) {
  auto hx = image_point(x);
  auto const& r = match(RuleKind::Head, x);
  for (auto const& p : r.image) {
    if (!hx.starts_with(p.alpha)) continue;
    auto n = static_cast<std::int64_t>(level) - 1;
    auto a = static_cast<std::size_t>(checked_level(p.range_level.eval(n), to_string(e_, x)));
    auto b = static_cast<std::size_t>(checked_level(p.source_level.eval(n), to_string(e_, x)));
    return StabilizedElement{{hx, a}, static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b),
                             {hx, b}, a, b};
  }
  throw InconsistencyError("image of " + to_string(e_, x) + " lies outside its head rule");
}

StabilizedElement TableMap::stab_edge_image(const LassoPoint& z) {
  auto [rule, piece] = edge_step(z);
  auto i = static_cast<std::size_t>(checked_level(piece->range_level.eval(0), to_string(e_, z)));
  auto j = static_cast<std::size_t>(checked_level(piece->source_level.eval(0), to_string(e_, z)));
  auto a = piece->alpha.length();
  auto b = piece->beta.length();
  return StabilizedElement{{image_point(z), i},
                           static_cast<std::int64_t>(i + a) - static_cast<std::int64_t>(j + b),
                           {image_point(shift(e_, z, 1)), j},
                           i + a,
                           j + b};
}

StabilizedElement TableMap::apply(const StabilizedElement& a) {
  if (!table_.levelled) throw PreconditionError("plain table applied to a stabilized element");
  auto ctx = to_string(e_, a);
  auto comp = [this](const StabilizedElement& u, const StabilizedElement& v) {
    return stab_compose(f_, u, v);
  };
  auto result = stab_unit_image(a.x);
  for (std::size_t s = a.x.level; s >= 1; --s) {
    result = compose_checked(result, stab_head_image(a.x.base, s), ctx, comp);
  }
  for (std::size_t t = 0; t < a.m - a.x.level; ++t) {
    result = compose_checked(result, stab_edge_image(shift(e_, a.x.base, t)), ctx, comp);
  }
  for (std::size_t t = a.n - a.y.level; t-- > 0;) {
    result = compose_checked(result, stab_inverse(stab_edge_image(shift(e_, a.y.base, t))), ctx, comp);
  }
  for (std::size_t s = 1; s <= a.y.level; ++s) {
    result = compose_checked(result, stab_inverse(stab_head_image(a.y.base, s)), ctx, comp);
  }
  return compose_checked(result, stab_unit_image(a.y), ctx, comp);
}

GroupoidElement apply_table(const Graph& e, const Graph& f, const BisectionTable& t,
                            const GroupoidElement& a) {
  TableMap map(e, f, t);
  return map.apply(a);
}

Report verify_groupoid_map(const Graph& e, const Graph& f, const GroupoidMap& phi,
                           const WeightFunction& ke, const WeightFunction& kf, std::size_t depth) {
  auto report = detail::verify_map<GroupoidElement, ElementHash, LassoHash>(e, f, phi, ke, kf, depth,
                                                                            GroupoidOps{});
  report.title = "groupoid map verified to depth " + std::to_string(depth);
  return report;
}

Report verify_table(const Graph& e, const Graph& f, const BisectionTable& t,
                    const WeightFunction& ke, const WeightFunction& kf, std::size_t depth) {
  TableMap map(e, f, t);
  auto report = verify_groupoid_map(
      e, f, [&map](const GroupoidElement& a) { return map.apply(a); }, ke, kf, depth);
  report.title = "table verified to depth " + std::to_string(depth);
  return report;
}

Report verify_stabilized_table(const Graph& e, const Graph& f, const BisectionTable& t,
                               const WeightFunction& ke, const WeightFunction& kf,
                               std::size_t depth) {
  TableMap map(e, f, t);
  auto report = verify_stabilized_map(
      e, f, [&map](const StabilizedElement& a) { return map.apply(a); }, ke, kf, depth);
  report.title = "levelled table verified to depth " + std::to_string(depth);
  return report;
}

}  // namespace shiftgrp
