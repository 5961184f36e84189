#include "shiftgrp/lpa.hpp"

#include <algorithm>
#include <sstream>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"

namespace shiftgrp {

LpaElement LpaElement::word_unchecked(const LpaWord& w, Rational c) {
  LpaElement out;
  out.add(w, c);
  return out;
}

LpaElement LpaElement::word(const Graph& g, const Path& mu, const Path& nu, Rational c) {
  if (!is_valid_path(g, mu) || !is_valid_path(g, nu) || path_range(g, mu) != path_range(g, nu)) {
    throw DomainError("s(" + to_string(g, mu) + ")*st(" + to_string(g, nu) + ") is not a word");
  }
  return word_unchecked({mu, nu}, c);
}

LpaElement LpaElement::edge(const Graph& g, Edge e) {
  return word_unchecked({Path{g.src(e), {e}}, vertex_path(g.rng(e))}, 1);
}

LpaElement LpaElement::edge_star(const Graph& g, Edge e) {
  return word_unchecked({vertex_path(g.rng(e)), Path{g.src(e), {e}}}, 1);
}

void LpaElement::add(const LpaWord& w, const Rational& c) {
  if (c.numerator() == 0) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (it->second.numerator() == 0) terms_.erase(it);
}

LpaElement& LpaElement::operator+=(const LpaElement& o) {
  for (auto const& [w, c] : o.terms_) add(w, c);
  return *this;
}

LpaElement& LpaElement::operator-=(const LpaElement& o) {
  for (auto const& [w, c] : o.terms_) add(w, -c);
  return *this;
}

LpaElement LpaElement::operator+(const LpaElement& o) const {
  auto out = *this;
  out += o;
  return out;
}

LpaElement LpaElement::operator-(const LpaElement& o) const {
  auto out = *this;
  out -= o;
  return out;
}

LpaElement LpaElement::scaled(const Rational& c) const {
  LpaElement out;
  for (auto const& [w, v] : terms_) out.add(w, v * c);
  return out;
}

LpaElement multiply(const Graph& g, const LpaElement& a, const LpaElement& b) {
  LpaElement out;
  for (auto const& [x, cx] : a.terms()) {
    for (auto const& [y, cy] : b.terms()) {
      if (is_prefix(x.nu, y.mu)) {
        out.add({concat(g, x.mu, drop_front(g, y.mu, x.nu.length())), y.nu}, cx * cy);
      } else if (is_prefix(y.mu, x.nu)) {
        out.add({x.mu, concat(g, y.nu, drop_front(g, x.nu, y.mu.length()))}, cx * cy);
      }
    }
  }
  return out;
}

LpaElement star(const LpaElement& a) {
  LpaElement out;
  for (auto const& [w, c] : a.terms()) out.add({w.nu, w.mu}, c);
  return out;
}

LpaElement normal_form(const Graph& g, const LpaElement& a, std::size_t d) {
  std::map<std::int64_t, std::size_t> target;
  for (auto const& [w, c] : a.terms()) {
    auto z = static_cast<std::int64_t>(w.mu.length()) - static_cast<std::int64_t>(w.nu.length());
    auto& t = target.try_emplace(z, d).first->second;
    t = std::max(t, w.nu.length());
  }
  LpaElement out;
  std::vector<std::pair<LpaWord, Rational>> todo(a.terms().begin(), a.terms().end());
  while (!todo.empty()) {
    auto [w, c] = std::move(todo.back());
    todo.pop_back();
    auto z = static_cast<std::int64_t>(w.mu.length()) - static_cast<std::int64_t>(w.nu.length());
    if (w.nu.length() >= target.at(z)) {
      out.add(w, c);
      continue;
    }
    auto v = path_range(g, w.nu);
    if (g.is_sink(v)) {
      throw AlignmentError("cannot expand s(" + to_string(g, w.mu) + ")*st(" + to_string(g, w.nu) +
                           ") past sink " + g.vertex_id(v));
    }
    for (Edge e : g.out_edges(v)) {
      LpaWord next{w.mu, w.nu};
      next.mu = concat(g, w.mu, Path{v, {e}});
      next.nu = concat(g, w.nu, Path{v, {e}});
      todo.emplace_back(std::move(next), c);
    }
  }
  return out;
}

bool lpa_equal(const Graph& g, const LpaElement& a, const LpaElement& b) {
  return normal_form(g, a - b).is_zero();
}

std::optional<GradedDegree> degree(const Graph& g, const LpaElement& a, const WeightFunction& k) {
  (void)g;
  std::optional<GradedDegree> out;
  for (auto const& [w, c] : a.terms()) {
    GradedDegree d{static_cast<std::int64_t>(w.mu.length()) - static_cast<std::int64_t>(w.nu.length()),
                   extend_weight(k, w.mu) - extend_weight(k, w.nu)};
    if (out && !(*out == d)) return std::nullopt;
    out = d;
  }
  return out;
}

namespace {

// Splits at top-level occurrences of any character in `seps`, keeping the
// separator at the front of the following piece.
std::vector<std::string_view> split_top(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && seps.find(s[i]) != std::string_view::npos && i > begin) {
      out.push_back(s.substr(begin, i - begin));
      begin = i;
    }
  }
  out.push_back(s.substr(begin));
  return out;
}

LpaElement parse_factor(const Graph& g, std::string_view f) {
  f = detail::trim(f);
  auto open = f.find('(');
  if (open == std::string_view::npos || f.back() != ')') throw DomainError("unbalanced factor '" + std::string(f) + "'");
  auto head = detail::trim(f.substr(0, open));
  auto arg = f.substr(open + 1, f.size() - open - 2);
  if (head == "p") {
    auto v = g.find_vertex(detail::trim(arg));
    if (!v) throw ReferenceError("unknown vertex '" + std::string(detail::trim(arg)) + "'");
    return LpaElement::vertex(*v);
  }
  auto p = parse_path(g, arg);
  auto r = vertex_path(path_range(g, p));
  if (head == "s") return LpaElement::word(g, p, r);
  if (head == "st") return LpaElement::word(g, r, p);
  throw DomainError("unknown factor '" + std::string(head) + "'");
}

}  // namespace

LpaElement parse_lpa(const Graph& g, std::string_view text) {
  auto t = detail::trim(text);
  LpaElement out;
  if (t.empty() || t == "0") return out;
  for (auto term : split_top(t, "+-")) {
    term = detail::trim(term);
    Rational sign = 1;
    while (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      if (term.front() == '-') sign = -sign;
      term = detail::trim(term.substr(1));
    }
    if (term.empty()) throw DomainError("empty term in '" + std::string(t) + "'");
    Rational coeff = sign;
    std::optional<LpaElement> product;
    for (auto factor : split_top(term, "*")) {
      factor = detail::trim(factor);
      if (!factor.empty() && factor.front() == '*') factor = detail::trim(factor.substr(1));
      if (factor.find('(') == std::string_view::npos) {
        coeff *= parse_rational(factor);
        continue;
      }
      auto el = parse_factor(g, factor);
      product = product ? multiply(g, *product, el) : el;
    }
    if (!product) throw DomainError("term '" + std::string(term) + "' has no generator");
    out += product->scaled(coeff);
  }
  return out;
}

std::string to_string(const Graph& g, const LpaElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto const& [w, c] : a.terms()) {
    auto mag = c.numerator() < 0 ? -c : c;
    if (first) {
      if (c.numerator() < 0) out << "-";
    } else {
      out << (c.numerator() < 0 ? " - " : " + ");
    }
    first = false;
    out << to_string(mag) << "*";
    if (w.mu.empty() && w.nu.empty()) {
      out << "p(" << g.vertex_id(w.mu.start) << ")";
    } else {
      out << "s(" << to_string(g, w.mu) << ")*st(" << to_string(g, w.nu) << ")";
    }
  }
  return out.str();
}

GeneratorImages identity_images(const Graph& g) {
  GeneratorImages out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) out.vertex.push_back(LpaElement::vertex(v));
  for (Edge e = 0; e < g.edge_count(); ++e) out.edge.push_back(LpaElement::edge(g, e));
  return out;
}

LpaElement image_of_word(const Graph& e, const Graph& f, const GeneratorImages& images, const LpaWord& w) {
  auto along = [&](const Path& p) {
    if (p.empty()) return images.vertex.at(p.start);
    LpaElement out = images.edge.at(p.edges.front());
    for (std::size_t i = 1; i < p.length(); ++i) out = multiply(f, out, images.edge.at(p.edges[i]));
    return out;
  };
  (void)e;
  return multiply(f, along(w.mu), star(along(w.nu)));
}

GeneratorImages induced_hom_from_table(const Graph& e, const Graph& f, const BisectionTable& t) {
  if (t.levelled) throw PreconditionError("levelled tables have no generator images in L(E)");
  GeneratorImages out;
  out.vertex.resize(e.vertex_count());
  out.edge.resize(e.edge_count());
  for (auto const& r : t.rules) {
    auto kind = rule_kind(e, r, false);
    for (auto const& p : r.image) {
      auto term = LpaElement::word(f, p.alpha, p.beta);
      if (kind == RuleKind::Unit) {
        out.vertex[r.source.mu.start] += term;
      } else {
        out.edge[r.source.mu.edges.front()] += term;
      }
    }
  }
  return out;
}

namespace {

Verdict relation_verdict(const char* name, const Graph& f,
                         const std::vector<std::pair<std::string, LpaElement>>& residuals, std::size_t count) {
  for (auto const& [what, res] : residuals) {
    auto nf = normal_form(f, res);
    if (!nf.is_zero()) return Verdict::fail(name, what, "residual " + to_string(f, nf));
  }
  return Verdict::pass(name, std::to_string(count) + " relations hold exactly");
}

std::optional<std::string> diagonal_failure(const Graph& e, const Graph& f, const GeneratorImages& images,
                                            std::size_t depth, std::size_t& checked) {
  for (std::size_t n = 0; n <= depth; ++n) {
    for (auto const& mu : enumerate_paths(e, std::nullopt, n)) {
      auto img = normal_form(f, image_of_word(e, f, images, {mu, mu}));
      ++checked;
      for (auto const& [w, c] : img.terms()) {
        if (w.mu != w.nu) {
          return "s(" + to_string(e, mu) + ")*st(" + to_string(e, mu) + ") maps to " + to_string(f, img);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Report verify_generator_hom(const Graph& e, const Graph& f, const GeneratorImages& images,
                            const WeightFunction& ke, const WeightFunction& kf, std::size_t depth,
                            const GeneratorImages* inverse) {
  if (images.vertex.size() != e.vertex_count() || images.edge.size() != e.edge_count()) {
    throw DomainError("generator images do not match the source graph");
  }
  Report r;
  r.title = "generator homomorphism checked to depth " + std::to_string(depth);
  r.parameters["depth"] = std::to_string(depth);
  auto const& P = images.vertex;
  auto const& S = images.edge;
  auto pv = [&](Vertex v) { return "p(" + e.vertex_id(v) + ")"; };
  auto se = [&](Edge x) { return "s(" + e.edge_id(x) + ")"; };
  auto st = [&](Edge x) { return "st(" + e.edge_id(x) + ")"; };

  std::vector<std::pair<std::string, LpaElement>> res;
  for (Vertex v = 0; v < e.vertex_count(); ++v) {
    res.push_back({pv(v) + "^2 = " + pv(v), multiply(f, P[v], P[v]) - P[v]});
    res.push_back({pv(v) + "* = " + pv(v), star(P[v]) - P[v]});
    for (Vertex w = 0; w < e.vertex_count(); ++w) {
      if (w != v) res.push_back({pv(v) + pv(w) + " = 0", multiply(f, P[v], P[w])});
    }
  }
  r.verdicts.push_back(relation_verdict("projections", f, res, res.size()));

  res.clear();
  for (Edge x = 0; x < e.edge_count(); ++x) {
    for (Edge y = 0; y < e.edge_count(); ++y) {
      auto lhs = multiply(f, star(S[x]), S[y]);
      if (x == y) {
        res.push_back({st(x) + "*" + se(x) + " = " + pv(e.rng(x)), lhs - P[e.rng(x)]});
      } else {
        res.push_back({st(x) + "*" + se(y) + " = 0", lhs});
      }
    }
  }
  r.verdicts.push_back(relation_verdict("CK1", f, res, res.size()));

  res.clear();
  for (Edge x = 0; x < e.edge_count(); ++x) {
    auto range = multiply(f, S[x], star(S[x]));
    res.push_back({pv(e.src(x)) + "*" + se(x) + "*" + st(x) + " = " + se(x) + "*" + st(x),
                   multiply(f, P[e.src(x)], range) - range});
  }
  r.verdicts.push_back(relation_verdict("CK2", f, res, res.size()));

  res.clear();
  for (Vertex v = 0; v < e.vertex_count(); ++v) {
    if (e.is_sink(v)) continue;
    LpaElement sum;
    for (Edge x : e.out_edges(v)) sum += multiply(f, S[x], star(S[x]));
    res.push_back({pv(v) + " = sum of s(e)s(e)* over edges at " + e.vertex_id(v), P[v] - sum});
  }
  r.verdicts.push_back(relation_verdict("CK3", f, res, res.size()));

  std::size_t checked = 0;
  auto diag = diagonal_failure(e, f, images, depth, checked);
  if (!diag && inverse) diag = diagonal_failure(f, e, *inverse, depth, checked);
  r.verdicts.push_back(diag ? Verdict::fail("diagonal", *diag)
                            : Verdict::pass("diagonal", std::to_string(checked) + " range projections stay diagonal"));

  Verdict grading = Verdict::pass("grading");
  std::size_t words = 0;
  std::vector<std::vector<Path>> by_range(e.vertex_count());
  for (std::size_t n = 0; n <= depth; ++n) {
    for (auto& p : enumerate_paths(e, std::nullopt, n)) by_range[path_range(e, p)].push_back(std::move(p));
  }
  for (Vertex v = 0; v < e.vertex_count() && grading.passed(); ++v) {
    for (auto const& mu : by_range[v]) {
      for (auto const& nu : by_range[v]) {
        LpaWord w{mu, nu};
        auto src_deg = *degree(e, LpaElement::word(e, mu, nu), ke);
        auto img = normal_form(f, image_of_word(e, f, images, w));
        auto img_deg = degree(f, img, kf);
        ++words;
        if (!img_deg || !(*img_deg == src_deg)) {
          auto shown = img_deg ? "(" + std::to_string(img_deg->z) + ", " + to_string(img_deg->weight) + ")"
                               : std::string(img.is_zero() ? "zero" : "mixed");
          grading = Verdict::fail("grading", "s(" + to_string(e, mu) + ")*st(" + to_string(e, nu) + ")",
                                  "degree (" + std::to_string(src_deg.z) + ", " + to_string(src_deg.weight) +
                                      ") maps to " + shown + ": " + to_string(f, img));
          break;
        }
      }
      if (!grading.passed()) break;
    }
  }
  if (grading.passed()) grading.detail = std::to_string(words) + " words keep their degree";
  r.verdicts.push_back(grading);
  return r;
}

}  // namespace shiftgrp
