#include "shiftgrp/stabilization.hpp"

#include <algorithm>
#include <unordered_set>

#include "shiftgrp/errors.hpp"
#include "text_util.hpp"
#include "verify_impl.hpp"

namespace shiftgrp {

namespace {

struct StabPointHash {
  std::size_t operator()(const StabilizedPoint& x) const noexcept {
    return LassoHash{}(x.base) * 7 + x.level;
  }
};

struct StabOps {
  std::vector<StabilizedElement> sample(const Graph& g, std::size_t d) const {
    return stab_elements_to_depth(g, d);
  }
  StabilizedElement compose(const Graph& g, const StabilizedElement& a,
                            const StabilizedElement& b) const {
    return stab_compose(g, a, b);
  }
  Rational cocycle(const Graph& g, const WeightFunction& k, const StabilizedElement& a) const {
    return stab_cocycle(g, k, a);
  }
  std::string str(const Graph& g, const StabilizedElement& a) const { return to_string(g, a); }
  StabilizedPoint range(const StabilizedElement& a) const { return a.x; }
  StabilizedPoint source(const StabilizedElement& a) const { return a.y; }
};

}  // namespace

bool StabilizedElement::operator<(const StabilizedElement& o) const {
  if (x != o.x) return x < o.x;
  if (p != o.p) return p < o.p;
  return y < o.y;
}

std::size_t StabilizedElementHash::operator()(const StabilizedElement& g) const noexcept {
  StabPointHash h;
  return h(g.x) * 31 + h(g.y) * 131 + static_cast<std::size_t>(g.p) * 1000003;
}

StabilizedElement make_stab_element(const Graph& g, const StabilizedPoint& x,
                                    const StabilizedPoint& y, std::size_t m, std::size_t n) {
  if (m < x.level || n < y.level) throw DomainError("witness must clear the head levels");
  if (shift(g, x.base, m - x.level) != shift(g, y.base, n - y.level)) {
    throw DomainError("witness (" + std::to_string(m) + "," + std::to_string(n) +
                      ") does not relate " + to_string(g, x) + " and " + to_string(g, y));
  }
  return StabilizedElement{x, static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n), y, m, n};
}

StabilizedElement stab_unit(const StabilizedPoint& x) {
  return StabilizedElement{x, 0, x, x.level, x.level};
}

StabilizedElement embed(const GroupoidElement& a) {
  return StabilizedElement{{a.x, 0}, a.p, {a.y, 0}, a.m, a.n};
}

StabilizedElement stab_compose(const Graph& g, const StabilizedElement& a,
                               const StabilizedElement& b) {
  if (a.y != b.x) {
    throw ComposabilityError("cannot compose " + to_string(g, a) + " with " + to_string(g, b));
  }
  auto t = std::max(a.n, b.m);
  return StabilizedElement{a.x, a.p + b.p, b.y, a.m + t - a.n, b.n + t - b.m};
}

StabilizedElement stab_inverse(const StabilizedElement& a) {
  return StabilizedElement{a.y, -a.p, a.x, a.n, a.m};
}

Rational stab_cocycle(const Graph& g, const WeightFunction& k, const StabilizedElement& a) {
  if (a.m < a.x.level || a.n < a.y.level) throw DomainError("invalid stabilized witness");
  return extend_weight(k, a.x.base.prefix(g, a.m - a.x.level)) -
         extend_weight(k, a.y.base.prefix(g, a.n - a.y.level));
}

std::vector<StabilizedElement> stab_elements_to_depth(const Graph& g, std::size_t depth) {
  std::unordered_set<StabilizedElement, StabilizedElementHash> seen;
  std::vector<StabilizedElement> out;
  for (auto const& a : elements_to_depth(g, depth)) {
    for (std::size_t i = 0; a.m + i <= depth; ++i) {
      for (std::size_t j = 0; a.n + j <= depth; ++j) {
        StabilizedElement s{{a.x, i},
                            a.p + static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j),
                            {a.y, j},
                            a.m + i,
                            a.n + j};
        if (seen.insert(s).second) out.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StabilizedPoint parse_stab_point(const Graph& g, std::string_view text) {
  auto t = detail::trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
    throw DomainError("stabilized point literal must be parenthesized");
  }
  t = t.substr(1, t.size() - 2);
  auto at = t.rfind('@');
  if (at == std::string_view::npos) throw DomainError("stabilized point literal needs '@ level'");
  auto level_text = detail::trim(t.substr(at + 1));
  std::size_t level = 0;
  for (char c : level_text) {
    if (c < '0' || c > '9') throw DomainError("bad level '" + std::string(level_text) + "'");
    level = level * 10 + static_cast<std::size_t>(c - '0');
  }
  if (level_text.empty()) throw DomainError("missing level");
  return StabilizedPoint{parse_lasso(g, t.substr(0, at)), level};
}

std::string to_string(const Graph& g, const StabilizedPoint& x) {
  return "(" + to_string(g, x.base) + " @ " + std::to_string(x.level) + ")";
}

std::string to_string(const Graph& g, const StabilizedElement& a) {
  return "(" + to_string(g, a.x) + ", " + std::to_string(a.p) + ", " + to_string(g, a.y) + ")";
}

Report verify_stabilized_map(const Graph& e, const Graph& f, const StabilizedMap& phi,
                             const WeightFunction& ke, const WeightFunction& kf,
                             std::size_t depth) {
  auto report = detail::verify_map<StabilizedElement, StabilizedElementHash, StabPointHash>(
      e, f, phi, ke, kf, depth, StabOps{});
  report.title = "stabilized map verified to depth " + std::to_string(depth);
  return report;
}

}  // namespace shiftgrp
