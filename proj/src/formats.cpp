#include <sstream>

#include "shiftgrp/errors.hpp"
#include "shiftgrp/rational.hpp"
#include "shiftgrp/report.hpp"
#include "text_util.hpp"

namespace shiftgrp {

namespace {

std::int64_t parse_int(std::string_view s) {
  s = detail::trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw DomainError("missing digits in rational");
  std::int64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw DomainError("bad digit '" + std::string(1, c) + "' in rational");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto t = detail::trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(t));
  auto den = parse_int(t.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator");
  return Rational(parse_int(t.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Outcome Report::overall() const {
  Outcome out = Outcome::Pass;
  for (auto const& v : verdicts) {
    if (v.outcome == Outcome::Fail) return Outcome::Fail;
    if (v.outcome == Outcome::Inconclusive) out = Outcome::Inconclusive;
  }
  return out;
}

const Verdict* Report::find(const std::string& name) const {
  for (auto const& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::string Report::to_text() const {
  std::ostringstream out;
  if (!title.empty()) out << title << "\n";
  for (auto const& [k, v] : parameters) out << "  " << k << " = " << v << "\n";
  for (auto const& v : verdicts) {
    out << "  [" << to_string(v.outcome) << "] " << v.name;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << "\n";
    if (!v.witness.empty()) out << "      witness: " << v.witness << "\n";
  }
  out << "overall: " << to_string(overall()) << "\n";
  return out.str();
}

}  // namespace shiftgrp
