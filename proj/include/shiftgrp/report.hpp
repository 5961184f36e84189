#pragma once

// Three-valued verdicts collected into reports. Every failure carries a
// serialized witness.

#include <map>
#include <string>
#include <vector>

namespace shiftgrp {

enum class Outcome { Pass, Fail, Inconclusive };

std::string to_string(Outcome o);

struct Verdict {
  std::string name;
  Outcome outcome = Outcome::Pass;
  std::string witness;
  std::string detail;

  static Verdict pass(std::string name, std::string detail = {}) {
    return {std::move(name), Outcome::Pass, {}, std::move(detail)};
  }
  static Verdict fail(std::string name, std::string witness, std::string detail = {}) {
    return {std::move(name), Outcome::Fail, std::move(witness), std::move(detail)};
  }
  static Verdict inconclusive(std::string name, std::string detail = {}) {
    return {std::move(name), Outcome::Inconclusive, {}, std::move(detail)};
  }
  bool passed() const { return outcome == Outcome::Pass; }
};

struct Report {
  std::string title;
  std::map<std::string, std::string> parameters;
  std::vector<Verdict> verdicts;

  // Fail dominates Inconclusive, which dominates Pass.
  Outcome overall() const;
  const Verdict* find(const std::string& name) const;
  bool passed() const { return overall() == Outcome::Pass; }
  std::string to_text() const;
};

}  // namespace shiftgrp
