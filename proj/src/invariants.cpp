#include "shiftgrp/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "shiftgrp/errors.hpp"

namespace shiftgrp {

std::string to_string(const AbelianGroupPresentation& g) {
  std::string out;
  for (std::size_t i = 0; i < g.rank; ++i) out += out.empty() ? "Z" : " + Z";
  for (auto t : g.torsion) out += (out.empty() ? "Z/" : " + Z/") + std::to_string(t);
  return out.empty() ? "0" : out;
}

namespace {

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &acc)) {
    throw BoundExceededError("periodic point count overflows 64 bits");
  }
  return acc;
}

}  // namespace

std::int64_t periodic_count(const Graph& g, std::size_t p) {
  if (p == 0) throw DomainError("period must be positive");
  auto a = g.adjacency();
  auto n = a.n;
  std::vector<std::int64_t> power(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) power[i * n + i] = 1;
  for (std::size_t step = 0; step < p; ++step) {
    std::vector<std::int64_t> next(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (power[i * n + k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          next[i * n + j] = checked_mul_add(next[i * n + j], power[i * n + k], a.at(k, j));
        }
      }
    }
    power = std::move(next);
  }
  std::int64_t trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += power[i * n + i];
  return trace;
}

std::vector<std::int64_t> smith_diagonal(std::size_t n, std::vector<std::int64_t> m) {
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return m[i * n + j]; };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (at(i, j) != 0 && (pi == n || std::llabs(at(i, j)) < std::llabs(at(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == n) return [&] {
        std::vector<std::int64_t> d;
        for (std::size_t i = 0; i < n; ++i) d.push_back(std::llabs(at(i, i)));
        return d;
      }();
      for (std::size_t j = 0; j < n; ++j) std::swap(at(t, j), at(pi, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(at(i, t), at(i, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        auto q = at(i, t) / at(t, t);
        for (std::size_t j = t; j < n; ++j) at(i, j) -= q * at(t, j);
        if (at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        auto q = at(t, j) / at(t, t);
        for (std::size_t i = t; i < n; ++i) at(i, j) -= q * at(i, t);
        if (at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a non-multiple from the trailing block into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (at(i, j) % at(t, t) != 0) {
            for (std::size_t k = t; k < n; ++k) at(t, k) += at(i, k);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(std::llabs(at(i, i)));
  return d;
}

AbelianGroupPresentation bowen_franks(const Graph& g) {
  auto a = g.adjacency();
  auto n = a.n;
  std::vector<std::int64_t> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = (i == j ? 1 : 0) - a.at(j, i);
  }
  AbelianGroupPresentation out;
  for (auto d : smith_diagonal(n, std::move(m))) {
    if (d == 0) {
      ++out.rank;
    } else if (d > 1) {
      out.torsion.push_back(d);
    }
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace shiftgrp
