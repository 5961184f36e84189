#pragma once

// Shared depth-bounded verifier for candidate groupoid isomorphisms. `Ops`
// supplies sampling, composition, cocycles and printing for one element type.

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftgrp/errors.hpp"
#include "shiftgrp/groupoid.hpp"
#include "shiftgrp/report.hpp"

namespace shiftgrp::detail {

template <typename El, typename Hash, typename PointHash, typename Ops>
Report verify_map(const Graph& e, const Graph& f, const std::function<El(const El&)>& phi,
                  const WeightFunction& ke, const WeightFunction& kf, std::size_t depth,
                  const Ops& ops) {
  Report report;
  report.parameters["depth"] = std::to_string(depth);
  auto sample = ops.sample(e, depth);
  report.parameters["sample_size"] = std::to_string(sample.size());

  std::unordered_map<El, El, Hash> image;
  std::string map_failure;
  auto mapped = [&](const El& a) -> const El* {
    if (auto it = image.find(a); it != image.end()) return &it->second;
    try {
      return &image.emplace(a, phi(a)).first->second;
    } catch (const Error& err) {
      if (map_failure.empty()) map_failure = ops.str(e, a) + ": " + err.what();
      return nullptr;
    }
  };

  std::vector<const El*> images;
  images.reserve(sample.size());
  for (auto const& a : sample) images.push_back(mapped(a));

  // Cocycle preservation.
  {
    Verdict v = Verdict::pass("cocycle");
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (!images[i]) continue;
      auto lhs = ops.cocycle(f, kf, *images[i]);
      auto rhs = ops.cocycle(e, ke, sample[i]);
      if (lhs != rhs) {
        v = Verdict::fail("cocycle", ops.str(e, sample[i]) + " -> " + ops.str(f, *images[i]),
                          "c_F = " + to_string(lhs) + " but c_E = " + to_string(rhs));
        break;
      }
    }
    report.verdicts.push_back(v);
  }

  // Bijectivity on the sample.
  {
    Verdict v = Verdict::pass("bijectivity");
    std::unordered_map<El, std::size_t, Hash> preimage;
    for (std::size_t i = 0; i < sample.size() && v.passed(); ++i) {
      if (!images[i]) continue;
      auto [it, fresh] = preimage.emplace(*images[i], i);
      if (!fresh) {
        v = Verdict::fail("bijectivity",
                          ops.str(e, sample[it->second]) + " and " + ops.str(e, sample[i]),
                          "both map to " + ops.str(f, *images[i]));
      }
    }
    if (v.passed()) {
      auto targets = ops.sample(f, depth / 2);
      for (auto const& t : targets) {
        if (!preimage.contains(t)) {
          v = Verdict::fail("bijectivity", ops.str(f, t),
                            "not hit by the depth-" + std::to_string(depth) + " sample");
          break;
        }
      }
      if (v.passed()) {
        v.detail = "injective on " + std::to_string(sample.size()) + " elements; hits all " +
                   std::to_string(targets.size()) + " target elements at depth " +
                   std::to_string(depth / 2);
      }
    }
    report.verdicts.push_back(v);
  }

  // Morphism on composable sampled pairs.
  {
    Verdict v = Verdict::pass("morphism");
    if (!map_failure.empty()) {
      v = Verdict::fail("morphism", map_failure, "element could not be mapped");
    } else {
      std::unordered_map<decltype(ops.range(sample.front())), std::vector<std::size_t>, PointHash>
          by_range;
      for (std::size_t i = 0; i < sample.size(); ++i) by_range[ops.range(sample[i])].push_back(i);
      std::size_t pairs = 0;
      for (std::size_t i = 0; i < sample.size() && v.passed(); ++i) {
        auto it = by_range.find(ops.source(sample[i]));
        if (it == by_range.end()) continue;
        for (auto j : it->second) {
          ++pairs;
          auto ab = ops.compose(e, sample[i], sample[j]);
          const El* lhs = mapped(ab);
          auto what = [&] { return ops.str(e, sample[i]) + " * " + ops.str(e, sample[j]); };
          if (!lhs) {
            v = Verdict::fail("morphism", what(), map_failure);
            break;
          }
          try {
            auto rhs = ops.compose(f, *images[i], *images[j]);
            if (!(rhs == *lhs)) {
              v = Verdict::fail("morphism", what(),
                                "maps to " + ops.str(f, *lhs) + " but images compose to " +
                                    ops.str(f, rhs));
              break;
            }
          } catch (const ComposabilityError&) {
            v = Verdict::fail("morphism", what(), "images are not composable");
            break;
          }
        }
      }
      if (v.passed()) v.detail = std::to_string(pairs) + " composable pairs";
    }
    report.verdicts.push_back(v);
  }
  return report;
}

}  // namespace shiftgrp::detail
