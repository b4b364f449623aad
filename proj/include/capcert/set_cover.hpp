#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "capcert/geometry.hpp"

namespace capcert {

using Mask = std::uint64_t;

inline Mask full_mask(std::size_t universe) {
  if (universe > 64) throw desk_scale_error("set cover universe limited to 64 elements");
  return universe == 64 ? ~Mask{0} : (Mask{1} << universe) - 1;
}

struct SetCoverResult {
  std::size_t size = 0;
  std::vector<std::size_t> chosen;
};

/// Standard greedy cover: repeatedly take the set covering the most
/// still-uncovered elements, lowest index on ties.
inline SetCoverResult greedy_set_cover(std::size_t universe,
                                       const std::vector<Mask>& sets) {
  Mask uncovered = full_mask(universe);
  SetCoverResult result;
  while (uncovered != 0) {
    std::size_t best = sets.size();
    int best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const int gain = std::popcount(sets[s] & uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best == sets.size()) throw error("universe element covered by no set");
    uncovered &= ~sets[best];
    result.chosen.push_back(best);
  }
  result.size = result.chosen.size();
  return result;
}

namespace detail {

struct CoverSearch {
  const std::vector<Mask>& sets;
  std::size_t best;
  std::vector<std::size_t> best_chosen;
  std::vector<std::size_t> chosen;

  void dfs(Mask uncovered) {
    if (uncovered == 0) {
      if (chosen.size() < best) {
        best = chosen.size();
        best_chosen = chosen;
      }
      return;
    }
    int max_gain = 0;
    for (const Mask s : sets) max_gain = std::max(max_gain, std::popcount(s & uncovered));
    if (max_gain == 0) throw error("universe element covered by no set");
    const std::size_t bound =
        (static_cast<std::size_t>(std::popcount(uncovered)) +
         static_cast<std::size_t>(max_gain) - 1) /
        static_cast<std::size_t>(max_gain);
    if (chosen.size() + bound >= best) return;

    // Branch on the uncovered element with the fewest covering sets.
    std::size_t pick = 64;
    std::size_t pick_count = sets.size() + 1;
    for (Mask rest = uncovered; rest != 0; rest &= rest - 1) {
      const std::size_t e = static_cast<std::size_t>(std::countr_zero(rest));
      std::size_t count = 0;
      for (const Mask s : sets)
        if (s & (Mask{1} << e)) ++count;
      if (count < pick_count) {
        pick_count = count;
        pick = e;
      }
    }
    std::vector<std::size_t> candidates;
    candidates.reserve(pick_count);
    for (std::size_t s = 0; s < sets.size(); ++s)
      if (sets[s] & (Mask{1} << pick)) candidates.push_back(s);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) {
                       return std::popcount(sets[a] & uncovered) >
                              std::popcount(sets[b] & uncovered);
                     });
    for (const std::size_t s : candidates) {
      chosen.push_back(s);
      dfs(uncovered & ~sets[s]);
      chosen.pop_back();
    }
  }
};

}  // namespace detail

/// Minimum set cover by depth-first branch and bound: branch on the
/// hardest-to-cover element, bound by ceil(uncovered / best possible
/// coverage), start from the greedy incumbent.
inline SetCoverResult exact_set_cover(std::size_t universe,
                                      const std::vector<Mask>& sets) {
  const SetCoverResult greedy = greedy_set_cover(universe, sets);
  detail::CoverSearch search{sets, greedy.size, greedy.chosen, {}};
  search.dfs(full_mask(universe));
  return SetCoverResult{search.best, search.best_chosen};
}

}  // namespace capcert
