#pragma once

// Exhaustive ground truth. Every total map element -> attach point is
// generated; maps with a self-attachment or a cycle are dropped. Nothing
// here uses a counting formula or the Prufer code.

#include "chaintree/core.hpp"
#include "chaintree/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chaintree {

struct EnumerationBudget {
  std::uint64_t max_states = 10'000'000;
};

namespace detail {

inline void check_budget(const ChainProfile& profile, const EnumerationBudget& budget) {
  const std::uint64_t a = profile.alphabet_size();
  std::uint64_t total = 1;
  for (int i = 0; i < profile.k(); ++i) {
    if (total > budget.max_states / a) {
      throw BudgetExceeded("parent-map space " + std::to_string(a) + "^" + std::to_string(profile.k()) +
                           " exceeds budget " + std::to_string(budget.max_states));
    }
    total *= a;
  }
}

// Calls `visit(owner)` for each acyclic, self-free parent map, where
// owner[c] is the element index (0 = root) of parent(c) and digit[c] indexes
// the alphabet. Maps are visited in lexicographic order with element 1 most
// significant.
template <typename Visit>
void for_each_parent_map(const ChainProfile& profile, const std::vector<AttachPoint>& letters, Visit&& visit) {
  const int k = profile.k();
  const std::size_t a = letters.size();
  std::vector<std::size_t> digit(static_cast<std::size_t>(k) + 1, 0);
  std::vector<Color> owner(static_cast<std::size_t>(k) + 1, 0);

  while (true) {
    bool ok = true;
    for (Color c = 1; c <= k && ok; ++c) ok = owner[static_cast<std::size_t>(c)] != c;
    for (Color start = 1; start <= k && ok; ++start) {
      Color at = start;
      for (int step = 0; step < k && at != 0; ++step) at = owner[static_cast<std::size_t>(at)];
      ok = at == 0;
    }
    if (ok) visit(digit, owner);

    // odometer, last element fastest
    Color c = k;
    for (; c >= 1; --c) {
      auto& d = digit[static_cast<std::size_t>(c)];
      if (++d < a) {
        owner[static_cast<std::size_t>(c)] = letters[d].element;
        break;
      }
      d = 0;
      owner[static_cast<std::size_t>(c)] = letters[0].element;
    }
    if (c == 0) return;
  }
}

}  // namespace detail

/// Invokes `sink` with every rooted diagram of the profile. Throws
/// BudgetExceeded when alphabet_size^k exceeds the budget.
inline void enumerate_rooted(const ChainProfile& profile, const EnumerationBudget& budget,
                             const std::function<void(const RootedDiagram&)>& sink) {
  detail::check_budget(profile, budget);
  const auto letters = alphabet(profile);
  RootedDiagram d{profile, std::vector<AttachPoint>(static_cast<std::size_t>(profile.k()))};
  detail::for_each_parent_map(profile, letters, [&](const auto& digit, const auto&) {
    for (Color c = 1; c <= profile.k(); ++c) {
      d.parents[static_cast<std::size_t>(c - 1)] = letters[digit[static_cast<std::size_t>(c)]];
    }
    sink(d);
  });
}

inline std::vector<RootedDiagram> collect_rooted(const ChainProfile& profile, const EnumerationBudget& budget = {}) {
  std::vector<RootedDiagram> out;
  enumerate_rooted(profile, budget, [&](const RootedDiagram& d) { out.push_back(d); });
  return out;
}

/// Number of rooted diagrams, by exhaustive search.
inline std::uint64_t count_rooted_exhaustive(const ChainProfile& profile, const EnumerationBudget& budget = {}) {
  detail::check_budget(profile, budget);
  std::uint64_t n = 0;
  detail::for_each_parent_map(profile, alphabet(profile), [&](const auto&, const auto&) { ++n; });
  return n;
}

/// Unrooted diagrams: divide out the root choice (alphabet_size) and restore
/// the marked-vertex rotations (prod q_i). Throws InvariantError if the
/// division is not exact.
inline BigInt count_unrooted(const ChainProfile& profile, const EnumerationBudget& budget = {}) {
  const BigInt scaled = BigInt(count_rooted_exhaustive(profile, budget)) * profile.product();
  const BigInt a = profile.alphabet_size();
  if (scaled % a != 0) {
    throw InvariantError("rooted count * prod q_i is not divisible by alphabet size " + a.str());
  }
  return scaled / a;
}

}  // namespace chaintree
