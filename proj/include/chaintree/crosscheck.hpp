#pragma once

// Whole-toolkit consistency run: every counting route against every other,
// the exhaustive oracle against the formulas, the codec against the oracle,
// and the generating-function identities.

#include "chaintree/core.hpp"
#include "chaintree/counting.hpp"
#include "chaintree/format.hpp"
#include "chaintree/oracle.hpp"
#include "chaintree/prufer.hpp"
#include "chaintree/series.hpp"

#include <chrono>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace chaintree {

struct CrosscheckOptions {
  int q_max = 3;
  int k_max = 12;
  int sum_q_max = 9;
  EnumerationBudget budget{};
  // Negative control: replace d_3^{(3)} in the closed-form column by 183.
  bool inject_183 = false;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t items = 0;
  double millis = 0;
  std::vector<std::string> failures;

  void fail(std::string message) {
    passed = false;
    if (failures.size() < 20) failures.push_back(std::move(message));
  }
};

/// Every ordered profile (q_1..q_k), q_i >= 1, with sum q_i <= max_sum.
inline std::vector<ChainProfile> profiles_up_to(int max_sum) {
  std::vector<ChainProfile> out;
  for (int total = 1; total <= max_sum; ++total) {
    for (int parts = 1; parts <= total; ++parts) {
      for (const auto& lengths : compositions(total, parts, 1)) out.emplace_back(lengths);
    }
  }
  return out;
}

namespace detail {

template <typename Body>
CheckResult timed_check(std::string name, Body&& body) {
  CheckResult result;
  result.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(result);
  } catch (const std::exception& e) {
    result.fail(std::string("exception: ") + e.what());
  }
  result.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline bool within_budget(const ChainProfile& profile, const EnumerationBudget& budget) {
  const std::uint64_t a = profile.alphabet_size();
  std::uint64_t total = 1;
  for (int i = 0; i < profile.k(); ++i) {
    if (total > budget.max_states / a) return false;
    total *= a;
  }
  return true;
}

}  // namespace detail

inline CheckResult check_counting_routes(const CrosscheckOptions& opt) {
  return detail::timed_check("counting_routes", [&](CheckResult& r) {
    for (int q = 2; q <= opt.q_max; ++q) {
      const auto recurrence = d_sequence_recurrence(q, std::max(opt.k_max, 1));
      const auto h_rec = h_sequence_recurrence(q, opt.k_max);
      const auto series = solve_H(q, opt.k_max);
      for (int k = 1; k <= opt.k_max; ++k) {
        BigInt closed = count_regular(q, k);
        if (opt.inject_183 && q == 3 && k == 3) closed = 183;
        const BigInt values[] = {closed, recurrence.rows[static_cast<std::size_t>(k - 1)].d,
                                 d_from_h(q, k, h_rec[static_cast<std::size_t>(k)]), d_from_h(q, k, series[k]),
                                 d_from_h(q, k, lagrange_h(q, k))};
        const char* names[] = {"closed", "recurrence", "h-recurrence", "series", "lagrange"};
        for (std::size_t m = 1; m < std::size(values); ++m) {
          if (values[m] != values[0]) {
            r.fail("q=" + std::to_string(q) + " k=" + std::to_string(k) + ": " + names[0] + "=" + values[0].str() +
                   " vs " + names[m] + "=" + values[m].str());
          }
        }
        ++r.items;
      }
    }
  });
}

inline CheckResult check_oracle_regular(const CrosscheckOptions& opt) {
  return detail::timed_check("oracle_regular", [&](CheckResult& r) {
    for (int q = 2; q <= std::min(opt.q_max, 4); ++q) {
      for (int k = 1; k <= opt.k_max; ++k) {
        const auto profile = ChainProfile::regular(q, k);
        if (!detail::within_budget(profile, opt.budget)) break;
        const BigInt rooted = count_rooted_exhaustive(profile, opt.budget);
        if (rooted != count_rooted(profile)) {
          r.fail("rooted q=" + std::to_string(q) + " k=" + std::to_string(k) + ": " + rooted.str());
        }
        const BigInt unrooted = count_unrooted(profile, opt.budget);
        BigInt closed = count_regular(q, k);
        if (opt.inject_183 && q == 3 && k == 3) closed = 183;
        if (unrooted != closed) {
          r.fail("q=" + std::to_string(q) + " k=" + std::to_string(k) + ": oracle=" + unrooted.str() +
                 " closed=" + closed.str());
        }
        ++r.items;
      }
    }
  });
}

inline CheckResult check_irregular(const CrosscheckOptions& opt) {
  return detail::timed_check("irregular_profiles", [&](CheckResult& r) {
    for (const auto& profile : profiles_up_to(opt.sum_q_max)) {
      if (!detail::within_budget(profile, opt.budget)) continue;
      const BigInt oracle = count_unrooted(profile, opt.budget);
      const BigInt closed = count_irregular(profile);
      if (oracle != closed) r.fail("profile " + render_profile(profile) + ": oracle=" + oracle.str() + " closed=" + closed.str());
      if (profile.is_regular() && profile.lengths().front() >= 2 &&
          closed != count_regular(profile.lengths().front(), profile.k())) {
        r.fail("profile " + render_profile(profile) + ": regular reduction fails");
      }
      ++r.items;
    }
    if (opt.sum_q_max >= 6) {
      const ChainProfile witness({1, 2, 3});
      if (count_irregular_as_printed(witness) == count_unrooted(witness, opt.budget)) {
        r.fail("printed irregular form unexpectedly agrees on 1,2,3");
      }
    }
  });
}

inline CheckResult check_codec(const CrosscheckOptions& opt) {
  return detail::timed_check("codec_bijection", [&](CheckResult& r) {
    std::vector<ChainProfile> profiles;
    for (int q = 2; q <= opt.q_max; ++q) {
      for (int k = 1; k <= std::min(opt.k_max, 4); ++k) profiles.push_back(ChainProfile::regular(q, k));
    }
    for (auto& p : profiles_up_to(opt.sum_q_max)) profiles.push_back(std::move(p));

    for (const auto& profile : profiles) {
      if (!detail::within_budget(profile, opt.budget)) continue;
      std::uint64_t diagrams = 0;
      enumerate_rooted(profile, opt.budget, [&](const RootedDiagram& d) {
        if (decode(encode(d)) != d) r.fail("decode(encode(d)) != d for " + render_diagram(d));
        ++diagrams;
      });
      std::set<std::vector<AttachPoint>> images;
      for (const auto& s : enumerate_sequences(profile, opt.budget.max_states)) {
        const RootedDiagram d = decode(s);
        if (auto v = validate_diagram(d)) r.fail("decode produced invalid diagram: " + v->message);
        if (encode(d) != s) r.fail("encode(decode(s)) != s for " + render_sequence(s));
        images.insert(d.parents);
        ++r.items;
      }
      if (images.size() != diagrams || BigInt(diagrams) != count_rooted(profile)) {
        r.fail("profile " + render_profile(profile) + ": " + std::to_string(images.size()) + " decoded vs " +
               std::to_string(diagrams) + " enumerated");
      }
    }
  });
}

inline CheckResult check_identities(const CrosscheckOptions& opt) {
  return detail::timed_check("series_identities", [&](CheckResult& r) {
    const int order = std::max(opt.k_max + 1, 2);
    for (int q = 2; q <= opt.q_max; ++q) {
      const auto report = verify_identities(q, order);
      for (const auto& res : report.residuals) {
        if (!res.vanishes()) {
          r.fail("q=" + std::to_string(q) + " " + res.name + " nonzero at z^" +
                 std::to_string(*res.residual.first_nonzero()));
        }
        ++r.items;
      }
    }
  });
}

inline CheckResult check_worked_example() {
  return detail::timed_check("worked_example", [&](CheckResult& r) {
    const auto profile = ChainProfile::regular(3, 6);
    const auto s = parse_sequence("b2,0,b1,a1,e2", profile);
    const auto d = decode(s);
    const auto expected = parse_diagram(
        R"({"profile":[3,3,3,3,3,3],"parents":[{"elem":"a","attach":"e2"},{"elem":"b","attach":"a1"},)"
        R"({"elem":"c","attach":"b2"},{"elem":"d","attach":"0"},{"elem":"e","attach":"0"},{"elem":"f","attach":"b1"}]})");
    if (d != expected) r.fail("decode gave " + render_diagram(d));
    if (render_sequence(encode(d)) != "b2,0,b1,a1,e2") r.fail("re-encode gave " + render_sequence(encode(d)));
    r.items = 1;
  });
}

inline std::vector<CheckResult> run_crosscheck(const CrosscheckOptions& opt) {
  return {check_counting_routes(opt), check_oracle_regular(opt), check_irregular(opt), check_codec(opt),
          check_identities(opt), check_worked_example()};
}

}  // namespace chaintree
