#pragma once

// Closed forms and recurrences for the diagram counts d_k^{(q)}, the
// rescaled coefficients h_k = ((q-1)k+1) d_k / k!, and irregular profiles.

#include "chaintree/core.hpp"
#include "chaintree/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaintree {

/// Ordered tuples (j_1..j_parts) with sum `total` and every j_i >= min_part,
/// visited in lexicographic order.
class Compositions {
 public:
  class iterator {
   public:
    using value_type = std::vector<int>;
    using difference_type = std::ptrdiff_t;
    using reference = const std::vector<int>&;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;

    reference operator*() const { return current_; }
    const std::vector<int>* operator->() const { return &current_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    bool operator==(const iterator& other) const { return done_ == other.done_ && (done_ || current_ == other.current_); }

   private:
    friend class Compositions;

    iterator(int total, int parts, int min_part) : min_part_(min_part) {
      if (parts < 1 || total < parts * min_part) return;
      current_.assign(static_cast<std::size_t>(parts), min_part);
      current_.back() = total - (parts - 1) * min_part;
      done_ = false;
    }

    // Next tuple: find the rightmost non-final position that can grow, bump
    // it, reset everything after it to the minimum and dump the slack last.
    void advance() {
      const int n = static_cast<int>(current_.size());
      int slack = current_.back() - min_part_;
      for (int i = n - 2; i >= 0; --i) {
        if (slack > 0) {
          ++current_[static_cast<std::size_t>(i)];
          for (int j = i + 1; j < n; ++j) current_[static_cast<std::size_t>(j)] = min_part_;
          current_.back() += slack - 1;
          return;
        }
        slack += current_[static_cast<std::size_t>(i)] - min_part_;
      }
      done_ = true;
    }

    std::vector<int> current_;
    int min_part_ = 0;
    bool done_ = true;
  };

  Compositions(int total, int parts, int min_part) : total_(total), parts_(parts), min_part_(min_part) {
    if (total < 0 || parts < 1 || (min_part != 0 && min_part != 1)) {
      throw std::invalid_argument("compositions: need total >= 0, parts >= 1, min_part in {0,1}");
    }
  }

  iterator begin() const { return iterator(total_, parts_, min_part_); }
  iterator end() const { return iterator(); }

 private:
  int total_;
  int parts_;
  int min_part_;
};

inline Compositions compositions(int total, int parts, int min_part) { return {total, parts, min_part}; }

enum class Method { ClosedForm, Recurrence, Series, Oracle };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::Recurrence: return "recurrence";
    case Method::Series: return "series";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

struct CountRow {
  int k;
  BigInt d;
};

struct CountTable {
  int q;
  Method method;
  std::vector<CountRow> rows;  // strictly increasing in k
};

/// d_k^{(q)} = q^k ((q-1)k+1)^{k-2}; d_0 = d_1 = 1 by convention.
inline BigInt count_regular(int q, int k) {
  if (q < 2) throw std::invalid_argument("count_regular: q must be >= 2");
  if (k < 0) throw std::invalid_argument("count_regular: k must be >= 0");
  if (k <= 1) return 1;
  return ipow(BigInt(q), static_cast<unsigned>(k)) *
         ipow(BigInt((q - 1) * k + 1), static_cast<unsigned>(k - 2));
}

/// Rooted diagrams: alphabet_size^{k-1}.
inline BigInt count_rooted(const ChainProfile& profile) {
  return ipow(BigInt(profile.alphabet_size()), static_cast<unsigned>(profile.k() - 1));
}

/// (sum q_i - k + 1)^{k-2} * prod q_i; for k = 1 the value is exactly 1.
inline BigInt count_irregular(const ChainProfile& profile) {
  const int k = profile.k();
  if (k == 1) return 1;
  return ipow(BigInt(profile.alphabet_size()), static_cast<unsigned>(k - 2)) * profile.product();
}

/// The irregular count with the base ((q_1+...+q_k)(k-1)+1) exactly as it
/// appears in print. Disagrees with exhaustive enumeration; kept only so the
/// disagreement can be demonstrated.
inline BigInt count_irregular_as_printed(const ChainProfile& profile) {
  const int k = profile.k();
  if (k == 1) return 1;
  const BigInt base = BigInt(profile.sum()) * (k - 1) + 1;
  return ipow(base, static_cast<unsigned>(k - 2)) * profile.product();
}

/// Chain-attachment recurrence: the (k+1)-th chain joins l <= min(k, q)
/// sub-diagrams of sizes j_1 + ... + j_l = k,
///   d_{k+1} = sum_l C(q,l) sum_j k!/(j_1!...j_l!) prod_t ((q-1)j_t+1) d_{j_t}.
inline CountTable d_sequence_recurrence(int q, int k_max) {
  if (q < 2) throw std::invalid_argument("d_sequence_recurrence: q must be >= 2");
  if (k_max < 1) throw std::invalid_argument("d_sequence_recurrence: k_max must be >= 1");

  std::vector<BigInt> d(static_cast<std::size_t>(k_max) + 1);
  std::vector<BigInt> fact(static_cast<std::size_t>(k_max) + 1);
  for (int i = 0; i <= k_max; ++i) fact[static_cast<std::size_t>(i)] = factorial(static_cast<unsigned>(i));
  d[1] = 1;

  // weight[j] = ((q-1)j+1) d_j / j!, kept as integer numerators over j!.
  std::vector<BigInt> weighted(static_cast<std::size_t>(k_max) + 1);
  weighted[1] = BigInt(q) * d[1];

  for (int k = 1; k < k_max; ++k) {
    BigInt next = 0;
    for (int l = 1; l <= std::min(k, q); ++l) {
      BigInt inner = 0;
      for (const auto& parts : compositions(k, l, 1)) {
        BigInt term = fact[static_cast<std::size_t>(k)];
        for (int j : parts) {
          term /= fact[static_cast<std::size_t>(j)];
        }
        for (int j : parts) term *= weighted[static_cast<std::size_t>(j)];
        inner += term;
      }
      next += binomial(static_cast<unsigned>(q), static_cast<unsigned>(l)) * inner;
    }
    d[static_cast<std::size_t>(k) + 1] = next;
    weighted[static_cast<std::size_t>(k) + 1] = BigInt((q - 1) * (k + 1) + 1) * next;
  }

  CountTable table{q, Method::Recurrence, {}};
  for (int k = 1; k <= k_max; ++k) table.rows.push_back({k, d[static_cast<std::size_t>(k)]});
  return table;
}

/// h_0 = 1, h_k = ((q-1)k+1)/k * sum over (j_1..j_q) >= 0 with sum k-1 of
/// h_{j_1}...h_{j_q}. Returns h_0..h_{k_max}.
inline std::vector<Rational> h_sequence_recurrence(int q, int k_max) {
  if (q < 2) throw std::invalid_argument("h_sequence_recurrence: q must be >= 2");
  if (k_max < 0) throw std::invalid_argument("h_sequence_recurrence: k_max must be >= 0");

  // Track g_j = j! h_j, which is integral; the composition sum then becomes
  // (1/(k-1)!) sum multinomial(k-1; j) prod g_{j_i}.
  std::vector<Rational> h{Rational(1)};
  std::vector<BigInt> g{BigInt(1)};
  std::vector<BigInt> fact{BigInt(1)};
  for (int k = 1; k <= k_max; ++k) fact.push_back(fact.back() * k);

  for (int k = 1; k <= k_max; ++k) {
    BigInt sum = 0;
    for (const auto& parts : compositions(k - 1, q, 0)) {
      BigInt term = fact[static_cast<std::size_t>(k - 1)];
      for (int j : parts) term /= fact[static_cast<std::size_t>(j)];
      for (int j : parts) term *= g[static_cast<std::size_t>(j)];
      sum += term;
    }
    // h_k = ((q-1)k+1)/k * sum/(k-1)!  =>  g_k = k! h_k = ((q-1)k+1) * sum
    const BigInt gk = BigInt((q - 1) * k + 1) * sum;
    g.push_back(gk);
    h.emplace_back(gk, fact[static_cast<std::size_t>(k)]);
  }
  return h;
}

/// d_k recovered from h_k: k! h_k / ((q-1)k+1). Throws if not integral.
inline BigInt d_from_h(int q, int k, const Rational& h) {
  if (k == 0) return 1;
  const Rational d = h * Rational(factorial(static_cast<unsigned>(k))) / Rational((q - 1) * k + 1);
  if (boost::multiprecision::denominator(d) != 1) {
    throw InvariantError("k! h_k / ((q-1)k+1) is not an integer at q=" + std::to_string(q) +
                         ", k=" + std::to_string(k));
  }
  return boost::multiprecision::numerator(d);
}

}  // namespace chaintree
