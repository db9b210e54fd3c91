#pragma once

// Prufer-type code for rooted star diagrams.
//
// encode: repeatedly remove the smallest-colored element that has nothing
// attached to it and write down where it was attached ("0" for the root).
// After k-1 removals the survivor is root-attached and contributes no token.
//
// decode: for each token in turn, the smallest color not yet placed and not
// occurring as a slot owner in the remaining tokens (current one included)
// is attached at that token. The last unplaced element goes to the root.

#include "chaintree/core.hpp"

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

namespace chaintree {

inline PruferSequence encode(const RootedDiagram& d) {
  if (auto violation = validate_diagram(d)) throw InvariantError("encode: " + violation->message);

  const int k = d.profile.k();
  std::vector<int> children(static_cast<std::size_t>(k) + 1, 0);
  for (const auto& p : d.parents) ++children[static_cast<std::size_t>(p.element)];
  std::vector<bool> removed(static_cast<std::size_t>(k) + 1, false);

  PruferSequence s{d.profile, {}};
  s.tokens.reserve(static_cast<std::size_t>(k - 1));
  for (int step = 0; step < k - 1; ++step) {
    Color leaf = 1;
    while (removed[static_cast<std::size_t>(leaf)] || children[static_cast<std::size_t>(leaf)] != 0) ++leaf;
    const AttachPoint& p = d.parent(leaf);
    s.tokens.push_back(p);
    removed[static_cast<std::size_t>(leaf)] = true;
    --children[static_cast<std::size_t>(p.element)];
  }
  return s;
}

inline RootedDiagram decode(const PruferSequence& s) {
  const int k = s.profile.k();
  if (static_cast<int>(s.tokens.size()) != k - 1) {
    throw ParseError("decode: sequence length " + std::to_string(s.tokens.size()) + " != k - 1 = " +
                     std::to_string(k - 1));
  }
  std::vector<int> pending(static_cast<std::size_t>(k) + 1, 0);
  for (const auto& t : s.tokens) {
    if (!is_valid_for(t, s.profile)) throw ParseError("decode: token " + render(t) + " invalid for profile");
    ++pending[static_cast<std::size_t>(t.element)];
  }

  std::vector<bool> placed(static_cast<std::size_t>(k) + 1, false);
  RootedDiagram d{s.profile, std::vector<AttachPoint>(static_cast<std::size_t>(k))};
  for (const auto& t : s.tokens) {
    Color r = 1;
    while (placed[static_cast<std::size_t>(r)] || pending[static_cast<std::size_t>(r)] != 0) ++r;
    if (r == t.element) throw InvariantError("decode: self-attachment of " + color_name(r));
    d.parents[static_cast<std::size_t>(r - 1)] = t;
    placed[static_cast<std::size_t>(r)] = true;
    --pending[static_cast<std::size_t>(t.element)];
  }
  Color last = 1;
  while (placed[static_cast<std::size_t>(last)]) ++last;
  d.parents[static_cast<std::size_t>(last - 1)] = AttachPoint::root();
  return d;
}

/// Words of a fixed length over a profile's attach-point alphabet, in
/// lexicographic order (root first, then slots by element and subscript).
class SequenceRange {
 public:
  class iterator {
   public:
    using value_type = PruferSequence;
    using difference_type = std::ptrdiff_t;
    using reference = const PruferSequence&;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;

    reference operator*() const { return current_; }
    const PruferSequence* operator->() const { return &current_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    bool operator==(const iterator& other) const {
      return done_ == other.done_ && (done_ || digits_ == other.digits_);
    }

   private:
    friend class SequenceRange;

    explicit iterator(const SequenceRange& range)
        : alphabet_(&range.alphabet_),
          digits_(static_cast<std::size_t>(range.profile_.k() - 1), 0),
          current_{range.profile_, std::vector<AttachPoint>(digits_.size(), range.alphabet_.front())},
          done_(false) {}

    void advance() {
      for (std::size_t i = digits_.size(); i-- > 0;) {
        if (++digits_[i] < alphabet_->size()) {
          current_.tokens[i] = (*alphabet_)[digits_[i]];
          return;
        }
        digits_[i] = 0;
        current_.tokens[i] = alphabet_->front();
      }
      done_ = true;
    }

    const std::vector<AttachPoint>* alphabet_ = nullptr;
    std::vector<std::size_t> digits_;
    PruferSequence current_{ChainProfile({1}), {}};
    bool done_ = true;
  };

  SequenceRange(ChainProfile profile, std::uint64_t budget)
      : profile_(std::move(profile)), alphabet_(chaintree::alphabet(profile_)) {
    // alphabet^(k-1) <= budget, without overflowing
    std::uint64_t total = 1;
    for (int i = 0; i < profile_.k() - 1; ++i) {
      if (total > budget / alphabet_.size()) {
        throw BudgetExceeded("sequence space " + std::to_string(alphabet_.size()) + "^" +
                             std::to_string(profile_.k() - 1) + " exceeds budget " + std::to_string(budget));
      }
      total *= alphabet_.size();
    }
    size_ = total;
  }

  iterator begin() const { return iterator(*this); }
  iterator end() const { return iterator(); }

  std::uint64_t size() const { return size_; }

 private:
  ChainProfile profile_;
  std::vector<AttachPoint> alphabet_;
  std::uint64_t size_ = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

inline SequenceRange enumerate_sequences(const ChainProfile& profile, std::uint64_t budget = kDefaultBudget) {
  return SequenceRange(profile, budget);
}

}  // namespace chaintree
