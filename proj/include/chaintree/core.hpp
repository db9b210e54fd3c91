#pragma once

// Diagram data model: chain profiles, attach points, rooted diagrams in star
// (parent-function) form, and Prufer-type sequences.

#include "chaintree/numeric.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chaintree {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element colors are 1..k; 0 is reserved for the root in AttachPoint.
using Color = int;

class ChainProfile {
 public:
  explicit ChainProfile(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw std::invalid_argument("chain profile needs at least one element");
    for (int q : lengths_) {
      if (q < 1) throw std::invalid_argument("chain lengths must be >= 1, got " + std::to_string(q));
    }
  }

  static ChainProfile regular(int q, int k) {
    if (k < 1) throw std::invalid_argument("regular profile needs k >= 1");
    return ChainProfile(std::vector<int>(static_cast<std::size_t>(k), q));
  }

  int k() const { return static_cast<int>(lengths_.size()); }
  std::span<const int> lengths() const { return lengths_; }

  /// Chain length of element `c` (1-based).
  int length(Color c) const { return lengths_.at(static_cast<std::size_t>(c - 1)); }

  /// Colored edge slots of element `c`; the bottom edge carries no slot.
  int slot_count(Color c) const { return length(c) - 1; }

  /// Number of distinct attach points: every slot plus the root.
  std::size_t alphabet_size() const {
    std::size_t total = 1;
    for (int q : lengths_) total += static_cast<std::size_t>(q - 1);
    return total;
  }

  bool is_regular() const {
    return std::all_of(lengths_.begin(), lengths_.end(), [&](int q) { return q == lengths_.front(); });
  }

  int sum() const {
    int total = 0;
    for (int q : lengths_) total += q;
    return total;
  }

  BigInt product() const {
    BigInt p = 1;
    for (int q : lengths_) p *= q;
    return p;
  }

  bool operator==(const ChainProfile&) const = default;

 private:
  std::vector<int> lengths_;
};

struct AttachPoint {
  Color element = 0;  // 0 means root
  int subscript = 0;

  static constexpr AttachPoint root() { return {}; }
  static constexpr AttachPoint slot(Color element, int subscript) { return {element, subscript}; }

  constexpr bool is_root() const { return element == 0; }

  // Root sorts first, then slots by (element, subscript).
  auto operator<=>(const AttachPoint&) const = default;
};

/// The attach-point alphabet of a profile in canonical order.
inline std::vector<AttachPoint> alphabet(const ChainProfile& profile) {
  std::vector<AttachPoint> result;
  result.reserve(profile.alphabet_size());
  result.push_back(AttachPoint::root());
  for (Color c = 1; c <= profile.k(); ++c) {
    for (int s = 1; s <= profile.slot_count(c); ++s) result.push_back(AttachPoint::slot(c, s));
  }
  return result;
}

inline bool is_valid_for(const AttachPoint& point, const ChainProfile& profile) {
  if (point.is_root()) return point.subscript == 0;
  return point.element >= 1 && point.element <= profile.k() && point.subscript >= 1 &&
         point.subscript <= profile.slot_count(point.element);
}

struct RootedDiagram {
  ChainProfile profile;
  std::vector<AttachPoint> parents;  // parents[c - 1] is the attach point of element c

  const AttachPoint& parent(Color c) const { return parents.at(static_cast<std::size_t>(c - 1)); }

  bool operator==(const RootedDiagram&) const = default;
};

struct PruferSequence {
  ChainProfile profile;
  std::vector<AttachPoint> tokens;

  bool operator==(const PruferSequence&) const = default;
};

// ---------------------------------------------------------------------------
// Canonical text for colors and attach points

/// "a".."z" for colors up to 26, "e<index>" beyond.
inline std::string color_name(Color c) {
  if (c >= 1 && c <= 26) return std::string(1, static_cast<char>('a' + c - 1));
  return "e" + std::to_string(c);
}

inline std::string render(const AttachPoint& point) {
  if (point.is_root()) return "0";
  if (point.element <= 26) return color_name(point.element) + std::to_string(point.subscript);
  return color_name(point.element) + "_" + std::to_string(point.subscript);
}

namespace detail {

// Strict decimal without sign or leading zero; nullopt otherwise.
inline std::optional<int> parse_positive(std::string_view digits) {
  if (digits.empty() || digits.size() > 9 || digits.front() == '0') return std::nullopt;
  int value = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace detail

/// Parses an element name as produced by color_name. Throws ParseError.
inline Color parse_color(std::string_view text, const ChainProfile& profile) {
  Color c = 0;
  if (text.size() == 1 && text[0] >= 'a' && text[0] <= 'z') {
    c = text[0] - 'a' + 1;
  } else if (text.size() > 1 && text[0] == 'e') {
    auto index = detail::parse_positive(text.substr(1));
    if (!index || *index <= 26) throw ParseError("malformed element name '" + std::string(text) + "'");
    c = *index;
  } else {
    throw ParseError("malformed element name '" + std::string(text) + "'");
  }
  if (c > profile.k()) {
    throw ParseError("element '" + std::string(text) + "' exceeds k = " + std::to_string(profile.k()));
  }
  return c;
}

/// Parses "0", "<letter><subscript>" or "e<index>_<subscript>". Throws ParseError.
inline AttachPoint parse_attach_point(std::string_view text, const ChainProfile& profile) {
  const std::string shown(text);
  if (text.empty()) throw ParseError("empty attach point");
  if (text == "0") return AttachPoint::root();

  std::string_view color_part;
  std::string_view subscript_part;
  if (const auto underscore = text.find('_'); underscore != std::string_view::npos) {
    color_part = text.substr(0, underscore);
    subscript_part = text.substr(underscore + 1);
    if (color_part.size() < 2) throw ParseError("malformed attach point '" + shown + "'");
  } else {
    color_part = text.substr(0, 1);
    subscript_part = text.substr(1);
  }

  const Color c = parse_color(color_part, profile);
  const auto subscript = detail::parse_positive(subscript_part);
  if (!subscript) throw ParseError("malformed subscript in '" + shown + "'");
  if (*subscript > profile.slot_count(c)) {
    throw ParseError("subscript in '" + shown + "' exceeds " + std::to_string(profile.slot_count(c)) +
                     " slots of element " + color_name(c));
  }
  return AttachPoint::slot(c, *subscript);
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { ParentCount, ColorRange, SubscriptRange, SelfAttachment, Cycle };
  Kind kind;
  std::string message;
};

/// Empty result means the diagram is a valid rooted diagram. Otherwise the
/// first violated invariant is reported, checked in the order of Kind.
inline std::optional<Violation> validate_diagram(const RootedDiagram& d) {
  using Kind = Violation::Kind;
  const int k = d.profile.k();
  if (static_cast<int>(d.parents.size()) != k) {
    return Violation{Kind::ParentCount, "expected " + std::to_string(k) + " parents, got " +
                                            std::to_string(d.parents.size())};
  }
  for (Color c = 1; c <= k; ++c) {
    const AttachPoint& p = d.parent(c);
    if (p.is_root()) {
      if (p.subscript != 0) return Violation{Kind::SubscriptRange, "root attach point with subscript"};
      continue;
    }
    if (p.element < 1 || p.element > k) {
      return Violation{Kind::ColorRange, "element " + color_name(c) + " attaches to unknown element " +
                                             std::to_string(p.element)};
    }
    if (p.subscript < 1 || p.subscript > d.profile.slot_count(p.element)) {
      return Violation{Kind::SubscriptRange,
                       "element " + color_name(c) + " attaches to nonexistent slot " + render(p)};
    }
  }
  for (Color c = 1; c <= k; ++c) {
    if (d.parent(c).element == c) {
      return Violation{Kind::SelfAttachment, "self-attachment: element " + color_name(c)};
    }
  }
  // Acyclic iff every walk reaches the root within k steps.
  for (Color start = 1; start <= k; ++start) {
    Color at = start;
    for (int step = 0; step < k && at != 0; ++step) at = d.parent(at).element;
    if (at == 0) continue;
    // `at` now lies on the cycle.
    std::vector<Color> members{at};
    for (Color next = d.parent(at).element; next != at; next = d.parent(next).element) {
      members.push_back(next);
    }
    std::sort(members.begin(), members.end());
    std::string names;
    for (Color m : members) names += (names.empty() ? "" : ",") + color_name(m);
    return Violation{Kind::Cycle, "cycle {" + names + "}"};
  }
  return std::nullopt;
}

}  // namespace chaintree
