#pragma once

// Canonical interchange formats.
//
//   diagram:  {"profile":[3,3],"parents":[{"elem":"a","attach":"0"},{"elem":"b","attach":"a1"}]}
//   sequence: comma-separated attach points, no spaces, e.g. "b2,0,b1,a1,e2"

#include "chaintree/core.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace chaintree {

using ordered_json = nlohmann::ordered_json;

inline std::string render_sequence(const PruferSequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i != 0) out += ',';
    out += render(s.tokens[i]);
  }
  return out;
}

/// Empty text is the empty sequence (k = 1). Length must be k - 1.
inline PruferSequence parse_sequence(std::string_view text, const ChainProfile& profile) {
  PruferSequence s{profile, {}};
  if (!text.empty()) {
    std::size_t begin = 0;
    while (true) {
      const auto comma = text.find(',', begin);
      s.tokens.push_back(parse_attach_point(text.substr(begin, comma - begin), profile));
      if (comma == std::string_view::npos) break;
      begin = comma + 1;
    }
  }
  if (static_cast<int>(s.tokens.size()) != profile.k() - 1) {
    throw ParseError("sequence has " + std::to_string(s.tokens.size()) + " tokens, expected k - 1 = " +
                     std::to_string(profile.k() - 1));
  }
  return s;
}

inline std::string render_profile(const ChainProfile& profile) {
  std::string out;
  for (int q : profile.lengths()) out += (out.empty() ? "" : ",") + std::to_string(q);
  return out;
}

/// Parses "3,3,3" style profiles. Throws ParseError.
inline ChainProfile parse_profile(std::string_view text) {
  std::vector<int> lengths;
  std::size_t begin = 0;
  while (true) {
    const auto comma = text.find(',', begin);
    const auto value = detail::parse_positive(text.substr(begin, comma - begin));
    if (!value) throw ParseError("malformed profile '" + std::string(text) + "'");
    lengths.push_back(*value);
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return ChainProfile(std::move(lengths));
}

inline ordered_json diagram_to_json(const RootedDiagram& d) {
  ordered_json profile = ordered_json::array();
  for (int q : d.profile.lengths()) profile.push_back(q);
  ordered_json parents = ordered_json::array();
  for (Color c = 1; c <= d.profile.k(); ++c) {
    parents.push_back(ordered_json{{"elem", color_name(c)}, {"attach", render(d.parent(c))}});
  }
  return ordered_json{{"profile", std::move(profile)}, {"parents", std::move(parents)}};
}

/// Compact canonical serialization; the bit-exact diagram format.
inline std::string render_diagram(const RootedDiagram& d) { return diagram_to_json(d).dump(); }

/// Structural parse only: each element must appear exactly once and every
/// attach point must be well formed for the profile. Acyclicity is left to
/// validate_diagram. Throws ParseError.
inline RootedDiagram diagram_from_json(const ordered_json& j) {
  try {
    if (!j.is_object() || !j.contains("profile") || !j.contains("parents")) {
      throw ParseError("diagram JSON needs \"profile\" and \"parents\"");
    }
    std::vector<int> lengths;
    for (const auto& q : j.at("profile")) {
      if (!q.is_number_integer()) throw ParseError("profile entries must be integers");
      lengths.push_back(q.get<int>());
    }
    ChainProfile profile(std::move(lengths));

    std::vector<std::optional<AttachPoint>> slots(static_cast<std::size_t>(profile.k()));
    const auto& parents = j.at("parents");
    if (!parents.is_array()) throw ParseError("\"parents\" must be an array");
    for (const auto& entry : parents) {
      const Color c = parse_color(entry.at("elem").get<std::string>(), profile);
      auto& target = slots[static_cast<std::size_t>(c - 1)];
      if (target) throw ParseError("element " + color_name(c) + " listed twice");
      target = parse_attach_point(entry.at("attach").get<std::string>(), profile);
    }
    RootedDiagram d{profile, {}};
    for (Color c = 1; c <= profile.k(); ++c) {
      const auto& p = slots[static_cast<std::size_t>(c - 1)];
      if (!p) throw ParseError("element " + color_name(c) + " has no parent entry");
      d.parents.push_back(*p);
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline RootedDiagram parse_diagram(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  }
  return diagram_from_json(j);
}

}  // namespace chaintree
