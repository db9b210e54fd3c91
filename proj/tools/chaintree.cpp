// chaintree: counts, codec and cross-checks for tree-type chain diagrams.
//
// Exit codes: 0 ok, 2 bad arguments or malformed input, 3 method
// disagreement or failed cross-check, 4 enumeration budget exceeded,
// 5 invariant violation in an input diagram.

#include "chaintree/core.hpp"
#include "chaintree/counting.hpp"
#include "chaintree/crosscheck.hpp"
#include "chaintree/format.hpp"
#include "chaintree/oracle.hpp"
#include "chaintree/prufer.hpp"
#include "chaintree/series.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace chaintree;

enum ExitCode { kOk = 0, kBadInput = 2, kDisagreement = 3, kBudget = 4, kInvariant = 5 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Disagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

EnumerationBudget budget_from(std::optional<std::uint64_t> flag) {
  EnumerationBudget budget;
  if (const char* env = std::getenv("CHAINTREE_BUDGET")) {
    try {
      budget.max_states = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CHAINTREE_BUDGET is not a number: ") + env);
    }
  }
  if (flag) budget.max_states = *flag;
  return budget;
}

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RootedDiagram read_valid_diagram(const std::string& path) {
  RootedDiagram d = parse_diagram(read_all(path));
  if (auto v = validate_diagram(d)) throw InvariantError(v->message);
  return d;
}

// Note attached to d_3^{(3)}, whose published listing value is 183.
std::optional<std::string> known_misprint(int q, int k) {
  if (q == 3 && k == 3) {
    return "k=3: 189 agrees across closed form, recurrence, series and exhaustive count; "
           "a published listing shows 183 (misprint)";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
  std::optional<int> q;
  std::optional<int> k;
  std::string profile;
  std::string method = "closed";
  std::string format = "plain";
  bool as_printed = false;
  std::optional<std::uint64_t> budget;
};

struct Evaluation {
  std::string method;
  BigInt value;
};

BigInt regular_by(const std::string& method, int q, int k, const EnumerationBudget& budget) {
  if (k == 0) return 1;
  if (method == "closed") return count_regular(q, k);
  if (method == "recurrence") return d_sequence_recurrence(q, k).rows.back().d;
  if (method == "series") return d_from_h(q, k, solve_H(q, k)[k]);
  if (method == "oracle") return count_unrooted(ChainProfile::regular(q, k), budget);
  throw UsageError("unknown method " + method);
}

int run_count(const CountArgs& a) {
  const bool by_profile = !a.profile.empty();
  if (by_profile == (a.q.has_value() || a.k.has_value())) throw UsageError("count: give either --q and --k, or --profile");
  if (!by_profile && !(a.q && a.k)) throw UsageError("count: --q needs --k");
  if (a.q && *a.q < 2) throw UsageError("count: --q must be >= 2");
  if (a.k && *a.k < 0) throw UsageError("count: --k must be >= 0");

  const auto budget = budget_from(a.budget);
  std::optional<ChainProfile> profile;
  if (by_profile) profile = parse_profile(a.profile);

  // A regular profile with q >= 2 gets every route.
  const bool regular = !profile || (profile->is_regular() && profile->lengths().front() >= 2);
  const int q = profile ? profile->lengths().front() : *a.q;
  const int k = profile ? profile->k() : *a.k;

  std::vector<std::string> methods;
  if (a.method == "all") {
    methods = regular ? std::vector<std::string>{"closed", "recurrence", "series", "oracle"}
                      : std::vector<std::string>{"closed", "oracle"};
  } else {
    if (!regular && (a.method == "recurrence" || a.method == "series")) {
      throw UsageError("count: method " + a.method + " needs a regular profile with q >= 2");
    }
    methods = {a.method};
  }

  std::vector<Evaluation> evals;
  std::vector<std::string> notes;
  for (const auto& m : methods) {
    if (m == "closed" && profile && (a.as_printed || !regular)) {
      if (a.as_printed) {
        evals.push_back({"closed-as-printed", count_irregular_as_printed(*profile)});
        notes.push_back("closed-as-printed uses the base (q_1+...+q_k)(k-1)+1 as printed; not validated");
      } else {
        evals.push_back({"closed", count_irregular(*profile)});
      }
    } else if (m == "oracle" && profile && !regular) {
      try {
        evals.push_back({"oracle", count_unrooted(*profile, budget)});
      } catch (const BudgetExceeded& e) {
        if (a.method != "all") throw;
        notes.push_back(std::string("oracle skipped: ") + e.what());
      }
    } else if (m == "oracle" && a.method == "all") {
      try {
        evals.push_back({m, regular_by(m, q, k, budget)});
      } catch (const BudgetExceeded& e) {
        notes.push_back(std::string("oracle skipped: ") + e.what());
      }
    } else {
      evals.push_back({m, regular_by(m, q, k, budget)});
    }
  }

  bool agree = true;
  for (const auto& e : evals) agree = agree && e.value == evals.front().value;
  if (regular && agree) {
    if (auto note = known_misprint(q, k)) notes.push_back(*note);
  }

  const std::string label = profile ? render_profile(*profile) : std::to_string(q);
  if (a.format == "csv") {
    std::cout << "q,k,d_k,method\n";
    for (const auto& e : evals) std::cout << csv_field(label) << ',' << k << ',' << e.value << ',' << e.method << '\n';
    for (const auto& n : notes) std::cerr << "note: " << n << '\n';
  } else if (a.format == "json") {
    ordered_json j;
    if (profile) {
      j["profile"] = ordered_json::array();
      for (int len : profile->lengths()) j["profile"].push_back(len);
    } else {
      j["q"] = q;
    }
    j["k"] = k;
    j["values"] = ordered_json::object();
    for (const auto& e : evals) j["values"][e.method] = e.value.str();
    j["agree"] = agree;
    j["validated"] = !a.as_printed;
    if (!notes.empty()) j["notes"] = notes;
    std::cout << j.dump() << '\n';
  } else if (evals.size() == 1) {
    std::cout << evals.front().value << (a.as_printed ? " [as printed; not validated]" : "") << '\n';
    for (const auto& n : notes) std::cout << "# " << n << '\n';
  } else {
    for (const auto& e : evals) std::cout << e.method << ' ' << e.value << '\n';
    if (agree) std::cout << "agree " << evals.front().value << " (" << evals.size() << " methods)\n";
    for (const auto& n : notes) std::cout << "# " << n << '\n';
  }

  if (!agree) {
    std::string detail;
    for (const auto& e : evals) detail += (detail.empty() ? "" : ", ") + e.method + "=" + e.value.str();
    throw Disagreement("methods disagree: " + detail);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// table

struct TableArgs {
  int q = 2;
  int k_max = 10;
  std::string method = "closed";
  std::string format = "plain";
  std::optional<std::uint64_t> budget;
};

int run_table(const TableArgs& a) {
  if (a.q < 2) throw UsageError("table: --q must be >= 2");
  if (a.k_max < 0) throw UsageError("table: --k-max must be >= 0");
  const auto budget = budget_from(a.budget);

  std::vector<BigInt> terms{BigInt(1)};
  if (a.k_max >= 1) {
    if (a.method == "closed") {
      for (int k = 1; k <= a.k_max; ++k) terms.push_back(count_regular(a.q, k));
    } else if (a.method == "recurrence") {
      for (const auto& row : d_sequence_recurrence(a.q, a.k_max).rows) terms.push_back(row.d);
    } else if (a.method == "series") {
      const auto h = solve_H(a.q, a.k_max);
      for (int k = 1; k <= a.k_max; ++k) terms.push_back(d_from_h(a.q, k, h[k]));
    } else if (a.method == "oracle") {
      for (int k = 1; k <= a.k_max; ++k) terms.push_back(count_unrooted(ChainProfile::regular(a.q, k), budget));
    } else {
      throw UsageError("unknown method " + a.method);
    }
  }

  std::vector<std::string> notes;
  for (int k = 0; k <= a.k_max; ++k) {
    if (auto note = known_misprint(a.q, k)) notes.push_back(*note);
  }

  if (a.format == "csv") {
    std::cout << "q,k,d_k,method\n";
    for (int k = 0; k <= a.k_max; ++k) std::cout << a.q << ',' << k << ',' << terms[static_cast<std::size_t>(k)] << ',' << a.method << '\n';
    for (const auto& n : notes) std::cerr << "note: " << n << '\n';
  } else if (a.format == "json") {
    // one JSON object per row
    for (int k = 0; k <= a.k_max; ++k) {
      ordered_json row{{"q", a.q}, {"k", k}, {"d_k", terms[static_cast<std::size_t>(k)].str()}, {"method", a.method}};
      if (auto note = known_misprint(a.q, k)) row["note"] = *note;
      std::cout << row.dump() << '\n';
    }
  } else {
    for (int k = 0; k <= a.k_max; ++k) std::cout << k << ' ' << terms[static_cast<std::size_t>(k)] << '\n';
    for (const auto& n : notes) std::cout << "# " << n << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// encode / decode / dot / enumerate

int run_encode(const std::string& input, const std::string& format) {
  const auto d = read_valid_diagram(input);
  const auto s = encode(d);
  if (format == "json") {
    ordered_json j{{"profile", diagram_to_json(d)["profile"]}, {"sequence", render_sequence(s)}};
    std::cout << j.dump() << '\n';
  } else if (format == "csv") {
    std::cout << "profile,sequence\n" << csv_field(render_profile(d.profile)) << ',' << csv_field(render_sequence(s)) << '\n';
  } else {
    std::cout << render_sequence(s) << '\n';
  }
  return kOk;
}

int run_decode(const std::string& profile_text, std::optional<std::string> sequence, const std::string& format) {
  const auto profile = parse_profile(profile_text);
  if (!sequence) {
    std::string line;
    std::getline(std::cin, line);
    sequence = line;
  }
  const auto d = decode(parse_sequence(*sequence, profile));
  if (auto v = validate_diagram(d)) throw InvariantError(v->message);
  if (format == "csv") {
    std::cout << "elem,attach\n";
    for (Color c = 1; c <= d.profile.k(); ++c) std::cout << color_name(c) << ',' << render(d.parent(c)) << '\n';
  } else {
    std::cout << render_diagram(d) << '\n';
  }
  return kOk;
}

std::string render_dot(const RootedDiagram& d) {
  const auto id = [](const std::string& name) { return "\"" + name + "\""; };
  std::ostringstream out;
  out << "digraph star {\n";
  out << "  \"0\" [shape=circle];\n";
  for (Color c = 1; c <= d.profile.k(); ++c) {
    out << "  " << id(color_name(c)) << " [shape=triangle];\n";
    for (int s = 1; s <= d.profile.slot_count(c); ++s) {
      out << "  " << id(render(AttachPoint::slot(c, s))) << " [shape=rectangle];\n";
    }
  }
  for (Color c = 1; c <= d.profile.k(); ++c) {
    for (int s = 1; s <= d.profile.slot_count(c); ++s) {
      out << "  " << id(color_name(c)) << " -> " << id(render(AttachPoint::slot(c, s))) << ";\n";
    }
  }
  // each triangle sits on its attach point
  for (Color c = 1; c <= d.profile.k(); ++c) {
    out << "  " << id(render(d.parent(c))) << " -> " << id(color_name(c)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

int run_dot(const std::string& input) {
  std::cout << render_dot(read_valid_diagram(input));
  return kOk;
}

int run_enumerate(const std::string& profile_text, const std::string& what, const std::string& format,
                  std::optional<std::uint64_t> budget_flag) {
  const auto profile = parse_profile(profile_text);
  const auto budget = budget_from(budget_flag);
  if (format == "csv") std::cout << (what == "sequences" ? "sequence\n" : "diagram\n");
  if (what == "sequences") {
    for (const auto& s : enumerate_sequences(profile, budget.max_states)) {
      const auto text = render_sequence(s);
      if (format == "json") {
        std::cout << ordered_json(text).dump() << '\n';
      } else {
        std::cout << (format == "csv" ? csv_field(text) : text) << '\n';
      }
    }
  } else {
    enumerate_rooted(profile, budget, [&](const RootedDiagram& d) {
      const auto text = render_diagram(d);
      std::cout << (format == "csv" ? csv_field(text) : text) << '\n';
    });
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// series

int run_series(int q, int order, const std::string& which, const std::string& format) {
  if (q < 2) throw UsageError("series: --q must be >= 2");
  if (order < 1) throw UsageError("series: --order must be >= 1");
  const auto f = which == "psi" ? solve_psi(q * (q - 1), order) : solve_H(q, order);
  const auto coeffs = coefficient_strings(f);
  if (format == "json") {
    std::cout << ordered_json(coeffs).dump() << '\n';
  } else {
    if (format == "csv") std::cout << "n,coefficient\n";
    for (std::size_t n = 0; n < coeffs.size(); ++n) std::cout << n << (format == "csv" ? "," : " ") << coeffs[n] << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// crosscheck

int run_crosscheck(CrosscheckOptions opt, const std::string& format, std::optional<std::uint64_t> budget_flag) {
  if (opt.q_max < 2 || opt.k_max < 1 || opt.sum_q_max < 0) {
    throw UsageError("crosscheck: need --q-max >= 2, --k-max >= 1, --sum-q-max >= 0");
  }
  opt.budget = budget_from(budget_flag);
  const auto results = run_crosscheck(opt);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  if (format == "json") {
    ordered_json checks = ordered_json::array();
    for (const auto& r : results) {
      checks.push_back(ordered_json{{"check", r.name},
                                    {"status", r.passed ? "PASS" : "FAIL"},
                                    {"items", r.items},
                                    {"millis", r.millis},
                                    {"failures", r.failures}});
    }
    std::cout << ordered_json{{"passed", all}, {"checks", checks}}.dump() << '\n';
  } else if (format == "csv") {
    std::cout << "check,status,items,millis\n";
    for (const auto& r : results) {
      std::cout << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ',' << r.items << ',' << r.millis << '\n';
    }
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  items=" << r.items << "  time=" << r.millis
                << "ms\n";
      for (const auto& f : r.failures) std::cout << "    " << f << '\n';
    }
    std::cout << (all ? "PASS" : "FAIL") << '\n';
  }
  return all ? kOk : kDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration of tree-type diagrams assembled from oriented labeled chains"};
  app.require_subcommand(1);

  const std::vector<std::string> methods{"closed", "recurrence", "series", "oracle"};
  auto methods_all = methods;
  methods_all.push_back("all");

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Number of tree-type diagrams for (q, k) or a chain profile");
  count->add_option("--q", count_args.q, "Chain length (regular profile)");
  count->add_option("--k", count_args.k, "Number of chains");
  count->add_option("--profile", count_args.profile, "Comma-separated chain lengths, e.g. 1,2,3");
  count->add_option("--method", count_args.method)->check(CLI::IsMember(methods_all));
  count->add_option("--format", count_args.format)->check(CLI::IsMember({"plain", "csv", "json"}));
  count->add_flag("--as-printed", count_args.as_printed,
                  "Use the irregular-profile formula with its misprinted base (output is marked)");
  count->add_option("--budget", count_args.budget, "Oracle state cap (overrides CHAINTREE_BUDGET)");

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "d_0..d_kmax for a regular chain length");
  table->add_option("--q", table_args.q)->required();
  table->add_option("--k-max", table_args.k_max)->required();
  table->add_option("--method", table_args.method)->check(CLI::IsMember(methods));
  table->add_option("--format", table_args.format)->check(CLI::IsMember({"plain", "csv", "json"}));
  table->add_option("--budget", table_args.budget);

  std::string input;
  std::string format = "plain";
  auto* enc = app.add_subcommand("encode", "Diagram JSON -> Prufer-type sequence");
  enc->add_option("--input", input, "Diagram JSON file (default: standard input)");
  enc->add_option("--format", format)->check(CLI::IsMember({"plain", "csv", "json"}));

  std::string profile_text;
  std::optional<std::string> sequence;
  auto* dec = app.add_subcommand("decode", "Prufer-type sequence -> diagram JSON");
  dec->add_option("--profile", profile_text)->required();
  dec->add_option("sequence", sequence, "Comma-separated tokens (default: first line of standard input)");
  dec->add_option("--format", format)->check(CLI::IsMember({"plain", "csv", "json"}));

  auto* dot = app.add_subcommand("dot", "Render a diagram JSON in star form as Graphviz DOT");
  dot->add_option("--input", input);

  std::string what = "rooted";
  std::optional<std::uint64_t> budget_flag;
  auto* enumerate = app.add_subcommand("enumerate", "Stream every rooted diagram or every sequence of a profile");
  enumerate->add_option("--profile", profile_text)->required();
  enumerate->add_option("--what", what)->check(CLI::IsMember({"rooted", "sequences"}));
  enumerate->add_option("--format", format)->check(CLI::IsMember({"plain", "csv", "json"}));
  enumerate->add_option("--budget", budget_flag);

  int series_q = 2;
  int series_order = 32;
  std::string which = "H";
  std::string series_format = "json";
  auto* series = app.add_subcommand("series", "Exact coefficients of H_q or psi");
  series->add_option("--q", series_q)->required();
  series->add_option("--order", series_order);
  series->add_option("--which", which)->check(CLI::IsMember({"H", "psi"}));
  series->add_option("--format", series_format)->check(CLI::IsMember({"plain", "csv", "json"}));

  CrosscheckOptions cc;
  auto* crosscheck = app.add_subcommand("crosscheck", "Run every consistency check and report");
  crosscheck->add_option("--q-max", cc.q_max);
  crosscheck->add_option("--k-max", cc.k_max);
  crosscheck->add_option("--sum-q-max", cc.sum_q_max);
  crosscheck->add_flag("--inject-183", cc.inject_183, "Negative control: corrupt d_3 for q=3");
  crosscheck->add_option("--format", format)->check(CLI::IsMember({"plain", "csv", "json"}));
  crosscheck->add_option("--budget", budget_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (count->parsed()) return run_count(count_args);
    if (table->parsed()) return run_table(table_args);
    if (enc->parsed()) return run_encode(input, format);
    if (dec->parsed()) return run_decode(profile_text, sequence, format);
    if (dot->parsed()) return run_dot(input);
    if (enumerate->parsed()) return run_enumerate(profile_text, what, format, budget_flag);
    if (series->parsed()) return run_series(series_q, series_order, which, series_format);
    if (crosscheck->parsed()) return run_crosscheck(cc, format, budget_flag);
  } catch (const Disagreement& e) {
    std::cerr << "chaintree: " << e.what() << '\n';
    return kDisagreement;
  } catch (const BudgetExceeded& e) {
    std::cerr << "chaintree: " << e.what() << " (raise with --budget or CHAINTREE_BUDGET)\n";
    return kBudget;
  } catch (const InvariantError& e) {
    std::cerr << "chaintree: invalid diagram: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "chaintree: error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
