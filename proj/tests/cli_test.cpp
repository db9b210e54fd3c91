// Drives the chaintree executable end to end.

#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
  const auto input = std::filesystem::temp_directory_path() / "chaintree_cli_test_input.txt";
  std::ofstream(input) << stdin_text;
  const std::string cmd = std::string(CHAINTREE_CLI) + " " + args + " < " + input.string() + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kWorked =
    R"({"profile":[3,3,3,3,3,3],"parents":[{"elem":"a","attach":"e2"},{"elem":"b","attach":"a1"},)"
    R"({"elem":"c","attach":"b2"},{"elem":"d","attach":"0"},{"elem":"e","attach":"0"},{"elem":"f","attach":"b1"}]})";

TEST(Cli, CountClosed) {
  const auto r = run("count --q 3 --k 5 --method closed");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "323433\n");
}

TEST(Cli, CountAllAgreesOnMisprintedTerm) {
  const auto r = run("count --q 3 --k 3 --method all");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("agree 189 (4 methods)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("183"), std::string::npos);
}

TEST(Cli, CountProfile) {
  auto r = run("count --profile 1,2,3 --method all");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("agree 24"), std::string::npos) << r.out;

  r = run("count --profile 1,2,3 --method closed --as-printed");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("78 [as printed; not validated]", 0), 0u) << r.out;

  r = run("count --profile 1,2,3 --method all --as-printed");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, CountFormatsAgree) {
  const auto csv = run("count --q 4 --k 6 --method all --format csv");
  const auto json = run("count --q 4 --k 6 --method all --format json");
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_TRUE(j["agree"].get<bool>());
  for (const auto& [method, value] : j["values"].items()) {
    EXPECT_NE(csv.out.find("4,6," + value.get<std::string>() + "," + method + "\n"), std::string::npos) << csv.out;
  }
}

TEST(Cli, CountErrors) {
  EXPECT_EQ(run("count --q 1 --k 3").code, 2);
  EXPECT_EQ(run("count --q 3").code, 2);
  EXPECT_EQ(run("count --q 3 --k 3 --profile 3,3,3").code, 2);
  EXPECT_EQ(run("count --q 3 --k 3 --method magic").code, 2);
  EXPECT_EQ(run("count --profile 1,2,3 --method series").code, 2);
  EXPECT_EQ(run("count --q 3 --k 9 --method oracle --budget 1000").code, 4);
  // over budget in "all" mode the oracle is skipped
  EXPECT_EQ(run("count --q 3 --k 9 --method all --budget 1000").code, 0);
  EXPECT_EQ(run("nonsense").code, 2);
}

TEST(Cli, BudgetFromEnvironment) {
  EXPECT_EQ(run("count --q 3 --k 3 --method oracle").code, 0);
  const std::string cmd = std::string("CHAINTREE_BUDGET=10 ") + CHAINTREE_CLI + " count --q 3 --k 3 --method oracle >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 4);
}

TEST(Cli, Table) {
  EXPECT_EQ(run("table --q 2 --k-max 3").out, "0 1\n1 1\n2 4\n3 32\n");
  const auto r = run("table --q 3 --k-max 5");
  EXPECT_EQ(r.out.substr(0, r.out.find('#')), "0 1\n1 1\n2 9\n3 189\n4 6561\n5 323433\n");
  EXPECT_NE(r.out.find("183"), std::string::npos);
  EXPECT_EQ(run("table --q 3 --k-max 0").out, "0 1\n");
}

TEST(Cli, TableMethodsAndFormats) {
  const auto closed = run("table --q 3 --k-max 6 --format csv");
  for (const char* m : {"recurrence", "series", "oracle"}) {
    auto other = run(std::string("table --q 3 --k-max 6 --format csv --method ") + m);
    ASSERT_EQ(other.code, 0) << m;
    std::string expected = closed.out;
    for (std::size_t pos; (pos = expected.find(",closed")) != std::string::npos;) expected.replace(pos, 7, std::string(",") + m);
    EXPECT_EQ(other.out, expected);
  }
  const auto json = run("table --q 2 --k-max 4 --format json");
  std::size_t lines = 0;
  std::size_t begin = 0;
  for (std::size_t end; (end = json.out.find('\n', begin)) != std::string::npos; begin = end + 1, ++lines) {
    const auto row = nlohmann::json::parse(json.out.substr(begin, end - begin));
    EXPECT_EQ(row["k"].get<int>(), static_cast<int>(lines));
  }
  EXPECT_EQ(lines, 5u);
}

TEST(Cli, DecodeEncode) {
  auto r = run("decode --profile 3,3,3,3,3,3 b2,0,b1,a1,e2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, kWorked + "\n");

  r = run("encode", kWorked);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "b2,0,b1,a1,e2\n");

  r = run("decode --profile 3 ''");
  EXPECT_EQ(r.out, R"({"profile":[3],"parents":[{"elem":"a","attach":"0"}]})" "\n");

  r = run("decode --profile 3,3,3,3,3,3", "b2,0,b1,a1,e2\n");
  EXPECT_EQ(r.out, kWorked + "\n");
}

TEST(Cli, CodecErrors) {
  EXPECT_EQ(run("decode --profile 3,3,3 c3,0").code, 2);
  EXPECT_EQ(run("decode --profile 3,3,3 a1").code, 2);
  EXPECT_EQ(run("encode", "{").code, 2);
  EXPECT_EQ(run("encode", R"({"profile":[3,3],"parents":[{"elem":"a","attach":"b1"},{"elem":"b","attach":"a1"}]})").code, 5);
}

TEST(Cli, Dot) {
  auto r = run("dot", R"({"profile":[2],"parents":[{"elem":"a","attach":"0"}]})");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "digraph star {\n"
            "  \"0\" [shape=circle];\n"
            "  \"a\" [shape=triangle];\n"
            "  \"a1\" [shape=rectangle];\n"
            "  \"a\" -> \"a1\";\n"
            "  \"0\" -> \"a\";\n"
            "}\n");

  r = run("dot", kWorked);
  EXPECT_EQ(r.code, 0);
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = 0; (pos = r.out.find(needle, pos)) != std::string::npos; ++pos) ++n;
    return n;
  };
  EXPECT_EQ(count("shape=triangle"), 6u);
  EXPECT_EQ(count("shape=rectangle"), 12u);
  EXPECT_EQ(count("shape=circle"), 1u);

  EXPECT_EQ(run("dot", R"({"profile":[3,3],"parents":[{"elem":"a","attach":"b1"},{"elem":"b","attach":"a1"}]})").code, 5);
}

TEST(Cli, Enumerate) {
  auto r = run("enumerate --profile 2,2");
  EXPECT_EQ(r.out,
            R"({"profile":[2,2],"parents":[{"elem":"a","attach":"0"},{"elem":"b","attach":"0"}]})" "\n"
            R"({"profile":[2,2],"parents":[{"elem":"a","attach":"0"},{"elem":"b","attach":"a1"}]})" "\n"
            R"({"profile":[2,2],"parents":[{"elem":"a","attach":"b1"},{"elem":"b","attach":"0"}]})" "\n");
  r = run("enumerate --profile 2,2 --what sequences");
  EXPECT_EQ(r.out, "0\na1\nb1\n");
  EXPECT_EQ(run("enumerate --profile 5,5,5,5,5,5,5,5 --budget 1000").code, 4);
}

TEST(Cli, Series) {
  EXPECT_EQ(run("series --q 3 --order 2").out, "[\"1\",\"3\",\"45/2\"]\n");
  EXPECT_EQ(run("series --q 2 --order 3 --which psi --format plain").out, "0 0\n1 1\n2 2\n3 6\n");
}

TEST(Cli, Crosscheck) {
  auto r = run("crosscheck --q-max 2 --k-max 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.substr(r.out.rfind("PASS")), "PASS\n");

  r = run("crosscheck --q-max 3 --k-max 4 --sum-q-max 6 --inject-183");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("FAIL counting_routes"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("closed=183 vs recurrence=189"), std::string::npos) << r.out;

  r = run("crosscheck --q-max 2 --k-max 3 --sum-q-max 4 --format json");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 6u);
}

}  // namespace
