#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

#include "mf/catalog.hpp"
#include "mf/io.hpp"

using namespace mf;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mf_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

RunResult run(const std::string& args, const std::string& env = "MF_CACHE_DIR=" + scratch("cache").string()) {
  const fs::path out = scratch("stdout"), err = scratch("stderr");
  const std::string cmd = env + " " + MF_CLI_PATH + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

class ScratchCleanup : public ::testing::Environment {
 public:
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(scratch("").parent_path(), ec);
  }
};

[[maybe_unused]] auto* const cleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);

std::string spec(const std::string& name) { return std::string(MF_SPECS_DIR) + "/" + name; }

Json without_timing(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("timing");
  return j;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::NotFound;
}

}  // namespace

TEST(GroupSpec, A2RoundTrip) {
  auto f = parse_group_spec(slurp(spec("a2.json")));
  EXPECT_EQ(f.spec.order_hint, 3u);
  ASSERT_EQ(f.spec.generators.size(), 1u);
  EXPECT_EQ(f.spec.generators[0][0][0], monomial(1));
  EXPECT_EQ(f.spec.generators[0][1][1], monomial(-1));
  EXPECT_TRUE(f.spec.generators[0][0][1].empty());
  EXPECT_FALSE(f.p.has_value());
  auto again = parse_group_spec(group_spec_to_json(f).dump());
  EXPECT_EQ(again.spec.generators, f.spec.generators);
  auto q = parse_group_spec(slurp(spec("q8.json")));
  EXPECT_EQ(q.p, std::optional<std::uint64_t>(5));
  EXPECT_EQ(q.spec.generators, quaternion_spec().generators);
}

TEST(GroupSpec, Errors) {
  try {
    parse_group_spec("{\n  \"zeta_order\": 3,\n  \"generators\": [,]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  const std::string three_by_three =
      R"({"zeta_order": 3, "generators": [[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]]})";
  EXPECT_EQ(kind_of([&] { parse_group_spec(three_by_three); }), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { parse_group_spec(R"({"generators": []})"); }), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { parse_group_spec(R"({"zeta_order": 3, "generators": [[[{"1": 1.5}, {}], [{}, {}]]]})"); }),
            ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { parse_group_spec(R"({"zeta_order": 3, "generators": [[[{"z": 1}, {}], [{}, {}]]]})"); }),
            ErrorKind::ValidationError);
  EXPECT_EQ(kind_of([] { parse_group_spec(R"({"zeta_order": 0, "generators": []})"); }), ErrorKind::ValidationError);
  try {
    parse_group_spec(R"({"zeta_order": 3, "generators": [[[{"1": 1}, {}], [{}, {"-1": "one"}]]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.witness(), "generators[0][1][1].-1");
  }
}

TEST(Serialization, ScalarRoundTrip) {
  DvrRing v = make_dvr(7, 2, 5);
  auto x = v.from_int(12345) * hensel_lift_root(v, 4, primitive_root_of_unity(residue_field(v), 4));
  Json j = scalar_to_json(x);
  EXPECT_EQ(j["p"], 7);
  EXPECT_EQ(j["m"], 2);
  EXPECT_EQ(j["N"], 5);
  EXPECT_EQ(j["coeffs"].size(), 2u);
  for (const auto& c : j["coeffs"]) EXPECT_LT(c.get<std::uint64_t>(), 16807u);
  EXPECT_EQ(scalar_from_json(j, v), x);
  EXPECT_EQ(kind_of([&] { scalar_from_json(j, make_dvr(7, 2, 4)); }), ErrorKind::ValidationError);
}

TEST(Serialization, CharacterTableRoundTrip) {
  auto g = reduce_group(lift_group(quaternion_spec(), make_dvr(5, 1, 3)));
  auto t = character_table(g);
  auto back = character_table_from_json(Json::parse(character_table_to_json(t).dump()), g);
  EXPECT_EQ(back.characters, t.characters);
  EXPECT_EQ(back.dims, t.dims);
  auto other = reduce_group(lift_group(cyclic_an_spec(7), make_dvr(5, 2, 3)));
  EXPECT_EQ(kind_of([&] { character_table_from_json(character_table_to_json(t), other); }), ErrorKind::MismatchDetected);
}

TEST(Serialization, McKayJsonShape) {
  auto t = character_table(reduce_group(lift_group(cyclic_an_spec(1), make_dvr(7, 1, 3))));
  EXPECT_EQ(mckay_to_json(mckay_graph(t)).dump(), R"({"arrows":[[0,2],[2,0]],"dims":[1,1]})");
}

TEST(Cli, VerifyKleinPasses) {
  auto r = run("verify-klein --n 1 --p 7");
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
  for (const auto& rel : j["presentation"]["relations"]) EXPECT_EQ(rel["residual"], "0");
}

TEST(Cli, McKayWritesDot) {
  const auto dot = scratch("a2.dot");
  auto r = run("mckay --group-spec " + spec("a2.json") + " --p 7 --dot " + dot.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(dot);
  for (const char* edge : {"W0 -> W1;", "W1 -> W2;", "W2 -> W0;", "W1 -> W0;", "W2 -> W1;", "W0 -> W2;"})
    EXPECT_NE(text.find(edge), std::string::npos) << edge;
}

TEST(Cli, ExitCodes) {
  auto bad_p = run("mckay --group-spec " + spec("a5.json") + " --p 2 --m 1");
  EXPECT_EQ(bad_p.code, 2);
  Json err = Json::parse(bad_p.err);
  EXPECT_EQ(err["error"], "CharacteristicDividesOrder");
  EXPECT_FALSE(err["witness"].get<std::string>().empty());

  const auto malformed = scratch("bad.json");
  std::ofstream(malformed) << "{\"zeta_order\": 3,";
  auto parse = run("mckay --group-spec " + malformed.string() + " --p 7");
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(Json::parse(parse.err)["error"], "ParseError");

  auto not_found = run("l0-bound --n 1 --lmax 5 --p 7");
  EXPECT_EQ(not_found.code, 1);
  EXPECT_EQ(Json::parse(not_found.err)["error"], "NotFound");

  auto composite = run("verify-klein --n 1 --p 9");
  EXPECT_EQ(composite.code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, DeterministicReports) {
  for (const std::string& args : std::vector<std::string>{"ar-middle --group-spec " + spec("a3.json") + " --p 13 --degree-cap 8 --no-cache",
                                 std::string("verify-klein --n 2 --p 5"), "invariants --group-spec " + spec("q8.json") + " --no-cache"}) {
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(without_timing(a.out), without_timing(b.out)) << args;
  }
}

TEST(Cli, CachedAndFreshAgree) {
  const fs::path dir = scratch("cache_roundtrip");
  fs::remove_all(dir);
  const std::string env = "MF_CACHE_DIR=" + dir.string();
  for (const std::string& cmd : std::vector<std::string>{"mckay --group-spec " + spec("q8.json"),
                                "invariants --group-spec " + spec("a4.json") + " --p 11 --degree-cap 10",
                                "ar-middle --group-spec " + spec("a4.json") + " --p 11 --degree-cap 10"}) {
    auto fresh = run(cmd + " --no-cache", env);
    auto first = run(cmd, env);
    auto second = run(cmd, env);
    ASSERT_EQ(fresh.code, 0) << fresh.err;
    EXPECT_EQ(without_timing(fresh.out), without_timing(first.out));
    EXPECT_EQ(without_timing(first.out), without_timing(second.out));
    for (const auto& [what, status] : Json::parse(second.out)["timing"]["cache"].items()) EXPECT_EQ(status, "hit") << what;
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().extension(), ".json") << entry.path();
  }
}

TEST(Cli, CacheDirFlagOverridesEnvironment) {
  const fs::path env_dir = scratch("env_cache"), flag_dir = scratch("flag_cache");
  fs::remove_all(env_dir);
  fs::remove_all(flag_dir);
  auto r = run("mckay --group-spec " + spec("a2.json") + " --p 7 --cache-dir " + flag_dir.string(), "MF_CACHE_DIR=" + env_dir.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(flag_dir));
  EXPECT_FALSE(fs::exists(env_dir));
}

TEST(Cli, CorruptCacheEntryIsRecomputed) {
  const fs::path dir = scratch("corrupt_cache");
  fs::remove_all(dir);
  const std::string env = "MF_CACHE_DIR=" + dir.string();
  const std::string cmd = "mckay --group-spec " + spec("a3.json") + " --p 5";
  auto good = run(cmd, env);
  ASSERT_EQ(good.code, 0);
  for (const auto& entry : fs::directory_iterator(dir)) std::ofstream(entry.path()) << "{ truncated";
  auto again = run(cmd, env);
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(without_timing(good.out), without_timing(again.out));
}
