#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixture.hpp"
#include "fole/cli/commands.hpp"

namespace fole::cli {
namespace {

using testing::company;

const json kMinimal = json::parse(R"({
  "typeDomains": {"d": {"sorts": {"S": ["a", "b"]}}},
  "schemas": {"s": {"typeDomain": "d", "predicates": {"R": [["x", "S"]]}}},
  "structures": {"empty": {"kind": "lax", "schema": "s", "tables": {}}}
})");

bool has_diagnostic(const Workspace& ws, const std::string& item, const std::string& code) {
  for (const auto& d : ws.diagnostics)
    if (d.item == item && d.code == code) return true;
  return false;
}

struct Result {
  int status;
  std::string out;
};

Result eval(const std::string& structure, const std::string& formula, Options opts = {}) {
  std::ostringstream out;
  int status = cmd_eval(company(), structure, formula, opts, out);
  return {status, out.str()};
}

Result check(const std::string& what, std::vector<std::string> names, Options opts = {}) {
  std::ostringstream out;
  int status = cmd_check(company(), what, names, opts, out);
  return {status, out.str()};
}

std::string body_rows(const std::string& text) {
  auto at = text.find("tuples ");
  return text.substr(text.find('\n', at) + 1);
}

TEST(LoadWorkspace, MinimalLoads) {
  auto ws = load_workspace(kMinimal);
  EXPECT_TRUE(ws.diagnostics.empty());
  EXPECT_TRUE(ws.structure("empty").table("R").empty());
}

TEST(LoadWorkspace, UndeclaredMorphismInFormula) {
  json doc = kMinimal;
  doc["specs"]["t"] = {{"schema", "s"}, {"formalConstraints", {"constraint c : R -[nowhere]-> R"}}};
  auto ws = load_workspace(doc);
  EXPECT_TRUE(has_diagnostic(ws, "specs/t", "UnresolvedReference"));
  EXPECT_EQ(ws.specs.count("t"), 0u);
}

TEST(LoadWorkspace, DefiningConditionViolationIsTagged) {
  json doc = kMinimal;
  doc["structures"]["bad"] = json::parse(R"({"kind": "strict", "schema": "s",
      "keys": {"k": {"tuple": ["a", "b"], "predicates": ["R"]}}})");
  auto ws = load_workspace(doc);
  EXPECT_TRUE(has_diagnostic(ws, "structures/bad", "DefiningConditionViolation"));
}

TEST(LoadWorkspace, FixtureKeepsItsNegativeItems) {
  // The two deliberately invalid items load with a note instead of being dropped.
  ASSERT_EQ(company().diagnostics.size(), 2u);
  for (const auto& d : company().diagnostics) EXPECT_FALSE(d.dropped) << d.item;
  EXPECT_TRUE(has_diagnostic(company(), "logics/understaffedLogic", "Unsatisfied"));
  EXPECT_TRUE(has_diagnostic(company(), "dbMorphisms/scrambled", "KeyBridgeViolation"));
  EXPECT_THROW(company().structure("nowhere"), Error);
}

TEST(CmdEval, TopListsEveryTuple) {
  auto r = eval("acme", "top@n2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("tuples 4\n(a,a)\n(a,b)\n(b,a)\n(b,b)\n"), std::string::npos);
}

TEST(CmdEval, MeetIsIdempotent) {
  EXPECT_EQ(body_rows(eval("acme", "Emp /\\ Emp").out), body_rows(eval("acme", "Emp").out));
}

TEST(CmdEval, ExistsProjects) {
  Options opts;
  opts.as_table = true;
  auto r = eval("acme", "exists[h] Emp", opts);
  EXPECT_NE(r.out.find("tuples 2\n(hr)\n(it)\nkeys 3\ne1 -> (hr)\n"), std::string::npos);
}

TEST(CmdEval, JsonOutput) {
  Options opts;
  opts.json = true;
  auto j = json::parse(eval("acme", "Mgr", opts).out);
  EXPECT_EQ(j["tuples"], json::parse(R"([["ann", "hr"]])"));
}

TEST(CmdCheck, SatisfiedSpec) {
  auto r = check("spec-sat", {"acmeLogic"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("ITEM worksIn: OK"), std::string::npos);
}

TEST(CmdCheck, RefutedSpec) {
  auto r = check("spec-sat", {"understaffed", "company"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("ITEM worksIn: FAIL Unsatisfied (cy,ops)"), std::string::npos);
}

TEST(CmdCheck, InvalidDbMorphism) {
  auto r = check("morphism", {"rename", "scrambled"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("ITEM rename: OK"), std::string::npos);
  EXPECT_NE(r.out.find("ITEM scrambled: FAIL KeyBridgeViolation"), std::string::npos);
}

TEST(CmdCheck, UnknownWhatIsUsage) {
  EXPECT_THROW(check("everything", {"acme"}), Error);
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("fole_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

using CmdConvert = TempDir;

TEST_F(CmdConvert, SndToDbRevalidates) {
  Options opts;
  opts.out = path("db.json");
  std::ostringstream out;
  ASSERT_EQ(cmd_convert(company(), "snd-to-db", "acmeLogic", opts, out), 0);
  auto ws = load_workspace_file(opts.out);
  EXPECT_TRUE(ws.diagnostics.empty());
  EXPECT_TRUE(validate_database(ws.database("acmeLogic")));
}

TEST_F(CmdConvert, ReflectionOnDisk) {
  Options opts;
  opts.out = path("snd.json");
  std::ostringstream out;
  ASSERT_EQ(cmd_convert(company(), "db-to-snd", "acmeDb", opts, out), 0);
  auto snd = load_workspace_file(opts.out);
  opts.out = path("back.json");
  ASSERT_EQ(cmd_convert(snd, "snd-to-db", "acmeDb", opts, out), 0);
  auto back = load_workspace_file(opts.out).database("acmeDb");
  auto image = db_image(company().database("acmeDb"));
  for (const auto& [r, t] : image.tables) EXPECT_TRUE(key_equivalent(t, back.table(r))) << r;
}

TEST_F(CmdConvert, DbImageIdempotentOnDisk) {
  Options opts;
  opts.out = path("img.json");
  std::ostringstream out;
  ASSERT_EQ(cmd_convert(company(), "db-image", "acmeDb", opts, out), 0);
  auto once = load_workspace_file(opts.out);
  opts.out = path("img2.json");
  ASSERT_EQ(cmd_convert(once, "db-image", "acmeDb", opts, out), 0);
  auto twice = load_workspace_file(opts.out);
  EXPECT_EQ(once.database("acmeDb"), twice.database("acmeDb"));
}

Table migrated(const std::string& table, const std::string& direction) {
  Options opts;
  std::ostringstream out;
  EXPECT_EQ(cmd_migrate(company(), table, direction == "dextro" && table == "acme:Emp"
                                              ? "idCompany"
                                              : "collapse",
                        direction, opts, out),
            0);
  auto ws = load_workspace(json::parse(out.str()));
  EXPECT_EQ(ws.tables.size(), 1u);
  return ws.tables.begin()->second.table;
}

TEST(CmdMigrate, IdentityCopies) {
  EXPECT_TRUE(key_equivalent(migrated("acme:Emp", "dextro"), company().structure("acme").table("Emp")));
}

TEST(CmdMigrate, CollapsingDextroMatchesHandEnumeration) {
  Table t = migrated("t2", "dextro");
  EXPECT_EQ(t.keys(), (std::vector<Key>{"<k1|(1,2)>", "<k2|(2,2)>"}));
  EXPECT_EQ(t.tuple_of("<k1|(1,2)>"), (Tuple{"1", "2"}));
}

TEST(CmdMigrate, LevoToEmptySignature) {
  Table t = migrated("tv", "levo");
  EXPECT_TRUE(t.signature().empty());
  EXPECT_EQ(t.keys(), (std::vector<Key>{"k1", "k2"}));
}

TEST(CmdMigrate, WrongDirectionIsReported) {
  Options opts;
  std::ostringstream out;
  EXPECT_THROW(cmd_migrate(company(), "t2", "collapse", "levo", opts, out), Error);
}

TEST(PrintReport, LineGrammar) {
  std::ostringstream out;
  print_report("check", {{"a", Verdict::ok(), "fine"}, {"b", Verdict::fail("Code", "why"), ""}},
               false, out);
  EXPECT_EQ(out.str(), "ITEM a: OK fine\nITEM b: FAIL Code why\n");
}

}  // namespace
}  // namespace fole::cli
