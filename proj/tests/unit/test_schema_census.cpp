#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cflr/error.hpp"
#include "cflr/schema_census.hpp"

using namespace cflr;
using namespace cflr::census;
namespace fs = std::filesystem;

namespace {

CensusRow row_of(const char* text) {
  SchemaRecord rec;
  rec.id = "inline";
  rec.schema = Json::parse(text);
  rec.raw_size_bytes = std::string_view(text).size();
  return classify_schema(rec);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cflr_census_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, std::string_view text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("object with fixed properties is linear") {
  const auto conv = schema_to_cfg(Json::parse(R"({"type":"object","properties":{"x":{"type":"integer"}}})"));
  CHECK(is_linear(conv.grammar));
  CHECK(row_of(R"({"type":"object","properties":{"x":{"type":"integer"}}})").grammar_class == GrammarClass::Linear);
}

TEST_CASE("array of strings is general with a repetition rule") {
  const auto conv = schema_to_cfg(Json::parse(R"({"type":"array","items":{"type":"string"}})"));
  CHECK_FALSE(is_linear(conv.grammar));
  bool two_nonterminals = false;
  for (const auto& p : conv.grammar.productions()) two_nonterminals |= p.nonterminal_count() == 2;
  CHECK(two_nonterminals);
  const CensusRow row = row_of(R"({"type":"array","items":{"type":"string"}})");
  CHECK(row.grammar_class == GrammarClass::General);
  CHECK(row.features == Features{true, false, false});
}

TEST_CASE("string schema is a single terminal rule") {
  const auto conv = schema_to_cfg(Json::parse(R"({"type":"string"})"));
  REQUIRE(conv.grammar.productions().size() == 1);
  CHECK(conv.grammar.productions()[0].rhs.size() == 1);
  CHECK(conv.grammar.productions()[0].rhs[0].is_terminal());
  CHECK(is_linear(conv.grammar));
}

TEST_CASE("flat object has no features") {
  const CensusRow row = row_of(R"({"type":"object","properties":{"a":{"type":"string"},"b":{"type":"number"}}})");
  CHECK(row.grammar_class == GrammarClass::Linear);
  CHECK_FALSE(row.features.any());
}

TEST_CASE("self reference to the root is recursive") {
  const CensusRow row = row_of(R"({"type":"object","properties":{"next":{"$ref":"#"}}})");
  CHECK(row.features.recursive_ref);
}

TEST_CASE("fixed-length and tuple arrays unroll linearly") {
  CHECK(row_of(R"({"type":"array","items":{"type":"number"},"minItems":2,"maxItems":2})").grammar_class ==
        GrammarClass::Linear);
  CHECK(row_of(R"({"type":"array","items":[{"type":"number"},{"type":"string"}]})").grammar_class ==
        GrammarClass::Linear);
}

TEST_CASE("unions become alternatives") {
  const auto conv = schema_to_cfg(Json::parse(R"({"anyOf":[{"type":"string"},{"type":"number"},{"type":"null"}]})"));
  CHECK(is_linear(conv.grammar));
  CHECK(conv.grammar.productions().size() == 4);
}

TEST_CASE("unresolvable references are recorded") {
  const auto conv = schema_to_cfg(Json::parse(R"({"$ref":"#/definitions/nope"})"));
  CHECK(conv.warnings.size() == 1);
}

TEST_CASE("permissive additional properties repeat members") {
  CHECK(row_of(R"({"type":"object","additionalProperties":true})").grammar_class == GrammarClass::General);
  CHECK(row_of(R"({"type":"object","additionalProperties":false})").grammar_class == GrammarClass::Linear);
}

TEST_CASE("conversion is deterministic") {
  const Json schema = Json::parse(
      R"({"type":"object","properties":{"a":{"oneOf":[{"type":"string"},{"$ref":"#/definitions/d"}]},
          "b":{"type":"array","items":{"$ref":"#"}}},"definitions":{"d":{"enum":[1,2,3]}}})");
  const auto first = schema_to_cfg(schema);
  const auto second = schema_to_cfg(schema);
  CHECK(first.grammar == second.grammar);
  CHECK(first.warnings == second.warnings);
}

TEST_CASE("linear schemas normalize to TALNF") {
  for (const char* text : {R"({"type":"object","properties":{"a":{"type":"string"},"b":{"enum":["x","y"]}}})",
                           R"({"$ref":"#/definitions/n","definitions":{"n":{"type":"object",
                              "properties":{"v":{"type":"integer"},"next":{"$ref":"#/definitions/n"}}}}})",
                           R"({"oneOf":[{"type":"string"},{"type":"object","properties":{"k":{"type":"null"}}}]})"}) {
    const auto conv = schema_to_cfg(Json::parse(text));
    REQUIRE(is_linear(conv.grammar));
    CHECK(is_talnf(to_talnf(conv.grammar)));
  }
}

TEST_CASE("splits parse leniently") {
  CHECK(parse_split("Train") == Split::Train);
  CHECK(parse_split("val") == Split::Validation);
  CHECK(parse_split("dev") == Split::Validation);
  CHECK(parse_split("test") == Split::Test);
  CHECK(parse_split("misc") == Split::Other);
}

TEST_CASE("empty directory gives an all-zero report") {
  const auto report = run_census(fresh_dir("empty"));
  const Aggregate agg = report.aggregate();
  CHECK(report.rows.empty());
  CHECK(agg.total.total == 0);
  CHECK(agg.total.percent_linear() == 0.0);
  CHECK(agg.productions.max == 0);
}

TEST_CASE("unreadable files are skipped and counted") {
  const fs::path dir = fresh_dir("skips");
  write(dir / "train" / "ok.json", R"({"type":"string"})");
  write(dir / "train" / "broken.json", "{ not json");
  write(dir / "notes.txt", "ignored");
  const auto report = run_census(dir, std::nullopt, 2);
  CHECK(report.rows.size() == 1);
  CHECK(report.skipped_files == 1);
  CHECK(report.rows[0].split == Split::Train);
}

TEST_CASE("manifest overrides path-based splits") {
  const fs::path dir = fresh_dir("manifest");
  write(dir / "a.json", R"({"type":"string"})");
  write(dir / "train" / "b.json", R"({"type":"array","items":{"type":"string"}})");
  const Json manifest = Json::parse(R"({"a.json":"test","train/b.json":{"split":"validation","dataset":"hub"}})");
  const auto report = run_census(dir, std::optional<Manifest>(manifest), 1);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].split == Split::Test);
  CHECK(report.rows[1].split == Split::Validation);
  CHECK(report.rows[1].dataset == "hub");
}

TEST_CASE("aggregates add up") {
  CensusReport report;
  for (int i = 0; i < 7; ++i) {
    CensusRow r;
    r.id = std::to_string(i);
    r.split = i < 3 ? Split::Train : (i < 5 ? Split::Validation : Split::Test);
    r.grammar_class = i % 3 == 0 ? GrammarClass::Linear : GrammarClass::General;
    r.productions = static_cast<std::size_t>(i + 1);
    r.nonterminals = 1;
    r.features.nested_object = i % 2 == 1;
    report.rows.push_back(r);
  }
  const Aggregate agg = report.aggregate();
  CHECK(agg.train.total + agg.validation.total + agg.test.total + agg.other.total == agg.total.total);
  CHECK(agg.total.linear + agg.total.general == agg.total.total);
  CHECK(agg.total.linear == 3);
  CHECK(agg.total.percent_linear() == doctest::Approx(100.0 * 3 / 7).epsilon(1e-12));
  CHECK(agg.productions.median == 4);
  CHECK(agg.productions.p95 == 7);
  CHECK(agg.productions.max == 7);
  CHECK(agg.productions.mean == doctest::Approx(4.0));
  CHECK(agg.nested_object == 2);  // rows 1 and 5 are general with the feature
}

TEST_CASE("report files are written") {
  const fs::path dir = fresh_dir("report_src");
  write(dir / "test" / "s.json", R"({"type":"string"})");
  const auto report = run_census(dir);
  const fs::path out = fresh_dir("report_out");
  write_report(report, out);
  for (const char* name : {"census.csv", "aggregate.txt", "class_by_dataset.csv", "size_vs_class.csv"}) {
    CHECK(fs::exists(out / name));
  }
  CHECK(format_census_csv(report).rfind("id,split,class,productions,nonterminals,bytes,features\n", 0) == 0);
}
