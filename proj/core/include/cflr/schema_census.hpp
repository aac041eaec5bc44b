#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cflr/grammar.hpp"

namespace cflr::census {

using Json = nlohmann::ordered_json;

enum class Split { Train, Validation, Test, Other };
std::string_view to_string(Split split) noexcept;
/// Recognizes train, validation/val/dev, test; anything else is Other.
Split parse_split(std::string_view name) noexcept;

enum class GrammarClass { Linear, General };
std::string_view to_string(GrammarClass c) noexcept;

struct Features {
  bool variable_length_array = false;
  bool nested_object = false;
  bool recursive_ref = false;

  bool any() const noexcept { return variable_length_array || nested_object || recursive_ref; }
  /// `;`-joined names in fixed order, empty when none.
  std::string to_string() const;
  friend bool operator==(const Features&, const Features&) = default;
};

struct SchemaRecord {
  std::string id;
  Split split = Split::Other;
  std::string dataset = "default";
  std::size_t raw_size_bytes = 0;
  Json schema;
};

struct Conversion {
  Grammar grammar;
  std::vector<std::string> warnings;
  Features features;
};

/// Deterministic structural schema -> CFG mapping.
///
/// Every schema node is emitted in continuation style: the symbols for the
/// node are followed by whatever comes after it, so objects become chains of
/// property nonterminals with one continuation each. Variable-length arrays
/// use `Items -> Item | Item , Items`, which puts two nonterminals on one
/// right-hand side. Primitive values map to the abstract terminals STR, NUM,
/// BOOL, NULL and ANY; enum/const values to one terminal per literal.
Conversion schema_to_cfg(const Json& schema);

/// Structural features seen while walking the parts of the schema that the
/// conversion emits: a non-fixed `items` object, an object property whose
/// schema is an object, and a cycle in the `$ref` graph reachable from the
/// root. Read from the schema, not from the grammar.
Features schema_features(const Json& schema);

struct CensusRow {
  std::string id;
  Split split = Split::Other;
  std::string dataset;
  GrammarClass grammar_class = GrammarClass::General;
  std::size_t productions = 0;
  std::size_t nonterminals = 0;
  std::size_t schema_bytes = 0;
  Features features;
  std::size_t warnings = 0;
};

CensusRow classify_schema(const SchemaRecord& record);

struct SplitTotals {
  std::size_t total = 0;
  std::size_t linear = 0;
  std::size_t general = 0;
  double avg_productions = 0.0;
  double avg_nonterminals = 0.0;
  /// 100 * linear / total, or 0 for an empty split.
  double percent_linear() const noexcept;
};

struct Distribution {
  std::size_t median = 0;  // nearest-rank
  double mean = 0.0;
  std::size_t p95 = 0;     // nearest-rank
  std::size_t max = 0;
};

struct ClassSummary {
  std::size_t count = 0;
  double avg_productions = 0.0;
  double avg_bytes = 0.0;
};

struct Aggregate {
  SplitTotals train, validation, test, other, total;
  ClassSummary linear, general;
  Distribution productions, nonterminals;
  // Feature counts among General rows.
  std::size_t variable_length_array = 0;
  std::size_t nested_object = 0;
  std::size_t recursive_ref = 0;

  const SplitTotals& split(Split s) const noexcept;
};

struct CensusReport {
  std::vector<CensusRow> rows;  // sorted by id
  std::size_t skipped_files = 0;
  std::vector<std::string> skipped;

  Aggregate aggregate() const;
};

/// Split/dataset assignment for files keyed by path relative to the corpus
/// root. Values are a split name or {"split": ..., "dataset": ...}.
using Manifest = Json;

/// Converts every `.json` file under `root`. Without a manifest entry, a path
/// component naming a split sets the split and the first other directory
/// component names the dataset. Files that cannot be read or parsed are
/// skipped and counted. `threads == 0` uses the hardware concurrency.
CensusReport run_census(const std::filesystem::path& root, const std::optional<Manifest>& manifest = std::nullopt,
                        unsigned threads = 0);

std::string format_census_csv(const CensusReport& report);
std::string format_aggregate(const CensusReport& report);
std::string format_class_by_dataset(const CensusReport& report);
std::string format_size_vs_class(const CensusReport& report);

/// Writes census.csv, aggregate.txt, class_by_dataset.csv and
/// size_vs_class.csv into `out_dir` (created if missing).
void write_report(const CensusReport& report, const std::filesystem::path& out_dir);

}  // namespace cflr::census
