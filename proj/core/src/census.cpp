#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "cflr/error.hpp"
#include "cflr/schema_census.hpp"

namespace cflr::census {

namespace fs = std::filesystem;

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
    case Split::Other: return "other";
  }
  return "other";
}

Split parse_split(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "train") return Split::Train;
  if (lower == "validation" || lower == "val" || lower == "dev") return Split::Validation;
  if (lower == "test") return Split::Test;
  return Split::Other;
}

std::string_view to_string(GrammarClass c) noexcept { return c == GrammarClass::Linear ? "linear" : "general"; }

std::string Features::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ';';
    out += name;
  };
  add(variable_length_array, "variable_length_array");
  add(nested_object, "nested_object");
  add(recursive_ref, "recursive_ref");
  return out;
}

CensusRow classify_schema(const SchemaRecord& record) {
  const Conversion conv = schema_to_cfg(record.schema);
  CensusRow row;
  row.id = record.id;
  row.split = record.split;
  row.dataset = record.dataset;
  row.grammar_class = is_linear(conv.grammar) ? GrammarClass::Linear : GrammarClass::General;
  row.productions = conv.grammar.productions().size();
  row.nonterminals = conv.grammar.nonterminal_count();
  row.schema_bytes = record.raw_size_bytes;
  row.features = conv.features;
  row.warnings = conv.warnings.size();
  return row;
}

double SplitTotals::percent_linear() const noexcept {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(linear) / static_cast<double>(total);
}

const SplitTotals& Aggregate::split(Split s) const noexcept {
  switch (s) {
    case Split::Train: return train;
    case Split::Validation: return validation;
    case Split::Test: return test;
    case Split::Other: return other;
  }
  return other;
}

namespace {

Distribution distribution(std::vector<std::size_t> values) {
  Distribution d;
  if (values.empty()) return d;
  std::sort(values.begin(), values.end());
  auto nearest_rank = [&](double p) {
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
    return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
  };
  d.median = nearest_rank(0.5);
  d.p95 = nearest_rank(0.95);
  d.max = values.back();
  d.mean = static_cast<double>(std::accumulate(values.begin(), values.end(), std::size_t{0})) /
           static_cast<double>(values.size());
  return d;
}

void accumulate_split(SplitTotals& t, const CensusRow& row) {
  ++t.total;
  (row.grammar_class == GrammarClass::Linear ? t.linear : t.general) += 1;
  t.avg_productions += static_cast<double>(row.productions);
  t.avg_nonterminals += static_cast<double>(row.nonterminals);
}

void finish_split(SplitTotals& t) {
  if (t.total == 0) return;
  t.avg_productions /= static_cast<double>(t.total);
  t.avg_nonterminals /= static_cast<double>(t.total);
}

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string generic_path(const fs::path& p) { return p.generic_string(); }

// Split and dataset for a file at `rel` (relative to the corpus root).
void assign_split(SchemaRecord& rec, const fs::path& rel, const std::optional<Manifest>& manifest) {
  if (manifest && manifest->is_object()) {
    const auto it = manifest->find(generic_path(rel));
    if (it != manifest->end()) {
      if (it->is_string()) {
        rec.split = parse_split(it->get<std::string>());
      } else if (it->is_object()) {
        if (auto s = it->find("split"); s != it->end() && s->is_string()) rec.split = parse_split(s->get<std::string>());
        if (auto d = it->find("dataset"); d != it->end() && d->is_string()) rec.dataset = d->get<std::string>();
      }
      return;
    }
  }
  bool dataset_set = false;
  for (const auto& part : rel.parent_path()) {
    const std::string name = part.string();
    const Split s = parse_split(name);
    if (s != Split::Other) {
      rec.split = s;
    } else if (!dataset_set) {
      rec.dataset = name;
      dataset_set = true;
    }
  }
}

}  // namespace

Aggregate CensusReport::aggregate() const {
  Aggregate agg;
  std::vector<std::size_t> prods, nts;
  for (const CensusRow& row : rows) {
    SplitTotals* split = &agg.other;
    switch (row.split) {
      case Split::Train: split = &agg.train; break;
      case Split::Validation: split = &agg.validation; break;
      case Split::Test: split = &agg.test; break;
      case Split::Other: break;
    }
    accumulate_split(*split, row);
    accumulate_split(agg.total, row);
    ClassSummary& cls = row.grammar_class == GrammarClass::Linear ? agg.linear : agg.general;
    ++cls.count;
    cls.avg_productions += static_cast<double>(row.productions);
    cls.avg_bytes += static_cast<double>(row.schema_bytes);
    if (row.grammar_class == GrammarClass::General) {
      agg.variable_length_array += row.features.variable_length_array;
      agg.nested_object += row.features.nested_object;
      agg.recursive_ref += row.features.recursive_ref;
    }
    prods.push_back(row.productions);
    nts.push_back(row.nonterminals);
  }
  for (SplitTotals* t : {&agg.train, &agg.validation, &agg.test, &agg.other, &agg.total}) finish_split(*t);
  for (ClassSummary* c : {&agg.linear, &agg.general}) {
    if (c->count == 0) continue;
    c->avg_productions /= static_cast<double>(c->count);
    c->avg_bytes /= static_cast<double>(c->count);
  }
  agg.productions = distribution(std::move(prods));
  agg.nonterminals = distribution(std::move(nts));
  return agg;
}

CensusReport run_census(const fs::path& root, const std::optional<Manifest>& manifest, unsigned threads) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(ErrorKind::Io, "census root is not a directory: " + root.string());

  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && it->path().extension() == ".json") files.push_back(it->path());
  }
  if (ec) throw Error(ErrorKind::Io, "cannot walk census root: " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<std::optional<CensusRow>> slots(files.size());
  std::vector<std::string> failures(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const fs::path rel = files[i].lexically_relative(root);
      std::ifstream in(files[i], std::ios::binary);
      std::ostringstream buf;
      if (!in || !(buf << in.rdbuf())) {
        failures[i] = generic_path(rel) + ": unreadable";
        continue;
      }
      const std::string bytes = buf.str();
      SchemaRecord rec;
      rec.id = generic_path(rel);
      rec.raw_size_bytes = bytes.size();
      rec.schema = Json::parse(bytes, nullptr, false);
      if (rec.schema.is_discarded()) {
        failures[i] = rec.id + ": invalid JSON";
        continue;
      }
      assign_split(rec, rel, manifest);
      try {
        slots[i] = classify_schema(rec);
      } catch (const std::exception& e) {
        failures[i] = rec.id + ": " + e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(files.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  pool.clear();

  CensusReport report;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (slots[i]) {
      report.rows.push_back(std::move(*slots[i]));
    } else {
      ++report.skipped_files;
      report.skipped.push_back(failures[i]);
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CensusRow& a, const CensusRow& b) { return a.id < b.id; });
  return report;
}

std::string format_census_csv(const CensusReport& report) {
  std::ostringstream out;
  out << "id,split,class,productions,nonterminals,bytes,features\n";
  for (const CensusRow& r : report.rows) {
    out << csv_field(r.id) << ',' << to_string(r.split) << ',' << to_string(r.grammar_class) << ',' << r.productions
        << ',' << r.nonterminals << ',' << r.schema_bytes << ',' << r.features.to_string() << '\n';
  }
  return out.str();
}

std::string format_aggregate(const CensusReport& report) {
  const Aggregate agg = report.aggregate();
  std::ostringstream out;
  out << "# linearity census (artifact output)\n";
  out << std::left << std::setw(12) << "split" << std::right << std::setw(8) << "total" << std::setw(8) << "linear"
      << std::setw(9) << "general" << std::setw(10) << "%linear" << std::setw(10) << "avg|P|" << '\n';
  auto line = [&](const char* name, const SplitTotals& t) {
    out << std::left << std::setw(12) << name << std::right << std::setw(8) << t.total << std::setw(8) << t.linear
        << std::setw(9) << t.general << std::setw(10) << fixed(t.percent_linear(), 1) << std::setw(10)
        << fixed(t.avg_productions, 1) << '\n';
  };
  line("train", agg.train);
  line("validation", agg.validation);
  line("test", agg.test);
  if (agg.other.total > 0) line("other", agg.other);
  line("total", agg.total);

  out << "\n";
  out << std::left << std::setw(12) << "class" << std::right << std::setw(8) << "count" << std::setw(10) << "avg|P|"
      << std::setw(12) << "avg_bytes" << '\n';
  auto cls = [&](const char* name, const ClassSummary& c) {
    out << std::left << std::setw(12) << name << std::right << std::setw(8) << c.count << std::setw(10)
        << fixed(c.avg_productions, 1) << std::setw(12) << fixed(c.avg_bytes, 1) << '\n';
  };
  cls("linear", agg.linear);
  cls("general", agg.general);

  out << "\n";
  out << std::left << std::setw(12) << "size" << std::right << std::setw(8) << "median" << std::setw(10) << "mean"
      << std::setw(8) << "p95" << std::setw(8) << "max" << '\n';
  auto dist = [&](const char* name, const Distribution& d) {
    out << std::left << std::setw(12) << name << std::right << std::setw(8) << d.median << std::setw(10)
        << fixed(d.mean, 1) << std::setw(8) << d.p95 << std::setw(8) << d.max << '\n';
  };
  dist("|P|", agg.productions);
  dist("|N|", agg.nonterminals);

  out << "\nfeatures among general schemas (" << agg.general.count << ")\n";
  auto feature = [&](const char* name, std::size_t count) {
    const double pct = agg.general.count == 0 ? 0.0 : 100.0 * static_cast<double>(count) / agg.general.count;
    out << std::left << std::setw(24) << name << std::right << std::setw(8) << count << std::setw(10)
        << fixed(pct, 1) << '\n';
  };
  feature("variable_length_array", agg.variable_length_array);
  feature("nested_object", agg.nested_object);
  feature("recursive_ref", agg.recursive_ref);

  out << "\nskipped_files " << report.skipped_files << '\n';
  return out.str();
}

std::string format_class_by_dataset(const CensusReport& report) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const CensusRow& r : report.rows) {
    auto& [linear, general] = counts[r.dataset];
    (r.grammar_class == GrammarClass::Linear ? linear : general) += 1;
  }
  std::ostringstream out;
  out << "dataset,linear,general,total,percent_linear\n";
  for (const auto& [dataset, c] : counts) {
    const std::size_t total = c.first + c.second;
    out << csv_field(dataset) << ',' << c.first << ',' << c.second << ',' << total << ','
        << fixed(100.0 * static_cast<double>(c.first) / static_cast<double>(total), 2) << '\n';
  }
  return out.str();
}

std::string format_size_vs_class(const CensusReport& report) {
  std::ostringstream out;
  out << "id,class,productions,nonterminals,bytes\n";
  for (const CensusRow& r : report.rows) {
    out << csv_field(r.id) << ',' << to_string(r.grammar_class) << ',' << r.productions << ',' << r.nonterminals
        << ',' << r.schema_bytes << '\n';
  }
  return out.str();
}

void write_report(const CensusReport& report, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!(out << text)) throw Error(ErrorKind::Io, "cannot write " + (out_dir / name).string());
  };
  write("census.csv", format_census_csv(report));
  write("aggregate.txt", format_aggregate(report));
  write("class_by_dataset.csv", format_class_by_dataset(report));
  write("size_vs_class.csv", format_size_vs_class(report));
}

}  // namespace cflr::census
