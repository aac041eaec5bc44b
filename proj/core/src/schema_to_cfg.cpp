#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "cflr/error.hpp"
#include "cflr/schema_census.hpp"

namespace cflr::census {
namespace {

constexpr int kMaxInlineDepth = 64;
constexpr std::int64_t kMaxUnroll = 16;
constexpr std::size_t kMaxSpecializedRules = 100000;

using Symbols = std::vector<Symbol>;

bool is_object_schema(const Json& node) {
  if (!node.is_object()) return false;
  if (node.contains("properties")) return true;
  const auto it = node.find("type");
  if (it == node.end()) return false;
  if (it->is_string()) return *it == "object";
  if (it->is_array()) return std::find(it->begin(), it->end(), Json("object")) != it->end();
  return false;
}

std::optional<std::int64_t> integer_field(const Json& node, const char* key) {
  const auto it = node.find(key);
  if (it == node.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<std::int64_t>();
}

bool fixed_length(const Json& node) {
  const auto lo = integer_field(node, "minItems");
  const auto hi = integer_field(node, "maxItems");
  return lo && hi && *lo == *hi;
}

std::string encode_token(std::string text) {
  std::string out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      out += "%20";
    } else {
      out += c;
    }
  }
  return out;
}

// Resolves a local JSON pointer reference ("#" or "#/a/b"); nullptr if it
// does not resolve.
const Json* resolve_ref(const Json& root, const std::string& ref) {
  if (ref == "#") return &root;
  if (ref.rfind("#/", 0) != 0) return nullptr;
  try {
    const Json::json_pointer ptr(ref.substr(1));
    if (!root.contains(ptr)) return nullptr;
    return &root.at(ptr);
  } catch (const Json::exception&) {
    return nullptr;
  }
}

class Converter {
 public:
  explicit Converter(const Json& root) : root_(root) {}

  Conversion run() {
    const Nonterminal start = fresh("#");
    refs_["#"] = start;
    active_.push_back("#");
    add(start, emit(root_, "#", {}, 0));
    features_.recursive_ref = has_ref_cycle();
    return {Grammar(std::move(terminals_), std::move(nonterminals_), std::move(rules_), start),
            std::move(warnings_), features_};
  }

 private:
  Symbol t(const std::string& name) { return Symbol::terminal(terminals_.intern(encode_token(name))); }

  Nonterminal fresh(const std::string& hint) {
    std::string name = encode_token(hint);
    for (int k = 2; nonterminals_.contains(name); ++k) name = encode_token(hint) + "~" + std::to_string(k);
    return nonterminals_.intern(name);
  }

  void add(Nonterminal lhs, Symbols rhs) {
    Production p{lhs, std::move(rhs)};
    if (seen_.insert(p).second) rules_.push_back(std::move(p));
  }

  static Symbols concat(Symbols head, const Symbols& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  }

  // A continuation shared by several alternatives is named once so the
  // alternatives stay short and carry at most that one nonterminal.
  Symbols share(const Symbols& cont, const std::string& path) {
    if (cont.size() <= 1) return cont;
    const Nonterminal c = fresh(path + "/$cont");
    add(c, cont);
    return {Symbol::nonterminal(c)};
  }

  Symbols alternatives(const std::vector<std::pair<const Json*, std::string>>& branches, const std::string& path,
                       const Symbols& cont, int depth) {
    const Nonterminal n = fresh(path);
    const Symbols shared = share(cont, path);
    for (const auto& [branch, branch_path] : branches) add(n, emit(*branch, branch_path, shared, depth + 1));
    return {Symbol::nonterminal(n)};
  }

  Nonterminal standalone(const Json& node, const std::string& path, int depth) {
    Symbols seq = emit(node, path, {}, depth);
    if (seq.size() == 1 && seq[0].is_nonterminal()) return seq[0].id;
    const Nonterminal n = fresh(path);
    add(n, std::move(seq));
    return n;
  }

  bool is_active(const std::string& ref) const {
    return std::find(active_.begin(), active_.end(), ref) != active_.end();
  }

  // Depth-first search for a cycle in the reference graph reachable from
  // the root document.
  bool has_ref_cycle() const {
    std::map<std::string, int> color;  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<std::string, bool>> stack{{"#", false}};
    while (!stack.empty()) {
      auto [v, leaving] = stack.back();
      stack.pop_back();
      if (leaving) {
        color[v] = 2;
        continue;
      }
      if (color[v] != 0) continue;
      color[v] = 1;
      stack.push_back({v, true});
      const auto it = ref_edges_.find(v);
      if (it == ref_edges_.end()) continue;
      for (const auto& w : it->second) {
        if (color[w] == 1) return true;
        if (color[w] == 0) stack.push_back({w, false});
      }
    }
    return false;
  }

  // Context-free nonterminal for a definition, shared by every use site.
  Nonterminal ref_nonterminal(const std::string& ref, int depth) {
    if (auto it = refs_.find(ref); it != refs_.end()) return it->second;
    const Nonterminal n = fresh("ref:" + ref);
    refs_[ref] = n;
    const Json* target = resolve_ref(root_, ref);
    if (!target) {
      warnings_.push_back("unresolvable $ref '" + ref + "'");
      return n;  // no rules: unproductive
    }
    active_.push_back(ref);
    add(n, emit(*target, ref, {}, depth + 1));
    active_.pop_back();
    return n;
  }

  // A reference followed by more input. Non-recursive uses are specialized
  // to their continuation so a referenced definition in the middle of an
  // object costs no extra nonterminal; recursive uses go through the shared
  // nonterminal.
  Symbols emit_ref(const std::string& ref, const Symbols& cont, int depth) {
    ref_edges_[active_.back()].insert(ref);
    const Json* target = resolve_ref(root_, ref);
    if (cont.empty() || !target || is_active(ref) || rules_.size() > kMaxSpecializedRules) {
      return concat({Symbol::nonterminal(ref_nonterminal(ref, depth))}, cont);
    }
    std::string key = ref;
    for (const Symbol& s : cont) key += (s.is_terminal() ? " t" : " n") + std::to_string(s.id);
    if (auto it = specialized_.find(key); it != specialized_.end()) return {Symbol::nonterminal(it->second)};
    const Nonterminal n = fresh("ref:" + ref + "/$in");
    specialized_[key] = n;
    active_.push_back(ref);
    add(n, emit(*target, ref, cont, depth + 1));
    active_.pop_back();
    return {Symbol::nonterminal(n)};
  }

  Symbols emit(const Json& node, const std::string& path, const Symbols& cont, int depth) {
    if (depth > kMaxInlineDepth) {
      warnings_.push_back(path + ": nesting too deep, treated as ANY");
      return concat({t("ANY")}, cont);
    }
    if (node.is_boolean()) {
      if (node.get<bool>()) return concat({t("ANY")}, cont);
      warnings_.push_back(path + ": false schema admits nothing");
      return concat({Symbol::nonterminal(fresh(path + "/$never"))}, cont);
    }
    if (!node.is_object()) {
      warnings_.push_back(path + ": schema is not an object, treated as ANY");
      return concat({t("ANY")}, cont);
    }

    if (const auto it = node.find("$ref"); it != node.end() && it->is_string()) {
      return emit_ref(it->get<std::string>(), cont, depth);
    }
    for (const char* key : {"oneOf", "anyOf"}) {
      const auto it = node.find(key);
      if (it == node.end() || !it->is_array() || it->empty()) continue;
      std::vector<std::pair<const Json*, std::string>> branches;
      for (std::size_t i = 0; i < it->size(); ++i) {
        branches.emplace_back(&(*it)[i], path + "/" + key + "/" + std::to_string(i));
      }
      return alternatives(branches, path + "/" + key, cont, depth);
    }
    if (const auto it = node.find("allOf"); it != node.end() && it->is_array() && !it->empty()) {
      return emit(merge_all_of(node, path), path, cont, depth + 1);
    }
    if (const auto it = node.find("const"); it != node.end()) {
      return concat({t("lit:" + it->dump())}, cont);
    }
    if (const auto it = node.find("enum"); it != node.end() && it->is_array() && !it->empty()) {
      if (it->size() == 1) return concat({t("lit:" + it->front().dump())}, cont);
      const Nonterminal n = fresh(path + "/enum");
      const Symbols shared = share(cont, path + "/enum");
      for (const auto& value : *it) add(n, concat({t("lit:" + value.dump())}, shared));
      return {Symbol::nonterminal(n)};
    }

    if (const auto it = node.find("type"); it != node.end() && it->is_array()) {
      if (it->size() == 1) {
        Json single = node;
        single["type"] = it->front();
        return emit(single, path, cont, depth + 1);
      }
      std::vector<Json> variants;
      for (const auto& type : *it) {
        Json single = node;
        single["type"] = type;
        variants.push_back(std::move(single));
      }
      std::vector<std::pair<const Json*, std::string>> branches;
      for (const auto& v : variants) branches.emplace_back(&v, path + "/" + v["type"].get<std::string>());
      return alternatives(branches, path + "/type", cont, depth);
    }

    std::string type;
    if (const auto it = node.find("type"); it != node.end() && it->is_string()) type = it->get<std::string>();
    if (type.empty()) {
      if (node.contains("properties")) {
        type = "object";
      } else if (node.contains("items") || node.contains("prefixItems")) {
        type = "array";
      }
    }

    if (type == "object") return emit_object(node, path, cont, depth);
    if (type == "array") return emit_array(node, path, cont, depth);
    if (type == "string") return concat({t("STR")}, cont);
    if (type == "number" || type == "integer") return concat({t("NUM")}, cont);
    if (type == "boolean") return concat({t("BOOL")}, cont);
    if (type == "null") return concat({t("NULL")}, cont);
    if (!type.empty()) warnings_.push_back(path + ": unknown type '" + type + "', treated as ANY");
    return concat({t("ANY")}, cont);
  }

  // Object with properties p_1..p_k: P_i -> "p_i" : <value_i> P_{i+1}, with
  // an extra P_i -> P_{i+1} when p_i is optional. The tail closes the brace.
  Symbols emit_object(const Json& node, const std::string& path, const Symbols& cont, int depth) {
    std::set<std::string> required;
    if (const auto it = node.find("required"); it != node.end() && it->is_array()) {
      for (const auto& r : *it) {
        if (r.is_string()) required.insert(r.get<std::string>());
      }
    }

    Symbols tail = concat({t("}")}, cont);
    if (permits_extra_members(node)) {
      warnings_.push_back(path + ": additionalProperties/patternProperties treated as variable-length repetition");
      const Nonterminal members = fresh(path + "/$members");
      const Nonterminal member = fresh(path + "/$member");
      add(member, {t("KEY"), t(":"), t("ANY")});
      add(members, {Symbol::nonterminal(member)});
      add(members, {Symbol::nonterminal(member), t(","), Symbol::nonterminal(members)});
      const Nonterminal rest = fresh(path + "/$rest");
      add(rest, tail);
      add(rest, concat({Symbol::nonterminal(members)}, tail));
      tail = {Symbol::nonterminal(rest)};
    }

    const auto props = node.find("properties");
    if (props == node.end() || !props->is_object() || props->empty()) return concat({t("{")}, tail);

    std::vector<std::string> keys;
    for (const auto& [key, _] : props->items()) keys.push_back(key);

    Symbols next = tail;
    for (std::size_t i = keys.size(); i-- > 0;) {
      const std::string& key = keys[i];
      const std::string prop_path = path + "/properties/" + key;
      if (is_object_schema((*props)[key])) features_.nested_object = true;
      const Nonterminal chain = fresh(prop_path + "/$chain");
      Symbols after = i + 1 < keys.size() ? concat({t(",")}, next) : next;
      add(chain, concat({t(Json(key).dump()), t(":")}, emit((*props)[key], prop_path, after, depth + 1)));
      if (!required.contains(key)) add(chain, next);
      next = {Symbol::nonterminal(chain)};
    }
    return concat({t("{")}, next);
  }

  Symbols emit_array(const Json& node, const std::string& path, const Symbols& cont, int depth) {
    const Json* tuple = nullptr;
    if (const auto it = node.find("prefixItems"); it != node.end() && it->is_array()) tuple = &*it;
    if (const auto it = node.find("items"); !tuple && it != node.end() && it->is_array()) tuple = &*it;
    if (tuple) return unroll(*tuple, nullptr, tuple->size(), path, cont, depth);

    const auto items = node.find("items");
    const Json any_item = true;
    const Json& item = items != node.end() ? *items : any_item;
    if (fixed_length(node)) {
      const auto count = *integer_field(node, "minItems");
      if (count >= 0 && count <= kMaxUnroll) {
        return unroll(Json::array(), &item, static_cast<std::size_t>(count), path, cont, depth);
      }
      warnings_.push_back(path + ": fixed-length array too long to unroll, treated as repetition");
    }

    // Arr -> [ ] | [ Items ],  Items -> Item | Item , Items
    if (items != node.end() && items->is_object()) features_.variable_length_array = true;
    const Nonterminal arr = fresh(path + "/$array");
    const Nonterminal list = fresh(path + "/$items");
    const Nonterminal element = standalone(item, path + "/items", depth + 1);
    add(list, {Symbol::nonterminal(element)});
    add(list, {Symbol::nonterminal(element), t(","), Symbol::nonterminal(list)});
    const auto min_items = integer_field(node, "minItems");
    if (!min_items || *min_items <= 0) add(arr, {t("["), t("]")});
    add(arr, {t("["), Symbol::nonterminal(list), t("]")});
    return concat({Symbol::nonterminal(arr)}, cont);
  }

  // [ v_1 , v_2 , ... , v_k ] with each value emitted in front of the rest.
  Symbols unroll(const Json& tuple, const Json* repeated, std::size_t count, const std::string& path,
                 const Symbols& cont, int depth) {
    Symbols seq = concat({t("]")}, cont);
    for (std::size_t i = count; i-- > 0;) {
      const Json& item = repeated ? *repeated : tuple[i];
      if (i + 1 < count) seq = concat({t(",")}, seq);
      seq = emit(item, path + "/items/" + std::to_string(i), seq, depth + 1);
    }
    return concat({t("[")}, seq);
  }

  static bool permits_extra_members(const Json& node) {
    if (const auto it = node.find("patternProperties"); it != node.end() && it->is_object() && !it->empty()) {
      return true;
    }
    const auto it = node.find("additionalProperties");
    if (it == node.end()) return false;
    return (it->is_boolean() && it->get<bool>()) || it->is_object();
  }

  Json merge_all_of(const Json& node, const std::string& path) {
    Json merged = node;
    merged.erase("allOf");
    for (const auto& raw : node["allOf"]) {
      const Json* part = &raw;
      if (raw.is_object() && raw.contains("$ref") && raw["$ref"].is_string()) {
        const auto ref = raw["$ref"].get<std::string>();
        ref_edges_[active_.back()].insert(ref);
        part = resolve_ref(root_, ref);
        if (!part) {
          warnings_.push_back(path + ": unresolvable $ref inside allOf");
          continue;
        }
      }
      if (!part->is_object()) continue;
      for (const auto& [key, value] : part->items()) {
        if (key == "properties" && value.is_object()) {
          for (const auto& [pk, pv] : value.items()) merged["properties"][pk] = pv;
        } else if (key == "required" && value.is_array()) {
          for (const auto& r : value) merged["required"].push_back(r);
        } else if (key != "$ref" && key != "allOf" && !merged.contains(key)) {
          merged[key] = value;
        }
      }
    }
    return merged;
  }

  const Json& root_;
  SymbolTable terminals_;
  SymbolTable nonterminals_;
  std::vector<Production> rules_;
  std::set<Production> seen_;
  std::map<std::string, Nonterminal> refs_;
  std::map<std::string, Nonterminal> specialized_;
  std::vector<std::string> active_;  // definitions being expanded, innermost last
  std::map<std::string, std::set<std::string>> ref_edges_;
  Features features_;
  std::vector<std::string> warnings_;
};

}  // namespace

Conversion schema_to_cfg(const Json& schema) {
  if (schema.is_discarded()) throw Error(ErrorKind::InvalidJson, "schema is not valid JSON");
  return Converter(schema).run();
}

Features schema_features(const Json& schema) { return schema_to_cfg(schema).features; }

}  // namespace cflr::census
