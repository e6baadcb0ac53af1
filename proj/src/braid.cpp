#include "qjk/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qjk/common.hpp"

#ifndef QJK_DEFAULT_KNOT_TABLE
#define QJK_DEFAULT_KNOT_TABLE "data/knots.json"
#endif

namespace qjk {

namespace {

void validate(const BraidWord& w) {
  if (w.strands < 1) throw DomainError("braid needs at least one strand");
  for (const int g : w.letters) {
    if (g == 0 || std::abs(g) >= w.strands) {
      throw DomainError("letter " + std::to_string(g) + " out of range for " + std::to_string(w.strands) +
                        " strands");
    }
  }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

BraidWord make_braid(int strands, std::vector<int> letters) {
  BraidWord w{strands, std::move(letters)};
  validate(w);
  return w;
}

BraidWord parse_braid(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  };
  auto read_int = [&](const char* what) {
    const std::size_t start = pos;
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (pos < text.size() && text[pos] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw ParseError(std::string("expected ") + what, start);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && !is_space(text[pos]) && text[pos] != ':') {
      throw ParseError(std::string("unexpected character in ") + what, pos);
    }
    return value;
  };

  skip();
  const std::size_t strands_at = pos;
  BraidWord w;
  w.strands = read_int("strand count");
  if (w.strands < 1) throw ParseError("strand count must be at least 1", strands_at);
  skip();
  if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':' after strand count", pos);
  ++pos;
  for (skip(); pos < text.size(); skip()) {
    const std::size_t at = pos;
    const int g = read_int("generator");
    if (g == 0) throw ParseError("generator 0 is not allowed", at);
    if (std::abs(g) >= w.strands) {
      throw ParseError("generator " + std::to_string(g) + " needs more than " + std::to_string(w.strands) +
                           " strands",
                       at);
    }
    w.letters.push_back(g);
  }
  return w;
}

std::string format_braid(const BraidWord& w) {
  std::string out = std::to_string(w.strands) + ":";
  for (const int g : w.letters) out += " " + std::to_string(g);
  return out;
}

int writhe(const BraidWord& w) {
  int total = 0;
  for (const int g : w.letters) total += g > 0 ? 1 : -1;
  return total;
}

std::vector<int> braid_permutation(const BraidWord& w) {
  // position[p] = strand currently at position p
  std::vector<int> position(static_cast<std::size_t>(w.strands));
  std::iota(position.begin(), position.end(), 0);
  for (const int g : w.letters) {
    const auto i = static_cast<std::size_t>(std::abs(g) - 1);
    std::swap(position[i], position[i + 1]);
  }
  std::vector<int> perm(position.size());
  for (std::size_t p = 0; p < position.size(); ++p) perm[static_cast<std::size_t>(position[p])] = static_cast<int>(p);
  return perm;
}

int closure_components(const BraidWord& w) {
  const auto perm = braid_permutation(w);
  std::vector<char> seen(perm.size(), 0);
  int cycles = 0;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (auto p = start; !seen[p]; p = static_cast<std::size_t>(perm[p])) seen[p] = 1;
  }
  return cycles;
}

BraidWord concatenate(const BraidWord& w1, const BraidWord& w2) {
  BraidWord out{std::max(w1.strands, w2.strands), w1.letters};
  out.letters.insert(out.letters.end(), w2.letters.begin(), w2.letters.end());
  return out;
}

BraidWord inverse(const BraidWord& w) {
  BraidWord out{w.strands, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

BraidWord connect_sum(const BraidWord& w1, const BraidWord& w2) {
  if (closure_components(w1) != 1 || closure_components(w2) != 1) {
    throw DomainError("connect_sum: both closures must be knots");
  }
  BraidWord out{w1.strands + w2.strands - 1, w1.letters};
  const int shift = w1.strands - 1;
  for (const int g : w2.letters) out.letters.push_back(g > 0 ? g + shift : g - shift);
  return out;
}

BraidWord rotate(const BraidWord& w, std::size_t k) {
  BraidWord out = w;
  if (!out.letters.empty()) {
    std::rotate(out.letters.begin(), out.letters.begin() + static_cast<std::ptrdiff_t>(k % out.letters.size()),
                out.letters.end());
  }
  return out;
}

BraidWord conjugate(const BraidWord& w, int letter) {
  BraidWord out{w.strands, {letter}};
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  out.letters.push_back(-letter);
  validate(out);
  return out;
}

BraidWord stabilize(const BraidWord& w, bool positive) {
  BraidWord out{w.strands + 1, w.letters};
  out.letters.push_back(positive ? w.strands : -w.strands);
  return out;
}

std::vector<KnotEntry> parse_knot_table(std::string_view json_text, std::string_view origin) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string(origin) + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array()) throw SchemaError(std::string(origin) + ": knot table must be a JSON array");

  std::vector<KnotEntry> table;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const json& item = doc[k];
    const std::string where = std::string(origin) + ": entry " + std::to_string(k);
    auto fail = [&](const std::string& why) -> SchemaError { return SchemaError(where + ": " + why); };
    if (!item.is_object()) throw fail("not an object");
    for (const char* key : {"name", "strands", "word", "reference_volume", "reference_determinant", "source"}) {
      if (!item.contains(key)) throw fail(std::string("missing field '") + key + "'");
    }
    KnotEntry entry;
    if (!item["name"].is_string()) throw fail("'name' must be a string");
    entry.name = item["name"].get<std::string>();
    const std::string named = where + " (" + entry.name + ")";
    auto fail_named = [&](const std::string& why) { return SchemaError(named + ": " + why); };
    if (!item["strands"].is_number_integer()) throw fail_named("'strands' must be an integer");
    if (!item["word"].is_array()) throw fail_named("'word' must be an array of integers");
    std::vector<int> letters;
    for (const auto& g : item["word"]) {
      if (!g.is_number_integer()) throw fail_named("'word' must be an array of integers");
      letters.push_back(g.get<int>());
    }
    try {
      entry.word = make_braid(item["strands"].get<int>(), std::move(letters));
    } catch (const DomainError& e) {
      throw fail_named(e.what());
    }
    if (closure_components(entry.word) != 1) throw fail_named("braid closure is not a knot");
    const auto& volume = item["reference_volume"];
    if (volume.is_number()) {
      if (volume.get<double>() < 0) throw fail_named("'reference_volume' must be non-negative");
      entry.reference_volume = volume.get<double>();
    } else if (!volume.is_null()) {
      throw fail_named("'reference_volume' must be a number or null");
    }
    const auto& det = item["reference_determinant"];
    if (det.is_number_integer()) {
      entry.reference_determinant = det.get<long long>();
    } else if (!det.is_null()) {
      throw fail_named("'reference_determinant' must be an integer or null");
    }
    if (!item["source"].is_string()) throw fail_named("'source' must be a string");
    entry.source = item["source"].get<std::string>();
    if (item.contains("summands")) {
      const auto& parts = item["summands"];
      if (!parts.is_array() || parts.size() < 2) throw fail_named("'summands' must list at least two names");
      for (const auto& part : parts) {
        if (!part.is_string()) throw fail_named("'summands' must list names");
        entry.summands.push_back(part.get<std::string>());
      }
    }
    for (const auto& other : table) {
      if (other.name == entry.name) throw fail_named("duplicate name");
    }
    table.push_back(std::move(entry));
  }
  for (std::size_t k = 0; k < table.size(); ++k) {
    for (const auto& part : table[k].summands) {
      const bool known = std::any_of(table.begin(), table.end(), [&](const KnotEntry& e) { return e.name == part; });
      if (!known || part == table[k].name) {
        throw SchemaError(std::string(origin) + ": entry " + std::to_string(k) + " (" + table[k].name +
                          "): unknown summand '" + part + "'");
      }
    }
  }
  return table;
}

std::vector<KnotEntry> load_knot_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open knot table '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_knot_table(buffer.str(), path);
}

std::string default_knot_table_path() {
  if (const char* env = std::getenv("QJK_KNOT_TABLE"); env != nullptr && *env != '\0') return env;
  return QJK_DEFAULT_KNOT_TABLE;
}

const KnotEntry& find_knot(const std::vector<KnotEntry>& table, std::string_view name) {
  for (const auto& entry : table) {
    if (entry.name == name) return entry;
  }
  throw DomainError("no knot named '" + std::string(name) + "' in table");
}

}  // namespace qjk
