#pragma once

// Braid words in the text form "n: g1 g2 ...": n strands, letter g means
// sigma_|g| with the sign of g as crossing sign.  The closure of a braid is the
// link obtained by joining the top and bottom ends of each strand.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qjk {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  bool operator==(const BraidWord&) const = default;
};

BraidWord make_braid(int strands, std::vector<int> letters);
BraidWord parse_braid(std::string_view text);
std::string format_braid(const BraidWord& w);

int writhe(const BraidWord& w);
// Strand permutation of the braid: strand at position p ends at perm[p].
std::vector<int> braid_permutation(const BraidWord& w);
int closure_components(const BraidWord& w);

// w1 followed by w2, on max(n1, n2) strands.
BraidWord concatenate(const BraidWord& w1, const BraidWord& w2);
BraidWord inverse(const BraidWord& w);

// K1 # K2 on n1 + n2 - 1 strands; both closures must be knots.
BraidWord connect_sum(const BraidWord& w1, const BraidWord& w2);

// Markov moves.  rotate moves the first k letters to the end (a conjugate);
// conjugate wraps w as g w g^-1; stabilize adds a strand and the letter
// +-sigma_n.
BraidWord rotate(const BraidWord& w, std::size_t k);
BraidWord conjugate(const BraidWord& w, int letter);
BraidWord stabilize(const BraidWord& w, bool positive);

struct KnotEntry {
  std::string name;
  BraidWord word;
  std::optional<double> reference_volume;
  std::optional<long long> reference_determinant;
  std::string source;
  std::vector<std::string> summands;  // non-empty for a declared connected sum
};

// JSON array of {"name", "strands", "word", "reference_volume",
// "reference_determinant", "source"} with an optional "summands" list naming
// other entries of the table.
std::vector<KnotEntry> parse_knot_table(std::string_view json_text, std::string_view origin = "<memory>");
std::vector<KnotEntry> load_knot_table(const std::string& path);

// $QJK_KNOT_TABLE if set, otherwise the table installed with the library.
std::string default_knot_table_path();

const KnotEntry& find_knot(const std::vector<KnotEntry>& table, std::string_view name);

}  // namespace qjk
