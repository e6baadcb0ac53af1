#pragma once

// Minimal streaming JSON writer with a fixed number format (%.17g, non-finite
// as null) so that rendered reports are reproducible byte for byte.  nlohmann
// json prints the shortest round-trip form instead, hence this writer.

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace qjk::detail {

inline std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class JsonWriter {
 public:
  JsonWriter& begin_object(bool inline_items = false) { return open('{', inline_items); }
  JsonWriter& end_object() { return close('}'); }
  // Inline containers stay on one line (short tuples and records).
  JsonWriter& begin_array(bool inline_items = false) { return open('[', inline_items); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    write_string(k);
    out_ += ": ";
    pending_key_ = true;
    return *this;
  }

  JsonWriter& value(double x) { return raw(format_number(x)); }
  JsonWriter& value(int x) { return raw(std::to_string(x)); }
  JsonWriter& value(long long x) { return raw(std::to_string(x)); }
  JsonWriter& value(std::size_t x) { return raw(std::to_string(x)); }
  JsonWriter& value(bool x) { return raw(x ? "true" : "false"); }
  JsonWriter& value(std::string_view x) {
    separate();
    write_string(x);
    return *this;
  }
  JsonWriter& value(const char* x) { return value(std::string_view(x)); }
  JsonWriter& null() { return raw("null"); }

  template <class T>
  JsonWriter& field(std::string_view k, const T& x) {
    key(k);
    return value(x);
  }

  std::string str() const { return out_ + "\n"; }

 private:
  struct Level {
    bool first = true;
    bool inline_items = false;
  };

  JsonWriter& open(char c, bool inline_items) {
    separate();
    out_ += c;
    levels_.push_back({true, inline_items || (!levels_.empty() && levels_.back().inline_items)});
    return *this;
  }

  JsonWriter& close(char c) {
    const Level level = levels_.back();
    levels_.pop_back();
    if (!level.first && !level.inline_items) newline();
    out_ += c;
    return *this;
  }

  JsonWriter& raw(std::string_view text) {
    separate();
    out_ += text;
    return *this;
  }

  void separate() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (levels_.empty()) return;
    Level& level = levels_.back();
    if (!level.first) out_ += level.inline_items ? ", " : ",";
    if (!level.inline_items) newline();
    level.first = false;
  }

  void newline() {
    out_ += '\n';
    out_.append(2 * levels_.size(), ' ');
  }

  void write_string(std::string_view s) {
    out_ += '"';
    for (const char ch : s) {
      const auto c = static_cast<unsigned char>(ch);
      switch (ch) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<Level> levels_;
  bool pending_key_ = false;
};

// CSV cell for a string: quoted when it contains a separator or quote.
inline std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace qjk::detail
