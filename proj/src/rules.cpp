#include "problife/rules.hpp"

#include <charconv>
#include <cmath>
#include <optional>

namespace problife {

namespace {

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

class RulesetParser {
 public:
  explicit RulesetParser(std::string_view text) : text_(text) {}

  Ruleset parse() {
    std::optional<RuleTable> birth;
    std::optional<RuleTable> survive;

    for (int part = 0; part < 2; ++part) {
      skip_space();
      if (part == 1) {
        if (!consume('/')) fail("expected '/' between B and S parts");
        skip_space();
      }
      const std::size_t at = pos_;
      const char tag = peek();
      if (tag != 'B' && tag != 'S') {
        fail(part == 0 ? "expected 'B' or 'S'" : "missing B or S part");
      }
      ++pos_;
      auto& slot = tag == 'B' ? birth : survive;
      if (slot) fail_at(at, std::string("duplicate '") + tag + "' part");
      slot = parse_entries();
    }
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing characters");
    return Ruleset(*survive, *birth);
  }

 private:
  RuleTable parse_entries() {
    RuleTable table{};
    std::array<bool, kMaxNeighbors + 1> seen{};
    bool first = true;
    bool comma_required = false;

    for (;;) {
      skip_space();
      if (!first) {
        if (consume(',')) {
          skip_space();
        } else if (comma_required || !is_digit(peek())) {
          break;
        }
      } else if (!is_digit(peek())) {
        break;
      }
      first = false;

      const std::size_t at = pos_;
      if (!is_digit(peek())) fail("expected neighbor count");
      const int count = peek() - '0';
      if (count > kMaxNeighbors) fail("neighbor count must be between 0 and 8");
      ++pos_;
      if (seen[count]) fail_at(at, "duplicate neighbor count " + std::to_string(count));
      seen[count] = true;

      skip_space();
      double p = 1.0;
      comma_required = false;
      if (consume(':')) {
        skip_space();
        p = parse_probability();
        comma_required = true;
      }
      table[count] = p;
    }
    return table;
  }

  double parse_probability() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      const std::size_t from = end;
      while (end < text_.size() && is_digit(text_[end])) ++end;
      return end - from;
    };
    std::size_t mantissa = digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      mantissa += digits();
    }
    if (mantissa == 0) fail("malformed number");
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      ++end;
      if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) ++end;
      if (digits() == 0) fail_at(start, "malformed number");
    }

    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail_at(start, "malformed number");
    if (!valid_probability(value)) fail_at(start, "probability outside [0,1]");
    pos_ = end;
    return value;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw ParseError("ruleset: position " + std::to_string(at) + ": " + msg, at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void append_part(std::string& out, char tag, const RuleTable& table) {
  out += tag;
  bool first = true;
  for (int n = 0; n <= kMaxNeighbors; ++n) {
    if (table[n] == 0.0) continue;
    if (!first) out += ',';
    first = false;
    out += static_cast<char>('0' + n);
    if (table[n] != 1.0) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, table[n]);
      out += ':';
      out.append(buf, res.ptr);
    }
  }
}

}  // namespace

Ruleset::Ruleset(const RuleTable& survive, const RuleTable& birth)
    : survive_(survive), birth_(birth) {
  for (int n = 0; n <= kMaxNeighbors; ++n) {
    if (!valid_probability(survive_[n]) || !valid_probability(birth_[n])) {
      throw std::invalid_argument("ruleset probabilities must lie in [0,1]");
    }
  }
}

Ruleset parse_ruleset(std::string_view text) { return RulesetParser(text).parse(); }

std::string format_ruleset(const Ruleset& rules) {
  std::string out;
  append_part(out, 'B', rules.birth());
  out += '/';
  append_part(out, 'S', rules.survive());
  return out;
}

Ruleset classic_life() {
  RuleTable survive{}, birth{};
  survive[2] = survive[3] = 1.0;
  birth[3] = 1.0;
  return Ruleset(survive, birth);
}

Ruleset standard_ruleset() {
  RuleTable survive{}, birth{};
  survive[2] = survive[3] = 0.9;
  birth[3] = 0.8;
  return Ruleset(survive, birth);
}

bool is_strobing(const Ruleset& rules) { return rules.birth()[0] > 0.0; }

}  // namespace problife
