#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "qsym/ncpoly.hpp"

namespace qsym {

// Textual polynomial form.
//
//   poly    := ['-'] term (('+'|'-') term)*
//   term    := coeff* factor*            (juxtaposition = product)
//   factor  := NAME ['*'] [indices] ['@' INT]
//   indices := '[' [INT ';'] INT ',' INT ']'
//   coeff   := INT | INT '/' INT | coeff 'i' | '(' re '+'|'-' im 'i' ')' | 'i'
//
// "1" is the empty word. A factor without indices means row = col = 0, no
// block ("z" for 1x1 families). "@k" places a letter in tensor slot k (omitted
// for slot 0). The family name "i" is reserved for the imaginary unit.

inline std::string generator_to_string(const Generator& g) {
  std::string s = g.family;
  if (g.star) s += '*';
  if (g.block != kNoBlock) {
    s += '[' + std::to_string(g.block) + ';' + std::to_string(g.row) + ',' +
         std::to_string(g.col) + ']';
  } else if (g.row != 0 || g.col != 0) {
    s += '[' + std::to_string(g.row) + ',' + std::to_string(g.col) + ']';
  }
  if (g.slot != 0) s += '@' + std::to_string(g.slot);
  return s;
}

namespace detail {

inline bool print_negative(const Scalar& c) {
  if (c.im == 0) return c.re < 0;
  if (c.re == 0) return c.im < 0;
  return false;  // full complex coefficients print parenthesized, never split
}

}  // namespace detail

/// Canonical text: terms in descending degree-lex order, letters space
/// separated, unit coefficients omitted. Deterministic; parse(print(p)) == p.
inline std::string poly_to_string(const NcPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& t = p.terms();
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    const Word& w = it->first;
    Scalar c = it->second;
    bool neg = detail::print_negative(c);
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = c.is_one();
    if (!unit || w.empty()) out += scalar_to_string(c);
    for (size_t k = 0; k < w.size(); ++k) {
      if (k > 0 || !unit || w.empty()) out += ' ';
      out += generator_to_string(w[k]);
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& src) : s_(src) {}

  NcPoly parse_poly() {
    NcPoly total;
    skip_ws();
    bool neg = eat_sign();
    total += parse_term(neg);
    skip_ws();
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '+' || c == '-') {
        ++pos_;
        skip_ws();
        total += parse_term(c == '-');
        skip_ws();
      } else {
        fail("expected '+' or '-'");
      }
    }
    return total;
  }

  Generator parse_single_generator() {
    skip_ws();
    Generator g = parse_factor();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input after generator");
    return g;
  }

 private:
  NcPoly parse_term(bool negate) {
    Scalar coeff = negate ? Scalar(-1) : Scalar::one();
    Word word;
    bool saw_anything = false;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_];
      if (c == '+' || c == '-') break;
      saw_anything = true;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number_coeff();
      } else if (c == '(') {
        coeff *= parse_complex_coeff();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t mark = pos_;
        std::string name = parse_name();
        if (name == "i" && !at_factor_suffix()) {
          coeff *= Scalar::unit_i();
        } else {
          pos_ = mark;
          word.push_back(parse_factor());
        }
      } else {
        fail("unexpected character in term");
      }
    }
    if (!saw_anything) fail("empty term");
    NcPoly r;
    r.add_term(word, coeff);
    return r;
  }

  // After the reserved name "i", a '[', '*' or '@' would mean it was meant as
  // a generator after all; reject that instead of misparsing.
  bool at_factor_suffix() {
    if (pos_ < s_.size() && (s_[pos_] == '[' || s_[pos_] == '*' || s_[pos_] == '@'))
      fail("'i' is reserved for the imaginary unit");
    return false;
  }

  Scalar parse_number_coeff() {
    std::string text = parse_uint_text();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      text += '/' + parse_uint_text();
    }
    Scalar v(rational_from_string(text));
    if (pos_ < s_.size() && s_[pos_] == 'i' && !next_is_name_char(pos_ + 1)) {
      ++pos_;
      v *= Scalar::unit_i();
    }
    return v;
  }

  Scalar parse_complex_coeff() {
    size_t depth = 0, start = pos_;
    do {
      if (pos_ >= s_.size()) fail("unterminated '('");
      if (s_[pos_] == '(') ++depth;
      if (s_[pos_] == ')') --depth;
      ++pos_;
    } while (depth > 0);
    return scalar_from_string(s_.substr(start, pos_ - start));
  }

  Generator parse_factor() {
    Generator g;
    g.family = parse_name();
    if (g.family == "i") fail("'i' is reserved for the imaginary unit");
    if (pos_ < s_.size() && s_[pos_] == '*') {
      g.star = true;
      ++pos_;
    }
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      int first = parse_int();
      if (pos_ < s_.size() && s_[pos_] == ';') {
        ++pos_;
        g.block = first;
        g.row = parse_int();
        expect(',');
        g.col = parse_int();
      } else {
        g.row = first;
        expect(',');
        g.col = parse_int();
      }
      expect(']');
    }
    if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      g.slot = parse_int();
    }
    return g;
  }

  std::string parse_name() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected name");
    return s_.substr(start, pos_ - start);
  }

  std::string parse_uint_text() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected number");
    return s_.substr(start, pos_ - start);
  }

  int parse_int() {
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    int v = std::stoi(parse_uint_text());
    return neg ? -v : v;
  }

  bool next_is_name_char(size_t at) {
    return at < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[at])) || s_[at] == '_');
  }

  bool eat_sign() {
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (pos_ < s_.size() && s_[pos_] == '+') ++pos_;
    return false;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) +
                                ": " + why + " in \"" + s_ + "\"");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline NcPoly poly_from_string(const std::string& s) {
  if (s == "0") return NcPoly::zero();
  return detail::PolyParser(s).parse_poly();
}

inline Generator generator_from_string(const std::string& s) {
  return detail::PolyParser(s).parse_single_generator();
}

}  // namespace qsym
