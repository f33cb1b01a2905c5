#pragma once

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "genergy/error.hpp"
#include "genergy/spectrum.hpp"

namespace genergy {

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := '-' unary | '+' unary | atom
// atom   := number | 'phi' | 'pi' | 'sqrt' '(' expr ')' | '(' expr ')'
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  double parse() {
    double v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(pos_, "bad value '" + std::string(text_) + "': " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    while (true) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (eat_word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      double v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    if (eat_word("phi")) return kPhi;
    if (eat_word("pi")) return std::numbers::pi;
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    std::string tmp(begin, text_.size() - pos_);
    double v = std::strtod(tmp.c_str(), &end);
    if (end == tmp.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - tmp.c_str());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto at = text.find(sep, start);
    out.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

}  // namespace detail

/// Evaluates a scalar such as "-3", "phi-1", "-sqrt(2)" or "(1+sqrt(5))/2".
inline double parse_value(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Comma-separated values; an empty string yields an empty list.
inline std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  for (auto item : detail::split(text, ',')) out.push_back(parse_value(item));
  return out;
}

/// Comma-separated "value[:multiplicity]" items, e.g. "3,sqrt(2):6,-sqrt(2):6,-3".
inline std::vector<double> parse_multiset(std::string_view text) {
  std::vector<double> out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  for (auto item : detail::split(text, ',')) {
    auto colon = item.rfind(':');
    int mult = 1;
    if (colon != std::string_view::npos) {
      std::string count(item.substr(colon + 1));
      std::size_t used = 0;
      try {
        mult = std::stoi(count, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != count.size() || mult < 1)
        throw FormatError(colon + 1, "bad multiplicity in '" + std::string(item) + "'");
      item = item.substr(0, colon);
    }
    out.insert(out.end(), static_cast<std::size_t>(mult), parse_value(item));
  }
  return out;
}

}  // namespace genergy
