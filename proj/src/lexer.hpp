#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/textio.hpp"

namespace gp2::detail {

enum class Tok : std::uint8_t {
  kIdent, kInt, kString,
  kLParen, kRParen, kLBracket, kRBracket, kLBrace, kRBrace,
  kComma, kSemi, kColon, kBar, kHash, kDot, kBang,
  kPlus, kMinus, kStar, kSlash,
  kEq, kNe, kLt, kLe, kGt, kGe, kArrow,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  // Magnitude of an integer literal; sign is a separate token.
  std::uint64_t number = 0;
  bool overflow = false;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text);
std::string_view token_name(Tok t);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_word(std::string_view w) const { return at(Tok::kIdent) && peek().text == w; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok t) {
    if (!at(t)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }
  const Token& expect(Tok t, std::string_view what);
  void expect_word(std::string_view w);
  [[noreturn]] void fail(const std::string& msg) const;
  std::size_t position() const { return pos_; }
  void rewind(std::size_t p) { pos_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace gp2::detail
