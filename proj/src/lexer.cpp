#include "lexer.hpp"

#include <cctype>

namespace gp2 {

SourceError::SourceError(Kind kind, int line, int column, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error at " + std::to_string(line) +
                         ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

std::string_view error_kind_name(SourceError::Kind k) {
  switch (k) {
    case SourceError::Kind::kLex: return "lexical";
    case SourceError::Kind::kSyntax: return "syntax";
    case SourceError::Kind::kSemantic: return "semantic";
  }
  return "syntax";
}

}  // namespace gp2

namespace gp2::detail {

std::string_view token_name(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kInt: return "integer";
    case Tok::kString: return "string";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kComma: return "','";
    case Tok::kSemi: return "';'";
    case Tok::kColon: return "':'";
    case Tok::kBar: return "'|'";
    case Tok::kHash: return "'#'";
    case Tok::kDot: return "'.'";
    case Tok::kBang: return "'!'";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kStar: return "'*'";
    case Tok::kSlash: return "'/'";
    case Tok::kEq: return "'='";
    case Tok::kNe: return "'!='";
    case Tok::kLt: return "'<'";
    case Tok::kLe: return "'<='";
    case Tok::kGt: return "'>'";
    case Tok::kGe: return "'>='";
    case Tok::kArrow: return "'=>'";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto lex_error = [&](const std::string& msg) {
    throw SourceError(SourceError::Kind::kLex, line, col, msg);
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::kEnd, {}, 0, false, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        std::uint64_t d = static_cast<std::uint64_t>(src[j] - '0');
        if (v > (UINT64_MAX - d) / 10) t.overflow = true;
        v = v * 10 + d;
        ++j;
      }
      // "1a" style identifiers are not integers.
      if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
        t.kind = Tok::kIdent;
      } else {
        t.kind = Tok::kInt;
        t.number = v;
      }
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"') {
        unsigned char ch = static_cast<unsigned char>(src[j]);
        if (ch < 32 || ch > 126) {
          advance(j - i);
          lex_error("strings hold printable ASCII only");
        }
        ++j;
      }
      if (j >= src.size()) lex_error("unterminated string");
      t.kind = Tok::kString;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
    } else {
      char d = i + 1 < src.size() ? src[i + 1] : '\0';
      std::size_t len = 1;
      switch (c) {
        case '(': t.kind = Tok::kLParen; break;
        case ')': t.kind = Tok::kRParen; break;
        case '[': t.kind = Tok::kLBracket; break;
        case ']': t.kind = Tok::kRBracket; break;
        case '{': t.kind = Tok::kLBrace; break;
        case '}': t.kind = Tok::kRBrace; break;
        case ',': t.kind = Tok::kComma; break;
        case ';': t.kind = Tok::kSemi; break;
        case ':': t.kind = Tok::kColon; break;
        case '|': t.kind = Tok::kBar; break;
        case '#': t.kind = Tok::kHash; break;
        case '.': t.kind = Tok::kDot; break;
        case '+': t.kind = Tok::kPlus; break;
        case '-': t.kind = Tok::kMinus; break;
        case '*': t.kind = Tok::kStar; break;
        case '/': t.kind = Tok::kSlash; break;
        case '!':
          if (d == '=') {
            t.kind = Tok::kNe;
            len = 2;
          } else {
            t.kind = Tok::kBang;
          }
          break;
        case '=':
          if (d == '>') {
            t.kind = Tok::kArrow;
            len = 2;
          } else {
            t.kind = Tok::kEq;
          }
          break;
        case '<':
          if (d == '=') {
            t.kind = Tok::kLe;
            len = 2;
          } else {
            t.kind = Tok::kLt;
          }
          break;
        case '>':
          if (d == '=') {
            t.kind = Tok::kGe;
            len = 2;
          } else {
            t.kind = Tok::kGt;
          }
          break;
        default:
          lex_error(std::string("unexpected character '") + c + "'");
      }
      advance(len);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::kEnd, {}, 0, false, line, col});
  return out;
}

const Token& TokenStream::expect(Tok t, std::string_view what) {
  if (!at(t)) {
    fail("expected " + std::string(what) + ", found " +
         (peek().text.empty() ? std::string(token_name(peek().kind)) : "'" + peek().text + "'"));
  }
  return next();
}

void TokenStream::expect_word(std::string_view w) {
  if (!at_word(w)) fail("expected '" + std::string(w) + "'");
  next();
}

void TokenStream::fail(const std::string& msg) const {
  throw SourceError(SourceError::Kind::kSyntax, peek().line, peek().column, msg);
}

}  // namespace gp2::detail
