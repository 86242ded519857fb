#pragma once

// Tokenizer shared by the Turtle and query parsers. Internal header.

#include <string>
#include <string_view>
#include <vector>

#include "educor/diagnostic.hpp"

namespace educor::detail {

enum class Tok {
  IriRef,     // <...>, text is the IRI without brackets
  PName,      // prefix:local, text is the full compact name
  Blank,      // _:label, text includes the _: prefix
  Variable,   // ?x or $x, text is the name without sigil
  String,     // quoted literal, text is the unescaped value
  LangTag,    // @en directly after a string, text without @
  AtWord,     // @prefix / @base, text without @
  Carets,     // ^^
  Integer,
  Decimal,
  Double,
  Word,       // bare identifier: a, true, PREFIX, SELECT, ...
  Dot, Semicolon, Comma, LBrace, RBrace, LParen, RParen, Star,
  Lt, Le, Eq, Ne, Ge, Gt, And,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  std::string raw;  // source spelling, for diagnostics
};

struct LexOptions {
  bool allow_variables = false;
  bool allow_operators = false;
};

/// Throws ParseError on the first lexical error.
std::vector<Token> tokenize(std::string_view input, LexOptions options);

/// Diagnostic positioned at `token`; End tokens carry the last-character position.
[[noreturn]] void fail_at(const Token& token, const std::string& message);

std::string describe(const Token& token);

}  // namespace educor::detail
