#include "lexer.hpp"

#include <cctype>

namespace educor {

std::string ParseDiagnostic::to_string() const {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!token.empty()) out += " (at '" + token + "')";
  return out;
}

}  // namespace educor

namespace educor::detail {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  Lexer(std::string_view in, LexOptions opts) : in_(in), opts_(opts) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= in_.size()) break;
      out.push_back(next(out));
    }
    Token end{Tok::End, "", last_line_, last_col_, ""};
    if (in_.empty()) end.line = end.column = 1;
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }

  void advance() {
    char c = in_[pos_++];
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      last_line_ = line_;
      last_col_ = col_;
    }
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // columns count code points, not bytes
      ++col_;
    }
  }

  void skip_space_and_comments() {
    while (pos_ < in_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < in_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void error_here(const std::string& message, std::size_t line, std::size_t col,
                               std::string raw) {
    throw ParseError(ErrorKind::Parse, ParseDiagnostic{line, col, message, std::move(raw)});
  }

  Token make(Tok kind, std::string text, std::size_t line, std::size_t col, std::size_t start) {
    return Token{kind, std::move(text), line, col, std::string(in_.substr(start, pos_ - start))};
  }

  Token next(const std::vector<Token>& so_far) {
    const std::size_t line = line_, col = col_, start = pos_;
    const char c = peek();

    auto single = [&](Tok kind) {
      advance();
      return make(kind, std::string(1, c), line, col, start);
    };

    switch (c) {
      case '.':
        if (is_digit(peek(1))) return number(line, col, start);
        return single(Tok::Dot);
      case ';': return single(Tok::Semicolon);
      case ',': return single(Tok::Comma);
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '*': return single(Tok::Star);
      case '"':
      case '\'':
        return string_literal(line, col, start);
      case '^':
        if (peek(1) == '^') {
          advance();
          advance();
          return make(Tok::Carets, "^^", line, col, start);
        }
        break;
      case '@': {
        advance();
        std::string word;
        while (pos_ < in_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
          word += peek();
          advance();
        }
        if (word.empty()) error_here("expected a name after '@'", line, col, "@");
        bool after_string = !so_far.empty() && so_far.back().kind == Tok::String &&
                            so_far.back().line == line &&
                            start == string_end_;
        return make(after_string ? Tok::LangTag : Tok::AtWord, word, line, col, start);
      }
      case '<':
        if (looks_like_iri()) return iri_ref(line, col, start);
        if (opts_.allow_operators) {
          advance();
          if (peek() == '=') {
            advance();
            return make(Tok::Le, "<=", line, col, start);
          }
          return make(Tok::Lt, "<", line, col, start);
        }
        return iri_ref(line, col, start);
      case '>':
        if (opts_.allow_operators) {
          advance();
          if (peek() == '=') {
            advance();
            return make(Tok::Ge, ">=", line, col, start);
          }
          return make(Tok::Gt, ">", line, col, start);
        }
        break;
      case '=':
        if (opts_.allow_operators) return single(Tok::Eq);
        break;
      case '!':
        if (opts_.allow_operators && peek(1) == '=') {
          advance();
          advance();
          return make(Tok::Ne, "!=", line, col, start);
        }
        break;
      case '&':
        if (opts_.allow_operators && peek(1) == '&') {
          advance();
          advance();
          return make(Tok::And, "&&", line, col, start);
        }
        break;
      case '?':
      case '$':
        if (opts_.allow_variables) {
          advance();
          std::string name;
          while (pos_ < in_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            name += peek();
            advance();
          }
          if (name.empty()) error_here("expected a variable name", line, col, std::string(1, c));
          return make(Tok::Variable, name, line, col, start);
        }
        break;
      case '+':
      case '-':
        if (is_digit(peek(1)) || (peek(1) == '.' && is_digit(peek(2)))) return number(line, col, start);
        break;
      case '_':
        if (peek(1) == ':') {
          advance();
          advance();
          std::string label;
          while (pos_ < in_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                                       peek() == '-')) {
            label += peek();
            advance();
          }
          if (label.empty()) error_here("blank node without label", line, col, "_:");
          return make(Tok::Blank, "_:" + label, line, col, start);
        }
        break;
      default:
        break;
    }
    if (is_digit(c)) return number(line, col, start);
    if (is_name_start(c) || c == ':') return name(line, col, start);
    error_here(std::string("unexpected character '") + c + "'", line, col, std::string(1, c));
  }

  bool looks_like_iri() const {
    for (std::size_t i = pos_ + 1; i < in_.size(); ++i) {
      char ch = in_[i];
      if (ch == '>') return true;
      if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '<' || ch == '"') return false;
    }
    return false;
  }

  Token iri_ref(std::size_t line, std::size_t col, std::size_t start) {
    advance();  // <
    std::string text;
    while (pos_ < in_.size() && peek() != '>') {
      char ch = peek();
      if (ch == '\n' || ch == ' ' || ch == '\t' || ch == '\r') {
        error_here("unterminated IRI", line, col, std::string(in_.substr(start, pos_ - start)));
      }
      text += ch;
      advance();
    }
    if (pos_ >= in_.size()) error_here("unterminated IRI", line, col, std::string(in_.substr(start)));
    advance();  // >
    return make(Tok::IriRef, text, line, col, start);
  }

  Token number(std::size_t line, std::size_t col, std::size_t start) {
    std::string text;
    if (peek() == '+' || peek() == '-') {
      text += peek();
      advance();
    }
    bool has_dot = false, has_exp = false;
    while (is_digit(peek())) {
      text += peek();
      advance();
    }
    if (peek() == '.' && is_digit(peek(1))) {
      has_dot = true;
      text += '.';
      advance();
      while (is_digit(peek())) {
        text += peek();
        advance();
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      has_exp = true;
      text += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        text += peek();
        advance();
      }
      while (is_digit(peek())) {
        text += peek();
        advance();
      }
    }
    Tok kind = has_exp ? Tok::Double : has_dot ? Tok::Decimal : Tok::Integer;
    return make(kind, text, line, col, start);
  }

  Token name(std::size_t line, std::size_t col, std::size_t start) {
    std::string prefix;
    while (pos_ < in_.size() && (is_name_char(peek()) || peek() == '.')) {
      prefix += peek();
      advance();
    }
    if (peek() != ':') {
      // bare word; a trailing '.' belongs to the statement terminator
      while (!prefix.empty() && prefix.back() == '.') {
        prefix.pop_back();
        retreat_one();
      }
      return make(Tok::Word, prefix, line, col, start);
    }
    advance();  // ':'
    std::string local;
    while (pos_ < in_.size() && (is_name_char(peek()) || peek() == '.')) {
      local += peek();
      advance();
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      retreat_one();
    }
    return make(Tok::PName, prefix + ":" + local, line, col, start);
  }

  void retreat_one() {
    // Only ever called to give back an ASCII '.' on the current line.
    --pos_;
    --col_;
  }

  Token string_literal(std::size_t line, std::size_t col, std::size_t start) {
    const char quote = peek();
    if (peek(1) == quote && peek(2) == quote) {
      error_here("long (multi-line) string literals are not supported", line, col,
                 std::string(3, quote));
    }
    advance();
    std::string text;
    for (;;) {
      if (pos_ >= in_.size() || peek() == '\n' || peek() == '\r') {
        error_here("unterminated string literal", line, col, std::string(in_.substr(start, pos_ - start)));
      }
      char ch = peek();
      if (ch == quote) {
        advance();
        break;
      }
      if (ch == '\\') {
        const std::size_t esc_line = line_, esc_col = col_;
        advance();
        if (pos_ >= in_.size()) error_here("unterminated escape", esc_line, esc_col, "\\");
        char e = peek();
        advance();
        switch (e) {
          case 't': text += '\t'; break;
          case 'n': text += '\n'; break;
          case 'r': text += '\r'; break;
          case 'b': text += '\b'; break;
          case 'f': text += '\f'; break;
          case '"': text += '"'; break;
          case '\'': text += '\''; break;
          case '\\': text += '\\'; break;
          case 'u':
          case 'U': {
            int digits = e == 'u' ? 4 : 8;
            unsigned long cp = 0;
            for (int i = 0; i < digits; ++i) {
              char h = peek();
              if (!std::isxdigit(static_cast<unsigned char>(h))) {
                error_here("bad unicode escape", esc_line, esc_col, std::string("\\") + e);
              }
              cp = cp * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(h))
                                                            ? h - '0'
                                                            : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
              advance();
            }
            if (cp > 0x10FFFF) error_here("unicode escape out of range", esc_line, esc_col, std::string("\\") + e);
            append_utf8(text, cp);
            break;
          }
          default:
            error_here(std::string("unknown escape '\\") + e + "'", esc_line, esc_col, std::string("\\") + e);
        }
        continue;
      }
      text += ch;
      advance();
    }
    string_end_ = pos_;
    return make(Tok::String, text, line, col, start);
  }

  std::string_view in_;
  LexOptions opts_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::size_t last_line_ = 1;
  std::size_t last_col_ = 1;
  std::size_t string_end_ = static_cast<std::size_t>(-1);
};

}  // namespace

std::vector<Token> tokenize(std::string_view input, LexOptions options) {
  return Lexer(input, options).run();
}

std::string describe(const Token& token) {
  if (token.kind == Tok::End) return "end of input";
  return "'" + token.raw + "'";
}

void fail_at(const Token& token, const std::string& message) {
  throw ParseError(ErrorKind::Parse, ParseDiagnostic{token.line, token.column, message,
                                                     token.kind == Tok::End ? "" : token.raw});
}

}  // namespace educor::detail
