#include "lexer.hpp"

#include <cctype>

namespace thy::detail {

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Eq: return "'='";
    case Tok::Gt: return "'>'";
    case Tok::Lt: return "'<'";
    case Tok::Ge: return "'>='";
    case Tok::Le: return "'<='";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }
bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

struct Multibyte {
  std::string_view bytes;
  Tok kind;
};

// Unicode spellings accepted as alternatives to the ASCII operators.
constexpr Multibyte kMultibyte[] = {
    {"\xC2\xB7", Tok::Star},         // middle dot
    {"\xC2\xAC", Tok::Bang},         // not sign
    {"\xE2\x88\xA7", Tok::Amp},      // logical and
    {"\xE2\x88\xA8", Tok::Pipe},     // logical or
    {"\xE2\x86\x92", Tok::Arrow},    // rightwards arrow
    {"\xE2\x86\x94", Tok::DArrow},   // left right arrow
};

}  // namespace

std::vector<Token> lex(std::string_view s, std::vector<Diagnostic>& diagnostics) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, line_start = 0;
  auto here = [&](std::size_t at) { return SourceLocation{line, at - line_start + 1}; };
  auto push = [&](Tok k, std::size_t start, std::size_t len, std::string text = {}) {
    out.push_back({k, std::move(text), here(start)});
    i = start + len;
  };

  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == '\n') {
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
      push(Tok::Ident, i, j - i, std::string(s.substr(i, j - i)));
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < s.size() && digit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '.' && digit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && digit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && digit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && digit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      push(Tok::Number, i, j - i, std::string(s.substr(i, j - i)));
      continue;
    }
    if (c == '"') {
      const std::size_t start = i;
      std::string text;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < s.size() && s[j] != '\n') {
        if (s[j] == '"') {
          closed = true;
          ++j;
          break;
        }
        if (s[j] == '\\' && j + 1 < s.size()) {
          const char e = s[j + 1];
          text += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          j += 2;
          continue;
        }
        text += s[j++];
      }
      if (!closed) {
        diagnostics.push_back({Severity::Error, "unterminated string", here(start)});
        i = j;
        continue;
      }
      push(Tok::String, start, j - start, std::move(text));
      continue;
    }

    const std::string_view rest = s.substr(i);
    bool matched = false;
    for (const auto& m : kMultibyte) {
      if (rest.substr(0, m.bytes.size()) == m.bytes) {
        push(m.kind, i, m.bytes.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (rest.substr(0, 3) == "<->") { push(Tok::DArrow, i, 3); continue; }
    if (rest.substr(0, 2) == "->") { push(Tok::Arrow, i, 2); continue; }
    if (rest.substr(0, 2) == ">=") { push(Tok::Ge, i, 2); continue; }
    if (rest.substr(0, 2) == "<=") { push(Tok::Le, i, 2); continue; }

    Tok k = Tok::End;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case ':': k = Tok::Colon; break;
      case '=': k = Tok::Eq; break;
      case '>': k = Tok::Gt; break;
      case '<': k = Tok::Lt; break;
      case '!': k = Tok::Bang; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Pipe; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      default: break;
    }
    if (k != Tok::End) {
      push(k, i, 1);
      continue;
    }
    std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                        : "byte 0x" + std::string(1, "0123456789abcdef"[c >> 4]) +
                                              "0123456789abcdef"[c & 15];
    diagnostics.push_back({Severity::Error, "unexpected character " + shown, here(i)});
    ++i;
  }
  out.push_back({Tok::End, {}, here(i)});
  return out;
}

}  // namespace thy::detail
