#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thy/dsl.hpp"

namespace thy::detail {

enum class Tok {
  Ident, Number, String,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semi, Colon,
  Eq, Gt, Lt, Ge, Le,
  Bang, Amp, Pipe, Arrow, DArrow,
  Plus, Minus, Star, Slash,
  End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier name, number spelling or decoded string
  SourceLocation loc;
};

const char* describe(Tok kind);

/// Always ends with a Tok::End token. Bad bytes are reported and skipped.
std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diagnostics);

}  // namespace thy::detail
