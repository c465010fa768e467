// Copyright 2026 the ta authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "ta/base.hpp"

namespace ta {

enum class Tok {
  Ident, Number, String,
  LBrace, RBrace, LParen, RParen, LBracket, RBracket,
  Comma, Colon, Dot, Semi, Pipe, Star, Caret, Eq, Neq,
  Arrow, Leq, Implies,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "signature", "model", "presentation", "morphism", "subst", "forcing", "type",
      "query", "proof", "sorts", "ops", "labels", "carrier", "op", "label", "sort",
      "over", "condition", "atoms", "gamma", "order", "node", "not", "or", "and",
      "exists", "forall", "true", "false", "ctor", "finite", "premises", "from", "to"};
  return words;
}

inline std::vector<Token> lex(const std::string& text, const std::string& filename) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto span_here = [&]() {
    SourceSpan s;
    s.file = filename;
    s.line = line;
    s.column = col;
    s.end_line = line;
    s.end_column = col;
    return s;
  };
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceSpan span = span_here();
    auto push = [&](Tok kind, const std::string& s) {
      span.end_line = line;
      span.end_column = col + static_cast<int>(s.size());
      out.push_back(Token{kind, s, span});
      advance(s.size());
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '\''))
        ++j;
      push(Tok::Ident, text.substr(i, j - i));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Number, text.substr(i, j - i));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string value;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\\' && j + 1 < text.size()) ++j;
        value += text[j];
        ++j;
      }
      if (j >= text.size()) throw ParseError(span, "unterminated string literal");
      // includes both quotes in the consumed text
      span.end_line = line;
      span.end_column = col + static_cast<int>(j + 1 - i);
      out.push_back(Token{Tok::String, value, span});
      advance(j + 1 - i);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', '>')) { push(Tok::Arrow, "->"); continue; }
    if (two('<', '=')) { push(Tok::Leq, "<="); continue; }
    if (two('=', '>')) { push(Tok::Implies, "=>"); continue; }
    if (two('!', '=')) { push(Tok::Neq, "!="); continue; }
    switch (c) {
      case '{': push(Tok::LBrace, "{"); continue;
      case '}': push(Tok::RBrace, "}"); continue;
      case '(': push(Tok::LParen, "("); continue;
      case ')': push(Tok::RParen, ")"); continue;
      case '[': push(Tok::LBracket, "["); continue;
      case ']': push(Tok::RBracket, "]"); continue;
      case ',': push(Tok::Comma, ","); continue;
      case ':': push(Tok::Colon, ":"); continue;
      case '.': push(Tok::Dot, "."); continue;
      case ';': push(Tok::Semi, ";"); continue;
      case '|': push(Tok::Pipe, "|"); continue;
      case '*': push(Tok::Star, "*"); continue;
      case '^': push(Tok::Caret, "^"); continue;
      case '=': push(Tok::Eq, "="); continue;
      default: throw ParseError(span, std::string("unexpected character '") + c + "'");
    }
  }
  Token end;
  end.kind = Tok::End;
  end.span = span_here();
  out.push_back(end);
  return out;
}

}  // namespace ta
