#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ipsx/error.hpp"

namespace ipsx::frontend {

struct Token {
  enum class Kind { Ident, Keyword, Int, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

struct LexConfig {
  std::set<std::string, std::less<>> keywords;
  std::vector<std::string> puncts;  // longest first
  std::string line_comment;         // "//" or "--"
};

std::vector<Token> tokenize(std::string_view text, const LexConfig& config);

/// Cursor with the usual expect/accept helpers; errors are ParseError.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool is(std::string_view text) const;
  bool is_ident() const { return peek().kind == Token::Kind::Ident; }
  bool accept(std::string_view text);
  void expect(std::string_view text);
  std::string expect_ident();

  [[noreturn]] void fail(const std::string& expected) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Quotes and escapes a string literal the way all three lexers read it back.
std::string quote(std::string_view s);

}  // namespace ipsx::frontend
