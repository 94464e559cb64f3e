#include "ipsx/frontend/lexer.hpp"

#include <cctype>
#include <limits>

namespace ipsx::frontend {

std::vector<Token> tokenize(std::string_view text, const LexConfig& config) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (!config.line_comment.empty() && text.substr(i, config.line_comment.size()) == config.line_comment) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) advance(1);
      tok.text = std::string(text.substr(start, i - start));
      tok.kind = config.keywords.contains(tok.text) ? Token::Kind::Keyword : Token::Kind::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
          throw ParseError(tok.line, tok.col, "an integer literal that fits in 64 bits");
        }
        advance(1);
      }
      tok.kind = Token::Kind::Int;
      tok.value = static_cast<std::int64_t>(v);
      tok.text = std::string(text.substr(start, i - start));
    } else if (c == '"') {
      advance(1);
      std::string s;
      while (true) {
        if (i >= text.size() || text[i] == '\n') throw ParseError(tok.line, tok.col, "a closing '\"'");
        char d = text[i];
        if (d == '"') {
          advance(1);
          break;
        }
        if (d == '\\' && i + 1 < text.size()) {
          char e = text[i + 1];
          s += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          advance(2);
          continue;
        }
        s += d;
        advance(1);
      }
      tok.kind = Token::Kind::String;
      tok.text = std::move(s);
    } else {
      bool matched = false;
      for (const auto& p : config.puncts) {
        if (text.substr(i, p.size()) == p) {
          tok.kind = Token::Kind::Punct;
          tok.text = p;
          advance(p.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(tok.line, tok.col, std::string("a token, got '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t p = pos_ + ahead;
  return p < toks_.size() ? toks_[p] : toks_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::is(std::string_view text) const {
  const Token& t = peek();
  return (t.kind == Token::Kind::Punct || t.kind == Token::Kind::Keyword) && t.text == text;
}

bool TokenStream::accept(std::string_view text) {
  if (!is(text)) return false;
  next();
  return true;
}

void TokenStream::expect(std::string_view text) {
  if (!accept(text)) fail("'" + std::string(text) + "'");
}

std::string TokenStream::expect_ident() {
  if (!is_ident()) fail("an identifier");
  return next().text;
}

void TokenStream::fail(const std::string& expected) const {
  const Token& t = peek();
  std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(t.line, t.col, expected + ", got " + got);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out += c;
    }
  }
  return out + "\"";
}

}  // namespace ipsx::frontend
