#include <map>
#include <sstream>

#include "ipsx/frontend/lexer.hpp"
#include "ipsx/frontend/syntax.hpp"

namespace ipsx::frontend {

const char* minilua_schema_text() {
  return R"(schema MiniLua
root Chunk
type Chunk = Chunk [FuncDef]
type FuncDef = FuncDef Ident [Ident] Block
type Block = Block [Stmt]
type Stmt = Local [Ident] ?[Expr] | AssignStmt [Expr] [Expr] | CallStmt Expr | Do Block
          | If Expr Block ?Block | While Expr Block | NumFor Ident Expr Expr ?Expr Block
          | Return ?Expr | Break
type Expr = Nil | BoolLit Bool | IntLit Int | StrLit String | Var Ident | Index Expr Expr
          | Member Expr Ident | Call Ident [Expr] | TableLit [Expr] | Unary String Expr
          | Binary String Expr Expr
type Ident = Ident String
)";
}

namespace {

const std::map<std::string, int, std::less<>>& binary_prec() {
  static const std::map<std::string, int, std::less<>> p = {
      {"or", 1}, {"and", 2}, {"<", 3}, {"<=", 3}, {">", 3}, {">=", 3}, {"==", 3}, {"~=", 3},
      {"+", 5},  {"-", 5},   {"*", 6}, {"//", 6}, {"%", 6}};
  return p;
}

constexpr int kUnaryPrec = 7;
constexpr int kPostfixPrec = 8;
constexpr int kAtomPrec = 9;

const LexConfig& lex_config() {
  static const LexConfig cfg = [] {
    LexConfig c;
    c.line_comment = "--";
    c.puncts = {"==", "~=", "<=", ">=", "//", "+", "-", "*", "%", "<", ">", "=",
                "(",  ")",  "{",  "}",  "[",  "]", ",", ";", "."};
    c.keywords = {"function", "local", "if",  "then", "elseif", "else", "end",   "while", "do",
                  "for",      "return", "break", "nil", "true",  "false", "and",  "or",    "not"};
    return c;
  }();
  return cfg;
}

GenericValue ident(std::string name) { return gv::ctor("Ident", {gv::str(std::move(name))}); }

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(tokenize(text, lex_config())) {}

  GenericValue chunk() {
    std::vector<GenericValue> funcs;
    while (!ts_.at_end()) {
      ts_.expect("function");
      GenericValue name = ident(ts_.expect_ident());
      ts_.expect("(");
      std::vector<GenericValue> params;
      if (!ts_.is(")")) {
        do {
          params.push_back(ident(ts_.expect_ident()));
        } while (ts_.accept(","));
      }
      ts_.expect(")");
      GenericValue body = block();
      ts_.expect("end");
      funcs.push_back(gv::ctor("FuncDef", {name, gv::list(std::move(params)), body}));
    }
    return gv::ctor("Chunk", {gv::list(std::move(funcs))});
  }

 private:
  bool block_end() const {
    return ts_.at_end() || ts_.is("end") || ts_.is("else") || ts_.is("elseif");
  }

  GenericValue block() {
    std::vector<GenericValue> stmts;
    while (!block_end()) {
      if (ts_.accept(";")) continue;
      if (ts_.accept("return")) {
        GenericValue e = block_end() || ts_.is(";") ? gv::none() : gv::some(expr());
        ts_.accept(";");
        stmts.push_back(gv::ctor("Return", {e}));
        if (!block_end()) ts_.fail("end of block after return");
        break;
      }
      stmts.push_back(statement());
    }
    return gv::ctor("Block", {gv::list(std::move(stmts))});
  }

  GenericValue block_until_end() {
    GenericValue b = block();
    ts_.expect("end");
    return b;
  }

  std::vector<GenericValue> exprlist() {
    std::vector<GenericValue> out;
    do {
      out.push_back(expr());
    } while (ts_.accept(","));
    return out;
  }

  GenericValue if_rest() {
    GenericValue c = expr();
    ts_.expect("then");
    GenericValue then = block();
    if (ts_.accept("elseif")) {
      GenericValue nested = if_rest();
      return gv::ctor("If", {c, then, gv::some(gv::ctor("Block", {gv::list({nested})}))});
    }
    GenericValue els = gv::none();
    if (ts_.accept("else")) els = gv::some(block());
    ts_.expect("end");
    return gv::ctor("If", {c, then, els});
  }

  GenericValue statement() {
    if (ts_.accept("local")) {
      std::vector<GenericValue> names;
      do {
        names.push_back(ident(ts_.expect_ident()));
      } while (ts_.accept(","));
      GenericValue init = gv::none();
      if (ts_.accept("=")) init = gv::some(gv::list(exprlist()));
      return gv::ctor("Local", {gv::list(std::move(names)), init});
    }
    if (ts_.accept("do")) return gv::ctor("Do", {block_until_end()});
    if (ts_.accept("if")) return if_rest();
    if (ts_.accept("while")) {
      GenericValue c = expr();
      ts_.expect("do");
      return gv::ctor("While", {c, block_until_end()});
    }
    if (ts_.accept("for")) {
      GenericValue var = ident(ts_.expect_ident());
      ts_.expect("=");
      GenericValue start = expr();
      ts_.expect(",");
      GenericValue limit = expr();
      GenericValue step = gv::none();
      if (ts_.accept(",")) step = gv::some(expr());
      ts_.expect("do");
      return gv::ctor("NumFor", {var, start, limit, step, block_until_end()});
    }
    if (ts_.accept("break")) return gv::ctor("Break");
    const Token start = ts_.peek();
    GenericValue first = postfix();
    if (ts_.is("=") || ts_.is(",")) {
      std::vector<GenericValue> targets{first};
      while (ts_.accept(",")) targets.push_back(postfix());
      for (const auto& t : targets) {
        if (!t.is_ctor("Var") && !t.is_ctor("Index") && !t.is_ctor("Member")) {
          throw ParseError(start.line, start.col, "an assignable expression");
        }
      }
      ts_.expect("=");
      return gv::ctor("AssignStmt", {gv::list(std::move(targets)), gv::list(exprlist())});
    }
    if (!first.is_ctor("Call")) throw ParseError(start.line, start.col, "a call or assignment statement");
    return gv::ctor("CallStmt", {first});
  }

  GenericValue expr() { return binary(1); }

  GenericValue binary(int min_prec) {
    GenericValue lhs = unary();
    while (true) {
      const Token& t = ts_.peek();
      if (t.kind != Token::Kind::Punct && t.kind != Token::Kind::Keyword) break;
      auto it = binary_prec().find(t.text);
      if (it == binary_prec().end() || it->second < min_prec) break;
      std::string op = ts_.next().text;
      GenericValue rhs = binary(it->second + 1);
      lhs = gv::ctor("Binary", {gv::str(op), lhs, rhs});
    }
    return lhs;
  }

  GenericValue unary() {
    if (ts_.is("-") || ts_.is("not")) {
      std::string op = ts_.next().text;
      return gv::ctor("Unary", {gv::str(op), unary()});
    }
    return postfix();
  }

  GenericValue postfix() {
    GenericValue e = primary();
    while (true) {
      if (ts_.accept("[")) {
        GenericValue idx = expr();
        ts_.expect("]");
        e = gv::ctor("Index", {e, idx});
      } else if (ts_.accept(".")) {
        e = gv::ctor("Member", {e, ident(ts_.expect_ident())});
      } else {
        return e;
      }
    }
  }

  GenericValue primary() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Int) return gv::ctor("IntLit", {gv::integer(ts_.next().value)});
    if (t.kind == Token::Kind::String) return gv::ctor("StrLit", {gv::str(ts_.next().text)});
    if (t.kind == Token::Kind::Ident) {
      std::string name = ts_.next().text;
      if (ts_.accept("(")) {
        std::vector<GenericValue> args;
        if (!ts_.is(")")) args = exprlist();
        ts_.expect(")");
        return gv::ctor("Call", {ident(name), gv::list(std::move(args))});
      }
      return gv::ctor("Var", {ident(name)});
    }
    if (ts_.accept("nil")) return gv::ctor("Nil");
    if (ts_.accept("true")) return gv::ctor("BoolLit", {gv::boolean(true)});
    if (ts_.accept("false")) return gv::ctor("BoolLit", {gv::boolean(false)});
    if (ts_.accept("(")) {
      GenericValue e = expr();
      ts_.expect(")");
      return e;
    }
    if (ts_.accept("{")) {
      std::vector<GenericValue> items;
      if (!ts_.is("}")) items = exprlist();
      ts_.expect("}");
      return gv::ctor("TableLit", {gv::list(std::move(items))});
    }
    ts_.fail("an expression");
  }

  TokenStream ts_;
};

class Printer {
 public:
  std::string chunk(const GenericValue& c) {
    const auto& funcs = c[0].items;
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      if (i) out_ << "\n";
      const auto& f = funcs[i];
      out_ << "function " << f[0][0].as_str() << "(";
      for (std::size_t k = 0; k < f[1].items.size(); ++k) out_ << (k ? ", " : "") << f[1].items[k][0].as_str();
      out_ << ")\n";
      block(f[2], 1);
      out_ << "end\n";
    }
    return out_.str();
  }

 private:
  static int prec(const GenericValue& e) {
    if (e.is_ctor("Binary")) return binary_prec().at(e[0].as_str());
    if (e.is_ctor("Unary")) return kUnaryPrec;
    if (e.is_ctor("Index") || e.is_ctor("Member") || e.is_ctor("Call")) return kPostfixPrec;
    return kAtomPrec;
  }

  std::string wrap(const GenericValue& e, int min_prec) {
    std::string s = expr(e);
    return prec(e) < min_prec ? "(" + s + ")" : s;
  }

  std::string list(const std::vector<GenericValue>& es) {
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + expr(es[i]);
    return s;
  }

  std::string expr(const GenericValue& e) {
    const std::string& c = e.ctor;
    if (c == "Nil") return "nil";
    if (c == "BoolLit") return e[0].as_bool() ? "true" : "false";
    if (c == "IntLit") return std::to_string(e[0].as_int());
    if (c == "StrLit") return quote(e[0].as_str());
    if (c == "Var") return e[0][0].as_str();
    if (c == "Index") return wrap(e[0], kPostfixPrec) + "[" + expr(e[1]) + "]";
    if (c == "Member") return wrap(e[0], kPostfixPrec) + "." + e[1][0].as_str();
    if (c == "Call") return e[0][0].as_str() + "(" + list(e[1].items) + ")";
    if (c == "TableLit") return "{" + list(e[0].items) + "}";
    if (c == "Unary") {
      const std::string& op = e[0].as_str();
      std::string inner = e[1].is_ctor("Unary") ? "(" + expr(e[1]) + ")" : wrap(e[1], kUnaryPrec);
      return op == "not" ? "not " + inner : op + inner;
    }
    if (c == "Binary") {
      int p = prec(e);
      return wrap(e[1], p) + " " + e[0].as_str() + " " + wrap(e[2], p + 1);
    }
    throw Error(ErrorCode::NonConformingValue, "not an expression: " + c);
  }

  void indent(int n) { out_ << std::string(static_cast<std::size_t>(2 * n), ' '); }

  void block(const GenericValue& b, int depth) {
    for (const auto& s : b[0].items) stmt(s, depth);
  }

  void if_chain(const GenericValue& s, int depth) {
    out_ << expr(s[0]) << " then\n";
    block(s[1], depth + 1);
    if (const GenericValue* els = s[2].opt()) {
      const auto& items = (*els)[0].items;
      if (items.size() == 1 && items[0].is_ctor("If")) {
        indent(depth);
        out_ << "elseif ";
        if_chain(items[0], depth);
        return;
      }
      indent(depth);
      out_ << "else\n";
      block(*els, depth + 1);
    }
    indent(depth);
    out_ << "end\n";
  }

  void stmt(const GenericValue& s, int depth) {
    indent(depth);
    const std::string& c = s.ctor;
    if (c == "Local") {
      out_ << "local ";
      for (std::size_t i = 0; i < s[0].items.size(); ++i) out_ << (i ? ", " : "") << s[0].items[i][0].as_str();
      if (const GenericValue* init = s[1].opt()) out_ << " = " << list(init->items);
      out_ << "\n";
    } else if (c == "AssignStmt") {
      out_ << list(s[0].items) << " = " << list(s[1].items) << "\n";
    } else if (c == "CallStmt") {
      out_ << expr(s[0]) << "\n";
    } else if (c == "Do") {
      out_ << "do\n";
      block(s[0], depth + 1);
      indent(depth);
      out_ << "end\n";
    } else if (c == "If") {
      out_ << "if ";
      if_chain(s, depth);
    } else if (c == "While") {
      out_ << "while " << expr(s[0]) << " do\n";
      block(s[1], depth + 1);
      indent(depth);
      out_ << "end\n";
    } else if (c == "NumFor") {
      out_ << "for " << s[0][0].as_str() << " = " << expr(s[1]) << ", " << expr(s[2]);
      if (const GenericValue* st = s[3].opt()) out_ << ", " << expr(*st);
      out_ << " do\n";
      block(s[4], depth + 1);
      indent(depth);
      out_ << "end\n";
    } else if (c == "Return") {
      out_ << (s[0].opt() ? "return " + expr(*s[0].opt()) : std::string("return")) << "\n";
    } else if (c == "Break") {
      out_ << "break\n";
    } else {
      throw Error(ErrorCode::NonConformingValue, "not a statement: " + c);
    }
  }

  std::ostringstream out_;
};

}  // namespace

GenericValue parse_minilua(std::string_view text) { return Parser(text).chunk(); }
std::string pretty_minilua(const GenericValue& chunk) { return Printer().chunk(chunk); }

}  // namespace ipsx::frontend
