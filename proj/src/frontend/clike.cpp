// MiniC and MiniJS share their expression and statement syntax; they differ
// in declarations (typed block items versus `var` statements), directives,
// and a handful of expression forms.

#include <map>
#include <sstream>

#include "ipsx/frontend/lexer.hpp"
#include "ipsx/frontend/syntax.hpp"

namespace ipsx::frontend {

const char* minic_schema_text() {
  return R"(schema MiniC
root Program
type Program = Program [FuncDef]
type FuncDef = FuncDef Type Ident [Param] Block
type Param = Param Type Ident
type Type = TInt | TBool | TIntArray | TVoid
type Block = Block [BlockItem]
type BlockItem = StmtItem Stmt | DeclItem Decl
type Decl = Decl Type [Declarator]
type Declarator = Declarator Ident ?Init
type Init = ExprInit Expr | BracedInit [Expr]
type Stmt = ExprStmt Expr | BlockStmt Block | If Expr Stmt ?Stmt | While Expr Stmt
          | For ?Expr ?Expr ?Expr Stmt | Return ?Expr | Break | Continue | EmptyStmt
type Expr = IntLit Int | BoolLit Bool | Var Ident | Index Expr Expr | Call Ident [Expr]
          | Unary String Expr | Binary String Expr Expr | AssignExpr Expr Expr
type Ident = Ident String
)";
}

const char* minijs_schema_text() {
  return R"(schema MiniJS
root Program
type Program = Program [FuncDef]
type FuncDef = FuncDef Ident [Ident] Block
type Block = Block [String] [Stmt]
type Stmt = ExprStmt Expr | VarDecl [VarDeclarator] | BlockStmt Block | If Expr Stmt ?Stmt
          | While Expr Stmt | For ?Expr ?Expr ?Expr Stmt | Return ?Expr | Break | Continue | EmptyStmt
type VarDeclarator = VarDeclarator Ident ?Expr
type Expr = IntLit Int | BoolLit Bool | StrLit String | UndefinedLit | Var Ident | Index Expr Expr
          | Member Expr Ident | Call Ident [Expr] | ArrayLit [Expr] | Unary String Expr
          | Binary String Expr Expr | AssignExpr Expr Expr
type Ident = Ident String
)";
}

namespace {

enum class Dialect { C, JS };

const std::map<std::string, int, std::less<>>& binary_prec() {
  static const std::map<std::string, int, std::less<>> p = {
      {"||", 2}, {"&&", 3}, {"==", 4}, {"!=", 4}, {"<", 5}, {"<=", 5}, {">", 5}, {">=", 5},
      {"+", 6},  {"-", 6},  {"*", 7},  {"/", 7},  {"%", 7}};
  return p;
}

constexpr int kAssignPrec = 1;
constexpr int kUnaryPrec = 8;
constexpr int kPostfixPrec = 9;
constexpr int kAtomPrec = 10;

LexConfig lex_config(Dialect d) {
  LexConfig cfg;
  cfg.line_comment = "//";
  cfg.puncts = {"==", "!=", "<=", ">=", "&&", "||", "+", "-", "*", "/", "%", "<", ">", "=",
                "!",  "(",  ")",  "{",  "}",  "[",  "]", ",", ";", "."};
  cfg.keywords = {"if", "else", "while", "for", "return", "break", "continue", "true", "false"};
  if (d == Dialect::C) {
    cfg.keywords.insert({"int", "bool", "void"});
  } else {
    cfg.keywords.insert({"function", "var", "undefined"});
  }
  return cfg;
}

GenericValue ident(std::string name) { return gv::ctor("Ident", {gv::str(std::move(name))}); }

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, Dialect d) : d_(d), ts_(tokenize(text, lex_config(d))) {}

  GenericValue program() {
    std::vector<GenericValue> funcs;
    while (!ts_.at_end()) funcs.push_back(funcdef());
    return gv::ctor("Program", {gv::list(std::move(funcs))});
  }

 private:
  bool at_type() const { return d_ == Dialect::C && (ts_.is("int") || ts_.is("bool") || ts_.is("void")); }

  GenericValue type() {
    if (ts_.accept("int")) {
      if (ts_.accept("[")) {
        ts_.expect("]");
        return gv::ctor("TIntArray");
      }
      return gv::ctor("TInt");
    }
    if (ts_.accept("bool")) return gv::ctor("TBool");
    if (ts_.accept("void")) return gv::ctor("TVoid");
    ts_.fail("a type");
  }

  GenericValue funcdef() {
    if (d_ == Dialect::C) {
      GenericValue ret = type();
      GenericValue name = ident(ts_.expect_ident());
      ts_.expect("(");
      std::vector<GenericValue> params;
      if (!ts_.is(")")) {
        do {
          GenericValue pt = type();
          params.push_back(gv::ctor("Param", {pt, ident(ts_.expect_ident())}));
        } while (ts_.accept(","));
      }
      ts_.expect(")");
      GenericValue body = block();
      return gv::ctor("FuncDef", {ret, name, gv::list(std::move(params)), body});
    }
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
    return gv::ctor("FuncDef", {name, gv::list(std::move(params)), body});
  }

  GenericValue block() {
    ts_.expect("{");
    std::vector<GenericValue> items;
    if (d_ == Dialect::C) {
      while (!ts_.is("}")) {
        if (ts_.at_end()) ts_.fail("'}'");
        if (at_type()) {
          items.push_back(gv::ctor("DeclItem", {declaration()}));
        } else {
          items.push_back(gv::ctor("StmtItem", {statement()}));
        }
      }
      ts_.expect("}");
      return gv::ctor("Block", {gv::list(std::move(items))});
    }
    std::vector<GenericValue> directives;
    while (ts_.peek().kind == Token::Kind::String && ts_.peek(1).kind == Token::Kind::Punct &&
           ts_.peek(1).text == ";") {
      directives.push_back(gv::str(ts_.next().text));
      ts_.next();
    }
    while (!ts_.is("}")) {
      if (ts_.at_end()) ts_.fail("'}'");
      items.push_back(statement());
    }
    ts_.expect("}");
    return gv::ctor("Block", {gv::list(std::move(directives)), gv::list(std::move(items))});
  }

  GenericValue declaration() {
    GenericValue ty = type();
    std::vector<GenericValue> ds;
    do {
      GenericValue name = ident(ts_.expect_ident());
      GenericValue init = gv::none();
      if (ts_.accept("=")) {
        if (ts_.accept("{")) {
          std::vector<GenericValue> elems;
          if (!ts_.is("}")) {
            do {
              elems.push_back(expr());
            } while (ts_.accept(","));
          }
          ts_.expect("}");
          init = gv::some(gv::ctor("BracedInit", {gv::list(std::move(elems))}));
        } else {
          init = gv::some(gv::ctor("ExprInit", {expr()}));
        }
      }
      ds.push_back(gv::ctor("Declarator", {name, init}));
    } while (ts_.accept(","));
    ts_.expect(";");
    return gv::ctor("Decl", {ty, gv::list(std::move(ds))});
  }

  GenericValue opt_expr(std::string_view terminator) {
    if (ts_.is(terminator)) return gv::none();
    return gv::some(expr());
  }

  GenericValue statement() {
    if (ts_.is("{")) return gv::ctor("BlockStmt", {block()});
    if (ts_.accept(";")) return gv::ctor("EmptyStmt");
    if (ts_.accept("if")) {
      ts_.expect("(");
      GenericValue c = expr();
      ts_.expect(")");
      GenericValue then = statement();
      GenericValue els = gv::none();
      if (ts_.accept("else")) els = gv::some(statement());
      return gv::ctor("If", {c, then, els});
    }
    if (ts_.accept("while")) {
      ts_.expect("(");
      GenericValue c = expr();
      ts_.expect(")");
      return gv::ctor("While", {c, statement()});
    }
    if (ts_.accept("for")) {
      ts_.expect("(");
      GenericValue init = opt_expr(";");
      ts_.expect(";");
      GenericValue cond = opt_expr(";");
      ts_.expect(";");
      GenericValue step = opt_expr(")");
      ts_.expect(")");
      return gv::ctor("For", {init, cond, step, statement()});
    }
    if (ts_.accept("return")) {
      GenericValue e = opt_expr(";");
      ts_.expect(";");
      return gv::ctor("Return", {e});
    }
    if (ts_.accept("break")) {
      ts_.expect(";");
      return gv::ctor("Break");
    }
    if (ts_.accept("continue")) {
      ts_.expect(";");
      return gv::ctor("Continue");
    }
    if (d_ == Dialect::JS && ts_.accept("var")) {
      std::vector<GenericValue> ds;
      do {
        GenericValue name = ident(ts_.expect_ident());
        GenericValue init = gv::none();
        if (ts_.accept("=")) init = gv::some(expr());
        ds.push_back(gv::ctor("VarDeclarator", {name, init}));
      } while (ts_.accept(","));
      ts_.expect(";");
      return gv::ctor("VarDecl", {gv::list(std::move(ds))});
    }
    if (at_type()) ts_.fail("a statement (declarations are not statements)");
    GenericValue e = expr();
    ts_.expect(";");
    return gv::ctor("ExprStmt", {e});
  }

  GenericValue expr() { return assignment(); }

  GenericValue assignment() {
    const Token start = ts_.peek();
    GenericValue lhs = binary(2);
    if (ts_.accept("=")) {
      if (!lhs.is_ctor("Var") && !lhs.is_ctor("Index") && !lhs.is_ctor("Member")) {
        throw ParseError(start.line, start.col, "an assignable expression");
      }
      return gv::ctor("AssignExpr", {lhs, assignment()});
    }
    return lhs;
  }

  GenericValue binary(int min_prec) {
    GenericValue lhs = unary();
    while (true) {
      const Token& t = ts_.peek();
      if (t.kind != Token::Kind::Punct) break;
      auto it = binary_prec().find(t.text);
      if (it == binary_prec().end() || it->second < min_prec) break;
      std::string op = ts_.next().text;
      GenericValue rhs = binary(it->second + 1);
      lhs = gv::ctor("Binary", {gv::str(op), lhs, rhs});
    }
    return lhs;
  }

  GenericValue unary() {
    if (ts_.is("-") || ts_.is("!")) {
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
      } else if (d_ == Dialect::JS && ts_.accept(".")) {
        e = gv::ctor("Member", {e, ident(ts_.expect_ident())});
      } else {
        return e;
      }
    }
  }

  std::vector<GenericValue> args(std::string_view close) {
    std::vector<GenericValue> out;
    if (!ts_.is(close)) {
      do {
        out.push_back(expr());
      } while (ts_.accept(","));
    }
    ts_.expect(close);
    return out;
  }

  GenericValue primary() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Token::Kind::Int: return gv::ctor("IntLit", {gv::integer(ts_.next().value)});
      case Token::Kind::String:
        if (d_ == Dialect::JS) return gv::ctor("StrLit", {gv::str(ts_.next().text)});
        break;
      case Token::Kind::Ident: {
        std::string name = ts_.next().text;
        if (ts_.accept("(")) return gv::ctor("Call", {ident(name), gv::list(args(")"))});
        return gv::ctor("Var", {ident(name)});
      }
      default: break;
    }
    if (ts_.accept("true")) return gv::ctor("BoolLit", {gv::boolean(true)});
    if (ts_.accept("false")) return gv::ctor("BoolLit", {gv::boolean(false)});
    if (d_ == Dialect::JS && ts_.accept("undefined")) return gv::ctor("UndefinedLit");
    if (ts_.accept("(")) {
      GenericValue e = expr();
      ts_.expect(")");
      return e;
    }
    if (d_ == Dialect::JS && ts_.accept("[")) return gv::ctor("ArrayLit", {gv::list(args("]"))});
    ts_.fail("an expression");
  }

  Dialect d_;
  TokenStream ts_;
};

// ---------------------------------------------------------------------------
// Printer

class Printer {
 public:
  explicit Printer(Dialect d) : d_(d) {}

  std::string program(const GenericValue& p) {
    const auto& funcs = p[0].items;
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      if (i) out_ << "\n";
      funcdef(funcs[i]);
    }
    return out_.str();
  }

  static int prec(const GenericValue& e) {
    if (e.is_ctor("AssignExpr")) return kAssignPrec;
    if (e.is_ctor("Binary")) return binary_prec().at(e[0].as_str());
    if (e.is_ctor("Unary")) return kUnaryPrec;
    if (e.is_ctor("Index") || e.is_ctor("Member") || e.is_ctor("Call")) return kPostfixPrec;
    return kAtomPrec;
  }

  std::string expr(const GenericValue& e) {
    const std::string& c = e.ctor;
    if (c == "IntLit") return std::to_string(e[0].as_int());
    if (c == "BoolLit") return e[0].as_bool() ? "true" : "false";
    if (c == "StrLit") return quote(e[0].as_str());
    if (c == "UndefinedLit") return "undefined";
    if (c == "Var") return e[0][0].as_str();
    if (c == "Index") return wrap(e[0], kPostfixPrec) + "[" + expr(e[1]) + "]";
    if (c == "Member") return wrap(e[0], kPostfixPrec) + "." + e[1][0].as_str();
    if (c == "Call") return e[0][0].as_str() + "(" + list(e[1].items) + ")";
    if (c == "ArrayLit") return "[" + list(e[0].items) + "]";
    if (c == "Unary") {
      const GenericValue& operand = e[1];
      std::string inner = wrap(operand, kUnaryPrec);
      if (operand.is_ctor("Unary")) inner = "(" + expr(operand) + ")";
      return e[0].as_str() + inner;
    }
    if (c == "Binary") {
      int p = prec(e);
      return wrap(e[1], p) + " " + e[0].as_str() + " " + wrap(e[2], p + 1);
    }
    if (c == "AssignExpr") return wrap(e[0], kPostfixPrec) + " = " + wrap(e[1], kAssignPrec);
    throw Error(ErrorCode::NonConformingValue, "not an expression: " + c);
  }

 private:
  std::string wrap(const GenericValue& e, int min_prec) {
    std::string s = expr(e);
    return prec(e) < min_prec ? "(" + s + ")" : s;
  }

  std::string list(const std::vector<GenericValue>& es) {
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + expr(es[i]);
    return s;
  }

  void indent(int n) { out_ << std::string(static_cast<std::size_t>(2 * n), ' '); }

  static std::string type(const GenericValue& t) {
    if (t.is_ctor("TInt")) return "int";
    if (t.is_ctor("TBool")) return "bool";
    if (t.is_ctor("TIntArray")) return "int[]";
    return "void";
  }

  void funcdef(const GenericValue& f) {
    if (d_ == Dialect::C) {
      out_ << type(f[0]) << " " << f[1][0].as_str() << "(";
      const auto& ps = f[2].items;
      for (std::size_t i = 0; i < ps.size(); ++i) out_ << (i ? ", " : "") << type(ps[i][0]) << " " << ps[i][1][0].as_str();
      out_ << ") ";
      block(f[3], 0);
    } else {
      out_ << "function " << f[0][0].as_str() << "(";
      const auto& ps = f[1].items;
      for (std::size_t i = 0; i < ps.size(); ++i) out_ << (i ? ", " : "") << ps[i][0].as_str();
      out_ << ") ";
      block(f[2], 0);
    }
    out_ << "\n";
  }

  // Prints `{ ... }` starting at the current column; closing brace at `depth`.
  void block(const GenericValue& b, int depth) {
    out_ << "{\n";
    if (d_ == Dialect::C) {
      for (const auto& item : b[0].items) {
        if (item.is_ctor("DeclItem")) {
          indent(depth + 1);
          decl(item[0]);
          out_ << "\n";
        } else {
          stmt(item[0], depth + 1);
        }
      }
    } else {
      for (const auto& d : b[0].items) {
        indent(depth + 1);
        out_ << quote(d.as_str()) << ";\n";
      }
      for (const auto& s : b[1].items) stmt(s, depth + 1);
    }
    indent(depth);
    out_ << "}";
  }

  void decl(const GenericValue& d) {
    out_ << type(d[0]) << " ";
    const auto& ds = d[1].items;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      out_ << (i ? ", " : "") << ds[i][0][0].as_str();
      if (const GenericValue* init = ds[i][1].opt()) {
        out_ << " = ";
        if (init->is_ctor("BracedInit")) {
          out_ << "{" << list((*init)[0].items) << "}";
        } else {
          out_ << expr((*init)[0]);
        }
      }
    }
    out_ << ";";
  }

  // Body of a compound statement, printed after its header. Returns whether it
  // was a braced block (so a following `else` can share the line).
  bool body(const GenericValue& s, int depth) {
    if (s.is_ctor("BlockStmt")) {
      out_ << " ";
      block(s[0], depth);
      return true;
    }
    out_ << "\n";
    stmt(s, depth + 1);
    return false;
  }

  std::string opt(const GenericValue& o) { return o.opt() ? expr(*o.opt()) : ""; }

  void stmt(const GenericValue& s, int depth, bool lead = true) {
    if (lead) indent(depth);
    const std::string& c = s.ctor;
    if (c == "ExprStmt") {
      std::string e = expr(s[0]);
      if (s[0].is_ctor("StrLit")) e = "(" + e + ")";
      out_ << e << ";\n";
    } else if (c == "VarDecl") {
      out_ << "var ";
      const auto& ds = s[0].items;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        out_ << (i ? ", " : "") << ds[i][0][0].as_str();
        if (const GenericValue* init = ds[i][1].opt()) out_ << " = " << expr(*init);
      }
      out_ << ";\n";
    } else if (c == "BlockStmt") {
      block(s[0], depth);
      out_ << "\n";
    } else if (c == "If") {
      out_ << "if (" << expr(s[0]) << ")";
      bool braced = body(s[1], depth);
      if (const GenericValue* els = s[2].opt()) {
        if (braced) {
          out_ << " else";
        } else {
          indent(depth);
          out_ << "else";
        }
        if (els->is_ctor("If")) {
          out_ << " ";
          stmt(*els, depth, false);
          return;
        }
        braced = body(*els, depth);
      }
      if (braced) out_ << "\n";
    } else if (c == "While") {
      out_ << "while (" << expr(s[0]) << ")";
      if (body(s[1], depth)) out_ << "\n";
    } else if (c == "For") {
      auto part = [&](const GenericValue& o) { return o.opt() ? " " + expr(*o.opt()) : std::string(); };
      out_ << "for (" << opt(s[0]) << ";" << part(s[1]) << ";" << part(s[2]) << ")";
      if (body(s[3], depth)) out_ << "\n";
    } else if (c == "Return") {
      out_ << (s[0].opt() ? "return " + opt(s[0]) : std::string("return")) << ";\n";
    } else if (c == "Break") {
      out_ << "break;\n";
    } else if (c == "Continue") {
      out_ << "continue;\n";
    } else if (c == "EmptyStmt") {
      out_ << ";\n";
    } else {
      throw Error(ErrorCode::NonConformingValue, "not a statement: " + c);
    }
  }

  Dialect d_;
  std::ostringstream out_;
};

}  // namespace

GenericValue parse_minic(std::string_view text) { return Parser(text, Dialect::C).program(); }
std::string pretty_minic(const GenericValue& program) { return Printer(Dialect::C).program(program); }

GenericValue parse_minijs(std::string_view text) { return Parser(text, Dialect::JS).program(); }
std::string pretty_minijs(const GenericValue& program) { return Printer(Dialect::JS).program(program); }

}  // namespace ipsx::frontend
