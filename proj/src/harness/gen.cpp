// Random well-formed programs. Variables carry a type (int, bool, fixed
// length array) and a defined flag so every read sees an initialized value;
// loops are guarded by counters that only the loop header touches.

#include <algorithm>
#include <random>
#include <set>

#include "ipsx/harness.hpp"

namespace ipsx::harness {

namespace {

enum class Dialect { C, JS, Lua };

enum class Ty { Int, Bool, Arr };

struct Var {
  std::string name;
  Ty ty = Ty::Int;
  int len = 0;
  bool defined = true;
  bool counter = false;
  bool param = false;
};

GenericValue ident(const std::string& n) { return gv::ctor("Ident", {gv::str(n)}); }
GenericValue int_lit(std::int64_t v) { return gv::ctor("IntLit", {gv::integer(v)}); }
GenericValue bool_lit(bool v) { return gv::ctor("BoolLit", {gv::boolean(v)}); }
GenericValue var(const std::string& n) { return gv::ctor("Var", {ident(n)}); }
GenericValue bin(const std::string& op, GenericValue a, GenericValue b) {
  return gv::ctor("Binary", {gv::str(op), std::move(a), std::move(b)});
}
GenericValue un(const std::string& op, GenericValue a) { return gv::ctor("Unary", {gv::str(op), std::move(a)}); }
GenericValue call(const std::string& f, std::vector<GenericValue> args) {
  return gv::ctor("Call", {ident(f), gv::list(std::move(args))});
}

class Gen {
 public:
  Gen(Dialect d, const GenConfig& cfg) : d_(d), cfg_(cfg), rng_(cfg.seed) {}

  GenericValue program() {
    int nfuncs = 1 + pick(3);
    std::vector<GenericValue> funcs;
    for (int k = 0; k < nfuncs; ++k) funcs.push_back(function(k));
    return gv::ctor(d_ == Dialect::Lua ? "Chunk" : "Program", {gv::list(std::move(funcs))});
  }

 private:
  // ---- randomness

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return pick(100) < percent; }

  // ---- dialect spellings

  std::string op_and() const { return d_ == Dialect::Lua ? "and" : "&&"; }
  std::string op_or() const { return d_ == Dialect::Lua ? "or" : "||"; }
  std::string op_not() const { return d_ == Dialect::Lua ? "not" : "!"; }
  std::string op_ne() const { return d_ == Dialect::Lua ? "~=" : "!="; }
  std::string op_div() const { return d_ == Dialect::Lua ? "//" : "/"; }
  int base_index() const { return d_ == Dialect::Lua ? 1 : 0; }

  // ---- scopes

  std::vector<const Var*> visible() const {
    std::vector<const Var*> out;
    std::set<std::string> seen;
    for (auto f = scopes_.rbegin(); f != scopes_.rend(); ++f) {
      for (auto v = f->rbegin(); v != f->rend(); ++v) {
        if (seen.insert(v->name).second) out.push_back(&*v);
      }
    }
    return out;
  }

  const Var* find(const std::string& name) const {
    for (const Var* v : visible()) {
      if (v->name == name) return v;
    }
    return nullptr;
  }

  std::vector<const Var*> readable(Ty ty) const {
    std::vector<const Var*> out;
    for (const Var* v : visible()) {
      if (v->ty == ty && v->defined && v->name != hidden_) out.push_back(v);
    }
    return out;
  }

  std::vector<const Var*> writable(Ty ty) const {
    std::vector<const Var*> out;
    for (const Var* v : visible()) {
      if (v->ty == ty && !v->counter) out.push_back(v);
    }
    return out;
  }

  void define_here(const std::string& name) {
    for (auto& v : scopes_.back()) {
      if (v.name == name) v.defined = true;
    }
  }

  // A fresh name, or with shadowing on sometimes an outer one of the same type.
  std::string new_name(Ty ty) {
    if (cfg_.shadowing && chance(30)) {
      std::vector<std::string> cands;
      for (const Var* v : visible()) {
        if (v->counter || v->ty != ty || ty == Ty::Arr) continue;
        // C parameters share the scope of the function's outermost block.
        if (v->param && d_ == Dialect::C && scopes_.size() == 2) continue;
        bool in_current = false;
        for (const auto& w : scopes_.back()) in_current |= w.name == v->name;
        if (!in_current) cands.push_back(v->name);
      }
      if (!cands.empty()) return cands[static_cast<std::size_t>(pick(static_cast<int>(cands.size())))];
    }
    return "v" + std::to_string(next_var_++);
  }

  // ---- expressions

  GenericValue int_leaf() {
    auto vars = readable(Ty::Int);
    auto arrs = readable(Ty::Arr);
    int r = pick(10);
    if (r < 4 || (vars.empty() && arrs.empty())) return int_lit(pick(10));
    if (r < 8 || arrs.empty()) {
      if (vars.empty()) return int_lit(pick(10));
      return var(vars[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))]->name);
    }
    const Var* a = arrs[static_cast<std::size_t>(pick(static_cast<int>(arrs.size())))];
    return gv::ctor("Index", {var(a->name), int_lit(base_index() + pick(a->len))});
  }

  GenericValue int_expr(int depth) {
    if (depth <= 0 || chance(30)) return int_leaf();
    int r = pick(100);
    if (r < 35) {
      static const char* ops[] = {"+", "-", "*"};
      return bin(ops[pick(3)], int_expr(depth - 1), int_expr(depth - 1));
    }
    if (r < 45) return bin(pick(2) ? op_div() : "%", int_expr(depth - 1), int_lit(1 + pick(5)));
    if (r < 52) {
      GenericValue e = int_expr(depth - 1);
      if (e.is_ctor("Unary")) return e;
      return un("-", std::move(e));
    }
    if (r < 64) {
      std::vector<GenericValue> args;
      int n = pick(3);
      for (int k = 0; k < n; ++k) args.push_back(int_expr(depth - 1));
      return call(pick(2) ? "f" : "g", std::move(args));
    }
    if (r < 72 && cfg_.short_circuit) {
      if (d_ == Dialect::Lua) {
        return bin("or", bin("and", bool_expr(depth - 1), int_expr(depth - 1)), int_expr(depth - 1));
      }
      return bin(pick(2) ? op_and() : op_or(), int_expr(depth - 1), sc_rhs_int(depth - 1));
    }
    if (r < 78 && d_ != Dialect::Lua) {
      auto targets = writable(Ty::Int);
      if (!targets.empty()) {
        const Var* t = targets[static_cast<std::size_t>(pick(static_cast<int>(targets.size())))];
        if (t->defined && t->name != hidden_) {
          return gv::ctor("AssignExpr", {var(t->name), int_expr(depth - 1)});
        }
      }
    }
    if (r < 84 && cfg_.user_calls && loop_depth_ == 0 && func_index_ > 0) {
      int callee = pick(func_index_);
      std::vector<GenericValue> args;
      for (int k = 0; k < arity_[static_cast<std::size_t>(callee)]; ++k) args.push_back(int_expr(depth - 1));
      return call("fn" + std::to_string(callee), std::move(args));
    }
    return int_leaf();
  }

  GenericValue sc_rhs_int(int depth) {
    if (cfg_.trapping_calls && chance(15)) return call("fail", {});
    if (chance(30)) {
      std::vector<GenericValue> args{int_expr(depth)};
      return call(pick(2) ? "f" : "g", std::move(args));
    }
    return int_expr(depth);
  }

  GenericValue sc_rhs_bool(int depth) {
    if (cfg_.trapping_calls && chance(15)) return bin("==", call("fail", {}), int_lit(0));
    if (chance(30)) return bin("<", call(pick(2) ? "f" : "g", {int_expr(depth)}), int_lit(pick(5)));
    return bool_expr(depth);
  }

  GenericValue bool_expr(int depth) {
    auto bools = readable(Ty::Bool);
    if (depth <= 0 || chance(20)) {
      if (!bools.empty() && pick(2)) return var(bools[static_cast<std::size_t>(pick(static_cast<int>(bools.size())))]->name);
      if (chance(20)) return bool_lit(pick(2) != 0);
      return compare(0);
    }
    int r = pick(100);
    if (r < 45) return compare(depth - 1);
    if (r < 55) return un(op_not(), bool_expr(depth - 1));
    if (cfg_.short_circuit && r < 90) {
      return bin(pick(2) ? op_and() : op_or(), bool_expr(depth - 1), sc_rhs_bool(depth - 1));
    }
    return compare(depth - 1);
  }

  GenericValue compare(int depth) {
    static const char* ops[] = {"<", "<=", ">", ">=", "=="};
    int r = pick(6);
    std::string op = r < 5 ? ops[r] : op_ne();
    return bin(op, int_expr(depth), int_expr(depth));
  }

  GenericValue expr_of(Ty ty, int depth, int len = 0) {
    if (ty == Ty::Int) return int_expr(depth);
    if (ty == Ty::Bool) return bool_expr(depth);
    std::vector<GenericValue> es;
    for (int k = 0; k < len; ++k) es.push_back(int_expr(depth));
    const char* ctor = d_ == Dialect::Lua ? "TableLit" : "ArrayLit";
    return gv::ctor(ctor, {gv::list(std::move(es))});
  }

  int expr_depth() { return 1 + pick(std::max(1, std::min(3, cfg_.max_depth))); }

  // ---- statements

  GenericValue item(GenericValue stmt) const {
    return d_ == Dialect::C ? gv::ctor("StmtItem", {std::move(stmt)}) : stmt;
  }

  GenericValue block_of(std::vector<GenericValue> items, std::vector<GenericValue> dirs = {}) const {
    if (d_ == Dialect::JS) return gv::ctor("Block", {gv::list(std::move(dirs)), gv::list(std::move(items))});
    return gv::ctor("Block", {gv::list(std::move(items))});
  }

  GenericValue assign_stmt(GenericValue lhs, GenericValue rhs) const {
    if (d_ == Dialect::Lua) {
      return gv::ctor("AssignStmt", {gv::list({std::move(lhs)}), gv::list({std::move(rhs)})});
    }
    return gv::ctor("ExprStmt", {gv::ctor("AssignExpr", {std::move(lhs), std::move(rhs)})});
  }

  GenericValue call_stmt(GenericValue c) const {
    return gv::ctor(d_ == Dialect::Lua ? "CallStmt" : "ExprStmt", {std::move(c)});
  }

  GenericValue type_of(Ty ty) const {
    return gv::ctor(ty == Ty::Int ? "TInt" : ty == Ty::Bool ? "TBool" : "TIntArray");
  }

  // Declarations and counter declarations are block items in every dialect.

  // Declaration of one or more variables of one type.
  GenericValue declaration(int depth) {
    int r = pick(10);
    Ty ty = r < 6 ? Ty::Int : r < 8 ? Ty::Bool : Ty::Arr;
    int len = ty == Ty::Arr ? 2 + pick(2) : 0;
    int count = 1;
    if (chance(30)) count = 2;
    if (d_ == Dialect::Lua && !cfg_.parallel_assign) count = 1;
    int ed = std::min(depth, expr_depth());

    if (d_ == Dialect::Lua) {
      std::vector<std::string> names;
      for (int k = 0; k < count; ++k) {
        std::string n = new_name(ty);
        if (std::find(names.begin(), names.end(), n) != names.end()) n = "v" + std::to_string(next_var_++);
        names.push_back(n);
      }
      int nexprs = chance(15) ? 0 : (count == 2 && chance(20)) ? 1 : count;
      std::vector<GenericValue> es;
      for (int k = 0; k < nexprs; ++k) es.push_back(expr_of(ty, ed, len));
      std::vector<GenericValue> ids;
      for (std::size_t k = 0; k < names.size(); ++k) {
        ids.push_back(ident(names[k]));
        scopes_.back().push_back({names[k], ty, len, static_cast<int>(k) < nexprs, false});
      }
      GenericValue init = nexprs == 0 ? gv::none() : gv::some(gv::list(std::move(es)));
      return gv::ctor("Local", {gv::list(std::move(ids)), std::move(init)});
    }

    std::vector<GenericValue> decls;
    for (int k = 0; k < count; ++k) {
      std::string n = new_name(ty);
      bool already = false;
      for (const auto& v : scopes_.back()) already |= v.name == n;
      if (already) n = "v" + std::to_string(next_var_++);
      bool with_init = !chance(20);
      GenericValue init = gv::none();
      if (with_init) {
        // A C declarator is in scope inside its own initializer.
        std::string saved = hidden_;
        if (d_ == Dialect::C) hidden_ = n;
        GenericValue e = expr_of(ty, ed, len);
        hidden_ = saved;
        if (d_ == Dialect::C) {
          if (ty == Ty::Arr) {
            init = gv::some(gv::ctor("BracedInit", {e[0]}));
          } else {
            init = gv::some(gv::ctor("ExprInit", {std::move(e)}));
          }
        } else {
          init = gv::some(std::move(e));
        }
      }
      const char* ctor = d_ == Dialect::C ? "Declarator" : "VarDeclarator";
      decls.push_back(gv::ctor(ctor, {ident(n), std::move(init)}));
      // Redeclaring an outer JS variable without initializer keeps its value,
      // which the generator does not track.
      scopes_.back().push_back({n, ty, len, with_init, false});
    }
    if (d_ == Dialect::C) return gv::ctor("DeclItem", {gv::ctor("Decl", {type_of(ty), gv::list(std::move(decls))})});
    return gv::ctor("VarDecl", {gv::list(std::move(decls))});
  }

  // Assignment, print or external call. Never declares.
  GenericValue simple(int depth) {
    int ed = std::min(depth + 1, expr_depth());
    int r = pick(100);
    if (r < 55) {
      int t = pick(10);
      Ty ty = t < 7 ? Ty::Int : t < 9 ? Ty::Bool : Ty::Arr;
      if (d_ == Dialect::Lua && cfg_.parallel_assign && chance(35)) {
        auto targets = writable(Ty::Int);
        if (targets.size() >= 2) {
          const Var* a = targets[static_cast<std::size_t>(pick(static_cast<int>(targets.size())))];
          const Var* b = targets[static_cast<std::size_t>(pick(static_cast<int>(targets.size())))];
          if (a->name != b->name) {
            std::string an = a->name, bn = b->name;
            std::vector<GenericValue> rhs;
            if (a->defined && b->defined && chance(40)) {
              rhs = {var(bn), var(an)};
            } else {
              rhs = {int_expr(ed), int_expr(ed)};
            }
            define_here(an);
            define_here(bn);
            return gv::ctor("AssignStmt", {gv::list({var(an), var(bn)}), gv::list(std::move(rhs))});
          }
        }
      }
      if (ty == Ty::Arr) {
        auto arrs = readable(Ty::Arr);
        if (!arrs.empty()) {
          const Var* a = arrs[static_cast<std::size_t>(pick(static_cast<int>(arrs.size())))];
          GenericValue lhs = gv::ctor("Index", {var(a->name), int_lit(base_index() + pick(a->len))});
          return assign_stmt(std::move(lhs), int_expr(ed));
        }
        ty = Ty::Int;
      }
      auto targets = writable(ty);
      if (!targets.empty()) {
        std::string n = targets[static_cast<std::size_t>(pick(static_cast<int>(targets.size())))]->name;
        GenericValue rhs = expr_of(ty, ed);
        define_here(n);
        return assign_stmt(var(n), std::move(rhs));
      }
    }
    if (r < 85) {
      std::vector<GenericValue> args;
      int n = 1 + pick(2);
      for (int k = 0; k < n; ++k) {
        if (d_ != Dialect::C && chance(5)) {
          args.push_back(gv::ctor("StrLit", {gv::str("s" + std::to_string(pick(3)))}));
        } else if (chance(25)) {
          args.push_back(bool_expr(ed));
        } else {
          args.push_back(int_expr(ed));
        }
      }
      return call_stmt(call("print", std::move(args)));
    }
    std::vector<GenericValue> args;
    int n = pick(3);
    for (int k = 0; k < n; ++k) args.push_back(int_expr(ed));
    return call_stmt(call(pick(2) ? "f" : "g", std::move(args)));
  }

  // Body of a compound statement: a block, or a single simple statement.
  GenericValue body(int depth, bool allow_bare) {
    if (d_ != Dialect::Lua && allow_bare && chance(30)) {
      if (loop_depth_ > 0 && chance(25)) return gv::ctor(chance(50) ? "Continue" : "Break");
      scopes_.emplace_back();
      GenericValue s = simple(depth);
      scopes_.pop_back();
      return s;
    }
    auto items = block(depth, {});
    if (d_ == Dialect::Lua) return block_of(std::move(items));
    return gv::ctor("BlockStmt", {block_of(std::move(items))});
  }

  std::string counter() { return "k" + std::to_string(next_counter_++); }

  GenericValue counter_decl(const std::string& k, bool with_init) {
    scopes_.back().push_back({k, Ty::Int, 0, true, true});
    if (d_ == Dialect::Lua) return gv::ctor("Local", {gv::list({ident(k)}), gv::some(gv::list({int_lit(0)}))});
    GenericValue init = with_init ? gv::some(d_ == Dialect::C ? gv::ctor("ExprInit", {int_lit(0)}) : int_lit(0)) : gv::none();
    const char* ctor = d_ == Dialect::C ? "Declarator" : "VarDeclarator";
    GenericValue d = gv::ctor(ctor, {ident(k), std::move(init)});
    if (d_ == Dialect::C) return gv::ctor("DeclItem", {gv::ctor("Decl", {type_of(Ty::Int), gv::list({d})})});
    return gv::ctor("VarDecl", {gv::list({d})});
  }

  GenericValue increment(const std::string& k) const { return bin("+", var(k), int_lit(1)); }

  // Appends a guarded loop (and its counter declaration) to `out`.
  void loop(int depth, std::vector<GenericValue>& out) {
    bool numeric = pick(2) != 0;
    std::string k = counter();
    int bound = 1 + pick(3);
    ++loop_depth_;
    if (d_ == Dialect::Lua && numeric) {
      GenericValue from = int_lit(pick(3));
      GenericValue to = int_lit(1 + pick(3));
      GenericValue step = gv::none();
      if (chance(25)) {
        std::swap(from, to);
        step = gv::some(un("-", int_lit(1)));
      } else if (chance(20)) {
        from = bin("%", int_leaf(), int_lit(3));
      }
      scopes_.emplace_back();
      scopes_.back().push_back({k, Ty::Int, 0, true, true});
      GenericValue b = block_of(block(depth - 1, {}));
      scopes_.pop_back();
      out.push_back(gv::ctor("NumFor", {ident(k), std::move(from), std::move(to), std::move(step), std::move(b)}));
      --loop_depth_;
      return;
    }
    GenericValue guard = bin("<", var(k), int_lit(bound));
    if (numeric) {
      bool init_in_header = pick(2) != 0;
      out.push_back(counter_decl(k, !init_in_header));
      if (cfg_.short_circuit && chance(25)) guard = bin(op_and(), guard, bool_expr(1));
      GenericValue init = init_in_header ? gv::some(gv::ctor("AssignExpr", {var(k), int_lit(0)})) : gv::none();
      GenericValue step = gv::some(gv::ctor("AssignExpr", {var(k), increment(k)}));
      GenericValue b = body(depth - 1, true);
      out.push_back(item(gv::ctor("For", {std::move(init), gv::some(std::move(guard)), std::move(step), std::move(b)})));
      --loop_depth_;
      return;
    }
    out.push_back(counter_decl(k, true));
    if (cfg_.short_circuit && chance(25)) guard = bin(op_and(), guard, bool_expr(1));
    GenericValue inc = item(assign_stmt(var(k), increment(k)));
    auto items = block(depth - 1, {inc});
    GenericValue b = block_of(std::move(items));
    if (d_ != Dialect::Lua) b = gv::ctor("BlockStmt", {std::move(b)});
    out.push_back(item(gv::ctor("While", {std::move(guard), std::move(b)})));
    --loop_depth_;
  }

  // With `must_return`, every path through the block ends in a return.
  std::vector<GenericValue> block(int depth, std::vector<GenericValue> prefix, bool must_return = false) {
    scopes_.emplace_back();
    std::vector<GenericValue> out = std::move(prefix);
    int n = pick(cfg_.max_stmts + 1);
    if (must_return) n = std::max(n, 1);
    for (int s = 0; s < n; ++s) {
      int r = pick(100);
      if (r < 22) {
        out.push_back(declaration(depth));
      } else if (r < 55 || depth <= 0) {
        out.push_back(item(simple(depth)));
      } else if (r < 70) {
        GenericValue cond = bool_expr(expr_depth());
        GenericValue then_b = body(depth - 1, true);
        GenericValue else_b = chance(45) ? gv::some(body(depth - 1, true)) : gv::none();
        out.push_back(item(gv::ctor("If", {std::move(cond), std::move(then_b), std::move(else_b)})));
      } else if (r < 82 && cfg_.loops) {
        loop(depth, out);
      } else if (r < 88) {
        scopes_.emplace_back();
        auto items = block(depth - 1, {});
        scopes_.pop_back();
        GenericValue b = block_of(std::move(items));
        out.push_back(item(gv::ctor(d_ == Dialect::Lua ? "Do" : "BlockStmt", {std::move(b)})));
      } else if (r < 94 && loop_depth_ > 0) {
        bool cont = d_ != Dialect::Lua && pick(2);
        out.push_back(item(gv::ctor(cont ? "Continue" : "Break")));
        break;
      } else if (r < 97) {
        out.push_back(item(gv::ctor("Return", {gv::some(int_expr(expr_depth()))})));
        break;
      } else {
        out.push_back(item(simple(depth)));
      }
    }
    if (must_return) {
      bool returns = false;
      if (!out.empty()) {
        const GenericValue& last = out.back().is_ctor("StmtItem") ? out.back()[0] : out.back();
        returns = last.is_ctor("Return");
      }
      if (!returns) out.push_back(item(gv::ctor("Return", {gv::some(int_expr(expr_depth()))})));
    }
    scopes_.pop_back();
    return out;
  }

  GenericValue function(int index) {
    func_index_ = index;
    next_var_ = 0;
    next_counter_ = 0;
    loop_depth_ = 0;
    int nparams = pick(3);
    arity_.push_back(nparams);
    scopes_.assign(1, {});
    std::vector<GenericValue> params;
    for (int k = 0; k < nparams; ++k) {
      std::string p = "p" + std::to_string(k);
      scopes_.back().push_back({p, Ty::Int, 0, true, false, true});
      params.push_back(d_ == Dialect::C ? gv::ctor("Param", {type_of(Ty::Int), ident(p)}) : ident(p));
    }
    auto items = block(cfg_.max_depth, {}, true);
    std::vector<GenericValue> dirs;
    if (d_ == Dialect::JS && chance(10)) dirs.push_back(gv::str("use strict"));
    GenericValue b = block_of(std::move(items), std::move(dirs));
    std::string name = "fn" + std::to_string(index);
    if (d_ == Dialect::C) {
      return gv::ctor("FuncDef", {type_of(Ty::Int), ident(name), gv::list(std::move(params)), std::move(b)});
    }
    return gv::ctor("FuncDef", {ident(name), gv::list(std::move(params)), std::move(b)});
  }

  Dialect d_;
  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<std::vector<Var>> scopes_;
  std::vector<int> arity_;
  std::string hidden_;
  int func_index_ = 0;
  int next_var_ = 0;
  int next_counter_ = 0;
  int loop_depth_ = 0;
};

Dialect dialect_of(const LanguageDef& lang) {
  if (lang.name() == "minic") return Dialect::C;
  if (lang.name() == "minijs") return Dialect::JS;
  if (lang.name() == "minilua") return Dialect::Lua;
  throw Error(ErrorCode::UnknownLanguage, lang.name());
}

}  // namespace

GenericValue gen_ast(const LanguageDef& lang, const GenConfig& cfg) { return Gen(dialect_of(lang), cfg).program(); }

std::string gen_program(const LanguageDef& lang, const GenConfig& cfg) { return lang.pretty(gen_ast(lang, cfg)); }

std::vector<std::string> gen_corpus(const LanguageDef& lang, std::size_t count, std::uint64_t seed, GenConfig base) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    base.seed = seed * 0x100000001b3ULL + k;
    out.push_back(gen_program(lang, base));
  }
  return out;
}

}  // namespace ipsx::harness
