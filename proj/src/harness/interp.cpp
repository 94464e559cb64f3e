// One tree-walking interpreter over the three language ASTs. The languages
// share most constructor names, so a dialect flag selects the few places
// where their semantics part ways.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "ipsx/harness.hpp"

namespace ipsx::harness {

std::string to_string(const Event& e) {
  switch (e.kind) {
    case Event::Kind::Print: return "print " + e.text;
    case Event::Kind::Call: return "call " + e.text;
    case Event::Kind::Return: return "return " + e.text;
    case Event::Kind::Trap: return "trap " + e.text;
    case Event::Kind::Mark: return "mark " + e.text;
  }
  return {};
}

std::string to_string(const Trace& t) {
  std::string out;
  for (const auto& e : t) out += to_string(e) + "\n";
  return out;
}

Trace erase_markers(const Trace& t) {
  Trace out;
  for (const auto& e : t) {
    if (e.kind != Event::Kind::Mark) out.push_back(e);
  }
  return out;
}

namespace {

enum class Dialect { C, JS, Lua };

struct Value;
using Array = std::vector<Value>;
using Table = std::map<std::int64_t, Value>;
using Object = std::map<std::string, Value>;

struct Value {
  enum class Kind { Undef, Nil, Bool, Int, Str, Array, Table, Object };
  Kind kind = Kind::Undef;
  std::int64_t i = 0;
  std::string s;
  std::shared_ptr<Array> arr;
  std::shared_ptr<Table> tab;
  std::shared_ptr<Object> obj;

  static Value make(Kind k, std::int64_t i = 0) {
    Value v;
    v.kind = k;
    v.i = i;
    return v;
  }
  static Value undef() { return {}; }
  static Value nil() { return make(Kind::Nil); }
  static Value boolean(bool b) { return make(Kind::Bool, b ? 1 : 0); }
  static Value integer(std::int64_t v) { return make(Kind::Int, v); }
  static Value string(std::string text) {
    Value v = make(Kind::Str);
    v.s = std::move(text);
    return v;
  }
  static Value array(Array a) {
    Value v = make(Kind::Array);
    v.arr = std::make_shared<Array>(std::move(a));
    return v;
  }
  static Value table(Table t) {
    Value v = make(Kind::Table);
    v.tab = std::make_shared<Table>(std::move(t));
    return v;
  }
  static Value object(Object o) {
    Value v = make(Kind::Object);
    v.obj = std::make_shared<Object>(std::move(o));
    return v;
  }
};

std::string show(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Undef: return "undefined";
    case Value::Kind::Nil: return "nil";
    case Value::Kind::Bool: return v.i ? "true" : "false";
    case Value::Kind::Int: return std::to_string(v.i);
    case Value::Kind::Str: return v.s;
    case Value::Kind::Array: {
      std::string out = "[";
      for (std::size_t k = 0; k < v.arr->size(); ++k) out += (k ? "," : "") + show((*v.arr)[k]);
      return out + "]";
    }
    case Value::Kind::Table: {
      std::string out = "{";
      bool first = true;
      for (const auto& [key, val] : *v.tab) {
        out += (first ? "" : ",") + std::to_string(key) + "=" + show(val);
        first = false;
      }
      return out + "}";
    }
    case Value::Kind::Object: {
      std::string out = "{";
      bool first = true;
      for (const auto& [key, val] : *v.obj) {
        out += (first ? "" : ",") + key + ":" + show(val);
        first = false;
      }
      return out + "}";
    }
  }
  return {};
}

struct Trap {
  std::string kind;
};

enum class Flow { Normal, Break, Continue, Return };

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

const std::string& name_of(const GenericValue& ident) { return ident[0].as_str(); }

// C variables carry their declared type so stores convert as C does.
struct Slot {
  Value v;
  std::string type;
};

class Interp {
 public:
  Interp(Dialect d, const GenericValue& program, const RunConfig& cfg)
      : d_(d), program_(program), cfg_(cfg), fuel_(cfg.fuel) {
    for (const auto& f : program_[0].items) funcs_[name_of(d_ == Dialect::C ? f[1] : f[0])] = &f;
    if (cfg.coverage_slots > 0) {
      std::size_t n = static_cast<std::size_t>(cfg.coverage_slots);
      if (d_ == Dialect::C) {
        Value cov = Value::array(Array(n, Value::boolean(false)));
        cov_ = cov.arr.get();
        globals_["cov"] = {cov, "int[]"};
      } else if (d_ == Dialect::JS) {
        Value cov = Value::array(Array(n, Value::boolean(false)));
        cov_ = cov.arr.get();
        globals_["TC"] = {Value::object({{"cov", cov}}), ""};
      } else {
        Table t;
        for (std::size_t k = 0; k < n; ++k) t[static_cast<std::int64_t>(k)] = Value::boolean(false);
        Value cov = Value::table(std::move(t));
        cov_tab_ = cov.tab.get();
        globals_["TC"] = {Value::object({{"cov", cov}}), ""};
      }
    }
  }

  Trace run() {
    try {
      if (cfg_.entry) {
        auto it = funcs_.find(*cfg_.entry);
        if (it == funcs_.end()) throw Trap{"unbound"};
        std::vector<Value> args;
        for (auto a : cfg_.args) args.push_back(Value::integer(a));
        Value r = call_user(*it->second, args);
        trace_.push_back({Event::Kind::Return, *cfg_.entry + " " + show(r)});
      } else {
        std::uint64_t k = 0;
        for (const auto& f : program_[0].items) {
          const std::string& name = name_of(d_ == Dialect::C ? f[1] : f[0]);
          std::vector<Value> args;
          const auto& params = d_ == Dialect::C ? f[2].items : f[1].items;
          for (std::size_t j = 0; j < params.size(); ++j) {
            std::int64_t a = static_cast<std::int64_t>(mix64(cfg_.input_seed * 1000003ULL + k * 131ULL + j) % 16) - 5;
            args.push_back(argument(params[j], a));
          }
          Value r = call_user(f, args);
          trace_.push_back({Event::Kind::Return, name + " " + show(r)});
          ++k;
        }
      }
    } catch (const Trap& t) {
      trace_.push_back({Event::Kind::Trap, t.kind});
    }
    return std::move(trace_);
  }

 private:
  Value argument(const GenericValue& param, std::int64_t a) const {
    if (d_ != Dialect::C) return Value::integer(a);
    const std::string& type = param[0].ctor;
    if (type == "TBool") return Value::boolean(a % 2 != 0);
    if (type == "TIntArray") return Value::array({Value::integer(a), Value::integer(a + 1)});
    return Value::integer(a);
  }

  void burn() {
    if (--fuel_ < 0) throw Trap{"fuel"};
  }

  // ---- environments

  Slot* lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    auto g = globals_.find(name);
    return g == globals_.end() ? nullptr : &g->second;
  }

  Value read_var(const std::string& name) {
    Slot* s = lookup(name);
    if (!s) {
      if (d_ == Dialect::Lua) return Value::nil();
      throw Trap{"unbound"};
    }
    if (d_ == Dialect::C && s->v.kind == Value::Kind::Undef) throw Trap{"undef"};
    return s->v;
  }

  void write_var(const std::string& name, Value v) {
    Slot* s = lookup(name);
    if (!s) {
      if (d_ != Dialect::Lua) throw Trap{"unbound"};
      globals_[name] = {std::move(v), ""};
      return;
    }
    s->v = convert(s->type, std::move(v));
  }

  void declare(const std::string& name, Value v, std::string type = {}) {
    scopes_.back()[name] = {convert(type, std::move(v)), std::move(type)};
  }

  static Value convert(const std::string& type, Value v) {
    if (type == "TInt" && v.kind == Value::Kind::Bool) return Value::integer(v.i);
    if (type == "TBool" && v.kind == Value::Kind::Int) return Value::boolean(v.i != 0);
    return v;
  }

  // ---- values

  bool truthy(const Value& v) const {
    switch (d_) {
      case Dialect::C:
        if (v.kind == Value::Kind::Int || v.kind == Value::Kind::Bool) return v.i != 0;
        if (v.kind == Value::Kind::Undef) throw Trap{"undef"};
        return true;
      case Dialect::JS:
        if (v.kind == Value::Kind::Int || v.kind == Value::Kind::Bool) return v.i != 0;
        if (v.kind == Value::Kind::Undef || v.kind == Value::Kind::Nil) return false;
        if (v.kind == Value::Kind::Str) return !v.s.empty();
        return true;
      case Dialect::Lua:
        if (v.kind == Value::Kind::Nil) return false;
        if (v.kind == Value::Kind::Bool) return v.i != 0;
        return true;
    }
    return true;
  }

  std::int64_t num(const Value& v) const {
    if (v.kind == Value::Kind::Int) return v.i;
    if (v.kind == Value::Kind::Bool && d_ != Dialect::Lua) return v.i;
    throw Trap{"type"};
  }

  Value logical(bool b) const { return d_ == Dialect::C ? Value::integer(b ? 1 : 0) : Value::boolean(b); }

  bool equal(const Value& a, const Value& b) const {
    bool an = a.kind == Value::Kind::Int || a.kind == Value::Kind::Bool;
    bool bn = b.kind == Value::Kind::Int || b.kind == Value::Kind::Bool;
    if (d_ != Dialect::Lua && an && bn) return a.i == b.i;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Value::Kind::Undef:
      case Value::Kind::Nil: return true;
      case Value::Kind::Bool:
      case Value::Kind::Int: return a.i == b.i;
      case Value::Kind::Str: return a.s == b.s;
      case Value::Kind::Array: return a.arr == b.arr;
      case Value::Kind::Table: return a.tab == b.tab;
      case Value::Kind::Object: return a.obj == b.obj;
    }
    return false;
  }

  Value arith(const std::string& op, const Value& a, const Value& b) const {
    if (op == "+" && d_ == Dialect::JS && (a.kind == Value::Kind::Str || b.kind == Value::Kind::Str)) {
      return Value::string(show(a) + show(b));
    }
    std::int64_t x = num(a), y = num(b);
    auto ux = static_cast<std::uint64_t>(x), uy = static_cast<std::uint64_t>(y);
    if (op == "+") return Value::integer(wrap(ux + uy));
    if (op == "-") return Value::integer(wrap(ux - uy));
    if (op == "*") return Value::integer(wrap(ux * uy));
    if (op == "<") return logical(x < y);
    if (op == "<=") return logical(x <= y);
    if (op == ">") return logical(x > y);
    if (op == ">=") return logical(x >= y);
    if (y == 0) throw Trap{"div0"};
    bool overflow = x == std::numeric_limits<std::int64_t>::min() && y == -1;
    if (op == "/") return Value::integer(overflow ? x : x / y);
    if (op == "%") return Value::integer(overflow ? 0 : x % y);
    if (op == "//") {
      if (overflow) return Value::integer(x);
      std::int64_t q = x / y;
      if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
      return Value::integer(q);
    }
    throw Trap{"type"};
  }

  Value lua_mod(const Value& a, const Value& b) const {
    std::int64_t x = num(a), y = num(b);
    if (y == 0) throw Trap{"div0"};
    if (x == std::numeric_limits<std::int64_t>::min() && y == -1) return Value::integer(0);
    std::int64_t r = x % y;
    if (r != 0 && ((r < 0) != (y < 0))) r += y;
    return Value::integer(r);
  }

  // ---- expressions

  Value eval(const GenericValue& e) {
    const std::string& c = e.ctor;
    if (c == "IntLit") return Value::integer(e[0].as_int());
    if (c == "BoolLit") return Value::boolean(e[0].as_bool());
    if (c == "StrLit") return Value::string(e[0].as_str());
    if (c == "Nil") return Value::nil();
    if (c == "UndefinedLit") return Value::undef();
    if (c == "Var") return read_var(name_of(e[0]));
    if (c == "Index") {
      Value base = eval(e[0]);
      Value key = eval(e[1]);
      return index_read(base, key);
    }
    if (c == "Member") {
      Value base = eval(e[0]);
      if (base.kind != Value::Kind::Object) throw Trap{"type"};
      auto it = base.obj->find(name_of(e[1]));
      if (it == base.obj->end()) return d_ == Dialect::Lua ? Value::nil() : Value::undef();
      return it->second;
    }
    if (c == "ArrayLit") {
      Array a;
      for (const auto& x : e[0].items) a.push_back(eval(x));
      return Value::array(std::move(a));
    }
    if (c == "TableLit") {
      Table t;
      std::int64_t k = 1;
      for (const auto& x : e[0].items) t[k++] = eval(x);
      return Value::table(std::move(t));
    }
    if (c == "Call") {
      std::vector<Value> args;
      for (const auto& x : e[1].items) args.push_back(eval(x));
      return call(name_of(e[0]), args);
    }
    if (c == "Unary") {
      const std::string& op = e[0].as_str();
      Value v = eval(e[1]);
      if (op == "-") return Value::integer(wrap(0ULL - static_cast<std::uint64_t>(num(v))));
      return logical(!truthy(v));
    }
    if (c == "Binary") {
      const std::string& op = e[0].as_str();
      if (op == "&&" || op == "||" || op == "and" || op == "or") {
        bool is_and = op == "&&" || op == "and";
        Value a = eval(e[1]);
        bool ta = truthy(a);
        if (is_and != ta) return d_ == Dialect::C ? logical(ta) : a;
        Value b = eval(e[2]);
        return d_ == Dialect::C ? logical(truthy(b)) : b;
      }
      Value a = eval(e[1]);
      Value b = eval(e[2]);
      if (op == "==") return logical(equal(a, b));
      if (op == "!=" || op == "~=") return logical(!equal(a, b));
      if (op == "%" && d_ == Dialect::Lua) return lua_mod(a, b);
      return arith(op, a, b);
    }
    if (c == "AssignExpr") {
      Target t = target(e[0]);
      Value v = eval(e[1]);
      return store(t, std::move(v));
    }
    throw Trap{"type"};
  }

  Value index_read(const Value& base, const Value& key) {
    if (base.kind == Value::Kind::Array) {
      std::int64_t k = num(key);
      if (k < 0 || k >= static_cast<std::int64_t>(base.arr->size())) {
        if (d_ == Dialect::C) throw Trap{"bounds"};
        return Value::undef();
      }
      return (*base.arr)[static_cast<std::size_t>(k)];
    }
    if (base.kind == Value::Kind::Table) {
      if (key.kind != Value::Kind::Int) throw Trap{"type"};
      auto it = base.tab->find(key.i);
      return it == base.tab->end() ? Value::nil() : it->second;
    }
    throw Trap{"type"};
  }

  // An assignment target with its container and key already evaluated.
  struct Target {
    std::string var;
    Value base;
    Value key;
  };

  Target target(const GenericValue& e) {
    if (e.is_ctor("Var")) return {name_of(e[0]), {}, {}};
    if (e.is_ctor("Index")) {
      Value base = eval(e[0]);
      Value key = eval(e[1]);
      return {"", std::move(base), std::move(key)};
    }
    if (e.is_ctor("Member")) {
      Value base = eval(e[0]);
      return {"", std::move(base), Value::string(name_of(e[1]))};
    }
    throw Trap{"type"};
  }

  Value store(const Target& t, Value v) {
    if (!t.var.empty()) {
      write_var(t.var, v);
      return d_ == Dialect::C ? read_var(t.var) : v;
    }
    const Value& base = t.base;
    if (base.kind == Value::Kind::Array) {
      std::int64_t k = num(t.key);
      auto size = static_cast<std::int64_t>(base.arr->size());
      if (k < 0 || k > size || (k == size && d_ == Dialect::C)) throw Trap{"bounds"};
      if (base.arr.get() == cov_) trace_.push_back({Event::Kind::Mark, std::to_string(k)});
      if (k == size) {
        base.arr->push_back(v);
      } else {
        (*base.arr)[static_cast<std::size_t>(k)] = v;
      }
      return v;
    }
    if (base.kind == Value::Kind::Table) {
      if (t.key.kind != Value::Kind::Int) throw Trap{"type"};
      if (base.tab.get() == cov_tab_) trace_.push_back({Event::Kind::Mark, std::to_string(t.key.i)});
      (*base.tab)[t.key.i] = v;
      return v;
    }
    if (base.kind == Value::Kind::Object && t.key.kind == Value::Kind::Str) {
      (*base.obj)[t.key.s] = v;
      return v;
    }
    throw Trap{"type"};
  }

  Value call(const std::string& name, const std::vector<Value>& args) {
    if (name == "print") {
      std::string text;
      for (std::size_t k = 0; k < args.size(); ++k) text += (k ? " " : "") + show(args[k]);
      trace_.push_back({Event::Kind::Print, text});
      return d_ == Dialect::C ? Value::integer(0) : d_ == Dialect::JS ? Value::undef() : Value::nil();
    }
    if (name == "fail") throw Trap{"fail"};
    if (name == "array" && d_ == Dialect::C) return Value::array(args);
    auto it = funcs_.find(name);
    if (it != funcs_.end()) return call_user(*it->second, args);
    burn();
    std::string text = name + "(";
    for (std::size_t k = 0; k < args.size(); ++k) text += (k ? "," : "") + show(args[k]);
    text += ")";
    trace_.push_back({Event::Kind::Call, text});
    return Value::integer(static_cast<std::int64_t>(fnv1a(text) % 5));
  }

  Value call_user(const GenericValue& f, const std::vector<Value>& args) {
    burn();
    if (depth_ >= 64) throw Trap{"depth"};
    ++depth_;
    auto saved = std::move(scopes_);
    scopes_.clear();
    scopes_.emplace_back();
    const auto& params = d_ == Dialect::C ? f[2].items : f[1].items;
    for (std::size_t k = 0; k < params.size(); ++k) {
      Value a = k < args.size() ? args[k] : (d_ == Dialect::Lua ? Value::nil() : Value::undef());
      if (d_ == Dialect::C) {
        declare(name_of(params[k][1]), a, params[k][0].ctor);
      } else {
        declare(name_of(params[k]), a);
      }
    }
    const GenericValue& body = d_ == Dialect::C ? f[3] : f[2];
    if (d_ == Dialect::JS) hoist_vars(body);
    Flow fl = block(body, d_ == Dialect::JS);
    Value r = fl == Flow::Return ? ret_ : (d_ == Dialect::Lua ? Value::nil() : Value::undef());
    if (d_ == Dialect::C) r = convert(f[0].ctor, r);
    scopes_ = std::move(saved);
    --depth_;
    return r;
  }

  // JS `var` bindings exist from function entry.
  void hoist_vars(const GenericValue& v) {
    if (v.tag == GenericValue::Tag::Ctor && v.ctor == "VarDeclarator") {
      const std::string& n = name_of(v[0]);
      if (!scopes_.back().count(n)) declare(n, Value::undef());
      return;
    }
    for (const auto& c : v.items) hoist_vars(c);
  }

  // ---- statements

  // `flat` runs the block in the current scope (JS function bodies).
  Flow block(const GenericValue& b, bool flat = false) {
    if (!flat && d_ != Dialect::JS) scopes_.emplace_back();
    const auto& items = d_ == Dialect::JS ? b[1].items : b[0].items;
    Flow fl = Flow::Normal;
    for (const auto& s : items) {
      fl = stmt(s);
      if (fl != Flow::Normal) break;
    }
    if (!flat && d_ != Dialect::JS) scopes_.pop_back();
    return fl;
  }

  Flow body(const GenericValue& s) {
    if (d_ == Dialect::Lua) return block(s);
    if (d_ == Dialect::C && !s.is_ctor("BlockStmt")) {
      scopes_.emplace_back();
      Flow fl = stmt(s);
      scopes_.pop_back();
      return fl;
    }
    return stmt(s);
  }

  Flow stmt(const GenericValue& s) {
    const std::string& c = s.ctor;
    if (c == "StmtItem") return stmt(s[0]);
    if (c == "DeclItem") {
      const GenericValue& decl = s[0];
      const std::string& type = decl[0].ctor;
      for (const auto& d : decl[1].items) {
        const std::string& n = name_of(d[0]);
        declare(n, Value::undef(), type);
        if (const GenericValue* init = d[1].opt()) {
          Value v;
          if (init->is_ctor("ExprInit")) {
            v = eval((*init)[0]);
          } else {
            Array a;
            for (const auto& x : (*init)[0].items) a.push_back(eval(x));
            v = Value::array(std::move(a));
          }
          write_var(n, std::move(v));
        }
      }
      return Flow::Normal;
    }
    if (c == "VarDecl") {
      for (const auto& d : s[0].items) {
        if (const GenericValue* init = d[1].opt()) write_var(name_of(d[0]), eval(*init));
      }
      return Flow::Normal;
    }
    if (c == "Local") {
      std::vector<Value> vals;
      if (const GenericValue* es = s[1].opt()) {
        for (const auto& x : es->items) vals.push_back(eval(x));
      }
      const auto& names = s[0].items;
      for (std::size_t k = 0; k < names.size(); ++k) {
        declare(name_of(names[k]), k < vals.size() ? vals[k] : Value::nil());
      }
      return Flow::Normal;
    }
    if (c == "AssignStmt") {
      std::vector<Target> targets;
      for (const auto& x : s[0].items) targets.push_back(target(x));
      std::vector<Value> vals;
      for (const auto& x : s[1].items) vals.push_back(eval(x));
      for (std::size_t k = 0; k < targets.size(); ++k) store(targets[k], k < vals.size() ? vals[k] : Value::nil());
      return Flow::Normal;
    }
    if (c == "ExprStmt" || c == "CallStmt") {
      eval(s[0]);
      return Flow::Normal;
    }
    if (c == "BlockStmt" || c == "Do") return block(s[0]);
    if (c == "EmptyStmt") return Flow::Normal;
    if (c == "If") {
      if (truthy(eval(s[0]))) return body(s[1]);
      if (const GenericValue* e = s[2].opt()) return body(*e);
      return Flow::Normal;
    }
    if (c == "While") {
      while (true) {
        burn();
        if (!truthy(eval(s[0]))) break;
        Flow fl = body(s[1]);
        if (fl == Flow::Break) break;
        if (fl == Flow::Return) return fl;
      }
      return Flow::Normal;
    }
    if (c == "For") {
      if (const GenericValue* init = s[0].opt()) eval(*init);
      while (true) {
        burn();
        if (const GenericValue* cond = s[1].opt()) {
          if (!truthy(eval(*cond))) break;
        }
        Flow fl = body(s[3]);
        if (fl == Flow::Break) break;
        if (fl == Flow::Return) return fl;
        if (const GenericValue* step = s[2].opt()) eval(*step);
      }
      return Flow::Normal;
    }
    if (c == "NumFor") {
      std::int64_t from = num(eval(s[1]));
      std::int64_t to = num(eval(s[2]));
      std::int64_t step = 1;
      if (const GenericValue* st = s[3].opt()) step = num(eval(*st));
      if (step == 0) throw Trap{"step"};
      for (std::int64_t i = from; step > 0 ? i <= to : i >= to;) {
        burn();
        scopes_.emplace_back();
        declare(name_of(s[0]), Value::integer(i));
        Flow fl = block(s[4]);
        scopes_.pop_back();
        if (fl == Flow::Break) break;
        if (fl == Flow::Return) return fl;
        auto next = static_cast<std::int64_t>(static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(step));
        if ((step > 0 && next < i) || (step < 0 && next > i)) break;
        i = next;
      }
      return Flow::Normal;
    }
    if (c == "Return") {
      if (const GenericValue* e = s[0].opt()) {
        ret_ = eval(*e);
      } else {
        ret_ = d_ == Dialect::Lua ? Value::nil() : Value::undef();
      }
      return Flow::Return;
    }
    if (c == "Break") return Flow::Break;
    if (c == "Continue") return Flow::Continue;
    throw Trap{"type"};
  }

  Dialect d_;
  const GenericValue& program_;
  const RunConfig& cfg_;
  std::int64_t fuel_;
  int depth_ = 0;
  std::map<std::string, const GenericValue*> funcs_;
  std::vector<std::map<std::string, Slot>> scopes_;
  std::map<std::string, Slot> globals_;
  const Array* cov_ = nullptr;
  const Table* cov_tab_ = nullptr;
  Value ret_;
  Trace trace_;
};

Dialect dialect_of(const LanguageDef& lang) {
  if (lang.name() == "minic") return Dialect::C;
  if (lang.name() == "minijs") return Dialect::JS;
  if (lang.name() == "minilua") return Dialect::Lua;
  throw Error(ErrorCode::UnknownLanguage, lang.name());
}

}  // namespace

Trace interpret(const LanguageDef& lang, const GenericValue& program, const RunConfig& cfg) {
  return Interp(dialect_of(lang), program, cfg).run();
}

}  // namespace ipsx::harness
