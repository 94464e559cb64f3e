#include "ipsx/modularizer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ipsx {

// ---------------------------------------------------------------------------
// Schema text

std::string SchemaType::to_string() const {
  auto head_text = [&]() -> std::string {
    switch (head) {
      case Head::Prim: return std::string(ipsx::to_string(prim));
      case Head::Named: return name;
      case Head::List: return "List";
      case Head::Pair: return "Pair";
      case Head::Maybe: return "Maybe";
    }
    return "?";
  };
  if (head == Head::List && args.size() == 1) return "[" + args[0].to_string() + "]";
  if (head == Head::Maybe && args.size() == 1) return "?" + args[0].to_string();
  if (head == Head::Pair && args.size() == 2) return "(" + args[0].to_string() + "," + args[1].to_string() + ")";
  if (args.empty()) return head_text();
  std::string out = "(" + head_text();
  for (const auto& a : args) out += " " + a.to_string();
  return out + ")";
}

const TypeDef* Schema::find_type(std::string_view type_name) const {
  for (const auto& t : types) {
    if (t.name == type_name) return &t;
  }
  return nullptr;
}

std::size_t Schema::constructor_count() const {
  std::size_t n = 0;
  for (const auto& t : types) n += t.ctors.size();
  return n;
}

namespace {

class SchemaLexer {
 public:
  SchemaLexer(std::string_view text, int line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SchemaSyntax, "line " + std::to_string(line_) + ": " + what);
  }

  std::string peek() {
    std::size_t save = pos_;
    std::string tok = next();
    pos_ = save;
    return tok;
  }

  std::string next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return "";
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      return std::string(text_.substr(start, pos_ - start));
    }
    if (std::string_view("[](),?|=").find(c) != std::string_view::npos) {
      ++pos_;
      return std::string(1, c);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void expect(const std::string& tok) {
    std::string got = next();
    if (got != tok) fail("expected '" + tok + "', got '" + got + "'");
  }

  bool at_end() { return peek().empty(); }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

bool is_type_start(const std::string& tok) {
  return !tok.empty() && (tok == "[" || tok == "(" || tok == "?" || std::isalpha(static_cast<unsigned char>(tok[0])) ||
                          tok[0] == '_');
}

SchemaType parse_type(SchemaLexer& lex);

SchemaType parse_atom_word(const std::string& word) {
  if (word == "Int") return SchemaType::primitive(PrimType::Int);
  if (word == "Bool") return SchemaType::primitive(PrimType::Bool);
  if (word == "String") return SchemaType::primitive(PrimType::String);
  if (word == "List") return SchemaType{SchemaType::Head::List, PrimType::Int, {}, {}};
  if (word == "Pair") return SchemaType{SchemaType::Head::Pair, PrimType::Int, {}, {}};
  if (word == "Maybe") return SchemaType{SchemaType::Head::Maybe, PrimType::Int, {}, {}};
  return SchemaType::named(word);
}

SchemaType parse_type(SchemaLexer& lex) {
  std::string tok = lex.next();
  if (tok == "[") {
    SchemaType elem = parse_type(lex);
    lex.expect("]");
    return SchemaType::list(std::move(elem));
  }
  if (tok == "?") return SchemaType::maybe(parse_type(lex));
  if (tok == "(") {
    SchemaType first = parse_type(lex);
    if (lex.peek() == ",") {
      lex.next();
      SchemaType second = parse_type(lex);
      lex.expect(")");
      return SchemaType::pair(std::move(first), std::move(second));
    }
    std::vector<SchemaType> args;
    while (lex.peek() != ")") {
      if (!is_type_start(lex.peek())) lex.fail("expected a type or ')'");
      args.push_back(parse_type(lex));
    }
    lex.next();
    if (args.empty()) return first;
    return SchemaType::apply(std::move(first), std::move(args));
  }
  if (tok.empty() || !is_type_start(tok)) lex.fail("expected a type, got '" + tok + "'");
  return parse_atom_word(tok);
}

void parse_alternatives(SchemaLexer& lex, TypeDef& def) {
  while (!lex.at_end()) {
    if (lex.peek() == "|") {
      lex.next();
      continue;
    }
    std::string ctor = lex.next();
    if (ctor.empty() || !std::isupper(static_cast<unsigned char>(ctor[0]))) {
      lex.fail("expected a constructor name, got '" + ctor + "'");
    }
    ConstructorDecl decl{ctor, {}};
    while (!lex.at_end() && lex.peek() != "|") decl.arg_types.push_back(parse_type(lex));
    def.ctors.push_back(std::move(decl));
  }
}

}  // namespace

Schema parse_schema(std::string_view text, std::string_view default_name) {
  Schema schema;
  schema.name = std::string(default_name);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  TypeDef* current = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    SchemaLexer lex(line, lineno);
    if (lex.at_end()) continue;
    std::string head = lex.peek();
    if (head == "|") {
      if (!current) lex.fail("continuation line outside a type definition");
      parse_alternatives(lex, *current);
      continue;
    }
    lex.next();
    if (head == "schema") {
      schema.name = lex.next();
      if (schema.name.empty()) lex.fail("expected schema name");
      current = nullptr;
    } else if (head == "root") {
      schema.root = lex.next();
      if (schema.root.empty()) lex.fail("expected root type name");
      current = nullptr;
    } else if (head == "type") {
      TypeDef def{lex.next(), {}};
      if (def.name.empty()) lex.fail("expected type name");
      lex.expect("=");
      parse_alternatives(lex, def);
      schema.types.push_back(std::move(def));
      current = &schema.types.back();
    } else {
      lex.fail("expected 'schema', 'root' or 'type', got '" + head + "'");
    }
  }
  if (schema.root.empty() && !schema.types.empty()) schema.root = schema.types.front().name;
  return schema;
}

std::string print_schema(const Schema& schema) {
  std::ostringstream out;
  out << "schema " << schema.name << "\n";
  out << "root " << schema.root << "\n";
  for (const auto& t : schema.types) {
    out << "type " << t.name << " =";
    for (std::size_t i = 0; i < t.ctors.size(); ++i) {
      out << (i ? " |" : "") << " " << t.ctors[i].name;
      for (const auto& a : t.ctors[i].arg_types) out << " " << a.to_string();
    }
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation: the kinding judgement restricted to a fixed set of functors.

std::string_view to_string(SchemaViolation::Code code) {
  switch (code) {
    case SchemaViolation::Code::UnknownTypeName: return "UnknownTypeName";
    case SchemaViolation::Code::BadArity: return "BadArity";
    case SchemaViolation::Code::PrimitiveApplied: return "PrimitiveApplied";
    case SchemaViolation::Code::DuplicateConstructor: return "DuplicateConstructor";
    case SchemaViolation::Code::DuplicateType: return "DuplicateType";
    case SchemaViolation::Code::BadRoot: return "BadRoot";
  }
  return "?";
}

bool ValidationReport::has(SchemaViolation::Code code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const auto& v) { return v.code == code; });
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& v : violations) {
    out += std::string(ipsx::to_string(v.code)) + " [" + v.rule + "] at " + v.where + ": " + v.message + "\n";
  }
  return out;
}

namespace {

void check_kind(const Schema& schema, const SchemaType& type, const std::string& where,
                std::vector<SchemaViolation>& out) {
  using Code = SchemaViolation::Code;
  using Head = SchemaType::Head;
  auto expect_args = [&](std::size_t n, const char* rule) {
    if (type.args.size() != n) {
      out.push_back({Code::BadArity, rule, where,
                     type.to_string() + " applies a functor of arity " + std::to_string(n) + " to " +
                         std::to_string(type.args.size()) + " argument(s)"});
    }
  };
  switch (type.head) {
    case Head::Prim:
      if (!type.args.empty()) {
        out.push_back({Code::PrimitiveApplied, "PRIM", where, type.to_string() + " applies a primitive of kind *"});
      }
      break;
    case Head::Named:
      if (!schema.find_type(type.name)) {
        out.push_back({Code::UnknownTypeName, "CON", where, "type " + type.name + " is not declared"});
      } else if (!type.args.empty()) {
        out.push_back({Code::BadArity, "APP", where, "type " + type.name + " has kind * and takes no arguments"});
      }
      break;
    case Head::List: expect_args(1, "LIST"); break;
    case Head::Maybe: expect_args(1, "MAYBE"); break;
    case Head::Pair: expect_args(2, "PAIR"); break;
  }
  for (const auto& a : type.args) check_kind(schema, a, where, out);
}

}  // namespace

ValidationReport validate_schema(const Schema& schema) {
  using Code = SchemaViolation::Code;
  ValidationReport report;
  std::set<std::string> types;
  std::set<std::string> ctors;
  for (const auto& t : schema.types) {
    if (!types.insert(t.name).second) {
      report.violations.push_back({Code::DuplicateType, "CON", t.name, "type declared twice"});
    }
  }
  if (!schema.find_type(schema.root)) {
    report.violations.push_back({Code::BadRoot, "CON", schema.root, "root type is not declared"});
  }
  for (const auto& t : schema.types) {
    for (const auto& c : t.ctors) {
      if (!ctors.insert(c.name).second) {
        report.violations.push_back({Code::DuplicateConstructor, "CON", c.name, "constructor declared twice"});
      }
      for (std::size_t i = 0; i < c.arg_types.size(); ++i) {
        check_kind(schema, c.arg_types[i], t.name + "." + c.name + "#" + std::to_string(i), report.violations);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// GenericValue text

namespace gv {

std::string to_string(const GenericValue& v) {
  switch (v.tag) {
    case GenericValue::Tag::Prim:
      if (const auto* i = std::get_if<std::int64_t>(&v.prim)) return std::to_string(*i);
      if (const auto* b = std::get_if<bool>(&v.prim)) return *b ? "true" : "false";
      return "\"" + std::get<std::string>(v.prim) + "\"";
    case GenericValue::Tag::Ctor: {
      if (v.items.empty()) return v.ctor;
      std::string out = "(" + v.ctor;
      for (const auto& i : v.items) out += " " + to_string(i);
      return out + ")";
    }
    case GenericValue::Tag::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.items.size(); ++i) out += (i ? ", " : "") + to_string(v.items[i]);
      return out + "]";
    }
    case GenericValue::Tag::Pair: return "(" + to_string(v.items[0]) + ", " + to_string(v.items[1]) + ")";
    case GenericValue::Tag::Option: return v.items.empty() ? "Nothing" : "(Just " + to_string(v.items[0]) + ")";
  }
  return "?";
}

}  // namespace gv

// ---------------------------------------------------------------------------
// Modularization

std::string kind_name_for(const Schema& schema, std::string_view ctor) {
  return schema.name + "." + std::string(ctor);
}

std::string sort_name_for(const Schema& schema, std::string_view type_name) {
  return schema.name + "." + std::string(type_name) + "L";
}

const Sort& ModularizedLanguage::sort_of(std::string_view type_name) const {
  auto it = sort_of_.find(type_name);
  if (it == sort_of_.end()) throw Error(ErrorCode::NonConformingValue, "unknown type " + std::string(type_name));
  return it->second;
}

const std::vector<KindRef>& ModularizedLanguage::fragment_of(std::string_view type_name) const {
  auto it = fragment_of_.find(type_name);
  if (it == fragment_of_.end()) throw Error(ErrorCode::NonConformingValue, "unknown type " + std::string(type_name));
  return it->second;
}

const CtorInfo& ModularizedLanguage::ctor_info(std::string_view ctor_name) const {
  auto it = ctors_.find(ctor_name);
  if (it == ctors_.end()) {
    throw Error(ErrorCode::NonConformingValue, "unknown constructor " + std::string(ctor_name));
  }
  return it->second;
}

const CtorInfo* ModularizedLanguage::find_kind(const NodeKind& kind) const {
  auto it = kind_to_ctor_.find(kind.name);
  if (it == kind_to_ctor_.end()) return nullptr;
  const CtorInfo& info = ctors_.at(it->second);
  return same_kind(*info.kind, kind) ? &info : nullptr;
}

namespace {

Sort translate_with(const std::map<std::string, Sort, std::less<>>& sort_of, const SchemaType& type,
                    bool in_container) {
  using Head = SchemaType::Head;
  switch (type.head) {
    case Head::Prim:
      if (!in_container) throw Error(ErrorCode::InvalidSchema, "primitive has no sort outside a container");
      return builtin::boxed_sort(type.prim);
    case Head::Named: return sort_of.at(type.name);
    case Head::List: return Sort::list_of(translate_with(sort_of, type.args.at(0), true));
    case Head::Maybe: return Sort::option_of(translate_with(sort_of, type.args.at(0), true));
    case Head::Pair:
      return Sort::pair_of(translate_with(sort_of, type.args.at(0), true),
                           translate_with(sort_of, type.args.at(1), true));
  }
  throw Error(ErrorCode::InvalidSchema, "bad type");
}

}  // namespace

Sort ModularizedLanguage::translate(const SchemaType& type) const { return translate_with(sort_of_, type, false); }

ModularizedLanguage modularize_schema(const Schema& schema) {
  ValidationReport report = validate_schema(schema);
  if (!report.ok()) throw Error(ErrorCode::InvalidSchema, report.to_string());

  ModularizedLanguage lang;
  lang.schema_ = schema;
  for (const auto& t : schema.types) lang.sort_of_.emplace(t.name, Sort::atomic(sort_name_for(schema, t.name)));

  std::vector<KindRef> all;
  for (const auto& t : schema.types) {
    auto& fragment = lang.fragment_of_[t.name];
    for (const auto& c : t.ctors) {
      CtorInfo info{t.name, c, nullptr, {}};
      std::vector<PrimType> payloads;
      std::vector<Sort> children;
      for (const auto& arg : c.arg_types) {
        if (arg.head == SchemaType::Head::Prim) {
          info.slots.push_back({true, payloads.size()});
          payloads.push_back(arg.prim);
        } else {
          info.slots.push_back({false, children.size()});
          children.push_back(lang.translate(arg));
        }
      }
      info.kind = make_kind(kind_name_for(schema, c.name), std::move(payloads), std::move(children),
                            lang.sort_of_.at(t.name));
      fragment.push_back(info.kind);
      all.push_back(info.kind);
      lang.kind_to_ctor_.emplace(info.kind->name, c.name);
      lang.ctors_.emplace(c.name, std::move(info));
    }
  }
  lang.signature_ = Signature(schema.name, all);
  return lang;
}

namespace {

[[noreturn]] void nonconforming(const std::string& what) { throw Error(ErrorCode::NonConformingValue, what); }

Term encode_ctor(const ModularizedLanguage& lang, const GenericValue& value);

Term encode(const ModularizedLanguage& lang, const SchemaType& type, const GenericValue& value) {
  using Head = SchemaType::Head;
  using Tag = GenericValue::Tag;
  switch (type.head) {
    case Head::Prim:
      if (value.tag != Tag::Prim || prim_type_of(value.prim) != type.prim) {
        nonconforming("expected " + type.to_string() + ", got " + gv::to_string(value));
      }
      return box_payload(value.prim);
    case Head::Named: {
      if (value.tag != Tag::Ctor) nonconforming("expected " + type.name + ", got " + gv::to_string(value));
      if (lang.ctor_info(value.ctor).type_name != type.name) {
        nonconforming("constructor " + value.ctor + " does not build " + type.name);
      }
      return encode_ctor(lang, value);
    }
    case Head::List: {
      if (value.tag != Tag::List) nonconforming("expected a list, got " + gv::to_string(value));
      std::vector<Term> items;
      items.reserve(value.items.size());
      for (const auto& v : value.items) items.push_back(encode(lang, type.args[0], v));
      return build_list(translate_with(lang.sorts(), type.args[0], true), items);
    }
    case Head::Maybe: {
      if (value.tag != Tag::Option || value.items.size() > 1) {
        nonconforming("expected an option, got " + gv::to_string(value));
      }
      const Sort elem = translate_with(lang.sorts(), type.args[0], true);
      if (value.items.empty()) return make_option(elem, std::nullopt);
      return make_option(elem, encode(lang, type.args[0], value.items[0]));
    }
    case Head::Pair:
      if (value.tag != Tag::Pair || value.items.size() != 2) {
        nonconforming("expected a pair, got " + gv::to_string(value));
      }
      return make_pair_term(encode(lang, type.args[0], value.items[0]), encode(lang, type.args[1], value.items[1]));
  }
  nonconforming("bad type");
}

Term encode_ctor(const ModularizedLanguage& lang, const GenericValue& value) {
  if (value.tag != GenericValue::Tag::Ctor) nonconforming("expected a constructor value");
  const CtorInfo& info = lang.ctor_info(value.ctor);
  const auto& args = info.decl.arg_types;
  if (value.items.size() != args.size()) {
    nonconforming(value.ctor + " expects " + std::to_string(args.size()) + " argument(s), got " +
                  std::to_string(value.items.size()));
  }
  std::vector<Payload> payloads(info.kind->payloads.size());
  std::vector<Term> children;
  children.reserve(info.kind->child_sorts.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (info.slots[i].payload) {
      const auto& v = value.items[i];
      if (v.tag != GenericValue::Tag::Prim || prim_type_of(v.prim) != args[i].prim) {
        nonconforming(value.ctor + " argument " + std::to_string(i) + " must be " + args[i].to_string());
      }
      payloads[info.slots[i].index] = v.prim;
    } else {
      children.push_back(encode(lang, args[i], value.items[i]));
    }
  }
  return mk_term(info.kind, std::move(payloads), std::move(children));
}

[[noreturn]] void foreign(const Term& term) {
  throw Error(ErrorCode::ForeignKind, term.name() + " (sort " + term.sort().key() + ") is not a kind of this language");
}

GenericValue decode_ctor(const ModularizedLanguage& lang, const Term& term);

GenericValue decode(const ModularizedLanguage& lang, const SchemaType& type, const Term& term) {
  using Head = SchemaType::Head;
  switch (type.head) {
    case Head::Prim:
      if (!builtin::is_builtin(term.kind()) || term.payloads().size() != 1) foreign(term);
      return gv::prim(unbox_payload(term));
    case Head::Named: return decode_ctor(lang, term);
    case Head::List: {
      if (!term.is(builtin::kCons) && !term.is(builtin::kNil)) foreign(term);
      std::vector<GenericValue> items;
      for (const auto& t : extract_list(term)) items.push_back(decode(lang, type.args[0], t));
      return gv::list(std::move(items));
    }
    case Head::Maybe:
      if (term.is(builtin::kNothing)) return gv::none();
      if (!term.is(builtin::kJust)) foreign(term);
      return gv::some(decode(lang, type.args[0], term.child(0)));
    case Head::Pair:
      if (!term.is(builtin::kPair)) foreign(term);
      return gv::pair(decode(lang, type.args[0], term.child(0)), decode(lang, type.args[1], term.child(1)));
  }
  foreign(term);
}

GenericValue decode_ctor(const ModularizedLanguage& lang, const Term& term) {
  const CtorInfo* info = lang.find_kind(term.kind());
  if (!info) foreign(term);
  const auto& args = info->decl.arg_types;
  std::vector<GenericValue> items;
  items.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (info->slots[i].payload) {
      items.push_back(gv::prim(term.payloads()[info->slots[i].index]));
    } else {
      items.push_back(decode(lang, args[i], term.child(info->slots[i].index)));
    }
  }
  return gv::ctor(info->decl.name, std::move(items));
}

}  // namespace

Term to_modular(const ModularizedLanguage& lang, const GenericValue& value) { return encode_ctor(lang, value); }

GenericValue from_modular(const ModularizedLanguage& lang, const Term& term) { return decode_ctor(lang, term); }

Signature sum_signatures(std::string name, const std::vector<Signature>& parts, const std::vector<std::string>& minus,
                         const std::vector<KindRef>& plus) {
  std::map<std::string, KindRef, std::less<>> kinds;
  for (const auto& part : parts) {
    for (const auto& [kname, k] : part.kinds()) {
      auto [it, inserted] = kinds.emplace(kname, k);
      if (!inserted && !same_kind(*it->second, *k)) {
        throw Error(ErrorCode::DuplicateKind, "parts disagree on kind " + kname);
      }
    }
  }
  for (const auto& m : minus) {
    if (kinds.erase(m) == 0) throw Error(ErrorCode::RemovedKindNotPresent, m);
  }
  for (const auto& k : plus) {
    if (!kinds.emplace(k->name, k).second) throw Error(ErrorCode::DuplicateKind, k->name + " is already present");
  }
  std::vector<KindRef> all;
  all.reserve(kinds.size());
  for (const auto& [_, k] : kinds) all.push_back(k);
  return Signature(std::move(name), all);
}

std::string describe_kind(const NodeKind& kind) {
  std::string out = kind.name + " ::";
  for (PrimType p : kind.payloads) out += " " + std::string(to_string(p)) + " ->";
  for (const auto& s : kind.child_sorts) out += " " + s.key() + " ->";
  return out + " " + kind.produced.key();
}

std::string dump_modularized(const ModularizedLanguage& lang) {
  std::ostringstream out;
  const Schema& schema = lang.schema();
  out << "schema " << schema.name << "\n";
  out << "root " << lang.sort_of(schema.root).key() << "\n";
  for (const auto& t : schema.types) out << "sort " << t.name << " = " << lang.sort_of(t.name).key() << "\n";
  for (const auto& t : schema.types) {
    for (const auto& k : lang.fragment_of(t.name)) out << "kind " << describe_kind(*k) << "\n";
  }
  return out.str();
}

}  // namespace ipsx
