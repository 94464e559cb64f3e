#pragma once

// Converts a family of mutually recursive algebraic datatypes (a Schema) into a
// sum-of-signatures representation: one fresh sort per type name, one node
// kind per constructor, and a pair of mutually inverse translations between
// neutral values of the original datatypes and sorted terms.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ipsx/term.hpp"

namespace ipsx {

/// A type expression in head-applied form. Well-kinded forms are `Prim`,
/// `Named` with no arguments, `List t`, `Maybe t` and `Pair t u`; anything else
/// is rejected by validate_schema.
struct SchemaType {
  enum class Head { Prim, Named, List, Pair, Maybe };

  Head head = Head::Named;
  PrimType prim = PrimType::Int;
  std::string name;
  std::vector<SchemaType> args;

  static SchemaType primitive(PrimType p) { return {Head::Prim, p, {}, {}}; }
  static SchemaType named(std::string n) { return {Head::Named, PrimType::Int, std::move(n), {}}; }
  static SchemaType list(SchemaType t) { return {Head::List, PrimType::Int, {}, {std::move(t)}}; }
  static SchemaType maybe(SchemaType t) { return {Head::Maybe, PrimType::Int, {}, {std::move(t)}}; }
  static SchemaType pair(SchemaType a, SchemaType b) {
    return {Head::Pair, PrimType::Int, {}, {std::move(a), std::move(b)}};
  }
  /// Raw application; may be ill-kinded.
  static SchemaType apply(SchemaType head, std::vector<SchemaType> args) {
    head.args.insert(head.args.end(), args.begin(), args.end());
    return head;
  }

  std::string to_string() const;
  friend bool operator==(const SchemaType&, const SchemaType&) = default;
};

struct ConstructorDecl {
  std::string name;
  std::vector<SchemaType> arg_types;
};

struct TypeDef {
  std::string name;
  std::vector<ConstructorDecl> ctors;
};

struct Schema {
  std::string name;
  std::vector<TypeDef> types;  // declaration order is significant for dumps
  std::string root;

  const TypeDef* find_type(std::string_view type_name) const;
  std::size_t constructor_count() const;
};

/// Parses the line-oriented schema format:
///   schema <Name>            (optional; defaults to `default_name`)
///   root <Type>              (optional; defaults to the first type)
///   type <Name> = <Ctor> <arg>* ( | <Ctor> <arg>* )*
/// with `|` continuation lines and `#` comments. Argument types:
/// `Int|Bool|String|<Name>|[t]|(t,t)|?t` plus raw application `(F t ...)`.
Schema parse_schema(std::string_view text, std::string_view default_name = "Schema");
std::string print_schema(const Schema& schema);

struct SchemaViolation {
  enum class Code { UnknownTypeName, BadArity, PrimitiveApplied, DuplicateConstructor, DuplicateType, BadRoot };
  Code code;
  std::string rule;  // kinding rule that failed
  std::string where;
  std::string message;
};

std::string_view to_string(SchemaViolation::Code code);

struct ValidationReport {
  std::vector<SchemaViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(SchemaViolation::Code code) const;
  std::string to_string() const;
};

ValidationReport validate_schema(const Schema& schema);

/// Neutral encoding of a value of the original datatypes.
struct GenericValue {
  enum class Tag { Prim, Ctor, List, Pair, Option };

  Tag tag = Tag::Ctor;
  Payload prim;
  std::string ctor;
  std::vector<GenericValue> items;

  bool is_ctor(std::string_view name) const { return tag == Tag::Ctor && ctor == name; }
  const GenericValue& operator[](std::size_t i) const { return items.at(i); }
  std::int64_t as_int() const { return std::get<std::int64_t>(prim); }
  bool as_bool() const { return std::get<bool>(prim); }
  const std::string& as_str() const { return std::get<std::string>(prim); }
  const GenericValue* opt() const { return items.empty() ? nullptr : &items[0]; }

  friend bool operator==(const GenericValue&, const GenericValue&) = default;
};

namespace gv {

inline GenericValue ctor(std::string name, std::vector<GenericValue> args = {}) {
  return {GenericValue::Tag::Ctor, Payload{}, std::move(name), std::move(args)};
}
inline GenericValue prim(Payload p) { return {GenericValue::Tag::Prim, std::move(p), {}, {}}; }
inline GenericValue integer(std::int64_t v) { return prim(Payload{v}); }
inline GenericValue boolean(bool v) { return prim(Payload{v}); }
inline GenericValue str(std::string v) { return prim(Payload{std::move(v)}); }
inline GenericValue list(std::vector<GenericValue> items) {
  return {GenericValue::Tag::List, Payload{}, {}, std::move(items)};
}
inline GenericValue pair(GenericValue a, GenericValue b) {
  return {GenericValue::Tag::Pair, Payload{}, {}, {std::move(a), std::move(b)}};
}
inline GenericValue none() { return {GenericValue::Tag::Option, Payload{}, {}, {}}; }
inline GenericValue some(GenericValue v) { return {GenericValue::Tag::Option, Payload{}, {}, {std::move(v)}}; }

std::string to_string(const GenericValue& v);

}  // namespace gv

/// Where each original constructor argument lives in the generated kind.
struct ArgSlot {
  bool payload;
  std::size_t index;
};

struct CtorInfo {
  std::string type_name;
  ConstructorDecl decl;
  KindRef kind;
  std::vector<ArgSlot> slots;
};

class ModularizedLanguage {
 public:
  const Schema& schema() const { return schema_; }
  const Signature& signature() const { return signature_; }
  const Sort& sort_of(std::string_view type_name) const;
  const std::map<std::string, Sort, std::less<>>& sorts() const { return sort_of_; }
  /// Kinds generated for one type, in constructor order.
  const std::vector<KindRef>& fragment_of(std::string_view type_name) const;
  const CtorInfo& ctor_info(std::string_view ctor_name) const;
  const CtorInfo* find_kind(const NodeKind& kind) const;
  Sort translate(const SchemaType& type) const;

 private:
  friend ModularizedLanguage modularize_schema(const Schema& schema);
  ModularizedLanguage() = default;

  Schema schema_;
  Signature signature_;
  std::map<std::string, Sort, std::less<>> sort_of_;
  std::map<std::string, std::vector<KindRef>, std::less<>> fragment_of_;
  std::map<std::string, CtorInfo, std::less<>> ctors_;
  std::map<std::string, std::string, std::less<>> kind_to_ctor_;
};

ModularizedLanguage modularize_schema(const Schema& schema);

std::string kind_name_for(const Schema& schema, std::string_view ctor);
std::string sort_name_for(const Schema& schema, std::string_view type_name);

Term to_modular(const ModularizedLanguage& lang, const GenericValue& value);
GenericValue from_modular(const ModularizedLanguage& lang, const Term& term);

/// `name = ⋃ parts − minus + plus`. Kinds shared between parts must agree.
Signature sum_signatures(std::string name, const std::vector<Signature>& parts,
                         const std::vector<std::string>& minus, const std::vector<KindRef>& plus);

/// Deterministic text dump of sorts and kinds (kinds in schema order).
std::string dump_modularized(const ModularizedLanguage& lang);
std::string describe_kind(const NodeKind& kind);

}  // namespace ipsx
