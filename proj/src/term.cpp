#include "ipsx/term.hpp"

#include <sstream>

namespace ipsx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::NotAListTerm: return "NotAListTerm";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::InvalidSchema: return "InvalidSchema";
    case ErrorCode::SchemaSyntax: return "SchemaSyntax";
    case ErrorCode::NonConformingValue: return "NonConformingValue";
    case ErrorCode::ForeignKind: return "ForeignKind";
    case ErrorCode::DuplicateKind: return "DuplicateKind";
    case ErrorCode::RemovedKindNotPresent: return "RemovedKindNotPresent";
    case ErrorCode::IllTypedPath: return "IllTypedPath";
    case ErrorCode::DuplicateInjection: return "DuplicateInjection";
    case ErrorCode::NoInjection: return "NoInjection";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::AmbiguousInjection: return "AmbiguousInjection";
    case ErrorCode::UnconvertibleInit: return "UnconvertibleInit";
    case ErrorCode::UnrepresentableTerm: return "UnrepresentableTerm";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SortViolation: return "SortViolation";
    case ErrorCode::UnstructuredConstruct: return "UnstructuredConstruct";
    case ErrorCode::RequirementMissing: return "RequirementMissing";
    case ErrorCode::LocalLimit: return "LocalLimit";
    case ErrorCode::UnknownLanguage: return "UnknownLanguage";
    case ErrorCode::UnknownPass: return "UnknownPass";
  }
  return "?";
}

std::string_view to_string(PrimType type) {
  switch (type) {
    case PrimType::Int: return "Int";
    case PrimType::Bool: return "Bool";
    case PrimType::String: return "String";
  }
  return "?";
}

PrimType prim_type_of(const Payload& value) {
  switch (value.index()) {
    case 0: return PrimType::Int;
    case 1: return PrimType::Bool;
    default: return PrimType::String;
  }
}

// ---------------------------------------------------------------------------
// Sort

struct SortRep {
  Sort::Shape shape;
  std::string name;
  std::vector<Sort> args;
  std::string key;
};

namespace {

std::shared_ptr<const SortRep> make_rep(Sort::Shape shape, std::string name, std::vector<Sort> args) {
  std::string key;
  switch (shape) {
    case Sort::Shape::Atomic: key = name; break;
    case Sort::Shape::List: key = "[" + args[0].key() + "]"; break;
    case Sort::Shape::Pair: key = "(" + args[0].key() + "," + args[1].key() + ")"; break;
    case Sort::Shape::Option: key = "?" + args[0].key(); break;
  }
  return std::make_shared<const SortRep>(SortRep{shape, std::move(name), std::move(args), std::move(key)});
}

const std::shared_ptr<const SortRep>& empty_rep() {
  static const auto rep = make_rep(Sort::Shape::Atomic, "", {});
  return rep;
}

}  // namespace

Sort::Sort() : rep_(empty_rep()) {}

Sort Sort::atomic(std::string name) { return Sort(make_rep(Shape::Atomic, std::move(name), {})); }
Sort Sort::list_of(const Sort& elem) { return Sort(make_rep(Shape::List, "", {elem})); }
Sort Sort::pair_of(const Sort& first, const Sort& second) {
  return Sort(make_rep(Shape::Pair, "", {first, second}));
}
Sort Sort::option_of(const Sort& elem) { return Sort(make_rep(Shape::Option, "", {elem})); }

Sort::Shape Sort::shape() const { return rep_->shape; }
const std::string& Sort::name() const { return rep_->name; }
const std::string& Sort::key() const { return rep_->key; }

const Sort& Sort::element() const {
  if (rep_->shape != Shape::List && rep_->shape != Shape::Option) {
    throw Error(ErrorCode::SortMismatch, "sort " + key() + " has no element sort");
  }
  return rep_->args[0];
}

const Sort& Sort::first() const {
  if (rep_->shape != Shape::Pair) throw Error(ErrorCode::SortMismatch, "sort " + key() + " is not a pair");
  return rep_->args[0];
}

const Sort& Sort::second() const {
  if (rep_->shape != Shape::Pair) throw Error(ErrorCode::SortMismatch, "sort " + key() + " is not a pair");
  return rep_->args[1];
}

// ---------------------------------------------------------------------------
// NodeKind

KindRef make_kind(std::string name, std::vector<PrimType> payloads, std::vector<Sort> child_sorts,
                  Sort produced) {
  return std::make_shared<const NodeKind>(
      NodeKind{std::move(name), std::move(payloads), std::move(child_sorts), std::move(produced)});
}

bool same_kind(const NodeKind& a, const NodeKind& b) { return &a == &b || a == b; }

// ---------------------------------------------------------------------------
// Term

struct TermNode {
  KindRef kind;
  std::vector<Payload> payloads;
  std::vector<Term> children;
  std::size_t size;
};

Term Term::make(KindRef kind, std::vector<Payload> payloads, std::vector<Term> children) {
  if (!kind) throw Error(ErrorCode::UnknownKind, "null kind");
  if (payloads.size() != kind->payloads.size() || children.size() != kind->child_sorts.size()) {
    throw Error(ErrorCode::ArityMismatch,
                kind->name + " expects " + std::to_string(kind->payloads.size()) + " payload(s) and " +
                    std::to_string(kind->child_sorts.size()) + " child(ren), got " +
                    std::to_string(payloads.size()) + " and " + std::to_string(children.size()));
  }
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    if (prim_type_of(payloads[i]) != kind->payloads[i]) {
      throw Error(ErrorCode::SortMismatch, kind->name + " payload " + std::to_string(i) + ": expected " +
                                               std::string(to_string(kind->payloads[i])) + ", actual " +
                                               std::string(to_string(prim_type_of(payloads[i]))));
    }
  }
  std::size_t size = 1;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].sort() != kind->child_sorts[i]) {
      throw Error(ErrorCode::SortMismatch, kind->name + " position " + std::to_string(i) + ": expected " +
                                               kind->child_sorts[i].key() + ", actual " +
                                               children[i].sort().key());
    }
    size += children[i].size();
  }
  return Term(std::make_shared<const TermNode>(
      TermNode{std::move(kind), std::move(payloads), std::move(children), size}));
}

const NodeKind& Term::kind() const { return *node_->kind; }
const KindRef& Term::kind_ref() const { return node_->kind; }
const std::vector<Payload>& Term::payloads() const { return node_->payloads; }
const std::vector<Term>& Term::children() const { return node_->children; }
std::size_t Term::size() const { return node_->size; }

const Term& Term::child(std::size_t i) const {
  if (i >= node_->children.size()) {
    throw Error(ErrorCode::InvalidPath, name() + " has no child " + std::to_string(i));
  }
  return node_->children[i];
}

const std::string& Term::str_payload(std::size_t i) const { return std::get<std::string>(payloads().at(i)); }
std::int64_t Term::int_payload(std::size_t i) const { return std::get<std::int64_t>(payloads().at(i)); }
bool Term::bool_payload(std::size_t i) const { return std::get<bool>(payloads().at(i)); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->size != b.node_->size) return false;
  if (!same_kind(a.kind(), b.kind())) return false;
  return a.payloads() == b.payloads() && a.children() == b.children();
}

std::optional<Fields> project(const Term& term, const NodeKind& kind) {
  if (!same_kind(term.kind(), kind)) return std::nullopt;
  return Fields{term.payloads(), term.children()};
}

// ---------------------------------------------------------------------------
// Built-in kinds

namespace builtin {

KindRef nil(const Sort& elem) { return make_kind(std::string(kNil), {}, {}, Sort::list_of(elem)); }

KindRef cons(const Sort& elem) {
  const Sort list = Sort::list_of(elem);
  return make_kind(std::string(kCons), {}, {elem, list}, list);
}

KindRef pair(const Sort& first, const Sort& second) {
  return make_kind(std::string(kPair), {}, {first, second}, Sort::pair_of(first, second));
}

KindRef just(const Sort& elem) { return make_kind(std::string(kJust), {}, {elem}, Sort::option_of(elem)); }

KindRef nothing(const Sort& elem) { return make_kind(std::string(kNothing), {}, {}, Sort::option_of(elem)); }

Sort boxed_sort(PrimType type) { return Sort::atomic(std::string(to_string(type)) + "L"); }

KindRef box(PrimType type) {
  return make_kind(std::string(to_string(type)) + "F", {type}, {}, boxed_sort(type));
}

bool is_builtin(const NodeKind& kind) {
  const auto& n = kind.name;
  if (n == kNil) return kind.produced.is_list() && kind.child_sorts.empty() && kind.payloads.empty();
  if (n == kCons) return kind == *cons(kind.produced.is_list() ? kind.produced.element() : Sort());
  if (n == kPair) {
    return kind.produced.is_pair() && kind == *pair(kind.produced.first(), kind.produced.second());
  }
  if (n == kJust) return kind.produced.is_option() && kind == *just(kind.produced.element());
  if (n == kNothing) return kind.produced.is_option() && kind.child_sorts.empty() && kind.payloads.empty();
  for (PrimType t : {PrimType::Int, PrimType::Bool, PrimType::String}) {
    if (n == std::string(to_string(t)) + "F") return kind == *box(t);
  }
  return false;
}

}  // namespace builtin

std::vector<Term> extract_list(const Term& term) {
  if (!term.sort().is_list()) throw Error(ErrorCode::NotAListTerm, "sort " + term.sort().key());
  std::vector<Term> out;
  const Term* cur = &term;
  while (cur->is(builtin::kCons)) {
    out.push_back(cur->child(0));
    cur = &cur->child(1);
  }
  if (!cur->is(builtin::kNil)) throw Error(ErrorCode::NotAListTerm, "spine ends in " + cur->name());
  return out;
}

Term build_list(const Sort& elem, std::span<const Term> items) {
  Term acc = mk_term(builtin::nil(elem), {}, {});
  if (items.empty()) return acc;
  const KindRef cons = builtin::cons(elem);
  for (auto it = items.rbegin(); it != items.rend(); ++it) acc = mk_term(cons, {}, {*it, acc});
  return acc;
}

Term map_list(const std::function<Term(const Term&)>& fn, const Term& term) {
  std::vector<Term> items = extract_list(term);
  for (auto& item : items) item = fn(item);
  return build_list(term.sort().element(), items);
}

Term make_pair_term(const Term& first, const Term& second) {
  return mk_term(builtin::pair(first.sort(), second.sort()), {}, {first, second});
}

Term make_option(const Sort& elem, const std::optional<Term>& value) {
  if (value) return mk_term(builtin::just(elem), {}, {*value});
  return mk_term(builtin::nothing(elem), {}, {});
}

std::optional<Term> extract_option(const Term& term) {
  if (!term.sort().is_option()) throw Error(ErrorCode::SortMismatch, "not an option: " + term.sort().key());
  if (term.is(builtin::kJust)) return term.child(0);
  return std::nullopt;
}

Term box_payload(const Payload& value) { return mk_term(builtin::box(prim_type_of(value)), {value}, {}); }

Payload unbox_payload(const Term& term) {
  if (term.payloads().size() != 1 || !builtin::is_builtin(term.kind())) {
    throw Error(ErrorCode::SortMismatch, "not a boxed primitive: " + term.name());
  }
  return term.payloads()[0];
}

namespace {

void write_sexpr(std::ostringstream& out, const Term& term) {
  out << '(' << term.name();
  for (const auto& p : term.payloads()) {
    out << ' ';
    if (const auto* i = std::get_if<std::int64_t>(&p)) {
      out << *i;
    } else if (const auto* b = std::get_if<bool>(&p)) {
      out << (*b ? "true" : "false");
    } else {
      out << '"';
      for (char c : std::get<std::string>(p)) {
        if (c == '"' || c == '\\') out << '\\';
        if (c == '\n') {
          out << "\\n";
          continue;
        }
        out << c;
      }
      out << '"';
    }
  }
  for (const auto& c : term.children()) {
    out << ' ';
    write_sexpr(out, c);
  }
  out << ')';
}

}  // namespace

std::string to_sexpr(const Term& term) {
  std::ostringstream out;
  write_sexpr(out, term);
  return out.str();
}

const Term& term_at(const Term& root, const Path& path) {
  const Term* cur = &root;
  for (std::size_t i : path) cur = &cur->child(i);
  return *cur;
}

namespace {

Term replace_rec(const Term& node, const Path& path, std::size_t depth, const Term& replacement) {
  if (depth == path.size()) {
    if (replacement.sort() != node.sort()) {
      throw Error(ErrorCode::SortMismatch, "replacement at path has sort " + replacement.sort().key() +
                                               ", expected " + node.sort().key());
    }
    return replacement;
  }
  std::vector<Term> children = node.children();
  if (path[depth] >= children.size()) throw Error(ErrorCode::InvalidPath, "bad index under " + node.name());
  children[path[depth]] = replace_rec(children[path[depth]], path, depth + 1, replacement);
  return mk_term(node.kind_ref(), node.payloads(), std::move(children));
}

}  // namespace

Term replace_at(const Term& root, const Path& path, const Term& replacement) {
  return replace_rec(root, path, 0, replacement);
}

Path concat(Path base, const Path& rel) {
  base.insert(base.end(), rel.begin(), rel.end());
  return base;
}

Term map_children(const Term& term, const std::function<Term(const Term&)>& fn) {
  if (term.children().empty()) return term;
  std::vector<Term> children;
  children.reserve(term.arity());
  bool changed = false;
  for (const auto& c : term.children()) {
    children.push_back(fn(c));
    changed = changed || !children.back().identical(c);
  }
  if (!changed) return term;
  // Container kinds follow the sorts of their (possibly re-sorted) elements.
  const auto& kind = term.kind();
  if (kind.name == builtin::kCons) {
    const Sort elem = children[0].sort();
    if (children[1].kind().name == builtin::kNil && children[1].sort() != Sort::list_of(elem)) {
      children[1] = mk_term(builtin::nil(elem), {}, {});
    }
    KindRef k = builtin::cons(elem);
    return mk_term(k, {}, std::move(children));
  }
  if (kind.name == builtin::kPair) {
    KindRef k = builtin::pair(children[0].sort(), children[1].sort());
    return mk_term(k, {}, std::move(children));
  }
  if (kind.name == builtin::kJust) {
    KindRef k = builtin::just(children[0].sort());
    return mk_term(k, {}, std::move(children));
  }
  return mk_term(term.kind_ref(), term.payloads(), std::move(children));
}

// ---------------------------------------------------------------------------
// Signature

namespace {

void collect_frontier(const Sort& sort, const std::set<Sort>& produced, std::set<Sort>& out) {
  switch (sort.shape()) {
    case Sort::Shape::Atomic:
      if (!produced.contains(sort)) {
        for (PrimType t : {PrimType::Int, PrimType::Bool, PrimType::String}) {
          if (sort == builtin::boxed_sort(t)) return;
        }
        out.insert(sort);
      }
      return;
    case Sort::Shape::List:
    case Sort::Shape::Option: collect_frontier(sort.element(), produced, out); return;
    case Sort::Shape::Pair:
      collect_frontier(sort.first(), produced, out);
      collect_frontier(sort.second(), produced, out);
      return;
  }
}

}  // namespace

Signature::Signature(std::string name, const std::vector<KindRef>& kinds) : name_(std::move(name)) {
  for (const auto& k : kinds) {
    auto [it, inserted] = kinds_.emplace(k->name, k);
    if (!inserted && !same_kind(*it->second, *k)) {
      throw Error(ErrorCode::DuplicateKind, "kind " + k->name + " declared twice in " + name_);
    }
  }
  const std::set<Sort> produced = produced_sorts();
  for (const auto& [_, k] : kinds_) {
    for (const auto& s : k->child_sorts) collect_frontier(s, produced, frontier_);
  }
}

KindRef Signature::find(std::string_view kind_name) const {
  auto it = kinds_.find(kind_name);
  return it == kinds_.end() ? nullptr : it->second;
}

const KindRef& Signature::at(std::string_view kind_name) const {
  auto it = kinds_.find(kind_name);
  if (it == kinds_.end()) {
    throw Error(ErrorCode::UnknownKind, std::string(kind_name) + " is not in signature " + name_);
  }
  return it->second;
}

bool Signature::contains(const NodeKind& kind) const {
  if (builtin::is_builtin(kind)) return true;
  auto it = kinds_.find(kind.name);
  return it != kinds_.end() && same_kind(*it->second, kind);
}

Term Signature::make(std::string_view kind_name, std::vector<Payload> payloads,
                     std::vector<Term> children) const {
  return mk_term(at(kind_name), std::move(payloads), std::move(children));
}

std::set<Sort> Signature::produced_sorts() const {
  std::set<Sort> out;
  for (const auto& [_, k] : kinds_) out.insert(k->produced);
  return out;
}

bool Signature::same_kinds(const Signature& other) const {
  if (kinds_.size() != other.kinds_.size()) return false;
  for (const auto& [name, k] : kinds_) {
    auto o = other.find(name);
    if (!o || !same_kind(*o, *k)) return false;
  }
  return true;
}

void check_term(const Signature& sig, const Term& term) {
  if (!sig.contains(term.kind())) {
    throw Error(ErrorCode::UnknownKind, term.name() + " (sort " + term.sort().key() + ") is not in signature " +
                                            sig.name());
  }
  for (const auto& c : term.children()) check_term(sig, c);
}

bool in_signature(const Signature& sig, const Term& term) {
  if (!sig.contains(term.kind())) return false;
  for (const auto& c : term.children()) {
    if (!in_signature(sig, c)) return false;
  }
  return true;
}

bool well_sorted(const Term& term) {
  const auto& kind = term.kind();
  if (term.payloads().size() != kind.payloads.size() || term.arity() != kind.child_sorts.size()) return false;
  for (std::size_t i = 0; i < term.payloads().size(); ++i) {
    if (prim_type_of(term.payloads()[i]) != kind.payloads[i]) return false;
  }
  for (std::size_t i = 0; i < term.arity(); ++i) {
    if (term.child(i).sort() != kind.child_sorts[i] || !well_sorted(term.child(i))) return false;
  }
  return true;
}

}  // namespace ipsx
