#pragma once

// Sorted terms: the fixpoint-of-signature encoding shared by every language
// representation. Sorts are runtime tags, checked when a term is built, so no
// reachable Term violates the child-sort discipline of its kind.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ipsx/error.hpp"

namespace ipsx {

enum class PrimType { Int, Bool, String };

using Payload = std::variant<std::int64_t, bool, std::string>;

std::string_view to_string(PrimType type);
PrimType prim_type_of(const Payload& value);

struct SortRep;

/// Nominal label classifying term positions. Structural equality:
/// `ListOf(s) == ListOf(t)` iff `s == t`.
class Sort {
 public:
  enum class Shape { Atomic, List, Pair, Option };

  Sort();  // the empty atomic sort; only useful as a placeholder

  static Sort atomic(std::string name);
  static Sort list_of(const Sort& elem);
  static Sort pair_of(const Sort& first, const Sort& second);
  static Sort option_of(const Sort& elem);

  Shape shape() const;
  bool is_atomic() const { return shape() == Shape::Atomic; }
  bool is_list() const { return shape() == Shape::List; }
  bool is_pair() const { return shape() == Shape::Pair; }
  bool is_option() const { return shape() == Shape::Option; }

  /// Atomic name; empty for composite sorts.
  const std::string& name() const;
  /// Element sort of a list or option sort.
  const Sort& element() const;
  const Sort& first() const;
  const Sort& second() const;

  /// Canonical text: `Name`, `[S]`, `(S,T)`, `?S`.
  const std::string& key() const;

  friend bool operator==(const Sort& a, const Sort& b) { return a.key() == b.key(); }
  friend auto operator<=>(const Sort& a, const Sort& b) { return a.key() <=> b.key(); }

 private:
  explicit Sort(std::shared_ptr<const SortRep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const SortRep> rep_;
};

/// A constructor descriptor. Payload slots precede children positionally.
struct NodeKind {
  std::string name;
  std::vector<PrimType> payloads;
  std::vector<Sort> child_sorts;
  Sort produced;

  friend bool operator==(const NodeKind&, const NodeKind&) = default;
};

using KindRef = std::shared_ptr<const NodeKind>;

KindRef make_kind(std::string name, std::vector<PrimType> payloads, std::vector<Sort> child_sorts,
                  Sort produced);

bool same_kind(const NodeKind& a, const NodeKind& b);

struct TermNode;

/// Immutable sorted tree. Copies share structure.
class Term {
 public:
  /// mk_term: checks payload arity/types and the sort of every child.
  static Term make(KindRef kind, std::vector<Payload> payloads, std::vector<Term> children);

  const NodeKind& kind() const;
  const KindRef& kind_ref() const;
  const std::string& name() const { return kind().name; }
  const Sort& sort() const { return kind().produced; }
  const std::vector<Payload>& payloads() const;
  const std::vector<Term>& children() const;
  const Term& child(std::size_t i) const;
  std::size_t arity() const { return children().size(); }

  const std::string& str_payload(std::size_t i) const;
  std::int64_t int_payload(std::size_t i) const;
  bool bool_payload(std::size_t i) const;

  /// Total node count.
  std::size_t size() const;

  bool is(std::string_view kind_name) const { return name() == kind_name; }
  bool identical(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

inline Term mk_term(KindRef kind, std::vector<Payload> payloads, std::vector<Term> children) {
  return Term::make(std::move(kind), std::move(payloads), std::move(children));
}

struct Fields {
  std::vector<Payload> payloads;
  std::vector<Term> children;
};

std::optional<Fields> project(const Term& term, const NodeKind& kind);

// Built-in container and boxing kinds. They belong to every signature.
namespace builtin {

inline constexpr std::string_view kNil = "NilF";
inline constexpr std::string_view kCons = "ConsF";
inline constexpr std::string_view kPair = "PairF";
inline constexpr std::string_view kJust = "JustF";
inline constexpr std::string_view kNothing = "NothingF";

KindRef nil(const Sort& elem);
KindRef cons(const Sort& elem);
KindRef pair(const Sort& first, const Sort& second);
KindRef just(const Sort& elem);
KindRef nothing(const Sort& elem);

/// Sorts used when a primitive appears inside a container, e.g. `[Int]`.
Sort boxed_sort(PrimType type);
KindRef box(PrimType type);

bool is_builtin(const NodeKind& kind);

}  // namespace builtin

std::vector<Term> extract_list(const Term& term);
Term build_list(const Sort& elem, std::span<const Term> items);
Term map_list(const std::function<Term(const Term&)>& fn, const Term& term);

Term make_pair_term(const Term& first, const Term& second);
Term make_option(const Sort& elem, const std::optional<Term>& value);
/// Absent for NothingF; throws SortMismatch when `term` is not of option sort.
std::optional<Term> extract_option(const Term& term);

Term box_payload(const Payload& value);
Payload unbox_payload(const Term& term);

/// `(KindName payload* child*)`, strings quoted.
std::string to_sexpr(const Term& term);

using Path = std::vector<std::size_t>;

const Term& term_at(const Term& root, const Path& path);
/// Rebuilds the spine from `root` down to `path` with `replacement` in place.
Term replace_at(const Term& root, const Path& path, const Term& replacement);
Path concat(Path base, const Path& rel);

/// Rebuild `term` with `fn` applied to each child; shares the node when nothing changed.
Term map_children(const Term& term, const std::function<Term(const Term&)>& fn);

/// A finite set of kinds; container kinds are implicitly present.
class Signature {
 public:
  Signature() = default;
  Signature(std::string name, const std::vector<KindRef>& kinds);

  const std::string& name() const { return name_; }
  const std::map<std::string, KindRef, std::less<>>& kinds() const { return kinds_; }
  std::size_t size() const { return kinds_.size(); }

  KindRef find(std::string_view kind_name) const;
  const KindRef& at(std::string_view kind_name) const;
  bool contains(const NodeKind& kind) const;

  /// Builds a term from a member kind by name.
  Term make(std::string_view kind_name, std::vector<Payload> payloads,
            std::vector<Term> children) const;
  Term make(std::string_view kind_name, std::vector<Term> children) const {
    return make(kind_name, {}, std::move(children));
  }

  /// Sorts used in child positions that no member kind produces.
  const std::set<Sort>& frontier() const { return frontier_; }
  std::set<Sort> produced_sorts() const;

  bool same_kinds(const Signature& other) const;

 private:
  std::string name_;
  std::map<std::string, KindRef, std::less<>> kinds_;
  std::set<Sort> frontier_;
};

/// Throws UnknownKind naming the first node whose kind is outside `sig`.
void check_term(const Signature& sig, const Term& term);
bool in_signature(const Signature& sig, const Term& term);

/// Re-validates the child-sort invariant at every node.
bool well_sorted(const Term& term);

}  // namespace ipsx
