#pragma once

// Sort injections: declared edges that let a term of one sort appear at
// another sort by wrapping it in a chain of existing kinds.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipsx/term.hpp"

namespace ipsx {

/// One wrapper in an injection chain. The wrapped term goes to `child_index`;
/// every other child position is taken from `fill` (indexed by position, the
/// entry at `child_index` is ignored), payload slots from `payloads`.
struct InjectionStep {
  KindRef kind;
  std::size_t child_index = 0;
  std::vector<Payload> payloads;
  std::vector<std::optional<Term>> fill;
};

InjectionStep step(KindRef kind, std::size_t child_index = 0);

struct InjectionDecl {
  Sort from;
  Sort to;
  std::vector<InjectionStep> path;  // innermost first
  bool derived = false;
};

class InjectionTable {
 public:
  /// Registers an edge after type-checking its path. Throws IllTypedPath or
  /// DuplicateInjection.
  InjectionTable& declare(InjectionDecl decl);

  /// Adds the derived edge a->c as the concatenation of a->b and b->c.
  /// Throws MissingEdge; a second, different derived path for the same pair
  /// throws AmbiguousInjection. A declared a->c edge is left in place.
  InjectionTable& compose(const Sort& a, const Sort& b, const Sort& c);

  const InjectionDecl* find(const Sort& from, const Sort& to) const;
  bool has(const Sort& from, const Sort& to) const { return find(from, to) != nullptr; }

  const std::map<std::pair<Sort, Sort>, InjectionDecl>& edges() const { return edges_; }

  /// Deterministic listing, one edge per line.
  std::string dump() const;

 private:
  std::map<std::pair<Sort, Sort>, InjectionDecl> edges_;
};

InjectionTable declare_injection(InjectionTable table, InjectionDecl decl);
InjectionTable compose_injections(InjectionTable table, const Sort& a, const Sort& b, const Sort& c);

/// Wraps `term` up to `target`. A term already at `target` is returned as is.
Term inj_f(const InjectionTable& table, const Term& term, const Sort& target);

/// Peels the chain for (source, sort of term). Absent when the wrappers or
/// their filler children do not match the chain exactly.
std::optional<Term> proj_f(const InjectionTable& table, const Term& term, const Sort& source);

}  // namespace ipsx
