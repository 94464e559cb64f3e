#pragma once

// A registered language: its schema, modularized and incremental signatures,
// injection table, concrete syntax, and the syntactic views that let the
// generic passes walk its statements and expressions.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ipsx/fragments.hpp"
#include "ipsx/injections.hpp"
#include "ipsx/modularizer.hpp"

namespace ipsx {

/// A statement body inside a compound statement. `is_block` bodies point at a
/// generic Block; the others at a single language statement.
struct BodyRef {
  Path path;
  bool is_block = false;
};

enum class StmtKind { Simple, Decl, If, While, For, NumFor, Block, Return, Break, Continue, Empty };

/// Paths are relative to the viewed term.
struct StmtView {
  StmtKind kind = StmtKind::Simple;
  std::vector<BodyRef> bodies;
  std::optional<Path> cond;
  std::optional<Path> init;    // For: init expression
  std::optional<Path> step;    // For: step expression
  std::vector<Path> exprs;     // Simple/Return/NumFor: language expressions evaluated, in order
  std::optional<Path> assign;  // Simple: a generic Assign statement (no enclosing expression)
  std::optional<Path> decl;    // Decl: the MultiLocalVarDecl
  std::optional<Path> expr_slot;  // Simple/Return: the optional wrapper of the expression, if any
};

enum class ExprKind { Literal, Var, Strict, ShortCircuit, Assign, Other };

struct ExprView {
  ExprKind kind = ExprKind::Other;
  std::vector<Path> operands;  // Strict/ShortCircuit: evaluation order
  bool is_and = false;
  std::string var_name;       // Var
  std::optional<Path> assign;  // Assign: the generic Assign term
};

enum class ScopeRule { Block, Function };

class LanguageDef : public LanguageOps {
 public:
  ~LanguageDef() override = default;

  virtual const std::string& name() const = 0;
  virtual const std::string& extension() const = 0;
  virtual ScopeRule scope_rule() const = 0;

  virtual const ModularizedLanguage& modular() const = 0;
  virtual const Signature& ips_signature() const = 0;
  virtual const InjectionTable& injections() const = 0;

  virtual GenericValue parse(std::string_view text) const = 0;
  virtual std::string pretty(const GenericValue& ast) const = 0;

  virtual Term trans_ips(const Term& modular) const = 0;
  virtual Term untrans_ips(const Term& ips) const = 0;

  Term decompose(const GenericValue& ast) const { return trans_ips(to_modular(modular(), ast)); }
  GenericValue recompose(const Term& ips) const { return from_modular(modular(), untrans_ips(ips)); }

  // Structure views over IPS terms.
  virtual std::vector<Path> function_bodies(const Term& program) const = 0;
  /// Accepts a BlockItemL term or a statement of the language's statement sort.
  virtual StmtView stmt_view(const Term& stmt) const = 0;
  virtual ExprView expr_view(const Term& expr) const = 0;
  virtual std::vector<Path> lhs_exprs(const Term& lhs) const = 0;
  virtual std::vector<Path> rhs_exprs(const Term& rhs) const = 0;
  virtual std::vector<Path> init_exprs(const Term& init) const = 0;
  virtual std::vector<std::string> binder_names(const Term& binder) const = 0;

  // Builders.
  /// Wraps block items into a statement usable where a single statement is.
  virtual Term make_block_stmt(const std::vector<Term>& items, const Sort& stmt_sort) const = 0;
  virtual Term var_ref(const std::string& name) const = 0;
  virtual Term make_not(const Term& expr) const = 0;
  /// `if (cond) { items }` as a block item.
  virtual Term make_if(const Term& cond, const std::vector<Term>& items) const = 0;
  virtual Term binder_of(const std::vector<std::string>& names) const = 0;
  virtual Term init_of(const std::vector<Term>& exprs) const = 0;
  virtual Term lhs_of(const std::vector<Term>& exprs) const = 0;
  virtual Term rhs_of(const std::vector<Term>& exprs) const = 0;
  virtual Term common_attrs_default() const = 0;
  virtual Term decl_attrs_default() const = 0;
  /// Target of a coverage store for block `i`, and the stored value.
  virtual Term coverage_lhs(std::int64_t i) const = 0;
  virtual Term true_rhs() const = 0;
  /// Whether TAC is offered (untyped declarations exist).
  virtual bool untyped_declarations() const = 0;

  /// Sort of language expressions (the element sort for operands).
  virtual const Sort& expr_sort() const = 0;
  virtual const Sort& stmt_sort() const = 0;
};

const LanguageDef& language(std::string_view name);
std::vector<std::string> language_names();
/// Language whose file extension matches `path`, if any.
const LanguageDef* language_for_path(std::string_view path);

/// Checks the registration invariants (reserved sorts disjoint, injections
/// well-typed, every IPS kind accounted for). Throws on violation.
void check_registration(const LanguageDef& lang);

// Helpers shared by the passes.
Term make_assign_item(const LanguageDef& lang, const Term& lhs, const Term& rhs);
/// `var name = init;` (or without initializer) as a block item.
Term make_decl_item(const LanguageDef& lang, const std::vector<std::string>& names,
                    const std::vector<Term>& inits);
std::optional<Term> as_decl(const LanguageDef& lang, const Term& item);

}  // namespace ipsx
