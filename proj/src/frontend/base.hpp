#pragma once

// Shared scaffolding for the three language registrations.

#include <string>
#include <vector>

#include "ipsx/language.hpp"

namespace ipsx::frontend {

class BasicLanguage : public LanguageDef {
 public:
  BasicLanguage(std::string name, std::string ext, const char* schema_text);

  const std::string& name() const override { return name_; }
  const std::string& extension() const override { return ext_; }
  const ModularizedLanguage& modular() const override { return modular_; }
  const Signature& ips_signature() const override { return ips_; }
  const InjectionTable& injections() const override { return table_; }
  const Sort& expr_sort() const override { return expr_sort_; }
  const Sort& stmt_sort() const override { return stmt_sort_; }

  Term make_block_stmt(const std::vector<Term>& items, const Sort& stmt_sort) const override;
  Term var_ref(const std::string& name) const override;
  Term decl_attrs_default() const override { return generic::empty_decl_attrs(); }
  Term true_rhs() const override;

 protected:
  /// Sort `<Schema>.<Type>L`.
  Sort lsort(const std::string& type_name) const { return modular_.sort_of(type_name); }
  /// Language kind `<Schema>.<Ctor>` from the modularized signature.
  const KindRef& lkind(const std::string& ctor) const;
  Term lmake(const std::string& ctor, std::vector<Payload> payloads, std::vector<Term> children) const;
  Term lmake(const std::string& ctor, std::vector<Term> children = {}) const { return lmake(ctor, {}, std::move(children)); }
  bool is_l(const Term& t, const std::string& ctor) const;

  /// Declares a fresh injection kind `name :: from -> to`.
  KindRef inject_kind(const std::string& name, const Sort& from, const Sort& to);
  Term inj(const KindRef& kind, const Term& child) const { return mk_term(kind, {}, {child}); }

  /// Completes registration: builds the IPS signature and validates it.
  void finish(const std::vector<std::string>& removed, const std::vector<KindRef>& generic_used);

  [[noreturn]] static void unrepresentable(const Term& t, const std::string& where);
  /// Default structural case: keep the kind, translate the children.
  Term keep(const Term& t, const std::function<Term(const Term&)>& rec, bool untrans) const;

  std::string name_;
  std::string ext_;
  ModularizedLanguage modular_;
  Signature ips_;
  InjectionTable table_;
  std::vector<KindRef> added_;
  Sort expr_sort_;
  Sort stmt_sort_;
};

const std::string& ident_name(const Term& generic_ident);

/// Re-roots every path of a view under `p`.
StmtView prefixed(StmtView v, const Path& p);
/// Paths of each element of `list`, itself found at `base`.
std::vector<Path> list_paths(const Term& list, const Path& base);

}  // namespace ipsx::frontend
