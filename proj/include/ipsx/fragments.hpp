#pragma once

// Shared generic node kinds: identifiers, assignment, blocks and local
// variable declarations. Languages splice these into their own signatures
// and connect them with injection kinds.

#include <string>
#include <vector>

#include "ipsx/term.hpp"

namespace ipsx::generic {

namespace sorts {
const Sort& IdentL();
const Sort& AssignL();
const Sort& LhsL();
const Sort& RhsL();
const Sort& AssignOpL();
const Sort& BlockL();
const Sort& BlockItemL();
const Sort& BlockEndL();
const Sort& MultiLocalVarDeclL();
const Sort& SingleLocalVarDeclL();
const Sort& LocalVarInitL();
const Sort& OptLocalVarInitL();
const Sort& MultiLocalVarDeclCommonAttrsL();
const Sort& LocalVarDeclAttrsL();
const Sort& VarDeclBinderL();
}  // namespace sorts

/// The reserved sort set; no modularized sort may collide with it.
const std::vector<Sort>& reserved_sorts();
bool is_reserved_sort(const Sort& sort);

const KindRef& Ident();
const KindRef& Assign();
const KindRef& AssignOpEquals();
const KindRef& Block();
const KindRef& EmptyBlockEnd();
const KindRef& MultiLocalVarDecl();
const KindRef& SingleLocalVarDecl();
const KindRef& JustLocalVarInit();
const KindRef& NoLocalVarInit();
const KindRef& EmptyCommonAttrs();
const KindRef& EmptyDeclAttrs();

const std::vector<KindRef>& all_kinds();

// Smart constructors.
Term ident(const std::string& name);
Term assign(const Term& lhs, const Term& rhs);
Term block(const std::vector<Term>& items);
Term multi_decl(const Term& common_attrs, const std::vector<Term>& singles);
Term single_decl(const Term& decl_attrs, const Term& binder, const std::optional<Term>& init);
Term empty_common_attrs();
Term empty_decl_attrs();

/// Block items of a generic Block term.
std::vector<Term> block_items(const Term& block);
Term with_block_items(const Term& block, const std::vector<Term>& items);

/// The initializer of a SingleLocalVarDecl, if any.
std::optional<Term> single_init(const Term& single);
Term without_init(const Term& single);
std::vector<Term> decl_singles(const Term& multi);

/// Path from a list term to its i-th element.
Path list_item_path(std::size_t i);

}  // namespace ipsx::generic

namespace ipsx {

/// The two conversions a language supplies so declarations can be split into
/// a bare declaration plus an assignment.
class LanguageOps {
 public:
  virtual ~LanguageOps() = default;
  virtual Term var_init_to_rhs(const Term& common_attrs, const Term& decl_attrs, const Term& init) const = 0;
  virtual Term var_decl_binder_to_lhs(const Term& binder) const = 0;
};

Term var_init_to_rhs(const LanguageOps& ops, const Term& common_attrs, const Term& decl_attrs, const Term& init);
Term var_decl_binder_to_lhs(const LanguageOps& ops, const Term& binder);

}  // namespace ipsx
