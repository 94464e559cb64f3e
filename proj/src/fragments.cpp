#include "ipsx/fragments.hpp"

#include <algorithm>

namespace ipsx::generic {

namespace sorts {
#define IPSX_SORT(name)                               \
  const Sort& name() {                                \
    static const Sort s = Sort::atomic(#name);        \
    return s;                                         \
  }
IPSX_SORT(IdentL)
IPSX_SORT(AssignL)
IPSX_SORT(LhsL)
IPSX_SORT(RhsL)
IPSX_SORT(AssignOpL)
IPSX_SORT(BlockL)
IPSX_SORT(BlockItemL)
IPSX_SORT(BlockEndL)
IPSX_SORT(MultiLocalVarDeclL)
IPSX_SORT(SingleLocalVarDeclL)
IPSX_SORT(LocalVarInitL)
IPSX_SORT(OptLocalVarInitL)
IPSX_SORT(MultiLocalVarDeclCommonAttrsL)
IPSX_SORT(LocalVarDeclAttrsL)
IPSX_SORT(VarDeclBinderL)
#undef IPSX_SORT
}  // namespace sorts

const std::vector<Sort>& reserved_sorts() {
  using namespace sorts;
  static const std::vector<Sort> all = {
      IdentL(),           AssignL(),           LhsL(),          RhsL(),
      AssignOpL(),        BlockL(),            BlockItemL(),    BlockEndL(),
      MultiLocalVarDeclL(), SingleLocalVarDeclL(), LocalVarInitL(), OptLocalVarInitL(),
      MultiLocalVarDeclCommonAttrsL(), LocalVarDeclAttrsL(), VarDeclBinderL()};
  return all;
}

bool is_reserved_sort(const Sort& sort) {
  const auto& all = reserved_sorts();
  return std::find(all.begin(), all.end(), sort) != all.end();
}

using namespace sorts;

const KindRef& Ident() {
  static const KindRef k = make_kind("Ident", {PrimType::String}, {}, IdentL());
  return k;
}
const KindRef& Assign() {
  static const KindRef k = make_kind("Assign", {}, {LhsL(), AssignOpL(), RhsL()}, AssignL());
  return k;
}
const KindRef& AssignOpEquals() {
  static const KindRef k = make_kind("AssignOpEquals", {}, {}, AssignOpL());
  return k;
}
const KindRef& Block() {
  static const KindRef k = make_kind("Block", {}, {Sort::list_of(BlockItemL()), BlockEndL()}, BlockL());
  return k;
}
const KindRef& EmptyBlockEnd() {
  static const KindRef k = make_kind("EmptyBlockEnd", {}, {}, BlockEndL());
  return k;
}
const KindRef& MultiLocalVarDecl() {
  static const KindRef k = make_kind("MultiLocalVarDecl", {},
                                     {MultiLocalVarDeclCommonAttrsL(), Sort::list_of(SingleLocalVarDeclL())},
                                     MultiLocalVarDeclL());
  return k;
}
const KindRef& SingleLocalVarDecl() {
  static const KindRef k = make_kind("SingleLocalVarDecl", {}, {LocalVarDeclAttrsL(), VarDeclBinderL(), OptLocalVarInitL()},
                                     SingleLocalVarDeclL());
  return k;
}
const KindRef& JustLocalVarInit() {
  static const KindRef k = make_kind("JustLocalVarInit", {}, {LocalVarInitL()}, OptLocalVarInitL());
  return k;
}
const KindRef& NoLocalVarInit() {
  static const KindRef k = make_kind("NoLocalVarInit", {}, {}, OptLocalVarInitL());
  return k;
}
const KindRef& EmptyCommonAttrs() {
  static const KindRef k = make_kind("EmptyCommonAttrs", {}, {}, MultiLocalVarDeclCommonAttrsL());
  return k;
}
const KindRef& EmptyDeclAttrs() {
  static const KindRef k = make_kind("EmptyDeclAttrs", {}, {}, LocalVarDeclAttrsL());
  return k;
}

const std::vector<KindRef>& all_kinds() {
  static const std::vector<KindRef> all = {Ident(),           Assign(),           AssignOpEquals(),
                                           Block(),           EmptyBlockEnd(),    MultiLocalVarDecl(),
                                           SingleLocalVarDecl(), JustLocalVarInit(), NoLocalVarInit(),
                                           EmptyCommonAttrs(), EmptyDeclAttrs()};
  return all;
}

Term ident(const std::string& name) { return mk_term(Ident(), {name}, {}); }

Term assign(const Term& lhs, const Term& rhs) {
  return mk_term(Assign(), {}, {lhs, mk_term(AssignOpEquals(), {}, {}), rhs});
}

Term block(const std::vector<Term>& items) {
  return mk_term(Block(), {}, {build_list(BlockItemL(), items), mk_term(EmptyBlockEnd(), {}, {})});
}

Term multi_decl(const Term& common_attrs, const std::vector<Term>& singles) {
  return mk_term(MultiLocalVarDecl(), {}, {common_attrs, build_list(SingleLocalVarDeclL(), singles)});
}

Term single_decl(const Term& decl_attrs, const Term& binder, const std::optional<Term>& init) {
  Term opt = init ? mk_term(JustLocalVarInit(), {}, {*init}) : mk_term(NoLocalVarInit(), {}, {});
  return mk_term(SingleLocalVarDecl(), {}, {decl_attrs, binder, opt});
}

Term empty_common_attrs() { return mk_term(EmptyCommonAttrs(), {}, {}); }
Term empty_decl_attrs() { return mk_term(EmptyDeclAttrs(), {}, {}); }

std::vector<Term> block_items(const Term& block) {
  if (!block.is("Block")) throw Error(ErrorCode::SortMismatch, "expected Block, got " + block.name());
  return extract_list(block.child(0));
}

Term with_block_items(const Term& block, const std::vector<Term>& items) {
  return mk_term(block.kind_ref(), {}, {build_list(BlockItemL(), items), block.child(1)});
}

std::optional<Term> single_init(const Term& single) {
  const Term& opt = single.child(2);
  if (opt.is("JustLocalVarInit")) return opt.child(0);
  return std::nullopt;
}

Term without_init(const Term& single) {
  return mk_term(single.kind_ref(), {}, {single.child(0), single.child(1), mk_term(NoLocalVarInit(), {}, {})});
}

std::vector<Term> decl_singles(const Term& multi) { return extract_list(multi.child(1)); }

Path list_item_path(std::size_t i) {
  Path p(i, 1);
  p.push_back(0);
  return p;
}

}  // namespace ipsx::generic

namespace ipsx {

Term var_init_to_rhs(const LanguageOps& ops, const Term& common_attrs, const Term& decl_attrs, const Term& init) {
  if (init.sort() != generic::sorts::LocalVarInitL()) {
    throw Error(ErrorCode::SortMismatch, "initializer has sort " + init.sort().key());
  }
  Term rhs = ops.var_init_to_rhs(common_attrs, decl_attrs, init);
  if (rhs.sort() != generic::sorts::RhsL()) throw Error(ErrorCode::SortViolation, "var_init_to_rhs produced " + rhs.sort().key());
  return rhs;
}

Term var_decl_binder_to_lhs(const LanguageOps& ops, const Term& binder) {
  if (binder.sort() != generic::sorts::VarDeclBinderL()) {
    throw Error(ErrorCode::SortMismatch, "binder has sort " + binder.sort().key());
  }
  Term lhs = ops.var_decl_binder_to_lhs(binder);
  if (lhs.sort() != generic::sorts::LhsL()) throw Error(ErrorCode::SortViolation, "var_decl_binder_to_lhs produced " + lhs.sort().key());
  return lhs;
}

}  // namespace ipsx
