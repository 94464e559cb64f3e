#include "base.hpp"
#include "ipsx/frontend/syntax.hpp"
#include "languages.hpp"

namespace ipsx::frontend {

namespace {

using namespace generic::sorts;

class MiniC final : public BasicLanguage {
 public:
  MiniC() : BasicLanguage("minic", ".mc", minic_schema_text()) {
    identK_ = inject_kind("IdentIsMiniCIdent", IdentL(), lsort("Ident"));
    blockK_ = inject_kind("BlockIsMiniCBlock", BlockL(), lsort("Block"));
    stmtItemK_ = inject_kind("StmtIsBlockItem", stmt_sort_, BlockItemL());
    declItemK_ = inject_kind("MultiLocalVarDeclIsBlockItem", MultiLocalVarDeclL(), BlockItemL());
    assignExprK_ = inject_kind("AssignIsExpr", AssignL(), expr_sort_);
    lhsK_ = inject_kind("ExprIsLhs", expr_sort_, LhsL());
    rhsK_ = inject_kind("ExprIsRhs", expr_sort_, RhsL());
    attrsK_ = inject_kind("TypeIsCommonAttrs", lsort("Type"), MultiLocalVarDeclCommonAttrsL());
    binderK_ = inject_kind("IdentIsVarDeclBinder", IdentL(), VarDeclBinderL());
    initK_ = inject_kind("InitIsLocalVarInit", lsort("Init"), LocalVarInitL());

    for (const KindRef& k : {identK_, blockK_, stmtItemK_, declItemK_, assignExprK_, lhsK_, rhsK_, attrsK_, binderK_,
                             initK_, lkind("ExprStmt"), lkind("BlockStmt"), lkind("Var")}) {
      table_.declare({k->child_sorts[0], k->produced, {step(k)}});
    }
    table_.compose(expr_sort_, stmt_sort_, BlockItemL());
    table_.compose(AssignL(), expr_sort_, BlockItemL());
    table_.compose(IdentL(), lsort("Ident"), expr_sort_);
    table_.compose(BlockL(), lsort("Block"), stmt_sort_);

    std::vector<KindRef> used;
    for (const auto& k : generic::all_kinds()) {
      if (k->name != "EmptyCommonAttrs") used.push_back(k);
    }
    finish({"Ident", "AssignExpr", "Decl", "Declarator", "Block", "StmtItem", "DeclItem"}, used);
  }

  ScopeRule scope_rule() const override { return ScopeRule::Block; }
  bool untyped_declarations() const override { return false; }

  GenericValue parse(std::string_view text) const override { return parse_minic(text); }
  std::string pretty(const GenericValue& ast) const override { return pretty_minic(ast); }

  Term trans_ips(const Term& t) const override {
    auto rec = [this](const Term& c) { return trans_ips(c); };
    if (is_l(t, "Ident")) return inj(identK_, generic::ident(t.str_payload(0)));
    if (is_l(t, "Block")) {
      std::vector<Term> items;
      for (const auto& item : extract_list(t.child(0))) items.push_back(trans_item(item));
      return inj(blockK_, generic::block(items));
    }
    if (is_l(t, "AssignExpr")) {
      return inj(assignExprK_,
                 generic::assign(inj(lhsK_, trans_ips(t.child(0))), inj(rhsK_, trans_ips(t.child(1)))));
    }
    if (is_l(t, "StmtItem") || is_l(t, "DeclItem") || is_l(t, "Decl") || is_l(t, "Declarator")) {
      unrepresentable(t, "outside a block");
    }
    return keep(t, rec, false);
  }

  Term untrans_ips(const Term& t) const override {
    auto rec = [this](const Term& c) { return untrans_ips(c); };
    const NodeKind& k = t.kind();
    if (same_kind(k, *identK_)) return lmake("Ident", {ident_name(t.child(0))}, {});
    if (same_kind(k, *blockK_)) {
      const Term& b = t.child(0);
      if (!b.child(1).is("EmptyBlockEnd")) unrepresentable(b.child(1), "as a block end");
      std::vector<Term> items;
      for (const auto& item : generic::block_items(b)) items.push_back(untrans_item(item));
      return lmake("Block", {build_list(lsort("BlockItem"), items)});
    }
    if (same_kind(k, *assignExprK_)) {
      const Term& a = t.child(0);
      if (!same_kind(a.child(0).kind(), *lhsK_)) unrepresentable(a.child(0), "as an assignment target");
      if (!same_kind(a.child(2).kind(), *rhsK_)) unrepresentable(a.child(2), "as an assigned value");
      return lmake("AssignExpr", {untrans_ips(a.child(0).child(0)), untrans_ips(a.child(2).child(0))});
    }
    return keep(t, rec, true);
  }

  std::vector<Path> function_bodies(const Term& program) const override {
    std::vector<Path> out;
    for (const auto& p : list_paths(program.child(0), {0})) out.push_back(concat(p, {3, 0}));
    return out;
  }

  StmtView stmt_view(const Term& t) const override {
    StmtView v;
    const NodeKind& k = t.kind();
    if (same_kind(k, *stmtItemK_)) return prefixed(stmt_view(t.child(0)), {0});
    if (same_kind(k, *declItemK_)) {
      v.kind = StmtKind::Decl;
      v.decl = Path{0};
    } else if (is_l(t, "ExprStmt")) {
      v.exprs = {{0}};
    } else if (is_l(t, "BlockStmt")) {
      v.kind = StmtKind::Block;
      v.bodies = {{{0, 0}, true}};
    } else if (is_l(t, "If")) {
      v.kind = StmtKind::If;
      v.cond = Path{0};
      v.bodies = {body_at(t, {1})};
      if (t.child(2).is(builtin::kJust)) v.bodies.push_back(body_at(t, {2, 0}));
    } else if (is_l(t, "While")) {
      v.kind = StmtKind::While;
      v.cond = Path{0};
      v.bodies = {body_at(t, {1})};
    } else if (is_l(t, "For")) {
      v.kind = StmtKind::For;
      if (t.child(0).is(builtin::kJust)) v.init = Path{0, 0};
      if (t.child(1).is(builtin::kJust)) v.cond = Path{1, 0};
      if (t.child(2).is(builtin::kJust)) v.step = Path{2, 0};
      v.bodies = {body_at(t, {3})};
    } else if (is_l(t, "Return")) {
      v.kind = StmtKind::Return;
      v.expr_slot = Path{0};
      if (t.child(0).is(builtin::kJust)) v.exprs = {{0, 0}};
    } else if (is_l(t, "Break")) {
      v.kind = StmtKind::Break;
    } else if (is_l(t, "Continue")) {
      v.kind = StmtKind::Continue;
    } else if (is_l(t, "EmptyStmt")) {
      v.kind = StmtKind::Empty;
    } else {
      throw Error(ErrorCode::SortMismatch, "not a statement: " + t.name());
    }
    return v;
  }

  ExprView expr_view(const Term& t) const override {
    ExprView v;
    if (is_l(t, "IntLit") || is_l(t, "BoolLit")) {
      v.kind = ExprKind::Literal;
    } else if (is_l(t, "Var")) {
      v.kind = ExprKind::Var;
      v.var_name = ident_name(t.child(0).child(0));
    } else if (is_l(t, "Index")) {
      v.kind = ExprKind::Strict;
      v.operands = {{0}, {1}};
    } else if (is_l(t, "Unary")) {
      v.kind = ExprKind::Strict;
      v.operands = {{0}};
    } else if (is_l(t, "Call")) {
      v.kind = ExprKind::Strict;
      v.operands = list_paths(t.child(1), {1});
    } else if (is_l(t, "Binary")) {
      const std::string& op = t.str_payload(0);
      v.kind = op == "&&" || op == "||" ? ExprKind::ShortCircuit : ExprKind::Strict;
      v.is_and = op == "&&";
      v.operands = {{0}, {1}};
    } else if (same_kind(t.kind(), *assignExprK_)) {
      v.kind = ExprKind::Assign;
      v.assign = Path{0};
    }
    return v;
  }

  std::vector<Path> lhs_exprs(const Term& lhs) const override { return single_child(lhs, *lhsK_); }
  std::vector<Path> rhs_exprs(const Term& rhs) const override { return single_child(rhs, *rhsK_); }

  std::vector<Path> init_exprs(const Term& init) const override {
    if (!same_kind(init.kind(), *initK_)) unrepresentable(init, "as an initializer");
    const Term& i = init.child(0);
    if (is_l(i, "ExprInit")) return {{0, 0}};
    return list_paths(i.child(0), {0, 0});
  }

  std::vector<std::string> binder_names(const Term& binder) const override {
    if (!same_kind(binder.kind(), *binderK_)) unrepresentable(binder, "as a binder");
    return {ident_name(binder.child(0))};
  }

  Term make_not(const Term& e) const override { return lmake("Unary", {std::string("!")}, {e}); }

  Term make_if(const Term& cond, const std::vector<Term>& items) const override {
    Term s = lmake("If", {cond, make_block_stmt(items, stmt_sort_), make_option(stmt_sort_, std::nullopt)});
    return inj_f(table_, s, BlockItemL());
  }

  Term binder_of(const std::vector<std::string>& names) const override {
    return inj(binderK_, generic::ident(only(names)));
  }
  Term init_of(const std::vector<Term>& exprs) const override {
    return inj(initK_, lmake("ExprInit", {only(exprs)}));
  }
  Term lhs_of(const std::vector<Term>& exprs) const override { return inj(lhsK_, only(exprs)); }
  Term rhs_of(const std::vector<Term>& exprs) const override { return inj(rhsK_, only(exprs)); }
  Term common_attrs_default() const override { return inj(attrsK_, lmake("TInt")); }

  Term coverage_lhs(std::int64_t i) const override {
    return inj(lhsK_, lmake("Index", {var_ref("cov"), lmake("IntLit", {i}, {})}));
  }

  Term var_init_to_rhs(const Term&, const Term&, const Term& init) const override {
    if (!same_kind(init.kind(), *initK_)) {
      throw Error(ErrorCode::UnconvertibleInit, init.name() + " has no expression form");
    }
    const Term& i = init.child(0);
    if (is_l(i, "ExprInit")) return inj(rhsK_, i.child(0));
    // A braced initializer becomes an array constructor call.
    return inj(rhsK_, lmake("Call", {inj(identK_, generic::ident("array")), i.child(0)}));
  }

  Term var_decl_binder_to_lhs(const Term& binder) const override {
    return inj(lhsK_, var_ref(binder_names(binder).front()));
  }

 private:
  // A braced body is reported as its block so insertions land inside it.
  BodyRef body_at(const Term& s, const Path& p) const {
    if (is_l(term_at(s, p), "BlockStmt")) return {concat(p, {0, 0}), true};
    return {p, false};
  }

  template <typename T>
  static const T& only(const std::vector<T>& xs) {
    if (xs.size() != 1) throw Error(ErrorCode::ArityMismatch, "MiniC binds exactly one name per declarator");
    return xs.front();
  }

  std::vector<Path> single_child(const Term& t, const NodeKind& expected) const {
    if (!same_kind(t.kind(), expected)) unrepresentable(t, "where " + expected.name + " was expected");
    return {{0}};
  }

  Term trans_item(const Term& item) const {
    if (is_l(item, "StmtItem")) return inj(stmtItemK_, trans_ips(item.child(0)));
    const Term& d = item.child(0);
    std::vector<Term> singles;
    for (const auto& dc : extract_list(d.child(1))) {
      std::optional<Term> init;
      if (auto i = extract_option(dc.child(1))) init = inj(initK_, trans_ips(*i));
      singles.push_back(generic::single_decl(generic::empty_decl_attrs(),
                                             inj(binderK_, generic::ident(dc.child(0).str_payload(0))), init));
    }
    return inj(declItemK_, generic::multi_decl(inj(attrsK_, trans_ips(d.child(0))), singles));
  }

  Term untrans_item(const Term& item) const {
    if (same_kind(item.kind(), *stmtItemK_)) return lmake("StmtItem", {untrans_ips(item.child(0))});
    if (!same_kind(item.kind(), *declItemK_)) unrepresentable(item, "as a block item");
    const Term& m = item.child(0);
    if (!same_kind(m.child(0).kind(), *attrsK_)) unrepresentable(m.child(0), "as declaration attributes");
    std::vector<Term> ds;
    for (const auto& s : generic::decl_singles(m)) {
      if (!s.child(0).is("EmptyDeclAttrs")) unrepresentable(s.child(0), "as declarator attributes");
      const Term& binder = s.child(1);
      if (!same_kind(binder.kind(), *binderK_)) unrepresentable(binder, "as a binder");
      std::optional<Term> init;
      if (auto i = generic::single_init(s)) {
        if (!same_kind(i->kind(), *initK_)) unrepresentable(*i, "as an initializer");
        init = untrans_ips(i->child(0));
      }
      ds.push_back(lmake("Declarator", {lmake("Ident", {ident_name(binder.child(0))}, {}),
                                        make_option(lsort("Init"), init)}));
    }
    Term decl = lmake("Decl", {untrans_ips(m.child(0).child(0)), build_list(lsort("Declarator"), ds)});
    return lmake("DeclItem", {decl});
  }

  KindRef identK_, blockK_, stmtItemK_, declItemK_, assignExprK_, lhsK_, rhsK_, attrsK_, binderK_, initK_;
};

}  // namespace

std::unique_ptr<LanguageDef> make_minic() { return std::make_unique<MiniC>(); }

}  // namespace ipsx::frontend
