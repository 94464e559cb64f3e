#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "fuzz.hpp"
#include "ipsx/term.hpp"

using namespace ipsx;

namespace {

const Sort Expr = Sort::atomic("ExprL");
const Sort Stmt = Sort::atomic("StmtL");

KindRef lit() { return make_kind("Lit", {PrimType::Int}, {}, Expr); }
KindRef add() { return make_kind("Add", {}, {Expr, Expr}, Expr); }
KindRef var() { return make_kind("Var", {PrimType::String}, {}, Expr); }
KindRef expr_stmt() { return make_kind("ExprStmt", {}, {Expr}, Stmt); }
KindRef seq() { return make_kind("Seq", {}, {Sort::list_of(Stmt)}, Stmt); }

Term n(std::int64_t v) { return mk_term(lit(), {v}, {}); }

Signature toy() { return Signature("Toy", {lit(), add(), var(), expr_stmt(), seq()}); }

}  // namespace

TEST(Sort, StructuralEquality) {
  EXPECT_EQ(Sort::list_of(Expr), Sort::list_of(Sort::atomic("ExprL")));
  EXPECT_NE(Sort::list_of(Expr), Sort::list_of(Stmt));
  EXPECT_NE(Sort::list_of(Expr), Sort::option_of(Expr));
  EXPECT_EQ(Sort::pair_of(Expr, Stmt).first(), Expr);
  EXPECT_EQ(Sort::pair_of(Expr, Stmt).second(), Stmt);
  EXPECT_EQ(Sort::option_of(Expr).element(), Expr);
  EXPECT_TRUE(Sort::list_of(Expr).is_list());
  EXPECT_TRUE(Expr.is_atomic());
}

TEST(Sort, KeysAreCanonical) {
  EXPECT_EQ(Expr.key(), "ExprL");
  EXPECT_EQ(Sort::list_of(Expr).key(), "[ExprL]");
  EXPECT_EQ(Sort::option_of(Expr).key(), "?ExprL");
  EXPECT_EQ(Sort::pair_of(Expr, Sort::list_of(Stmt)).key(), "(ExprL,[StmtL])");
}

TEST(MkTerm, ChecksPayloadArity) {
  EXPECT_IPSX_ERROR(mk_term(lit(), {}, {}), ErrorCode::ArityMismatch);
  EXPECT_IPSX_ERROR(mk_term(add(), {}, {n(1)}), ErrorCode::ArityMismatch);
}

TEST(MkTerm, ChecksPayloadType) {
  EXPECT_IPSX_ERROR(mk_term(lit(), {std::string("one")}, {}), ErrorCode::SortMismatch);
}

TEST(MkTerm, ChecksChildSorts) {
  Term s = mk_term(expr_stmt(), {}, {n(1)});
  EXPECT_IPSX_ERROR(mk_term(add(), {}, {n(1), s}), ErrorCode::SortMismatch);
  EXPECT_NO_THROW(mk_term(add(), {}, {n(1), n(2)}));
}

TEST(Project, MatchesOnlyTheSameKind) {
  Term t = mk_term(add(), {}, {n(1), n(2)});
  auto f = project(t, *add());
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->children.size(), 2u);
  EXPECT_EQ(f->children[1], n(2));
  EXPECT_FALSE(project(t, *lit()).has_value());
  EXPECT_TRUE(project(n(7), *lit())->payloads[0] == Payload{std::int64_t{7}});
}

TEST(Lists, BuildAndExtractRoundTrip) {
  std::vector<Term> items{n(1), n(2), n(3)};
  Term l = build_list(Expr, items);
  EXPECT_EQ(l.sort(), Sort::list_of(Expr));
  EXPECT_EQ(extract_list(l), items);
  EXPECT_EQ(extract_list(build_list(Expr, {})).size(), 0u);
}

TEST(Lists, ExtractRejectsNonList) { EXPECT_IPSX_ERROR(extract_list(n(1)), ErrorCode::NotAListTerm); }

TEST(Lists, BuildChecksElementSort) {
  std::vector<Term> items{n(1), mk_term(expr_stmt(), {}, {n(1)})};
  EXPECT_IPSX_ERROR(build_list(Expr, items), ErrorCode::SortMismatch);
}

TEST(Lists, MapList) {
  std::vector<Term> items{n(1), n(2)};
  Term doubled = map_list([](const Term& t) { return n(t.int_payload(0) * 2); }, build_list(Expr, items));
  std::vector<Term> want{n(2), n(4)};
  EXPECT_EQ(extract_list(doubled), want);
}

TEST(Options, RoundTrip) {
  Term some = make_option(Expr, n(4));
  Term none = make_option(Expr, std::nullopt);
  EXPECT_EQ(some.sort(), Sort::option_of(Expr));
  EXPECT_EQ(*extract_option(some), n(4));
  EXPECT_FALSE(extract_option(none).has_value());
  EXPECT_IPSX_ERROR(extract_option(n(1)), ErrorCode::SortMismatch);
}

TEST(Boxing, RoundTripsEachPrimitive) {
  for (Payload p : {Payload{std::int64_t{-3}}, Payload{true}, Payload{std::string("s")}}) {
    Term b = box_payload(p);
    EXPECT_EQ(b.sort(), builtin::boxed_sort(prim_type_of(p)));
    EXPECT_EQ(unbox_payload(b), p);
  }
}

TEST(Sexpr, QuotesStrings) {
  Term t = mk_term(add(), {}, {n(1), mk_term(var(), {std::string("x")}, {})});
  EXPECT_EQ(to_sexpr(t), "(Add (Lit 1) (Var \"x\"))");
}

TEST(Paths, TermAtAndReplaceAt) {
  Term t = mk_term(add(), {}, {n(1), mk_term(add(), {}, {n(2), n(3)})});
  EXPECT_EQ(term_at(t, {1, 0}), n(2));
  Term r = replace_at(t, {1, 0}, n(9));
  EXPECT_EQ(to_sexpr(r), "(Add (Lit 1) (Add (Lit 9) (Lit 3)))");
  EXPECT_TRUE(term_at(r, {0}).identical(term_at(t, {0})));
  EXPECT_IPSX_ERROR(term_at(t, {5}), ErrorCode::InvalidPath);
  EXPECT_IPSX_ERROR(replace_at(t, {0}, mk_term(expr_stmt(), {}, {n(1)})), ErrorCode::SortMismatch);
  EXPECT_EQ(concat({1}, {0, 2}), (Path{1, 0, 2}));
}

TEST(Paths, ReplaceAtRootReturnsReplacement) { EXPECT_EQ(replace_at(n(1), {}, n(2)), n(2)); }

TEST(MapChildren, SharesUnchangedNodes) {
  Term t = mk_term(add(), {}, {n(1), n(2)});
  EXPECT_TRUE(map_children(t, [](const Term& c) { return c; }).identical(t));
  EXPECT_EQ(to_sexpr(map_children(t, [](const Term&) { return n(0); })), "(Add (Lit 0) (Lit 0))");
}

TEST(Signature, FrontierAndMembership) {
  Signature partial("Partial", {add(), expr_stmt()});
  EXPECT_TRUE(partial.frontier().empty());
  EXPECT_EQ(partial.produced_sorts().count(Expr), 1u);
  Signature only_stmt("S", {expr_stmt()});
  EXPECT_EQ(only_stmt.frontier().count(Expr), 1u);
  Signature sig = toy();
  EXPECT_TRUE(sig.frontier().empty());
  EXPECT_TRUE(sig.contains(*add()));
  EXPECT_EQ(sig.make("Lit", {std::int64_t{3}}, {}), n(3));
  EXPECT_IPSX_ERROR(sig.at("Mul"), ErrorCode::UnknownKind);
  EXPECT_TRUE(sig.same_kinds(toy()));
  EXPECT_FALSE(sig.same_kinds(only_stmt));
}

TEST(Signature, CheckTermNamesForeignKinds) {
  Signature sig("NoVar", {lit(), add()});
  Term ok = mk_term(add(), {}, {n(1), n(2)});
  Term bad = mk_term(add(), {}, {n(1), mk_term(var(), {std::string("y")}, {})});
  EXPECT_TRUE(in_signature(sig, ok));
  EXPECT_FALSE(in_signature(sig, bad));
  EXPECT_IPSX_ERROR(check_term(sig, bad), ErrorCode::UnknownKind);
  std::vector<Term> stmts{mk_term(expr_stmt(), {}, {ok})};
  EXPECT_TRUE(in_signature(toy(), mk_term(seq(), {}, {build_list(Stmt, stmts)})));
}

// Property: every fuzzed term is well sorted, stays in its signature and
// survives replacing any subterm with itself.
TEST(TermProperties, FuzzedTermsAreWellSorted) {
  Signature sig = toy();
  fuzz::TermFuzzer fz(sig);
  fuzz::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Term t = fz.make(i % 2 ? Stmt : Expr, rng, 5);
    ASSERT_TRUE(well_sorted(t));
    ASSERT_TRUE(in_signature(sig, t));
    Path p;
    const Term* cur = &t;
    while (cur->arity() > 0) {
      std::size_t k = rng() % cur->arity();
      p.push_back(k);
      cur = &cur->child(k);
    }
    EXPECT_EQ(replace_at(t, p, term_at(t, p)), t);
  }
}

TEST(TermProperties, SizeCountsNodes) {
  fuzz::TermFuzzer fz(toy());
  fuzz::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Term t = fz.make(Expr, rng, 5);
    std::size_t total = 1;
    for (const auto& c : t.children()) total += c.size();
    EXPECT_EQ(t.size(), total);
  }
}
