#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "fuzz.hpp"
#include "ipsx/traversal.hpp"

using namespace ipsx;

namespace {

const Sort E = Sort::atomic("EL");
const Sort S = Sort::atomic("SL");

KindRef num() { return make_kind("Num", {PrimType::Int}, {}, E); }
KindRef plus() { return make_kind("Plus", {}, {E, E}, E); }
KindRef neg() { return make_kind("Neg", {}, {E}, E); }
KindRef print() { return make_kind("Print", {}, {E}, S); }
KindRef seq() { return make_kind("Seq", {}, {Sort::list_of(S)}, S); }

Term n(std::int64_t v) { return mk_term(num(), {v}, {}); }
Term add(Term a, Term b) { return mk_term(plus(), {}, {std::move(a), std::move(b)}); }

Signature sig() { return Signature("Arith", {num(), plus(), neg(), print(), seq()}); }

// Constant folding of Plus over two literals.
Rewrite fold() {
  return [](const Term& t) -> std::optional<Term> {
    if (!t.is("Plus") || !t.child(0).is("Num") || !t.child(1).is("Num")) return std::nullopt;
    return n(t.child(0).int_payload(0) + t.child(1).int_payload(0));
  };
}

Rewrite to_stmt() {
  return [](const Term& t) -> std::optional<Term> {
    if (!t.is("Num")) return std::nullopt;
    return mk_term(print(), {}, {t});
  };
}

}  // namespace

TEST(Traversal, BottomUpFoldsCompletely) {
  Term t = add(add(n(1), n(2)), add(n(3), add(n(4), n(5))));
  EXPECT_EQ(transform_bottom_up(try_(fold()), t), n(15));
}

TEST(Traversal, ApplyCheckedRejectsSortChange) {
  EXPECT_IPSX_ERROR(apply_checked(to_stmt(), n(1)), ErrorCode::SortViolation);
  EXPECT_FALSE(apply_checked(fold(), n(1)).has_value());
}

TEST(Traversal, BottomUpRejectsSortChange) {
  EXPECT_IPSX_ERROR(transform_bottom_up(to_stmt(), add(n(1), n(2))), ErrorCode::SortViolation);
}

TEST(Traversal, Combinators) {
  Term t = add(n(1), n(2));
  EXPECT_EQ(*identity()(t), t);
  EXPECT_FALSE(fail()(t).has_value());
  EXPECT_EQ(*try_(fail())(t), t);
  EXPECT_FALSE(seq(identity(), fail())(t).has_value());
  EXPECT_EQ(*seq(fold(), identity())(t), n(3));
}

TEST(Traversal, OnceTopDownRewritesOutermostLeftmost) {
  Term t = add(add(n(1), n(2)), add(n(3), n(4)));
  Term once = *once_top_down(fold())(t);
  EXPECT_EQ(to_sexpr(once), "(Plus (Num 3) (Plus (Num 3) (Num 4)))");
  EXPECT_FALSE(once_top_down(fold())(n(1)).has_value());
}

TEST(Traversal, AllChildrenNeedsEveryChild) {
  Term t = add(add(n(1), n(2)), n(3));
  EXPECT_FALSE(all_children(fold())(t).has_value());
  Term u = add(add(n(1), n(2)), add(n(3), n(4)));
  EXPECT_EQ(to_sexpr(*all_children(fold())(u)), "(Plus (Num 3) (Num 7))");
  EXPECT_EQ(*all_children(fail())(n(1)), n(1));
}

TEST(Traversal, QueryCollectsPreOrder) {
  Term t = add(n(1), add(n(2), n(3)));
  Query<std::int64_t> nums = [](const Term& x) -> std::vector<std::int64_t> {
    if (x.is("Num")) return {x.int_payload(0)};
    return {};
  };
  EXPECT_EQ(query_collect(nums, t), (std::vector<std::int64_t>{1, 2, 3}));
}

TEST(Traversal, WalksThroughContainers) {
  std::vector<Term> stmts{mk_term(print(), {}, {add(n(1), n(1))}), mk_term(print(), {}, {n(5)})};
  Term prog = mk_term(seq(), {}, {build_list(S, stmts)});
  Term folded = transform_bottom_up(try_(fold()), prog);
  EXPECT_EQ(to_sexpr(folded), "(Seq (ConsF (Print (Num 2)) (ConsF (Print (Num 5)) (NilF))))");
}

// Property: identity traversals preserve fuzzed terms, and folding leaves no
// Plus node with two literal children while preserving the evaluated value.
TEST(TraversalProperties, FoldPreservesValue) {
  fuzz::TermFuzzer fz(sig());
  fuzz::Rng rng(99);
  std::function<std::int64_t(const Term&)> eval = [&](const Term& t) -> std::int64_t {
    if (t.is("Num")) return t.int_payload(0);
    if (t.is("Neg")) return -eval(t.child(0));
    return eval(t.child(0)) + eval(t.child(1));
  };
  Query<int> leftovers = [](const Term& x) -> std::vector<int> {
    if (x.is("Plus") && x.child(0).is("Num") && x.child(1).is("Num")) return {1};
    return {};
  };
  for (int i = 0; i < 300; ++i) {
    Term t = fz.make(E, rng, 6);
    EXPECT_EQ(transform_bottom_up(identity(), t), t);
    Term f = transform_bottom_up(try_(fold()), t);
    EXPECT_EQ(eval(f), eval(t));
    EXPECT_TRUE(query_collect(leftovers, f).empty());
    EXPECT_TRUE(well_sorted(f));
  }
}
