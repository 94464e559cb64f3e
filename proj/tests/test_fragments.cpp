#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "ipsx/harness.hpp"
#include "ipsx/language.hpp"
#include "ipsx/transforms.hpp"

using namespace ipsx;
namespace g = ipsx::generic;

namespace {

std::string ehoist_text(const std::string& lang_name, const std::string& src) {
  const LanguageDef& lang = language(lang_name);
  return lang.pretty(lang.recompose(transforms::elementary_hoist(lang.decompose(lang.parse(src)), lang)));
}

Term js_num(std::int64_t v) { return language("minijs").ips_signature().make("MiniJS.IntLit", {v}, {}); }

}  // namespace

TEST(Fragments, KindsProduceReservedSorts) {
  for (const auto& k : g::all_kinds()) EXPECT_TRUE(g::is_reserved_sort(k->produced)) << k->name;
  namespace s = g::sorts;
  for (const Sort& r : {s::LhsL(), s::RhsL(), s::AssignOpL(), s::IdentL(), s::BlockL(), s::BlockItemL(), s::BlockEndL(),
                        s::MultiLocalVarDeclL(), s::SingleLocalVarDeclL(), s::LocalVarInitL(), s::OptLocalVarInitL(),
                        s::MultiLocalVarDeclCommonAttrsL(), s::LocalVarDeclAttrsL(), s::VarDeclBinderL(), s::AssignL()}) {
    EXPECT_TRUE(g::is_reserved_sort(r)) << r.key();
  }
  EXPECT_EQ(g::reserved_sorts().size(), 15u);
  EXPECT_FALSE(g::is_reserved_sort(Sort::atomic("MiniC.ExprL")));
}

TEST(Fragments, EveryLanguageRegistersCleanly) {
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    EXPECT_NO_THROW(check_registration(lang)) << name;
    for (const auto& [type, sort] : lang.modular().sorts()) EXPECT_FALSE(g::is_reserved_sort(sort)) << sort.key();
    EXPECT_TRUE(lang.ips_signature().frontier().empty()) << name;
  }
}

TEST(Fragments, BlockItemsRoundTrip) {
  Term empty = g::block({});
  EXPECT_EQ(empty.sort(), g::sorts::BlockL());
  EXPECT_TRUE(g::block_items(empty).empty());
  const LanguageDef& js = language("minijs");
  std::vector<Term> items{make_decl_item(js, {"a"}, {js_num(1)}), make_decl_item(js, {"b"}, {})};
  Term b = g::with_block_items(empty, items);
  EXPECT_EQ(g::block_items(b), items);
  EXPECT_EQ(term_at(b.child(0), g::list_item_path(1)), items[1]);
  EXPECT_EQ(term_at(b.child(0), g::list_item_path(0)), items[0]);
}

TEST(Fragments, SingleDeclInitAccessors) {
  Term binder = inj_f(language("minijs").injections(), g::ident("v"), g::sorts::VarDeclBinderL());
  Term init = inj_f(language("minijs").injections(), js_num(4), g::sorts::LocalVarInitL());
  Term with = g::single_decl(g::empty_decl_attrs(), binder, init);
  Term without = g::single_decl(g::empty_decl_attrs(), binder, std::nullopt);
  EXPECT_EQ(*g::single_init(with), init);
  EXPECT_FALSE(g::single_init(without).has_value());
  EXPECT_EQ(g::without_init(with), without);
  Term multi = g::multi_decl(g::empty_common_attrs(), {with, without});
  EXPECT_EQ(g::decl_singles(multi), (std::vector<Term>{with, without}));
}

TEST(Fragments, AssignHasFixedOperator) {
  const LanguageDef& js = language("minijs");
  Term lhs = js.lhs_of({js.var_ref("x")});
  Term rhs = js.rhs_of({js_num(2)});
  Term a = g::assign(lhs, rhs);
  EXPECT_EQ(a.sort(), g::sorts::AssignL());
  EXPECT_TRUE(a.child(1).is("AssignOpEquals"));
}

TEST(LanguageOps, MiniJsInitIsUnchanged) {
  EXPECT_EQ(ehoist_text("minijs", "function f(a) {\n  print(a);\n  var x = a + 1;\n}\n"),
            "function f(a) {\n  var x;\n  print(a);\n  x = a + 1;\n}\n");
}

TEST(LanguageOps, MiniCBracedInitBecomesArrayCall) {
  EXPECT_EQ(ehoist_text("minic", "int f() {\n  print(1);\n  int[] a = {1, 2};\n  return a[1];\n}\n"),
            "int f() {\n  int[] a;\n  print(1);\n  a = array(1, 2);\n  return a[1];\n}\n");
}

TEST(LanguageOps, MiniLuaInitListBecomesParallelAssignment) {
  EXPECT_EQ(ehoist_text("minilua", "function f()\n  print(0)\n  local x, y = 1, 2\n  return x\nend\n"),
            "function f()\n  local x, y\n  print(0)\n  x, y = 1, 2\n  return x\nend\n");
}

TEST(LanguageOps, InitConversionsProduceRhs) {
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    Term init = lang.init_of({lang.var_ref("q")});
    Term rhs = var_init_to_rhs(lang, lang.common_attrs_default(), lang.decl_attrs_default(), init);
    EXPECT_EQ(rhs.sort(), g::sorts::RhsL()) << name;
    EXPECT_EQ(lang.rhs_exprs(rhs).size(), 1u);
  }
}

// Property: the l-value built from a binder names exactly the bound
// variables, in order.
TEST(LanguageOpsProperties, BinderNamesSurviveConversion) {
  fuzz::Rng rng(31);
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    std::size_t max_names = name == "minilua" ? 3 : 1;
    for (int i = 0; i < 200; ++i) {
      std::vector<std::string> names;
      std::size_t n = 1 + rng() % max_names;
      for (std::size_t k = 0; k < n; ++k) names.push_back("v" + std::to_string(rng() % 50));
      Term binder = lang.binder_of(names);
      ASSERT_EQ(lang.binder_names(binder), names);
      Term lhs = var_decl_binder_to_lhs(lang, binder);
      std::vector<std::string> got;
      for (const auto& p : lang.lhs_exprs(lhs)) got.push_back(lang.expr_view(term_at(lhs, p)).var_name);
      ASSERT_EQ(got, names);
    }
  }
}

// Property: splitting every declaration into a bare declaration and an
// assignment keeps traces when no name is shadowed.
TEST(LanguageOpsProperties, SplitDeclarationsPreserveTraces) {
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    harness::GenConfig cfg;
    cfg.shadowing = false;
    auto corpus = harness::gen_corpus(lang, 150, 5, cfg);
    harness::DiffReport r = harness::diff_test(lang, "ehoist", corpus, false);
    EXPECT_EQ(r.passed(), corpus.size()) << name << "\n" << r.text();
  }
}
