#include <gtest/gtest.h>

#include "data.hpp"
#include "expect_error.hpp"
#include "fuzz.hpp"
#include "ipsx/modularizer.hpp"

using namespace ipsx;

namespace {

Schema arith() { return parse_schema(testdata::read("arith.schema"), "arith"); }

bool rejects(const std::string& text, SchemaViolation::Code code) {
  return validate_schema(parse_schema(text)).has(code);
}

}  // namespace

TEST(SchemaParse, ReadsTypesAndRoot) {
  Schema s = arith();
  EXPECT_EQ(s.name, "Arith");
  EXPECT_EQ(s.root, "Arith");
  ASSERT_EQ(s.types.size(), 3u);
  EXPECT_EQ(s.types[1].ctors.size(), 2u);
  EXPECT_EQ(s.constructor_count(), 4u);
  EXPECT_EQ(s.types[0].ctors[0].arg_types[0], SchemaType::named("Atom"));
}

TEST(SchemaParse, DefaultsNameAndRoot) {
  Schema s = parse_schema("type A = A1 [Int] | A2 ?A (Bool, String)\n", "Dflt");
  EXPECT_EQ(s.name, "Dflt");
  EXPECT_EQ(s.root, "A");
  EXPECT_EQ(s.types[0].ctors[0].arg_types[0], SchemaType::list(SchemaType::primitive(PrimType::Int)));
  EXPECT_EQ(s.types[0].ctors[1].arg_types[1],
            SchemaType::pair(SchemaType::primitive(PrimType::Bool), SchemaType::primitive(PrimType::String)));
}

TEST(SchemaParse, ContinuationLinesAndComments) {
  Schema s = parse_schema("# header\ntype E = Num Int\n  | Neg E   # unary\n");
  ASSERT_EQ(s.types[0].ctors.size(), 2u);
  EXPECT_EQ(s.types[0].ctors[1].name, "Neg");
}

TEST(SchemaParse, SyntaxErrors) {
  EXPECT_IPSX_ERROR(parse_schema("type = X"), ErrorCode::SchemaSyntax);
  EXPECT_IPSX_ERROR(parse_schema("type A = X [Int"), ErrorCode::SchemaSyntax);
}

TEST(SchemaPrint, ReparsesToSameSchema) {
  fuzz::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Schema s = fuzz::random_schema(rng, "P" + std::to_string(i));
    EXPECT_EQ(print_schema(parse_schema(print_schema(s))), print_schema(s));
  }
}

TEST(SchemaValidation, RejectsIllKindedSchemas) {
  EXPECT_TRUE(rejects("type A = X B\n", SchemaViolation::Code::UnknownTypeName));
  EXPECT_TRUE(rejects("type A = X (List Int Int)\n", SchemaViolation::Code::BadArity));
  EXPECT_TRUE(rejects("type A = X (Int Bool)\n", SchemaViolation::Code::PrimitiveApplied));
  EXPECT_TRUE(rejects("type A = X | X Int\n", SchemaViolation::Code::DuplicateConstructor));
  EXPECT_TRUE(rejects("type A = X\ntype A = Y\n", SchemaViolation::Code::DuplicateType));
  EXPECT_TRUE(rejects("root Q\ntype A = X\n", SchemaViolation::Code::BadRoot));
  EXPECT_TRUE(validate_schema(arith()).ok());
}

TEST(SchemaValidation, NamedTypeWithArgumentsIsBadArity) {
  EXPECT_TRUE(rejects("type A = X (A Int)\n", SchemaViolation::Code::BadArity));
}

TEST(SchemaValidation, ModularizeRefusesInvalidSchema) {
  EXPECT_IPSX_ERROR(modularize_schema(parse_schema("type A = X B\n")), ErrorCode::InvalidSchema);
}

TEST(Modularize, ArithDumpGolden) {
  EXPECT_EQ(dump_modularized(modularize_schema(arith())), testdata::read("arith.dump"));
}

TEST(Modularize, ArithKindShapes) {
  ModularizedLanguage m = modularize_schema(arith());
  const Sort arith_l = m.sort_of("Arith"), atom_l = m.sort_of("Atom"), lit_l = m.sort_of("Lit");
  EXPECT_EQ(m.signature().size(), 4u);
  const NodeKind& add = *m.ctor_info("Add").kind;
  EXPECT_EQ(add.child_sorts, (std::vector<Sort>{atom_l, atom_l}));
  EXPECT_EQ(add.produced, arith_l);
  const NodeKind& var = *m.ctor_info("Var").kind;
  EXPECT_EQ(var.payloads, std::vector<PrimType>{PrimType::String});
  EXPECT_TRUE(var.child_sorts.empty());
  EXPECT_EQ(m.ctor_info("Const").kind->child_sorts, std::vector<Sort>{lit_l});
  EXPECT_EQ(m.ctor_info("Lit").kind->produced, lit_l);
  EXPECT_EQ(m.fragment_of("Atom").size(), 2u);
  EXPECT_TRUE(m.signature().frontier().empty());
}

TEST(Modularize, ContainersBecomeContainerSorts) {
  ModularizedLanguage m = modularize_schema(parse_schema("schema C\ntype A = X [Int] ?A (A, Bool) String\n"));
  const NodeKind& x = *m.ctor_info("X").kind;
  ASSERT_EQ(x.child_sorts.size(), 3u);
  EXPECT_EQ(x.child_sorts[0], Sort::list_of(builtin::boxed_sort(PrimType::Int)));
  EXPECT_EQ(x.child_sorts[1], Sort::option_of(m.sort_of("A")));
  EXPECT_EQ(x.child_sorts[2], Sort::pair_of(m.sort_of("A"), builtin::boxed_sort(PrimType::Bool)));
  EXPECT_EQ(x.payloads, std::vector<PrimType>{PrimType::String});
}

TEST(Modularize, TranslationsOnArith) {
  ModularizedLanguage m = modularize_schema(arith());
  GenericValue v = gv::ctor("Add", {gv::ctor("Var", {gv::str("x")}),
                                    gv::ctor("Const", {gv::ctor("Lit", {gv::integer(3)})})});
  Term t = to_modular(m, v);
  EXPECT_EQ(to_sexpr(t), "(Arith.Add (Arith.Var \"x\") (Arith.Const (Arith.Lit 3)))");
  EXPECT_EQ(from_modular(m, t), v);
}

TEST(Modularize, NonConformingValues) {
  ModularizedLanguage m = modularize_schema(arith());
  EXPECT_IPSX_ERROR(to_modular(m, gv::ctor("Mul", {})), ErrorCode::NonConformingValue);
  EXPECT_IPSX_ERROR(to_modular(m, gv::ctor("Lit", {gv::str("3")})), ErrorCode::NonConformingValue);
  EXPECT_IPSX_ERROR(to_modular(m, gv::ctor("Lit", {})), ErrorCode::NonConformingValue);
}

TEST(Modularize, ForeignKindsAreRejected) {
  ModularizedLanguage m = modularize_schema(arith());
  Term foreign = mk_term(make_kind("Other", {}, {}, m.sort_of("Lit")), {}, {});
  EXPECT_IPSX_ERROR(from_modular(m, foreign), ErrorCode::ForeignKind);
}

TEST(SumSignatures, UnionMinusPlus) {
  ModularizedLanguage m = modularize_schema(arith());
  KindRef neg = make_kind("Neg", {}, {m.sort_of("Atom")}, m.sort_of("Atom"));
  Signature s = sum_signatures("S", {m.signature()}, {"Arith.Var"}, {neg});
  EXPECT_FALSE(s.find("Arith.Var"));
  EXPECT_TRUE(s.find("Neg"));
  EXPECT_EQ(s.size(), 4u);
  EXPECT_IPSX_ERROR(sum_signatures("S", {m.signature()}, {"Nope"}, {}), ErrorCode::RemovedKindNotPresent);
  EXPECT_IPSX_ERROR(sum_signatures("S", {m.signature()}, {}, {m.ctor_info("Lit").kind}), ErrorCode::DuplicateKind);
  KindRef clash = make_kind("Arith.Lit", {PrimType::Bool}, {}, m.sort_of("Lit"));
  EXPECT_IPSX_ERROR(sum_signatures("S", {m.signature(), Signature("O", {clash})}, {}, {}), ErrorCode::DuplicateKind);
}

// Property: both translations are inverse on random schemas, starting from
// either side.
TEST(ModularizeProperties, IsomorphismOnRandomSchemas) {
  fuzz::Rng rng(2024);
  for (int s = 0; s < 20; ++s) {
    Schema schema = fuzz::random_schema(rng, "R" + std::to_string(s));
    ASSERT_TRUE(validate_schema(schema).ok()) << print_schema(schema);
    ModularizedLanguage m = modularize_schema(schema);
    fuzz::TermFuzzer fz(m.signature());
    for (int i = 0; i < 100; ++i) {
      const TypeDef& type = schema.types[static_cast<std::size_t>(i) % schema.types.size()];
      GenericValue v = fuzz::random_value(schema, type.name, rng);
      Term t = to_modular(m, v);
      ASSERT_EQ(t.sort(), m.sort_of(type.name));
      ASSERT_EQ(from_modular(m, t), v) << gv::to_string(v);
      Term u = fz.make(m.sort_of(type.name), rng);
      ASSERT_EQ(to_modular(m, from_modular(m, u)), u) << to_sexpr(u);
    }
  }
}

TEST(ModularizeProperties, KindPerConstructor) {
  fuzz::Rng rng(8);
  for (int s = 0; s < 30; ++s) {
    Schema schema = fuzz::random_schema(rng, "K" + std::to_string(s));
    ModularizedLanguage m = modularize_schema(schema);
    EXPECT_EQ(m.signature().size(), schema.constructor_count());
    for (const auto& t : schema.types) {
      for (const auto& c : t.ctors) {
        const CtorInfo& info = m.ctor_info(c.name);
        EXPECT_EQ(info.kind->produced, m.sort_of(t.name));
        EXPECT_EQ(m.find_kind(*info.kind), &info);
        EXPECT_EQ(info.slots.size(), c.arg_types.size());
      }
    }
  }
}
