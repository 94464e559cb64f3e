#pragma once

// Random inputs shared by the unit suites and the acceptance runner.

#include <cstdint>
#include <map>
#include <random>

#include "ipsx/modularizer.hpp"

namespace ipsx::fuzz {

using Rng = std::mt19937_64;

struct SchemaShape {
  int max_types = 5;
  int max_ctors = 4;
  int max_args = 3;
  int max_type_depth = 2;
};

/// A valid schema whose first constructor of type k mentions only types
/// declared before k outside of lists and options, so every type has finite
/// inhabitants.
Schema random_schema(Rng& rng, const std::string& name, const SchemaShape& shape = {});

/// A value of type `type_name`; `budget` bounds nesting.
GenericValue random_value(const Schema& schema, const std::string& type_name, Rng& rng, int budget = 5);

Payload random_payload(PrimType type, Rng& rng);

/// Sort-directed generator over a signature. Kinds whose every child sort has
/// a finite term are usable; the minimum heights are computed once.
class TermFuzzer {
 public:
  explicit TermFuzzer(const Signature& sig);

  bool inhabited(const Sort& sort) const;
  Term make(const Sort& sort, Rng& rng, int budget = 4) const;

 private:
  int height(const Sort& sort) const;
  const Signature& sig_;
  std::map<Sort, std::vector<KindRef>> producers_;
  std::map<Sort, int> height_;
};

}  // namespace ipsx::fuzz
