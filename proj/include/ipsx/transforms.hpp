#pragma once

// Source transformations written once against the generic fragments. Each
// language contributes only its views, builders and injection table.

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipsx/language.hpp"

namespace ipsx::transforms {

struct PassRequirements {
  std::vector<KindRef> kinds;
  std::vector<std::pair<Sort, Sort>> injections;
  std::vector<std::string> ops;
};

const PassRequirements& hoist_requirements();
const PassRequirements& testcov_requirements();
const PassRequirements& tac_requirements();

/// Throws RequirementMissing naming the first unmet requirement.
void check_requirements(const LanguageDef& lang, const PassRequirements& reqs, std::string_view pass);

/// In every block: declarations first, stripped of initializers, then the
/// other items with an assignment wherever an initializer was removed.
Term elementary_hoist(const Term& program, const LanguageDef& lang);

/// elementary_hoist that leaves a declaration in place when moving it would
/// capture an earlier occurrence of one of its names (block-scoped languages).
Term hoist(const Term& program, const LanguageDef& lang);

struct Coverage {
  Term term;
  int block_count = 0;
};

/// Prefixes basic block i with `cov[i] = true` (or the language's spelling).
Coverage testcov(const Term& program, const LanguageDef& lang);

/// Three-address form: operator and call arguments become literals or names.
Term tac(const Term& program, const LanguageDef& lang);

/// Hoist postcondition; one message per offending item.
std::vector<std::string> hoist_violations(const Term& program, const LanguageDef& lang);
/// TAC postcondition; one message per operator with a compound operand.
std::vector<std::string> tac_violations(const Term& program, const LanguageDef& lang);

/// Every generic identifier spelled anywhere in `t`.
std::set<std::string> identifier_names(const Term& t);

std::vector<std::string> pass_names();
/// Runs a registered pass by name ("ident", "ehoist", "hoist", "testcov", "tac").
Term apply_pass(std::string_view pass, const Term& program, const LanguageDef& lang);

}  // namespace ipsx::transforms
