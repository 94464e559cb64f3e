#pragma once

#include <memory>

#include "ipsx/language.hpp"

namespace ipsx::frontend {

std::unique_ptr<LanguageDef> make_minic();
std::unique_ptr<LanguageDef> make_minijs();
std::unique_ptr<LanguageDef> make_minilua();

}  // namespace ipsx::frontend
