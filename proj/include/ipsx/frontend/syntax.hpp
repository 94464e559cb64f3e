#pragma once

// Concrete syntax of the three mini-languages: parsers to neutral ASTs and
// layout-normalizing printers (indent 2, one statement per line).

#include <string>
#include <string_view>

#include "ipsx/modularizer.hpp"

namespace ipsx::frontend {

const char* minic_schema_text();
const char* minijs_schema_text();
const char* minilua_schema_text();

GenericValue parse_minic(std::string_view text);
std::string pretty_minic(const GenericValue& program);

GenericValue parse_minijs(std::string_view text);
std::string pretty_minijs(const GenericValue& program);

GenericValue parse_minilua(std::string_view text);
std::string pretty_minilua(const GenericValue& program);

}  // namespace ipsx::frontend
