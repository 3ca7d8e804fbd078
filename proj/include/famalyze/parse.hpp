#pragma once

#include <string>

#include "famalyze/ast.hpp"

namespace famalyze {

// Parse, validate and label a program family source text.
// Throws syntax_error / scope_error / feature_domain_error.
program parse(const std::string &source);

} // namespace famalyze
