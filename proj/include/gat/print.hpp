#pragma once

#include <string>

#include "gat/syntax.hpp"

namespace gat {

// Canonical single-line renderings of raw syntax, in the `.gat` surface form.

std::string to_text(const Node& n);
std::string to_text(const Term& m);
std::string to_text(const Sort& a);
/// Entries separated by ", " without surrounding braces.
std::string to_text(const Substitution& psi);
/// Bindings separated by ", " without surrounding parentheses.
std::string to_text(const Telescope& psi);

}  // namespace gat
