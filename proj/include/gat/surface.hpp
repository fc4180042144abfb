#pragma once

// Concrete syntax of theory files.
//
//   file      := [EXTENDS string] item*
//   item      := SORT [label] name '(' telescope ')'
//              | OP [label] name '(' telescope ')' ':' sort
//              | SORTAX [label] [orient] '(' telescope ')' sort '=' sort
//              | TERMAX [label] [orient] '(' telescope ')' term '=' term ':' sort
//              | NOTATION name string
//   orient    := '[' ('ltr' | 'rtl' | 'none') ']'
//   telescope := ε | var ':' sort (',' var ':' sort)*
//   sort      := name '{' subst '}'
//   term      := var | name '{' subst '}' | notation use
//   subst     := ε | term '/' var (',' term '/' var)*
//
// A label is a double-quoted string. Comments run from `--` to the end of the
// line. Notation patterns are strings whose `_` words are argument slots in
// telescope order, e.g. NOTATION cmp "_ * _".

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gat/result.hpp"
#include "gat/syntax.hpp"

namespace gat {

struct SourceSpan {
	std::size_t line = 1;
	std::size_t column = 1;
};

struct ParseError {
	SourceSpan at;
	/// Tokens that would have been accepted at `at`.
	std::vector<std::string> expected;
	std::string found;
	std::string message;

	std::string describe() const;
};

template <typename T>
using Parsed = Result<T, ParseError>;

struct NotationDecl {
	struct Part {
		bool slot = false;
		std::string text;
	};

	std::string symbol;
	std::vector<Part> parts;
	/// Parameter names of the symbol, filled in once its declaration is known.
	std::vector<std::string> targets;

	std::size_t slots() const noexcept;
	/// The pattern as written in a NOTATION item.
	std::string pattern() const;
	static Parsed<NotationDecl> make(std::string symbol, std::string_view pattern);
};

struct SourceFile {
	std::string path;
	std::string text;
};

/// A whole-line comment or a blank line between items. Comments after an
/// item on the same line, repeated blank lines and blank lines at either end
/// of the file are not kept.
struct LayoutLine {
	/// Items written before the line.
	std::size_t items = 0;
	/// Notations written before the line.
	std::size_t notations = 0;
	/// The comment from `--` on, without trailing blanks; empty for a blank line.
	std::string text;
};

struct ParsedFile {
	std::optional<std::string> extends;
	Theory theory;
	std::vector<SourceSpan> spans;
	std::vector<NotationDecl> notations;
	/// For each notation, the number of theory items written before it.
	std::vector<std::size_t> notation_positions;
	std::vector<LayoutLine> layout;
	/// Leading layout lines written above the EXTENDS header.
	std::size_t header_lines = 0;
};

Parsed<ParsedFile> parse_file(std::string_view text);
Parsed<Theory> parse_theory(const SourceFile& src);

// Fragments as used on the command line. Notation uses are accepted when
// `notations` is given.
Parsed<Telescope> parse_telescope(std::string_view text, const std::vector<NotationDecl>& notations = {});
Parsed<Term> parse_term(std::string_view text, const std::vector<NotationDecl>& notations = {});
Parsed<Sort> parse_sort(std::string_view text, const std::vector<NotationDecl>& notations = {});
Parsed<Substitution> parse_substitution(std::string_view text, const std::vector<NotationDecl>& notations = {});

struct PrintOptions {
	/// Drop arguments that later parameters or the result sort depend on.
	/// Display only: elided text does not parse back to the same theory.
	bool elide = false;
	/// Declarations consulted for elision besides the printed theory itself.
	const Theory* context = nullptr;
};

/// Canonical text: one item per line, terms written with the given notations.
std::string print_theory(const Theory& t, const std::vector<NotationDecl>& notations = {},
                         const PrintOptions& opts = {});
/// Canonical text of a whole file, including EXTENDS, NOTATION items and
/// kept layout lines. Terms are printed fully explicitly.
std::string print_file(const ParsedFile& f);

std::string print_term(const Term& m, const std::vector<NotationDecl>& notations = {},
                       const PrintOptions& opts = {}, const Theory* decls = nullptr);
std::string print_sort(const Sort& a, const std::vector<NotationDecl>& notations = {},
                       const PrintOptions& opts = {}, const Theory* decls = nullptr);

}  // namespace gat
