#pragma once

// Loading theory files (with EXTENDS) and the bundled theory library.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gat/checker.hpp"
#include "gat/engine_config.hpp"
#include "gat/result.hpp"
#include "gat/surface.hpp"

namespace gat {

struct LoadError {
	enum class Stage { io, parse, check };

	Stage stage;
	/// File the error occurred in; empty for in-memory sources.
	std::string file;
	std::optional<ParseError> parse;
	/// Item indices are relative to the failing file, not to its base.
	std::optional<CheckError> check;
	std::string message;

	std::string describe() const;
};

struct LoadedTheory {
	CheckedTheory theory;
	ParsedFile file;
	/// Notations of the file and of everything it extends.
	std::vector<NotationDecl> notations;
	/// Items contributed by EXTENDS; the file's own items follow them.
	std::size_t base_items = 0;
};

using Loaded = Result<LoadedTheory, LoadError>;

/// Parses and checks `text`. Relative EXTENDS paths resolve against `dir`,
/// falling back to the bundled library by file name.
Loaded load_source(std::string_view text, const std::filesystem::path& dir, const EqEngineConfig& cfg = {});
Loaded load_file(const std::filesystem::path& path, const EqEngineConfig& cfg = {});

namespace lib {

struct LibraryEntry {
	std::string_view name;
	std::string_view source;
	ItemCounts expected_counts;
};

const std::vector<LibraryEntry>& entries();
const LibraryEntry* find(std::string_view name);

/// Checked bundled theory. Loads once; later calls return the same value.
/// Throws std::out_of_range for names not in the library.
const CheckedTheory& load(std::string_view name);
/// As load, together with the parsed file and notations.
const LoadedTheory& load_full(std::string_view name);

/// Directory holding the bundled .gat files: $GAT_LIB_DIR when set,
/// otherwise the source location recorded at build time.
std::filesystem::path directory();

}  // namespace lib

}  // namespace gat
