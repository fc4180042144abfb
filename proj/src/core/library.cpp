#include "gat/library.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace gat::embedded {
extern const std::pair<std::string_view, std::string_view> sources[];
extern const unsigned source_count;
}  // namespace gat::embedded

namespace gat {

namespace {

constexpr int max_extends_depth = 16;

struct Resolver {
	bool embedded_only = false;
	int depth = 0;
};

Loaded load_text(std::string_view text, const std::filesystem::path& dir, const std::string& file,
                 const EqEngineConfig& cfg, Resolver r);

std::optional<std::string_view> embedded_source(std::string_view name) {
	for (unsigned i = 0; i < embedded::source_count; ++i) {
		if (embedded::sources[i].first == name) {
			return embedded::sources[i].second;
		}
	}
	return std::nullopt;
}

LoadError io_error(std::string file, std::string message) {
	return LoadError{LoadError::Stage::io, std::move(file), std::nullopt, std::nullopt, std::move(message)};
}

Loaded load_base(const std::string& target, const std::filesystem::path& dir, const std::string& from,
                 const EqEngineConfig& cfg, Resolver r) {
	if (r.depth >= max_extends_depth) {
		return io_error(from, "EXTENDS chain is too deep (cyclic?)");
	}
	++r.depth;
	std::filesystem::path p = dir / target;
	if (!r.embedded_only) {
		std::error_code ec;
		if (std::filesystem::is_regular_file(p, ec)) {
			std::ifstream in(p, std::ios::binary);
			std::stringstream ss;
			ss << in.rdbuf();
			if (!in && !in.eof()) {
				return io_error(p.string(), "cannot read file");
			}
			return load_text(ss.str(), p.parent_path(), p.string(), cfg, r);
		}
	}
	std::string stem = std::filesystem::path(target).stem().string();
	if (auto src = embedded_source(stem)) {
		return load_text(*src, dir, stem + ".gat", cfg, r);
	}
	return io_error(from, "cannot resolve EXTENDS \"" + target + "\"");
}

Loaded load_text(std::string_view text, const std::filesystem::path& dir, const std::string& file,
                 const EqEngineConfig& cfg, Resolver r) {
	auto parsed = parse_file(text);
	if (!parsed) {
		return LoadError{LoadError::Stage::parse, file, parsed.error(), std::nullopt, parsed.error().describe()};
	}
	LoadedTheory out;
	out.file = std::move(*parsed);
	CheckedTheory base;
	if (out.file.extends) {
		auto b = load_base(*out.file.extends, dir, file, cfg, r);
		if (!b) {
			return b.error();
		}
		base = b->theory;
		out.notations = b->notations;
		out.base_items = b->theory.theory().size();
	}
	auto checked = theory_extends(base, out.file.theory, cfg);
	if (!checked) {
		CheckError e = checked.error();
		std::string msg = e.describe();
		return LoadError{LoadError::Stage::check, file, std::nullopt, std::move(e), std::move(msg)};
	}
	out.theory = std::move(*checked);
	for (auto n : out.file.notations) {
		out.notations.push_back(std::move(n));
	}
	return out;
}

}  // namespace

std::string LoadError::describe() const {
	std::string out = file.empty() ? std::string() : file + ":";
	if (parse) {
		return out + parse->describe();
	}
	if (check) {
		return out + " " + check->describe();
	}
	return out + (out.empty() ? "" : " ") + message;
}

Loaded load_source(std::string_view text, const std::filesystem::path& dir, const EqEngineConfig& cfg) {
	return load_text(text, dir, "", cfg, Resolver{});
}

Loaded load_file(const std::filesystem::path& path, const EqEngineConfig& cfg) {
	std::error_code ec;
	if (!std::filesystem::is_regular_file(path, ec)) {
		return io_error(path.string(), "no such file");
	}
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		return io_error(path.string(), "cannot open file");
	}
	std::stringstream ss;
	ss << in.rdbuf();
	return load_text(ss.str(), path.parent_path(), path.string(), cfg, Resolver{});
}

namespace lib {

const std::vector<LibraryEntry>& entries() {
	static const std::vector<LibraryEntry> all = [] {
		const std::map<std::string_view, ItemCounts> counts = {
		    {"monoid", {1, 2, 0, 3}},
		    {"cat", {2, 2, 0, 3}},
		    {"cwf", {4, 10, 0, 13}},
		    {"mltt", {6, 24, 2, 35}},
		};
		std::vector<LibraryEntry> out;
		for (unsigned i = 0; i < embedded::source_count; ++i) {
			auto [name, source] = embedded::sources[i];
			out.push_back(LibraryEntry{name, source, counts.at(name)});
		}
		return out;
	}();
	return all;
}

const LibraryEntry* find(std::string_view name) {
	for (const auto& e : entries()) {
		if (e.name == name) {
			return &e;
		}
	}
	return nullptr;
}

const LoadedTheory& load_full(std::string_view name) {
	struct Slot {
		std::once_flag once;
		std::optional<LoadedTheory> value;
	};
	static std::map<std::string_view, Slot> slots = [] {
		std::map<std::string_view, Slot> m;
		for (const auto& e : entries()) {
			m[e.name];
		}
		return m;
	}();
	auto it = slots.find(name);
	if (it == slots.end()) {
		throw std::out_of_range("no bundled theory named '" + std::string(name) + "'");
	}
	Slot& slot = it->second;
	std::call_once(slot.once, [&] {
		const LibraryEntry* e = find(name);
		auto loaded = load_text(e->source, {}, std::string(name) + ".gat", {}, Resolver{true, 0});
		if (!loaded) {
			throw std::logic_error("bundled theory '" + std::string(name) + "' is broken: " + loaded.error().describe());
		}
		slot.value = std::move(*loaded);
	});
	return *slot.value;
}

const CheckedTheory& load(std::string_view name) {
	return load_full(name).theory;
}

std::filesystem::path directory() {
	if (const char* env = std::getenv("GAT_LIB_DIR"); env != nullptr && *env != '\0') {
		return env;
	}
	return GAT_DEFAULT_LIB_DIR;
}

}  // namespace lib

}  // namespace gat
