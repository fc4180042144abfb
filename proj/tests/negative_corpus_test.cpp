// Every file in corpus/ starts with a line "-- expect: Kind item N" naming the
// error the checker must report.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <regex>

#include "gat/library.hpp"
#include "support.hpp"

namespace gat {
namespace {

struct Case {
	std::filesystem::path file;
	std::string kind;
	std::size_t item = 0;
};

std::vector<Case> cases() {
	std::vector<Case> out;
	std::regex header(R"(^-- expect: (\w+) item (\d+)$)");
	for (const auto& e : std::filesystem::directory_iterator(std::string(GAT_TEST_DATA) + "/corpus")) {
		if (e.path().extension() != ".gat") {
			continue;
		}
		std::ifstream in(e.path());
		std::string first;
		std::getline(in, first);
		std::smatch m;
		if (!std::regex_match(first, m, header)) {
			ADD_FAILURE() << e.path() << " has no expectation header";
			continue;
		}
		out.push_back({e.path(), m[1], std::stoul(m[2])});
	}
	std::sort(out.begin(), out.end(), [](const Case& a, const Case& b) { return a.file < b.file; });
	return out;
}

TEST(NegativeCorpus, EachFileFailsAsExpected) {
	auto all = cases();
	ASSERT_GE(all.size(), 12u);
	for (const auto& c : all) {
		auto r = load_file(c.file);
		ASSERT_FALSE(r.ok()) << c.file << " was accepted";
		ASSERT_EQ(r.error().stage, LoadError::Stage::check) << c.file << ": " << r.error().describe();
		const CheckError& e = *r.error().check;
		EXPECT_EQ(to_string(e.kind), c.kind) << c.file << ": " << e.describe();
		EXPECT_EQ(e.item, c.item) << c.file << ": " << e.describe();
		EXPECT_FALSE(e.path.empty()) << c.file;
	}
}

TEST(NegativeCorpus, CoversRequiredKinds) {
	std::map<std::string, std::size_t> seen;
	for (const auto& c : cases()) {
		++seen[c.kind];
	}
	for (const char* k : {"DuplicateSymbol", "DuplicateVariable", "UnknownSymbol", "UnknownVariable", "ArityMismatch",
	                      "SortMismatch", "NotASortSymbol", "NotAnOpSymbol", "PresuppositionViolation"}) {
		EXPECT_GT(seen[k], 0u) << k;
	}
}

// The files differ from a valid theory only at the reported item: dropping it
// leaves a theory that checks.
TEST(NegativeCorpus, ErrorIsLocal) {
	for (const auto& c : cases()) {
		std::ifstream in(c.file);
		std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
		auto f = parse_file(text);
		ASSERT_TRUE(f.ok()) << c.file;
		Theory kept;
		for (std::size_t i = 0; i < f->theory.size(); ++i) {
			if (i != c.item) {
				kept.push_back(f->theory[i]);
			}
		}
		CheckedTheory base;
		if (f->extends) {
			base = lib::load(std::filesystem::path(*f->extends).stem().string());
		}
		if (c.item + 1 < f->theory.size()) {
			continue;
		}
		auto r = theory_extends(base, kept);
		EXPECT_TRUE(r.ok()) << c.file << ": " << (r.ok() ? "" : r.error().describe());
	}
}

}  // namespace
}  // namespace gat
