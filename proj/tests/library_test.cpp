#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <thread>

#include "gat/equality.hpp"
#include "gat/library.hpp"
#include "gat/print.hpp"
#include "support.hpp"

namespace gat {
namespace {

using testing::sort;
using testing::tele;
using testing::term;

std::set<std::string> axiom_labels(const Theory& t) {
	std::set<std::string> out;
	for (const auto& it : t.items()) {
		if (it.is_axiom()) {
			out.insert(it.label);
		}
	}
	return out;
}

TEST(Library, Inventory) {
	std::vector<std::string> names;
	for (const auto& e : lib::entries()) {
		names.emplace_back(e.name);
	}
	EXPECT_EQ(names, (std::vector<std::string>{"monoid", "cat", "cwf", "mltt"}));
	EXPECT_EQ(lib::load("monoid").counts(), (ItemCounts{1, 2, 0, 3}));
	EXPECT_EQ(lib::load("cat").counts(), (ItemCounts{2, 2, 0, 3}));
	for (const auto& e : lib::entries()) {
		EXPECT_EQ(lib::load(e.name).counts(), e.expected_counts) << e.name;
	}
}

TEST(Library, MonoidSymbols) {
	const Theory& t = lib::load("monoid").theory();
	EXPECT_EQ(t[0].symbol(), "ob");
	EXPECT_EQ(t[1].symbol(), "id");
	EXPECT_EQ(t[2].symbol(), "cmp");
	EXPECT_EQ(axiom_labels(t), (std::set<std::string>{"right unit", "left unit", "associativity"}));
}

TEST(Library, MlttRuleNames) {
	const Theory& t = lib::load("mltt").theory();
	auto labels = axiom_labels(t);
	for (const char* l : {"lift substitution", "lift composition", "element lifting", "universe elements", "pi lifting",
	                      "pi computation", "pi unicity", "obs lifting", "universe lifting", "substitution 1",
	                      "substitution 2"}) {
		EXPECT_TRUE(labels.contains(l)) << l;
	}
	std::set<std::string> sort_axioms;
	for (const auto& it : t.items()) {
		if (std::holds_alternative<SortAxiom>(it.body)) {
			sort_axioms.insert(it.label);
		}
	}
	EXPECT_EQ(sort_axioms, (std::set<std::string>{"element lifting", "universe elements"}));
	for (const char* s : {"LVL", "LT", "TY", "EL", "LIFT", "PI", "LAM", "APP", "U", "OBS", "RED", "GREEN"}) {
		EXPECT_TRUE(t.find(s).has_value()) << s;
	}
}

// Every axiom carries a label, so the label inventory matches the counts.
TEST(Library, EveryAxiomIsLabelled) {
	for (const auto& e : lib::entries()) {
		const Theory& t = lib::load(e.name).theory();
		std::size_t labelled = 0;
		std::size_t axioms = 0;
		for (const auto& it : t.items()) {
			axioms += it.is_axiom();
			labelled += it.is_axiom() && !it.label.empty();
		}
		EXPECT_EQ(labelled, e.expected_counts.sort_axioms + e.expected_counts.term_axioms) << e.name;
		EXPECT_EQ(axioms, labelled) << e.name;
	}
}

TEST(Library, Memoized) {
	const CheckedTheory* first = &lib::load("mltt");
	const CheckedTheory* concurrent[4] = {};
	std::vector<std::thread> threads;
	for (auto& slot : concurrent) {
		threads.emplace_back([&slot] { slot = &lib::load("mltt"); });
	}
	for (auto& t : threads) {
		t.join();
	}
	for (auto* p : concurrent) {
		EXPECT_EQ(p, first);
	}
	EXPECT_EQ(&lib::load_full("cat").theory.theory(), &lib::load("cat").theory());
	EXPECT_THROW(lib::load("nope"), std::out_of_range);
	EXPECT_EQ(lib::find("nope"), nullptr);
}

TEST(Library, FilesOnDisk) {
	for (const auto& e : lib::entries()) {
		auto p = lib::directory() / (std::string(e.name) + ".gat");
		ASSERT_TRUE(std::filesystem::exists(p)) << p;
		auto r = load_file(p);
		ASSERT_TRUE(r.ok()) << r.error().describe();
		EXPECT_EQ(r->theory.theory(), lib::load(e.name).theory());
	}
}

TEST(Extends, CwfOverCat) {
	const auto& cwf = lib::load_full("cwf");
	ASSERT_EQ(cwf.file.extends, "cat.gat");
	auto r = theory_extends(lib::load("cat"), cwf.file.theory);
	ASSERT_TRUE(r.ok()) << r.error().describe();
	EXPECT_EQ(r->theory(), cwf.theory.theory());
	EXPECT_EQ(cwf.base_items, lib::load("cat").theory().size());
}

TEST(Extends, RedeclarationRejected) {
	auto r = theory_extends(lib::load("monoid"), testing::theory("SORT ob()"));
	ASSERT_FALSE(r.ok());
	EXPECT_EQ(r.error().kind, ErrorKind::duplicate_symbol);
}

TEST(Extends, SinglePassEqualsLayered) {
	Theory all = lib::load_full("cat").file.theory;
	all.append(lib::load_full("mltt").file.theory);
	auto r = theory_extends(CheckedTheory{}, all);
	ASSERT_TRUE(r.ok()) << r.error().describe();
	EXPECT_EQ(r->theory(), lib::load("mltt").theory());
	EXPECT_EQ(r->counts(), lib::load("mltt").counts());
}

TEST(Extends, LoadSourceFallsBackToBundledFiles) {
	auto r = load_source("EXTENDS \"monoid.gat\"\nOP two() : ob{}\n", "/nonexistent");
	ASSERT_TRUE(r.ok()) << r.error().describe();
	EXPECT_EQ(r->base_items, 6u);
	EXPECT_EQ(r->theory.counts(), (ItemCounts{1, 3, 0, 3}));
	auto bad = load_source("EXTENDS \"nowhere.gat\"\n", "/nonexistent");
	ASSERT_FALSE(bad.ok());
	EXPECT_EQ(bad.error().stage, LoadError::Stage::io);
}

TEST(Axioms, BothSidesCheckAtStatedSort) {
	std::size_t checked = 0;
	for (const auto& e : lib::entries()) {
		const CheckedTheory& th = lib::load(e.name);
		for (const auto& it : th.theory().items()) {
			if (const auto* ax = std::get_if<TermAxiom>(&it.body)) {
				EXPECT_TRUE(check_term(th, ax->params, ax->lhs, ax->at).ok()) << it.label;
				EXPECT_TRUE(check_term(th, ax->params, ax->rhs, ax->at).ok()) << it.label;
				++checked;
			} else if (const auto* sx = std::get_if<SortAxiom>(&it.body)) {
				EXPECT_TRUE(check_sort(th, sx->params, sx->lhs).ok()) << it.label;
				EXPECT_TRUE(check_sort(th, sx->params, sx->rhs).ok()) << it.label;
			}
		}
	}
	EXPECT_EQ(checked, 3u + 3u + 13u + 35u);
}

class Lifting : public ::testing::Test {
protected:
	const CheckedTheory& th = lib::load("mltt");
	EqEngineConfig cfg = [] {
		EqEngineConfig c;
		c.fuel = 1000;
		return c;
	}();
	Telescope psi = tele("a: LVL{}, a1: LVL{}, b: LVL{}, p: LT{a/a, b/b}, p1: LT{a/a, a1/b}, q: LT{a1/a, b/b}, "
	                     "G: OB{}, A: TY{a/a, G/G}, B: TY{a/a, EXT{a/a, G/G, A/A}/G}");

	void expect_equal(const std::string& m, const std::string& n, const std::string& at) {
		ASSERT_TRUE(check_term(th, psi, term(m), sort(at)).ok()) << m;
		ASSERT_TRUE(check_term(th, psi, term(n), sort(at)).ok()) << n;
		auto r = eq_term(th, psi, term(m), term(n), sort(at), cfg);
		EXPECT_TRUE(r.equal()) << r.diagnostic;
		EXPECT_LE(r.steps_used, 1000u);
		auto back = eq_term(th, psi, term(n), term(m), sort(at), cfg);
		EXPECT_TRUE(back.equal()) << back.diagnostic;
	}
};

TEST_F(Lifting, Pi) {
	expect_equal("LIFT{a/a, b/b, p/p, G/G, PI{a/a, G/G, A/A, B/B}/A}",
	             "PI{b/a, G/G, LIFT{a/a, b/b, p/p, G/G, A/A}/A, LIFT{a/a, b/b, p/p, EXT{a/a, G/G, A/A}/G, B/A}/B}",
	             "TY{b/a, G/G}");
}

TEST_F(Lifting, Obs) {
	expect_equal("LIFT{a/a, b/b, p/p, G/G, OBS{a/a, G/G}/A}", "OBS{b/a, G/G}", "TY{b/a, G/G}");
}

TEST_F(Lifting, Universe) {
	expect_equal("LIFT{a1/a, b/b, q/p, G/G, U{a/a, a1/b, p1/p, G/G}/A}", "U{a/a, b/b, p/p, G/G}", "TY{b/a, G/G}");
}

TEST_F(Lifting, NestedLiftsCollapse) {
	expect_equal("LIFT{a1/a, b/b, q/p, G/G, LIFT{a/a, a1/b, p1/p, G/G, OBS{a/a, G/G}/A}/A}", "OBS{b/a, G/G}",
	             "TY{b/a, G/G}");
}

TEST(Universe, ConversionBothWays) {
	const CheckedTheory& th = lib::load("mltt");
	Telescope psi = tele("a: LVL{}, b: LVL{}, p: LT{a/a, b/b}, G: OB{}, X: EL{b/a, G/G, U{a/a, b/b, p/p, G/G}/A}, "
	                     "T: TY{a/a, G/G}");
	Sort el = sort("EL{b/a, G/G, U{a/a, b/b, p/p, G/G}/A}");
	Sort ty = sort("TY{a/a, G/G}");
	auto inferred = infer_term(th, psi, term("X"));
	ASSERT_TRUE(inferred.ok());
	EXPECT_EQ(*inferred, el);
	EXPECT_TRUE(check_term(th, psi, term("X"), ty).ok());
	EXPECT_TRUE(check_term(th, psi, term("T"), el).ok());
	// Used as the type of a variable once converted.
	Telescope ext = psi;
	ext.push_back({"x", sort("EL{a/a, G/G, X/A}")});
	EXPECT_TRUE(check_telescope(th, ext).ok());
	EXPECT_TRUE(eq_sort(th, psi, el, ty).equal());
	EXPECT_TRUE(eq_sort(th, psi, ty, el).equal());
}

}  // namespace
}  // namespace gat
