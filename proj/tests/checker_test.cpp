#include <gtest/gtest.h>

#include "gat/canonicity.hpp"
#include "gat/checker.hpp"
#include "gat/library.hpp"
#include "gat/print.hpp"
#include "support.hpp"

namespace gat {
namespace {

using testing::sort;
using testing::subst;
using testing::tele;
using testing::term;

const CheckedTheory& monoid() {
	return lib::load("monoid");
}
const CheckedTheory& cat() {
	return lib::load("cat");
}
const CheckedTheory& mltt() {
	return lib::load("mltt");
}

ErrorKind kind_of(const CheckStatus& s) {
	EXPECT_FALSE(s.ok());
	return s.ok() ? ErrorKind::presupposition_violation : s.error().kind;
}

TEST(CheckTheory, Empty) {
	auto th = check_theory(Theory{});
	ASSERT_TRUE(th.ok());
	EXPECT_EQ(th->counts(), ItemCounts{});
	EXPECT_EQ(th->symbol("ob"), nullptr);
}

TEST(CheckTheory, Monoid) {
	auto th = check_theory(lib::load("monoid").theory());
	ASSERT_TRUE(th.ok()) << th.error().describe();
	EXPECT_EQ(th->counts(), (ItemCounts{1, 2, 0, 3}));
}

TEST(CheckTheory, OperationOverUndeclaredSort) {
	auto th = check_theory(testing::theory("OP id() : ob{}"));
	ASSERT_FALSE(th.ok());
	EXPECT_EQ(th.error().kind, ErrorKind::unknown_symbol);
	EXPECT_EQ(th.error().item, 0u);
	EXPECT_EQ(th.error().found, "ob");
}

TEST(CheckTheory, FirstFailureInDeclarationOrder) {
	auto th = check_theory(testing::theory("SORT ob()\nOP f(x: nope{}) : ob{}\nSORT ob()"));
	ASSERT_FALSE(th.ok());
	EXPECT_EQ(th.error().item, 1u);
	EXPECT_EQ(th.error().path, "params[0].sort");
}

TEST(CheckTelescope, Examples) {
	EXPECT_TRUE(check_telescope(monoid(), {}).ok());
	EXPECT_TRUE(check_telescope(monoid(), tele("x: ob{}, y: ob{}")).ok());
	EXPECT_EQ(kind_of(check_telescope(monoid(), tele("x: ob{}, x: ob{}"))), ErrorKind::duplicate_variable);
	EXPECT_EQ(kind_of(check_telescope(cat(), tele("f: HOM{D/D, G/G}, D: OB{}, G: OB{}"))),
	          ErrorKind::unknown_variable);
}

TEST(CheckSort, Examples) {
	EXPECT_TRUE(check_sort(cat(), tele("D: OB{}, G: OB{}"), sort("HOM{D/D, G/G}")).ok());
	EXPECT_EQ(kind_of(check_sort(monoid(), {}, sort("id{}"))), ErrorKind::not_a_sort_symbol);
	auto s = check_sort(cat(), {}, sort("HOM{}"));
	ASSERT_FALSE(s.ok());
	EXPECT_EQ(s.error().kind, ErrorKind::arity_mismatch);
	EXPECT_EQ(s.error().expected, "2");
	EXPECT_EQ(s.error().found, "0");
	EXPECT_EQ(kind_of(check_sort(monoid(), {}, sort("nope{}"))), ErrorKind::unknown_symbol);
	EXPECT_EQ(kind_of(check_sort(cat(), tele("D: OB{}"), sort("HOM{D/G, D/D}"))), ErrorKind::unknown_variable);
}

TEST(CheckSort, MalformedTelescopeIsPresupposition) {
	EXPECT_EQ(kind_of(check_sort(monoid(), tele("x: nope{}"), sort("ob{}"))), ErrorKind::presupposition_violation);
}

TEST(InferTerm, Examples) {
	auto a = infer_term(monoid(), tele("x: ob{}"), term("x"));
	ASSERT_TRUE(a.ok());
	EXPECT_EQ(*a, sort("ob{}"));
	auto b = infer_term(monoid(), {}, term("id{}"));
	ASSERT_TRUE(b.ok());
	EXPECT_EQ(*b, sort("ob{}"));
	auto c = infer_term(cat(), tele("G: OB{}"), term("HOMID{G/G}"));
	ASSERT_TRUE(c.ok());
	EXPECT_EQ(*c, sort("HOM{G/D, G/G}"));
}

TEST(InferTerm, Failures) {
	EXPECT_EQ(infer_term(monoid(), {}, term("x")).error().kind, ErrorKind::unknown_variable);
	EXPECT_EQ(infer_term(monoid(), {}, term("nope{}")).error().kind, ErrorKind::unknown_symbol);
	EXPECT_EQ(infer_term(monoid(), {}, term("ob{}")).error().kind, ErrorKind::not_an_op_symbol);
	EXPECT_EQ(infer_term(monoid(), {}, term("cmp{id{}/a}")).error().kind, ErrorKind::arity_mismatch);
	EXPECT_EQ(infer_term(cat(), tele("D: OB{}, G: OB{}, f: HOM{D/D, G/G}"),
	                     term("HOMCMP{D/H, D/D, G/G, f/g, f/d}"))
	              .error()
	              .kind,
	          ErrorKind::sort_mismatch);
}

TEST(CheckTerm, Examples) {
	EXPECT_TRUE(check_term(monoid(), tele("x: ob{}"), term("cmp{x/a, id{}/b}"), sort("ob{}")).ok());
	EXPECT_EQ(kind_of(check_term(monoid(), tele("x: ob{}"), term("x"), sort("id{}"))),
	          ErrorKind::presupposition_violation);
	EXPECT_EQ(kind_of(check_term(cat(), tele("D: OB{}, G: OB{}, f: HOM{D/D, G/G}"), term("f"), sort("HOM{G/D, D/G}"))),
	          ErrorKind::sort_mismatch);
}

TEST(CheckTerm, UniverseElementsBothWays) {
	Telescope psi = tele("a: LVL{}, b: LVL{}, p: LT{a/a, b/b}, G: OB{}, X: EL{b/a, G/G, U{a/a, b/b, p/p, G/G}/A}, "
	                     "T: TY{a/a, G/G}");
	EXPECT_TRUE(check_telescope(mltt(), psi).ok());
	EXPECT_TRUE(check_term(mltt(), psi, term("X"), sort("TY{a/a, G/G}")).ok());
	EXPECT_TRUE(check_term(mltt(), psi, term("T"), sort("EL{b/a, G/G, U{a/a, b/b, p/p, G/G}/A}")).ok());
	// A code of the universe used as a type: the base type at the lower level.
	EXPECT_TRUE(check_term(mltt(), psi, term("OBS{a/a, G/G}"), sort("EL{b/a, G/G, U{a/a, b/b, p/p, G/G}/A}")).ok());
}

TEST(CheckTerm, ConversionThroughRewriting) {
	Telescope psi = tele("a: LVL{}, G: OB{}, A: TY{a/a, G/G}, M: EL{a/a, G/G, A/A}");
	Term m = term("ELACT{a/a, G/D, G/G, HOMID{G/G}/g, A/A, M/M}");
	EXPECT_TRUE(check_term(mltt(), psi, m, sort("EL{a/a, G/G, TYACT{a/a, G/D, G/G, HOMID{G/G}/g, A/A}/A}")).ok());
	EXPECT_TRUE(check_term(mltt(), psi, m, sort("EL{a/a, G/G, A/A}")).ok());
}

TEST(CheckTerm, FuelExhaustionIsReported) {
	Telescope psi = tele("a: LVL{}, G: OB{}, A: TY{a/a, G/G}");
	std::string id = "HOMID{G/G}/g";
	std::string t = "A";
	for (int i = 0; i < 6; ++i) {
		t = "TYACT{a/a, G/D, G/G, " + id + ", " + t + "/A}";
	}
	psi.push_back({"X", sort("EL{a/a, G/G, " + t + "/A}")});
	EqEngineConfig small;
	small.fuel = 2;
	auto s = check_term(mltt(), psi, term("X"), sort("EL{a/a, G/G, A/A}"), small);
	EXPECT_EQ(kind_of(s), ErrorKind::equality_fuel_exhausted);
	EXPECT_TRUE(check_term(mltt(), psi, term("X"), sort("EL{a/a, G/G, A/A}")).ok());
}

TEST(CheckSubst, Examples) {
	EXPECT_TRUE(check_subst(monoid(), tele("x: ob{}"), {}, {}).ok());
	EXPECT_TRUE(check_subst(monoid(), tele("x: ob{}"), subst("x/a, id{}/b"), tele("a: ob{}, b: ob{}")).ok());
	auto s = check_subst(monoid(), {}, subst("id{}/a"), tele("a: ob{}, b: ob{}"));
	ASSERT_FALSE(s.ok());
	EXPECT_EQ(s.error().kind, ErrorKind::arity_mismatch);
	EXPECT_EQ(s.error().expected, "2");
	EXPECT_EQ(s.error().found, "1");
	EXPECT_EQ(kind_of(check_subst(monoid(), {}, subst("id{}/a, id{}/c"), tele("a: ob{}, b: ob{}"))),
	          ErrorKind::unknown_variable);
}

TEST(CheckSubst, LaterEntriesSeeEarlierOnes) {
	Telescope target = tele("D: OB{}, G: OB{}, f: HOM{D/D, G/G}");
	Telescope phi = tele("X: OB{}, Y: OB{}, h: HOM{X/D, Y/G}");
	EXPECT_TRUE(check_subst(cat(), phi, subst("X/D, Y/G, h/f"), target).ok());
	EXPECT_EQ(kind_of(check_subst(cat(), phi, subst("Y/D, X/G, h/f"), target)), ErrorKind::sort_mismatch);
	EXPECT_TRUE(check_subst(cat(), phi, subst("X/D, X/G, HOMID{X/G}/f"), target).ok());
}

// Appending unrelated declarations between the prefix and an item does not
// change the verdict for that item.
TEST(Properties, PrefixMonotonicity) {
	Theory junk = testing::theory("SORT zz()\nOP zz0() : zz{}\nOP zzf(x: zz{}) : zz{}\nTERMAX (x: zz{}) zzf{x/x} = x : zz{}");
	for (const char* name : {"monoid", "cat", "cwf", "mltt"}) {
		const Theory& t = lib::load(name).theory();
		for (std::size_t i = 0; i < t.size(); ++i) {
			Theory extended;
			for (std::size_t k = 0; k < i; ++k) {
				extended.push_back(t[k]);
			}
			extended.append(junk);
			extended.push_back(t[i]);
			auto r = check_theory(extended);
			EXPECT_TRUE(r.ok()) << name << " item " << i << ": " << (r.ok() ? "" : r.error().describe());
		}
	}
}

TEST(Properties, InferCheckAgreement) {
	std::size_t n = 0;
	for (const char* name : {"monoid", "cat", "cwf", "mltt"}) {
		const CheckedTheory& th = lib::load(name);
		for (const auto& item : th.theory().items()) {
			const auto* ax = std::get_if<TermAxiom>(&item.body);
			if (ax == nullptr) {
				continue;
			}
			for (const Term* m : {&ax->lhs, &ax->rhs}) {
				auto a = infer_term(th, ax->params, *m);
				ASSERT_TRUE(a.ok()) << a.error().describe();
				EXPECT_TRUE(check_term(th, ax->params, *m, *a).ok()) << to_text(*m);
				++n;
			}
		}
	}
	for (const auto& c : generate_closed_obs_terms(mltt(), GenBudget{4, 3, 2, 40})) {
		auto a = infer_term(mltt(), {}, c.term);
		ASSERT_TRUE(a.ok());
		EXPECT_TRUE(check_term(mltt(), {}, c.term, *a).ok());
		++n;
	}
	EXPECT_GT(n, 100u);
}

TEST(Properties, Deterministic) {
	Theory bad = testing::theory("SORT ob()\nOP f(a: ob{}, a: ob{}) : ob{}");
	auto r1 = check_theory(bad);
	auto r2 = check_theory(bad);
	ASSERT_FALSE(r1.ok());
	EXPECT_EQ(r1.error().describe(), r2.error().describe());
	auto a1 = check_theory(lib::load("mltt").theory());
	auto a2 = check_theory(lib::load("mltt").theory());
	ASSERT_TRUE(a1.ok() && a2.ok());
	EXPECT_EQ(a1->theory(), a2->theory());
}

TEST(TheoryExtends, Redeclaration) {
	auto r = theory_extends(monoid(), testing::theory("SORT ob()"));
	ASSERT_FALSE(r.ok());
	EXPECT_EQ(r.error().kind, ErrorKind::duplicate_symbol);
	EXPECT_EQ(r.error().item, 0u);
}

TEST(CheckError, Describe) {
	auto th = check_theory(testing::theory("OP id() : ob{}"));
	ASSERT_FALSE(th.ok());
	EXPECT_NE(th.error().describe().find("UnknownSymbol"), std::string::npos);
	EXPECT_EQ(to_string(ErrorKind::presupposition_violation), "PresuppositionViolation");
}

}  // namespace
}  // namespace gat
