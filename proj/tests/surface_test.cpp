#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gat/library.hpp"
#include "gat/print.hpp"
#include "gat/surface.hpp"
#include "support.hpp"

namespace gat {
namespace {

using testing::sort;
using testing::tele;
using testing::term;

std::string read(const std::filesystem::path& p) {
	std::ifstream in(p, std::ios::binary);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::vector<std::filesystem::path> corpus_files() {
	std::vector<std::filesystem::path> out;
	for (const char* dir : {"/../lib", "/corpus"}) {
		for (const auto& e : std::filesystem::directory_iterator(std::string(GAT_TEST_DATA) + dir)) {
			if (e.path().extension() == ".gat") {
				out.push_back(e.path());
			}
		}
	}
	std::sort(out.begin(), out.end());
	return out;
}

NotationDecl star() {
	auto n = NotationDecl::make("cmp", "_ * _");
	EXPECT_TRUE(n.ok());
	n->targets = {"a", "b"};
	return *n;
}

TEST(ParseTheory, SortDeclaration) {
	auto t = parse_theory({"x.gat", "SORT ob()"});
	ASSERT_TRUE(t.ok());
	ASSERT_EQ(t->size(), 1u);
	EXPECT_EQ((*t)[0].body, (Item{SortDecl{"ob", {}}}.body));
}

TEST(ParseTheory, MonoidRightUnit) {
	auto t = parse_theory({"x.gat", "TERMAX (x: ob{}) cmp{x/a, id{}/b} = x : ob{}"});
	ASSERT_TRUE(t.ok());
	Sort ob = Sort::make("ob", {});
	Term lhs = Term::cut("cmp", {{"a", Term::var("x")}, {"b", Term::cut("id", {})}});
	TermAxiom expected{{{"x", ob}}, lhs, Term::var("x"), ob};
	EXPECT_EQ((*t)[0].body, (Item{expected}.body));
	EXPECT_EQ((*t)[0].orientation, Orientation::left_to_right);
}

TEST(ParseTheory, UnbalancedBraceReportsColumn) {
	std::string text = "SORT ob()\nTERMAX (x: ob{}) cmp{x/a, id{}/b = x : ob{}";
	auto t = parse_theory({"x.gat", text});
	ASSERT_FALSE(t.ok());
	EXPECT_EQ(t.error().at.line, 2u);
	std::string line2 = text.substr(text.find('\n') + 1);
	EXPECT_EQ(t.error().at.column, line2.find('=') + 1);
	EXPECT_EQ(t.error().found, "=");
	EXPECT_NE(std::find(t.error().expected.begin(), t.error().expected.end(), "}"), t.error().expected.end());
}

TEST(ParseTheory, UnknownKeyword) {
	auto t = parse_file("SORT ob()\n  AXIOM x");
	ASSERT_FALSE(t.ok());
	EXPECT_EQ(t.error().at.line, 2u);
	EXPECT_EQ(t.error().at.column, 3u);
	EXPECT_EQ(t.error().expected.size(), 5u);
}

TEST(ParseTheory, LabelsAndOrientation) {
	auto f = parse_file("SORT \"a \\\"quoted\\\" sort\" ob()\nTERMAX \"l\" [rtl] () ob{} = ob{} : ob{}\n");
	ASSERT_TRUE(f.ok());
	EXPECT_EQ(f->theory[0].label, "a \"quoted\" sort");
	EXPECT_EQ(f->theory[1].orientation, Orientation::right_to_left);
	EXPECT_EQ(print_file(*f), "SORT \"a \\\"quoted\\\" sort\" ob()\nTERMAX \"l\" [rtl] () ob{} = ob{} : ob{}\n");
}

TEST(ParseTheory, NotationNeedsDeclaredSymbol) {
	EXPECT_FALSE(parse_file("NOTATION cmp \"_ * _\"").ok());
	EXPECT_FALSE(parse_file("SORT ob()\nOP id() : ob{}\nNOTATION id \"_ * _\"").ok());
	EXPECT_FALSE(NotationDecl::make("cmp", "_ _").ok());
	EXPECT_FALSE(NotationDecl::make("cmp", "_ {} _").ok());
}

TEST(ParseTheory, NotationUseInsideFile) {
	auto f = parse_file(
	    "SORT ob()\nOP id() : ob{}\nOP cmp(a: ob{}, b: ob{}) : ob{}\nNOTATION cmp \"_ * _\"\n"
	    "TERMAX (x: ob{}) x * id{} = x : ob{}\n");
	ASSERT_TRUE(f.ok());
	const auto& ax = std::get<TermAxiom>(f->theory[3].body);
	EXPECT_EQ(ax.lhs, term("cmp{x/a, id{}/b}"));
	EXPECT_EQ(print_file(*f),
	          "SORT ob()\nOP id() : ob{}\nOP cmp(a: ob{}, b: ob{}) : ob{}\nNOTATION cmp \"_ * _\"\n"
	          "TERMAX (x: ob{}) cmp{x/a, id{}/b} = x : ob{}\n");
}

TEST(PrintTheory, InfixNotation) {
	std::vector<NotationDecl> ns{star()};
	EXPECT_EQ(print_term(term("cmp{x/a, id{}/b}"), ns), "x * id{}");
	EXPECT_EQ(print_term(term("cmp{cmp{x/a, y/b}/a, z/b}"), ns), "(x * y) * z");
	EXPECT_EQ(print_term(term("cmp{x/a, cmp{y/a, z/b}/b}"), ns), "x * (y * z)");
	EXPECT_EQ(term("(x * y) * z", ns), term("cmp{cmp{x/a, y/b}/a, z/b}"));
	EXPECT_EQ(term("x * id{}", ns), term("cmp{x/a, id{}/b}"));
	Theory monoid = lib::load("monoid").theory();
	EXPECT_EQ(print_theory(Theory({monoid[3]}), ns), "TERMAX \"right unit\" (x: ob{}) x * id{} = x : ob{}\n");
}

TEST(PrintTheory, EmptyTheory) {
	EXPECT_EQ(print_theory(Theory{}), "");
	auto f = parse_file("");
	ASSERT_TRUE(f.ok());
	EXPECT_TRUE(f->theory.empty());
	EXPECT_EQ(print_file(*f), "");
}

TEST(PrintTheory, Elision) {
	Theory cat = lib::load("cat").theory();
	PrintOptions opts;
	opts.elide = true;
	Term m = term("HOMCMP{X/H, Y/D, Z/G, g/g, f/d}");
	EXPECT_EQ(print_term(m, {}, opts, &cat), "HOMCMP{g/g, f/d}");
	EXPECT_EQ(print_term(m, {}, {}, &cat), "HOMCMP{X/H, Y/D, Z/G, g/g, f/d}");
	EXPECT_EQ(print_term(term("HOMID{X/G}"), {}, opts, &cat), "HOMID{}");
	EXPECT_EQ(print_sort(sort("HOM{X/D, Y/G}"), {}, opts, &cat), "HOM{X/D, Y/G}");
	// Display only: the elided text denotes a different raw term.
	EXPECT_NE(term(print_term(m, {}, opts, &cat)), m);
}

TEST(Layout, CommentsAndBlankLinesSurvive) {
	std::string text = "-- head\n\nSORT ob()\n-- about id\nOP id() : ob{}\n\n-- tail\n";
	auto f = parse_file(text);
	ASSERT_TRUE(f.ok());
	EXPECT_EQ(f->layout.size(), 5u);
	EXPECT_EQ(print_file(*f), text);
}

TEST(Layout, NonCanonicalLayoutIsNormalized) {
	auto f = parse_file("\n\nSORT ob()   -- trailing\n\n\n\nOP id() : ob{}   \n-- end   \n\n\n");
	ASSERT_TRUE(f.ok());
	std::string canonical = "SORT ob()\n\nOP id() : ob{}\n-- end\n";
	EXPECT_EQ(print_file(*f), canonical);
	auto again = parse_file(canonical);
	ASSERT_TRUE(again.ok());
	EXPECT_EQ(print_file(*again), canonical);
}

TEST(Layout, HeaderAndNotationOrder) {
	std::string text =
	    "-- top\nEXTENDS \"monoid.gat\"\n\nOP e(a: ob{}, b: ob{}) : ob{}\n-- before\nNOTATION e \"_ # _\"\n-- after\nOP f() : ob{}\n";
	auto f = parse_file(text);
	ASSERT_TRUE(f.ok());
	EXPECT_EQ(f->header_lines, 1u);
	EXPECT_EQ(print_file(*f), text);
}

TEST(RoundTrip, CorpusIsCanonical) {
	auto files = corpus_files();
	ASSERT_GE(files.size(), 16u);
	for (const auto& p : files) {
		std::string src = read(p);
		auto f = parse_file(src);
		ASSERT_TRUE(f.ok()) << p << ": " << f.error().describe();
		std::string printed = print_file(*f);
		EXPECT_EQ(printed, src) << p;
		auto g = parse_file(printed);
		ASSERT_TRUE(g.ok());
		EXPECT_EQ(g->theory, f->theory) << p;
		EXPECT_EQ(g->extends, f->extends) << p;
	}
}

class TheoryGen {
public:
	explicit TheoryGen(std::uint64_t seed) : rng_(seed) {}

	Theory theory() {
		Theory t;
		std::size_t n = pick(8);
		for (std::size_t i = 0; i < n; ++i) {
			Item it;
			std::string name = "s" + std::to_string(i);
			switch (pick(4)) {
			case 0: it.body = SortDecl{name, telescope()}; break;
			case 1: it.body = OpDecl{name, telescope(), sort(2)}; break;
			case 2: it.body = SortAxiom{telescope(), sort(2), sort(2)}; break;
			default: it.body = TermAxiom{telescope(), term(3), term(3), sort(2)}; break;
			}
			if (pick(2) == 0) {
				static const char* labels[] = {"unit", "a \"b\"", "x\\y", "élément", ""};
				it.label = labels[pick(5)];
			}
			if (it.is_axiom()) {
				it.orientation = static_cast<Orientation>(pick(3));
			}
			t.push_back(std::move(it));
		}
		return t;
	}

private:
	std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

	std::string var() {
		static const char* vars[] = {"x", "y1", "Γ", "a_b", "p'", "k-2"};
		return vars[pick(6)];
	}

	std::string symbol() {
		static const char* syms[] = {"ob", "HOM", "f", "Lift", "ty-act"};
		return syms[pick(5)];
	}

	Telescope telescope() {
		Telescope out;
		std::size_t n = pick(3);
		for (std::size_t i = 0; i < n; ++i) {
			out.push_back({var() + std::to_string(i), sort(1)});
		}
		return out;
	}

	Substitution subst(int depth) {
		Substitution out;
		std::size_t n = depth > 0 ? pick(3) : 0;
		for (std::size_t i = 0; i < n; ++i) {
			out.push_back({var(), term(depth - 1)});
		}
		return out;
	}

	Sort sort(int depth) { return Sort::make(symbol(), subst(depth)); }

	Term term(int depth) {
		if (depth == 0 || pick(3) == 0) {
			return Term::var(var());
		}
		return Term::cut(symbol(), subst(depth));
	}

	std::mt19937_64 rng_;
};

TEST(RoundTrip, FuzzedTheories) {
	TheoryGen gen(7);
	for (int i = 0; i < 500; ++i) {
		Theory t = gen.theory();
		std::string text = print_theory(t);
		auto f = parse_file(text);
		ASSERT_TRUE(f.ok()) << text << "\n" << f.error().describe();
		EXPECT_EQ(f->theory, t) << text;
		EXPECT_EQ(print_file(*f), text);
	}
}

TEST(Fragments, ParseAndPrint) {
	EXPECT_TRUE(parse_telescope("").ok());
	EXPECT_EQ(tele("x: ob{}, y: hom{x/a}").size(), 2u);
	EXPECT_EQ(to_text(tele("x: ob{}, y: hom{x/a}")), "x: ob{}, y: hom{x/a}");
	EXPECT_FALSE(parse_term("f{x/a").ok());
	EXPECT_FALSE(parse_sort("x").ok());
	EXPECT_FALSE(parse_term("f{x/a} g").ok());
	EXPECT_EQ(to_text(testing::subst("x/a, f{}/b")), "x/a, f{}/b");
}

}  // namespace
}  // namespace gat
