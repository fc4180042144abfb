#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gat.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

class Report {
public:
	Report() = default;
	Report(const Report&) = delete;
	Report& operator=(const Report&) = delete;
	~Report() { gat_report_free(r_); }

	gat_report** out() { return &r_; }
	std::string text() const { return gat_report_text(r_); }
	std::string json() const { return gat_report_json(r_); }

private:
	gat_report* r_ = nullptr;
};

class Theory {
public:
	Theory() = default;
	Theory(const Theory&) = delete;
	Theory& operator=(const Theory&) = delete;
	~Theory() { gat_theory_free(t_); }

	gat_theory** out() { return &t_; }
	const gat_theory* get() const { return t_; }

private:
	gat_theory* t_ = nullptr;
};

int exit_code(gat_status s) {
	switch (s) {
	case GAT_OK: return exit_ok;
	case GAT_ERR_IO:
	case GAT_ERR_PARSE:
	case GAT_ERR_INVALID_ARGUMENT: return exit_usage;
	default: return exit_failed;
	}
}

/// Prints a query result: the text on stdout when it succeeded or is a
/// verdict, otherwise on stderr.
int emit(gat_status s, const Report& r) {
	if (s == GAT_OK || s == GAT_NOT_PROVEN) {
		std::cout << r.text();
	} else {
		std::cerr << "gat: " << gat_status_string(s) << ": " << r.text() << (r.text().ends_with('\n') ? "" : "\n");
	}
	return exit_code(s);
}

gat_config config_with(std::optional<std::size_t> fuel) {
	gat_config cfg;
	gat_config_default(&cfg);
	if (fuel) {
		cfg.fuel = *fuel;
	}
	return cfg;
}

/// Loads FILE for a query. Returns an exit code on failure.
std::optional<int> load(const std::string& file, const gat_config& cfg, Theory& th) {
	Report r;
	gat_status s = gat_theory_load_file(file.c_str(), &cfg, th.out(), r.out());
	if (s == GAT_OK) {
		return std::nullopt;
	}
	std::cerr << "gat: " << r.text();
	return s == GAT_ERR_IO || s == GAT_ERR_INVALID_ARGUMENT ? exit_usage : exit_failed;
}

const char* opt(const std::string& s) {
	return s.empty() ? nullptr : s.c_str();
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"Checker and equality engine for generalized algebraic theories", "gat"};
	app.require_subcommand(1);

	std::string file;
	std::string telescope;
	std::string term;
	std::optional<std::size_t> fuel;
	bool trace = false;

	auto* check = app.add_subcommand("check", "Parse and check a theory file");
	bool json = false;
	check->add_option("FILE", file, "Theory file")->required();
	check->add_flag("--json", json, "Print a machine-readable report");
	check->add_option("--fuel", fuel, "Rewrite step bound per equality query")->check(CLI::PositiveNumber);

	auto* sort_of = app.add_subcommand("sort-of", "Infer the sort of a term");
	sort_of->add_option("FILE", file, "Theory file")->required();
	sort_of->add_option("--telescope", telescope, "Variables in scope, e.g. \"x: ob{}\"");
	sort_of->add_option("--term", term, "Term to infer")->required();

	auto* eq = app.add_subcommand("eq", "Decide equality of two sorts or two terms");
	std::vector<std::string> sorts;
	std::vector<std::string> terms;
	std::string at;
	eq->add_option("FILE", file, "Theory file")->required();
	eq->add_option("--telescope", telescope, "Variables in scope");
	auto* sorts_opt = eq->add_option("--sorts", sorts, "Two sorts")->expected(2);
	auto* terms_opt = eq->add_option("--terms", terms, "Two terms")->expected(2);
	auto* at_opt = eq->add_option("--at", at, "Sort of the two terms");
	sorts_opt->excludes(terms_opt);
	sorts_opt->excludes(at_opt);
	terms_opt->needs(at_opt);
	at_opt->needs(terms_opt);
	eq->add_option("--fuel", fuel, "Rewrite step bound")->check(CLI::PositiveNumber);
	eq->add_flag("--trace", trace, "Print the derivation");

	auto* norm = app.add_subcommand("norm", "Normalize a term with the oriented axioms");
	norm->add_option("FILE", file, "Theory file")->required();
	norm->add_option("--telescope", telescope, "Variables in scope");
	norm->add_option("--term", term, "Term to normalize")->required();
	norm->add_option("--fuel", fuel, "Rewrite step bound")->check(CLI::PositiveNumber);
	norm->add_flag("--trace", trace, "Print the rewrite steps");

	auto* print = app.add_subcommand("print", "Print a theory file in canonical form");
	bool elide = false;
	print->add_option("FILE", file, "Theory file")->required();
	print->add_flag("--elide", elide, "Hide arguments that later parameters determine (display only)");

	auto* lib = app.add_subcommand("lib", "Bundled theories");
	lib->require_subcommand(1);
	auto* lib_list = lib->add_subcommand("list", "List bundled theories");
	auto* lib_path = lib->add_subcommand("path", "Print the path of a bundled theory");
	std::string name;
	lib_path->add_option("NAME", name, "Theory name")->required();

	auto* canon = app.add_subcommand("canonicity", "Evaluate generated closed terms of the observable type");
	std::size_t depth = 0;
	std::uint64_t seed = 0;
	std::size_t count = 0;
	std::string report_format;
	canon->add_option("--depth", depth, "Maximum term depth")->required()->check(CLI::PositiveNumber);
	canon->add_option("--seed", seed, "Generator seed")->required();
	canon->add_option("--count", count, "Terms to generate (default 64)");
	canon->add_option("--report", report_format, "Output format")->check(CLI::IsMember({"json"}));
	canon->add_option("--fuel", fuel, "Rewrite step bound per query")->check(CLI::PositiveNumber);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? exit_ok : exit_usage;
	}
	if (eq->parsed() && sorts.empty() && terms.empty()) {
		std::cerr << "gat eq: one of --sorts or --terms is required\n";
		return exit_usage;
	}

	gat_config cfg = config_with(fuel);

	if (check->parsed()) {
		Theory th;
		Report r;
		gat_status s = gat_theory_load_file(file.c_str(), &cfg, th.out(), r.out());
		if (json) {
			std::cout << r.json() << "\n";
		} else if (s == GAT_OK) {
			std::cout << r.text();
		}
		if (s != GAT_OK) {
			std::cerr << "gat: " << r.text();
		}
		if (s == GAT_OK) {
			return exit_ok;
		}
		return s == GAT_ERR_IO || s == GAT_ERR_INVALID_ARGUMENT ? exit_usage : exit_failed;
	}

	if (lib_list->parsed()) {
		for (std::size_t i = 0; i < gat_library_count(); ++i) {
			std::cout << gat_library_name(i) << "\n";
		}
		return exit_ok;
	}
	if (lib_path->parsed()) {
		Report r;
		return emit(gat_library_path(name.c_str(), r.out()), r);
	}

	if (canon->parsed()) {
		Report r;
		gat_status s = gat_canonicity(depth, seed, count, &cfg, r.out());
		if (s == GAT_OK || s == GAT_ERR_CHECK) {
			std::cout << (report_format == "json" ? r.json() + "\n" : r.text());
			return s == GAT_OK ? exit_ok : exit_failed;
		}
		return emit(s, r);
	}

	Theory th;
	if (auto code = load(file, cfg, th)) {
		return *code;
	}
	Report r;
	gat_status s = GAT_ERR_INTERNAL;
	if (sort_of->parsed()) {
		s = gat_sort_of(th.get(), opt(telescope), term.c_str(), &cfg, r.out());
	} else if (eq->parsed() && !sorts.empty()) {
		s = gat_eq_sorts(th.get(), opt(telescope), sorts[0].c_str(), sorts[1].c_str(), &cfg, trace, r.out());
	} else if (eq->parsed()) {
		s = gat_eq_terms(th.get(), opt(telescope), terms[0].c_str(), terms[1].c_str(), at.c_str(), &cfg, trace,
		                 r.out());
	} else if (norm->parsed()) {
		s = gat_normalize(th.get(), opt(telescope), term.c_str(), &cfg, trace, r.out());
	} else if (print->parsed()) {
		s = gat_theory_print(th.get(), elide ? GAT_PRINT_ELIDE : 0, r.out());
	}
	return emit(s, r);
}
