#include "gat.h"

#include <exception>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gat/canonicity.hpp"
#include "gat/checker.hpp"
#include "gat/equality.hpp"
#include "gat/library.hpp"
#include "gat/surface.hpp"

struct gat_theory {
	gat::LoadedTheory loaded;
};

struct gat_report {
	gat_status status = GAT_OK;
	std::string text;
	std::string json;
};

namespace {

using nlohmann::json;

struct Failure {
	gat_status status;
	std::string message;
};

gat::EqEngineConfig engine_config(const gat_config* cfg) {
	gat::EqEngineConfig out;
	if (cfg != nullptr) {
		out.fuel = cfg->fuel;
		out.max_term_size = cfg->max_term_size;
	}
	if (!out.valid()) {
		throw Failure{GAT_ERR_INVALID_ARGUMENT, "fuel and max_term_size must be positive"};
	}
	return out;
}

gat_status deliver(gat_report** out, gat_status status, std::string text, std::string json_text = {}) {
	if (out != nullptr) {
		*out = new gat_report{status, std::move(text), std::move(json_text)};
	}
	return status;
}

template <typename F>
gat_status guarded(gat_report** out, F&& body) {
	if (out != nullptr) {
		*out = nullptr;
	}
	try {
		return body();
	} catch (const Failure& f) {
		return deliver(out, f.status, f.message);
	} catch (const std::bad_alloc&) {
		return deliver(out, GAT_ERR_INTERNAL, "out of memory");
	} catch (const std::exception& e) {
		return deliver(out, GAT_ERR_INTERNAL, std::string("internal error: ") + e.what());
	} catch (...) {
		return deliver(out, GAT_ERR_INTERNAL, "internal error");
	}
}

std::string required(const char* s, const char* what) {
	if (s == nullptr) {
		throw Failure{GAT_ERR_INVALID_ARGUMENT, std::string(what) + " is required"};
	}
	return s;
}

const gat::LoadedTheory& theory_of(const gat_theory* th) {
	if (th == nullptr) {
		throw Failure{GAT_ERR_INVALID_ARGUMENT, "theory is required"};
	}
	return th->loaded;
}

template <typename T>
T parsed_or_throw(gat::Parsed<T> p, const char* what) {
	if (!p) {
		throw Failure{GAT_ERR_PARSE, std::string("cannot parse ") + what + ": " + p.error().describe()};
	}
	return std::move(p).value();
}

template <typename T>
T checked_or_throw(gat::Checked<T> c) {
	if (!c) {
		throw Failure{GAT_ERR_CHECK, c.error().describe()};
	}
	return std::move(c).value();
}

gat::Telescope telescope_of(const gat::LoadedTheory& lt, const char* text, const gat::EqEngineConfig& cfg) {
	gat::Telescope psi;
	if (text != nullptr) {
		psi = parsed_or_throw(gat::parse_telescope(text, lt.notations), "telescope");
	}
	checked_or_throw(gat::check_telescope(lt.theory, psi, cfg));
	return psi;
}

std::string path_text(const gat::Path& p) {
	std::string out;
	for (auto i : p) {
		out += "/" + std::to_string(i);
	}
	return out.empty() ? "/" : out;
}

std::string trace_text(const gat::CheckedTheory& th, const gat::EqTrace& trace) {
	std::ostringstream os;
	std::size_t n = 0;
	for (const auto& s : trace.steps) {
		os << "  " << ++n << ". ";
		if (s.kind == gat::StepKind::irrelevance) {
			os << "irrelevance";
		} else {
			os << th.axiom_name(s.item) << (s.reversed ? " (right to left)" : "");
		}
		os << " at " << path_text(s.position) << ": " << gat::print_term(gat::Term::from_node(s.before)) << " ~> "
		   << gat::print_term(gat::Term::from_node(s.after)) << "\n";
	}
	return os.str();
}

std::string eq_text(const gat::CheckedTheory& th, const gat::EqResult& r, bool with_trace) {
	std::string out = r.equal() ? "Equal\n" : "NotProven\n";
	if (!r.equal() && !r.diagnostic.empty()) {
		out += "  " + r.diagnostic + "\n";
	}
	if (with_trace && r.equal()) {
		out += trace_text(th, r.trace);
	}
	return out;
}

json error_json(const std::string& kind, const json& item, const std::string& path, const std::string& expected,
                const std::string& found) {
	return json{{"kind", kind}, {"item", item}, {"path", path}, {"expected", expected}, {"found", found}};
}

std::string join(const std::vector<std::string>& xs) {
	std::string out;
	for (const auto& x : xs) {
		out += (out.empty() ? "" : ", ") + x;
	}
	return out;
}

json load_error_json(const gat::LoadError& e) {
	switch (e.stage) {
	case gat::LoadError::Stage::io: return error_json("IoError", nullptr, e.file, "", e.message);
	case gat::LoadError::Stage::parse: {
		const auto& p = *e.parse;
		return error_json("ParseError", nullptr,
		                  "line " + std::to_string(p.at.line) + ", column " + std::to_string(p.at.column),
		                  join(p.expected), p.found);
	}
	case gat::LoadError::Stage::check: {
		const auto& c = *e.check;
		return error_json(std::string(gat::to_string(c.kind)), c.item ? json(*c.item) : json(nullptr), c.path,
		                  c.expected, c.found);
	}
	}
	return error_json("InternalError", nullptr, "", "", e.message);
}

gat_status status_of(const gat::LoadError& e) {
	switch (e.stage) {
	case gat::LoadError::Stage::io: return GAT_ERR_IO;
	case gat::LoadError::Stage::parse: return GAT_ERR_PARSE;
	case gat::LoadError::Stage::check: return GAT_ERR_CHECK;
	}
	return GAT_ERR_INTERNAL;
}

gat_status finish_load(gat::Loaded loaded, std::size_t fuel_before, gat_theory** out, gat_report** report) {
	std::size_t fuel_used = gat::fuel_spent() - fuel_before;
	if (!loaded) {
		const gat::LoadError& e = loaded.error();
		std::size_t items = e.check ? (e.check->item ? *e.check->item : 0) : 0;
		json doc{{"status", "error"},
		         {"errors", json::array({load_error_json(e)})},
		         {"stats", {{"items", items}, {"fuel_used", fuel_used}}}};
		return deliver(report, status_of(e), e.describe() + "\n", doc.dump());
	}
	std::size_t items = loaded->file.theory.size();
	json doc{{"status", "ok"}, {"errors", json::array()}, {"stats", {{"items", items}, {"fuel_used", fuel_used}}}};
	auto c = loaded->theory.counts();
	std::ostringstream text;
	text << "ok: " << items << " items (" << c.sort_decls << " sorts, " << c.op_decls << " operations, "
	     << c.sort_axioms << " sort axioms, " << c.term_axioms << " term axioms including extended theories)\n";
	if (out != nullptr) {
		*out = new gat_theory{std::move(loaded).value()};
	}
	return deliver(report, GAT_OK, text.str(), doc.dump());
}

gat::Sort infer(const gat::LoadedTheory& lt, const gat::Telescope& psi, const gat::Term& m,
                const gat::EqEngineConfig& cfg) {
	return checked_or_throw(gat::infer_term(lt.theory, psi, m, cfg));
}

}  // namespace

extern "C" {

const char* gat_status_string(gat_status status) {
	switch (status) {
	case GAT_OK: return "ok";
	case GAT_NOT_PROVEN: return "not proven";
	case GAT_ERR_IO: return "i/o error";
	case GAT_ERR_PARSE: return "parse error";
	case GAT_ERR_CHECK: return "check failed";
	case GAT_ERR_INVALID_ARGUMENT: return "invalid argument";
	case GAT_ERR_INTERNAL: return "internal error";
	}
	return "unknown status";
}

void gat_config_default(gat_config* cfg) {
	if (cfg != nullptr) {
		gat::EqEngineConfig d;
		cfg->fuel = d.fuel;
		cfg->max_term_size = d.max_term_size;
	}
}

const char* gat_report_text(const gat_report* report) {
	return report == nullptr ? "" : report->text.c_str();
}

const char* gat_report_json(const gat_report* report) {
	return report == nullptr ? "" : report->json.c_str();
}

gat_status gat_report_status(const gat_report* report) {
	return report == nullptr ? GAT_ERR_INVALID_ARGUMENT : report->status;
}

void gat_report_free(gat_report* report) {
	delete report;
}

gat_status gat_theory_load_file(const char* path, const gat_config* cfg, gat_theory** out, gat_report** report) {
	if (out != nullptr) {
		*out = nullptr;
	}
	return guarded(report, [&] {
		std::string p = required(path, "path");
		auto c = engine_config(cfg);
		std::size_t before = gat::fuel_spent();
		return finish_load(gat::load_file(p, c), before, out, report);
	});
}

gat_status gat_theory_load_source(const char* text, const char* base_dir, const gat_config* cfg, gat_theory** out,
                                  gat_report** report) {
	if (out != nullptr) {
		*out = nullptr;
	}
	return guarded(report, [&] {
		std::string t = required(text, "text");
		auto c = engine_config(cfg);
		std::size_t before = gat::fuel_spent();
		return finish_load(gat::load_source(t, base_dir == nullptr ? "" : base_dir, c), before, out, report);
	});
}

gat_status gat_theory_load_library(const char* name, gat_theory** out, gat_report** report) {
	if (out != nullptr) {
		*out = nullptr;
	}
	return guarded(report, [&] {
		std::string n = required(name, "name");
		if (gat::lib::find(n) == nullptr) {
			throw Failure{GAT_ERR_INVALID_ARGUMENT, "no bundled theory named '" + n + "'"};
		}
		if (out != nullptr) {
			*out = new gat_theory{gat::lib::load_full(n)};
		}
		return deliver(report, GAT_OK, "ok\n");
	});
}

void gat_theory_free(gat_theory* theory) {
	delete theory;
}

gat_status gat_theory_counts(const gat_theory* theory, gat_counts* out) {
	if (theory == nullptr || out == nullptr) {
		return GAT_ERR_INVALID_ARGUMENT;
	}
	auto c = theory->loaded.theory.counts();
	*out = gat_counts{c.sort_decls, c.op_decls, c.sort_axioms, c.term_axioms};
	return GAT_OK;
}

gat_status gat_theory_print(const gat_theory* theory, int flags, gat_report** report) {
	return guarded(report, [&] {
		const auto& lt = theory_of(theory);
		std::string text;
		if ((flags & GAT_PRINT_ELIDE) != 0) {
			gat::PrintOptions opts;
			opts.elide = true;
			opts.context = &lt.theory.theory();
			text = gat::print_theory(lt.file.theory, lt.notations, opts);
		} else {
			text = gat::print_file(lt.file);
		}
		return deliver(report, GAT_OK, std::move(text));
	});
}

gat_status gat_sort_of(const gat_theory* theory, const char* telescope, const char* term, const gat_config* cfg,
                       gat_report** report) {
	return guarded(report, [&] {
		const auto& lt = theory_of(theory);
		auto c = engine_config(cfg);
		auto psi = telescope_of(lt, telescope, c);
		auto m = parsed_or_throw(gat::parse_term(required(term, "term"), lt.notations), "term");
		auto a = infer(lt, psi, m, c);
		return deliver(report, GAT_OK, gat::print_sort(a, lt.notations) + "\n");
	});
}

gat_status gat_eq_sorts(const gat_theory* theory, const char* telescope, const char* a, const char* b,
                        const gat_config* cfg, int with_trace, gat_report** report) {
	return guarded(report, [&] {
		const auto& lt = theory_of(theory);
		auto c = engine_config(cfg);
		auto psi = telescope_of(lt, telescope, c);
		auto sa = parsed_or_throw(gat::parse_sort(required(a, "first sort"), lt.notations), "first sort");
		auto sb = parsed_or_throw(gat::parse_sort(required(b, "second sort"), lt.notations), "second sort");
		checked_or_throw(gat::check_sort(lt.theory, psi, sa, c));
		checked_or_throw(gat::check_sort(lt.theory, psi, sb, c));
		auto r = gat::eq_sort(lt.theory, psi, sa, sb, c);
		return deliver(report, r.equal() ? GAT_OK : GAT_NOT_PROVEN, eq_text(lt.theory, r, with_trace != 0));
	});
}

gat_status gat_eq_terms(const gat_theory* theory, const char* telescope, const char* m, const char* n, const char* at,
                        const gat_config* cfg, int with_trace, gat_report** report) {
	return guarded(report, [&] {
		const auto& lt = theory_of(theory);
		auto c = engine_config(cfg);
		auto psi = telescope_of(lt, telescope, c);
		auto tm = parsed_or_throw(gat::parse_term(required(m, "first term"), lt.notations), "first term");
		auto tn = parsed_or_throw(gat::parse_term(required(n, "second term"), lt.notations), "second term");
		auto sa = parsed_or_throw(gat::parse_sort(required(at, "sort"), lt.notations), "sort");
		checked_or_throw(gat::check_sort(lt.theory, psi, sa, c));
		checked_or_throw(gat::check_term(lt.theory, psi, tm, sa, c));
		checked_or_throw(gat::check_term(lt.theory, psi, tn, sa, c));
		auto r = gat::eq_term(lt.theory, psi, tm, tn, sa, c);
		return deliver(report, r.equal() ? GAT_OK : GAT_NOT_PROVEN, eq_text(lt.theory, r, with_trace != 0));
	});
}

gat_status gat_normalize(const gat_theory* theory, const char* telescope, const char* term, const gat_config* cfg,
                         int with_trace, gat_report** report) {
	return guarded(report, [&] {
		const auto& lt = theory_of(theory);
		auto c = engine_config(cfg);
		auto psi = telescope_of(lt, telescope, c);
		auto m = parsed_or_throw(gat::parse_term(required(term, "term"), lt.notations), "term");
		infer(lt, psi, m, c);
		auto nf = gat::normalize_term(lt.theory, m, c);
		std::string text = gat::print_term(nf.term, lt.notations) + "\n";
		if (!nf.complete) {
			text += "  incomplete: bound reached after " + std::to_string(nf.steps_used) + " steps\n";
		}
		if (with_trace != 0) {
			text += trace_text(lt.theory, nf.trace);
		}
		return deliver(report, nf.complete ? GAT_OK : GAT_NOT_PROVEN, std::move(text));
	});
}

gat_status gat_canonicity(size_t depth, uint64_t seed, size_t count, const gat_config* cfg, gat_report** report) {
	return guarded(report, [&] {
		auto c = engine_config(cfg);
		if (depth < 1) {
			throw Failure{GAT_ERR_INVALID_ARGUMENT, "depth must be at least 1"};
		}
		gat::GenBudget budget;
		budget.max_depth = depth;
		budget.seed = seed;
		if (count > 0) {
			budget.count = count;
		}
		auto r = gat::run_canonicity(gat::lib::load("mltt"), budget, c);
		json doc{{"depth", depth},         {"seed", seed},   {"terms", r.terms},
		         {"red", r.red},           {"green", r.green}, {"stuck", r.stuck},
		         {"max_steps", r.max_steps}, {"ill_typed", r.ill_typed}, {"unconfirmed", r.unconfirmed},
		         {"status", r.ok() ? "ok" : "error"}};
		std::ostringstream text;
		text << "terms " << r.terms << "\nred " << r.red << "\ngreen " << r.green << "\nstuck " << r.stuck
		     << "\nmax_steps " << r.max_steps << "\n";
		if (r.ill_typed > 0 || r.unconfirmed > 0) {
			text << "ill_typed " << r.ill_typed << "\nunconfirmed " << r.unconfirmed << "\n";
		}
		return deliver(report, r.ok() ? GAT_OK : GAT_ERR_CHECK, text.str(), doc.dump());
	});
}

size_t gat_library_count(void) {
	return gat::lib::entries().size();
}

const char* gat_library_name(size_t index) {
	const auto& all = gat::lib::entries();
	return index < all.size() ? all[index].name.data() : nullptr;
}

gat_status gat_library_path(const char* name, gat_report** report) {
	return guarded(report, [&] {
		std::string n = required(name, "name");
		if (gat::lib::find(n) == nullptr) {
			throw Failure{GAT_ERR_INVALID_ARGUMENT, "no bundled theory named '" + n + "'"};
		}
		return deliver(report, GAT_OK, (gat::lib::directory() / (n + ".gat")).string() + "\n");
	});
}

}  // extern "C"
