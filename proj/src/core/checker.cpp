#include "gat/checker.hpp"

#include <unordered_map>

#include "gat/equality.hpp"
#include "gat/print.hpp"

namespace gat {

struct CheckedTheory::Data {
	Theory theory;
	std::unordered_map<std::string, SymbolInfo> symbols;
	std::unordered_map<std::string, std::vector<RewriteRule>> term_rules;
	std::unordered_map<std::string, std::vector<RewriteRule>> sort_rules;
	std::set<std::string> irrelevant;
};

namespace {

const std::vector<RewriteRule> no_rules;

std::string index_path(const std::string& base, const char* field, std::size_t i) {
	std::string out = base;
	if (!out.empty()) {
		out += '.';
	}
	out += field;
	out += '[';
	out += std::to_string(i);
	out += ']';
	return out;
}

std::string field_path(const std::string& base, const char* field) {
	if (base.empty()) {
		return field;
	}
	return base + "." + field;
}

CheckError make_error(ErrorKind kind, std::string path, std::string expected, std::string found,
                      std::string message) {
	return CheckError{kind, std::nullopt, std::move(path), std::move(expected), std::move(found),
	                  std::move(message)};
}

CheckError presupposition(const char* what, const CheckError& inner) {
	CheckError e = inner;
	e.kind = ErrorKind::presupposition_violation;
	e.message = std::string(what) + " is not well formed: " + inner.describe();
	return e;
}

bool is_irrelevance_axiom(const TermAxiom& ax) {
	if (!ax.lhs.is_var() || !ax.rhs.is_var() || ax.lhs.name() == ax.rhs.name()) {
		return false;
	}
	const Binding* lb = nullptr;
	const Binding* rb = nullptr;
	for (const auto& b : ax.params) {
		if (b.var == ax.lhs.name()) {
			lb = &b;
		}
		if (b.var == ax.rhs.name()) {
			rb = &b;
		}
	}
	if (lb == nullptr || rb == nullptr || !(lb->sort == ax.at) || !(rb->sort == ax.at)) {
		return false;
	}
	// The sort must be fully general: its arguments are distinct variables.
	std::set<std::string> seen;
	for (const auto& [target, value] : ax.at.node()->args) {
		if (!value->is_var() || !seen.insert(value->name).second) {
			return false;
		}
	}
	if (seen.count(ax.lhs.name()) > 0 || seen.count(ax.rhs.name()) > 0) {
		return false;
	}
	for (const auto& b : ax.params) {
		if (b.var != ax.lhs.name() && b.var != ax.rhs.name()) {
			auto fv = free_vars(b.sort);
			if (fv.count(ax.lhs.name()) > 0 || fv.count(ax.rhs.name()) > 0) {
				return false;
			}
		}
	}
	return true;
}

bool vars_subset(const NodePtr& small, const NodePtr& big) {
	std::set<std::string> a;
	std::set<std::string> b;
	collect_free_vars(*small, a);
	collect_free_vars(*big, b);
	for (const auto& v : a) {
		if (b.count(v) == 0) {
			return false;
		}
	}
	return true;
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
	switch (kind) {
	case ErrorKind::duplicate_symbol: return "DuplicateSymbol";
	case ErrorKind::duplicate_variable: return "DuplicateVariable";
	case ErrorKind::unknown_symbol: return "UnknownSymbol";
	case ErrorKind::unknown_variable: return "UnknownVariable";
	case ErrorKind::arity_mismatch: return "ArityMismatch";
	case ErrorKind::sort_mismatch: return "SortMismatch";
	case ErrorKind::not_a_sort_symbol: return "NotASortSymbol";
	case ErrorKind::not_an_op_symbol: return "NotAnOpSymbol";
	case ErrorKind::presupposition_violation: return "PresuppositionViolation";
	case ErrorKind::equality_fuel_exhausted: return "EqualityFuelExhausted";
	}
	return "Unknown";
}

std::string CheckError::describe() const {
	std::string out(to_string(kind));
	if (item) {
		out += " at item " + std::to_string(*item);
	}
	if (!path.empty()) {
		out += " (" + path + ")";
	}
	if (!message.empty()) {
		out += ": " + message;
	}
	if (!expected.empty() || !found.empty()) {
		out += " [expected " + expected + ", found " + found + "]";
	}
	return out;
}

/// Mutable construction state for a CheckedTheory. Each item is checked
/// against a view of the prefix built so far, then committed.
class TheoryBuilder {
public:
	TheoryBuilder() : data_(std::make_shared<CheckedTheory::Data>()) {}
	explicit TheoryBuilder(const CheckedTheory& base)
	    : data_(std::make_shared<CheckedTheory::Data>(*base.data_)) {}

	CheckedTheory view() const { return CheckedTheory(data_); }

	CheckStatus add(const Item& item, const EqEngineConfig& cfg) {
		const CheckedTheory th = view();
		std::size_t index = data_->theory.size();
		auto located = [&](CheckError e) {
			e.item = index;
			return e;
		};
		auto status = check_item(th, item, cfg);
		if (!status) {
			return located(status.error());
		}
		commit(item);
		return Unit{};
	}

	CheckedTheory finish() { return CheckedTheory(std::move(data_)); }

private:
	static CheckStatus check_params(const CheckedTheory& th, const Telescope& params, const EqEngineConfig& cfg) {
		std::set<std::string> seen;
		for (std::size_t i = 0; i < params.size(); ++i) {
			std::string path = index_path("", "params", i);
			if (!seen.insert(params[i].var).second) {
				return make_error(ErrorKind::duplicate_variable, path, "fresh variable", params[i].var,
				                  "variable '" + params[i].var + "' is already bound in this telescope");
			}
			Telescope prefix(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(i));
			auto s = detail::check_sort_in(th, prefix, params[i].sort, cfg, field_path(path, "sort"));
			if (!s) {
				return s;
			}
		}
		return Unit{};
	}

	CheckStatus check_item(const CheckedTheory& th, const Item& item, const EqEngineConfig& cfg) const {
		if (item.is_declaration() && data_->symbols.count(item.symbol()) > 0) {
			return make_error(ErrorKind::duplicate_symbol, "name", "fresh symbol", item.symbol(),
			                  "symbol '" + item.symbol() + "' is already declared");
		}
		auto tele = check_params(th, item.params(), cfg);
		if (!tele) {
			return tele;
		}
		if (const auto* op = std::get_if<OpDecl>(&item.body)) {
			return detail::check_sort_in(th, op->params, op->result, cfg, "result");
		}
		if (const auto* ax = std::get_if<SortAxiom>(&item.body)) {
			auto l = detail::check_sort_in(th, ax->params, ax->lhs, cfg, "lhs");
			if (!l) {
				return l;
			}
			return detail::check_sort_in(th, ax->params, ax->rhs, cfg, "rhs");
		}
		if (const auto* ax = std::get_if<TermAxiom>(&item.body)) {
			auto s = detail::check_sort_in(th, ax->params, ax->at, cfg, "at");
			if (!s) {
				return presupposition("sort", s.error());
			}
			auto l = detail::check_term_in(th, ax->params, ax->lhs, ax->at, cfg, "lhs");
			if (!l) {
				return l;
			}
			return detail::check_term_in(th, ax->params, ax->rhs, ax->at, cfg, "rhs");
		}
		return Unit{};
	}

	std::vector<bool> irrelevant_flags(const Telescope& params) const {
		std::vector<bool> flags;
		flags.reserve(params.size());
		for (const auto& b : params) {
			flags.push_back(data_->irrelevant.count(b.sort.head()) > 0);
		}
		return flags;
	}

	std::set<std::string> irrelevant_vars(const Telescope& params) const {
		std::set<std::string> out;
		for (const auto& b : params) {
			if (data_->irrelevant.count(b.sort.head()) > 0) {
				out.insert(b.var);
			}
		}
		return out;
	}

	void refresh_irrelevance() {
		for (auto& [name, info] : data_->symbols) {
			info.irrelevant_args = irrelevant_flags(data_->theory[info.item].params());
		}
		for (auto* table : {&data_->term_rules, &data_->sort_rules}) {
			for (auto& [head, rules] : *table) {
				for (auto& r : rules) {
					r.irrelevant_vars = irrelevant_vars(data_->theory[r.item].params());
				}
			}
		}
	}

	void add_rules(std::unordered_map<std::string, std::vector<RewriteRule>>& table, std::size_t index,
	               const NodePtr& lhs, const NodePtr& rhs, const Telescope& params) {
		auto vars = irrelevant_vars(params);
		if (lhs->is_cut() && vars_subset(rhs, lhs)) {
			table[lhs->name].push_back(RewriteRule{index, false, lhs, rhs, vars});
		}
		if (rhs->is_cut() && vars_subset(lhs, rhs)) {
			table[rhs->name].push_back(RewriteRule{index, true, rhs, lhs, vars});
		}
	}

	void commit(const Item& item) {
		std::size_t index = data_->theory.size();
		data_->theory.push_back(item);
		if (const auto* s = std::get_if<SortDecl>(&item.body)) {
			data_->symbols.emplace(s->name, SymbolInfo{SymbolKind::sort, index, irrelevant_flags(s->params)});
		} else if (const auto* o = std::get_if<OpDecl>(&item.body)) {
			data_->symbols.emplace(o->name, SymbolInfo{SymbolKind::op, index, irrelevant_flags(o->params)});
		} else if (const auto* ax = std::get_if<SortAxiom>(&item.body)) {
			add_rules(data_->sort_rules, index, ax->lhs.node(), ax->rhs.node(), ax->params);
		} else if (const auto* ax = std::get_if<TermAxiom>(&item.body)) {
			if (is_irrelevance_axiom(*ax)) {
				if (data_->irrelevant.insert(ax->at.head()).second) {
					refresh_irrelevance();
				}
			} else {
				add_rules(data_->term_rules, index, ax->lhs.node(), ax->rhs.node(), ax->params);
			}
		}
	}

	std::shared_ptr<CheckedTheory::Data> data_;
};

CheckedTheory::CheckedTheory() : data_(std::make_shared<Data>()) {}

CheckedTheory::CheckedTheory(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

const Theory& CheckedTheory::theory() const noexcept {
	return data_->theory;
}

const SymbolInfo* CheckedTheory::symbol(std::string_view name) const {
	auto it = data_->symbols.find(std::string(name));
	return it == data_->symbols.end() ? nullptr : &it->second;
}

const Telescope& CheckedTheory::params_of(const SymbolInfo& info) const {
	return data_->theory[info.item].params();
}

const Sort& CheckedTheory::result_of(const SymbolInfo& info) const {
	return std::get<OpDecl>(data_->theory[info.item].body).result;
}

const std::vector<RewriteRule>& CheckedTheory::term_rules(std::string_view head) const {
	auto it = data_->term_rules.find(std::string(head));
	return it == data_->term_rules.end() ? no_rules : it->second;
}

const std::vector<RewriteRule>& CheckedTheory::sort_rules(std::string_view head) const {
	auto it = data_->sort_rules.find(std::string(head));
	return it == data_->sort_rules.end() ? no_rules : it->second;
}

Orientation CheckedTheory::orientation(std::size_t item, const EqEngineConfig& cfg) const {
	auto it = cfg.orientation.find(item);
	if (it != cfg.orientation.end()) {
		return it->second;
	}
	return data_->theory[item].orientation;
}

bool CheckedTheory::is_irrelevant_sort(std::string_view head) const {
	return data_->irrelevant.count(std::string(head)) > 0;
}

const std::set<std::string>& CheckedTheory::irrelevant_sorts() const noexcept {
	return data_->irrelevant;
}

std::string CheckedTheory::axiom_name(std::size_t item) const {
	if (item < data_->theory.size() && !data_->theory[item].label.empty()) {
		return data_->theory[item].label;
	}
	return "axiom #" + std::to_string(item);
}

Checked<CheckedTheory> check_theory(const Theory& raw, const EqEngineConfig& cfg) {
	TheoryBuilder builder;
	for (const auto& item : raw.items()) {
		auto s = builder.add(item, cfg);
		if (!s) {
			return s.error();
		}
	}
	return builder.finish();
}

Checked<CheckedTheory> theory_extends(const CheckedTheory& base, const Theory& ext, const EqEngineConfig& cfg) {
	TheoryBuilder builder(base);
	for (const auto& item : ext.items()) {
		auto s = builder.add(item, cfg);
		if (!s) {
			CheckError e = s.error();
			if (e.item) {
				*e.item -= base.theory().size();
			}
			return e;
		}
	}
	return builder.finish();
}

namespace detail {

CheckStatus check_telescope_in(const CheckedTheory& th, const Telescope& psi, const EqEngineConfig& cfg,
                               const std::string& path) {
	std::set<std::string> seen;
	for (std::size_t i = 0; i < psi.size(); ++i) {
		std::string here = path.empty() ? "[" + std::to_string(i) + "]" : index_path(path, "", i);
		if (!seen.insert(psi[i].var).second) {
			return make_error(ErrorKind::duplicate_variable, here, "fresh variable", psi[i].var,
			                  "variable '" + psi[i].var + "' is already bound in this telescope");
		}
		Telescope prefix(psi.begin(), psi.begin() + static_cast<std::ptrdiff_t>(i));
		auto s = check_sort_in(th, prefix, psi[i].sort, cfg, field_path(here, "sort"));
		if (!s) {
			return s;
		}
	}
	return Unit{};
}

CheckStatus check_sort_in(const CheckedTheory& th, const Telescope& psi, const Sort& a, const EqEngineConfig& cfg,
                          const std::string& path) {
	const SymbolInfo* info = th.symbol(a.head());
	if (info == nullptr) {
		return make_error(ErrorKind::unknown_symbol, path, "a declared sort symbol", a.head(),
		                  "symbol '" + a.head() + "' is not declared");
	}
	if (info->kind != SymbolKind::sort) {
		return make_error(ErrorKind::not_a_sort_symbol, path, "a sort symbol", a.head(),
		                  "'" + a.head() + "' is an operation, not a sort");
	}
	return check_subst_in(th, psi, a.args(), th.params_of(*info), cfg, field_path(path, "args"));
}

Checked<Sort> infer_term_in(const CheckedTheory& th, const Telescope& psi, const Term& m, const EqEngineConfig& cfg,
                            const std::string& path) {
	if (m.is_var()) {
		for (auto it = psi.rbegin(); it != psi.rend(); ++it) {
			if (it->var == m.name()) {
				return it->sort;
			}
		}
		return make_error(ErrorKind::unknown_variable, path, "a variable of the telescope", m.name(),
		                  "variable '" + m.name() + "' is not bound");
	}
	const SymbolInfo* info = th.symbol(m.name());
	if (info == nullptr) {
		return make_error(ErrorKind::unknown_symbol, path, "a declared operation symbol", m.name(),
		                  "symbol '" + m.name() + "' is not declared");
	}
	if (info->kind != SymbolKind::op) {
		return make_error(ErrorKind::not_an_op_symbol, path, "an operation symbol", m.name(),
		                  "'" + m.name() + "' is a sort, not an operation");
	}
	Substitution args = m.args();
	auto s = check_subst_in(th, psi, args, th.params_of(*info), cfg, field_path(path, "args"));
	if (!s) {
		return s.error();
	}
	return subst_apply_sort(args, th.result_of(*info));
}

CheckStatus check_term_in(const CheckedTheory& th, const Telescope& psi, const Term& m, const Sort& a,
                          const EqEngineConfig& cfg, const std::string& path) {
	auto inferred = infer_term_in(th, psi, m, cfg, path);
	if (!inferred) {
		return inferred.error();
	}
	if (inferred.value() == a) {
		return Unit{};
	}
	EqResult eq = eq_sort(th, psi, inferred.value(), a, cfg);
	if (eq.equal()) {
		return Unit{};
	}
	if (eq.gave_up()) {
		return make_error(ErrorKind::equality_fuel_exhausted, path, to_text(a), to_text(inferred.value()),
		                  "equality engine gave up: " + eq.diagnostic);
	}
	return make_error(ErrorKind::sort_mismatch, path, to_text(a), to_text(inferred.value()),
	                  "term " + to_text(m) + " does not have the expected sort");
}

CheckStatus check_subst_in(const CheckedTheory& th, const Telescope& phi, const Substitution& psi,
                           const Telescope& target, const EqEngineConfig& cfg, const std::string& path) {
	if (psi.size() != target.size()) {
		return make_error(ErrorKind::arity_mismatch, path, std::to_string(target.size()), std::to_string(psi.size()),
		                  "expected " + std::to_string(target.size()) + " arguments, found " +
		                      std::to_string(psi.size()));
	}
	for (std::size_t i = 0; i < psi.size(); ++i) {
		std::string here = path + "[" + std::to_string(i) + "]";
		if (psi[i].target != target[i].var) {
			return make_error(ErrorKind::unknown_variable, here, target[i].var, psi[i].target,
			                  "substitution entry targets '" + psi[i].target + "' where '" + target[i].var +
			                      "' is expected");
		}
		// Later targets do not occur in this sort, so the whole substitution
		// acts as its prefix would.
		Sort expected = subst_apply_sort(psi, target[i].sort);
		auto s = check_term_in(th, phi, psi[i].value, expected, cfg, here);
		if (!s) {
			return s;
		}
	}
	return Unit{};
}

}  // namespace detail

CheckStatus check_telescope(const CheckedTheory& th, const Telescope& psi, const EqEngineConfig& cfg) {
	return detail::check_telescope_in(th, psi, cfg, "");
}

CheckStatus check_sort(const CheckedTheory& th, const Telescope& psi, const Sort& a, const EqEngineConfig& cfg) {
	if (auto t = check_telescope(th, psi, cfg); !t) {
		return presupposition("telescope", t.error());
	}
	return detail::check_sort_in(th, psi, a, cfg, "");
}

Checked<Sort> infer_term(const CheckedTheory& th, const Telescope& psi, const Term& m, const EqEngineConfig& cfg) {
	if (auto t = check_telescope(th, psi, cfg); !t) {
		return presupposition("telescope", t.error());
	}
	return detail::infer_term_in(th, psi, m, cfg, "");
}

CheckStatus check_term(const CheckedTheory& th, const Telescope& psi, const Term& m, const Sort& a,
                       const EqEngineConfig& cfg) {
	if (auto t = check_telescope(th, psi, cfg); !t) {
		return presupposition("telescope", t.error());
	}
	if (auto s = detail::check_sort_in(th, psi, a, cfg, ""); !s) {
		return presupposition("sort", s.error());
	}
	return detail::check_term_in(th, psi, m, a, cfg, "");
}

CheckStatus check_subst(const CheckedTheory& th, const Telescope& phi, const Substitution& psi,
                        const Telescope& target, const EqEngineConfig& cfg) {
	if (auto t = check_telescope(th, phi, cfg); !t) {
		return presupposition("source telescope", t.error());
	}
	if (auto t = check_telescope(th, target, cfg); !t) {
		return presupposition("target telescope", t.error());
	}
	return detail::check_subst_in(th, phi, psi, target, cfg, "");
}

}  // namespace gat
