#include "gat/canonicity.hpp"

#include <stdexcept>

namespace gat {

namespace {

constexpr std::size_t max_context = 3;
constexpr std::size_t max_generated_size = 1000;

Term cut(const CheckedTheory& th, const char* name, std::initializer_list<Term> args) {
	const SymbolInfo* info = th.symbol(name);
	if (info == nullptr) {
		throw std::logic_error(std::string("theory lacks symbol ") + name);
	}
	const Telescope& params = th.params_of(*info);
	if (params.size() != args.size()) {
		throw std::logic_error(std::string("wrong argument count for ") + name);
	}
	Substitution s;
	std::size_t i = 0;
	for (const auto& a : args) {
		s.push_back(SubstEntry{params[i++].var, a});
	}
	return Term::cut(name, s);
}

bool head_is(const Term& m, const char* name) {
	return m.is_cut() && m.name() == name;
}

}  // namespace

std::string_view to_string(CanonicalValue v) noexcept {
	return v == CanonicalValue::red ? "red" : "green";
}

Term level_term(std::size_t n) {
	Term t = Term::cut("LZ", {});
	for (std::size_t i = 0; i < n; ++i) {
		t = Term::cut("LS", {SubstEntry{"a", t}});
	}
	return t;
}

Term canonical_term(CanonicalValue v, std::size_t level) {
	return Term::cut(v == CanonicalValue::red ? "RED" : "GREEN",
	                 {SubstEntry{"a", level_term(level)}, SubstEntry{"G", Term::cut("EMP", {})}});
}

Sort closed_obs_sort(std::size_t level) {
	Term l = level_term(level);
	Term emp = Term::cut("EMP", {});
	Term obs = Term::cut("OBS", {SubstEntry{"a", l}, SubstEntry{"G", emp}});
	return Sort::make("EL", {SubstEntry{"a", l}, SubstEntry{"G", emp}, SubstEntry{"A", obs}});
}

Evaluation evaluate_closed(const CheckedTheory& th, const Term& m, const EqEngineConfig& cfg) {
	Normalized n = normalize_term(th, m, cfg);
	Evaluation out{std::nullopt, n.term, n.steps_used, n.complete};
	if (n.complete && head_is(n.term, "RED")) {
		out.value = CanonicalValue::red;
	} else if (n.complete && head_is(n.term, "GREEN")) {
		out.value = CanonicalValue::green;
	}
	return out;
}

// Terms are built at one base level L throughout. Contexts hold types of
// level L; each entry is either observable-like or a function type.
struct ClosedTermGenerator::Impl {
	enum class Kind { obs, fun };

	struct Context {
		std::vector<Term> prefix{};
		std::vector<Term> types{};
		std::vector<Kind> kinds{};

		std::size_t size() const { return types.size(); }
		const Term& here() const { return prefix.back(); }
	};

	const CheckedTheory& th;
	std::mt19937_64& rng;
	std::size_t level;
	Term lvl;

	std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

	Context empty() {
		Context c;
		c.prefix.push_back(cut(th, "EMP", {}));
		return c;
	}

	Context extend(const Context& c, const Term& type, Kind kind) {
		Context out = c;
		out.prefix.push_back(cut(th, "EXT", {lvl, c.here(), type}));
		out.types.push_back(type);
		out.kinds.push_back(kind);
		return out;
	}

	Context drop_last(const Context& c) {
		Context out = c;
		out.prefix.pop_back();
		out.types.pop_back();
		out.kinds.pop_back();
		return out;
	}

	/// Proof of a < b for numerals.
	Term lt(std::size_t a, std::size_t b) {
		if (a == 0) {
			return cut(th, "LTZ", {level_term(b - 1)});
		}
		if (b == a + 1) {
			return cut(th, "LTS", {level_term(a)});
		}
		return cut(th, "LTCMP", {level_term(a), level_term(a + 1), level_term(b), cut(th, "LTS", {level_term(a)}),
		                         lt(a + 1, b)});
	}

	Term obs(const Term& ctx) { return cut(th, "OBS", {lvl, ctx}); }

	/// A code of level alpha < L computed by a beta redex over the universe:
	/// (lam X : U alpha. X) applied to the code of obs.
	Term code_redex(std::size_t alpha, const Term& ctx) {
		Term a = level_term(alpha);
		Term p = lt(alpha, level);
		Term u = cut(th, "U", {a, lvl, p, ctx});
		Term ext = cut(th, "EXT", {lvl, ctx, u});
		Term u_ext = cut(th, "U", {a, lvl, p, ext});
		Term body = cut(th, "VAR", {lvl, ctx, u});
		Term fn = cut(th, "LAM", {lvl, ctx, u, u_ext, body});
		return cut(th, "APP", {lvl, ctx, u, u_ext, fn, cut(th, "OBS", {a, ctx})});
	}

	/// A type of level L that normalizes to obs.
	Term obs_type(const Context& c) {
		const Term& ctx = c.here();
		if (level == 0) {
			return obs(ctx);
		}
		std::size_t alpha = pick(level);
		switch (pick(3)) {
		case 0: return obs(ctx);
		case 1:
			return cut(th, "LIFT", {level_term(alpha), lvl, lt(alpha, level), ctx, cut(th, "OBS", {level_term(alpha), ctx})});
		default:
			return cut(th, "LIFT", {level_term(alpha), lvl, lt(alpha, level), ctx, code_redex(alpha, ctx)});
		}
	}

	Term fun_type(const Context& c, const Term& domain) {
		const Term& ctx = c.here();
		return cut(th, "PI", {lvl, ctx, domain, obs(cut(th, "EXT", {lvl, ctx, domain}))});
	}

	/// Variable `i` counted from the end of the context, weakened to the whole context.
	Term variable(const Context& c, std::size_t i) {
		std::size_t j = c.size() - 1 - i;
		Term m = cut(th, "VAR", {lvl, c.prefix[j], c.types[j]});
		Term proj = cut(th, "PROJ", {lvl, c.prefix[j], c.types[j]});
		Term ty = cut(th, "TYACT", {lvl, c.prefix[j + 1], c.prefix[j], proj, c.types[j]});
		for (std::size_t k = j + 1; k < c.size(); ++k) {
			Term pk = cut(th, "PROJ", {lvl, c.prefix[k], c.types[k]});
			m = cut(th, "ELACT", {lvl, c.prefix[k + 1], c.prefix[k], pk, ty, m});
			ty = cut(th, "TYACT", {lvl, c.prefix[k + 1], c.prefix[k], pk, ty});
		}
		return m;
	}

	std::vector<std::size_t> vars_of(const Context& c, Kind kind) {
		std::vector<std::size_t> out;
		for (std::size_t i = 0; i < c.size(); ++i) {
			if (c.kinds[c.size() - 1 - i] == kind) {
				out.push_back(i);
			}
		}
		return out;
	}

	Term leaf(const Context& c) {
		auto vars = vars_of(c, Kind::obs);
		std::size_t n = 2 + vars.size();
		std::size_t k = pick(n);
		if (k == 0) {
			return cut(th, "RED", {lvl, c.here()});
		}
		if (k == 1) {
			return cut(th, "GREEN", {lvl, c.here()});
		}
		return variable(c, vars[k - 2]);
	}

	enum class Form { leaf, beta_obs, beta_fun, apply_var, subst_snoc, subst_bang, subst_proj };

	Term gen_obs(const Context& c, std::size_t depth, bool root = false) {
		if (depth <= 1) {
			return leaf(c);
		}
		std::vector<Form> forms;
		if (!root) {
			forms.push_back(Form::leaf);
		}
		bool room = c.size() < max_context;
		if (room) {
			forms.insert(forms.end(), {Form::beta_obs, Form::beta_obs, Form::beta_fun, Form::subst_snoc, Form::subst_snoc});
		}
		if (!vars_of(c, Kind::fun).empty()) {
			forms.insert(forms.end(), {Form::apply_var, Form::apply_var});
		}
		forms.push_back(Form::subst_bang);
		if (c.size() > 0) {
			forms.push_back(Form::subst_proj);
		}
		const Term& ctx = c.here();
		switch (forms[pick(forms.size())]) {
		case Form::leaf: return leaf(c);
		case Form::beta_obs: {
			Term a = obs_type(c);
			Term ext = cut(th, "EXT", {lvl, ctx, a});
			Term b = obs(ext);
			Term body = gen_obs(extend(c, a, Kind::obs), depth - 1);
			Term arg = gen_obs(c, depth - 1);
			return cut(th, "APP", {lvl, ctx, a, b, cut(th, "LAM", {lvl, ctx, a, b, body}), arg});
		}
		case Form::beta_fun: {
			Term p = fun_type(c, obs_type(c));
			Term ext = cut(th, "EXT", {lvl, ctx, p});
			Term b = obs(ext);
			Term body = gen_obs(extend(c, p, Kind::fun), depth - 1);
			Term f = gen_fun(c, p, depth - 1);
			return cut(th, "APP", {lvl, ctx, p, b, cut(th, "LAM", {lvl, ctx, p, b, body}), f});
		}
		case Form::apply_var: {
			auto vars = vars_of(c, Kind::fun);
			Term f = variable(c, vars[pick(vars.size())]);
			Term a = obs(ctx);
			Term b = obs(cut(th, "EXT", {lvl, ctx, a}));
			return cut(th, "APP", {lvl, ctx, a, b, f, gen_obs(c, depth - 1)});
		}
		case Form::subst_snoc: {
			Term a = obs_type(c);
			Term ext = cut(th, "EXT", {lvl, ctx, a});
			Term m = gen_obs(extend(c, a, Kind::obs), depth - 1);
			Term n = gen_obs(c, depth - 1);
			Term sub = cut(th, "SNOC", {lvl, ctx, ctx, a, cut(th, "HOMID", {ctx}), n});
			return cut(th, "ELACT", {lvl, ctx, ext, sub, obs(ext), m});
		}
		case Form::subst_bang: {
			Context e = empty();
			Term m = gen_obs(e, depth - 1);
			return cut(th, "ELACT", {lvl, ctx, e.here(), cut(th, "BANG", {ctx}), obs(e.here()), m});
		}
		case Form::subst_proj: {
			Context smaller = drop_last(c);
			Term m = gen_obs(smaller, depth - 1);
			Term proj = cut(th, "PROJ", {lvl, smaller.here(), c.types.back()});
			return cut(th, "ELACT", {lvl, ctx, smaller.here(), proj, obs(smaller.here()), m});
		}
		}
		return leaf(c);
	}

	/// An element of the function type `p` over the current context.
	Term gen_fun(const Context& c, const Term& p, std::size_t depth) {
		auto vars = vars_of(c, Kind::fun);
		if (!vars.empty() && (depth <= 1 || pick(3) == 0)) {
			return variable(c, vars[pick(vars.size())]);
		}
		const Term& ctx = c.here();
		Substitution args = p.args();
		const Term& a = args[2].value;
		const Term& b = args[3].value;
		Term body = gen_obs(extend(c, a, Kind::obs), depth > 1 ? depth - 1 : 1);
		return cut(th, "LAM", {lvl, ctx, a, b, body});
	}
};

ClosedTermGenerator::ClosedTermGenerator(const CheckedTheory& th, GenBudget budget)
    : th_(th), budget_(budget), rng_(budget.seed * 0x9E3779B97F4A7C15ULL + budget.max_depth) {
	if (budget_.max_depth < 1) {
		throw std::invalid_argument("generator depth must be at least 1");
	}
}

std::optional<ClosedTerm> ClosedTermGenerator::next() {
	const std::size_t max_attempts = 50 * budget_.count + 50;
	while (produced_ < budget_.count && attempts_ < max_attempts) {
		++attempts_;
		std::size_t level = budget_.max_depth == 1 ? 0 : static_cast<std::size_t>(rng_() % (budget_.level_cap + 1));
		Impl impl{th_, rng_, level, level_term(level)};
		Term m = impl.gen_obs(impl.empty(), budget_.max_depth, budget_.max_depth > 1);
		if (m.size() > max_generated_size || !seen_.insert(m.node()).second) {
			continue;
		}
		++produced_;
		return ClosedTerm{m, level, closed_obs_sort(level)};
	}
	return std::nullopt;
}

std::vector<ClosedTerm> generate_closed_obs_terms(const CheckedTheory& th, const GenBudget& budget) {
	ClosedTermGenerator gen(th, budget);
	std::vector<ClosedTerm> out;
	while (auto t = gen.next()) {
		out.push_back(std::move(*t));
	}
	return out;
}

CanonicityReport run_canonicity(const CheckedTheory& th, const GenBudget& budget, const EqEngineConfig& cfg) {
	CanonicityReport r;
	ClosedTermGenerator gen(th, budget);
	while (auto t = gen.next()) {
		++r.terms;
		if (!check_term(th, {}, t->term, t->sort, cfg)) {
			++r.ill_typed;
			continue;
		}
		Evaluation ev = evaluate_closed(th, t->term, cfg);
		r.max_steps = std::max(r.max_steps, ev.steps);
		if (ev.stuck()) {
			++r.stuck;
			continue;
		}
		(*ev.value == CanonicalValue::red ? r.red : r.green) += 1;
		EqResult eq = eq_term(th, {}, t->term, ev.normal_form, t->sort, cfg);
		if (!eq.equal() || !replay_trace(th, {}, t->term, eq.trace)) {
			++r.unconfirmed;
		}
	}
	return r;
}

}  // namespace gat
