#include "gat/equality.hpp"

#include <deque>
#include <unordered_map>

#include "gat/print.hpp"

namespace gat {

namespace {

struct FuelOut {};
struct SizeOut {};

constexpr std::size_t max_defer_depth = 24;
thread_local std::size_t thread_fuel = 0;
constexpr std::size_t max_bfs_states = 256;

const std::string placeholder = "?";

Path extend(const Path& p, std::uint32_t i) {
	Path out = p;
	out.push_back(i);
	return out;
}

Path concat(const Path& a, const Path& b) {
	Path out = a;
	out.insert(out.end(), b.begin(), b.end());
	return out;
}

EqStep flip(const EqStep& s) {
	EqStep r = s;
	std::swap(r.before, r.after);
	if (r.kind == StepKind::axiom) {
		r.reversed = !r.reversed;
	}
	return r;
}

using Bindings = std::vector<std::pair<std::string, NodePtr>>;

const NodePtr* lookup(const Bindings& b, const std::string& var) {
	for (const auto& [name, value] : b) {
		if (name == var) {
			return &value;
		}
	}
	return nullptr;
}

Substitution as_subst(const Bindings& b) {
	Substitution out;
	out.reserve(b.size());
	for (const auto& [name, value] : b) {
		out.push_back(SubstEntry{name, Term::from_node(value)});
	}
	return out;
}

bool vars_bound(const Node& n, const Bindings& b) {
	if (n.is_var()) {
		return lookup(b, n.name) != nullptr;
	}
	for (const auto& arg : n.args) {
		if (!vars_bound(*arg.second, b)) {
			return false;
		}
	}
	return true;
}

bool same_shape(const Node& p, const Node& s) {
	if (!s.is_cut() || p.name != s.name || p.args.size() != s.args.size()) {
		return false;
	}
	for (std::size_t i = 0; i < p.args.size(); ++i) {
		if (p.args[i].first != s.args[i].first) {
			return false;
		}
	}
	return true;
}

class Engine {
public:
	Engine(const CheckedTheory& th, const EqEngineConfig& cfg) : th_(th), cfg_(cfg) {}

	std::size_t used() const { return used_; }

	/// Sort of the i-th argument of `parent`, instantiated with its earlier arguments.
	std::optional<Sort> child_sort(const NodePtr& parent, std::size_t i) const {
		const SymbolInfo* info = th_.symbol(parent->name);
		if (info == nullptr) {
			return std::nullopt;
		}
		const Telescope& params = th_.params_of(*info);
		if (i >= params.size()) {
			return std::nullopt;
		}
		Substitution args;
		for (std::size_t k = 0; k < i && k < parent->args.size(); ++k) {
			args.push_back(SubstEntry{parent->args[k].first, Term::from_node(parent->args[k].second)});
		}
		return subst_apply_sort(args, params[i].sort);
	}

	bool arg_irrelevant(const Node& parent, std::size_t i) const {
		const SymbolInfo* info = th_.symbol(parent.name);
		return info != nullptr && i < info->irrelevant_args.size() && info->irrelevant_args[i];
	}

	NodePtr normalize(const NodePtr& n, const Path& pos, std::vector<EqStep>& out) {
		if (n->is_var()) {
			return n;
		}
		if (auto it = cache_.find(n); it != cache_.end()) {
			charge(it->second.steps.size());
			for (const auto& s : it->second.steps) {
				EqStep c = s;
				c.position = concat(pos, s.position);
				out.push_back(std::move(c));
			}
			return it->second.nf;
		}
		std::size_t mark = out.size();
		NodePtr cur = normalize_args(n, pos, out);
		while (true) {
			auto next = rewrite_root(cur, pos, out);
			if (!next) {
				break;
			}
			cur = normalize_args(*next, pos, out);
		}
		CacheEntry entry{cur, {}};
		entry.steps.reserve(out.size() - mark);
		for (std::size_t k = mark; k < out.size(); ++k) {
			EqStep c = out[k];
			c.position.erase(c.position.begin(), c.position.begin() + static_cast<std::ptrdiff_t>(pos.size()));
			entry.steps.push_back(std::move(c));
		}
		cache_.emplace(n, std::move(entry));
		return cur;
	}

	/// Rewrites `from` into `to` using only irrelevance steps, when they
	/// agree everywhere except at proof-irrelevant positions.
	bool join(const NodePtr& from, const NodePtr& to, const Path& pos, bool irrelevant, const std::optional<Sort>& at,
	          std::vector<EqStep>& out) const {
		if (node_equal(from, to)) {
			return true;
		}
		if (irrelevant && at) {
			out.push_back(EqStep{StepKind::irrelevance, 0, false, pos, from, to, at});
			return true;
		}
		if (!same_shape(*from, *to)) {
			return false;
		}
		for (std::size_t i = 0; i < from->args.size(); ++i) {
			bool irr = arg_irrelevant(*to, i);
			std::optional<Sort> child_at;
			if (irr && !node_equal(from->args[i].second, to->args[i].second)) {
				child_at = child_sort(to, i);
			}
			if (!join(from->args[i].second, to->args[i].second, extend(pos, static_cast<std::uint32_t>(i)), irr,
			          child_at, out)) {
				return false;
			}
		}
		return true;
	}

	/// Erases every proof-irrelevant position, so that two nodes join exactly
	/// when their keys are equal.
	NodePtr key(const NodePtr& n) const {
		if (n->is_var()) {
			return n;
		}
		const SymbolInfo* info = th_.symbol(n->name);
		bool changed = false;
		std::vector<std::pair<std::string, NodePtr>> args;
		args.reserve(n->args.size());
		for (std::size_t i = 0; i < n->args.size(); ++i) {
			NodePtr v;
			if (info != nullptr && i < info->irrelevant_args.size() && info->irrelevant_args[i]) {
				v = Node::make_var(placeholder);
			} else {
				v = key(n->args[i].second);
			}
			changed = changed || v != n->args[i].second;
			args.emplace_back(n->args[i].first, std::move(v));
		}
		return changed ? Node::make_cut(n->name, std::move(args)) : n;
	}

	/// Attempts one rule at the root of `subject`. On success appends the
	/// steps that turn `subject` into the rule instance and then the axiom
	/// step itself, and returns the rewritten node.
	std::optional<NodePtr> apply_rule(const RewriteRule& rule, const NodePtr& subject, const Path& pos,
	                                  std::vector<EqStep>& out) {
		MatchState st;
		if (!match(rule.lhs, subject, {}, nullptr, 0, st)) {
			return std::nullopt;
		}
		std::vector<EqStep> fixes;
		for (const auto& d : st.pending) {
			if (!vars_bound(*d.pattern, st.binds)) {
				return std::nullopt;
			}
			Substitution theta = as_subst(st.binds);
			NodePtr inst = subst_apply_node(theta, d.pattern);
			Path at_pos = concat(pos, d.position);
			if (d.irrelevant) {
				auto at = child_sort(subst_apply_node(theta, d.parent), d.index);
				if (!at) {
					return std::nullopt;
				}
				fixes.push_back(EqStep{StepKind::irrelevance, 0, false, at_pos, d.subject, inst, at});
				continue;
			}
			if (depth_ >= max_defer_depth) {
				return std::nullopt;
			}
			++depth_;
			std::vector<EqStep> norm;
			NodePtr nf;
			try {
				nf = normalize(inst, at_pos, norm);
			} catch (...) {
				--depth_;
				throw;
			}
			--depth_;
			if (!join(d.subject, nf, at_pos, false, std::nullopt, fixes)) {
				return std::nullopt;
			}
			for (auto it = norm.rbegin(); it != norm.rend(); ++it) {
				fixes.push_back(flip(*it));
			}
		}
		Substitution theta = as_subst(st.binds);
		NodePtr before = subst_apply_node(theta, rule.lhs);
		NodePtr after = subst_apply_node(theta, rule.rhs);
		if (after->size > cfg_.max_term_size) {
			throw SizeOut{};
		}
		charge(1);
		for (auto& f : fixes) {
			out.push_back(std::move(f));
		}
		out.push_back(EqStep{StepKind::axiom, rule.item, rule.reversed, pos, before, after, std::nullopt});
		return after;
	}

	bool usable(const RewriteRule& rule) const {
		Orientation o = th_.orientation(rule.item, cfg_);
		return rule.reversed ? o == Orientation::right_to_left : o == Orientation::left_to_right;
	}

	bool usable_both_ways(const RewriteRule& rule) const {
		return th_.orientation(rule.item, cfg_) != Orientation::none;
	}

	void charge(std::size_t n) {
		if (used_ + n > cfg_.fuel) {
			throw FuelOut{};
		}
		used_ += n;
		thread_fuel += n;
	}

private:
	struct Pending {
		NodePtr pattern;
		NodePtr subject;
		Path position;
		bool irrelevant;
		NodePtr parent;
		std::size_t index;
	};

	struct MatchState {
		Bindings binds;
		std::vector<Pending> pending;
	};

	struct CacheEntry {
		NodePtr nf;
		std::vector<EqStep> steps;
	};

	bool match(const NodePtr& p, const NodePtr& s, const Path& rel, const NodePtr& parent, std::size_t index,
	           MatchState& st) const {
		bool irrelevant = parent != nullptr && arg_irrelevant(*parent, index);
		if (p->is_var()) {
			const NodePtr* bound = lookup(st.binds, p->name);
			if (bound == nullptr) {
				st.binds.emplace_back(p->name, s);
				return true;
			}
			if (node_equal(*bound, s)) {
				return true;
			}
			if (irrelevant) {
				st.pending.push_back(Pending{p, s, rel, true, parent, index});
				return true;
			}
			return false;
		}
		if (same_shape(*p, *s)) {
			std::size_t bind_mark = st.binds.size();
			std::size_t pending_mark = st.pending.size();
			bool ok = true;
			for (std::size_t i = 0; ok && i < p->args.size(); ++i) {
				ok = match(p->args[i].second, s->args[i].second, extend(rel, static_cast<std::uint32_t>(i)), p, i, st);
			}
			if (rel.empty()) {
				return ok;
			}
			bool deferred_inside = false;
			for (std::size_t k = pending_mark; k < st.pending.size(); ++k) {
				deferred_inside = deferred_inside || !st.pending[k].irrelevant;
			}
			if (ok && !deferred_inside) {
				return true;
			}
			// Defer the whole subterm: its normalized instance may be a different
			// cut than the one a child mismatch would suggest.
			if (!ok) {
				st.binds.resize(bind_mark);
			}
			st.pending.resize(pending_mark);
		} else if (rel.empty()) {
			return false;
		}
		st.pending.push_back(Pending{p, s, rel, irrelevant, parent, index});
		return true;
	}

	NodePtr normalize_args(const NodePtr& n, const Path& pos, std::vector<EqStep>& out) {
		if (n->is_var()) {
			return n;
		}
		bool changed = false;
		std::vector<std::pair<std::string, NodePtr>> args;
		args.reserve(n->args.size());
		for (std::size_t i = 0; i < n->args.size(); ++i) {
			NodePtr v = normalize(n->args[i].second, extend(pos, static_cast<std::uint32_t>(i)), out);
			changed = changed || v != n->args[i].second;
			args.emplace_back(n->args[i].first, std::move(v));
		}
		if (!changed) {
			return n;
		}
		NodePtr r = Node::make_cut(n->name, std::move(args));
		if (r->size > cfg_.max_term_size) {
			throw SizeOut{};
		}
		return r;
	}

	std::optional<NodePtr> rewrite_root(const NodePtr& n, const Path& pos, std::vector<EqStep>& out) {
		for (const auto& rule : th_.term_rules(n->name)) {
			if (!usable(rule)) {
				continue;
			}
			if (auto r = apply_rule(rule, n, pos, out)) {
				return r;
			}
		}
		return std::nullopt;
	}

	const CheckedTheory& th_;
	const EqEngineConfig& cfg_;
	std::size_t used_ = 0;
	std::size_t depth_ = 0;
	std::unordered_map<NodePtr, CacheEntry, NodePtrHash, NodePtrEqual> cache_;
};

EqResult gave_up(const Engine& e, bool fuel) {
	EqResult r;
	r.verdict = Verdict::not_proven;
	r.steps_used = e.used();
	r.fuel_exhausted = fuel;
	r.size_exceeded = !fuel;
	r.diagnostic = fuel ? "fuel exhausted" : "term size limit exceeded";
	return r;
}

EqResult proven(const Engine& e, std::vector<EqStep> steps) {
	EqResult r;
	r.verdict = Verdict::equal;
	r.trace.steps = std::move(steps);
	r.steps_used = e.used();
	return r;
}

EqResult not_proven(const Engine& e, std::string why) {
	EqResult r;
	r.verdict = Verdict::not_proven;
	r.steps_used = e.used();
	r.diagnostic = std::move(why);
	return r;
}

NodePtr subst_node(const Substitution& psi) {
	std::vector<std::pair<std::string, NodePtr>> args;
	args.reserve(psi.size());
	for (const auto& e : psi) {
		args.emplace_back(e.target, e.value.node());
	}
	return Node::make_cut("", std::move(args));
}

/// Bidirectional search over sort-axiom applications at the root.
class SortSearch {
public:
	SortSearch(Engine& engine, const CheckedTheory& th) : engine_(engine), th_(th) {}

	std::optional<std::vector<EqStep>> run(const NodePtr& a, const NodePtr& b) {
		sides_[0].origin = a;
		sides_[1].origin = b;
		if (auto hit = add(0, a, -1, {})) {
			return hit;
		}
		if (auto hit = add(1, b, -1, {})) {
			return hit;
		}
		for (int s = 0; s < 2; ++s) {
			std::vector<EqStep> steps;
			NodePtr n = normalize_sort(sides_[s].states[0].node, steps);
			if (auto hit = add(s, n, 0, std::move(steps))) {
				return hit;
			}
		}
		std::size_t cursor[2] = {0, 0};
		while (true) {
			bool progressed = false;
			for (int s = 0; s < 2; ++s) {
				if (cursor[s] >= sides_[s].states.size()) {
					continue;
				}
				progressed = true;
				if (auto hit = expand(s, cursor[s]++)) {
					return hit;
				}
			}
			if (!progressed) {
				return std::nullopt;
			}
		}
	}

private:
	struct State {
		NodePtr node;
		int parent;
		std::vector<EqStep> steps;
	};

	struct Side {
		NodePtr origin;
		std::vector<State> states;
		std::unordered_map<NodePtr, std::size_t, NodePtrHash, NodePtrEqual> seen;
	};

	NodePtr normalize_sort(const NodePtr& n, std::vector<EqStep>& steps) {
		bool changed = false;
		std::vector<std::pair<std::string, NodePtr>> args;
		for (std::size_t i = 0; i < n->args.size(); ++i) {
			NodePtr v = engine_.normalize(n->args[i].second, Path{static_cast<std::uint32_t>(i)}, steps);
			changed = changed || v != n->args[i].second;
			args.emplace_back(n->args[i].first, std::move(v));
		}
		return changed ? Node::make_cut(n->name, std::move(args)) : n;
	}

	std::optional<std::vector<EqStep>> expand(int s, std::size_t idx) {
		NodePtr node = sides_[s].states[idx].node;
		for (const auto& rule : th_.sort_rules(node->name)) {
			if (!engine_.usable_both_ways(rule)) {
				continue;
			}
			std::vector<EqStep> steps;
			auto next = engine_.apply_rule(rule, node, {}, steps);
			if (!next) {
				continue;
			}
			std::size_t before = sides_[s].states.size();
			if (auto hit = add(s, *next, static_cast<int>(idx), steps)) {
				return hit;
			}
			int from = sides_[s].states.size() > before ? static_cast<int>(before) : -1;
			if (from >= 0) {
				std::vector<EqStep> norm;
				NodePtr n = normalize_sort(*next, norm);
				if (auto hit = add(s, n, from, std::move(norm))) {
					return hit;
				}
			}
		}
		return std::nullopt;
	}

	std::optional<std::vector<EqStep>> add(int s, const NodePtr& node, int parent, std::vector<EqStep> steps) {
		Side& side = sides_[s];
		if (side.states.size() >= max_bfs_states) {
			return std::nullopt;
		}
		NodePtr k = engine_.key(node);
		if (side.seen.count(k) > 0) {
			return std::nullopt;
		}
		side.states.push_back(State{node, parent, std::move(steps)});
		std::size_t idx = side.states.size() - 1;
		side.seen.emplace(k, idx);
		Side& other = sides_[1 - s];
		auto it = other.seen.find(k);
		if (it == other.seen.end()) {
			return std::nullopt;
		}
		std::size_t ia = s == 0 ? idx : it->second;
		std::size_t ib = s == 0 ? it->second : idx;
		std::vector<EqStep> out = path(0, ia);
		if (!engine_.join(sides_[0].states[ia].node, sides_[1].states[ib].node, {}, false, std::nullopt, out)) {
			return std::nullopt;
		}
		std::vector<EqStep> back = path(1, ib);
		for (auto r = back.rbegin(); r != back.rend(); ++r) {
			out.push_back(flip(*r));
		}
		return out;
	}

	std::vector<EqStep> path(int s, std::size_t idx) const {
		std::vector<std::size_t> chain;
		for (int i = static_cast<int>(idx); i >= 0; i = sides_[s].states[static_cast<std::size_t>(i)].parent) {
			chain.push_back(static_cast<std::size_t>(i));
		}
		std::vector<EqStep> out;
		for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
			const auto& st = sides_[s].states[*it].steps;
			out.insert(out.end(), st.begin(), st.end());
		}
		return out;
	}

	Engine& engine_;
	const CheckedTheory& th_;
	Side sides_[2];
};

}  // namespace

EqTrace EqTrace::reversed() const {
	EqTrace out;
	out.steps.reserve(steps.size());
	for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
		out.steps.push_back(flip(*it));
	}
	return out;
}

void EqTrace::append(const EqTrace& other) {
	steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

EqResult search_sort(const CheckedTheory& th, const Sort& a, const Sort& b, const EqEngineConfig& cfg) {
	Engine engine(th, cfg);
	if (a == b) {
		return proven(engine, {});
	}
	try {
		SortSearch search(engine, th);
		if (auto steps = search.run(a.node(), b.node())) {
			return proven(engine, std::move(*steps));
		}
	} catch (const FuelOut&) {
		return gave_up(engine, true);
	} catch (const SizeOut&) {
		return gave_up(engine, false);
	}
	return not_proven(engine, "no derivation found between " + to_text(a) + " and " + to_text(b));
}

EqResult search_term(const CheckedTheory& th, const Term& m, const Term& n, const Sort& at,
                     const EqEngineConfig& cfg) {
	Engine engine(th, cfg);
	if (m == n) {
		return proven(engine, {});
	}
	if (th.is_irrelevant_sort(at.head())) {
		return proven(engine, {EqStep{StepKind::irrelevance, 0, false, {}, m.node(), n.node(), at}});
	}
	try {
		std::vector<EqStep> left;
		std::vector<EqStep> right;
		NodePtr ml = engine.normalize(m.node(), {}, left);
		NodePtr nl = engine.normalize(n.node(), {}, right);
		if (!engine.join(ml, nl, {}, false, std::nullopt, left)) {
			return not_proven(engine, "normal forms differ: " + to_text(*ml) + " and " + to_text(*nl));
		}
		for (auto it = right.rbegin(); it != right.rend(); ++it) {
			left.push_back(flip(*it));
		}
		return proven(engine, std::move(left));
	} catch (const FuelOut&) {
		return gave_up(engine, true);
	} catch (const SizeOut&) {
		return gave_up(engine, false);
	}
}

EqResult search_subst(const CheckedTheory& th, const Substitution& p0, const Substitution& p1,
                      const Telescope& target, const EqEngineConfig& cfg) {
	Engine engine(th, cfg);
	if (p0.size() != p1.size() || p0.size() != target.size()) {
		return not_proven(engine, "substitutions have different lengths");
	}
	try {
		std::vector<EqStep> out;
		std::vector<EqStep> back;
		Substitution prefix;
		for (std::size_t i = 0; i < p0.size(); ++i) {
			Sort at = subst_apply_sort(prefix, target[i].sort);
			prefix.push_back(p1[i]);
			if (p0[i].target != p1[i].target) {
				return not_proven(engine, "substitutions have different targets");
			}
			Path pos{static_cast<std::uint32_t>(i)};
			if (th.is_irrelevant_sort(at.head())) {
				if (!(p0[i].value == p1[i].value)) {
					out.push_back(EqStep{StepKind::irrelevance, 0, false, pos, p0[i].value.node(), p1[i].value.node(), at});
				}
				continue;
			}
			NodePtr l = engine.normalize(p0[i].value.node(), pos, out);
			std::vector<EqStep> r;
			NodePtr rn = engine.normalize(p1[i].value.node(), pos, r);
			if (!engine.join(l, rn, pos, false, std::nullopt, out)) {
				return not_proven(engine, "entry " + p0[i].target + " differs: " + to_text(*l) + " and " + to_text(*rn));
			}
			for (auto it = r.rbegin(); it != r.rend(); ++it) {
				out.push_back(flip(*it));
			}
		}
		return proven(engine, std::move(out));
	} catch (const FuelOut&) {
		return gave_up(engine, true);
	} catch (const SizeOut&) {
		return gave_up(engine, false);
	}
}

EqualObserver observer = nullptr;
void* observer_ctx = nullptr;

EqResult observed(EqResult r, const CheckedTheory& th, const Telescope& psi, const Object& lhs, const Object& rhs) {
	if (observer != nullptr && r.equal()) {
		observer(th, psi, lhs, rhs, r.trace, observer_ctx);
	}
	return r;
}

}  // namespace

EqResult eq_sort(const CheckedTheory& th, const Telescope& psi, const Sort& a, const Sort& b, const EqEngineConfig& cfg) {
	return observed(search_sort(th, a, b, cfg), th, psi, a, b);
}

EqResult eq_term(const CheckedTheory& th, const Telescope& psi, const Term& m, const Term& n, const Sort& at,
                 const EqEngineConfig& cfg) {
	return observed(search_term(th, m, n, at, cfg), th, psi, m, n);
}

EqResult eq_subst(const CheckedTheory& th, const Telescope& phi, const Substitution& p0, const Substitution& p1,
                  const Telescope& target, const EqEngineConfig& cfg) {
	return observed(search_subst(th, p0, p1, target, cfg), th, phi, p0, p1);
}

void set_equal_observer(EqualObserver f, void* ctx) noexcept {
	observer = f;
	observer_ctx = ctx;
}

Normalized normalize_term(const CheckedTheory& th, const Term& m, const EqEngineConfig& cfg) {
	Engine engine(th, cfg);
	Normalized out{m, {}, 0, true};
	try {
		NodePtr n = engine.normalize(m.node(), {}, out.trace.steps);
		out.term = Term::from_node(n);
	} catch (const FuelOut&) {
		out.trace.steps.clear();
		out.complete = false;
	} catch (const SizeOut&) {
		out.trace.steps.clear();
		out.complete = false;
	}
	out.steps_used = engine.used();
	return out;
}

Sort normalize_sort_args(const CheckedTheory& th, const Sort& a, const EqEngineConfig& cfg) {
	Engine engine(th, cfg);
	try {
		std::vector<EqStep> steps;
		std::vector<std::pair<std::string, NodePtr>> args;
		for (std::size_t i = 0; i < a.node()->args.size(); ++i) {
			args.emplace_back(a.node()->args[i].first,
			                  engine.normalize(a.node()->args[i].second, Path{static_cast<std::uint32_t>(i)}, steps));
		}
		return Sort::from_node(Node::make_cut(a.head(), std::move(args)));
	} catch (const FuelOut&) {
		return a;
	} catch (const SizeOut&) {
		return a;
	}
}

namespace detail {

NodePtr object_node(const Object& obj) {
	if (const auto* t = std::get_if<Term>(&obj)) {
		return t->node();
	}
	if (const auto* s = std::get_if<Sort>(&obj)) {
		return s->node();
	}
	return subst_node(std::get<Substitution>(obj));
}

Object node_object(const Object& like, const NodePtr& n) {
	if (std::holds_alternative<Term>(like)) {
		return Term::from_node(n);
	}
	if (std::holds_alternative<Sort>(like)) {
		return Sort::from_node(n);
	}
	Substitution out;
	for (const auto& [target, value] : n->args) {
		out.push_back(SubstEntry{target, Term::from_node(value)});
	}
	return out;
}

NodePtr node_at(const NodePtr& root, const Path& path, std::size_t depth) {
	NodePtr cur = root;
	for (std::size_t i = depth; i < path.size(); ++i) {
		if (!cur->is_cut() || path[i] >= cur->args.size()) {
			return nullptr;
		}
		cur = cur->args[path[i]].second;
	}
	return cur;
}

NodePtr replace_at(const NodePtr& root, const Path& path, const NodePtr& value, std::size_t depth) {
	if (depth == path.size()) {
		return value;
	}
	auto args = root->args;
	args[path[depth]].second = replace_at(root->args[path[depth]].second, path, value, depth + 1);
	return Node::make_cut(root->name, std::move(args));
}

}  // namespace detail

namespace {

bool literal_match(const NodePtr& p, const NodePtr& s, Bindings& b) {
	if (p->is_var()) {
		if (const NodePtr* bound = lookup(b, p->name)) {
			return node_equal(*bound, s);
		}
		b.emplace_back(p->name, s);
		return true;
	}
	if (!same_shape(*p, *s)) {
		return false;
	}
	for (std::size_t i = 0; i < p->args.size(); ++i) {
		if (!literal_match(p->args[i].second, s->args[i].second, b)) {
			return false;
		}
	}
	return true;
}

bool is_param(const Telescope& params, const std::string& v) {
	for (const auto& b : params) {
		if (b.var == v) {
			return true;
		}
	}
	return false;
}

}  // namespace

Result<Object, ReplayError> replay_trace(const CheckedTheory& th, const Telescope& psi, const Object& start,
                                         const EqTrace& trace) {
	if (auto t = check_telescope(th, psi); !t) {
		return ReplayError{0, "telescope is not well formed: " + t.error().describe()};
	}
	const bool is_sort = std::holds_alternative<Sort>(start);
	const bool is_subst = std::holds_alternative<Substitution>(start);
	NodePtr cur = detail::object_node(start);
	EqEngineConfig cfg;
	for (std::size_t k = 0; k < trace.steps.size(); ++k) {
		const EqStep& step = trace.steps[k];
		auto fail = [&](std::string msg) { return ReplayError{k, std::move(msg)}; };
		if (!step.before || !step.after) {
			return fail("step is missing a side");
		}
		NodePtr sub = detail::node_at(cur, step.position);
		if (!sub) {
			return fail("position leaves the object");
		}
		if (!node_equal(sub, step.before)) {
			return fail("expected " + to_text(*step.before) + " at position, found " + to_text(*sub));
		}
		if (is_subst && step.position.empty()) {
			return fail("a substitution cannot be rewritten as a whole");
		}
		if (step.kind == StepKind::axiom) {
			if (step.item >= th.theory().size()) {
				return fail("no item " + std::to_string(step.item));
			}
			const Item& item = th.theory()[step.item];
			NodePtr lhs;
			NodePtr rhs;
			if (const auto* ax = std::get_if<SortAxiom>(&item.body)) {
				if (!is_sort || !step.position.empty()) {
					return fail("sort axiom used away from the root of a sort");
				}
				lhs = ax->lhs.node();
				rhs = ax->rhs.node();
			} else if (const auto* ax = std::get_if<TermAxiom>(&item.body)) {
				if (is_sort && step.position.empty()) {
					return fail("term axiom used at the root of a sort");
				}
				lhs = ax->lhs.node();
				rhs = ax->rhs.node();
			} else {
				return fail("item " + std::to_string(step.item) + " is not an axiom");
			}
			if (step.reversed) {
				std::swap(lhs, rhs);
			}
			Bindings b;
			if (!literal_match(lhs, step.before, b) || !literal_match(rhs, step.after, b)) {
				return fail("step is not an instance of " + th.axiom_name(step.item));
			}
			for (const auto& [v, value] : b) {
				if (!is_param(item.params(), v)) {
					return fail("axiom mentions unbound variable " + v);
				}
			}
		} else {
			std::optional<Sort> at;
			bool under_subst = is_subst && step.position.size() == 1;
			if (step.position.empty() || under_subst) {
				at = step.at;
				if (!at) {
					return fail("irrelevance step without a sort");
				}
				if (auto s = check_sort(th, psi, *at); !s) {
					return fail("recorded sort is not well formed: " + s.error().describe());
				}
			} else {
				Path up(step.position.begin(), step.position.end() - 1);
				NodePtr parent = detail::node_at(cur, up);
				const SymbolInfo* info = th.symbol(parent->name);
				std::size_t i = step.position.back();
				if (info == nullptr || i >= th.params_of(*info).size()) {
					return fail("irrelevance step under an unknown symbol");
				}
				Substitution prefix;
				for (std::size_t j = 0; j < i; ++j) {
					prefix.push_back(SubstEntry{parent->args[j].first, Term::from_node(parent->args[j].second)});
				}
				at = subst_apply_sort(prefix, th.params_of(*info)[i].sort);
			}
			if (!th.is_irrelevant_sort(at->head())) {
				return fail("sort " + to_text(*at) + " is not proof irrelevant");
			}
			for (const auto& side : {step.before, step.after}) {
				if (auto c = detail::check_term_in(th, psi, Term::from_node(side), *at, cfg, ""); !c) {
					return fail("proof does not check: " + c.error().describe());
				}
			}
		}
		cur = detail::replace_at(cur, step.position, step.after);
	}
	return detail::node_object(start, cur);
}

std::size_t fuel_spent() noexcept {
	return thread_fuel;
}

}  // namespace gat
