#include "gat/syntax.hpp"

#include <cassert>
#include <functional>

namespace gat {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
	return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::vector<std::pair<std::string, NodePtr>> to_node_args(const Substitution& args) {
	std::vector<std::pair<std::string, NodePtr>> out;
	out.reserve(args.size());
	for (const auto& e : args) {
		out.emplace_back(e.target, e.value.node());
	}
	return out;
}

Substitution from_node_args(const Node& n) {
	Substitution out;
	out.reserve(n.args.size());
	for (const auto& [target, value] : n.args) {
		out.push_back(SubstEntry{target, Term::from_node(value)});
	}
	return out;
}

}  // namespace

NodePtr Node::make_var(std::string name) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::var;
	n->hash = mix(0x51ab, std::hash<std::string>{}(name));
	n->name = std::move(name);
	return n;
}

NodePtr Node::make_cut(std::string head, std::vector<std::pair<std::string, NodePtr>> args) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::cut;
	std::size_t h = mix(0xc07, std::hash<std::string>{}(head));
	std::size_t size = 1;
	for (const auto& [target, value] : args) {
		h = mix(h, std::hash<std::string>{}(target));
		h = mix(h, value->hash);
		size += value->size;
	}
	n->hash = h;
	n->size = size;
	n->name = std::move(head);
	n->args = std::move(args);
	return n;
}

bool node_equal(const Node& a, const Node& b) noexcept {
	if (&a == &b) {
		return true;
	}
	if (a.hash != b.hash || a.kind != b.kind || a.size != b.size || a.name != b.name ||
	    a.args.size() != b.args.size()) {
		return false;
	}
	for (std::size_t i = 0; i < a.args.size(); ++i) {
		if (a.args[i].first != b.args[i].first || !node_equal(*a.args[i].second, *b.args[i].second)) {
			return false;
		}
	}
	return true;
}

bool node_equal(const NodePtr& a, const NodePtr& b) noexcept {
	return node_equal(*a, *b);
}

Term Term::var(std::string name) {
	return Term(Node::make_var(std::move(name)));
}

Term Term::cut(std::string head, const Substitution& args) {
	return Term(Node::make_cut(std::move(head), to_node_args(args)));
}

Term Term::from_node(NodePtr node) {
	assert(node);
	return Term(std::move(node));
}

Substitution Term::args() const {
	return from_node_args(*node_);
}

Sort Sort::make(std::string head, const Substitution& args) {
	return Sort(Node::make_cut(std::move(head), to_node_args(args)));
}

Sort Sort::from_node(NodePtr node) {
	assert(node && node->is_cut());
	return Sort(std::move(node));
}

Substitution Sort::args() const {
	return from_node_args(*node_);
}

const std::string& Item::symbol() const noexcept {
	static const std::string empty;
	if (const auto* s = std::get_if<SortDecl>(&body)) {
		return s->name;
	}
	if (const auto* o = std::get_if<OpDecl>(&body)) {
		return o->name;
	}
	return empty;
}

const Telescope& Item::params() const noexcept {
	return std::visit([](const auto& b) -> const Telescope& { return b.params; }, body);
}

Theory::Theory(std::vector<Item> items) {
	for (auto& item : items) {
		push_back(std::move(item));
	}
}

void Theory::push_back(Item item) {
	if (item.is_declaration()) {
		index_.try_emplace(item.symbol(), items_.size());
	}
	items_.push_back(std::move(item));
}

void Theory::append(const Theory& other) {
	for (const auto& item : other.items_) {
		push_back(item);
	}
}

std::optional<std::size_t> Theory::find(std::string_view name) const {
	auto it = index_.find(std::string(name));
	if (it == index_.end()) {
		return std::nullopt;
	}
	return it->second;
}

ItemCounts Theory::counts() const {
	ItemCounts c;
	for (const auto& item : items_) {
		switch (item.body.index()) {
		case 0: ++c.sort_decls; break;
		case 1: ++c.op_decls; break;
		case 2: ++c.sort_axioms; break;
		case 3: ++c.term_axioms; break;
		}
	}
	return c;
}

NodePtr subst_apply_node(const Substitution& psi, const NodePtr& n) {
	if (psi.empty()) {
		return n;
	}
	if (n->is_var()) {
		for (auto it = psi.rbegin(); it != psi.rend(); ++it) {
			if (it->target == n->name) {
				return it->value.node();
			}
		}
		return n;
	}
	// ϑ{φ} ↦ ϑ{φ∘ψ}
	bool changed = false;
	std::vector<std::pair<std::string, NodePtr>> args;
	args.reserve(n->args.size());
	for (const auto& [target, value] : n->args) {
		NodePtr v = subst_apply_node(psi, value);
		changed = changed || v != value;
		args.emplace_back(target, std::move(v));
	}
	if (!changed) {
		return n;
	}
	return Node::make_cut(n->name, std::move(args));
}

Term subst_apply_term(const Substitution& psi, const Term& m) {
	return Term::from_node(subst_apply_node(psi, m.node()));
}

Sort subst_apply_sort(const Substitution& psi, const Sort& a) {
	return Sort::from_node(subst_apply_node(psi, a.node()));
}

Substitution subst_compose(const Substitution& phi, const Substitution& psi) {
	Substitution out;
	out.reserve(phi.size());
	for (const auto& e : phi) {
		out.push_back(SubstEntry{e.target, subst_apply_term(psi, e.value)});
	}
	return out;
}

void collect_free_vars(const Node& n, std::set<std::string>& out) {
	if (n.is_var()) {
		out.insert(n.name);
		return;
	}
	for (const auto& arg : n.args) {
		collect_free_vars(*arg.second, out);
	}
}

std::set<std::string> free_vars(const Term& m) {
	std::set<std::string> out;
	collect_free_vars(*m.node(), out);
	return out;
}

std::set<std::string> free_vars(const Sort& a) {
	std::set<std::string> out;
	collect_free_vars(*a.node(), out);
	return out;
}

std::set<std::string> free_vars(const Substitution& psi) {
	std::set<std::string> out;
	for (const auto& e : psi) {
		collect_free_vars(*e.value.node(), out);
	}
	return out;
}

Substitution identity_subst(const Telescope& psi) {
	Substitution out;
	out.reserve(psi.size());
	for (const auto& b : psi) {
		out.push_back(SubstEntry{b.var, Term::var(b.var)});
	}
	return out;
}

std::vector<std::string> targets(const Substitution& psi) {
	std::vector<std::string> out;
	out.reserve(psi.size());
	for (const auto& e : psi) {
		out.push_back(e.target);
	}
	return out;
}

}  // namespace gat
