#pragma once

// Raw syntax of generalized algebraic theories: terms, sorts, substitutions,
// telescopes, declarations, axioms and theories, together with the action of
// raw substitutions and their composition.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace gat {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

class Term;
struct SubstEntry;

/// Ordered list of term-for-variable assignments. Order matters: entry i may
/// be referenced by the sorts of later telescope positions.
using Substitution = std::vector<SubstEntry>;

/// Shared immutable tree node. Variables carry only a name; cuts carry a head
/// symbol and an argument substitution. Terms and sorts both use this
/// representation but are exposed through distinct wrapper types.
struct Node {
	enum class Kind : std::uint8_t { var, cut };

	Kind kind;
	std::string name;
	std::vector<std::pair<std::string, NodePtr>> args;
	std::size_t hash = 0;
	std::size_t size = 1;

	bool is_var() const noexcept { return kind == Kind::var; }
	bool is_cut() const noexcept { return kind == Kind::cut; }

	static NodePtr make_var(std::string name);
	static NodePtr make_cut(std::string head, std::vector<std::pair<std::string, NodePtr>> args);
};

/// Structural equality (names, targets and shape).
bool node_equal(const Node& a, const Node& b) noexcept;
bool node_equal(const NodePtr& a, const NodePtr& b) noexcept;

struct NodePtrHash {
	std::size_t operator()(const NodePtr& n) const noexcept { return n->hash; }
};
struct NodePtrEqual {
	bool operator()(const NodePtr& a, const NodePtr& b) const noexcept { return node_equal(a, b); }
};

/// A term: either a variable or a symbol cut against a substitution.
class Term {
public:
	static Term var(std::string name);
	static Term cut(std::string head, const Substitution& args);
	static Term from_node(NodePtr node);

	bool is_var() const noexcept { return node_->is_var(); }
	bool is_cut() const noexcept { return node_->is_cut(); }
	/// Variable name or head symbol.
	const std::string& name() const noexcept { return node_->name; }
	Substitution args() const;
	std::size_t arity() const noexcept { return node_->args.size(); }
	std::size_t size() const noexcept { return node_->size; }

	const NodePtr& node() const noexcept { return node_; }

	friend bool operator==(const Term& a, const Term& b) noexcept { return node_equal(a.node_, b.node_); }

private:
	explicit Term(NodePtr node) : node_(std::move(node)) {}
	NodePtr node_;
};

struct SubstEntry {
	std::string target;
	Term value;

	friend bool operator==(const SubstEntry&, const SubstEntry&) = default;
};

/// A sort: always a sort symbol cut against a substitution.
class Sort {
public:
	static Sort make(std::string head, const Substitution& args);
	/// Precondition: node is a cut.
	static Sort from_node(NodePtr node);

	const std::string& head() const noexcept { return node_->name; }
	Substitution args() const;
	std::size_t arity() const noexcept { return node_->args.size(); }

	const NodePtr& node() const noexcept { return node_; }

	friend bool operator==(const Sort& a, const Sort& b) noexcept { return node_equal(a.node_, b.node_); }

private:
	explicit Sort(NodePtr node) : node_(std::move(node)) {}
	NodePtr node_;
};

struct Binding {
	std::string var;
	Sort sort;

	friend bool operator==(const Binding&, const Binding&) = default;
};

/// Ordered context of typed variables; each sort may mention earlier ones.
using Telescope = std::vector<Binding>;

struct SortDecl {
	std::string name;
	Telescope params;

	friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

struct OpDecl {
	std::string name;
	Telescope params;
	Sort result;

	friend bool operator==(const OpDecl&, const OpDecl&) = default;
};

struct SortAxiom {
	Telescope params;
	Sort lhs;
	Sort rhs;

	friend bool operator==(const SortAxiom&, const SortAxiom&) = default;
};

struct TermAxiom {
	Telescope params;
	Term lhs;
	Term rhs;
	Sort at;

	friend bool operator==(const TermAxiom&, const TermAxiom&) = default;
};

/// Direction in which the equality engine may use an axiom as a rewrite rule.
enum class Orientation : std::uint8_t { left_to_right, right_to_left, none };

struct Item {
	std::variant<SortDecl, OpDecl, SortAxiom, TermAxiom> body;
	/// Human-readable rule label; empty when absent.
	std::string label;
	Orientation orientation = Orientation::left_to_right;

	bool is_declaration() const noexcept { return body.index() < 2; }
	bool is_axiom() const noexcept { return body.index() >= 2; }
	/// Declared symbol name, or empty for axioms.
	const std::string& symbol() const noexcept;
	const Telescope& params() const noexcept;

	friend bool operator==(const Item&, const Item&) = default;
};

struct ItemCounts {
	std::size_t sort_decls = 0;
	std::size_t op_decls = 0;
	std::size_t sort_axioms = 0;
	std::size_t term_axioms = 0;

	friend bool operator==(const ItemCounts&, const ItemCounts&) = default;
};

/// Raw theory: declarations and axioms in order. Duplicates are representable
/// here and rejected by the checker.
class Theory {
public:
	Theory() = default;
	explicit Theory(std::vector<Item> items);

	void push_back(Item item);
	void append(const Theory& other);

	const std::vector<Item>& items() const noexcept { return items_; }
	std::size_t size() const noexcept { return items_.size(); }
	bool empty() const noexcept { return items_.empty(); }
	const Item& operator[](std::size_t i) const { return items_[i]; }

	/// Position of the first declaration of `name`.
	std::optional<std::size_t> find(std::string_view name) const;
	ItemCounts counts() const;

	friend bool operator==(const Theory& a, const Theory& b) { return a.items_ == b.items_; }

private:
	std::vector<Item> items_;
	std::unordered_map<std::string, std::size_t> index_;
};

/// Action of a raw substitution on a raw term. Variables not among the
/// substitution's targets are left unchanged.
Term subst_apply_term(const Substitution& psi, const Term& m);
Sort subst_apply_sort(const Substitution& psi, const Sort& a);
/// Composition `phi ∘ psi`: each value of phi is rewritten by psi.
Substitution subst_compose(const Substitution& phi, const Substitution& psi);

NodePtr subst_apply_node(const Substitution& psi, const NodePtr& n);

std::set<std::string> free_vars(const Term& m);
std::set<std::string> free_vars(const Sort& a);
std::set<std::string> free_vars(const Substitution& psi);
void collect_free_vars(const Node& n, std::set<std::string>& out);

/// Identity substitution over a telescope: each variable mapped to itself.
Substitution identity_subst(const Telescope& psi);

std::vector<std::string> targets(const Substitution& psi);

}  // namespace gat
