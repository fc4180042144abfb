#pragma once

// Bounded equality engine for sorts, terms and substitutions.
//
// Terms are normalized leftmost-innermost with the theory's term axioms used
// as oriented rewrite rules. Pattern positions that do not match literally
// are closed by conversion: the instantiated pattern is normalized and must
// meet the subject. Sort axioms are explored in both directions at the root
// of a sort. Any two terms of a proof-irrelevant sort are equal.
//
// Every Equal verdict carries a trace of literal axiom instances that
// replay_trace re-verifies independently of the search that produced it.
// The engine never claims two objects are distinct: NotProven only means
// that no derivation was found within the configured bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gat/checker.hpp"
#include "gat/engine_config.hpp"
#include "gat/result.hpp"
#include "gat/syntax.hpp"

namespace gat {

/// Argument indices from the root of an object down to a subterm.
using Path = std::vector<std::uint32_t>;

enum class StepKind {
	/// Instance of a sort or term axiom, in either direction.
	axiom,
	/// Replacement of one proof of an irrelevant sort by another.
	irrelevance,
};

struct EqStep {
	StepKind kind = StepKind::axiom;
	/// Axiom item index; unused for irrelevance steps.
	std::size_t item = 0;
	/// True when the axiom was used right to left.
	bool reversed = false;
	Path position;
	NodePtr before;
	NodePtr after;
	/// For irrelevance steps: the sort both proofs inhabit.
	std::optional<Sort> at;
};

struct EqTrace {
	std::vector<EqStep> steps;

	bool empty() const noexcept { return steps.empty(); }
	std::size_t size() const noexcept { return steps.size(); }
	/// The trace read backwards: each step swapped and re-oriented.
	EqTrace reversed() const;
	void append(const EqTrace& other);
};

enum class Verdict { equal, not_proven };

struct EqResult {
	Verdict verdict = Verdict::not_proven;
	EqTrace trace;
	std::size_t steps_used = 0;
	bool fuel_exhausted = false;
	bool size_exceeded = false;
	std::string diagnostic;

	bool equal() const noexcept { return verdict == Verdict::equal; }
	/// True when the engine gave up because of a bound rather than
	/// running out of things to try.
	bool gave_up() const noexcept { return fuel_exhausted || size_exceeded; }
};

EqResult eq_sort(const CheckedTheory& th, const Telescope& psi, const Sort& a, const Sort& b,
                 const EqEngineConfig& cfg = {});
EqResult eq_term(const CheckedTheory& th, const Telescope& psi, const Term& m, const Term& n, const Sort& at,
                 const EqEngineConfig& cfg = {});
EqResult eq_subst(const CheckedTheory& th, const Telescope& phi, const Substitution& p0, const Substitution& p1,
                  const Telescope& target, const EqEngineConfig& cfg = {});

struct Normalized {
	Term term;
	EqTrace trace;
	std::size_t steps_used = 0;
	/// False when fuel or size bounds stopped normalization early.
	bool complete = true;
};

/// Rewrites a term to normal form with the oriented term axioms.
Normalized normalize_term(const CheckedTheory& th, const Term& m, const EqEngineConfig& cfg = {});
/// Normalizes the arguments of a sort; sort axioms are not applied.
Sort normalize_sort_args(const CheckedTheory& th, const Sort& a, const EqEngineConfig& cfg = {});

using Object = std::variant<Term, Sort, Substitution>;

struct ReplayError {
	std::size_t step;
	std::string message;
};

/// Re-applies a trace to `start`, checking that each axiom step is a literal
/// instance of a theory axiom at its stated position and that each
/// irrelevance step swaps two proofs of the same irrelevant sort.
Result<Object, ReplayError> replay_trace(const CheckedTheory& th, const Telescope& psi, const Object& start,
                                         const EqTrace& trace);

/// Receives every Equal verdict of eq_sort, eq_term and eq_subst, including
/// those reached on behalf of the checker. Pass nullptr to remove.
using EqualObserver = void (*)(const CheckedTheory& th, const Telescope& psi, const Object& lhs, const Object& rhs,
                               const EqTrace& trace, void* ctx);
void set_equal_observer(EqualObserver f, void* ctx) noexcept;

/// Rewrite steps charged on this thread since it started, across all queries.
std::size_t fuel_spent() noexcept;

namespace detail {

NodePtr object_node(const Object& obj);
Object node_object(const Object& like, const NodePtr& n);
/// Subterm at `path`, or null when the path leaves the tree.
NodePtr node_at(const NodePtr& root, const Path& path, std::size_t depth = 0);
NodePtr replace_at(const NodePtr& root, const Path& path, const NodePtr& value, std::size_t depth = 0);

}  // namespace detail

}  // namespace gat
