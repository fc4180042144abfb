#pragma once

// Closed-term evaluation for the bundled type theory, and a seeded generator
// of well-typed closed terms of the observable base type.
//
// Every closed element of the base type should rewrite to one of its two
// constants. evaluate_closed checks that by normalization; a term that stops
// anywhere else is reported as Stuck, which points at a gap in the rewrite
// system rather than at the term.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gat/checker.hpp"
#include "gat/engine_config.hpp"
#include "gat/equality.hpp"
#include "gat/syntax.hpp"

namespace gat {

enum class CanonicalValue { red, green };

std::string_view to_string(CanonicalValue v) noexcept;

struct Evaluation {
	/// Empty when stuck.
	std::optional<CanonicalValue> value;
	Term normal_form;
	std::size_t steps = 0;
	/// False when a fuel or size bound cut normalization short.
	bool complete = true;

	bool stuck() const noexcept { return !value.has_value(); }
};

/// Normalizes a closed element of the observable type.
Evaluation evaluate_closed(const CheckedTheory& th, const Term& m, const EqEngineConfig& cfg = {});

/// The constant term for a canonical value at a level, in the empty context.
Term canonical_term(CanonicalValue v, std::size_t level);
/// El(·, obs) at the given level.
Sort closed_obs_sort(std::size_t level);
/// The level numeral n.
Term level_term(std::size_t n);

struct GenBudget {
	std::size_t max_depth = 6;
	std::uint64_t seed = 0;
	/// Highest level a generated term lives at.
	std::size_t level_cap = 2;
	/// Maximum number of distinct terms per stream.
	std::size_t count = 64;
};

struct ClosedTerm {
	Term term;
	std::size_t level;
	/// El(·, obs) at `level`.
	Sort sort;
};

/// Deterministic stream of distinct closed terms of sort El(·, obs).
class ClosedTermGenerator {
public:
	ClosedTermGenerator(const CheckedTheory& th, GenBudget budget);

	std::optional<ClosedTerm> next();

private:
	struct Impl;
	const CheckedTheory& th_;
	GenBudget budget_;
	std::mt19937_64 rng_;
	std::unordered_set<NodePtr, NodePtrHash, NodePtrEqual> seen_;
	std::size_t produced_ = 0;
	std::size_t attempts_ = 0;
};

std::vector<ClosedTerm> generate_closed_obs_terms(const CheckedTheory& th, const GenBudget& budget);

struct CanonicityReport {
	std::size_t terms = 0;
	std::size_t red = 0;
	std::size_t green = 0;
	std::size_t stuck = 0;
	std::size_t max_steps = 0;
	/// Generated terms the checker rejected.
	std::size_t ill_typed = 0;
	/// Verdicts that eq_term could not confirm or whose trace failed to replay.
	std::size_t unconfirmed = 0;

	bool ok() const noexcept { return stuck == 0 && ill_typed == 0 && unconfirmed == 0 && terms > 0; }
};

/// Generates, checks, evaluates and confirms each term of one budget.
CanonicityReport run_canonicity(const CheckedTheory& th, const GenBudget& budget, const EqEngineConfig& cfg = {});

}  // namespace gat
