#pragma once

// Judgment checking for generalized algebraic theories.
//
// Every judgment takes its parameters (theory, telescopes, sorts) as already
// well formed. A CheckedTheory can only be obtained from check_theory or
// theory_extends, so the theory parameter is always valid by construction;
// the public entry points re-validate their remaining parameters and report
// failures there as PresuppositionViolation, separate from a well-posed
// judgment that fails.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gat/engine_config.hpp"
#include "gat/result.hpp"
#include "gat/syntax.hpp"

namespace gat {

enum class ErrorKind {
	duplicate_symbol,
	duplicate_variable,
	unknown_symbol,
	unknown_variable,
	arity_mismatch,
	sort_mismatch,
	not_a_sort_symbol,
	not_an_op_symbol,
	presupposition_violation,
	equality_fuel_exhausted,
};

/// Stable CamelCase name, e.g. "DuplicateSymbol".
std::string_view to_string(ErrorKind kind) noexcept;

struct CheckError {
	ErrorKind kind;
	/// Index of the offending theory item when checking a theory.
	std::optional<std::size_t> item;
	/// Location inside the item or judgment subject, e.g. "params[1].sort.args[0]".
	std::string path;
	std::string expected;
	std::string found;
	std::string message;

	std::string describe() const;
};

template <typename T>
using Checked = Result<T, CheckError>;
using CheckStatus = Checked<Unit>;

enum class SymbolKind { sort, op };

struct SymbolInfo {
	SymbolKind kind;
	std::size_t item;
	/// Per parameter: true when its sort is proof irrelevant.
	std::vector<bool> irrelevant_args;
};

/// An axiom usable as a directed rewrite rule: every variable of `rhs` occurs
/// in `lhs` and `lhs` is a cut.
struct RewriteRule {
	std::size_t item;
	bool reversed;
	NodePtr lhs;
	NodePtr rhs;
	/// Pattern variables whose sort is proof irrelevant.
	std::set<std::string> irrelevant_vars;
};

class CheckedTheory {
public:
	/// The empty theory.
	CheckedTheory();

	const Theory& theory() const noexcept;
	ItemCounts counts() const { return theory().counts(); }

	const SymbolInfo* symbol(std::string_view name) const;
	const Telescope& params_of(const SymbolInfo& info) const;
	/// Result sort of an operation symbol.
	const Sort& result_of(const SymbolInfo& info) const;

	const std::vector<RewriteRule>& term_rules(std::string_view head) const;
	const std::vector<RewriteRule>& sort_rules(std::string_view head) const;
	/// Effective orientation of the axiom at `item` under `cfg`.
	Orientation orientation(std::size_t item, const EqEngineConfig& cfg) const;
	/// Sort symbols whose inhabitants are all equal.
	bool is_irrelevant_sort(std::string_view head) const;
	const std::set<std::string>& irrelevant_sorts() const noexcept;

	/// Human-readable name of an axiom: its label, or "axiom #i".
	std::string axiom_name(std::size_t item) const;

	struct Data;

private:
	friend class TheoryBuilder;
	explicit CheckedTheory(std::shared_ptr<const Data> data);
	std::shared_ptr<const Data> data_;
};

/// Validates a raw theory item by item, each against the preceding prefix.
Checked<CheckedTheory> check_theory(const Theory& raw, const EqEngineConfig& cfg = {});
/// Appends and checks `ext` on top of an already checked theory. Error item
/// indices count from the start of `ext`.
Checked<CheckedTheory> theory_extends(const CheckedTheory& base, const Theory& ext,
                                      const EqEngineConfig& cfg = {});

CheckStatus check_telescope(const CheckedTheory& th, const Telescope& psi, const EqEngineConfig& cfg = {});
CheckStatus check_sort(const CheckedTheory& th, const Telescope& psi, const Sort& a,
                       const EqEngineConfig& cfg = {});
Checked<Sort> infer_term(const CheckedTheory& th, const Telescope& psi, const Term& m,
                         const EqEngineConfig& cfg = {});
CheckStatus check_term(const CheckedTheory& th, const Telescope& psi, const Term& m, const Sort& a,
                       const EqEngineConfig& cfg = {});
CheckStatus check_subst(const CheckedTheory& th, const Telescope& phi, const Substitution& psi,
                        const Telescope& target, const EqEngineConfig& cfg = {});

namespace detail {

// Unchecked variants: parameters are assumed valid and are not revalidated.
CheckStatus check_sort_in(const CheckedTheory& th, const Telescope& psi, const Sort& a,
                          const EqEngineConfig& cfg, const std::string& path);
Checked<Sort> infer_term_in(const CheckedTheory& th, const Telescope& psi, const Term& m,
                            const EqEngineConfig& cfg, const std::string& path);
CheckStatus check_term_in(const CheckedTheory& th, const Telescope& psi, const Term& m, const Sort& a,
                          const EqEngineConfig& cfg, const std::string& path);
CheckStatus check_subst_in(const CheckedTheory& th, const Telescope& phi, const Substitution& psi,
                           const Telescope& target, const EqEngineConfig& cfg, const std::string& path);

}  // namespace detail

}  // namespace gat
