#pragma once

#include <cstddef>
#include <map>

#include "gat/syntax.hpp"

namespace gat {

/// Bounds and rule directions for the equality engine.
struct EqEngineConfig {
	/// Maximum number of rewrite steps per query.
	std::size_t fuel = 10000;
	/// Maximum node count of any intermediate term.
	std::size_t max_term_size = 5000;
	/// Per-axiom direction overrides, keyed by item index. Axioms not listed
	/// use the orientation written in the theory.
	std::map<std::size_t, Orientation> orientation;

	bool valid() const noexcept { return fuel > 0 && max_term_size > 0; }
};

}  // namespace gat
