#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gat/checker.hpp"
#include "gat/equality.hpp"
#include "gat/library.hpp"
#include "gat/print.hpp"
#include "gat/surface.hpp"

namespace gat::testing {

struct ReplayLedger {
	std::size_t verdicts = 0;
	std::size_t failures = 0;
};

/// Equal verdicts seen so far by the test main, and how many failed to replay.
const ReplayLedger& replay_ledger();

inline Term term(const std::string& text, const std::vector<NotationDecl>& notations = {}) {
	auto r = parse_term(text, notations);
	if (!r) {
		throw std::runtime_error("bad term in test: " + r.error().describe());
	}
	return *r;
}

inline Sort sort(const std::string& text) {
	auto r = parse_sort(text);
	if (!r) {
		throw std::runtime_error("bad sort in test: " + r.error().describe());
	}
	return *r;
}

inline Telescope tele(const std::string& text) {
	auto r = parse_telescope(text);
	if (!r) {
		throw std::runtime_error("bad telescope in test: " + r.error().describe());
	}
	return *r;
}

inline Substitution subst(const std::string& text) {
	auto r = parse_substitution(text);
	if (!r) {
		throw std::runtime_error("bad substitution in test: " + r.error().describe());
	}
	return *r;
}

inline Theory theory(const std::string& text) {
	auto r = parse_file(text);
	if (!r) {
		throw std::runtime_error("bad theory in test: " + r.error().describe());
	}
	return r->theory;
}

}  // namespace gat::testing

namespace gat {

// Readable values in test failure messages.
inline void PrintTo(const Term& m, std::ostream* os) {
	*os << to_text(m);
}
inline void PrintTo(const Sort& a, std::ostream* os) {
	*os << to_text(a);
}
inline void PrintTo(const SubstEntry& e, std::ostream* os) {
	*os << to_text(e.value) << "/" << e.target;
}

}  // namespace gat
