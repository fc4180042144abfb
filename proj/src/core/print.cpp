#include "gat/print.hpp"

namespace gat {

namespace {

void emit(const Node& n, std::string& out) {
	out += n.name;
	if (n.is_var()) {
		return;
	}
	out += '{';
	bool first = true;
	for (const auto& [target, value] : n.args) {
		if (!first) {
			out += ", ";
		}
		first = false;
		emit(*value, out);
		out += '/';
		out += target;
	}
	out += '}';
}

}  // namespace

std::string to_text(const Node& n) {
	std::string out;
	emit(n, out);
	return out;
}

std::string to_text(const Term& m) {
	return to_text(*m.node());
}

std::string to_text(const Sort& a) {
	return to_text(*a.node());
}

std::string to_text(const Substitution& psi) {
	std::string out;
	for (std::size_t i = 0; i < psi.size(); ++i) {
		if (i > 0) {
			out += ", ";
		}
		emit(*psi[i].value.node(), out);
		out += '/';
		out += psi[i].target;
	}
	return out;
}

std::string to_text(const Telescope& psi) {
	std::string out;
	for (std::size_t i = 0; i < psi.size(); ++i) {
		if (i > 0) {
			out += ", ";
		}
		out += psi[i].var;
		out += ": ";
		emit(*psi[i].sort.node(), out);
	}
	return out;
}

}  // namespace gat
