#include "gat/surface.hpp"

#include <algorithm>

namespace gat {

namespace {

bool ident_byte(unsigned char c) {
	return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '\'' ||
	       c == '-' || c >= 0x80;
}

struct Fail {
	ParseError error;
};

class Parser {
public:
	Parser(std::string_view src, const std::vector<NotationDecl>* notations) : src_(src), notations_(notations) {}

	void skip() {
		while (pos_ < src_.size()) {
			char c = src_[pos_];
			if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
				++pos_;
			} else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
				while (pos_ < src_.size() && src_[pos_] != '\n') {
					++pos_;
				}
			} else {
				break;
			}
		}
	}

	bool at_end() {
		skip();
		return pos_ >= src_.size();
	}

	bool peek(char c) {
		std::size_t save = pos_;
		skip();
		bool hit = pos_ < src_.size() && src_[pos_] == c;
		if (!hit) {
			pos_ = save;
		}
		return hit;
	}

	bool accept(char c) {
		if (peek(c)) {
			++pos_;
			return true;
		}
		return false;
	}

	void expect(char c) {
		if (!accept(c)) {
			fail({std::string(1, c)});
		}
	}

	[[noreturn]] void fail(std::vector<std::string> expected, std::string message = {}) {
		skip();
		ParseError e;
		e.at = span(pos_);
		e.expected = std::move(expected);
		e.found = found();
		if (message.empty()) {
			message = "unexpected " + (e.found.empty() ? std::string("end of input") : "'" + e.found + "'");
		}
		e.message = std::move(message);
		throw Fail{std::move(e)};
	}

	[[noreturn]] void fail_at(std::size_t pos, std::string message) {
		ParseError e;
		e.at = span(pos);
		e.message = std::move(message);
		throw Fail{std::move(e)};
	}

	std::size_t position() {
		skip();
		return pos_;
	}

	SourceSpan span(std::size_t pos) const {
		SourceSpan s;
		for (std::size_t i = 0; i < pos && i < src_.size(); ++i) {
			auto c = static_cast<unsigned char>(src_[i]);
			if (c == '\n') {
				++s.line;
				s.column = 1;
			} else if ((c & 0xC0) != 0x80) {
				++s.column;
			}
		}
		return s;
	}

	std::string found() const {
		if (pos_ >= src_.size()) {
			return {};
		}
		std::size_t end = pos_;
		while (end < src_.size() && ident_byte(static_cast<unsigned char>(src_[end])) &&
		       !(src_[end] == '-' && end + 1 < src_.size() && src_[end + 1] == '-')) {
			++end;
		}
		if (end == pos_) {
			++end;
			while (end < src_.size() && (static_cast<unsigned char>(src_[end]) & 0xC0) == 0x80) {
				++end;
			}
		}
		return std::string(src_.substr(pos_, end - pos_));
	}

	std::optional<std::string> try_ident() {
		std::size_t save = pos_;
		skip();
		std::size_t start = pos_;
		while (pos_ < src_.size() && ident_byte(static_cast<unsigned char>(src_[pos_]))) {
			if (src_[pos_] == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
				break;
			}
			++pos_;
		}
		if (pos_ == start) {
			pos_ = save;
			return std::nullopt;
		}
		return std::string(src_.substr(start, pos_ - start));
	}

	std::string ident(const char* what) {
		auto id = try_ident();
		if (!id) {
			fail({what});
		}
		return *id;
	}

	std::string string_literal() {
		if (!peek('"')) {
			fail({"string"});
		}
		std::size_t start = pos_;
		++pos_;
		std::string out;
		while (true) {
			if (pos_ >= src_.size() || src_[pos_] == '\n') {
				fail_at(start, "unterminated string");
			}
			char c = src_[pos_++];
			if (c == '"') {
				break;
			}
			if (c == '\\' && pos_ < src_.size()) {
				c = src_[pos_++];
			}
			out += c;
		}
		return out;
	}

	std::optional<std::string> try_label() {
		if (peek('"')) {
			return string_literal();
		}
		return std::nullopt;
	}

	Orientation orientation() {
		if (!accept('[')) {
			return Orientation::left_to_right;
		}
		std::size_t at = position();
		auto word = try_ident();
		Orientation o;
		if (word == "ltr") {
			o = Orientation::left_to_right;
		} else if (word == "rtl") {
			o = Orientation::right_to_left;
		} else if (word == "none") {
			o = Orientation::none;
		} else {
			pos_ = at;
			fail({"ltr", "rtl", "none"});
		}
		expect(']');
		return o;
	}

	Telescope telescope(char close) {
		Telescope out;
		if (close != '\0' && peek(close)) {
			return out;
		}
		if (close == '\0' && at_end()) {
			return out;
		}
		while (true) {
			std::string var = ident("variable");
			expect(':');
			Sort s = sort();
			out.push_back(Binding{std::move(var), std::move(s)});
			if (!accept(',')) {
				break;
			}
		}
		return out;
	}

	Substitution substitution(char close) {
		Substitution out;
		if (close != '\0' && peek(close)) {
			return out;
		}
		if (close == '\0' && at_end()) {
			return out;
		}
		while (true) {
			Term value = term();
			expect('/');
			std::string target = ident("variable");
			out.push_back(SubstEntry{std::move(target), std::move(value)});
			if (!accept(',')) {
				break;
			}
		}
		return out;
	}

	Sort sort() {
		std::string head = ident("sort symbol");
		expect('{');
		Substitution args = substitution('}');
		expect('}');
		return Sort::make(std::move(head), args);
	}

	Term term() {
		Term first = primary();
		if (notations_ == nullptr) {
			return first;
		}
		for (const auto& n : *notations_) {
			if (n.parts.size() < 2 || !n.parts[0].slot || n.parts[1].slot) {
				continue;
			}
			if (!try_literal(n.parts[1].text)) {
				continue;
			}
			std::vector<Term> slots{first};
			for (std::size_t i = 2; i < n.parts.size(); ++i) {
				if (n.parts[i].slot) {
					slots.push_back(primary());
				} else if (!try_literal(n.parts[i].text)) {
					fail({n.parts[i].text});
				}
			}
			return build(n, slots);
		}
		return first;
	}

	Term primary() {
		if (accept('(')) {
			Term t = term();
			expect(')');
			return t;
		}
		if (notations_ != nullptr) {
			for (const auto& n : *notations_) {
				if (n.parts.empty() || n.parts[0].slot || !try_literal(n.parts[0].text)) {
					continue;
				}
				std::vector<Term> slots;
				for (std::size_t i = 1; i < n.parts.size(); ++i) {
					if (n.parts[i].slot) {
						slots.push_back(primary());
					} else if (!try_literal(n.parts[i].text)) {
						fail({n.parts[i].text});
					}
				}
				return build(n, slots);
			}
		}
		auto name = try_ident();
		if (!name) {
			fail({"variable", "operation symbol", "("});
		}
		if (accept('{')) {
			Substitution args = substitution('}');
			expect('}');
			return Term::cut(std::move(*name), args);
		}
		return Term::var(std::move(*name));
	}

	ParsedFile file() {
		ParsedFile out;
		bool first = true;
		while (true) {
			layout(out);
			if (at_end()) {
				break;
			}
			std::size_t start = position();
			std::string word = ident("item keyword");
			Item item;
			if (word == "EXTENDS" && first) {
				out.header_lines = out.layout.size();
				out.extends = string_literal();
				first = false;
				continue;
			}
			first = false;
			if (word == "SORT") {
				item.label = try_label().value_or("");
				std::string name = ident("sort name");
				expect('(');
				Telescope params = telescope(')');
				expect(')');
				item.body = SortDecl{std::move(name), std::move(params)};
			} else if (word == "OP") {
				item.label = try_label().value_or("");
				std::string name = ident("operation name");
				expect('(');
				Telescope params = telescope(')');
				expect(')');
				expect(':');
				Sort result = sort();
				item.body = OpDecl{std::move(name), std::move(params), std::move(result)};
			} else if (word == "SORTAX") {
				item.label = try_label().value_or("");
				item.orientation = orientation();
				expect('(');
				Telescope params = telescope(')');
				expect(')');
				Sort lhs = sort();
				expect('=');
				Sort rhs = sort();
				item.body = SortAxiom{std::move(params), std::move(lhs), std::move(rhs)};
			} else if (word == "TERMAX") {
				item.label = try_label().value_or("");
				item.orientation = orientation();
				expect('(');
				Telescope params = telescope(')');
				expect(')');
				Term lhs = term();
				expect('=');
				Term rhs = term();
				expect(':');
				Sort at = sort();
				item.body = TermAxiom{std::move(params), std::move(lhs), std::move(rhs), std::move(at)};
			} else if (word == "NOTATION") {
				std::string symbol = ident("symbol");
				std::size_t at = position();
				std::string pattern = string_literal();
				auto n = NotationDecl::make(symbol, pattern);
				if (!n) {
					fail_at(at, n.error().message);
				}
				auto idx = out.theory.find(symbol);
				if (!idx) {
					fail_at(start, "notation for undeclared symbol '" + symbol + "'");
				}
				const Telescope& params = out.theory[*idx].params();
				if (params.size() != n->slots()) {
					fail_at(at, "notation has " + std::to_string(n->slots()) + " slots but '" + symbol + "' takes " +
					                std::to_string(params.size()) + " arguments");
				}
				for (const auto& b : params) {
					n->targets.push_back(b.var);
				}
				out.notations.push_back(std::move(*n));
				out.notation_positions.push_back(out.theory.size());
				own_.push_back(out.notations.back());
				notations_ = &own_;
				continue;
			} else {
				pos_ = start;
				fail({"SORT", "OP", "SORTAX", "TERMAX", "NOTATION"});
			}
			out.spans.push_back(span(start));
			out.theory.push_back(std::move(item));
		}
		while (!out.layout.empty() && out.layout.back().text.empty() && out.layout.back().items == out.theory.size() &&
		       out.layout.back().notations == out.notations.size()) {
			out.layout.pop_back();
		}
		return out;
	}

private:
	// Records whole-line comments and blank lines up to the next token.
	void layout(ParsedFile& out) {
		bool content = pos_ > 0;
		auto record = [&](std::string text) {
			bool blank = text.empty();
			bool started = !out.layout.empty() || !out.theory.empty() || !out.notations.empty() || out.extends;
			if (blank && (!started || (!out.layout.empty() && out.layout.back().text.empty() &&
			                           out.layout.back().items == out.theory.size() &&
			                           out.layout.back().notations == out.notations.size()))) {
				return;
			}
			out.layout.push_back(LayoutLine{out.theory.size(), out.notations.size(), std::move(text)});
		};
		while (pos_ < src_.size()) {
			char c = src_[pos_];
			if (c == ' ' || c == '\t' || c == '\r') {
				++pos_;
			} else if (c == '\n') {
				if (!content) {
					record({});
				}
				content = false;
				++pos_;
			} else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
				std::size_t start = pos_;
				while (pos_ < src_.size() && src_[pos_] != '\n') {
					++pos_;
				}
				if (!content) {
					std::string text(src_.substr(start, pos_ - start));
					while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
						text.pop_back();
					}
					record(std::move(text));
				}
				content = true;
			} else {
				break;
			}
		}
	}

	bool try_literal(const std::string& lit) {
		std::size_t save = pos_;
		skip();
		if (src_.substr(pos_, lit.size()) != lit) {
			pos_ = save;
			return false;
		}
		std::size_t end = pos_ + lit.size();
		if (!lit.empty() && ident_byte(static_cast<unsigned char>(lit.back())) && end < src_.size() &&
		    ident_byte(static_cast<unsigned char>(src_[end]))) {
			pos_ = save;
			return false;
		}
		pos_ = end;
		return true;
	}

	Term build(const NotationDecl& n, const std::vector<Term>& slots) {
		if (n.targets.size() != slots.size()) {
			fail({}, "notation for '" + n.symbol + "' is not bound to a declaration");
		}
		Substitution args;
		for (std::size_t i = 0; i < slots.size(); ++i) {
			args.push_back(SubstEntry{n.targets[i], slots[i]});
		}
		return Term::cut(n.symbol, args);
	}

	std::string_view src_;
	std::size_t pos_ = 0;
	const std::vector<NotationDecl>* notations_;
	std::vector<NotationDecl> own_;
};

template <typename T, typename F>
Parsed<T> run(std::string_view text, const std::vector<NotationDecl>* notations, F&& body) {
	Parser p(text, notations != nullptr && !notations->empty() ? notations : nullptr);
	try {
		T out = body(p);
		if (!p.at_end()) {
			p.fail({"end of input"});
		}
		return out;
	} catch (const Fail& f) {
		return f.error;
	}
}

std::string quote(const std::string& s) {
	std::string out = "\"";
	for (char c : s) {
		if (c == '"' || c == '\\') {
			out += '\\';
		}
		out += c;
	}
	out += '"';
	return out;
}

class Printer {
public:
	Printer(const std::vector<NotationDecl>& notations, const PrintOptions& opts, const Theory* decls)
	    : notations_(notations), opts_(opts), decls_(decls) {}

	void node(const Node& n, std::string& out, bool in_slot) const {
		if (n.is_var()) {
			out += n.name;
			return;
		}
		if (const NotationDecl* nd = notation_for(n)) {
			if (in_slot) {
				out += '(';
			}
			std::size_t slot = 0;
			for (std::size_t i = 0; i < nd->parts.size(); ++i) {
				if (i > 0) {
					out += ' ';
				}
				if (nd->parts[i].slot) {
					node(*n.args[slot++].second, out, true);
				} else {
					out += nd->parts[i].text;
				}
			}
			if (in_slot) {
				out += ')';
			}
			return;
		}
		std::vector<bool> keep = kept(n);
		out += n.name;
		out += '{';
		bool first = true;
		for (std::size_t i = 0; i < n.args.size(); ++i) {
			if (!keep[i]) {
				continue;
			}
			if (!first) {
				out += ", ";
			}
			first = false;
			node(*n.args[i].second, out, false);
			out += '/';
			out += n.args[i].first;
		}
		out += '}';
	}

	void telescope(const Telescope& t, std::string& out) const {
		for (std::size_t i = 0; i < t.size(); ++i) {
			if (i > 0) {
				out += ", ";
			}
			out += t[i].var;
			out += ": ";
			node(*t[i].sort.node(), out, false);
		}
	}

	void item(const Item& it, std::string& out) const {
		auto header = [&](const char* kw, bool axiom) {
			out += kw;
			if (!it.label.empty()) {
				out += ' ';
				out += quote(it.label);
			}
			if (axiom && it.orientation == Orientation::right_to_left) {
				out += " [rtl]";
			} else if (axiom && it.orientation == Orientation::none) {
				out += " [none]";
			}
		};
		if (const auto* s = std::get_if<SortDecl>(&it.body)) {
			header("SORT", false);
			out += ' ';
			out += s->name;
			out += '(';
			telescope(s->params, out);
			out += ')';
		} else if (const auto* o = std::get_if<OpDecl>(&it.body)) {
			header("OP", false);
			out += ' ';
			out += o->name;
			out += '(';
			telescope(o->params, out);
			out += ") : ";
			node(*o->result.node(), out, false);
		} else if (const auto* a = std::get_if<SortAxiom>(&it.body)) {
			header("SORTAX", true);
			out += " (";
			telescope(a->params, out);
			out += ") ";
			node(*a->lhs.node(), out, false);
			out += " = ";
			node(*a->rhs.node(), out, false);
		} else if (const auto* a = std::get_if<TermAxiom>(&it.body)) {
			header("TERMAX", true);
			out += " (";
			telescope(a->params, out);
			out += ") ";
			node(*a->lhs.node(), out, false);
			out += " = ";
			node(*a->rhs.node(), out, false);
			out += " : ";
			node(*a->at.node(), out, false);
		}
		out += '\n';
	}

private:
	const NotationDecl* notation_for(const Node& n) const {
		for (const auto& nd : notations_) {
			if (nd.symbol == n.name && nd.slots() == n.args.size()) {
				return &nd;
			}
		}
		return nullptr;
	}

	const Item* declaration(const std::string& name) const {
		for (const Theory* t : {decls_, opts_.context}) {
			if (t == nullptr) {
				continue;
			}
			if (auto idx = t->find(name)) {
				return &(*t)[*idx];
			}
		}
		return nullptr;
	}

	std::vector<bool> kept(const Node& n) const {
		std::vector<bool> keep(n.args.size(), true);
		if (!opts_.elide) {
			return keep;
		}
		const Item* decl = declaration(n.name);
		if (decl == nullptr || decl->params().size() != n.args.size()) {
			return keep;
		}
		const Telescope& params = decl->params();
		std::set<std::string> later;
		if (const auto* o = std::get_if<OpDecl>(&decl->body)) {
			later = free_vars(o->result);
		}
		for (std::size_t i = params.size(); i-- > 0;) {
			keep[i] = later.count(params[i].var) == 0;
			collect_free_vars(*params[i].sort.node(), later);
		}
		return keep;
	}

	const std::vector<NotationDecl>& notations_;
	const PrintOptions& opts_;
	const Theory* decls_;
};

}  // namespace

std::string ParseError::describe() const {
	std::string out = std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message;
	if (!expected.empty()) {
		out += " (expected ";
		for (std::size_t i = 0; i < expected.size(); ++i) {
			if (i > 0) {
				out += i + 1 == expected.size() ? " or " : ", ";
			}
			out += expected[i];
		}
		out += ")";
	}
	return out;
}

std::size_t NotationDecl::slots() const noexcept {
	return static_cast<std::size_t>(
	    std::count_if(parts.begin(), parts.end(), [](const Part& p) { return p.slot; }));
}

std::string NotationDecl::pattern() const {
	std::string out;
	for (std::size_t i = 0; i < parts.size(); ++i) {
		if (i > 0) {
			out += ' ';
		}
		out += parts[i].slot ? "_" : parts[i].text;
	}
	return out;
}

Parsed<NotationDecl> NotationDecl::make(std::string symbol, std::string_view pattern) {
	NotationDecl out;
	out.symbol = std::move(symbol);
	std::size_t i = 0;
	while (i < pattern.size()) {
		if (pattern[i] == ' ') {
			++i;
			continue;
		}
		std::size_t end = pattern.find(' ', i);
		if (end == std::string_view::npos) {
			end = pattern.size();
		}
		std::string word(pattern.substr(i, end - i));
		bool slot = word == "_";
		if (!slot && (word.find('"') != std::string::npos || word.find("--") != std::string::npos ||
		              word.find_first_of("{}(),/:=") != std::string::npos)) {
			ParseError e;
			e.message = "notation word '" + word + "' clashes with the term syntax";
			return e;
		}
		out.parts.push_back(Part{slot, slot ? std::string() : std::move(word)});
		i = end;
	}
	bool adjacent = false;
	for (std::size_t k = 1; k < out.parts.size(); ++k) {
		adjacent = adjacent || (out.parts[k].slot && out.parts[k - 1].slot);
	}
	if (out.parts.empty() || adjacent || (out.parts[0].slot && out.parts.size() == 1)) {
		ParseError e;
		e.message = "notation pattern needs a literal between any two slots";
		return e;
	}
	return out;
}

Parsed<ParsedFile> parse_file(std::string_view text) {
	return run<ParsedFile>(text, nullptr, [](Parser& p) { return p.file(); });
}

Parsed<Theory> parse_theory(const SourceFile& src) {
	auto f = parse_file(src.text);
	if (!f) {
		return f.error();
	}
	return std::move(f->theory);
}

Parsed<Telescope> parse_telescope(std::string_view text, const std::vector<NotationDecl>& notations) {
	return run<Telescope>(text, &notations, [](Parser& p) { return p.telescope('\0'); });
}

Parsed<Term> parse_term(std::string_view text, const std::vector<NotationDecl>& notations) {
	return run<Term>(text, &notations, [](Parser& p) { return p.term(); });
}

Parsed<Sort> parse_sort(std::string_view text, const std::vector<NotationDecl>& notations) {
	return run<Sort>(text, &notations, [](Parser& p) { return p.sort(); });
}

Parsed<Substitution> parse_substitution(std::string_view text, const std::vector<NotationDecl>& notations) {
	return run<Substitution>(text, &notations, [](Parser& p) { return p.substitution('\0'); });
}

std::string print_theory(const Theory& t, const std::vector<NotationDecl>& notations, const PrintOptions& opts) {
	Printer pr(notations, opts, &t);
	std::string out;
	for (const auto& item : t.items()) {
		pr.item(item, out);
	}
	return out;
}

std::string print_file(const ParsedFile& f) {
	static const std::vector<NotationDecl> none;
	PrintOptions opts;
	Printer pr(none, opts, &f.theory);
	std::string out;
	std::size_t next_line = 0;
	auto line = [&]() {
		out += f.layout[next_line++].text;
		out += '\n';
	};
	if (f.extends) {
		while (next_line < f.header_lines) {
			line();
		}
		out += "EXTENDS " + quote(*f.extends) + "\n";
	}
	std::size_t next = 0;
	auto flush = [&](std::size_t upto) {
		while (true) {
			bool has_line = next_line < f.layout.size() && f.layout[next_line].items <= upto;
			bool has_notation = next < f.notations.size() && f.notation_positions[next] <= upto;
			if (has_line && (!has_notation || f.layout[next_line].notations <= next)) {
				line();
			} else if (has_notation) {
				out += "NOTATION " + f.notations[next].symbol + " " + quote(f.notations[next].pattern()) + "\n";
				++next;
			} else {
				break;
			}
		}
	};
	for (std::size_t i = 0; i < f.theory.size(); ++i) {
		flush(i);
		pr.item(f.theory[i], out);
	}
	flush(f.theory.size());
	return out;
}

std::string print_term(const Term& m, const std::vector<NotationDecl>& notations, const PrintOptions& opts,
                       const Theory* decls) {
	Printer pr(notations, opts, decls);
	std::string out;
	pr.node(*m.node(), out, false);
	return out;
}

std::string print_sort(const Sort& a, const std::vector<NotationDecl>& notations, const PrintOptions& opts,
                       const Theory* decls) {
	Printer pr(notations, opts, decls);
	std::string out;
	pr.node(*a.node(), out, false);
	return out;
}

}  // namespace gat
