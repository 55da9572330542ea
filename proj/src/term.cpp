#include "mkan/term.hpp"

#include <cctype>
#include <unordered_set>

namespace mkan {

namespace {

bool valid_op_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}

Signature::Signature(std::vector<OpSym> ops) : ops_(std::move(ops)) {
    std::unordered_set<std::string> seen;
    for (const auto& op : ops_) {
        if (!valid_op_name(op.name))
            fail(ErrorKind::ShapeError, "operation name '" + op.name + "' is empty or contains whitespace/parentheses");
        if (op.arity < 0)
            fail(ErrorKind::ShapeError, "operation '" + op.name + "' has negative arity");
        if (!seen.insert(op.name).second)
            fail(ErrorKind::ShapeError, "duplicate operation name '" + op.name + "'");
    }
}

int Signature::find(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Signature::require(const std::string& name) const {
    int idx = find(name);
    if (idx < 0) fail(ErrorKind::UnknownOperation, "operation '" + name + "' is not in the signature");
    return idx;
}

Term Term::var(int index) {
    if (index < 0) fail(ErrorKind::VarOutOfRange, "variable index must be non-negative");
    auto node = std::make_shared<Node>();
    node->var = index;
    return Term(std::move(node));
}

Term Term::app(std::string op, std::vector<Term> args) {
    auto node = std::make_shared<Node>();
    node->op = std::move(op);
    node->args = std::move(args);
    return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.var_index() == b.var_index();
    if (a.op_name() != b.op_name()) return false;
    if (a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!(a.args()[i] == b.args()[i])) return false;
    return true;
}

int max_var_index(const Term& t) {
    if (t.is_var()) return t.var_index();
    int best = -1;
    for (const auto& arg : t.args()) best = std::max(best, max_var_index(arg));
    return best;
}

void check_term(const Term& t, const Signature& sig, int arity_bound) {
    if (t.is_var()) {
        if (t.var_index() >= arity_bound)
            fail(ErrorKind::VarOutOfRange,
                 "variable v" + std::to_string(t.var_index()) + " in a " + std::to_string(arity_bound) + "-ary term");
        return;
    }
    const OpSym& op = sig.op(sig.require(t.op_name()));
    if (static_cast<std::size_t>(op.arity) != t.args().size())
        fail(ErrorKind::ArityMismatch, "operation '" + op.name + "' expects " + std::to_string(op.arity) +
                                           " arguments, got " + std::to_string(t.args().size()));
    for (const auto& arg : t.args()) check_term(arg, sig, arity_bound);
}

namespace {

struct SexprParser {
    const std::string& text;
    std::size_t pos = 0;
    int depth = 0;

    explicit SexprParser(const std::string& t) : text(t) {}

    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::string atom() {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) error("expected token");
        return text.substr(start, pos - start);
    }

    Term parse() {
        skip_ws();
        if (pos >= text.size()) error("unexpected end of input");
        if (text[pos] == ')') error("unexpected ')'");
        if (text[pos] == '(') {
            if (++depth > 10000) error("term nesting too deep");
            ++pos;
            skip_ws();
            if (pos >= text.size() || text[pos] == '(' || text[pos] == ')') error("expected operation name");
            std::string op = atom();
            std::vector<Term> args;
            while (true) {
                skip_ws();
                if (pos >= text.size()) error("missing ')'");
                if (text[pos] == ')') {
                    ++pos;
                    --depth;
                    return Term::app(std::move(op), std::move(args));
                }
                args.push_back(parse());
            }
        }
        std::string tok = atom();
        if (tok.size() >= 2 && tok[0] == 'v') {
            bool digits = true;
            for (std::size_t i = 1; i < tok.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(tok[i]))) digits = false;
            if (digits) {
                if (tok.size() > 7) error("variable index too large");
                return Term::var(std::stoi(tok.substr(1)));
            }
        }
        error("expected variable 'vN' or '(op ...)', got '" + tok + "'");
    }
};

void print_term(const Term& t, std::string& out) {
    if (t.is_var()) {
        out += 'v';
        out += std::to_string(t.var_index());
        return;
    }
    out += '(';
    out += t.op_name();
    for (const auto& arg : t.args()) {
        out += ' ';
        print_term(arg, out);
    }
    out += ')';
}

}

Term parse_term(const std::string& text) {
    SexprParser parser(text);
    Term t = parser.parse();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.error("trailing input after term");
    return t;
}

std::string term_to_string(const Term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

}
