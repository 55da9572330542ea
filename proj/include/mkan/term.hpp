#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mkan/errors.hpp"

namespace mkan {

struct OpSym {
    std::string name;
    int arity = 0;

    friend bool operator==(const OpSym&, const OpSym&) = default;
};

// Generating signature of an algebraic theory. Names are unique, nonempty,
// and contain no whitespace or parentheses so that terms over the signature
// serialize as s-expressions.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<OpSym> ops);

    const std::vector<OpSym>& operations() const { return ops_; }
    std::size_t size() const { return ops_.size(); }
    const OpSym& op(int index) const { return ops_.at(static_cast<std::size_t>(index)); }

    // Index of the named operation, or -1.
    int find(const std::string& name) const;
    // Index of the named operation; throws UnknownOperation.
    int require(const std::string& name) const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<OpSym> ops_;
};

// Operation word: Var(i) or App(op, args). Immutable; copies share structure.
class Term {
public:
    Term() : Term(var(0)) {}

    static Term var(int index);
    static Term app(std::string op, std::vector<Term> args = {});

    bool is_var() const { return node_->var >= 0; }
    int var_index() const { return node_->var; }
    const std::string& op_name() const { return node_->op; }
    const std::vector<Term>& args() const { return node_->args; }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        int var = -1;
        std::string op;
        std::vector<Term> args;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Largest variable index occurring in t, or -1 if t has no variables.
int max_var_index(const Term& t);

// Checks that every App matches the signature's arity and every Var index is
// < arity_bound. Throws UnknownOperation / ArityMismatch / VarOutOfRange.
void check_term(const Term& t, const Signature& sig, int arity_bound);

// S-expression syntax: variables "v0", "v1", ...; applications
// "(op t1 ... tn)". Parsing ignores extra whitespace; printing emits single
// spaces.
Term parse_term(const std::string& text);
std::string term_to_string(const Term& t);

}
