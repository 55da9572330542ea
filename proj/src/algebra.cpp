#include "mkan/algebra.hpp"

#include <algorithm>

namespace mkan {

FiniteAlgebra::FiniteAlgebra(std::string name, int carrier_size, Signature sig,
                             std::vector<std::vector<int>> tables)
    : name_(std::move(name)), size_(carrier_size), sig_(std::move(sig)), tables_(std::move(tables)) {
    if (size_ < 1) fail(ErrorKind::TableShapeError, "carrier size must be positive");
    if (tables_.size() != sig_.size())
        fail(ErrorKind::TableShapeError, "expected " + std::to_string(sig_.size()) + " tables, got " +
                                             std::to_string(tables_.size()));
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const OpSym& op = sig_.op(static_cast<int>(i));
        long long want = checked_power(size_, op.arity);
        if (static_cast<long long>(tables_[i].size()) != want)
            fail(ErrorKind::TableShapeError, "table for '" + op.name + "' has length " +
                                                 std::to_string(tables_[i].size()) + ", expected " +
                                                 std::to_string(want));
        for (std::size_t j = 0; j < tables_[i].size(); ++j) {
            if (tables_[i][j] < 0 || tables_[i][j] >= size_)
                fail(ErrorKind::TableShapeError, "table for '" + op.name + "' has out-of-range entry " +
                                                     std::to_string(tables_[i][j]) + " at flat index " +
                                                     std::to_string(j));
        }
    }
}

int FiniteAlgebra::apply(int op_index, std::span<const int> args) const {
    const OpSym& op = sig_.op(op_index);
    if (static_cast<std::size_t>(op.arity) != args.size())
        fail(ErrorKind::ArityMismatch, "operation '" + op.name + "' applied to " + std::to_string(args.size()) +
                                           " arguments");
    long long idx = 0;
    for (int a : args) idx = idx * size_ + a;
    return tables_[static_cast<std::size_t>(op_index)][static_cast<std::size_t>(idx)];
}

void FiniteAlgebra::attach_maltsev_term(Term t) {
    check_term(t, sig_, 3);
    MaltsevReport report = check_maltsev_axioms(*this, t);
    if (!report.holds) {
        const auto& ce = *report.counterexample;
        fail(ErrorKind::MaltsevAxiomError, "term " + term_to_string(t) + " violates axiom " +
                                               std::to_string(ce.axiom) + " at (a,b)=(" + std::to_string(ce.a) +
                                               "," + std::to_string(ce.b) + ") in algebra '" + name_ + "'");
    }
    maltsev_ = std::move(t);
}

int eval_term(const FiniteAlgebra& alg, const Term& t, std::span<const int> env) {
    if (t.is_var()) {
        if (static_cast<std::size_t>(t.var_index()) >= env.size())
            fail(ErrorKind::VarOutOfRange, "variable v" + std::to_string(t.var_index()) + " with environment of size " +
                                               std::to_string(env.size()));
        return env[static_cast<std::size_t>(t.var_index())];
    }
    int op_index = alg.signature().require(t.op_name());
    const OpSym& op = alg.signature().op(op_index);
    if (static_cast<std::size_t>(op.arity) != t.args().size())
        fail(ErrorKind::ArityMismatch, "operation '" + op.name + "' expects " + std::to_string(op.arity) +
                                           " arguments, got " + std::to_string(t.args().size()));
    std::vector<int> vals(t.args().size());
    for (std::size_t i = 0; i < t.args().size(); ++i) vals[i] = eval_term(alg, t.args()[i], env);
    return alg.apply(op_index, vals);
}

MaltsevReport check_maltsev_axioms(const FiniteAlgebra& alg, const Term& t) {
    check_term(t, alg.signature(), 3);
    const int m = alg.size();
    for (int b = 0; b < m; ++b) {
        for (int a = 0; a < m; ++a) {
            int env1[3] = {a, a, b};
            if (eval_term(alg, t, env1) != b)
                return {false, MaltsevCounterexample{a, b, 1}};
            int env2[3] = {a, b, b};
            if (eval_term(alg, t, env2) != a)
                return {false, MaltsevCounterexample{a, b, 2}};
        }
    }
    return {true, std::nullopt};
}

HomReport is_homomorphism(const FiniteAlgebra& src, const FiniteAlgebra& dst, std::span<const int> map) {
    if (!(src.signature() == dst.signature()))
        fail(ErrorKind::SignatureMismatch, "algebras '" + src.name() + "' and '" + dst.name() +
                                               "' have different signatures");
    if (map.size() != static_cast<std::size_t>(src.size()))
        fail(ErrorKind::ShapeError, "carrier map has length " + std::to_string(map.size()) + ", expected " +
                                        std::to_string(src.size()));
    for (int v : map)
        if (v < 0 || v >= dst.size())
            fail(ErrorKind::ShapeError, "carrier map entry " + std::to_string(v) + " out of range");

    const int m = src.size();
    for (std::size_t op_index = 0; op_index < src.signature().size(); ++op_index) {
        const OpSym& op = src.signature().op(static_cast<int>(op_index));
        long long count = checked_power(m, op.arity);
        std::vector<int> args(static_cast<std::size_t>(op.arity), 0);
        std::vector<int> mapped(args.size(), 0);
        for (long long flat = 0; flat < count; ++flat) {
            long long rest = flat;
            for (int p = op.arity - 1; p >= 0; --p) {
                args[static_cast<std::size_t>(p)] = static_cast<int>(rest % m);
                rest /= m;
            }
            for (std::size_t p = 0; p < args.size(); ++p) mapped[p] = map[static_cast<std::size_t>(args[p])];
            if (map[static_cast<std::size_t>(src.apply(static_cast<int>(op_index), args))] !=
                dst.apply(static_cast<int>(op_index), mapped))
                return {false, HomCounterexample{op.name, args}};
        }
    }
    return {true, std::nullopt};
}

long long checked_power(long long m, int exponent) {
    long long result = 1;
    for (int i = 0; i < exponent; ++i) {
        if (m < 1 || result > (1LL << 56) / m)
            fail(ErrorKind::TableShapeError,
                 "table size " + std::to_string(m) + "^" + std::to_string(exponent) + " out of range");
        result *= m;
    }
    return result;
}

long long encode_tuple(std::span<const int> digits, int m) {
    long long value = 0;
    for (std::size_t t = digits.size(); t-- > 0;) value = value * m + digits[t];
    return value;
}

std::vector<int> decode_tuple(long long value, int m, int length) {
    std::vector<int> digits(static_cast<std::size_t>(length));
    for (int t = 0; t < length; ++t) {
        digits[static_cast<std::size_t>(t)] = static_cast<int>(value % m);
        value /= m;
    }
    return digits;
}

FiniteAlgebra cyclic_group(int m, std::string name) {
    if (name.empty()) name = "Z" + std::to_string(m);
    Signature sig({{"+", 2}, {"neg", 1}, {"0", 0}});
    std::vector<int> add(static_cast<std::size_t>(m) * m);
    std::vector<int> neg(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        neg[static_cast<std::size_t>(a)] = (m - a) % m;
        for (int b = 0; b < m; ++b) add[static_cast<std::size_t>(a * m + b)] = (a + b) % m;
    }
    return FiniteAlgebra(std::move(name), m, std::move(sig), {std::move(add), std::move(neg), {0}});
}

FiniteAlgebra cyclic_subtraction(int m, std::string name) {
    if (name.empty()) name = "Z" + std::to_string(m) + "_sub";
    Signature sig({{"sub", 2}});
    std::vector<int> sub(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) sub[static_cast<std::size_t>(a * m + b)] = ((a - b) % m + m) % m;
    return FiniteAlgebra(std::move(name), m, std::move(sig), {std::move(sub)});
}

FiniteAlgebra meet_semilattice2() {
    Signature sig({{"meet", 2}});
    return FiniteAlgebra("semilattice2", 2, std::move(sig), {{0, 0, 0, 1}});
}

FiniteAlgebra heyting_chain3() {
    Signature sig({{"meet", 2}, {"join", 2}, {"imp", 2}, {"bot", 0}, {"top", 0}});
    const int m = 3;
    std::vector<int> meet(9), join(9), imp(9);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            meet[static_cast<std::size_t>(a * m + b)] = std::min(a, b);
            join[static_cast<std::size_t>(a * m + b)] = std::max(a, b);
            imp[static_cast<std::size_t>(a * m + b)] = a <= b ? m - 1 : b;
        }
    }
    return FiniteAlgebra("heyting3", m, std::move(sig),
                         {std::move(meet), std::move(join), std::move(imp), {0}, {2}});
}

FiniteAlgebra power_algebra(const FiniteAlgebra& base, int exponent, std::string name) {
    if (exponent < 0) fail(ErrorKind::ShapeError, "power exponent must be non-negative");
    if (name.empty()) name = base.name() + "^" + std::to_string(exponent);
    const int m = base.size();
    long long carrier = checked_power(m, exponent);
    if (carrier > (1 << 24))
        fail(ErrorKind::TableShapeError, "power carrier " + std::to_string(carrier) + " too large");
    std::vector<std::vector<int>> tables;
    tables.reserve(base.signature().size());
    for (std::size_t op_index = 0; op_index < base.signature().size(); ++op_index) {
        const OpSym& op = base.signature().op(static_cast<int>(op_index));
        long long count = checked_power(carrier, op.arity);
        if (count > (1LL << 28))
            fail(ErrorKind::TableShapeError, "power table for '" + op.name + "' would have " +
                                                 std::to_string(count) + " entries");
        std::vector<int> table(static_cast<std::size_t>(count));
        std::vector<std::vector<int>> digits(static_cast<std::size_t>(op.arity));
        std::vector<int> arg_ids(static_cast<std::size_t>(op.arity), 0);
        std::vector<int> coord(static_cast<std::size_t>(op.arity), 0);
        std::vector<int> out(static_cast<std::size_t>(exponent), 0);
        for (long long flat = 0; flat < count; ++flat) {
            long long rest = flat;
            for (int p = op.arity - 1; p >= 0; --p) {
                arg_ids[static_cast<std::size_t>(p)] = static_cast<int>(rest % carrier);
                rest /= carrier;
            }
            for (int p = 0; p < op.arity; ++p)
                digits[static_cast<std::size_t>(p)] = decode_tuple(arg_ids[static_cast<std::size_t>(p)], m, exponent);
            for (int c = 0; c < exponent; ++c) {
                for (int p = 0; p < op.arity; ++p) coord[static_cast<std::size_t>(p)] = digits[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)];
                out[static_cast<std::size_t>(c)] = base.apply(static_cast<int>(op_index), coord);
            }
            table[static_cast<std::size_t>(flat)] = static_cast<int>(encode_tuple(out, m));
        }
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(std::move(name), static_cast<int>(carrier), base.signature(), std::move(tables));
}

Term group_maltsev_term() {
    return Term::app("+", {Term::app("+", {Term::var(0), Term::app("neg", {Term::var(1)})}), Term::var(2)});
}

}
