#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mkan/term.hpp"

namespace mkan {

struct MaltsevCounterexample {
    int a = 0;
    int b = 0;
    int axiom = 0;  // 1: t(a,a,b) != b, 2: t(a,b,b) != a

    friend bool operator==(const MaltsevCounterexample&, const MaltsevCounterexample&) = default;
};

struct MaltsevReport {
    bool holds = false;
    std::optional<MaltsevCounterexample> counterexample;
};

struct HomCounterexample {
    std::string op;
    std::vector<int> args;

    friend bool operator==(const HomCounterexample&, const HomCounterexample&) = default;
};

struct HomReport {
    bool holds = false;
    std::optional<HomCounterexample> counterexample;
};

// Finite algebra given by operation tables over the carrier {0..m-1}.
// Tables are flat arrays of length m^arity in row-major lexicographic
// argument order (last argument varies fastest). Immutable once built.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(std::string name, int carrier_size, Signature sig, std::vector<std::vector<int>> tables);

    const std::string& name() const { return name_; }
    int size() const { return size_; }
    const Signature& signature() const { return sig_; }
    const std::vector<std::vector<int>>& tables() const { return tables_; }
    const std::vector<int>& table(int op_index) const { return tables_.at(static_cast<std::size_t>(op_index)); }

    // Table lookup for the op_index-th operation.
    int apply(int op_index, std::span<const int> args) const;

    const std::optional<Term>& maltsev_term() const { return maltsev_; }
    // Attaches a ternary term after verifying both Maltsev identities
    // exhaustively; throws MaltsevAxiomError on failure.
    void attach_maltsev_term(Term t);

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
    std::string name_;
    int size_ = 1;
    Signature sig_;
    std::vector<std::vector<int>> tables_;
    std::optional<Term> maltsev_;
};

// Bottom-up evaluation of t at env by table lookup.
int eval_term(const FiniteAlgebra& alg, const Term& t, std::span<const int> env);

// Checks t(a,a,b) = b and t(a,b,b) = a over all pairs. Pairs are scanned in
// flat little-endian order (a + b*m), axiom 1 before axiom 2, and the first
// failure is reported.
MaltsevReport check_maltsev_axioms(const FiniteAlgebra& alg, const Term& t);

// Does map commute with every operation table on every argument tuple?
// Tuples are scanned per operation in table (row-major) order; the first
// failure is reported.
HomReport is_homomorphism(const FiniteAlgebra& src, const FiniteAlgebra& dst, std::span<const int> map);

// m^exponent with overflow guard; throws TableShapeError when out of range.
long long checked_power(long long m, int exponent);

// Encoding of digit tuples as integers, little-endian in the tuple position:
// (g_1..g_n) <-> sum g_t * m^(t-1).
long long encode_tuple(std::span<const int> digits, int m);
std::vector<int> decode_tuple(long long value, int m, int length);

// --- stock algebras used by fixtures and tests ---

// Z/m with {+, neg, 0}.
FiniteAlgebra cyclic_group(int m, std::string name = "");
// Z/m with a single binary subtraction.
FiniteAlgebra cyclic_subtraction(int m, std::string name = "");
// ({0,1}, meet) - the standard non-Maltsev example.
FiniteAlgebra meet_semilattice2();
// Heyting chain 0 < 1 < 2 with {meet, join, imp, bot, top}.
FiniteAlgebra heyting_chain3();
// Direct power with componentwise operations; elements are little-endian
// base-|base| encodings of tuples.
FiniteAlgebra power_algebra(const FiniteAlgebra& base, int exponent, std::string name = "");
// The term v0 - v1 + v2 over the {+, neg, 0} signature.
Term group_maltsev_term();

}
