#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mkan/algebra.hpp"

namespace mkan {

struct ClosureOptions {
    // Abort with ResourceLimit once the closure would exceed this many
    // members; the closure is finite but can be astronomically large.
    std::size_t max_closure = 5'000'000;
    int threads = 1;
};

struct ClosureStats {
    std::size_t closure_size = 0;
    // Number of expansion rounds that produced at least one new function
    // (restricted projections are round 0).
    int generations = 0;
    bool found = false;
};

// A member of the generated subalgebra of A^D: its value vector over the
// probe domain plus the term that produced it.
struct IndexedFunction {
    std::vector<std::uint8_t> values;
    Term provenance;
};

// Probe domain D = {(a,a,b)} u {(a,b,b)}: the only tuples the Maltsev axioms
// constrain. Family (a,a,b) is listed first, (a,b) ascending; then (a,b,b)
// with a != b. |D| = 2m^2 - m.
std::vector<std::array<int, 3>> maltsev_probe_domain(int m);

// Decides whether alg has a Maltsev term in its clone by breadth-first
// closure of the three restricted projections under the signature
// operations, deduplicating on value vectors, until the target function
// ((a,a,b) -> b, (a,b,b) -> a) appears or the closure stabilizes. Returns a
// minimal-depth witness term, verified against check_maltsev_axioms, or
// nullopt when no term exists.
std::optional<Term> maltsev_witness(const FiniteAlgebra& alg, const ClosureOptions& opts = {});

// Size of the generated subalgebra of A^D, BFS depth and whether the target
// was reached. `found` agrees with maltsev_witness presence.
ClosureStats closure_stats(const FiniteAlgebra& alg, const ClosureOptions& opts = {});

// Every closure member with its provenance term. Reconstructs one term per
// member; meant for small closures (tests, diagnostics).
std::vector<IndexedFunction> closure_members(const FiniteAlgebra& alg, const ClosureOptions& opts = {});

}
