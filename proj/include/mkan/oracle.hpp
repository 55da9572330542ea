#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mkan/horn.hpp"

namespace mkan {

struct FibrationFailure {
    int n = 0;
    int k = 0;
    int y = 0;
    std::map<int, int> faces;

    friend bool operator==(const FibrationFailure&, const FibrationFailure&) = default;
};

struct FibrationReport {
    long long checked_horns = 0;
    std::vector<FibrationFailure> failures;  // empty iff every enumerated problem is solvable
    double elapsed_seconds = 0.0;
};

struct FibrationOptions {
    // A-priori bound on the enumeration size sum |Y_n| * |X_{n-1}|^n;
    // exceeding it raises BudgetExceeded before any work happens.
    unsigned long long budget = 100'000'000ULL;
    int threads = 1;
    // When f is levelwise surjective and every source level carries a
    // Maltsev term, also check that lift_horn solves each problem, that
    // verify_lift accepts its answer and that the answer appears in
    // brute_lift's list; violations raise InvariantViolation.
    bool cross_check = true;
    // Run the cross-checking lifts with trace=true so the proof invariants
    // are asserted at every step.
    bool trace_invariants = false;
};

// All x in X_n with d_i x = x_i for i != k, ascending.
std::vector<int> brute_fill(const TruncatedSimplicialAlgebra& X, const Horn& horn);

// All x with f_n(x) = y and d_i x = x_i for i != k, ascending. Surjectivity
// is not required; the empty list certifies an unliftable horn.
std::vector<int> brute_lift(const LiftProblem& problem);

// The budget metric sum_{n=1..max_dim} |Y_n| * |X_{n-1}|^n (saturating).
unsigned long long fibration_enumeration_cost(const SimplicialHom& f, int max_dim);

// Enumerates every lift problem (n <= max_dim, k, y, matching face tuple
// with d_i y = f(x_i)) and records those with empty brute_lift. Face tuples
// are generated by backtracking over i in ascending order directly from the
// constraints. Deterministic for every thread count.
FibrationReport verify_fibration(const SimplicialHom& f, int max_dim, const FibrationOptions& opts = {});

// Exhaustive (1,2)-Kan check in dimension 2 on circle_free_mod(m, 2): all
// x in X_2 with d_1 x = s_0* and d_2 x = sigma, ascending. Independent of
// the constructive filler.
std::vector<int> kan12_circle_solutions(int m);

// Smallest such x, if any (always present for these module theories).
std::optional<int> kan12_circle(int m);

}
