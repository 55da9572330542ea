#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mkan/simplicial.hpp"

namespace mkan {

// Horn (n,k): faces x_i for i != k of a hoped-for n-simplex, subject to the
// matching condition d_i x_j = d_{j-1} x_i (i < j).
struct Horn {
    int n = 1;
    int k = 0;
    std::map<int, int> faces;

    friend bool operator==(const Horn&, const Horn&) = default;
};

// The faces {d_i w : i != k} of an existing n-simplex w.
Horn horn_of_simplex(const TruncatedSimplicialAlgebra& X, int n, int k, int w);

struct MatchingReport {
    bool ok = false;
    std::optional<std::pair<int, int>> violation;  // smallest failing (i,j), i < j
};

// Checks d_i x_j = d_{j-1} x_i for all i < j with i,j != k.
MatchingReport check_matching(const TruncatedSimplicialAlgebra& X, const Horn& horn);

// Lift problem along f: the horn lives in f.source(), y in f.target() level
// n, with d_i y = f(x_i) for every provided face.
struct LiftProblem {
    SimplicialHom f;
    Horn horn;
    int y = 0;
};

enum class LiftPhase { ascending, turnaround, descending };

const char* lift_phase_name(LiftPhase phase) noexcept;

struct TraceEntry {
    int j = 0;  // step index; -1 is the initial fiber choice, n+1 the turnaround
    int w = 0;
    LiftPhase phase = LiftPhase::ascending;
};

struct LiftOptions {
    // Record the w_j sequence and assert the proof invariants
    //   A: f(w_j) = y at every step
    //   B: d_i w_j = x_i for 0 <= i <= j          (ascending, j < k)
    //   C: d_i w_j = x_i for i < k and j <= i <= n (descending, j > k)
    // aborting with InvariantViolation on the first failure.
    bool trace = false;
    // Override for the w_{-1} choice; must lie in the fiber over y.
    std::optional<int> initial;
};

struct LiftResult {
    int x = 0;
    std::vector<TraceEntry> trace;
};

// Constructs x with f_n(x) = y and d_i x = x_i (i != k) via the two-phase
// Maltsev recursion
//     w_j = [w_{j-1}, s_j d_j w_{j-1}, s_j x_j]          for 0 <= j < k,
//     w_{n+1} = w_{k-1}   (w_{-1} when k = 0),
//     w_j = [w_{j+1}, s_{j-1} d_j w_{j+1}, s_{j-1} x_j]  for n >= j > k,
// answering x = w_{k+1} (= w_{n+1} when k = n). w_{-1} defaults to the
// smallest-index element of the fiber f_n^{-1}(y). All Maltsev applications
// use the attached maltsev_term of level n.
LiftResult lift_horn(const LiftProblem& problem, const LiftOptions& opts = {});

// Kan filler for a horn in X: the same recursion with the fiber conditions
// vacuous and w_{-1} = s_0 x_0 (k != 0) or s_0 x_1 (k = 0).
LiftResult fill_horn(const TruncatedSimplicialAlgebra& X, const Horn& horn, const LiftOptions& opts = {});

// True iff f_n(x) = y and d_i x = x_i for all i != k.
bool verify_lift(const LiftProblem& problem, int x);

}
