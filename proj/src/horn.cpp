#include "mkan/horn.hpp"

namespace mkan {

namespace {

void check_horn_shape(const TruncatedSimplicialAlgebra& X, const Horn& horn) {
    if (horn.n < 1 || horn.n > X.truncation())
        fail(ErrorKind::DimensionOutOfRange, "horn dimension " + std::to_string(horn.n) + " with truncation " +
                                                 std::to_string(X.truncation()));
    if (horn.k < 0 || horn.k > horn.n)
        fail(ErrorKind::DimensionOutOfRange, "missing index " + std::to_string(horn.k) + " in dimension " +
                                                 std::to_string(horn.n));
    if (horn.faces.size() != static_cast<std::size_t>(horn.n))
        fail(ErrorKind::ShapeError, "horn (" + std::to_string(horn.n) + "," + std::to_string(horn.k) + ") needs " +
                                        std::to_string(horn.n) + " faces, got " + std::to_string(horn.faces.size()));
    for (const auto& [i, x] : horn.faces) {
        if (i < 0 || i > horn.n || i == horn.k)
            fail(ErrorKind::ShapeError, "unexpected face index " + std::to_string(i));
        if (x < 0 || x >= X.level_size(horn.n - 1))
            fail(ErrorKind::ShapeError, "face x_" + std::to_string(i) + " = " + std::to_string(x) +
                                            " outside level " + std::to_string(horn.n - 1));
    }
}

void require_matching(const TruncatedSimplicialAlgebra& X, const Horn& horn) {
    MatchingReport report = check_matching(X, horn);
    if (!report.ok)
        fail(ErrorKind::MatchingViolation,
             "faces " + std::to_string(report.violation->first) + " and " + std::to_string(report.violation->second) +
                 " of the (" + std::to_string(horn.n) + "," + std::to_string(horn.k) + ")-horn do not match");
}

// Two-phase recursion shared by fill_horn and lift_horn; f is null when
// there is no fiber condition.
class Filler {
public:
    Filler(const TruncatedSimplicialAlgebra& X, const Horn& horn, const SimplicialHom* f, int y, bool trace)
        : X_(X), horn_(horn), f_(f), y_(y), trace_(trace) {
        if (!X.level(horn.n).maltsev_term())
            fail(ErrorKind::MissingMaltsevTerm,
                 "level " + std::to_string(horn.n) + " algebra '" + X.level(horn.n).name() + "' has no Maltsev term");
        term_ = &*X.level(horn.n).maltsev_term();
    }

    LiftResult run(int w_init) {
        const int n = horn_.n;
        const int k = horn_.k;
        int w = w_init;
        record(-1, w, LiftPhase::ascending);
        for (int j = 0; j < k; ++j) {
            w = maltsev(w, X_.degeneracy(n - 1, j, X_.face(n, j, w)), X_.degeneracy(n - 1, j, face_of(j)));
            record(j, w, LiftPhase::ascending);
            if (trace_) check_ascending(j, w);
        }
        record(n + 1, w, LiftPhase::turnaround);
        for (int j = n; j > k; --j) {
            w = maltsev(w, X_.degeneracy(n - 1, j - 1, X_.face(n, j, w)), X_.degeneracy(n - 1, j - 1, face_of(j)));
            record(j, w, LiftPhase::descending);
            if (trace_) check_descending(j, w);
        }
        finish_check(w);
        return {w, std::move(trace_entries_)};
    }

private:
    int face_of(int i) const { return horn_.faces.at(i); }

    int maltsev(int a, int b, int c) const {
        int env[3] = {a, b, c};
        return eval_term(X_.level(horn_.n), *term_, env);
    }

    void record(int j, int w, LiftPhase phase) {
        if (!trace_) return;
        trace_entries_.push_back({j, w, phase});
        // invariant A: every w_j stays in the fiber over y
        if (f_ && f_->apply(horn_.n, w) != y_)
            fail(ErrorKind::InvariantViolation, "f(w_" + std::to_string(j) + ") = " +
                                                    std::to_string(f_->apply(horn_.n, w)) + " != y = " +
                                                    std::to_string(y_));
    }

    // invariant B: after ascending step j, d_i w_j = x_i for 0 <= i <= j
    void check_ascending(int j, int w) const {
        for (int i = 0; i <= j; ++i)
            if (X_.face(horn_.n, i, w) != face_of(i))
                fail(ErrorKind::InvariantViolation, "ascending step " + std::to_string(j) + ": d_" +
                                                        std::to_string(i) + " w != x_" + std::to_string(i));
    }

    // invariant C: after descending step j, d_i w_j = x_i for i < k and j <= i <= n
    void check_descending(int j, int w) const {
        for (int i = 0; i < horn_.k; ++i)
            if (X_.face(horn_.n, i, w) != face_of(i))
                fail(ErrorKind::InvariantViolation, "descending step " + std::to_string(j) + ": d_" +
                                                        std::to_string(i) + " w != x_" + std::to_string(i));
        for (int i = j; i <= horn_.n; ++i)
            if (X_.face(horn_.n, i, w) != face_of(i))
                fail(ErrorKind::InvariantViolation, "descending step " + std::to_string(j) + ": d_" +
                                                        std::to_string(i) + " w != x_" + std::to_string(i));
    }

    // postcondition check; failures indicate a violated precondition
    // (an invalid simplicial object or homomorphism)
    void finish_check(int x) const {
        if (f_ && f_->apply(horn_.n, x) != y_)
            fail(ErrorKind::InvariantViolation, "filler left the fiber over y; is f a simplicial homomorphism?");
        for (const auto& [i, xi] : horn_.faces)
            if (X_.face(horn_.n, i, x) != xi)
                fail(ErrorKind::InvariantViolation,
                     "filler face d_" + std::to_string(i) + " mismatch; does X satisfy the simplicial identities?");
    }

    const TruncatedSimplicialAlgebra& X_;
    const Horn& horn_;
    const SimplicialHom* f_;
    int y_;
    bool trace_;
    const Term* term_;
    std::vector<TraceEntry> trace_entries_;
};

}

const char* lift_phase_name(LiftPhase phase) noexcept {
    switch (phase) {
        case LiftPhase::ascending: return "ascending";
        case LiftPhase::turnaround: return "turnaround";
        case LiftPhase::descending: return "descending";
    }
    return "?";
}

Horn horn_of_simplex(const TruncatedSimplicialAlgebra& X, int n, int k, int w) {
    Horn horn{n, k, {}};
    if (n < 1 || n > X.truncation()) fail(ErrorKind::DimensionOutOfRange, "horn dimension " + std::to_string(n));
    for (int i = 0; i <= n; ++i)
        if (i != k) horn.faces[i] = X.face(n, i, w);
    return horn;
}

MatchingReport check_matching(const TruncatedSimplicialAlgebra& X, const Horn& horn) {
    check_horn_shape(X, horn);
    const int n = horn.n;
    if (n >= 2) {
        for (int i = 0; i <= n; ++i) {
            if (i == horn.k) continue;
            for (int j = i + 1; j <= n; ++j) {
                if (j == horn.k) continue;
                if (X.face(n - 1, i, horn.faces.at(j)) != X.face(n - 1, j - 1, horn.faces.at(i)))
                    return {false, std::make_pair(i, j)};
            }
        }
    }
    return {true, std::nullopt};
}

LiftResult lift_horn(const LiftProblem& problem, const LiftOptions& opts) {
    const TruncatedSimplicialAlgebra& X = problem.f.source();
    const TruncatedSimplicialAlgebra& Y = problem.f.target();
    const Horn& horn = problem.horn;
    require_matching(X, horn);
    if (problem.y < 0 || problem.y >= Y.level_size(horn.n))
        fail(ErrorKind::ShapeError, "y = " + std::to_string(problem.y) + " outside target level " +
                                        std::to_string(horn.n));
    for (const auto& [i, xi] : horn.faces)
        if (Y.face(horn.n, i, problem.y) != problem.f.apply(horn.n - 1, xi))
            fail(ErrorKind::ValidationError,
                 "d_" + std::to_string(i) + " y != f(x_" + std::to_string(i) + "): the problem is inconsistent");

    int w_init;
    if (opts.initial) {
        w_init = *opts.initial;
        if (w_init < 0 || w_init >= X.level_size(horn.n) || problem.f.apply(horn.n, w_init) != problem.y)
            fail(ErrorKind::ValidationError, "initial element " + std::to_string(w_init) + " is not in the fiber over y");
    } else {
        w_init = -1;
        for (int x = 0; x < X.level_size(horn.n); ++x) {
            if (problem.f.apply(horn.n, x) == problem.y) {
                w_init = x;
                break;
            }
        }
        if (w_init < 0)
            fail(ErrorKind::NoPreimage, "y = " + std::to_string(problem.y) + " has no preimage at level " +
                                            std::to_string(horn.n) + "; f is not surjective there");
    }
    return Filler(X, horn, &problem.f, problem.y, opts.trace).run(w_init);
}

LiftResult fill_horn(const TruncatedSimplicialAlgebra& X, const Horn& horn, const LiftOptions& opts) {
    require_matching(X, horn);
    int w_init;
    if (opts.initial) {
        w_init = *opts.initial;
        if (w_init < 0 || w_init >= X.level_size(horn.n))
            fail(ErrorKind::ShapeError, "initial element outside level " + std::to_string(horn.n));
    } else {
        int base = horn.k != 0 ? horn.faces.at(0) : horn.faces.at(1);
        w_init = X.degeneracy(horn.n - 1, 0, base);
    }
    return Filler(X, horn, nullptr, 0, opts.trace).run(w_init);
}

bool verify_lift(const LiftProblem& problem, int x) {
    const TruncatedSimplicialAlgebra& X = problem.f.source();
    const Horn& horn = problem.horn;
    check_horn_shape(X, horn);
    if (x < 0 || x >= X.level_size(horn.n)) return false;
    if (problem.f.apply(horn.n, x) != problem.y) return false;
    for (const auto& [i, xi] : horn.faces)
        if (X.face(horn.n, i, x) != xi) return false;
    return true;
}

}
