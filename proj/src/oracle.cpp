#include "mkan/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "mkan/detail/parallel.hpp"

namespace mkan {

namespace {

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
    if (a != 0 && b > std::numeric_limits<unsigned long long>::max() / a)
        return std::numeric_limits<unsigned long long>::max();
    return a * b;
}

unsigned long long saturating_add(unsigned long long a, unsigned long long b) {
    if (a > std::numeric_limits<unsigned long long>::max() - b)
        return std::numeric_limits<unsigned long long>::max();
    return a + b;
}

struct BlockResult {
    long long checked = 0;
    std::vector<FibrationFailure> failures;
};

// Enumerates, for fixed (n, k, y), every face tuple satisfying both the
// matching condition and d_i y = f(x_i), by backtracking over the face
// indices in ascending order.
class HornEnumerator {
public:
    HornEnumerator(const SimplicialHom& f, int n, int k, int y, bool cross_check, bool trace)
        : f_(f), X_(f.source()), Y_(f.target()), n_(n), k_(k), y_(y), cross_check_(cross_check), trace_(trace) {
        for (int i = 0; i <= n_; ++i)
            if (i != k_) indices_.push_back(i);
    }

    void run(BlockResult& out) {
        assigned_.clear();
        extend(0, out);
    }

private:
    void extend(std::size_t pos, BlockResult& out) {
        if (pos == indices_.size()) {
            Horn horn{n_, k_, assigned_};
            LiftProblem problem{f_, horn, y_};
            ++out.checked;
            std::vector<int> solutions = brute_lift(problem);
            if (solutions.empty()) {
                out.failures.push_back({n_, k_, y_, assigned_});
            } else if (cross_check_) {
                LiftResult lifted = lift_horn(problem, {trace_, std::nullopt});
                if (!verify_lift(problem, lifted.x) ||
                    !std::binary_search(solutions.begin(), solutions.end(), lifted.x))
                    fail(ErrorKind::InvariantViolation,
                         "lift_horn answer " + std::to_string(lifted.x) + " disagrees with brute_lift at (n=" +
                             std::to_string(n_) + ", k=" + std::to_string(k_) + ", y=" + std::to_string(y_) + ")");
            }
            return;
        }
        int i = indices_[pos];
        int target_face = Y_.face(n_, i, y_);
        for (int x = 0; x < X_.level_size(n_ - 1); ++x) {
            if (f_.apply(n_ - 1, x) != target_face) continue;
            bool matches = true;
            for (std::size_t q = 0; q < pos && matches; ++q) {
                int ip = indices_[q];  // ip < i
                matches = X_.face(n_ - 1, ip, x) == X_.face(n_ - 1, i - 1, assigned_.at(ip));
            }
            if (!matches) continue;
            assigned_[i] = x;
            extend(pos + 1, out);
        }
        assigned_.erase(i);
    }

    const SimplicialHom& f_;
    const TruncatedSimplicialAlgebra& X_;
    const TruncatedSimplicialAlgebra& Y_;
    int n_, k_, y_;
    bool cross_check_, trace_;
    std::vector<int> indices_;
    std::map<int, int> assigned_;
};

}

std::vector<int> brute_fill(const TruncatedSimplicialAlgebra& X, const Horn& horn) {
    if (horn.n < 1 || horn.n > X.truncation())
        fail(ErrorKind::DimensionOutOfRange, "horn dimension " + std::to_string(horn.n) + " with truncation " +
                                                 std::to_string(X.truncation()));
    std::vector<int> out;
    for (int x = 0; x < X.level_size(horn.n); ++x) {
        bool ok = true;
        for (const auto& [i, xi] : horn.faces)
            if (X.face(horn.n, i, x) != xi) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<int> brute_lift(const LiftProblem& problem) {
    const TruncatedSimplicialAlgebra& X = problem.f.source();
    const Horn& horn = problem.horn;
    if (horn.n < 1 || horn.n > X.truncation())
        fail(ErrorKind::DimensionOutOfRange, "horn dimension " + std::to_string(horn.n) + " with truncation " +
                                                 std::to_string(X.truncation()));
    std::vector<int> out;
    for (int x = 0; x < X.level_size(horn.n); ++x) {
        if (problem.f.apply(horn.n, x) != problem.y) continue;
        bool ok = true;
        for (const auto& [i, xi] : horn.faces)
            if (X.face(horn.n, i, x) != xi) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

unsigned long long fibration_enumeration_cost(const SimplicialHom& f, int max_dim) {
    unsigned long long total = 0;
    for (int n = 1; n <= max_dim; ++n) {
        unsigned long long tuples = 1;
        for (int i = 0; i < n; ++i)
            tuples = saturating_mul(tuples, static_cast<unsigned long long>(f.source().level_size(n - 1)));
        total = saturating_add(total, saturating_mul(tuples, static_cast<unsigned long long>(f.target().level_size(n))));
    }
    return total;
}

FibrationReport verify_fibration(const SimplicialHom& f, int max_dim, const FibrationOptions& opts) {
    if (max_dim < 1 || max_dim > f.source().truncation())
        fail(ErrorKind::DimensionOutOfRange, "max_dim " + std::to_string(max_dim) + " with truncation " +
                                                 std::to_string(f.source().truncation()));
    unsigned long long cost = fibration_enumeration_cost(f, max_dim);
    if (cost > opts.budget)
        fail(ErrorKind::BudgetExceeded, "enumeration needs " + std::to_string(cost) +
                                            " candidate evaluations, budget is " + std::to_string(opts.budget));

    bool cross = opts.cross_check && is_levelwise_surjective(f);
    if (cross) {
        for (int n = 0; n <= f.source().truncation() && cross; ++n)
            cross = f.source().level(n).maltsev_term().has_value();
    }

    auto start = std::chrono::steady_clock::now();

    // one block per (n, k, y); merged in block order
    struct Block {
        int n, k, y;
    };
    std::vector<Block> blocks;
    for (int n = 1; n <= max_dim; ++n)
        for (int k = 0; k <= n; ++k)
            for (int y = 0; y < f.target().level_size(n); ++y) blocks.push_back({n, k, y});

    std::vector<BlockResult> results(blocks.size());
    detail::for_each_chunk(opts.threads, blocks.size(), [&](std::size_t b) {
        HornEnumerator enumerator(f, blocks[b].n, blocks[b].k, blocks[b].y, cross, opts.trace_invariants);
        enumerator.run(results[b]);
    });

    FibrationReport report;
    for (const auto& r : results) {
        report.checked_horns += r.checked;
        report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<int> kan12_circle_solutions(int m) {
    TruncatedSimplicialAlgebra X = circle_free_mod(m, 2);
    const int s0_star = circle_basis_vector({1, 0}, m);  // degenerate basepoint in X_1
    const int sigma = circle_basis_vector({1, 1}, m);    // the nondegenerate 1-simplex
    std::vector<int> out;
    for (int x = 0; x < X.level_size(2); ++x)
        if (X.face(2, 1, x) == s0_star && X.face(2, 2, x) == sigma) out.push_back(x);
    return out;
}

std::optional<int> kan12_circle(int m) {
    std::vector<int> solutions = kan12_circle_solutions(m);
    if (solutions.empty()) return std::nullopt;
    return solutions.front();
}

}
