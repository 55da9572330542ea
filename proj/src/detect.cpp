#include "mkan/detect.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "mkan/detail/parallel.hpp"

namespace mkan {

namespace {

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

// BFS closure of the restricted projections inside A^D. Members live in a
// flat byte pool; provenance is (op, argument member indices) so the witness
// term is rebuilt without re-running the search. Expansion enumerates
// argument tuples in lexicographic order with at least one argument taken
// from the previous frontier; candidates are merged into the dedup index in
// tuple order, so the result is identical for every thread count.
class ClosureEngine {
public:
    ClosureEngine(const FiniteAlgebra& alg, const ClosureOptions& opts) : alg_(alg), opts_(opts) {
        if (alg.size() > 256)
            fail(ErrorKind::ResourceLimit,
                 "closure search supports carriers up to 256, got " + std::to_string(alg.size()));
        domain_ = maltsev_probe_domain(alg.size());
        dlen_ = domain_.size();

        target_.resize(dlen_);
        for (std::size_t q = 0; q < dlen_; ++q) {
            const auto& t = domain_[q];
            bool diag = t[0] == t[1];   // (a,a,b) family
            target_[q] = static_cast<std::uint8_t>(diag ? t[2] : t[0]);
            // Where both axiom patterns apply the two rules must agree.
            if (t[0] == t[1] && t[1] == t[2] && target_[q] != static_cast<std::uint8_t>(t[0]))
                fail(ErrorKind::InvariantViolation, "Maltsev target ill-defined at the diagonal");
        }
    }

    void run() {
        for (int v = 0; v < 3; ++v) {
            std::vector<std::uint8_t> vals(dlen_);
            for (std::size_t q = 0; q < dlen_; ++q) vals[q] = static_cast<std::uint8_t>(domain_[q][static_cast<std::size_t>(v)]);
            insert(vals.data(), -1 - v, nullptr, 0);
            if (target_member_) return;
        }
        std::size_t frontier_start = 0;
        int round = 0;
        while (true) {
            ++round;
            std::size_t before = count();
            expand_round(frontier_start, before);
            if (target_member_) {
                generations_ = round;
                return;
            }
            if (count() == before) return;  // stabilized
            generations_ = round;
            frontier_start = before;
        }
    }

    std::size_t count() const { return prov_.size(); }
    int generations() const { return generations_; }
    bool found() const { return target_member_.has_value(); }

    Term term_of(std::uint32_t member) const {
        const Prov& p = prov_[member];
        if (p.op < 0) return Term::var(-1 - p.op);
        int arity = alg_.signature().op(p.op).arity;
        std::vector<Term> args;
        args.reserve(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) args.push_back(term_of(args_pool_[p.args_begin + static_cast<std::size_t>(i)]));
        return Term::app(alg_.signature().op(p.op).name, std::move(args));
    }

    std::optional<Term> witness() const {
        if (!target_member_) return std::nullopt;
        return term_of(*target_member_);
    }

    std::vector<IndexedFunction> members() const {
        std::vector<IndexedFunction> out;
        out.reserve(count());
        for (std::uint32_t i = 0; i < count(); ++i) {
            IndexedFunction fn{std::vector<std::uint8_t>(pool_.begin() + static_cast<std::ptrdiff_t>(i * dlen_),
                                                         pool_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dlen_)),
                               term_of(i)};
            out.push_back(std::move(fn));
        }
        return out;
    }

private:
    struct Prov {
        int op;                   // signature index, or -1-v for projection v
        std::uint32_t args_begin; // offset into args_pool_
    };

    // One expansion round: apply every operation to every argument tuple
    // drawn from members [0, total) with at least one index >= frontier_start.
    void expand_round(std::size_t frontier_start, std::size_t total) {
        constexpr std::size_t kChunkTuples = 2048;
        for (std::size_t op_index = 0; op_index < alg_.signature().size(); ++op_index) {
            const OpSym& op = alg_.signature().op(static_cast<int>(op_index));
            const int r = op.arity;
            if (r == 0) {
                if (frontier_start == 0) {
                    std::vector<std::uint8_t> vals(dlen_, static_cast<std::uint8_t>(alg_.table(static_cast<int>(op_index))[0]));
                    insert(vals.data(), static_cast<int>(op_index), nullptr, 0);
                    if (target_member_) return;
                }
                continue;
            }
            // tuple count = total^r; astronomically large spaces are hopeless
            if (static_cast<double>(r) * std::log2(static_cast<double>(total)) > 60.0)
                fail(ErrorKind::ResourceLimit, "argument tuple space too large for closure expansion");
            std::size_t tuple_count = 1;
            for (int i = 0; i < r; ++i) tuple_count *= total;

            std::size_t num_chunks = (tuple_count + kChunkTuples - 1) / kChunkTuples;
            std::size_t wave = static_cast<std::size_t>(opts_.threads > 1 ? opts_.threads : 1);
            struct Slot {
                std::vector<std::uint8_t> values;
                std::vector<std::uint32_t> args;
                std::size_t n = 0;
            };
            std::vector<Slot> slots(wave);

            for (std::size_t wave_begin = 0; wave_begin < num_chunks; wave_begin += wave) {
                std::size_t wave_count = std::min(wave, num_chunks - wave_begin);
                detail::for_each_chunk(opts_.threads, wave_count, [&](std::size_t s) {
                    Slot& slot = slots[s];
                    slot.values.clear();
                    slot.args.clear();
                    slot.n = 0;
                    std::size_t chunk = wave_begin + s;
                    std::size_t t_begin = chunk * kChunkTuples;
                    std::size_t t_end = std::min(t_begin + kChunkTuples, tuple_count);
                    std::vector<std::uint32_t> ids(static_cast<std::size_t>(r));
                    std::vector<std::uint8_t> vals(dlen_);
                    const int* table = alg_.table(static_cast<int>(op_index)).data();
                    const int m = alg_.size();
                    for (std::size_t t = t_begin; t < t_end; ++t) {
                        std::size_t rest = t;
                        bool fresh = false;
                        for (int p = r - 1; p >= 0; --p) {
                            ids[static_cast<std::size_t>(p)] = static_cast<std::uint32_t>(rest % total);
                            rest /= total;
                            fresh = fresh || ids[static_cast<std::size_t>(p)] >= frontier_start;
                        }
                        if (!fresh) continue;
                        for (std::size_t q = 0; q < dlen_; ++q) {
                            std::size_t flat = 0;
                            for (int p = 0; p < r; ++p) flat = flat * static_cast<std::size_t>(m) + pool_[ids[static_cast<std::size_t>(p)] * dlen_ + q];
                            vals[q] = static_cast<std::uint8_t>(table[flat]);
                        }
                        // results equal to an argument are always duplicates
                        bool dup_arg = false;
                        for (int p = 0; p < r && !dup_arg; ++p)
                            dup_arg = std::memcmp(vals.data(), pool_.data() + ids[static_cast<std::size_t>(p)] * dlen_, dlen_) == 0;
                        if (dup_arg) continue;
                        slot.values.insert(slot.values.end(), vals.begin(), vals.end());
                        slot.args.insert(slot.args.end(), ids.begin(), ids.end());
                        ++slot.n;
                    }
                });
                for (std::size_t s = 0; s < wave_count; ++s) {
                    const Slot& slot = slots[s];
                    for (std::size_t c = 0; c < slot.n; ++c) {
                        insert(slot.values.data() + c * dlen_, static_cast<int>(op_index),
                               slot.args.data() + c * static_cast<std::size_t>(r), static_cast<std::size_t>(r));
                        if (target_member_) return;
                    }
                }
            }
        }
    }

    void insert(const std::uint8_t* vals, int op, const std::uint32_t* args, std::size_t arity) {
        std::uint64_t h = fnv1a(vals, dlen_);
        auto& bucket = by_hash_[h];
        for (std::uint32_t idx : bucket)
            if (std::memcmp(pool_.data() + idx * dlen_, vals, dlen_) == 0) return;
        if (count() >= opts_.max_closure)
            fail(ErrorKind::ResourceLimit, "closure exceeded the cap of " + std::to_string(opts_.max_closure) +
                                               " members; raise max_closure to continue");
        auto idx = static_cast<std::uint32_t>(count());
        pool_.insert(pool_.end(), vals, vals + dlen_);
        Prov p{op, static_cast<std::uint32_t>(args_pool_.size())};
        if (arity > 0) args_pool_.insert(args_pool_.end(), args, args + arity);
        prov_.push_back(p);
        bucket.push_back(idx);
        if (std::memcmp(vals, target_.data(), dlen_) == 0) target_member_ = idx;
    }

    const FiniteAlgebra& alg_;
    ClosureOptions opts_;
    std::vector<std::array<int, 3>> domain_;
    std::size_t dlen_ = 0;
    std::vector<std::uint8_t> target_;
    std::vector<std::uint8_t> pool_;
    std::vector<Prov> prov_;
    std::vector<std::uint32_t> args_pool_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_hash_;
    std::optional<std::uint32_t> target_member_;
    int generations_ = 0;
};

}

std::vector<std::array<int, 3>> maltsev_probe_domain(int m) {
    if (m < 1) fail(ErrorKind::ShapeError, "carrier size must be positive");
    std::vector<std::array<int, 3>> domain;
    domain.reserve(static_cast<std::size_t>(2 * m * m - m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) domain.push_back({a, a, b});
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b) domain.push_back({a, b, b});
    return domain;
}

std::optional<Term> maltsev_witness(const FiniteAlgebra& alg, const ClosureOptions& opts) {
    ClosureEngine engine(alg, opts);
    engine.run();
    std::optional<Term> witness = engine.witness();
    if (witness) {
        MaltsevReport report = check_maltsev_axioms(alg, *witness);
        if (!report.holds)
            fail(ErrorKind::InvariantViolation, "closure produced a witness that fails the Maltsev axioms");
    }
    return witness;
}

ClosureStats closure_stats(const FiniteAlgebra& alg, const ClosureOptions& opts) {
    ClosureEngine engine(alg, opts);
    engine.run();
    return {engine.count(), engine.generations(), engine.found()};
}

std::vector<IndexedFunction> closure_members(const FiniteAlgebra& alg, const ClosureOptions& opts) {
    ClosureEngine engine(alg, opts);
    engine.run();
    return engine.members();
}

}
