#include "mkan/simplicial.hpp"

#include <algorithm>
#include <tuple>

namespace mkan {

namespace {

void check_map_array(const std::vector<int>& map, std::size_t domain, int codomain, const std::string& what) {
    if (map.size() != domain)
        fail(ErrorKind::ShapeError, what + " has length " + std::to_string(map.size()) + ", expected " +
                                        std::to_string(domain));
    for (int v : map)
        if (v < 0 || v >= codomain)
            fail(ErrorKind::ShapeError, what + " has out-of-range entry " + std::to_string(v));
}

bool violation_less(const ValidationViolation& a, const ValidationViolation& b) {
    return std::tie(a.law, a.n, a.i, a.j, a.element) < std::tie(b.law, b.n, b.i, b.j, b.element);
}

void append_hom_violation(std::vector<ValidationViolation>& out, const std::string& law, int n, int i,
                          const FiniteAlgebra& src, const HomReport& report) {
    if (report.holds) return;
    const auto& ce = *report.counterexample;
    long long flat = 0;
    for (int a : ce.args) flat = flat * src.size() + a;
    out.push_back({law, n, i, src.signature().find(ce.op), flat});
}

}

TruncatedSimplicialAlgebra::TruncatedSimplicialAlgebra(std::vector<FiniteAlgebra> levels,
                                                       std::vector<std::vector<std::vector<int>>> faces,
                                                       std::vector<std::vector<std::vector<int>>> degeneracies)
    : levels_(std::move(levels)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies)) {
    if (levels_.size() < 2) fail(ErrorKind::ShapeError, "truncation level must be at least 1");
    N_ = static_cast<int>(levels_.size()) - 1;
    for (std::size_t n = 1; n < levels_.size(); ++n)
        if (!(levels_[n].signature() == levels_[0].signature()))
            fail(ErrorKind::SignatureMismatch, "levels 0 and " + std::to_string(n) + " have different signatures");
    if (faces_.size() != static_cast<std::size_t>(N_))
        fail(ErrorKind::ShapeError, "expected " + std::to_string(N_) + " face families, got " +
                                        std::to_string(faces_.size()));
    if (degeneracies_.size() != static_cast<std::size_t>(N_))
        fail(ErrorKind::ShapeError, "expected " + std::to_string(N_) + " degeneracy families, got " +
                                        std::to_string(degeneracies_.size()));
    for (int n = 1; n <= N_; ++n) {
        const auto& family = faces_[static_cast<std::size_t>(n - 1)];
        if (family.size() != static_cast<std::size_t>(n + 1))
            fail(ErrorKind::ShapeError, "level " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                            " face maps, got " + std::to_string(family.size()));
        for (int i = 0; i <= n; ++i)
            check_map_array(family[static_cast<std::size_t>(i)], static_cast<std::size_t>(level_size(n)),
                            level_size(n - 1), "d_" + std::to_string(i) + " at level " + std::to_string(n));
    }
    for (int n = 0; n < N_; ++n) {
        const auto& family = degeneracies_[static_cast<std::size_t>(n)];
        if (family.size() != static_cast<std::size_t>(n + 1))
            fail(ErrorKind::ShapeError, "level " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                            " degeneracy maps, got " + std::to_string(family.size()));
        for (int i = 0; i <= n; ++i)
            check_map_array(family[static_cast<std::size_t>(i)], static_cast<std::size_t>(level_size(n)),
                            level_size(n + 1), "s_" + std::to_string(i) + " at level " + std::to_string(n));
    }
}

const std::vector<int>& TruncatedSimplicialAlgebra::face_map(int n, int i) const {
    if (n < 1 || n > N_ || i < 0 || i > n)
        fail(ErrorKind::DimensionOutOfRange,
             "face d_" + std::to_string(i) + " at level " + std::to_string(n) + " (truncation " + std::to_string(N_) + ")");
    return faces_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)];
}

const std::vector<int>& TruncatedSimplicialAlgebra::degeneracy_map(int n, int i) const {
    if (n < 0 || n >= N_ || i < 0 || i > n)
        fail(ErrorKind::DimensionOutOfRange,
             "degeneracy s_" + std::to_string(i) + " at level " + std::to_string(n) + " (truncation " + std::to_string(N_) + ")");
    return degeneracies_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

std::string violation_to_string(const ValidationViolation& v) {
    return v.law + "(n=" + std::to_string(v.n) + ", i=" + std::to_string(v.i) + ", j=" + std::to_string(v.j) +
           ", element=" + std::to_string(v.element) + ")";
}

ValidationReport validate(const TruncatedSimplicialAlgebra& X) {
    std::vector<ValidationViolation> out;
    const int N = X.truncation();

    // face and degeneracy maps are homomorphisms
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            append_hom_violation(out, "face_hom", n, i, X.level(n),
                                 is_homomorphism(X.level(n), X.level(n - 1), X.face_map(n, i)));
    for (int n = 0; n < N; ++n)
        for (int i = 0; i <= n; ++i)
            append_hom_violation(out, "deg_hom", n, i, X.level(n),
                                 is_homomorphism(X.level(n), X.level(n + 1), X.degeneracy_map(n, i)));

    // d_i d_j = d_{j-1} d_i, i < j
    for (int n = 2; n <= N; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (int x = 0; x < X.level_size(n); ++x)
                    if (X.face(n - 1, i, X.face(n, j, x)) != X.face(n - 1, j - 1, X.face(n, i, x)))
                        out.push_back({"dd", n, i, j, x});

    // d_i s_j = s_{j-1} d_i, i < j
    for (int n = 1; n < N; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (int x = 0; x < X.level_size(n); ++x)
                    if (X.face(n + 1, i, X.degeneracy(n, j, x)) != X.degeneracy(n - 1, j - 1, X.face(n, i, x)))
                        out.push_back({"ds_lt", n, i, j, x});

    // d_j s_j = id = d_{j+1} s_j
    for (int n = 0; n < N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int x = 0; x < X.level_size(n); ++x) {
                if (X.face(n + 1, j, X.degeneracy(n, j, x)) != x) out.push_back({"ds_id", n, j, j, x});
                if (X.face(n + 1, j + 1, X.degeneracy(n, j, x)) != x) out.push_back({"ds_id", n, j + 1, j, x});
            }

    // d_i s_j = s_j d_{i-1}, i > j+1
    for (int n = 1; n < N; ++n)
        for (int j = 0; j < n; ++j)
            for (int i = j + 2; i <= n + 1; ++i)
                for (int x = 0; x < X.level_size(n); ++x)
                    if (X.face(n + 1, i, X.degeneracy(n, j, x)) != X.degeneracy(n - 1, j, X.face(n, i - 1, x)))
                        out.push_back({"ds_gt", n, i, j, x});

    // s_i s_j = s_{j+1} s_i, i <= j
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (int x = 0; x < X.level_size(n); ++x)
                    if (X.degeneracy(n + 1, i, X.degeneracy(n, j, x)) !=
                        X.degeneracy(n + 1, j + 1, X.degeneracy(n, i, x)))
                        out.push_back({"ss", n, i, j, x});

    std::sort(out.begin(), out.end(), violation_less);
    return {out.empty(), std::move(out)};
}

TruncatedSimplicialAlgebra constant(const FiniteAlgebra& alg, int N) {
    if (N < 1) fail(ErrorKind::ShapeError, "truncation level must be at least 1");
    std::vector<int> id(static_cast<std::size_t>(alg.size()));
    for (int x = 0; x < alg.size(); ++x) id[static_cast<std::size_t>(x)] = x;
    std::vector<FiniteAlgebra> levels(static_cast<std::size_t>(N + 1), alg);
    std::vector<std::vector<std::vector<int>>> faces, degens;
    for (int n = 1; n <= N; ++n) faces.emplace_back(static_cast<std::size_t>(n + 1), id);
    for (int n = 0; n < N; ++n) degens.emplace_back(static_cast<std::size_t>(n + 1), id);
    return TruncatedSimplicialAlgebra(std::move(levels), std::move(faces), std::move(degens));
}

TruncatedSimplicialAlgebra nerve_abelian(int m, int N) {
    if (m < 1 || N < 1) fail(ErrorKind::ShapeError, "nerve_abelian needs m >= 1 and N >= 1");
    const FiniteAlgebra base = cyclic_group(m);
    std::vector<FiniteAlgebra> levels;
    for (int n = 0; n <= N; ++n) {
        FiniteAlgebra level = power_algebra(base, n, "nerve" + std::to_string(m) + "_L" + std::to_string(n));
        level.attach_maltsev_term(group_maltsev_term());
        levels.push_back(std::move(level));
    }
    std::vector<std::vector<std::vector<int>>> faces, degens;
    for (int n = 1; n <= N; ++n) {
        std::vector<std::vector<int>> family;
        for (int i = 0; i <= n; ++i) {
            std::vector<int> map(static_cast<std::size_t>(levels[static_cast<std::size_t>(n)].size()));
            for (int x = 0; x < levels[static_cast<std::size_t>(n)].size(); ++x) {
                std::vector<int> g = decode_tuple(x, m, n);
                std::vector<int> out;
                out.reserve(static_cast<std::size_t>(n - 1));
                if (i == 0) {
                    out.assign(g.begin() + 1, g.end());
                } else if (i == n) {
                    out.assign(g.begin(), g.end() - 1);
                } else {
                    out.assign(g.begin(), g.begin() + i - 1);
                    out.push_back((g[static_cast<std::size_t>(i - 1)] + g[static_cast<std::size_t>(i)]) % m);
                    out.insert(out.end(), g.begin() + i + 1, g.end());
                }
                map[static_cast<std::size_t>(x)] = static_cast<int>(encode_tuple(out, m));
            }
            family.push_back(std::move(map));
        }
        faces.push_back(std::move(family));
    }
    for (int n = 0; n < N; ++n) {
        std::vector<std::vector<int>> family;
        for (int i = 0; i <= n; ++i) {
            std::vector<int> map(static_cast<std::size_t>(levels[static_cast<std::size_t>(n)].size()));
            for (int x = 0; x < levels[static_cast<std::size_t>(n)].size(); ++x) {
                std::vector<int> g = decode_tuple(x, m, n);
                std::vector<int> out(g.begin(), g.begin() + i);
                out.push_back(0);
                out.insert(out.end(), g.begin() + i, g.end());
                map[static_cast<std::size_t>(x)] = static_cast<int>(encode_tuple(out, m));
            }
            family.push_back(std::move(map));
        }
        degens.push_back(std::move(family));
    }
    return TruncatedSimplicialAlgebra(std::move(levels), std::move(faces), std::move(degens));
}

int circle_basis_vector(const CircleElement& e, int m) {
    if (e.dimension < 0 || e.jump < 0 || e.jump > e.dimension)
        fail(ErrorKind::ShapeError, "jump " + std::to_string(e.jump) + " in dimension " +
                                        std::to_string(e.dimension));
    long long v = 1;
    for (int t = 0; t < e.jump; ++t) v *= m;
    return static_cast<int>(v);
}

int circle_face_jump(int n, int i, int j) {
    if (j == 0) return 0;
    int r = i < j ? j - 1 : j;
    if (r <= 0 || r > n - 1) return 0;  // constant map: collapses to the basepoint
    return r;
}

int circle_degeneracy_jump(int i, int j) {
    if (j == 0) return 0;
    return i < j ? j + 1 : j;
}

TruncatedSimplicialAlgebra circle_free_mod(int m, int N) {
    if (m < 2 || N < 2) fail(ErrorKind::ShapeError, "circle_free_mod needs m >= 2 and N >= 2");
    const FiniteAlgebra base = cyclic_group(m);
    std::vector<FiniteAlgebra> levels;
    for (int n = 0; n <= N; ++n) {
        FiniteAlgebra level = power_algebra(base, n + 1, "circle" + std::to_string(m) + "_L" + std::to_string(n));
        level.attach_maltsev_term(group_maltsev_term());
        levels.push_back(std::move(level));
    }
    std::vector<std::vector<std::vector<int>>> faces, degens;
    for (int n = 1; n <= N; ++n) {
        std::vector<std::vector<int>> family;
        for (int i = 0; i <= n; ++i) {
            std::vector<int> map(static_cast<std::size_t>(levels[static_cast<std::size_t>(n)].size()));
            for (int x = 0; x < levels[static_cast<std::size_t>(n)].size(); ++x) {
                std::vector<int> coeff = decode_tuple(x, m, n + 1);
                std::vector<int> out(static_cast<std::size_t>(n), 0);
                for (int j = 0; j <= n; ++j) {
                    int r = circle_face_jump(n, i, j);
                    out[static_cast<std::size_t>(r)] = (out[static_cast<std::size_t>(r)] + coeff[static_cast<std::size_t>(j)]) % m;
                }
                map[static_cast<std::size_t>(x)] = static_cast<int>(encode_tuple(out, m));
            }
            family.push_back(std::move(map));
        }
        faces.push_back(std::move(family));
    }
    for (int n = 0; n < N; ++n) {
        std::vector<std::vector<int>> family;
        for (int i = 0; i <= n; ++i) {
            std::vector<int> map(static_cast<std::size_t>(levels[static_cast<std::size_t>(n)].size()));
            for (int x = 0; x < levels[static_cast<std::size_t>(n)].size(); ++x) {
                std::vector<int> coeff = decode_tuple(x, m, n + 1);
                std::vector<int> out(static_cast<std::size_t>(n + 2), 0);
                for (int j = 0; j <= n; ++j) {
                    int r = circle_degeneracy_jump(i, j);
                    out[static_cast<std::size_t>(r)] = (out[static_cast<std::size_t>(r)] + coeff[static_cast<std::size_t>(j)]) % m;
                }
                map[static_cast<std::size_t>(x)] = static_cast<int>(encode_tuple(out, m));
            }
            family.push_back(std::move(map));
        }
        degens.push_back(std::move(family));
    }
    return TruncatedSimplicialAlgebra(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialHom::SimplicialHom(std::shared_ptr<const TruncatedSimplicialAlgebra> source,
                             std::shared_ptr<const TruncatedSimplicialAlgebra> target,
                             std::vector<std::vector<int>> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
    if (!source_ || !target_) fail(ErrorKind::ShapeError, "hom needs source and target");
    if (source_->truncation() != target_->truncation())
        fail(ErrorKind::ShapeError, "source and target have different truncations");
    if (!(source_->level(0).signature() == target_->level(0).signature()))
        fail(ErrorKind::SignatureMismatch, "source and target have different signatures");
    if (maps_.size() != static_cast<std::size_t>(source_->truncation() + 1))
        fail(ErrorKind::ShapeError, "expected " + std::to_string(source_->truncation() + 1) + " level maps, got " +
                                        std::to_string(maps_.size()));
    for (int n = 0; n <= source_->truncation(); ++n)
        check_map_array(maps_[static_cast<std::size_t>(n)], static_cast<std::size_t>(source_->level_size(n)),
                        target_->level_size(n), "f_" + std::to_string(n));
}

ValidationReport validate_hom(const SimplicialHom& f) {
    std::vector<ValidationViolation> out;
    const TruncatedSimplicialAlgebra& X = f.source();
    const TruncatedSimplicialAlgebra& Y = f.target();
    const int N = X.truncation();

    for (int n = 0; n <= N; ++n)
        append_hom_violation(out, "hom_level", n, 0, X.level(n), is_homomorphism(X.level(n), Y.level(n), f.map(n)));

    // f d_i = d_i f and f s_i = s_i f
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            for (int x = 0; x < X.level_size(n); ++x)
                if (f.apply(n - 1, X.face(n, i, x)) != Y.face(n, i, f.apply(n, x)))
                    out.push_back({"hom_face", n, i, 0, x});
    for (int n = 0; n < N; ++n)
        for (int i = 0; i <= n; ++i)
            for (int x = 0; x < X.level_size(n); ++x)
                if (f.apply(n + 1, X.degeneracy(n, i, x)) != Y.degeneracy(n, i, f.apply(n, x)))
                    out.push_back({"hom_deg", n, i, 0, x});

    std::sort(out.begin(), out.end(), violation_less);
    return {out.empty(), std::move(out)};
}

bool is_levelwise_surjective(const SimplicialHom& f) {
    for (int n = 0; n <= f.source().truncation(); ++n) {
        std::vector<char> hit(static_cast<std::size_t>(f.target().level_size(n)), 0);
        for (int v : f.map(n)) hit[static_cast<std::size_t>(v)] = 1;
        for (char h : hit)
            if (!h) return false;
    }
    return true;
}

SimplicialHom identity_hom(std::shared_ptr<const TruncatedSimplicialAlgebra> X) {
    std::vector<std::vector<int>> maps;
    for (int n = 0; n <= X->truncation(); ++n) {
        std::vector<int> id(static_cast<std::size_t>(X->level_size(n)));
        for (int x = 0; x < X->level_size(n); ++x) id[static_cast<std::size_t>(x)] = x;
        maps.push_back(std::move(id));
    }
    auto target = X;
    return SimplicialHom(std::move(X), std::move(target), std::move(maps));
}

SimplicialHom digitwise_hom(std::shared_ptr<const TruncatedSimplicialAlgebra> src,
                            std::shared_ptr<const TruncatedSimplicialAlgebra> dst, int m_src, int m_dst,
                            int scale) {
    std::vector<std::vector<int>> maps;
    for (int n = 0; n <= src->truncation(); ++n) {
        int digits = 0;
        for (long long size = 1; size < src->level_size(n); size *= m_src) ++digits;
        std::vector<int> map(static_cast<std::size_t>(src->level_size(n)));
        for (int x = 0; x < src->level_size(n); ++x) {
            std::vector<int> g = decode_tuple(x, m_src, digits);
            for (int& v : g) v = ((v * scale) % m_dst + m_dst) % m_dst;
            map[static_cast<std::size_t>(x)] = static_cast<int>(encode_tuple(g, m_dst));
        }
        maps.push_back(std::move(map));
    }
    SimplicialHom f(std::move(src), std::move(dst), std::move(maps));
    ValidationReport report = validate_hom(f);
    if (!report.ok)
        fail(ErrorKind::ValidationError, "digitwise map is not a simplicial homomorphism: first violation " +
                                             violation_to_string(report.violations.front()));
    return f;
}

SimplicialHom nerve_hom(std::shared_ptr<const TruncatedSimplicialAlgebra> src,
                        std::shared_ptr<const TruncatedSimplicialAlgebra> dst, int scale) {
    int m_src = src->level_size(1);
    int m_dst = dst->level_size(1);
    return digitwise_hom(std::move(src), std::move(dst), m_src, m_dst, scale);
}

SimplicialHom compose_hom(const SimplicialHom& g, const SimplicialHom& f) {
    if (&g.source() != &f.target() && !(g.source() == f.target()))
        fail(ErrorKind::ShapeError, "compose_hom: middle objects differ");
    std::vector<std::vector<int>> maps;
    for (int n = 0; n <= f.source().truncation(); ++n) {
        std::vector<int> map(static_cast<std::size_t>(f.source().level_size(n)));
        for (int x = 0; x < f.source().level_size(n); ++x)
            map[static_cast<std::size_t>(x)] = g.apply(n, f.apply(n, x));
        maps.push_back(std::move(map));
    }
    return SimplicialHom(f.source_ptr(), g.target_ptr(), std::move(maps));
}

}
