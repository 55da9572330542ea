#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mkan/algebra.hpp"

namespace mkan {

// Levels X_0..X_N of finite algebras over a shared signature, with face and
// degeneracy maps stored as index arrays. Immutable after construction;
// construction checks array shapes only, validate() checks the laws.
class TruncatedSimplicialAlgebra {
public:
    TruncatedSimplicialAlgebra(std::vector<FiniteAlgebra> levels,
                               std::vector<std::vector<std::vector<int>>> faces,
                               std::vector<std::vector<std::vector<int>>> degeneracies);

    int truncation() const { return N_; }
    const FiniteAlgebra& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
    int level_size(int n) const { return level(n).size(); }

    // d_i : X_n -> X_{n-1}, for 1 <= n <= N, 0 <= i <= n.
    const std::vector<int>& face_map(int n, int i) const;
    // s_i : X_n -> X_{n+1}, for 0 <= n <= N-1, 0 <= i <= n.
    const std::vector<int>& degeneracy_map(int n, int i) const;

    int face(int n, int i, int x) const { return face_map(n, i)[static_cast<std::size_t>(x)]; }
    int degeneracy(int n, int i, int x) const { return degeneracy_map(n, i)[static_cast<std::size_t>(x)]; }

    const std::vector<FiniteAlgebra>& levels() const { return levels_; }
    const std::vector<std::vector<std::vector<int>>>& faces() const { return faces_; }
    const std::vector<std::vector<std::vector<int>>>& degeneracies() const { return degeneracies_; }

    friend bool operator==(const TruncatedSimplicialAlgebra&, const TruncatedSimplicialAlgebra&) = default;

private:
    int N_ = 1;
    std::vector<FiniteAlgebra> levels_;
    std::vector<std::vector<std::vector<int>>> faces_;         // [n-1][i], n = 1..N
    std::vector<std::vector<std::vector<int>>> degeneracies_;  // [n][i],   n = 0..N-1
};

struct ValidationViolation {
    std::string law;  // "dd", "ds_lt", "ds_id", "ds_gt", "ss", "face_hom", "deg_hom", ...
    int n = 0;
    int i = 0;
    int j = 0;             // second index, or the op index for *_hom laws
    long long element = 0; // witness element (flat argument index for *_hom laws)

    friend bool operator==(const ValidationViolation&, const ValidationViolation&) = default;
};

struct ValidationReport {
    bool ok = false;
    std::vector<ValidationViolation> violations;
};

std::string violation_to_string(const ValidationViolation& v);

// Exhaustively checks that all face/degeneracy maps are homomorphisms and
// that every simplicial identity holds wherever both sides are defined
// within the truncation. Violations are sorted, so the report is
// order-independent.
ValidationReport validate(const TruncatedSimplicialAlgebra& X);

// X_n = alg for all n, every map the identity.
TruncatedSimplicialAlgebra constant(const FiniteAlgebra& alg, int N);

// Nerve of Z/m: X_n = (Z/m)^n, d_0 drops g_1, d_n drops g_n, inner d_i adds
// adjacent entries, s_i inserts 0. Elements are little-endian base-m
// encodings; every level carries the v0-v1+v2 Maltsev term.
TruncatedSimplicialAlgebra nerve_abelian(int m, int N);

// Free Z/m-module on the circle S^1 = Delta^1/boundary, degreewise:
// X_n = (Z/m)^(n+1) with coordinates indexed by the jump classes j = 0..n
// (j = 0 is the basepoint degeneracy, ascending basis order). Faces and
// degeneracies are the linear extensions of the jump combinatorics.
TruncatedSimplicialAlgebra circle_free_mod(int m, int N);

// A basis simplex of S^1 in some dimension: jump 0 is the iterated
// degeneracy of the basepoint; jump j >= 1 is the monotone map [n] -> [1]
// switching 0 -> 1 at position j. Dimension 1, jump 1 is the nondegenerate
// 1-simplex sigma; dimension 0, jump 0 is the vertex *.
struct CircleElement {
    int dimension = 0;
    int jump = 0;

    friend bool operator==(const CircleElement&, const CircleElement&) = default;
};

// Encoded circle-model vector with coefficient 1 at e.jump and 0 elsewhere.
int circle_basis_vector(const CircleElement& e, int m);

// Jump combinatorics of S^1 (exposed so oracles can stay independent of the
// constructed tables): image of jump class j under d_i in dimension n,
// respectively under s_i; out-of-range jumps collapse to the basepoint 0.
int circle_face_jump(int n, int i, int j);
int circle_degeneracy_jump(int i, int j);

// Levelwise carrier maps implementing f : X -> Y.
class SimplicialHom {
public:
    SimplicialHom(std::shared_ptr<const TruncatedSimplicialAlgebra> source,
                  std::shared_ptr<const TruncatedSimplicialAlgebra> target,
                  std::vector<std::vector<int>> maps);

    const TruncatedSimplicialAlgebra& source() const { return *source_; }
    const TruncatedSimplicialAlgebra& target() const { return *target_; }
    std::shared_ptr<const TruncatedSimplicialAlgebra> source_ptr() const { return source_; }
    std::shared_ptr<const TruncatedSimplicialAlgebra> target_ptr() const { return target_; }
    const std::vector<std::vector<int>>& maps() const { return maps_; }
    const std::vector<int>& map(int n) const { return maps_.at(static_cast<std::size_t>(n)); }
    int apply(int n, int x) const { return map(n)[static_cast<std::size_t>(x)]; }

    friend bool operator==(const SimplicialHom& a, const SimplicialHom& b) {
        return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.maps_ == b.maps_;
    }

private:
    std::shared_ptr<const TruncatedSimplicialAlgebra> source_;
    std::shared_ptr<const TruncatedSimplicialAlgebra> target_;
    std::vector<std::vector<int>> maps_;
};

// Checks that each level map is a homomorphism ("hom_level") and commutes
// with all faces and degeneracies ("hom_face", "hom_deg").
ValidationReport validate_hom(const SimplicialHom& f);

// True iff every f_n is onto the target carrier.
bool is_levelwise_surjective(const SimplicialHom& f);

SimplicialHom identity_hom(std::shared_ptr<const TruncatedSimplicialAlgebra> X);

// Digitwise g -> scale*g mod m_dst between fixtures whose elements are
// little-endian base-m encodings (scale = 1 with m_dst | m_src is the mod
// reduction). Validates the hom laws eagerly; throws ValidationError if
// they fail.
SimplicialHom digitwise_hom(std::shared_ptr<const TruncatedSimplicialAlgebra> src,
                            std::shared_ptr<const TruncatedSimplicialAlgebra> dst, int m_src, int m_dst,
                            int scale);

// digitwise_hom between two nerve_abelian fixtures, inferring the moduli
// from the level-1 carriers.
SimplicialHom nerve_hom(std::shared_ptr<const TruncatedSimplicialAlgebra> src,
                        std::shared_ptr<const TruncatedSimplicialAlgebra> dst, int scale);

// g after f.
SimplicialHom compose_hom(const SimplicialHom& g, const SimplicialHom& f);

}
