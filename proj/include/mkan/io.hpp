#pragma once

#include <filesystem>
#include <string>

#include "mkan/simplicial.hpp"

namespace mkan {

// Algebra document:
//   {"name": str, "carrier": int, "signature": [{"name": str, "arity": int}],
//    "tables": {opname: [int, ...]}, "maltsev_term": optional str}
// Tables are validated for length and range; a maltsev_term s-expression is
// parsed and its axioms verified eagerly.
FiniteAlgebra parse_algebra(const std::string& text);
std::string serialize_algebra(const FiniteAlgebra& alg);

// Simplicial document:
//   {"N": int, "levels": [algebra, ...], "faces": [[[int,...] per i] per n],
//    "degeneracies": [[[int,...] per i] per n]}
// with faces listed for n = 1..N and degeneracies for n = 0..N-1. The
// simplicial laws are validated eagerly; the first violation aborts parsing.
TruncatedSimplicialAlgebra parse_simplicial(const std::string& text);
std::string serialize_simplicial(const TruncatedSimplicialAlgebra& X);

// Hom document: {"source": path, "target": path, "maps": [[int,...] per level]}.
// Relative paths resolve against the hom file's directory; the hom laws are
// validated eagerly.
struct HomFile {
    SimplicialHom hom;
    std::string source_path;
    std::string target_path;
};
HomFile load_hom(const std::filesystem::path& path);
std::string serialize_hom(const SimplicialHom& f, const std::string& source_path, const std::string& target_path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

FiniteAlgebra load_algebra(const std::filesystem::path& path);
TruncatedSimplicialAlgebra load_simplicial(const std::filesystem::path& path);

}
