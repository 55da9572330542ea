#include <doctest.h>

#include <memory>

#include "mkan/io.hpp"
#include "test_helpers.hpp"

using namespace mkan;

TEST_CASE("terms: s-expression round trips") {
    CHECK(term_to_string(Term::var(0)) == "v0");
    Term t = group_maltsev_term();
    CHECK(term_to_string(t) == "(+ (+ v0 (neg v1)) v2)");
    CHECK(parse_term("(+ (+ v0 (neg v1)) v2)") == t);
    // whitespace-insensitive
    CHECK(parse_term("  (+\n  (+ v0 (neg   v1))\tv2 ) ") == t);
    CHECK(parse_term("(0)") == Term::app("0"));
    CHECK(parse_term("v12") == Term::var(12));
}

TEST_CASE("terms: parse errors carry positions") {
    CHECK_THROWS_AS(parse_term(""), Error);
    CHECK_THROWS_AS(parse_term("(f v0"), Error);
    CHECK_THROWS_AS(parse_term("v0 v1"), Error);
    CHECK_THROWS_AS(parse_term(")"), Error);
    CHECK_THROWS_AS(parse_term("hello"), Error);
    try {
        parse_term("(f v0))");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
}

TEST_CASE("algebra documents: minimal, full, and malformed") {
    FiniteAlgebra pt = parse_algebra(R"({"name":"pt","carrier":1,"signature":[],"tables":{}})");
    CHECK(pt.size() == 1);
    CHECK(pt.signature().size() == 0);

    std::string z4_doc = R"json({"name":"Z4","carrier":4,
        "signature":[{"name":"+","arity":2},{"name":"neg","arity":1},{"name":"0","arity":0}],
        "tables":{"+": [0,1,2,3,1,2,3,0,2,3,0,1,3,0,1,2], "neg": [0,3,2,1], "0": [0]},
        "maltsev_term":"(+ (+ v0 (neg v1)) v2)"})json";
    FiniteAlgebra z4 = parse_algebra(z4_doc);
    CHECK(z4 == [] {
        FiniteAlgebra g = cyclic_group(4, "Z4");
        g.attach_maltsev_term(group_maltsev_term());
        return g;
    }());

    // entry equal to the carrier size: named operation and flat index
    try {
        parse_algebra(R"({"name":"bad","carrier":2,"signature":[{"name":"f","arity":1}],"tables":{"f":[0,2]}})");
        FAIL("expected TableShapeError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TableShapeError);
        CHECK(std::string(e.what()).find("f") != std::string::npos);
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }

    // axiom failure at load time
    CHECK_THROWS_AS(
        parse_algebra(
            R"json({"name":"sl","carrier":2,"signature":[{"name":"meet","arity":2}],"tables":{"meet":[0,0,0,1]},"maltsev_term":"(meet (meet v0 v1) v2)"})json"),
        Error);

    // unknown keys are rejected
    CHECK_THROWS_AS(parse_algebra(R"({"name":"pt","carrier":1,"signature":[],"tables":{},"extra":1})"), Error);
}

TEST_CASE("algebra documents: canonical serialization round trips byte-for-byte") {
    std::vector<FiniteAlgebra> corpus;
    FiniteAlgebra z4 = cyclic_group(4);
    z4.attach_maltsev_term(group_maltsev_term());
    corpus.push_back(z4);
    corpus.push_back(meet_semilattice2());
    corpus.push_back(heyting_chain3());
    corpus.push_back(power_algebra(cyclic_group(2), 2));
    for (const auto& alg : corpus) {
        std::string text = serialize_algebra(alg);
        FiniteAlgebra parsed = parse_algebra(text);
        CHECK(parsed == alg);
        CHECK(serialize_algebra(parsed) == text);
    }
}

TEST_CASE("simplicial documents: round trip and eager validation") {
    for (const auto& fixture : {nerve_abelian(2, 3), circle_free_mod(2, 2), constant(heyting_chain3(), 2)}) {
        std::string fixture_text = serialize_simplicial(fixture);
        TruncatedSimplicialAlgebra reparsed = parse_simplicial(fixture_text);
        CHECK(reparsed == fixture);
        CHECK(serialize_simplicial(reparsed) == fixture_text);
    }

    TruncatedSimplicialAlgebra X = nerve_abelian(2, 3);
    std::string text = serialize_simplicial(X);
    TruncatedSimplicialAlgebra parsed = parse_simplicial(text);

    // corrupting a face entry leaves a structurally sound document that
    // fails law validation at parse time
    auto faces = X.faces();
    faces[1][0][1] ^= 1;
    TruncatedSimplicialAlgebra broken(X.levels(), faces, X.degeneracies());
    std::string broken_text = serialize_simplicial(broken);
    try {
        parse_simplicial(broken_text);
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
    }
}

TEST_CASE("hom documents: load, validate, and cite violations") {
    namespace fs = std::filesystem;
    fs::path dir = testing::fresh_temp_dir("io_hom");

    auto n42 = std::make_shared<const TruncatedSimplicialAlgebra>(nerve_abelian(4, 2));
    auto n22 = std::make_shared<const TruncatedSimplicialAlgebra>(nerve_abelian(2, 2));
    SimplicialHom reduction = nerve_hom(n42, n22, 1);

    write_file(dir / "n42.json", serialize_simplicial(*n42));
    write_file(dir / "n22.json", serialize_simplicial(*n22));
    write_file(dir / "red.json", serialize_hom(reduction, "n42.json", "n22.json"));

    HomFile loaded = load_hom(dir / "red.json");
    CHECK(loaded.hom == reduction);
    CHECK(is_levelwise_surjective(loaded.hom));
    CHECK(loaded.source_path == "n42.json");
    // canonical hom serialization is stable byte-for-byte
    CHECK(serialize_hom(loaded.hom, loaded.source_path, loaded.target_path) ==
          serialize_hom(reduction, "n42.json", "n22.json"));

    // break the level-2 map so d_0-commutation fails
    auto maps = reduction.maps();
    maps[2][5] = (maps[2][5] + 1) % 4;
    SimplicialHom broken(n42, n22, maps);
    write_file(dir / "broken.json", serialize_hom(broken, "n42.json", "n22.json"));
    try {
        load_hom(dir / "broken.json");
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
        CHECK(std::string(e.what()).find("hom") != std::string::npos);
    }

    fs::remove_all(dir);
}
