#include "mkan/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mkan {

namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::SyntaxError, what + ": " + e.what());
    }
}

void check_keys(const json& j, const std::string& what, const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
    if (!j.is_object()) fail(ErrorKind::SyntaxError, what + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!required.count(key) && !optional.count(key))
            fail(ErrorKind::SyntaxError, what + ": unknown key '" + key + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key)) fail(ErrorKind::SyntaxError, what + ": missing key '" + key + "'");
}

int get_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) fail(ErrorKind::SyntaxError, what + ": expected an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& what) {
    if (!j.is_string()) fail(ErrorKind::SyntaxError, what + ": expected a string");
    return j.get<std::string>();
}

std::vector<int> get_int_array(const json& j, const std::string& what) {
    if (!j.is_array()) fail(ErrorKind::SyntaxError, what + ": expected an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(get_int(v, what));
    return out;
}

FiniteAlgebra algebra_from_json(const json& j, const std::string& what) {
    check_keys(j, what, {"name", "carrier", "signature", "tables"}, {"maltsev_term"});
    std::string name = get_string(j.at("name"), what + ".name");
    int carrier = get_int(j.at("carrier"), what + ".carrier");
    const json& sig_json = j.at("signature");
    if (!sig_json.is_array()) fail(ErrorKind::SyntaxError, what + ".signature: expected an array");
    std::vector<OpSym> ops;
    for (std::size_t i = 0; i < sig_json.size(); ++i) {
        const json& op = sig_json[i];
        std::string opwhat = what + ".signature[" + std::to_string(i) + "]";
        check_keys(op, opwhat, {"name", "arity"});
        ops.push_back({get_string(op.at("name"), opwhat + ".name"), get_int(op.at("arity"), opwhat + ".arity")});
    }
    Signature sig(std::move(ops));
    const json& tables_json = j.at("tables");
    if (!tables_json.is_object()) fail(ErrorKind::SyntaxError, what + ".tables: expected an object");
    for (const auto& [key, value] : tables_json.items()) {
        (void)value;
        if (sig.find(key) < 0)
            fail(ErrorKind::TableShapeError, what + ".tables: table for unknown operation '" + key + "'");
    }
    std::vector<std::vector<int>> tables;
    for (const auto& op : sig.operations()) {
        if (!tables_json.contains(op.name))
            fail(ErrorKind::TableShapeError, what + ".tables: missing table for '" + op.name + "'");
        tables.push_back(get_int_array(tables_json.at(op.name), what + ".tables." + op.name));
    }
    FiniteAlgebra alg(std::move(name), carrier, std::move(sig), std::move(tables));
    if (j.contains("maltsev_term"))
        alg.attach_maltsev_term(parse_term(get_string(j.at("maltsev_term"), what + ".maltsev_term")));
    return alg;
}

json algebra_to_json(const FiniteAlgebra& alg) {
    json j;
    j["name"] = alg.name();
    j["carrier"] = alg.size();
    json sig = json::array();
    for (const auto& op : alg.signature().operations()) sig.push_back({{"name", op.name}, {"arity", op.arity}});
    j["signature"] = std::move(sig);
    json tables = json::object();
    for (std::size_t i = 0; i < alg.signature().size(); ++i)
        tables[alg.signature().op(static_cast<int>(i)).name] = alg.table(static_cast<int>(i));
    j["tables"] = std::move(tables);
    if (alg.maltsev_term()) j["maltsev_term"] = term_to_string(*alg.maltsev_term());
    return j;
}

std::vector<std::vector<std::vector<int>>> map_families_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) fail(ErrorKind::SyntaxError, what + ": expected an array");
    std::vector<std::vector<std::vector<int>>> out;
    for (std::size_t n = 0; n < j.size(); ++n) {
        const json& family = j[n];
        if (!family.is_array()) fail(ErrorKind::SyntaxError, what + "[" + std::to_string(n) + "]: expected an array");
        std::vector<std::vector<int>> maps;
        for (std::size_t i = 0; i < family.size(); ++i)
            maps.push_back(get_int_array(family[i], what + "[" + std::to_string(n) + "][" + std::to_string(i) + "]"));
        out.push_back(std::move(maps));
    }
    return out;
}

TruncatedSimplicialAlgebra simplicial_from_json(const json& j, const std::string& what) {
    check_keys(j, what, {"N", "levels", "faces", "degeneracies"});
    int N = get_int(j.at("N"), what + ".N");
    const json& levels_json = j.at("levels");
    if (!levels_json.is_array()) fail(ErrorKind::SyntaxError, what + ".levels: expected an array");
    if (static_cast<int>(levels_json.size()) != N + 1)
        fail(ErrorKind::ShapeError, what + ": N = " + std::to_string(N) + " but " +
                                        std::to_string(levels_json.size()) + " levels given");
    std::vector<FiniteAlgebra> levels;
    for (std::size_t n = 0; n < levels_json.size(); ++n)
        levels.push_back(algebra_from_json(levels_json[n], what + ".levels[" + std::to_string(n) + "]"));
    TruncatedSimplicialAlgebra X(std::move(levels), map_families_from_json(j.at("faces"), what + ".faces"),
                                 map_families_from_json(j.at("degeneracies"), what + ".degeneracies"));
    ValidationReport report = validate(X);
    if (!report.ok)
        fail(ErrorKind::ValidationError, what + ": " + std::to_string(report.violations.size()) +
                                             " law violations, first is " +
                                             violation_to_string(report.violations.front()));
    return X;
}

json simplicial_to_json(const TruncatedSimplicialAlgebra& X) {
    json j;
    j["N"] = X.truncation();
    json levels = json::array();
    for (const auto& level : X.levels()) levels.push_back(algebra_to_json(level));
    j["levels"] = std::move(levels);
    j["faces"] = X.faces();
    j["degeneracies"] = X.degeneracies();
    return j;
}

}

FiniteAlgebra parse_algebra(const std::string& text) {
    return algebra_from_json(parse_json(text, "algebra"), "algebra");
}

std::string serialize_algebra(const FiniteAlgebra& alg) { return algebra_to_json(alg).dump() + "\n"; }

TruncatedSimplicialAlgebra parse_simplicial(const std::string& text) {
    return simplicial_from_json(parse_json(text, "simplicial"), "simplicial");
}

std::string serialize_simplicial(const TruncatedSimplicialAlgebra& X) { return simplicial_to_json(X).dump() + "\n"; }

std::string serialize_hom(const SimplicialHom& f, const std::string& source_path, const std::string& target_path) {
    json j;
    j["source"] = source_path;
    j["target"] = target_path;
    j["maps"] = f.maps();
    return j.dump() + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::SyntaxError, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::SyntaxError, "cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) fail(ErrorKind::SyntaxError, "failed to write '" + path.string() + "'");
}

FiniteAlgebra load_algebra(const std::filesystem::path& path) {
    try {
        return parse_algebra(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

TruncatedSimplicialAlgebra load_simplicial(const std::filesystem::path& path) {
    try {
        return parse_simplicial(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

HomFile load_hom(const std::filesystem::path& path) {
    json j = parse_json(read_file(path), path.string());
    check_keys(j, path.string(), {"source", "target", "maps"});
    std::string source_path = get_string(j.at("source"), path.string() + ".source");
    std::string target_path = get_string(j.at("target"), path.string() + ".target");
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : path.parent_path() / fp;
    };
    auto source = std::make_shared<const TruncatedSimplicialAlgebra>(load_simplicial(resolve(source_path)));
    auto target = std::make_shared<const TruncatedSimplicialAlgebra>(load_simplicial(resolve(target_path)));
    std::vector<std::vector<int>> maps;
    const json& maps_json = j.at("maps");
    if (!maps_json.is_array()) fail(ErrorKind::SyntaxError, path.string() + ".maps: expected an array");
    for (std::size_t n = 0; n < maps_json.size(); ++n)
        maps.push_back(get_int_array(maps_json[n], path.string() + ".maps[" + std::to_string(n) + "]"));
    SimplicialHom f(std::move(source), std::move(target), std::move(maps));
    ValidationReport report = validate_hom(f);
    if (!report.ok)
        fail(ErrorKind::ValidationError, path.string() + ": hom laws fail, first violation is " +
                                             violation_to_string(report.violations.front()));
    return {std::move(f), std::move(source_path), std::move(target_path)};
}

}
