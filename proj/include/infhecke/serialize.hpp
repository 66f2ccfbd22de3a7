#pragma once

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "infhecke/groupkit.hpp"
#include "json.hpp"

namespace infhecke {

using Json = nlohmann::ordered_json;

// Scalars are written canonically: rationals as a bare "p/q" string, anything
// else as {"conductor": N, "coeffs": [...]} at the minimal conductor, so equal
// values always serialize to identical bytes.
inline Json scalar_to_json(const Cyclotomic& x) {
    const Cyclotomic v = x.canonicalized();
    if (v.is_rational()) return Json(rational_to_string(v.rational_value()));
    Json coeffs = Json::array();
    for (const Rational& r : v.coeffs()) coeffs.push_back(rational_to_string(r));
    Json out;
    out["conductor"] = v.conductor();
    out["coeffs"] = std::move(coeffs);
    return out;
}

inline Cyclotomic scalar_from_json(const Json& j) {
    if (j.is_string()) return Cyclotomic(rational_from_string(j.get<std::string>()));
    if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
        throw UsageError("scalar must be a \"p/q\" string or a {conductor, coeffs} object");
    const int n = j.at("conductor").get<int>();
    if (n < 1) throw UsageError("scalar conductor must be positive");
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) {
        if (!c.is_string()) throw UsageError("scalar coefficients must be \"p/q\" strings");
        coeffs.push_back(rational_from_string(c.get<std::string>()));
    }
    return Cyclotomic::from_coeffs(n, std::move(coeffs));
}

inline Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) entries.push_back(scalar_to_json(m.at(i, j)));
    Json out;
    out["rows"] = m.rows;
    out["cols"] = m.cols;
    out["entries"] = std::move(entries);
    return out;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw UsageError("matrix must be a {rows, cols, entries} object");
    const int r = j.at("rows").get<int>();
    const int c = j.at("cols").get<int>();
    if (r < 1 || c < 1) throw UsageError("matrix dimensions must be positive");
    const auto& entries = j.at("entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != r * c)
        throw UsageError("matrix entries must be an array of length rows*cols");
    Matrix m(r, c);
    int k = 0;
    for (const auto& e : entries) {
        m.at(k / c, k % c) = scalar_from_json(e);
        ++k;
    }
    return m;
}

struct GroupFile {
    std::string name;
    int conductor = 1;
    std::vector<Matrix> generators;
};

inline Json group_to_json(const GroupFile& g) {
    Json gens = Json::array();
    long cond = 1;
    for (const Matrix& m : g.generators) {
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                cond = std::lcm(cond, static_cast<long>(m.at(i, j).canonicalized().conductor()));
        gens.push_back(matrix_to_json(m));
    }
    Json out;
    out["name"] = g.name;
    out["conductor"] = static_cast<int>(cond);
    out["generators"] = std::move(gens);
    return out;
}

inline GroupFile group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("conductor") || !j.contains("generators"))
        throw UsageError("group file must be a {name, conductor, generators} object");
    GroupFile g;
    g.name = j.at("name").get<std::string>();
    g.conductor = j.at("conductor").get<int>();
    for (const auto& m : j.at("generators")) g.generators.push_back(matrix_from_json(m));
    if (g.generators.empty()) throw UsageError("group file needs at least one generator");
    return g;
}

struct RepFile {
    std::string group;
    std::string label;
    std::vector<Matrix> matrices; // one per group generator, same order
};

inline Json rep_to_json(const RepFile& r) {
    Json mats = Json::array();
    for (const Matrix& m : r.matrices) mats.push_back(matrix_to_json(m));
    Json out;
    out["group"] = r.group;
    out["label"] = r.label;
    out["matrices"] = std::move(mats);
    return out;
}

inline RepFile rep_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("label") || !j.contains("matrices"))
        throw UsageError("representation file must be a {group, label, matrices} object");
    RepFile r;
    r.group = j.at("group").get<std::string>();
    r.label = j.at("label").get<std::string>();
    for (const auto& m : j.at("matrices")) r.matrices.push_back(matrix_from_json(m));
    if (r.matrices.empty()) throw UsageError("representation file needs at least one matrix");
    return r;
}

// Inventory manifest: every irreducible of one group in a single document.
struct InventoryFile {
    std::string group;
    std::vector<RepFile> irreducibles;
};

inline Json inventory_to_json(const InventoryFile& inv) {
    Json reps = Json::array();
    for (const RepFile& r : inv.irreducibles) reps.push_back(rep_to_json(r));
    Json out;
    out["group"] = inv.group;
    out["irreducibles"] = std::move(reps);
    return out;
}

inline InventoryFile inventory_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("irreducibles"))
        throw UsageError("inventory file must be a {group, irreducibles} object");
    InventoryFile inv;
    inv.group = j.at("group").get<std::string>();
    for (const auto& r : j.at("irreducibles")) inv.irreducibles.push_back(rep_from_json(r));
    return inv;
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("invalid JSON: ") + e.what());
    }
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + path);
    out << text;
}

} // namespace infhecke
