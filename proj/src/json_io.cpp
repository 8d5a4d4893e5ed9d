#include "cohomforge/json_io.hpp"

#include <string>

namespace cohomforge {

namespace {

std::string tuple_key(std::span<const int> tuple) {
    std::string key = "(";
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(tuple[i]);
    }
    return key + ")";
}

std::vector<int> parse_tuple_key(const std::string& key, int degree, int order) {
    if (key.size() < 2 || key.front() != '(' || key.back() != ')')
        throw Error("ParseError", "tuple key must look like (g1,...,gp): " + key);
    std::vector<int> tuple;
    std::string body = key.substr(1, key.size() - 2);
    size_t pos = 0;
    while (pos < body.size()) {
        size_t next = body.find(',', pos);
        if (next == std::string::npos) next = body.size();
        try {
            tuple.push_back(std::stoi(body.substr(pos, next - pos)));
        } catch (const std::exception&) {
            throw Error("ParseError", "bad tuple entry in " + key);
        }
        pos = next + 1;
    }
    if (static_cast<int>(tuple.size()) != degree)
        throw Error("ParseError", "tuple " + key + " does not match the cochain degree");
    for (int g : tuple)
        if (g < 1 || g >= order)
            throw Error("ParseError", "element " + std::to_string(g) + " out of range in " + key);
    return tuple;
}

IntMat matrix_from_json(const json& j, int rows, int cols, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw Error("ParseError", std::string(what) + ": expected " + std::to_string(rows) + " rows");
    IntMat M(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw Error("ParseError", std::string(what) + ": row " + std::to_string(r) +
                                          " needs " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            if (!row[c].is_number_integer())
                throw Error("ParseError", std::string(what) + ": non-integer entry");
            M.at(r, c) = row[c].get<i64>();
        }
    }
    return M;
}

}  // namespace

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("ParseError", "malformed JSON input");
    return j;
}

FiniteGroup group_from_json(const json& j) {
    if (!j.is_object()) throw Error("ParseError", "group description must be a JSON object");

    auto standard = [&](StandardKind kind, const char* key) {
        if (!j[key].is_number_integer())
            throw Error("ParseError", std::string(key) + " parameter must be an integer");
        return make_standard(kind, j[key].get<int>());
    };
    if (j.contains("cyclic")) return standard(StandardKind::Cyclic, "cyclic");
    if (j.contains("dihedral")) return standard(StandardKind::Dihedral, "dihedral");
    if (j.contains("heisenberg")) return standard(StandardKind::Heisenberg, "heisenberg");
    if (j.contains("symmetric")) return standard(StandardKind::Symmetric, "symmetric");
    if (j.contains("quaternion8")) return make_standard(StandardKind::Quaternion8, 8);
    if (j.contains("product")) {
        const json& p = j["product"];
        if (!p.is_array() || p.size() != 2)
            throw Error("ParseError", "product takes exactly two group descriptions");
        return direct_product(group_from_json(p[0]), group_from_json(p[1]));
    }

    json table;
    if (j.contains("table")) {
        table = j["table"];
    } else if (j.value("kind", "") == "table") {
        throw Error("ParseError", "table group needs a \"table\" field");
    } else if (j.contains("kind")) {
        json shorthand;
        shorthand[j["kind"].get<std::string>()] = j.value("m", 0);
        return group_from_json(shorthand);
    } else {
        throw Error("ParseError", "unrecognized group description");
    }

    if (!table.is_array() || table.empty())
        throw Error("ParseError", "group table must be a nonempty array");
    std::vector<std::vector<int>> rows;
    for (const json& r : table) {
        if (!r.is_array() || r.size() != table.size())
            throw Error("ParseError", "group table must be square");
        std::vector<int> row;
        for (const json& e : r) {
            if (!e.is_number_integer()) throw Error("ParseError", "group table entries are indices");
            row.push_back(e.get<int>());
        }
        rows.push_back(std::move(row));
    }
    return make_group(rows);
}

json group_to_json(const FiniteGroup& G) {
    json j;
    j["kind"] = "table";
    j["order"] = G.order;
    j["table"] = G.table;
    return j;
}

GModulePtr module_from_json(const json& j, const FiniteGroup& G) {
    if (!j.is_object()) throw Error("ParseError", "module description must be a JSON object");
    if (j.contains("cyclic")) {
        if (!j["cyclic"].is_number_integer())
            throw Error("ParseError", "cyclic module parameter must be an integer");
        return trivial_module(G, AbelianGroupPresentation::cyclic(j["cyclic"].get<i64>()));
    }
    if (j.contains("free")) {
        if (!j["free"].is_number_integer())
            throw Error("ParseError", "free module parameter must be an integer");
        return trivial_module(G, AbelianGroupPresentation::free_group(j["free"].get<int>()));
    }
    if (!j.contains("generators") || !j["generators"].is_number_integer())
        throw Error("ParseError", "module needs a \"generators\" count");
    const int m = j["generators"].get<int>();
    IntMat relations(m, 0);
    if (j.contains("relations")) {
        const json& rels = j["relations"];
        if (!rels.is_array()) throw Error("ParseError", "relations must be an array of columns");
        relations = IntMat(m, static_cast<int>(rels.size()));
        for (int c = 0; c < relations.cols; ++c) {
            const json& col = rels[c];
            if (!col.is_array() || static_cast<int>(col.size()) != m)
                throw Error("ParseError", "relation column length must match the generators");
            for (int r = 0; r < m; ++r) relations.at(r, c) = col[r].get<i64>();
        }
    }
    AbelianGroupPresentation carrier = AbelianGroupPresentation::from_relations(m, relations);
    if (!j.contains("action")) return trivial_module(G, carrier);

    const json& act = j["action"];
    if (!act.is_object()) throw Error("ParseError", "action must map element indices to matrices");
    std::vector<IntMat> action(G.order, IntMat::identity(m));
    for (auto it = act.begin(); it != act.end(); ++it) {
        int g;
        try {
            g = std::stoi(it.key());
        } catch (const std::exception&) {
            throw Error("ParseError", "action keys are group element indices");
        }
        if (g < 0 || g >= G.order) throw Error("ParseError", "action key out of range: " + it.key());
        action[g] = matrix_from_json(it.value(), m, m, "action matrix");
    }
    return make_module(G, carrier, std::move(action));
}

Cochain cochain_from_json(const json& j, GModulePtr A) {
    if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_integer())
        throw Error("ParseError", "cochain needs an integer \"degree\"");
    const int degree = j["degree"].get<int>();
    if (degree < 0 || degree > max_degree())
        throw Error("DegreeBoundExceeded", "cochain degree " + std::to_string(degree));
    Cochain c = Cochain::zero(A, degree);
    if (!j.contains("values")) return c;
    const json& values = j["values"];
    if (!values.is_object()) throw Error("ParseError", "cochain values must be an object");
    const int m = A->carrier.gens;
    for (auto it = values.begin(); it != values.end(); ++it) {
        std::vector<int> tuple = parse_tuple_key(it.key(), degree, A->group.order);
        const json& v = it.value();
        if (!v.is_array() || static_cast<int>(v.size()) != m)
            throw Error("ParseError", "value at " + it.key() + " needs " + std::to_string(m) +
                                          " coordinates");
        std::vector<i64> coords;
        for (const json& e : v) coords.push_back(e.get<i64>());
        c.set_value(c.tuple_index(tuple), coords);
    }
    return c;
}

json cochain_to_json(const Cochain& c) {
    json values = json::object();
    const i64 T = c.tuple_count();
    for (i64 t = 0; t < T; ++t) {
        std::vector<i64> v = c.value_at(t);
        if (c.coeff->carrier.is_zero(v)) continue;
        values[tuple_key(c.tuple_at(t))] = c.coeff->carrier.reduce(v);
    }
    json j;
    j["degree"] = c.degree;
    j["values"] = std::move(values);
    return j;
}

json factors_to_json(const std::vector<i64>& factors) { return json(factors); }

CircleDiffeoLift lift_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rotation") || !j["rotation"].is_number())
        throw Error("ParseError", "lift needs a numeric \"rotation\"");
    CircleDiffeoLift h;
    h.rotation = j["rotation"].get<double>();
    if (j.contains("fourier")) {
        const json& terms = j["fourier"];
        if (!terms.is_array()) throw Error("ParseError", "fourier must be an array of [k,c,s]");
        for (const json& t : terms) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer())
                throw Error("ParseError", "each fourier term is [k, cos, sin]");
            h.fourier.push_back({t[0].get<int>(), t[1].get<double>(), t[2].get<double>()});
        }
    }
    return h;
}

}  // namespace cohomforge
