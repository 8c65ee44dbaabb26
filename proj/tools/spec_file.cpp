#include "spec_file.hpp"

#include <fstream>

#include "hft/error.hpp"

namespace hftctl {

using hft::Error;
using nlohmann::json;

namespace {

hft::Vec scalars(const json& j, int conductor) {
    if (!j.is_array()) throw Error("Schema", "expected a list of scalars");
    hft::Vec v;
    for (const auto& x : j) v.push_back(hft::scalar_of_json(x, conductor));
    return v;
}

hft::Matrix matrix_of_json(const json& rows, int conductor) {
    if (!rows.is_array() || rows.empty()) throw Error("Schema", "matrices are non-empty lists of rows");
    const std::size_t c = rows.at(0).size();
    hft::Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error("Schema", "ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = hft::scalar_of_json(rows[i][k], conductor);
    }
    return m;
}

}  // namespace

hft::GroupTable group_from_json(const json& j) {
    if (!j.is_object()) throw Error("Schema", "group must be an object");
    if (j.contains("cyclic")) return hft::GroupTable::cyclic(j.at("cyclic").get<int>());
    if (j.contains("product")) {
        auto orders = j.at("product").get<std::vector<int>>();
        if (orders.empty()) throw Error("Schema", "product needs at least one factor");
        auto g = hft::GroupTable::cyclic(orders[0]);
        for (std::size_t i = 1; i < orders.size(); ++i) g = hft::GroupTable::product(g, hft::GroupTable::cyclic(orders[i]));
        return g;
    }
    if (j.contains("symmetric")) {
        if (j.at("symmetric").get<int>() != 3) throw Error("Schema", "only the symmetric group S3 is built in");
        return hft::GroupTable::symmetric3();
    }
    return hft::GroupTable::from_json(j);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("Schema", "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw Error("Schema", path + ": " + ex.what());
    }
}

Spec load_spec(const json& j) {
    try {
        if (!j.is_object()) throw Error("Schema", "spec must be a JSON object");
        Spec s{group_from_json(j.at("group")), {}, std::nullopt, std::nullopt};
        const auto& G = s.group;
        const json& alg = j.at("algebra");
        const int conductor = j.value("conductor", 1);

        std::optional<hft::GradedAlgebra> a;
        hft::Vec default_trace;
        if (alg.contains("group_algebra")) {
            a = hft::group_algebra(G);
            default_trace = {hft::Scalar(1)};
        } else if (alg.contains("matrix_model")) {
            s.model = hft::model_from_json(alg.at("matrix_model"), G);
            auto rep = hft::validate_model(*s.model);
            if (!rep.pass()) throw Error("Schema", "model data invalid: " + rep.to_json().dump());
            auto spec = hft::to_spec(*s.model);
            a = hft::matrix_model(G, spec);
            default_trace = hft::matrix_model_trace(G, spec);
        } else if (alg.contains("explicit")) {
            a = hft::GradedAlgebra::from_json(G, alg.at("explicit"));
        } else {
            throw Error("Schema", "algebra must be group_algebra, matrix_model or explicit");
        }

        hft::Vec trace = j.contains("trace") ? scalars(j.at("trace"), conductor) : default_trace;
        if (trace.empty()) throw Error("Schema", "explicit algebras need a trace");
        s.frobenius = hft::make_frobenius(*a, trace);
        if (j.contains("z")) s.frobenius.z = scalars(j.at("z"), conductor);
        else hft::attach_z(s.frobenius);

        if (j.contains("context") && j.at("context") != "identity")
            throw Error("Schema", "only the identity context is supported in spec files");

        if (j.contains("stellar")) {
            const json& st = j.at("stellar");
            if (st == "trivial") {
                s.stellar = hft::trivial_stellar(*a);
            } else if (st == "transpose") {
                if (!s.model) throw Error("Schema", "transpose duality needs a matrix_model algebra");
                s.stellar = hft::anti_involution_stellar(*a, hft::transpose_map(G, hft::to_spec(*s.model)));
            } else if (st.is_object() && st.contains("anti_involution")) {
                std::vector<hft::Matrix> f;
                for (const auto& m : st.at("anti_involution")) f.push_back(matrix_of_json(m, conductor));
                if (f.size() != static_cast<std::size_t>(G.order()))
                    throw Error("Schema", "anti_involution needs one matrix per group element");
                s.stellar = hft::anti_involution_stellar(*a, f);
            } else {
                throw Error("Schema", "stellar must be \"trivial\", \"transpose\" or {\"anti_involution\": ...}");
            }
        }
        return s;
    } catch (const json::exception& ex) {
        throw Error("Schema", std::string("spec: ") + ex.what());
    }
}

}  // namespace hftctl
