#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "orbitred/reduction.hpp"
#include "orbitred/symplectic.hpp"

namespace orbitred {

using json = nlohmann::ordered_json;

// Exact scalars serialize as four decimal integer strings
// [re_num, re_den, im_num, im_den]; floating scalars as [re, im].

inline json scalar_to_json(const GaussianRational& a) {
    return json::array({a.re().get_num().get_str(), a.re().get_den().get_str(),
                        a.im().get_num().get_str(), a.im().get_den().get_str()});
}
inline json scalar_to_json(const FloatingComplex& a) { return json::array({a.re, a.im}); }

template <class S>
S scalar_from_json(const json& j);

template <>
inline GaussianRational scalar_from_json<GaussianRational>(const json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("exact scalar must be [re_num, re_den, im_num, im_den]");
    try {
        return GaussianRational::from_parts(j[0].get<std::string>(), j[1].get<std::string>(),
                                            j[2].get<std::string>(), j[3].get<std::string>());
    } catch (const std::invalid_argument&) {
        throw ParseError("bad integer string in exact scalar");
    }
}
template <>
inline FloatingComplex scalar_from_json<FloatingComplex>(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("floating scalar must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class S>
json matrix_to_json(const SquareMatrix<S>& a) {
    json rows = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.dim(); ++j) row.push_back(scalar_to_json(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class S>
SquareMatrix<S> matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const int m = static_cast<int>(j.size());
    SquareMatrix<S> a(m);
    for (int i = 0; i < m; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != m) throw ParseError("matrix must be square");
        for (int k = 0; k < m; ++k) a.at(i, k) = scalar_from_json<S>(j[i][k]);
    }
    return a;
}

template <class S>
json spec_to_json(const OrbitSpec<S>& spec) {
    json eigs = json::array();
    for (const auto& [lam, k] : spec.eigs) eigs.push_back(json::array({scalar_to_json(lam), k}));
    return json{{"m", spec.m}, {"eigs", std::move(eigs)}};
}

template <class S>
OrbitSpec<S> spec_from_json(const json& j) {
    OrbitSpec<S> spec;
    spec.m = j.at("m").get<int>();
    for (const auto& e : j.at("eigs"))
        spec.eigs.emplace_back(scalar_from_json<S>(e.at(0)), e.at(1).get<int>());
    return spec;
}

template <class S>
json discrete_to_json(const DiscreteData<S>& d) {
    json up = json::array(), low = json::array();
    for (const auto& s : d.ordering_up.slots) up.push_back(scalar_to_json(s));
    for (const auto& s : d.ordering_low.slots) low.push_back(scalar_to_json(s));
    return json{{"anchors", json::array({d.anchor_n, d.anchor_up, d.anchor_low})},
                {"lambda", scalar_to_json(d.lambda_n)},
                {"ordering_up", std::move(up)},
                {"ordering_low", std::move(low)}};
}

template <class S>
DiscreteData<S> discrete_from_json(const json& j) {
    DiscreteData<S> d;
    const auto& a = j.at("anchors");
    d.anchor_n = a.at(0).get<int>();
    d.anchor_up = a.at(1).get<int>();
    d.anchor_low = a.at(2).get<int>();
    d.lambda_n = scalar_from_json<S>(j.at("lambda"));
    for (const auto& s : j.at("ordering_up")) d.ordering_up.slots.push_back(scalar_from_json<S>(s));
    for (const auto& s : j.at("ordering_low")) d.ordering_low.slots.push_back(scalar_from_json<S>(s));
    return d;
}

template <class S>
json tuple_to_json(const FuchsTuple<S>& t) {
    json specs = json::array(), mats = json::array();
    for (const auto& sp : t.specs) specs.push_back(spec_to_json(sp));
    for (const auto& a : t.matrices) mats.push_back(matrix_to_json(a));
    json out{{"mode", ScalarTraits<S>::mode_name()},
             {"m", t.dim()},
             {"specs", std::move(specs)},
             {"matrices", std::move(mats)}};
    if (!t.poles.empty()) {
        json poles = json::array();
        for (const auto& p : t.poles) poles.push_back(scalar_to_json(p));
        out["poles"] = std::move(poles);
    }
    return out;
}

template <class S>
FuchsTuple<S> tuple_from_json(const json& j) {
    if (j.at("mode").get<std::string>() != ScalarTraits<S>::mode_name())
        throw ParseError("tuple mode '" + j.at("mode").get<std::string>() + "' does not match requested scalar mode");
    FuchsTuple<S> t;
    for (const auto& sp : j.at("specs")) t.specs.push_back(spec_from_json<S>(sp));
    for (const auto& a : j.at("matrices")) t.matrices.push_back(matrix_from_json<S>(a));
    if (j.contains("poles"))
        for (const auto& p : j["poles"]) t.poles.push_back(scalar_from_json<S>(p));
    if (t.dim() != j.at("m").get<int>()) throw ParseError("declared m does not match matrices");
    return t;
}

template <class S>
json reduced_to_json(const ReducedPoint<S>& p) {
    json specs = json::array(), tail = json::array();
    for (const auto& sp : p.specs) specs.push_back(spec_to_json(sp));
    for (const auto& a : p.tail) tail.push_back(matrix_to_json(a));
    return json{{"mode", ScalarTraits<S>::mode_name()},
                {"m", p.specs.front().m},
                {"specs", std::move(specs)},
                {"discrete_data", discrete_to_json(p.data)},
                {"a_hat", matrix_to_json(p.a_hat)},
                {"tail", std::move(tail)}};
}

template <class S>
ReducedPoint<S> reduced_from_json(const json& j) {
    if (j.at("mode").get<std::string>() != ScalarTraits<S>::mode_name())
        throw ParseError("reduced-point mode does not match requested scalar mode");
    ReducedPoint<S> p;
    for (const auto& sp : j.at("specs")) p.specs.push_back(spec_from_json<S>(sp));
    p.data = discrete_from_json<S>(j.at("discrete_data"));
    p.a_hat = matrix_from_json<S>(j.at("a_hat"));
    for (const auto& a : j.at("tail")) p.tail.push_back(matrix_from_json<S>(a));
    return p;
}

inline json report_to_json(const PullbackReport& r) {
    auto residual = [&](double v) -> json {
        if (r.exact_mode && v == 0.0) return "exact-zero";
        return v;
    };
    return json{{"trials", r.trials},
                {"failures", r.failures},
                {"max_residual_a", residual(r.max_residual_a)},
                {"max_residual_b", residual(r.max_residual_b)},
                {"max_residual_c", residual(r.max_residual_c)},
                {"domain_errors", r.domain_errors}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace orbitred
