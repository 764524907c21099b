#include "gerbe/json_io.hpp"

namespace gerbe {

namespace {

Json ratvec_to_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_to_string(x));
    return a;
}

RatVec ratvec_from_json(const Json& j) {
    if (!j.is_array()) throw MalformedInputError("expected an array of rationals");
    RatVec v;
    for (const auto& e : j) v.push_back(rat_from_string(e.get<std::string>()));
    return v;
}

Simplex simplex_from_json(const Json& j) {
    if (!j.is_array()) throw MalformedInputError("expected a simplex as a vertex array");
    Simplex s;
    for (const auto& e : j) s.push_back(e.get<int>());
    return s;
}

}  // namespace

Json complex_to_json(const SimplicialComplex& k) {
    Json j;
    Json sims = Json::array();
    for (const auto& s : maximal_simplices(k)) sims.push_back(s);
    j["maximal_simplices"] = sims;
    return j;
}

SimplicialComplex complex_from_json(const Json& j) {
    if (!j.contains("maximal_simplices"))
        throw MalformedInputError("complex file needs \"maximal_simplices\"");
    std::vector<Simplex> maximal;
    for (const auto& e : j["maximal_simplices"]) maximal.push_back(simplex_from_json(e));
    return build_complex(maximal);
}

Json lattice_to_json(const Lattice& l) {
    Json j;
    j["dim"] = l.dim();
    switch (l.kind()) {
        case LatticeKind::divisible: j["kind"] = "divisible"; break;
        case LatticeKind::integral: j["kind"] = "Zl"; break;
        case LatticeKind::finitely_generated: {
            j["kind"] = "fg";
            Json gens = Json::array();
            RatMatrix rows = l.basis_rows();
            for (size_t i = 0; i < rows.rows(); ++i) gens.push_back(ratvec_to_json(rows.row(i)));
            j["generators"] = gens;
            break;
        }
    }
    return j;
}

Lattice lattice_from_json(const Json& j) {
    if (j.is_array()) {
        // bare generator rows; ambient dimension from the row length
        if (j.empty()) throw MalformedInputError("bare lattice array needs at least one row");
        RatMatrix gens(j.size(), j[0].size());
        for (size_t i = 0; i < j.size(); ++i) {
            RatVec row = ratvec_from_json(j[i]);
            if (row.size() != gens.cols()) throw MalformedInputError("ragged lattice generators");
            for (size_t c = 0; c < row.size(); ++c) gens(i, c) = row[c];
        }
        return Lattice::finitely_generated(static_cast<int>(gens.cols()), gens);
    }
    int dim = j.at("dim").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "divisible") return Lattice::divisible(dim);
    if (kind == "Zl") return Lattice::integral(dim);
    if (kind != "fg") throw MalformedInputError("unknown lattice kind '" + kind + "'");
    const Json& g = j.at("generators");
    RatMatrix gens(g.size(), dim);
    for (size_t i = 0; i < g.size(); ++i) {
        RatVec row = ratvec_from_json(g[i]);
        if (static_cast<int>(row.size()) != dim)
            throw MalformedInputError("lattice generator has wrong dimension");
        for (int c = 0; c < dim; ++c) gens(i, c) = row[c];
    }
    return Lattice::finitely_generated(dim, gens);
}

Json coefficients_to_json(const Coefficients& c) {
    switch (c.kind()) {
        case Coefficients::Kind::integers: return Json("Z");
        case Coefficients::Kind::rationals: return Json("Q");
        case Coefficients::Kind::quotient: {
            Json j;
            j["quotient"] = c.dim();
            j["lattice"] = lattice_to_json(c.lat());
            return j;
        }
        case Coefficients::Kind::lattice: {
            Json j;
            j["subgroup"] = c.dim();
            j["lattice"] = lattice_to_json(c.lat());
            return j;
        }
    }
    throw InternalConsistencyError("unreachable coefficient kind");
}

Coefficients coefficients_from_json(const Json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "Z") return Coefficients::integers();
        if (s == "Q") return Coefficients::rationals();
        throw MalformedInputError("unknown coefficients '" + s + "'");
    }
    if (j.contains("quotient")) {
        Lattice l = lattice_from_json(j.at("lattice"));
        if (l.dim() != j.at("quotient").get<int>())
            throw MalformedInputError("quotient dimension does not match the lattice");
        return Coefficients::quotient(l);
    }
    if (j.contains("subgroup")) {
        Lattice l = lattice_from_json(j.at("lattice"));
        if (l.dim() != j.at("subgroup").get<int>())
            throw MalformedInputError("subgroup dimension does not match the lattice");
        return Coefficients::lattice(l);
    }
    throw MalformedInputError("unrecognized coefficients object");
}

Json cochain_to_json(const Cochain& c) {
    Json j;
    j["degree"] = c.degree();
    j["coefficients"] = coefficients_to_json(c.coefficients());
    Json values = Json::array();
    const bool scalar = c.coefficients().kind() == Coefficients::Kind::integers ||
                        c.coefficients().kind() == Coefficients::Kind::rationals;
    const auto& sims = c.carrier()->simplices(c.degree());
    for (size_t i = 0; i < sims.size(); ++i) {
        const RatVec& v = c.value_at(i);
        if (gerbe::is_zero(v)) continue;
        Json entry = Json::array();
        entry.push_back(sims[i]);
        if (scalar)
            entry.push_back(rat_to_string(v[0]));
        else
            entry.push_back(ratvec_to_json(v));
        values.push_back(entry);
    }
    j["values"] = values;
    return j;
}

Cochain cochain_from_json(const Json& j, const ComplexPtr& carrier) {
    int degree = j.at("degree").get<int>();
    Coefficients coeffs = coefficients_from_json(j.at("coefficients"));
    Cochain c(carrier, degree, coeffs);
    for (const auto& entry : j.at("values")) {
        if (!entry.is_array() || entry.size() != 2)
            throw MalformedInputError("cochain value entries are [simplex, value] pairs");
        Simplex s = simplex_from_json(entry[0]);
        RatVec v = entry[1].is_string() ? RatVec{rat_from_string(entry[1].get<std::string>())}
                                        : ratvec_from_json(entry[1]);
        c.set_value(s, std::move(v));
    }
    return c;
}

Json chain_to_json(const Chain& z) {
    Json j;
    j["degree"] = z.degree();
    Json values = Json::array();
    const auto& sims = z.carrier()->simplices(z.degree());
    for (size_t i = 0; i < sims.size(); ++i) {
        if (z.values()[i] == 0) continue;
        Json entry = Json::array();
        entry.push_back(sims[i]);
        entry.push_back(z.values()[i].str());
        values.push_back(entry);
    }
    j["values"] = values;
    return j;
}

Chain chain_from_json(const Json& j, const ComplexPtr& carrier) {
    Chain z(carrier, j.at("degree").get<int>());
    for (const auto& entry : j.at("values")) {
        Simplex s = simplex_from_json(entry[0]);
        Int v = entry[1].is_string() ? Int(entry[1].get<std::string>())
                                     : Int(entry[1].get<long long>());
        z.set_value(s, std::move(v));
    }
    return z;
}

Json map_to_json(const SimplicialMap& f) {
    Json pairs = Json::array();
    for (int v : f.source()->vertices()) {
        Json e = Json::array();
        e.push_back(v);
        e.push_back(f(v));
        pairs.push_back(e);
    }
    Json j;
    j["vertex_map"] = pairs;
    return j;
}

SimplicialMap map_from_json(const Json& j, const ComplexPtr& source, const ComplexPtr& target) {
    std::map<int, int> vm;
    for (const auto& e : j.at("vertex_map")) {
        if (!e.is_array() || e.size() != 2)
            throw MalformedInputError("vertex_map entries are [source, target] pairs");
        vm[e[0].get<int>()] = e[1].get<int>();
    }
    return SimplicialMap(source, target, vm);
}

Json cohomology_group_to_json(const CohomologyGroup& g) {
    Json j;
    j["degree"] = g.degree;
    j["free_rank"] = g.free_rank;
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(t.convert_to<long long>());
    j["torsion"] = torsion;
    Json gens = Json::array();
    for (const auto& c : g.free_generators) gens.push_back(cochain_to_json(c));
    for (const auto& [c, order] : g.torsion_generators) gens.push_back(cochain_to_json(c));
    j["generators"] = gens;
    return j;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

}  // namespace gerbe
