#include "gerbe/fixtures.hpp"

#include <cstdlib>
#include <fstream>

#include "gerbe/json_io.hpp"

#ifndef GERBE_DEFAULT_DATA_DIR
#define GERBE_DEFAULT_DATA_DIR "data/fixtures"
#endif

namespace gerbe {

const std::vector<FixtureExpectation>& fixture_table() {
    static const std::vector<FixtureExpectation> table = {
        {"point", 1, {1}, {{}}, false},
        {"S1", 0, {1, 1}, {{}, {}}, false},
        {"S2", 2, {1, 0, 1}, {{}, {}, {}}, true},
        {"T2", 0, {1, 2, 1}, {{}, {}, {}}, true},
        {"RP2", 1, {1, 0, 0}, {{}, {}, {Int(2)}}, false},
        {"S3", 0, {1, 0, 0, 1}, {{}, {}, {}, {}}, false},
        {"T2xS1", 0, {1, 3, 3, 1}, {{}, {}, {}, {}}, false},
    };
    return table;
}

std::string fixture_data_dir() {
    if (const char* env = std::getenv("GERBE_DATA_DIR")) return env;
    return GERBE_DEFAULT_DATA_DIR;
}

namespace {

const FixtureExpectation& expectation(const std::string& name) {
    for (const auto& e : fixture_table())
        if (e.name == name) return e;
    throw MalformedInputError("unknown fixture '" + name + "'");
}

SimplicialComplex read_complex_file(const std::string& name) {
    std::string path = fixture_data_dir() + "/" + name + ".json";
    std::ifstream in(path);
    if (!in) throw MalformedInputError("cannot open fixture file " + path);
    Json j;
    in >> j;
    return complex_from_json(j);
}

}  // namespace

ComplexPtr load_fixture(const std::string& name) {
    const FixtureExpectation& want = expectation(name);
    ComplexPtr k;
    if (name == "T2xS1") {
        k = product_complex(load_fixture("T2"), load_fixture("S1")).complex;
    } else {
        k = share(read_complex_file(name));
    }
    if (k->euler_characteristic() != want.euler_characteristic)
        throw InternalConsistencyError("fixture " + name + " has wrong Euler characteristic");
    if (k->dim() + 1 != static_cast<int>(want.betti.size()))
        throw InternalConsistencyError("fixture " + name + " has wrong dimension");
    if (want.orientable_surface && !try_coherent_orientation(*k))
        throw InternalConsistencyError("fixture " + name + " lost its orientation");
    return k;
}

}  // namespace gerbe
