#pragma once

#include <string>

#include "gerbe/simplicial.hpp"

namespace gerbe {

/// Reference data a fixture claims about itself; every claim is re-derived
/// by the cohomology module in the test suite rather than trusted.
struct FixtureExpectation {
    std::string name;
    Int euler_characteristic;
    std::vector<int> betti;                       // ranks over Q, degree 0..dim
    std::vector<std::vector<Int>> torsion;        // integral torsion per degree
    bool orientable_surface = false;              // closed orientable 2-manifold
};

const std::vector<FixtureExpectation>& fixture_table();

/// Directory holding the fixture JSON files; the GERBE_DATA_DIR environment
/// variable overrides the compiled-in default.
std::string fixture_data_dir();

/// Loads a named fixture. T2xS1 is product-built from T2 and S1 rather than
/// read from disk. Counts and Euler characteristics are checked at load;
/// the full cohomology claims are re-derived in the tests.
ComplexPtr load_fixture(const std::string& name);

}  // namespace gerbe
