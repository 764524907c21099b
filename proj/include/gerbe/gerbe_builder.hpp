#pragma once

#include "gerbe/cohomology.hpp"

namespace gerbe {

/// Full transcript of the degree-2 zig-zag: local primitives alpha_i on the
/// vertex stars, transition primitives u_ij on the edge stars, and the
/// classifying 2-cocycle assembled from the constant triple defects.
struct GerbeData {
    ComplexPtr base;
    Cochain omega;                  // closed rational 2-cochain
    std::map<int, Cochain> alpha;   // delta alpha_i = omega restricted to star(i)
    std::map<Simplex, Cochain> u;   // delta u_ij = alpha_j| - alpha_i| on star(ij)
    Cochain classifying;            // simplicial 2-cocycle c with [c] = [omega]
};

/// Degree-3 transcript: one more rung of local primitives.
struct TwoGerbeData {
    ComplexPtr base;
    Cochain omega;                  // closed rational 3-cochain
    std::map<int, Cochain> alpha;   // 2-cochains on vertex stars
    std::map<Simplex, Cochain> u;   // 1-cochains on edge stars
    std::map<Simplex, Cochain> v;   // 0-cochains on triangle stars
    Cochain classifying;            // simplicial 3-cocycle with [c] = [omega]
};

GerbeData zigzag_gerbe(const ComplexPtr& k, const Cochain& omega);
TwoGerbeData zigzag_two_gerbe(const ComplexPtr& k, const Cochain& omega);

/// Re-derives every transcript equation exactly; throws
/// InternalConsistencyError on any failure.
void verify_transcript(const GerbeData& g);
void verify_transcript(const TwoGerbeData& g);

/// Local primitive solve on an acyclic star: x with delta x = b.
Cochain solve_primitive_on(const ComplexPtr& star, const Cochain& b);

struct IntegralityCertificate {
    bool integral = false;
    std::optional<Cochain> integral_cocycle;  // z with omega = z + delta b
    std::optional<Cochain> primitive;         // b
    std::optional<Chain> witness_cycle;       // 2-cycle with non-integral period
    std::optional<Rat> witness_period;
};

/// Decides whether [omega] lifts to integral cohomology: expresses [omega]
/// in the basis of integral free generators over Q and checks the
/// coordinates are integers. Produces (z, b) or a period witness.
IntegralityCertificate integrality_test(const Cochain& omega);
IntegralityCertificate integrality_test(const GerbeData& g);

/// Kostant-Weil transition data of an integral gerbe: transitions shifted
/// by constants so the classifying cocycle becomes integer-valued, then
/// reduced mod Z. Lifting the transitions and taking the triple defect
/// recovers the integral Chern cocycle.
struct LineBundleData {
    ComplexPtr base;
    std::map<Simplex, Cochain> transition;  // per edge: Q/Z-valued 0-cochain on star(ij)
    Cochain chern;                          // integral simplicial 2-cocycle, [chern] = [c]
};

LineBundleData kostant_weil(const GerbeData& g, const IntegralityCertificate& cert);

/// Valuewise canonical representatives: the image of a closed rational
/// cochain in Q^l / Lambda coefficients.
Cochain reduce_mod_lattice(const Cochain& c, const Lattice& lambda);

/// Connecting image of a degree-2 quotient class, the tower relation: a
/// vanishing input class forces a vanishing output class.
CohomologyClass tower_connecting(const CoefficientSES& ses, const Cochain& degree2_class);

}  // namespace gerbe
