#pragma once

#include "gerbe/simplicial.hpp"

namespace gerbe {

enum class Ring { Z, Q };

/// H^k with generators. Over Z the torsion list is the chain of invariant
/// factors > 1; torsion generators carry their annihilating factor.
struct CohomologyGroup {
    int degree = 0;
    int free_rank = 0;
    std::vector<Int> torsion;
    std::vector<Cochain> free_generators;
    std::vector<std::pair<Cochain, Int>> torsion_generators;
};

CohomologyGroup cohomology_group(const ComplexPtr& k, int degree, Ring ring);

/// A cocycle representative together with its coefficient group.
struct CohomologyClass {
    Cochain representative;
    bool is_zero() const;
};

/// Some b with delta b = c in the coefficient group of c, or nullopt with
/// the verdict certified by the underlying exact solver. For quotient
/// coefficients this solves delta b = c modulo Lambda through one integer
/// solve. Throws PreconditionError when c is not a cocycle.
std::optional<Cochain> is_coboundary(const Cochain& c);

/// True iff c1 - c2 is a coboundary. The carriers, degrees and coefficient
/// groups must agree.
bool class_equal(const Cochain& c1, const Cochain& c2);

/// Values of a closed 2-cochain on generating integral 2-cycles.
struct PeriodData {
    Lattice lattice;                          // P_omega as a subgroup of Q
    std::vector<std::pair<Chain, Rat>> pairings;  // generator cycle, value
};

PeriodData periods_with_witnesses(const Cochain& omega);
Lattice periods(const Cochain& omega);

/// Integral homology H_k generators (cycles) with invariant factors, used
/// by the period pairing and the surface machinery.
struct HomologyGenerators {
    std::vector<Chain> free_generators;
    std::vector<std::pair<Chain, Int>> torsion_generators;
};
HomologyGenerators homology_generators(const ComplexPtr& k, int degree);

/// The coefficient sequence Lambda -> Q^l -> Q^l / Lambda (specializing to
/// Z -> Q -> Q/Z for the standard integral lattice in dimension one).
class CoefficientSES {
public:
    explicit CoefficientSES(Lattice sub);
    const Lattice& sub() const { return sub_; }
    int ambient_dim() const { return sub_.dim(); }
    /// Coefficients of the subgroup; the scalar integral lattice is plain Z.
    Coefficients sub_coefficients() const {
        if (sub_.kind() == LatticeKind::integral && sub_.dim() == 1)
            return Coefficients::integers();
        return Coefficients::lattice(sub_);
    }
    Coefficients quotient_coefficients() const { return Coefficients::quotient(sub_); }

private:
    Lattice sub_;
};

/// Connecting homomorphism: lift the quotient-valued k-cocycle valuewise,
/// take delta (lands in Lambda valuewise), return that class. Vanishes iff
/// the input lifts to a Q^l-valued cocycle.
CohomologyClass connecting_hom(const CoefficientSES& ses, const Cochain& c);

/// Order of the class of a cocycle in cohomology with its coefficient
/// group; nullopt for infinite order. Order 1 means the zero class.
std::optional<Int> class_order(const Cochain& c);

}  // namespace gerbe
