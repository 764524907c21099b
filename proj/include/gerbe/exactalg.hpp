#pragma once

#include <optional>
#include <utility>

#include "gerbe/matrix.hpp"

namespace gerbe {

/// Smith normal form U*A*V = D with U, V unimodular, D diagonal with
/// non-negative entries forming a divisibility chain d1 | d2 | ...
/// u_inv is maintained alongside U so image bases come out for free.
struct Snf {
    IntMatrix u, d, v, u_inv;
    size_t rank = 0;
};

Snf smith_normal_form(const IntMatrix& a);

/// Exact determinant (fraction-free Bareiss).
Int determinant(const IntMatrix& a);

/// Some x with A*x = b over the integers, or nullopt with the SNF as a
/// non-membership certificate.
std::optional<IntVec> solve_z(const IntMatrix& a, const IntVec& b);

/// Integer solutions of a rational system (each equation is scaled to
/// integer coefficients first; the solution set over Z is unchanged).
std::optional<IntVec> solve_z(const RatMatrix& a, const RatVec& b);

/// Some x with A*x = b over the rationals (deterministic elimination,
/// free variables set to zero), or nullopt.
std::optional<RatVec> solve_q(const RatMatrix& a, const RatVec& b);

/// Kernel and image bases as matrix columns.
/// Over Z both are bases of the corresponding free modules; the kernel
/// basis is saturated (it is the full kernel lattice).
std::pair<IntMatrix, IntMatrix> kernel_image_z(const IntMatrix& a);
std::pair<RatMatrix, RatMatrix> kernel_image_q(const RatMatrix& a);

/// Rows spanning { y : y^T A = 0 } over Q, scaled to integers.
IntMatrix left_kernel_scaled(const IntMatrix& a);

enum class LatticeKind { finitely_generated, divisible, integral };

/// A subgroup of Q^l: a finitely generated lattice (kept in row Hermite
/// normal form), the whole of Q^l, or the standard Z^l.
class Lattice {
public:
    Lattice() : dim_(0), kind_(LatticeKind::finitely_generated), basis_(0, 0) {}

    static Lattice finitely_generated(int dim, const RatMatrix& generators);
    static Lattice divisible(int dim);
    static Lattice integral(int dim);
    /// The zero subgroup of Q^dim.
    static Lattice zero(int dim);

    int dim() const { return dim_; }
    LatticeKind kind() const { return kind_; }
    bool is_divisible() const { return kind_ == LatticeKind::divisible; }
    int rank() const;

    /// Basis rows in Hermite normal form (materialized for the integral kind).
    RatMatrix basis_rows() const;

    /// Canonical coset representative of v + Lambda; idempotent, and
    /// rep(v + g) == rep(v) for every lattice element g.
    RatVec canonical_rep(const RatVec& v) const;

    bool contains(const RatVec& v) const;

    /// Integer coordinates of a lattice element in the Hermite basis;
    /// nullopt when v is not in the lattice or the lattice is divisible.
    std::optional<IntVec> coordinates(const RatVec& v) const;

    /// Element with the given Hermite-basis coordinates.
    RatVec from_coordinates(const IntVec& coords) const;

    bool operator==(const Lattice& o) const;

private:
    int dim_;
    LatticeKind kind_;
    RatMatrix basis_;            // HNF rows (finitely_generated only)
    std::vector<int> pivot_col_;  // pivot column per basis row
};

/// Canonical representative of v in Q^l / Lambda.
inline RatVec canonical_rep(const RatVec& v, const Lattice& lambda) {
    return lambda.canonical_rep(v);
}

/// Row Hermite normal form of an integer matrix: pivots positive,
/// entries above each pivot reduced into [0, pivot), zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

}  // namespace gerbe
