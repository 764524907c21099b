#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gerbe/exactalg.hpp"

namespace gerbe {

/// A simplex is its strictly ascending vertex list; the order is the
/// orientation.
using Simplex = std::vector<int>;

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Finite oriented abstract simplicial complex. Immutable after
/// construction; safe to share across threads.
class SimplicialComplex {
public:
    SimplicialComplex() = default;  // the empty complex (a value, not buildable from input)

    /// Downward closure of the given maximal simplices. Rejects empty input,
    /// negative labels and duplicate vertices within a simplex.
    static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal);

    bool empty() const { return by_dim_.empty(); }
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

    const std::vector<Simplex>& simplices(int k) const;
    size_t count(int k) const { return simplices(k).size(); }
    size_t total_count() const;

    bool contains(const Simplex& s) const;
    std::optional<size_t> index_of(const Simplex& s) const;

    /// Sorted vertex labels.
    std::vector<int> vertices() const;

    Int euler_characteristic() const;

    /// Matrix of delta_k : C^k -> C^(k+1); rows are (k+1)-simplices.
    IntMatrix coboundary_matrix(int k) const;

    bool operator==(const SimplicialComplex& o) const { return by_dim_ == o.by_dim_; }

private:
    friend SimplicialComplex closure_of(const std::vector<Simplex>& simplices);
    std::vector<std::vector<Simplex>> by_dim_;           // sorted lex within each dimension
    std::vector<std::map<Simplex, size_t>> index_;
};

/// build_complex of the interface: downward-closed complex from maximal
/// simplices.
inline SimplicialComplex build_complex(const std::vector<Simplex>& maximal) {
    return SimplicialComplex::from_maximal(maximal);
}

/// Simplices that are not proper faces of other simplices.
std::vector<Simplex> maximal_simplices(const SimplicialComplex& k);

ComplexPtr share(SimplicialComplex k);

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

/// Coefficient group of a cochain. Values are always vectors in Q^l
/// (l = 1 for Z and Q); the tag says which subgroup or quotient they
/// are read in.
class Coefficients {
public:
    enum class Kind {
        integers,   // Z
        rationals,  // Q
        lattice,    // a subgroup Lambda of Q^l, values lie in Lambda
        quotient,   // Q^l / Lambda, values are canonical representatives
    };

    static Coefficients integers() { return {Kind::integers, Lattice::integral(1)}; }
    static Coefficients rationals() { return {Kind::rationals, Lattice::divisible(1)}; }
    static Coefficients lattice(const Lattice& l) { return {Kind::lattice, l}; }
    static Coefficients quotient(const Lattice& l) { return {Kind::quotient, l}; }

    Kind kind() const { return kind_; }
    int dim() const { return lattice_.dim(); }
    const Lattice& lat() const { return lattice_; }

    bool operator==(const Coefficients& o) const {
        return kind_ == o.kind_ && lattice_ == o.lattice_;
    }

private:
    Coefficients(Kind k, Lattice l) : kind_(k), lattice_(std::move(l)) {}
    Kind kind_;
    Lattice lattice_;
};

// ---------------------------------------------------------------------------
// Cochains
// ---------------------------------------------------------------------------

/// Total map from k-simplices of a carrier complex to coefficient values.
/// Quotient-valued entries are stored as canonical representatives of
/// their Q^l lifts.
class Cochain {
public:
    Cochain() : degree_(0), coeffs_(Coefficients::rationals()) {}
    Cochain(ComplexPtr carrier, int degree, Coefficients coeffs);

    const ComplexPtr& carrier() const { return carrier_; }
    int degree() const { return degree_; }
    const Coefficients& coefficients() const { return coeffs_; }

    const RatVec& value(const Simplex& s) const;
    const RatVec& value_at(size_t index) const { return values_[index]; }
    void set_value(const Simplex& s, RatVec v);
    void set_value_at(size_t index, RatVec v);

    /// Scalar access for one-dimensional coefficients.
    Rat scalar(const Simplex& s) const;
    void set_scalar(const Simplex& s, Rat v);

    size_t size() const { return values_.size(); }
    bool is_zero() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(const Rat& k) const;

    /// Reinterprets the stored values in another coefficient group of the
    /// same dimension (no arithmetic; canonicalizes for quotients).
    Cochain with_coefficients(const Coefficients& c) const;

    bool same_shape(const Cochain& o) const;

private:
    void canonicalize();
    ComplexPtr carrier_;
    int degree_;
    Coefficients coeffs_;
    std::vector<RatVec> values_;
};

/// (delta c)(v0..vk+1) = sum_j (-1)^j c(v0..^vj..vk+1), coefficientwise.
/// For quotient coefficients this is the coboundary in the quotient group
/// (canonical representatives of delta of the lift).
Cochain coboundary(const Cochain& c);

/// delta of the stored Q^l lift of a quotient cochain, as a plain Q^l
/// cochain. This is the raw object connecting homomorphisms inspect.
Cochain coboundary_of_lift(const Cochain& c);

/// Cocycle test appropriate to the coefficient kind: delta c == 0, and for
/// quotients: delta(lift) is Lambda-valued on every simplex.
bool is_cocycle(const Cochain& c);

// ---------------------------------------------------------------------------
// Local models (closed vertex-star overlaps)
// ---------------------------------------------------------------------------

/// Overlap model of the star cover for an index set S: the closed star of
/// S, i.e. the subcomplex generated by all simplices containing S. A cone
/// with apex any vertex of S, hence acyclic. Empty iff S is not a simplex.
class LocalModel {
public:
    LocalModel() = default;
    const Simplex& core() const { return core_; }
    bool empty() const { return !star_ || star_->empty(); }
    const ComplexPtr& base() const { return base_; }
    /// The closed-star subcomplex carrying this model's cochains.
    const ComplexPtr& star() const { return star_; }
    /// The simplices of the base containing the core.
    const std::vector<Simplex>& cofaces() const { return cofaces_; }

private:
    friend LocalModel local_model(const ComplexPtr&, const Simplex&);
    ComplexPtr base_;
    Simplex core_;
    ComplexPtr star_;
    std::vector<Simplex> cofaces_;
};

LocalModel local_model(const ComplexPtr& k, const Simplex& core);

/// Restriction of a cochain to a smaller overlap model. The target star
/// must be contained in the cochain's carrier.
Cochain restrict_cochain(const Cochain& c, const LocalModel& to);
Cochain restrict_cochain(const Cochain& c, const ComplexPtr& base, const Simplex& larger_core);

// ---------------------------------------------------------------------------
// Simplicial maps and pullback
// ---------------------------------------------------------------------------

class SimplicialMap {
public:
    SimplicialMap() = default;
    /// Validates that the image of every simplex is a simplex of the target.
    SimplicialMap(ComplexPtr source, ComplexPtr target, std::map<int, int> vertex_map);

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }
    int operator()(int v) const;

    /// Image simplex with the sign of the sorting permutation; nullopt when
    /// the image is degenerate.
    std::optional<std::pair<Simplex, int>> image(const Simplex& s) const;

private:
    ComplexPtr source_, target_;
    std::map<int, int> vertex_map_;
};

/// (f*c)(s) = sign * c(f(s)) on nondegenerate images, 0 otherwise.
Cochain pullback_cochain(const SimplicialMap& f, const Cochain& c);

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

/// Integer k-chain on a complex.
class Chain {
public:
    Chain() : degree_(0) {}
    Chain(ComplexPtr carrier, int degree);

    const ComplexPtr& carrier() const { return carrier_; }
    int degree() const { return degree_; }
    const Int& value(const Simplex& s) const;
    void set_value(const Simplex& s, Int v);
    const IntVec& values() const { return values_; }
    void set_values(IntVec v);
    bool is_zero() const;

    Chain boundary() const;
    Chain operator-(const Chain& o) const;
    Chain operator+(const Chain& o) const;

private:
    ComplexPtr carrier_;
    int degree_;
    IntVec values_;
};

/// <c, z> for scalar coefficients.
Rat pair_scalar(const Cochain& c, const Chain& z);

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// Staircase (Eilenberg-Zilber) triangulation of |K1| x |K2|: simplices are
/// the monotone chains in the product vertex order, vertices relabelled
/// through the lexicographic pair enumeration.
struct ProductComplex {
    ComplexPtr complex;
    SimplicialMap proj1, proj2;
    std::vector<std::pair<int, int>> pair_of_label;
    std::map<std::pair<int, int>, int> label_of_pair;

    int pair_label(int v1, int v2) const;
    std::pair<int, int> vertex_pair(int label) const;
    /// The section n -> (n, fiber_vertex) of proj1, as a simplicial map.
    SimplicialMap section_at(int fiber_vertex) const;
    /// The inclusion f -> (base_vertex, f) of the fiber over a base vertex.
    SimplicialMap fiber_inclusion_at(int base_vertex) const;
};

ProductComplex product_complex(const ComplexPtr& k1, const ComplexPtr& k2);

// ---------------------------------------------------------------------------
// Surfaces and orientations
// ---------------------------------------------------------------------------

/// Signs making the signed sum of all top simplices a cycle, when the
/// complex is a coherently orientable pure 2-complex with every edge in
/// exactly two triangles. No verdict on other input shapes.
std::optional<std::vector<int>> try_coherent_orientation(const SimplicialComplex& k);

/// Checks the link conditions of a closed surface (pure 2-dimensional,
/// every edge in exactly two triangles, vertex links single cycles) and a
/// coherent orientation; returns the fundamental cycle.
Chain closed_surface_fundamental_cycle(const ComplexPtr& k);

}  // namespace gerbe
