#include "gerbe/cohomology.hpp"

#include <algorithm>

namespace gerbe {

namespace {

/// Solve A X = B over Q columnwise; nullopt when some column is outside
/// the image.
std::optional<RatMatrix> solve_q_multi(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix x(a.cols(), b.cols());
    for (size_t j = 0; j < b.cols(); ++j) {
        auto xj = solve_q(a, b.col(j));
        if (!xj) return std::nullopt;
        for (size_t i = 0; i < a.cols(); ++i) x(i, j) = (*xj)[i];
    }
    return x;
}

IntMatrix transpose(const IntMatrix& a) {
    IntMatrix t(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

/// Presentation of (span of kernel_basis) / (span of relation columns).
/// factors[i]: 0 = free generator, 1 = trivial, d > 1 = torsion of order d;
/// generator i is column i of new_basis.
struct Presentation {
    IntMatrix new_basis;
    IntVec factors;
};

Presentation quotient_presentation(const IntMatrix& kernel_basis, const IntMatrix& relations) {
    const size_t r = kernel_basis.cols();
    Presentation p;
    p.factors.assign(r, Int(0));
    if (r == 0) {
        p.new_basis = kernel_basis;
        return p;
    }
    // Relation columns lie in the kernel lattice, so their coordinates in
    // the (saturated) kernel basis are integers.
    auto xq = solve_q_multi(to_rational(kernel_basis), to_rational(relations));
    if (!xq) throw InternalConsistencyError("relations do not lie in the kernel");
    IntMatrix x(r, relations.cols());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < relations.cols(); ++j) {
            if (!is_integer((*xq)(i, j)))
                throw InternalConsistencyError("kernel basis is not saturated");
            x(i, j) = num((*xq)(i, j));
        }
    Snf s = smith_normal_form(x);
    // kernel_basis * Ux^{-1} presents the quotient as sum of Z/d_i and Z.
    p.new_basis = kernel_basis.mul(s.u_inv);
    for (size_t i = 0; i < s.rank; ++i) p.factors[i] = s.d(i, i);
    return p;
}

Cochain cochain_from_intvec(const ComplexPtr& k, int degree, const Coefficients& coeffs,
                            const IntVec& column) {
    Cochain c(k, degree, coeffs);
    for (size_t i = 0; i < column.size(); ++i) c.set_value_at(i, RatVec{Rat(column[i])});
    return c;
}

/// One scalar coordinate of a cochain as a dense rational vector.
RatVec coordinate_slice(const Cochain& c, int coord) {
    RatVec v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = c.value_at(i)[coord];
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cohomology groups
// ---------------------------------------------------------------------------

CohomologyGroup cohomology_group(const ComplexPtr& k, int degree, Ring ring) {
    if (degree < 0) throw MalformedInputError("negative cohomology degree");
    CohomologyGroup g;
    g.degree = degree;
    if (degree > k->dim()) return g;  // trivial group above the dimension

    IntMatrix dk = k->coboundary_matrix(degree);
    IntMatrix dprev = degree > 0 ? k->coboundary_matrix(degree - 1)
                                 : IntMatrix(k->count(0), 0);

    if (ring == Ring::Q) {
        auto [kern, img_up] = kernel_image_q(to_rational(dk));
        (void)img_up;
        auto [kern_prev, img] = kernel_image_q(to_rational(dprev));
        (void)kern_prev;
        g.free_rank = static_cast<int>(kern.cols() - img.cols());
        // Generators: kernel columns independent modulo the image. Eliminate
        // on [image | kernel] and keep kernel columns that carry pivots.
        RatMatrix aug(kern.rows(), img.cols() + kern.cols());
        for (size_t i = 0; i < kern.rows(); ++i) {
            for (size_t j = 0; j < img.cols(); ++j) aug(i, j) = img(i, j);
            for (size_t j = 0; j < kern.cols(); ++j) aug(i, img.cols() + j) = kern(i, j);
        }
        RatMatrix m = aug;
        size_t r = 0;
        std::vector<size_t> pivots;
        for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
            size_t sel = r;
            while (sel < m.rows() && m(sel, c) == 0) ++sel;
            if (sel == m.rows()) continue;
            m.swap_rows(r, sel);
            for (size_t i = 0; i < m.rows(); ++i) {
                if (i == r || m(i, c) == 0) continue;
                Rat f = m(i, c) / m(r, c);
                for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        for (size_t c : pivots) {
            if (c < img.cols()) continue;
            Cochain gen(k, degree, Coefficients::rationals());
            for (size_t i = 0; i < kern.rows(); ++i)
                gen.set_value_at(i, RatVec{kern(i, c - img.cols())});
            g.free_generators.push_back(std::move(gen));
        }
        return g;
    }

    auto [kern, img_unused] = kernel_image_z(dk);
    (void)img_unused;
    auto [kprev, img] = kernel_image_z(dprev);
    (void)kprev;
    Presentation p = quotient_presentation(kern, img);
    for (size_t i = 0; i < p.factors.size(); ++i) {
        if (p.factors[i] == 1) continue;
        Cochain gen = cochain_from_intvec(k, degree, Coefficients::integers(),
                                          p.new_basis.col(i));
        if (p.factors[i] == 0) {
            ++g.free_rank;
            g.free_generators.push_back(std::move(gen));
        } else {
            g.torsion.push_back(p.factors[i]);
            g.torsion_generators.push_back({std::move(gen), p.factors[i]});
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Coboundary solving
// ---------------------------------------------------------------------------

std::optional<Cochain> is_coboundary(const Cochain& c) {
    if (!is_cocycle(c)) throw PreconditionError("is_coboundary needs a cocycle");
    const ComplexPtr& k = c.carrier();
    const int degree = c.degree();
    const int l = c.coefficients().dim();
    IntMatrix dprev = degree > 0 ? k->coboundary_matrix(degree - 1)
                                 : IntMatrix(c.size(), 0);
    const auto kind = c.coefficients().kind();
    const Lattice& lambda = c.coefficients().lat();

    Cochain primitive(k, degree - 1 >= 0 ? degree - 1 : 0, c.coefficients());
    if (degree == 0) {
        // only the zero cochain is a degree-0 coboundary
        return c.is_zero() ? std::optional<Cochain>(Cochain(k, 0, c.coefficients()))
                           : std::nullopt;
    }

    switch (kind) {
        case Coefficients::Kind::rationals:
        case Coefficients::Kind::lattice: {
            if (kind == Coefficients::Kind::lattice && !lambda.is_divisible()) break;
            RatMatrix a = to_rational(dprev);
            for (int t = 0; t < l; ++t) {
                auto x = solve_q(a, coordinate_slice(c, t));
                if (!x) return std::nullopt;
                for (size_t i = 0; i < x->size(); ++i) {
                    RatVec v = primitive.value_at(i);
                    v[t] = (*x)[i];
                    primitive.set_value_at(i, std::move(v));
                }
            }
            return primitive;
        }
        default:
            break;
    }

    if (kind == Coefficients::Kind::integers ||
        kind == Coefficients::Kind::lattice) {
        // Solve coordinatewise over Z in the Hermite basis of Lambda.
        const int m = kind == Coefficients::Kind::integers ? 1 : lambda.rank();
        std::vector<IntVec> coords(c.size());
        for (size_t i = 0; i < c.size(); ++i) {
            std::optional<IntVec> cc;
            if (kind == Coefficients::Kind::integers) {
                if (!is_integer(c.value_at(i)[0]))
                    throw MalformedInputError("integral cochain with non-integer value");
                cc = IntVec{num(c.value_at(i)[0])};
            } else {
                cc = lambda.coordinates(c.value_at(i));
                if (!cc) throw MalformedInputError("lattice cochain with value outside the lattice");
            }
            coords[i] = std::move(*cc);
        }
        std::vector<IntVec> sol(m);
        for (int t = 0; t < m; ++t) {
            IntVec b(c.size());
            for (size_t i = 0; i < c.size(); ++i) b[i] = coords[i][t];
            auto x = solve_z(dprev, b);
            if (!x) return std::nullopt;
            sol[t] = std::move(*x);
        }
        for (size_t i = 0; i < primitive.size(); ++i) {
            if (kind == Coefficients::Kind::integers) {
                primitive.set_value_at(i, RatVec{Rat(sol[0][i])});
            } else {
                IntVec cc(m);
                for (int t = 0; t < m; ++t) cc[t] = sol[t][i];
                primitive.set_value_at(i, lambda.from_coordinates(cc));
            }
        }
        return primitive;
    }

    // Quotient coefficients: delta b == c mod Lambda. Divisible quotients
    // are trivial; otherwise eliminate b against the left kernel of dprev
    // and solve an integer system for the Lambda-shifts.
    if (lambda.is_divisible()) return Cochain(k, degree - 1, c.coefficients());

    RatMatrix basis = lambda.basis_rows();  // m x l
    const size_t m = basis.rows();
    IntMatrix w = left_kernel_scaled(dprev);
    const size_t nk = c.size();

    RatMatrix a(w.rows() * l, nk * m);
    RatVec rhs(w.rows() * l);
    for (size_t r = 0; r < w.rows(); ++r)
        for (int t = 0; t < l; ++t) {
            size_t row = r * l + t;
            Rat acc(0);
            for (size_t s = 0; s < nk; ++s) {
                if (w(r, s) == 0) continue;
                acc += Rat(w(r, s)) * c.value_at(s)[t];
                for (size_t j = 0; j < m; ++j) a(row, s * m + j) = Rat(w(r, s)) * basis(j, t);
            }
            rhs[row] = acc;
        }
    auto z = solve_z(a, rhs);
    if (!z) return std::nullopt;

    // Recover the rational primitive from delta b = c - lambda-shift.
    Cochain shifted(k, degree, Coefficients::lattice(Lattice::divisible(l)));
    for (size_t s = 0; s < nk; ++s) {
        RatVec v = c.value_at(s);
        for (size_t j = 0; j < m; ++j)
            for (int t = 0; t < l; ++t) v[t] -= Rat((*z)[s * m + j]) * basis(j, t);
        shifted.set_value_at(s, std::move(v));
    }
    RatMatrix dq = to_rational(dprev);
    for (int t = 0; t < l; ++t) {
        auto x = solve_q(dq, coordinate_slice(shifted, t));
        if (!x) throw InternalConsistencyError("quotient solve produced an inconsistent shift");
        for (size_t i = 0; i < primitive.size(); ++i) {
            RatVec v = primitive.value_at(i);
            v[t] = (*x)[i];
            primitive.set_value_at(i, std::move(v));
        }
    }
    return primitive;
}

bool class_equal(const Cochain& c1, const Cochain& c2) {
    if (!c1.same_shape(c2))
        throw MalformedInputError("class_equal needs matching carrier, degree and coefficients");
    return is_coboundary(c1 - c2).has_value();
}

bool CohomologyClass::is_zero() const { return is_coboundary(representative).has_value(); }

// ---------------------------------------------------------------------------
// Homology generators and periods
// ---------------------------------------------------------------------------

HomologyGenerators homology_generators(const ComplexPtr& k, int degree) {
    HomologyGenerators out;
    if (degree < 0 || degree > k->dim()) return out;
    IntMatrix boundary_k = degree > 0 ? transpose(k->coboundary_matrix(degree - 1))
                                      : IntMatrix(0, k->count(0));
    IntMatrix boundary_up = degree < k->dim() ? transpose(k->coboundary_matrix(degree))
                                              : IntMatrix(k->count(degree), 0);
    auto [cycles, img_unused] = kernel_image_z(boundary_k);
    (void)img_unused;
    auto [kern_unused, boundaries] = kernel_image_z(boundary_up);
    (void)kern_unused;
    Presentation p = quotient_presentation(cycles, boundaries);
    for (size_t i = 0; i < p.factors.size(); ++i) {
        if (p.factors[i] == 1) continue;
        Chain z(k, degree);
        z.set_values(p.new_basis.col(i));
        if (p.factors[i] == 0)
            out.free_generators.push_back(std::move(z));
        else
            out.torsion_generators.push_back({std::move(z), p.factors[i]});
    }
    return out;
}

PeriodData periods_with_witnesses(const Cochain& omega) {
    if (omega.degree() != 2 || omega.coefficients().dim() != 1)
        throw MalformedInputError("periods expects a scalar 2-cochain");
    if (!is_cocycle(omega)) throw PreconditionError("periods expects a closed cochain");
    PeriodData out;
    HomologyGenerators h2 = homology_generators(omega.carrier(), 2);
    std::vector<Rat> vals;
    auto add = [&](const Chain& z) {
        Rat v = pair_scalar(omega, z);
        out.pairings.push_back({z, v});
        vals.push_back(v);
    };
    for (const auto& z : h2.free_generators) add(z);
    for (const auto& [z, order] : h2.torsion_generators) add(z);  // pairs to 0 over Q
    RatMatrix gmat(vals.size(), 1);
    for (size_t i = 0; i < vals.size(); ++i) gmat(i, 0) = vals[i];
    out.lattice = Lattice::finitely_generated(1, gmat);
    return out;
}

Lattice periods(const Cochain& omega) { return periods_with_witnesses(omega).lattice; }

// ---------------------------------------------------------------------------
// Coefficient sequences and connecting homomorphisms
// ---------------------------------------------------------------------------

CoefficientSES::CoefficientSES(Lattice sub) : sub_(std::move(sub)) {
    if (sub_.is_divisible())
        throw MalformedInputError("divisible subgroup gives a degenerate sequence");
    // Injectivity on generators: Hermite rows are independent by
    // construction; kernel check: every generator maps to 0 in the quotient.
    RatMatrix rows = sub_.basis_rows();
    for (size_t i = 0; i < rows.rows(); ++i)
        if (!gerbe::is_zero(sub_.canonical_rep(rows.row(i))))
            throw InternalConsistencyError("lattice generator not in the projection kernel");
}

CohomologyClass connecting_hom(const CoefficientSES& ses, const Cochain& c) {
    if (c.coefficients().kind() != Coefficients::Kind::quotient ||
        !(c.coefficients().lat() == ses.sub()))
        throw MalformedInputError("connecting_hom expects a cocycle over the quotient group");
    if (!is_cocycle(c)) throw PreconditionError("connecting_hom expects a quotient cocycle");
    Cochain delta = coboundary_of_lift(c);
    return CohomologyClass{delta.with_coefficients(ses.sub_coefficients())};
}

// ---------------------------------------------------------------------------
// Class orders
// ---------------------------------------------------------------------------

namespace {

/// Order of an integral cocycle's class in H^degree(K; Z).
std::optional<Int> z_class_order(const ComplexPtr& k, int degree, const IntVec& cocycle) {
    IntMatrix dk = k->coboundary_matrix(degree);
    IntMatrix dprev = degree > 0 ? k->coboundary_matrix(degree - 1)
                                 : IntMatrix(k->count(degree), 0);
    auto [kern, img_unused] = kernel_image_z(dk);
    (void)img_unused;
    auto [kprev_unused, img] = kernel_image_z(dprev);
    (void)kprev_unused;
    const size_t r = kern.cols();
    if (r == 0) return Int(1);

    auto xq = solve_q_multi(to_rational(kern), to_rational(img));
    if (!xq) throw InternalConsistencyError("image not inside kernel");
    IntMatrix x(r, img.cols());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < img.cols(); ++j) x(i, j) = num((*xq)(i, j));
    Snf s = smith_normal_form(x);

    RatVec cc(cocycle.size());
    for (size_t i = 0; i < cocycle.size(); ++i) cc[i] = Rat(cocycle[i]);
    auto y = solve_q(to_rational(kern), cc);
    if (!y) throw PreconditionError("not a cocycle");
    IntVec yz(r);
    for (size_t i = 0; i < r; ++i) {
        if (!is_integer((*y)[i])) throw InternalConsistencyError("kernel basis not saturated");
        yz[i] = num((*y)[i]);
    }
    IntVec comps = s.u.apply(yz);  // coordinates in the presentation basis
    Int order = 1;
    for (size_t i = 0; i < r; ++i) {
        if (i < s.rank) {
            Int d = s.d(i, i);
            if (d == 1) continue;
            Int g = gcd(d, comps[i] % d);
            order = lcm(order, d / g);
        } else if (comps[i] != 0) {
            return std::nullopt;  // free component: infinite order
        }
    }
    return order;
}

}  // namespace

std::optional<Int> class_order(const Cochain& c) {
    if (!is_cocycle(c)) throw PreconditionError("class_order expects a cocycle");
    const auto kind = c.coefficients().kind();
    if (kind == Coefficients::Kind::rationals ||
        (kind == Coefficients::Kind::lattice && c.coefficients().lat().is_divisible())) {
        // torsion-free coefficient vector space
        if (is_coboundary(c)) return Int(1);
        return std::nullopt;
    }
    if (kind == Coefficients::Kind::quotient)
        throw MalformedInputError("class_order over quotients is not defined here");
    // integers or a finitely generated lattice: coordinatewise over Z
    const Lattice& lambda = c.coefficients().lat();
    const int m = kind == Coefficients::Kind::integers ? 1 : lambda.rank();
    Int order = 1;
    for (int t = 0; t < m; ++t) {
        IntVec slice(c.size());
        for (size_t i = 0; i < c.size(); ++i) {
            if (kind == Coefficients::Kind::integers) {
                slice[i] = num(c.value_at(i)[0]);
            } else {
                auto coords = lambda.coordinates(c.value_at(i));
                if (!coords) throw MalformedInputError("value outside the lattice");
                slice[i] = (*coords)[t];
            }
        }
        auto o = z_class_order(c.carrier(), c.degree(), slice);
        if (!o) return std::nullopt;
        order = lcm(order, *o);
    }
    return order;
}

}  // namespace gerbe
