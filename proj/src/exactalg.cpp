#include "gerbe/exactalg.hpp"

#include <algorithm>

namespace gerbe {

namespace {

Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

/// Truncated quotient, |r| < |b| afterwards.
Int quot(const Int& a, const Int& b) { return a / b; }

}  // namespace

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

Snf smith_normal_form(const IntMatrix& a) {
    const size_t m = a.rows(), n = a.cols();
    Snf s{IntMatrix::identity(m), a, IntMatrix::identity(n), IntMatrix::identity(m)};

    auto row_op = [&](size_t dst, size_t src, const Int& k) {
        // D <- R D with R = I + k E_{dst,src}; U <- R U; Uinv <- Uinv R^{-1}.
        s.d.add_row(dst, src, k);
        s.u.add_row(dst, src, k);
        s.u_inv.add_col(src, dst, -k);
    };
    auto col_op = [&](size_t dst, size_t src, const Int& k) {
        s.d.add_col(dst, src, k);
        s.v.add_col(dst, src, k);
    };
    auto swap_rows = [&](size_t i, size_t j) {
        s.d.swap_rows(i, j);
        s.u.swap_rows(i, j);
        s.u_inv.swap_cols(i, j);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        s.d.swap_cols(i, j);
        s.v.swap_cols(i, j);
    };
    auto negate_row = [&](size_t i) {
        s.d.scale_row(i, Int(-1));
        s.u.scale_row(i, Int(-1));
        for (size_t r = 0; r < m; ++r) s.u_inv(r, i) = -s.u_inv(r, i);
    };

    // Pivot rule: smallest absolute value, ties broken row-major.
    auto find_pivot = [&](size_t t) -> std::optional<std::pair<size_t, size_t>> {
        std::optional<std::pair<size_t, size_t>> best;
        Int best_abs = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (s.d(i, j) == 0) continue;
                Int v = int_abs(s.d(i, j));
                if (!best || v < best_abs) {
                    best = {i, j};
                    best_abs = v;
                }
            }
        return best;
    };

    size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            auto piv = find_pivot(t);
            if (!piv) goto done;
            swap_rows(t, piv->first);
            swap_cols(t, piv->second);

            bool dirty = false;
            for (size_t i = t + 1; i < m; ++i) {
                if (s.d(i, t) == 0) continue;
                row_op(i, t, -quot(s.d(i, t), s.d(t, t)));
                if (s.d(i, t) != 0) dirty = true;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (s.d(t, j) == 0) continue;
                col_op(j, t, -quot(s.d(t, j), s.d(t, t)));
                if (s.d(t, j) != 0) dirty = true;
            }
            if (dirty) continue;  // smaller remainders exist, repivot

            // Pivot must divide the remaining block for the chain d1 | d2 | ...
            bool divides_all = true;
            for (size_t i = t + 1; i < m && divides_all; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (s.d(i, j) % s.d(t, t) != 0) {
                        row_op(t, i, Int(1));
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (s.d(t, t) < 0) negate_row(t);
    }
done:
    s.rank = 0;
    for (size_t i = 0; i < std::min(m, n); ++i)
        if (s.d(i, i) != 0) ++s.rank;
    return s;
}

Int determinant(const IntMatrix& a) {
    const size_t n = a.rows();
    if (n != a.cols()) throw MalformedInputError("determinant of non-square matrix");
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

std::optional<IntVec> solve_z(const IntMatrix& a, const IntVec& b) {
    Snf s = smith_normal_form(a);
    IntVec c = s.u.apply(b);
    IntVec y(a.cols(), Int(0));
    for (size_t i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.d(i, i) != 0) return std::nullopt;
            y[i] = c[i] / s.d(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

std::optional<IntVec> solve_z(const RatMatrix& a, const RatVec& b) {
    IntMatrix ai(a.rows(), a.cols());
    IntVec bi(a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        Int scale = den(b[i]);
        for (size_t j = 0; j < a.cols(); ++j) scale = lcm(scale, den(a(i, j)));
        for (size_t j = 0; j < a.cols(); ++j) {
            Rat v = a(i, j) * scale;
            ai(i, j) = num(v);
        }
        bi[i] = num(b[i] * scale);
    }
    return solve_z(ai, bi);
}

namespace {

struct Echelon {
    RatMatrix m;                 // reduced matrix
    std::vector<size_t> pivots;  // pivot column per eliminated row
    std::vector<size_t> rowperm; // original row order after swaps (unused externally)
};

/// Forward elimination, pivot = first row with a nonzero entry in the column.
Echelon echelon(RatMatrix m) {
    Echelon e;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t sel = r;
        while (sel < m.rows() && m(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        m.swap_rows(r, sel);
        Rat inv = Rat(1) / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

}  // namespace

std::optional<RatVec> solve_q(const RatMatrix& a, const RatVec& b) {
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Echelon e = echelon(std::move(aug));
    RatVec x(a.cols(), Rat(0));
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols()) return std::nullopt;  // 0 = 1 row
        x[e.pivots[r]] = e.m(r, a.cols());
    }
    return x;
}

std::pair<IntMatrix, IntMatrix> kernel_image_z(const IntMatrix& a) {
    Snf s = smith_normal_form(a);
    const size_t n = a.cols(), m = a.rows();
    IntMatrix kernel(n, n - s.rank);
    for (size_t j = s.rank; j < n; ++j)
        for (size_t i = 0; i < n; ++i) kernel(i, j - s.rank) = s.v(i, j);
    IntMatrix image(m, s.rank);
    for (size_t j = 0; j < s.rank; ++j)
        for (size_t i = 0; i < m; ++i) image(i, j) = s.u_inv(i, j) * s.d(j, j);
    return {kernel, image};
}

std::pair<RatMatrix, RatMatrix> kernel_image_q(const RatMatrix& a) {
    Echelon e = echelon(a);
    const size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (size_t p : e.pivots) is_pivot[p] = true;

    RatMatrix kernel(n, n - e.pivots.size());
    size_t kcol = 0;
    for (size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        kernel(c, kcol) = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r) kernel(e.pivots[r], kcol) = -e.m(r, c);
        ++kcol;
    }
    RatMatrix image(a.rows(), e.pivots.size());
    for (size_t j = 0; j < e.pivots.size(); ++j)
        for (size_t i = 0; i < a.rows(); ++i) image(i, j) = a(i, e.pivots[j]);
    return {kernel, image};
}

IntMatrix left_kernel_scaled(const IntMatrix& a) {
    // Kernel of the transpose over Q, rows scaled to coprime integers.
    RatMatrix at(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) at(j, i) = Rat(a(i, j));
    auto [kernel, image] = kernel_image_q(at);
    (void)image;
    IntMatrix w(kernel.cols(), a.rows());
    for (size_t j = 0; j < kernel.cols(); ++j) {
        Int scale = 1;
        for (size_t i = 0; i < kernel.rows(); ++i) scale = lcm(scale, den(kernel(i, j)));
        Int g = 0;
        for (size_t i = 0; i < kernel.rows(); ++i) {
            w(j, i) = num(kernel(i, j) * scale);
            g = gcd(g, w(j, i));
        }
        if (g > 1)
            for (size_t i = 0; i < kernel.rows(); ++i) w(j, i) /= g;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Hermite normal form and lattices
// ---------------------------------------------------------------------------

IntMatrix hermite_normal_form(const IntMatrix& a) {
    IntMatrix h = a;
    const size_t m = h.rows(), n = h.cols();
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            size_t best = m;
            Int best_abs = 0;
            for (size_t i = r; i < m; ++i) {
                if (h(i, c) == 0) continue;
                Int v = int_abs(h(i, c));
                if (best == m || v < best_abs) {
                    best = i;
                    best_abs = v;
                }
            }
            if (best == m) break;  // column clear
            h.swap_rows(r, best);
            bool clear = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                h.add_row(i, r, -quot(h(i, c), h(r, c)));
                if (h(i, c) != 0) clear = false;
            }
            if (clear) break;
        }
        if (r < m && h(r, c) != 0) {
            if (h(r, c) < 0) h.scale_row(r, Int(-1));
            for (size_t i = 0; i < r; ++i) {
                // reduce entries above the pivot into [0, pivot)
                Int q = h(i, c) >= 0 ? Int(h(i, c) / h(r, c))
                                     : Int(-((-h(i, c) + h(r, c) - 1) / h(r, c)));
                if (q != 0) h.add_row(i, r, -q);
            }
            ++r;
        }
    }
    IntMatrix out(r, n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
    return out;
}

Lattice Lattice::finitely_generated(int dim, const RatMatrix& generators) {
    if (static_cast<size_t>(dim) != generators.cols() && generators.rows() > 0)
        throw MalformedInputError("lattice generators have wrong ambient dimension");
    Lattice l;
    l.dim_ = dim;
    l.kind_ = LatticeKind::finitely_generated;

    Int scale = 1;
    for (size_t i = 0; i < generators.rows(); ++i)
        for (size_t j = 0; j < generators.cols(); ++j) scale = lcm(scale, den(generators(i, j)));
    IntMatrix gi(generators.rows(), dim);
    for (size_t i = 0; i < generators.rows(); ++i)
        for (size_t j = 0; j < generators.cols(); ++j) gi(i, j) = num(generators(i, j) * scale);
    IntMatrix h = hermite_normal_form(gi);

    l.basis_ = RatMatrix(h.rows(), dim);
    for (size_t i = 0; i < h.rows(); ++i)
        for (int j = 0; j < dim; ++j) l.basis_(i, j) = Rat(h(i, j), scale);
    for (size_t i = 0; i < h.rows(); ++i) {
        int p = 0;
        while (h(i, p) == 0) ++p;
        l.pivot_col_.push_back(p);
    }
    return l;
}

Lattice Lattice::divisible(int dim) {
    Lattice l;
    l.dim_ = dim;
    l.kind_ = LatticeKind::divisible;
    return l;
}

Lattice Lattice::integral(int dim) {
    Lattice l;
    l.dim_ = dim;
    l.kind_ = LatticeKind::integral;
    return l;
}

Lattice Lattice::zero(int dim) { return finitely_generated(dim, RatMatrix(0, dim)); }

int Lattice::rank() const {
    switch (kind_) {
        case LatticeKind::finitely_generated: return static_cast<int>(basis_.rows());
        default: return dim_;
    }
}

RatMatrix Lattice::basis_rows() const {
    if (kind_ == LatticeKind::finitely_generated) return basis_;
    RatMatrix b(dim_, dim_);
    for (int i = 0; i < dim_; ++i) b(i, i) = 1;
    return b;  // identity for integral; divisible has no Z-basis, callers check
}

RatVec Lattice::canonical_rep(const RatVec& v) const {
    if (static_cast<int>(v.size()) != dim_) throw MalformedInputError("vector/lattice dimension mismatch");
    switch (kind_) {
        case LatticeKind::divisible:
            return RatVec(dim_, Rat(0));
        case LatticeKind::integral: {
            RatVec r(v);
            for (auto& x : r) x -= rat_floor(x);
            return r;
        }
        case LatticeKind::finitely_generated: {
            RatVec r(v);
            for (size_t i = 0; i < basis_.rows(); ++i) {
                int c = pivot_col_[i];
                Int t = rat_floor(r[c] / basis_(i, c));
                if (t != 0)
                    for (int j = 0; j < dim_; ++j) r[j] -= Rat(t) * basis_(i, j);
            }
            return r;
        }
    }
    return v;
}

bool Lattice::contains(const RatVec& v) const {
    return gerbe::is_zero(canonical_rep(v));
}

std::optional<IntVec> Lattice::coordinates(const RatVec& v) const {
    switch (kind_) {
        case LatticeKind::divisible:
            return std::nullopt;
        case LatticeKind::integral: {
            IntVec c(dim_);
            for (int j = 0; j < dim_; ++j) {
                if (!is_integer(v[j])) return std::nullopt;
                c[j] = num(v[j]);
            }
            return c;
        }
        case LatticeKind::finitely_generated: {
            RatVec r(v);
            IntVec c(basis_.rows());
            for (size_t i = 0; i < basis_.rows(); ++i) {
                int p = pivot_col_[i];
                Rat q = r[p] / basis_(i, p);
                if (!is_integer(q)) return std::nullopt;
                c[i] = num(q);
                for (int j = 0; j < dim_; ++j) r[j] -= q * basis_(i, j);
            }
            if (!gerbe::is_zero(r)) return std::nullopt;
            return c;
        }
    }
    return std::nullopt;
}

RatVec Lattice::from_coordinates(const IntVec& coords) const {
    RatVec v(dim_, Rat(0));
    if (kind_ == LatticeKind::integral) {
        for (int j = 0; j < dim_; ++j) v[j] = Rat(coords[j]);
        return v;
    }
    if (kind_ == LatticeKind::divisible)
        throw MalformedInputError("divisible lattice has no basis coordinates");
    for (size_t i = 0; i < basis_.rows(); ++i)
        for (int j = 0; j < dim_; ++j) v[j] += Rat(coords[i]) * basis_(i, j);
    return v;
}

bool Lattice::operator==(const Lattice& o) const {
    if (dim_ != o.dim_) return false;
    if (kind_ == o.kind_ && kind_ != LatticeKind::finitely_generated) return true;
    auto canon = [](const Lattice& l) -> std::optional<RatMatrix> {
        if (l.kind_ == LatticeKind::divisible) return std::nullopt;
        return l.basis_rows();
    };
    auto a = canon(*this), b = canon(o);
    if (!a || !b) return !a && !b;
    return *a == *b;  // HNF is unique
}

}  // namespace gerbe
