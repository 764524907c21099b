#include "gerbe/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace gerbe {

namespace {

std::string simplex_str(const Simplex& s) {
    std::string out = "[";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

}  // namespace

// ---------------------------------------------------------------------------
// SimplicialComplex
// ---------------------------------------------------------------------------

SimplicialComplex closure_of(const std::vector<Simplex>& simplices) {
    std::set<Simplex> all;
    // Enumerate faces by subset masks; simplex dimensions are tiny.
    for (const auto& s : simplices) {
        const size_t n = s.size();
        for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
            Simplex face;
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t(1) << i)) face.push_back(s[i]);
            all.insert(std::move(face));
        }
    }
    SimplicialComplex k;
    for (const auto& s : all) {
        size_t d = s.size() - 1;
        if (k.by_dim_.size() <= d) {
            k.by_dim_.resize(d + 1);
            k.index_.resize(d + 1);
        }
        k.by_dim_[d].push_back(s);
    }
    for (size_t d = 0; d < k.by_dim_.size(); ++d) {
        // std::set iteration is lex-sorted already; record indices
        for (size_t i = 0; i < k.by_dim_[d].size(); ++i) k.index_[d][k.by_dim_[d][i]] = i;
    }
    return k;
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& maximal) {
    if (maximal.empty()) throw MalformedInputError("empty complex");
    std::vector<Simplex> cleaned;
    for (const auto& raw : maximal) {
        if (raw.empty()) throw MalformedInputError("empty simplex in input");
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0) throw MalformedInputError("negative vertex label in " + simplex_str(raw));
            if (i && s[i] == s[i - 1])
                throw MalformedInputError("duplicate vertex in simplex " + simplex_str(raw));
        }
        cleaned.push_back(std::move(s));
    }
    return closure_of(cleaned);
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    static const std::vector<Simplex> none;
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[k];
}

size_t SimplicialComplex::total_count() const {
    size_t n = 0;
    for (const auto& d : by_dim_) n += d.size();
    return n;
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_of(s).has_value(); }

std::optional<size_t> SimplicialComplex::index_of(const Simplex& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(index_.size())) return std::nullopt;
    auto it = index_[d].find(s);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
}

std::vector<int> SimplicialComplex::vertices() const {
    std::vector<int> v;
    for (const auto& s : simplices(0)) v.push_back(s[0]);
    return v;
}

Int SimplicialComplex::euler_characteristic() const {
    Int chi = 0;
    for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? Int(count(k)) : Int(-Int(count(k))));
    return chi;
}

IntMatrix SimplicialComplex::coboundary_matrix(int k) const {
    const auto& rows = simplices(k + 1);
    const auto& cols = simplices(k);
    IntMatrix d(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        const Simplex& s = rows[r];
        for (size_t j = 0; j < s.size(); ++j) {
            Simplex face;
            face.reserve(s.size() - 1);
            for (size_t i = 0; i < s.size(); ++i)
                if (i != j) face.push_back(s[i]);
            auto idx = index_of(face);
            if (!idx) throw InternalConsistencyError("complex not downward closed");
            d(r, *idx) += (j % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

ComplexPtr share(SimplicialComplex k) {
    return std::make_shared<const SimplicialComplex>(std::move(k));
}

std::vector<Simplex> maximal_simplices(const SimplicialComplex& k) {
    std::vector<Simplex> out;
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& s : k.simplices(d)) {
            bool is_face = false;
            for (int e = d + 1; e <= k.dim() && !is_face; ++e)
                for (const auto& t : k.simplices(e))
                    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                        is_face = true;
                        break;
                    }
            if (!is_face) out.push_back(s);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Cochain
// ---------------------------------------------------------------------------

Cochain::Cochain(ComplexPtr carrier, int degree, Coefficients coeffs)
    : carrier_(std::move(carrier)), degree_(degree), coeffs_(std::move(coeffs)) {
    if (!carrier_) throw MalformedInputError("cochain needs a carrier complex");
    values_.assign(carrier_->count(degree_), RatVec(coeffs_.dim(), Rat(0)));
}

const RatVec& Cochain::value(const Simplex& s) const {
    auto idx = carrier_->index_of(s);
    if (!idx || static_cast<int>(s.size()) - 1 != degree_)
        throw MalformedInputError("simplex " + simplex_str(s) + " not a degree-" +
                                  std::to_string(degree_) + " simplex of the carrier");
    return values_[*idx];
}

void Cochain::set_value(const Simplex& s, RatVec v) {
    auto idx = carrier_->index_of(s);
    if (!idx || static_cast<int>(s.size()) - 1 != degree_)
        throw MalformedInputError("simplex " + simplex_str(s) + " not a degree-" +
                                  std::to_string(degree_) + " simplex of the carrier");
    set_value_at(*idx, std::move(v));
}

void Cochain::set_value_at(size_t index, RatVec v) {
    if (static_cast<int>(v.size()) != coeffs_.dim())
        throw MalformedInputError("coefficient value has wrong dimension");
    if (coeffs_.kind() == Coefficients::Kind::quotient) v = coeffs_.lat().canonical_rep(v);
    values_[index] = std::move(v);
}

Rat Cochain::scalar(const Simplex& s) const {
    if (coeffs_.dim() != 1) throw MalformedInputError("scalar access on vector coefficients");
    return value(s)[0];
}

void Cochain::set_scalar(const Simplex& s, Rat v) { set_value(s, RatVec{std::move(v)}); }

bool Cochain::is_zero() const {
    for (const auto& v : values_)
        if (!gerbe::is_zero(v)) return false;
    return true;
}

bool Cochain::same_shape(const Cochain& o) const {
    return degree_ == o.degree_ && coeffs_ == o.coeffs_ &&
           (carrier_ == o.carrier_ || *carrier_ == *o.carrier_);
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (!same_shape(o)) throw MalformedInputError("cochain shape mismatch in +");
    Cochain r(*this);
    for (size_t i = 0; i < values_.size(); ++i) r.set_value_at(i, values_[i] + o.values_[i]);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    if (!same_shape(o)) throw MalformedInputError("cochain shape mismatch in -");
    Cochain r(*this);
    for (size_t i = 0; i < values_.size(); ++i) r.set_value_at(i, values_[i] - o.values_[i]);
    return r;
}

Cochain Cochain::operator-() const { return scaled(Rat(-1)); }

Cochain Cochain::scaled(const Rat& k) const {
    Cochain r(*this);
    for (size_t i = 0; i < values_.size(); ++i) {
        RatVec v = values_[i];
        for (auto& x : v) x *= k;
        r.set_value_at(i, std::move(v));
    }
    return r;
}

Cochain Cochain::with_coefficients(const Coefficients& c) const {
    if (c.dim() != coeffs_.dim()) throw MalformedInputError("coefficient dimension mismatch");
    Cochain r(carrier_, degree_, c);
    for (size_t i = 0; i < values_.size(); ++i) r.set_value_at(i, values_[i]);
    return r;
}

Cochain coboundary_of_lift(const Cochain& c) {
    const auto& k = *c.carrier();
    Cochain out(c.carrier(), c.degree() + 1,
                Coefficients::lattice(Lattice::divisible(c.coefficients().dim())));
    const auto& rows = k.simplices(c.degree() + 1);
    for (size_t r = 0; r < rows.size(); ++r) {
        const Simplex& s = rows[r];
        RatVec acc(c.coefficients().dim(), Rat(0));
        for (size_t j = 0; j < s.size(); ++j) {
            Simplex face;
            for (size_t i = 0; i < s.size(); ++i)
                if (i != j) face.push_back(s[i]);
            const RatVec& v = c.value(face);
            for (size_t t = 0; t < acc.size(); ++t)
                acc[t] += (j % 2 == 0) ? v[t] : Rat(-v[t]);
        }
        out.set_value_at(r, std::move(acc));
    }
    return out;
}

Cochain coboundary(const Cochain& c) {
    Cochain lift = coboundary_of_lift(c);
    return lift.with_coefficients(c.coefficients());
}

bool is_cocycle(const Cochain& c) {
    Cochain d = coboundary_of_lift(c);
    switch (c.coefficients().kind()) {
        case Coefficients::Kind::quotient: {
            for (size_t i = 0; i < d.size(); ++i)
                if (!c.coefficients().lat().contains(d.value_at(i))) return false;
            return true;
        }
        default:
            return d.is_zero();
    }
}

// ---------------------------------------------------------------------------
// LocalModel
// ---------------------------------------------------------------------------

LocalModel local_model(const ComplexPtr& k, const Simplex& core) {
    LocalModel m;
    m.base_ = k;
    m.core_ = core;
    std::sort(m.core_.begin(), m.core_.end());
    if (!k->contains(m.core_)) {
        m.star_ = share(SimplicialComplex());
        return m;  // empty model: a value, not an error
    }
    for (int d = static_cast<int>(m.core_.size()) - 1; d <= k->dim(); ++d)
        for (const auto& s : k->simplices(d))
            if (std::includes(s.begin(), s.end(), m.core_.begin(), m.core_.end()))
                m.cofaces_.push_back(s);
    m.star_ = share(closure_of(m.cofaces_));
    return m;
}

Cochain restrict_cochain(const Cochain& c, const LocalModel& to) {
    if (to.empty()) throw PreconditionError("empty overlap: restriction target is empty");
    Cochain out(to.star(), c.degree(), c.coefficients());
    for (const auto& s : to.star()->simplices(c.degree())) {
        if (!c.carrier()->contains(s))
            throw MalformedInputError("restriction target is not contained in the carrier");
        out.set_value(s, c.value(s));
    }
    return out;
}

Cochain restrict_cochain(const Cochain& c, const ComplexPtr& base, const Simplex& larger_core) {
    LocalModel to = local_model(base, larger_core);
    if (to.empty()) throw PreconditionError("empty overlap: " + simplex_str(larger_core) +
                                            " is not a simplex of the base");
    return restrict_cochain(c, to);
}

// ---------------------------------------------------------------------------
// SimplicialMap and pullback
// ---------------------------------------------------------------------------

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::map<int, int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), vertex_map_(std::move(vertex_map)) {
    for (const auto& v : source_->simplices(0))
        if (!vertex_map_.count(v[0]))
            throw MalformedInputError("vertex " + std::to_string(v[0]) + " has no image");
    // Images of maximal simplices suffice: faces of simplices are simplices.
    for (int d = source_->dim(); d >= 0; --d)
        for (const auto& s : source_->simplices(d)) {
            Simplex im;
            for (int v : s) im.push_back(vertex_map_.at(v));
            std::sort(im.begin(), im.end());
            im.erase(std::unique(im.begin(), im.end()), im.end());
            if (!target_->contains(im))
                throw MalformedInputError("not a simplicial map: image of " + simplex_str(s) +
                                          " is not a simplex");
        }
}

int SimplicialMap::operator()(int v) const {
    auto it = vertex_map_.find(v);
    if (it == vertex_map_.end()) throw MalformedInputError("vertex not in map domain");
    return it->second;
}

std::optional<std::pair<Simplex, int>> SimplicialMap::image(const Simplex& s) const {
    Simplex im;
    for (int v : s) im.push_back((*this)(v));
    // Sort by adjacent transpositions to track the permutation parity.
    int sign = 1;
    for (size_t i = 1; i < im.size(); ++i)
        for (size_t j = i; j > 0 && im[j] < im[j - 1]; --j) {
            std::swap(im[j], im[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < im.size(); ++i)
        if (im[i] == im[i - 1]) return std::nullopt;
    return std::make_pair(im, sign);
}

Cochain pullback_cochain(const SimplicialMap& f, const Cochain& c) {
    if (!(f.target() == c.carrier() || *f.target() == *c.carrier()))
        throw MalformedInputError("cochain does not live on the map target");
    Cochain out(f.source(), c.degree(), c.coefficients());
    const auto& srcs = f.source()->simplices(c.degree());
    for (size_t i = 0; i < srcs.size(); ++i) {
        auto im = f.image(srcs[i]);
        if (!im) continue;  // degenerate image pulls back to zero
        RatVec v = c.value(im->first);
        if (im->second < 0)
            for (auto& x : v) x = -x;
        out.set_value_at(i, std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

Chain::Chain(ComplexPtr carrier, int degree) : carrier_(std::move(carrier)), degree_(degree) {
    values_.assign(carrier_->count(degree_), Int(0));
}

const Int& Chain::value(const Simplex& s) const {
    auto idx = carrier_->index_of(s);
    if (!idx) throw MalformedInputError("simplex not in carrier");
    return values_[*idx];
}

void Chain::set_value(const Simplex& s, Int v) {
    auto idx = carrier_->index_of(s);
    if (!idx || static_cast<int>(s.size()) - 1 != degree_)
        throw MalformedInputError("simplex not a degree-" + std::to_string(degree_) +
                                  " simplex of the carrier");
    values_[*idx] = std::move(v);
}

void Chain::set_values(IntVec v) {
    if (v.size() != values_.size()) throw MalformedInputError("chain value count mismatch");
    values_ = std::move(v);
}

bool Chain::is_zero() const {
    for (const auto& v : values_)
        if (v != 0) return false;
    return true;
}

Chain Chain::boundary() const {
    Chain out(carrier_, degree_ - 1);
    if (degree_ == 0) {
        out.degree_ = -1;
        out.values_.clear();
        return out;
    }
    // boundary matrix = transpose of the coboundary matrix
    IntMatrix d = carrier_->coboundary_matrix(degree_ - 1);
    IntVec res(d.cols(), Int(0));
    for (size_t r = 0; r < d.rows(); ++r) {
        if (values_[r] == 0) continue;
        for (size_t c = 0; c < d.cols(); ++c)
            if (d(r, c) != 0) res[c] += d(r, c) * values_[r];
    }
    out.values_ = std::move(res);
    return out;
}

Chain Chain::operator-(const Chain& o) const {
    Chain r(*this);
    for (size_t i = 0; i < values_.size(); ++i) r.values_[i] -= o.values_[i];
    return r;
}

Chain Chain::operator+(const Chain& o) const {
    Chain r(*this);
    for (size_t i = 0; i < values_.size(); ++i) r.values_[i] += o.values_[i];
    return r;
}

Rat pair_scalar(const Cochain& c, const Chain& z) {
    if (c.degree() != z.degree()) throw MalformedInputError("degree mismatch in pairing");
    if (c.coefficients().dim() != 1) throw MalformedInputError("pairing needs scalar coefficients");
    Rat acc(0);
    for (size_t i = 0; i < z.values().size(); ++i)
        if (z.values()[i] != 0) acc += Rat(z.values()[i]) * c.value_at(i)[0];
    return acc;
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

namespace {

/// Maximal monotone chains (staircase paths) through the grid of a
/// p-simplex times a q-simplex, as index pairs.
void staircases(size_t p, size_t q, std::vector<std::vector<std::pair<size_t, size_t>>>& out) {
    std::vector<std::pair<size_t, size_t>> path{{0, 0}};
    std::function<void()> rec = [&]() {
        auto [a, b] = path.back();
        if (a == p && b == q) {
            out.push_back(path);
            return;
        }
        if (a < p) {
            path.push_back({a + 1, b});
            rec();
            path.pop_back();
        }
        if (b < q) {
            path.push_back({a, b + 1});
            rec();
            path.pop_back();
        }
    };
    rec();
}

}  // namespace

int ProductComplex::pair_label(int v1, int v2) const {
    auto it = label_of_pair.find({v1, v2});
    if (it == label_of_pair.end()) throw MalformedInputError("no such product vertex");
    return it->second;
}

std::pair<int, int> ProductComplex::vertex_pair(int label) const {
    if (label < 0 || label >= static_cast<int>(pair_of_label.size()))
        throw MalformedInputError("no such product vertex label");
    return pair_of_label[label];
}

SimplicialMap ProductComplex::section_at(int fiber_vertex) const {
    std::map<int, int> vm;
    for (int v : proj1.target()->vertices()) vm[v] = pair_label(v, fiber_vertex);
    return SimplicialMap(proj1.target(), complex, vm);
}

SimplicialMap ProductComplex::fiber_inclusion_at(int base_vertex) const {
    std::map<int, int> vm;
    for (int v : proj2.target()->vertices()) vm[v] = pair_label(base_vertex, v);
    return SimplicialMap(proj2.target(), complex, vm);
}

ProductComplex product_complex(const ComplexPtr& k1, const ComplexPtr& k2) {
    if (k1->empty() || k2->empty()) throw MalformedInputError("product of empty complex");
    ProductComplex p;
    auto v1 = k1->vertices(), v2 = k2->vertices();
    for (int a : v1)
        for (int b : v2) {
            p.label_of_pair[{a, b}] = static_cast<int>(p.pair_of_label.size());
            p.pair_of_label.push_back({a, b});
        }

    // Maximal simplices: staircase paths through sigma x tau over all pairs
    // of maximal simplices. Downward closure yields every monotone chain.
    std::vector<Simplex> maximal;
    std::set<Simplex> seen;
    auto max1 = maximal_simplices(*k1), max2 = maximal_simplices(*k2);
    for (const auto& sigma : max1)
        for (const auto& tau : max2) {
            std::vector<std::vector<std::pair<size_t, size_t>>> paths;
            staircases(sigma.size() - 1, tau.size() - 1, paths);
            for (const auto& path : paths) {
                Simplex s;
                for (auto [ia, ib] : path) s.push_back(p.pair_label(sigma[ia], tau[ib]));
                if (seen.insert(s).second) maximal.push_back(s);
            }
        }
    p.complex = share(SimplicialComplex::from_maximal(maximal));

    std::map<int, int> vm1, vm2;
    for (const auto& [pair, label] : p.label_of_pair) {
        vm1[label] = pair.first;
        vm2[label] = pair.second;
    }
    p.proj1 = SimplicialMap(p.complex, k1, vm1);
    p.proj2 = SimplicialMap(p.complex, k2, vm2);
    return p;
}

// ---------------------------------------------------------------------------
// Orientations and closed surfaces
// ---------------------------------------------------------------------------

namespace {

/// sign of edge (triangle minus vertex j) inside triangle: (-1)^j
int face_sign(const Simplex& tri, const Simplex& edge) {
    for (size_t j = 0; j < tri.size(); ++j) {
        Simplex face;
        for (size_t i = 0; i < tri.size(); ++i)
            if (i != j) face.push_back(tri[i]);
        if (face == edge) return (j % 2 == 0) ? 1 : -1;
    }
    throw InternalConsistencyError("edge is not a face of the triangle");
}

}  // namespace

std::optional<std::vector<int>> try_coherent_orientation(const SimplicialComplex& k) {
    const auto& tris = k.simplices(2);
    const auto& edges = k.simplices(1);
    if (tris.empty()) return std::nullopt;

    // edge -> incident triangles
    std::vector<std::vector<size_t>> incident(edges.size());
    for (size_t t = 0; t < tris.size(); ++t)
        for (size_t j = 0; j < 3; ++j) {
            Simplex e;
            for (size_t i = 0; i < 3; ++i)
                if (i != j) e.push_back(tris[t][i]);
            incident[*k.index_of(e)].push_back(t);
        }
    for (const auto& inc : incident)
        if (inc.size() != 2) return std::nullopt;

    // Propagate: adjacent triangles must induce opposite signs on the
    // shared edge.
    std::vector<int> sign(tris.size(), 0);
    for (size_t seed = 0; seed < tris.size(); ++seed) {
        if (sign[seed] != 0) continue;
        sign[seed] = 1;
        std::queue<size_t> work;
        work.push(seed);
        while (!work.empty()) {
            size_t t = work.front();
            work.pop();
            for (size_t j = 0; j < 3; ++j) {
                Simplex e;
                for (size_t i = 0; i < 3; ++i)
                    if (i != j) e.push_back(tris[t][i]);
                size_t ei = *k.index_of(e);
                size_t other = incident[ei][0] == t ? incident[ei][1] : incident[ei][0];
                int needed = -sign[t] * face_sign(tris[t], e) * face_sign(tris[other], e);
                if (sign[other] == 0) {
                    sign[other] = needed;
                    work.push(other);
                } else if (sign[other] != needed) {
                    return std::nullopt;  // not orientable
                }
            }
        }
    }
    return sign;
}

Chain closed_surface_fundamental_cycle(const ComplexPtr& k) {
    if (k->dim() != 2) throw MalformedInputError("not a closed surface: dimension != 2");
    // purity: every vertex and edge is a face of a triangle
    const auto& tris = k->simplices(2);
    std::set<Simplex> faces_of_tris;
    for (const auto& t : tris) {
        for (size_t m = 1; m < 8; ++m) {
            Simplex f;
            for (size_t i = 0; i < 3; ++i)
                if (m & (size_t(1) << i)) f.push_back(t[i]);
            faces_of_tris.insert(f);
        }
    }
    if (faces_of_tris.size() != k->total_count())
        throw MalformedInputError("not a closed surface: not pure 2-dimensional");

    // link condition: vertex links are single cycles
    for (const auto& vtx : k->simplices(0)) {
        int v = vtx[0];
        std::map<int, std::vector<int>> link_adj;
        for (const auto& t : tris) {
            if (std::find(t.begin(), t.end(), v) == t.end()) continue;
            std::vector<int> rest;
            for (int w : t)
                if (w != v) rest.push_back(w);
            link_adj[rest[0]].push_back(rest[1]);
            link_adj[rest[1]].push_back(rest[0]);
        }
        if (link_adj.empty()) throw MalformedInputError("isolated vertex in surface");
        for (const auto& [w, nb] : link_adj)
            if (nb.size() != 2)
                throw MalformedInputError("not a closed surface: bad link at vertex " +
                                          std::to_string(v));
        // connectivity of the link
        std::set<int> seen{link_adj.begin()->first};
        std::queue<int> work;
        work.push(link_adj.begin()->first);
        while (!work.empty()) {
            int w = work.front();
            work.pop();
            for (int x : link_adj[w])
                if (seen.insert(x).second) work.push(x);
        }
        if (seen.size() != link_adj.size())
            throw MalformedInputError("not a closed surface: pinched link at vertex " +
                                      std::to_string(v));
    }

    auto orient = try_coherent_orientation(*k);
    if (!orient) throw MalformedInputError("surface is not coherently orientable");
    Chain z(k, 2);
    IntVec vals(tris.size());
    for (size_t i = 0; i < tris.size(); ++i) vals[i] = (*orient)[i];
    z.set_values(std::move(vals));
    if (!z.boundary().is_zero())
        throw InternalConsistencyError("orientation signs do not close up");
    return z;
}

}  // namespace gerbe
