#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gerbe/exactalg.hpp"

using namespace gerbe;

namespace {

IntMatrix make(size_t r, size_t c, std::initializer_list<int> vals) {
    IntMatrix m(r, c);
    auto it = vals.begin();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

void check_snf_postconditions(const IntMatrix& a) {
    Snf s = smith_normal_form(a);
    // U*A*V == D
    CHECK(s.u.mul(a).mul(s.v) == s.d);
    // unimodular transforms
    Int du = determinant(s.u), dv = determinant(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    CHECK(s.u.mul(s.u_inv) == IntMatrix::identity(a.rows()));
    // diagonal, non-negative, divisibility chain
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (i != j) CHECK(s.d(i, j) == 0);
    for (size_t i = 0; i + 1 < std::min(a.rows(), a.cols()); ++i) {
        CHECK(s.d(i, i) >= 0);
        if (s.d(i + 1, i + 1) != 0) {
            CHECK(s.d(i, i) != 0);
            CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
        }
    }
}

}  // namespace

TEST_CASE("smith normal form on hand-reduced example") {
    // [[2,4],[6,8]]: gcd of entries 2, |det| = 8, so D = diag(2, 4).
    IntMatrix a = make(2, 2, {2, 4, 6, 8});
    Snf s = smith_normal_form(a);
    CHECK(s.d(0, 0) == 2);
    CHECK(s.d(1, 1) == 4);
    check_snf_postconditions(a);
}

TEST_CASE("smith normal form of identity and zero") {
    IntMatrix id = IntMatrix::identity(4);
    Snf s = smith_normal_form(id);
    CHECK(s.d == id);

    IntMatrix z(3, 2);
    Snf sz = smith_normal_form(z);
    CHECK(sz.rank == 0);
    CHECK(sz.d.is_zero());
}

TEST_CASE("seeded random smith normal forms satisfy the postconditions") {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> dim(1, 12), entry(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix a(dim(rng), dim(rng));
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
        check_snf_postconditions(a);
    }
}

TEST_CASE("integer solve: parity obstruction and solvable systems") {
    IntMatrix a = make(1, 1, {2});
    CHECK(!solve_z(a, IntVec{Int(3)}));
    auto x = solve_z(a, IntVec{Int(10)});
    REQUIRE(x);
    CHECK((*x)[0] == 5);
}

TEST_CASE("rational solve: A=[[2]], b=[3] gives 3/2") {
    RatMatrix a(1, 1);
    a(0, 0) = 2;
    auto x = solve_q(a, RatVec{Rat(3)});
    REQUIRE(x);
    CHECK((*x)[0] == Rat(3, 2));
}

TEST_CASE("solve certifies membership exactly") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix a(4, 3);
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
        IntVec x0(3);
        for (auto& v : x0) v = entry(rng);
        IntVec b = a.apply(x0);
        auto x = solve_z(a, b);
        REQUIRE(x);
        CHECK(a.apply(*x) == b);
    }
}

TEST_CASE("kernel and image over Q: [[1,1]]") {
    RatMatrix a(1, 2);
    a(0, 0) = 1;
    a(0, 1) = 1;
    auto [kernel, image] = kernel_image_q(a);
    REQUIRE(kernel.cols() == 1);
    CHECK(kernel(0, 0) * a(0, 0) + kernel(1, 0) * a(0, 1) == 0);
    CHECK(kernel(0, 0) != 0);
    CHECK(image.cols() == 1);
}

TEST_CASE("kernel and image of the zero matrix") {
    RatMatrix z(2, 2);
    auto [kernel, image] = kernel_image_q(z);
    CHECK(kernel.cols() == 2);
    CHECK(image.cols() == 0);
}

TEST_CASE("integer kernel is saturated") {
    // A = [2 2]: kernel lattice is generated by (1,-1), not (2,-2).
    IntMatrix a = make(1, 2, {2, 2});
    auto [kernel, image] = kernel_image_z(a);
    REQUIRE(kernel.cols() == 1);
    Int g = gcd(kernel(0, 0), kernel(1, 0));
    CHECK((g == 1 || g == -1));
    CHECK(image.cols() == 1);
    CHECK(image(0, 0) == 2);
}

TEST_CASE("canonical representatives in quotients") {
    Lattice zl = Lattice::integral(1);
    CHECK(zl.canonical_rep(RatVec{Rat(7, 2)}) == RatVec{Rat(1, 2)});

    Lattice div = Lattice::divisible(3);
    RatVec v{Rat(5, 3), Rat(-1), Rat(22, 7)};
    CHECK(is_zero(div.canonical_rep(v)));

    Lattice z2 = Lattice::integral(2);
    RatVec w{Rat(5, 3), Rat(-1, 4)};
    CHECK(z2.canonical_rep(w) == RatVec{Rat(2, 3), Rat(3, 4)});
}

TEST_CASE("canonical_rep is invariant under lattice translations and idempotent") {
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<int> entry(-6, 6), denom(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        RatMatrix gen(2, 3);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 3; ++j) gen(i, j) = Rat(entry(rng), denom(rng));
        Lattice l = Lattice::finitely_generated(3, gen);
        RatVec v{Rat(entry(rng), denom(rng)), Rat(entry(rng), denom(rng)), Rat(entry(rng), denom(rng))};
        IntVec coords(l.rank());
        for (auto& c : coords) c = entry(rng);
        RatVec shifted = v;
        if (l.rank() > 0) {
            RatVec g = l.from_coordinates(coords);
            for (size_t j = 0; j < 3; ++j) shifted[j] += g[j];
        }
        CHECK(l.canonical_rep(v) == l.canonical_rep(shifted));
        CHECK(l.canonical_rep(l.canonical_rep(v)) == l.canonical_rep(v));
        RatVec diff = v - l.canonical_rep(v);
        CHECK(l.contains(diff));
    }
}

TEST_CASE("lattice canonical form is stable under generator permutation and redundancy") {
    RatMatrix g1(2, 2), g2(3, 2);
    g1(0, 0) = Rat(1, 2); g1(0, 1) = 0;
    g1(1, 0) = 0;         g1(1, 1) = Rat(3);
    // permuted plus a redundant sum row
    g2(0, 0) = 0;         g2(0, 1) = Rat(3);
    g2(1, 0) = Rat(1, 2); g2(1, 1) = 0;
    g2(2, 0) = Rat(1, 2); g2(2, 1) = Rat(3);
    CHECK(Lattice::finitely_generated(2, g1) == Lattice::finitely_generated(2, g2));
}

TEST_CASE("left kernel rows annihilate the matrix") {
    IntMatrix a = make(3, 2, {1, 0, 1, 1, 0, 1});
    IntMatrix w = left_kernel_scaled(a);
    REQUIRE(w.rows() == 1);
    for (size_t j = 0; j < a.cols(); ++j) {
        Int acc = 0;
        for (size_t i = 0; i < a.rows(); ++i) acc += w(0, i) * a(i, j);
        CHECK(acc == 0);
    }
}

TEST_CASE("rational string round trip") {
    CHECK(rat_to_string(Rat(-3, 4)) == "-3/4");
    CHECK(rat_to_string(Rat(5)) == "5");
    CHECK(rat_from_string("22/7") == Rat(22, 7));
    CHECK(rat_from_string("-8") == Rat(-8));
    CHECK_THROWS_AS(rat_from_string("1/0"), MalformedInputError);
    CHECK_THROWS_AS(rat_from_string("x"), MalformedInputError);
}
