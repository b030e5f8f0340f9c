#include "arblink/block.hpp"
#include "arblink/cyclotomic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace arblink;
using namespace arblink::block;
using cyclo::Cyclo;

namespace {

BlockVector random_vector(long long n, int sign, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    BlockVector v(n, sign);
    for (auto& e : v.entries) {
        Cyclo x = Cyclo::zero(n);
        for (long long k = 0; k < n; ++k)
            x += Cyclo::zeta(n, k).scaled(BigRat(coeff(rng), den(rng)));
        e = x;
    }
    return v;
}

}  // namespace

TEST_CASE("block index sets") {
    CHECK(block_indices(3).size() == 5);
    CHECK(block_indices(5).size() == 13);
    for (long long n : {3, 5, 7, 9}) {
        auto idx = block_indices(n);
        CHECK(static_cast<long long>(idx.size()) == block_count(n));
        // distinct positions covering 0..count-1
        std::vector<bool> seen(idx.size(), false);
        for (const auto& i : idx) {
            std::size_t pos = block_position(n, i);
            CHECK_FALSE(seen[pos]);
            seen[pos] = true;
        }
        // dimension count: 1 + 2*(n-1)/2 + 2*n*(n-1)/2 = n^2
        long long dims = 0;
        for (const auto& i : idx) dims += qdim(i) == 1 ? 1 : 2;
        CHECK(dims == n * n);
    }
}

TEST_CASE("qdim") {
    CHECK(qdim(BlockIndex::unit()) == 1);
    CHECK(qdim(BlockIndex::two_dim(1)) == 2);
    CHECK(qdim(BlockIndex::mixed(1, 3)) == 2);
}

TEST_CASE("phi_R matches the braiding image") {
    BlockVector v = phi_R(3, +1, 1);
    CHECK(v.at(BlockIndex::unit()) == Cyclo::one(3));
    CHECK(v.at(BlockIndex::two_dim(1)) == Cyclo::one(3));
    CHECK(v.at(BlockIndex::mixed(1, 1)) == Cyclo::zeta(3, 2));
    CHECK(v.at(BlockIndex::mixed(1, 2)) == Cyclo::zeta(3, 1));
    CHECK(v.at(BlockIndex::mixed(1, 3)) == Cyclo::one(3));

    CHECK(phi_R(7, +1, 0) == BlockVector::ones(7, +1));
    CHECK(phi_R(3, -1, 2) == phi_R(3, +1, 2));

    // l-th power entrywise, including negative exponents
    for (long long l : {-2, -1, 2, 3}) {
        BlockVector w = phi_R(5, -1, l);
        BlockVector base = phi_R(5, -1, 1);
        for (std::size_t i = 0; i < w.entries.size(); ++i) {
            Cyclo expect = Cyclo::one(5);
            for (long long k = 0; k < (l < 0 ? -l : l); ++k)
                expect *= l > 0 ? base.entries[i] : base.entries[i].conj();
            CHECK(w.entries[i] == expect);
        }
    }
}

TEST_CASE("rotation matrix entries") {
    const RotMatrix& m = rot_matrix_cached(3);
    auto pos = [&](const BlockIndex& i) { return block_position(3, i); };
    CHECK(m.at(pos(BlockIndex::unit()), pos(BlockIndex::unit())) ==
          Cyclo::from_rational(3, BigRat(1, 3)));
    // (zeta^2 + zeta)/3 = -1/3 after reduction
    CHECK(m.at(pos(BlockIndex::two_dim(1)), pos(BlockIndex::mixed(1, 1))) ==
          Cyclo::from_rational(3, BigRat(-1, 3)));
    CHECK(m.at(pos(BlockIndex::mixed(1, 1)), pos(BlockIndex::two_dim(1))) ==
          m.at(pos(BlockIndex::two_dim(1)), pos(BlockIndex::mixed(1, 1))));
    // asymmetric unit row/column
    CHECK(m.at(pos(BlockIndex::unit()), pos(BlockIndex::two_dim(1))) ==
          Cyclo::from_rational(3, BigRat(2, 3)));
    CHECK(m.at(pos(BlockIndex::two_dim(1)), pos(BlockIndex::unit())) ==
          Cyclo::from_rational(3, BigRat(1, 3)));
}

TEST_CASE("quantum trace") {
    CHECK(*quantum_trace(BlockVector::ones(3, +1)).as_integer() == 9);
    CHECK(*quantum_trace(BlockVector::ones(5, +1)).as_integer() == 25);
    CHECK(*quantum_trace(phi_R(3, +1, 1)).as_integer() == 3);
    CHECK(quantum_trace(BlockVector(3, +1)).is_zero());
}

TEST_CASE("raw braiding is a signed permutation") {
    RawMorphism r = raw_R(3, +1);
    CHECK(r.at(0, 0, 0, 0) == Cyclo::one(3));
    RawMorphism rm = raw_R(3, -1);
    CHECK(rm.at(0, 0, 0, 0) == -Cyclo::one(3));
    // inverse composes to the identity, checked through the block image
    CHECK(phi_forward(raw_R_power(5, -1, -1)) ==
          phi_R(5, -1, -1));
}

TEST_CASE("phi_forward of the braiding matches the closed form") {
    for (long long n : {3, 5, 7}) {
        CHECK(phi_forward(raw_R(n, +1)) == phi_R(n, +1, 1));
        CHECK(phi_forward(raw_R(n, -1)) == phi_R(n, -1, 1));
    }
    CHECK(phi_forward(RawMorphism::identity(5, +1)) == BlockVector::ones(5, +1));
}

TEST_CASE("braiding powers are consistent") {
    for (long long n : {3, 5})
        for (long long l = -2; l <= 4; ++l)
            for (int sign : {+1, -1})
                CHECK(phi_forward(raw_R_power(n, sign, l)) == phi_R(n, sign, l));
}

TEST_CASE("phi round-trips") {
    std::mt19937 rng(424243);
    for (long long n : {3, 5, 7, 9}) {
        for (int sign : {+1, -1}) {
            BlockVector v = random_vector(n, sign, rng);
            CHECK(phi_forward(phi_inverse(v)) == v);
        }
        RawMorphism r = raw_R(n, +1);
        CHECK(phi_inverse(phi_forward(r)) == r);
        RawMorphism rm = raw_R(n, -1);
        CHECK(phi_inverse(phi_forward(rm)) == rm);
        CHECK(phi_inverse(BlockVector::ones(n, +1)) == RawMorphism::identity(n, +1));
    }
}

TEST_CASE("phi_forward rejects non-equivariant input") {
    RawMorphism bad(3, +1);
    bad.at(1, 0, 0, 0) = Cyclo::one(3);  // breaks the grading constraint
    CHECK_THROWS_AS(phi_forward(bad), NotEquivariant);
}

TEST_CASE("raw rotation agrees with the block rotation matrix") {
    std::mt19937 rng(77);
    for (long long n : {3, 5, 7}) {
        const RotMatrix& rot = rot_matrix_cached(n);
        for (int sign : {+1, -1}) {
            for (int trial = 0; trial < 20; ++trial) {
                BlockVector v = random_vector(n, sign, rng);
                BlockVector via_raw = phi_forward(raw_rot(phi_inverse(v)));
                BlockVector via_matrix = apply(rot, v);
                CHECK(via_raw == via_matrix);
            }
        }
    }
}

TEST_CASE("four quarter turns are the identity") {
    std::mt19937 rng(99);
    for (long long n : {3, 5}) {
        BlockVector v = random_vector(n, +1, rng);
        RawMorphism f = phi_inverse(v);
        RawMorphism g = raw_rot(raw_rot(raw_rot(raw_rot(f))));
        CHECK(g == f);
    }
}

TEST_CASE("closed form of ROT * Phi(R^l)") {
    for (long long n : {3, 5, 7}) {
        const RotMatrix& rot = rot_matrix_cached(n);
        for (int sign : {+1, -1})
            for (long long l = 1; l <= 6; ++l) {
                BlockVector closed = rot_phi_power_closed(n, sign, l);
                BlockVector direct = apply(rot, phi_R(n, sign, l));
                CHECK(closed == direct);
            }
    }
    // l = n kills everything except the unit summand
    BlockVector v = rot_phi_power_closed(5, +1, 5);
    CHECK(v.at(BlockIndex::unit()) == Cyclo::from_integer(5, 5));
    for (long long r = 1; r <= 2; ++r) CHECK(v.at(BlockIndex::two_dim(r)).is_zero());
    CHECK(rot_phi_power_closed(7, -1, 2) == rot_phi_power_closed(7, +1, 2));
}

TEST_CASE("rational closed form examples") {
    using tangle::Frac;
    BlockVector v = rational_closed_form(3, +1, Frac(1, 3));
    CHECK(v.at(BlockIndex::unit()) == Cyclo::one(3));
    CHECK(v.at(BlockIndex::two_dim(1)) == Cyclo::one(3));
    for (long long t = 1; t <= 3; ++t) CHECK(v.at(BlockIndex::mixed(1, t)) == Cyclo::one(3));

    BlockVector w = rational_closed_form(3, +1, Frac(3, 1));
    CHECK(w.at(BlockIndex::unit()) == Cyclo::from_integer(3, 3));
    CHECK(w.at(BlockIndex::two_dim(1)).is_zero());
    for (long long t = 1; t <= 3; ++t) CHECK(w.at(BlockIndex::mixed(1, t)).is_zero());

    // sign - differs by (-1)^mu
    BlockVector p = rational_closed_form(5, +1, Frac(1, 3));
    BlockVector q = rational_closed_form(5, -1, Frac(1, 3));
    for (std::size_t i = 0; i < p.entries.size(); ++i)
        CHECK(q.entries[i] == -p.entries[i]);  // mu(1/3) = -3 is odd
}
