#include "arblink/fox.hpp"
#include "arblink/tangle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace arblink;
using namespace arblink::tangle;
using diagram::PlanarDiagram;
using fox::ColoringMatrix;

namespace {

ColoringMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<long long> vals) {
    ColoringMatrix m;
    m.rows = rows;
    m.cols = cols;
    for (long long v : vals) m.a.emplace_back(v);
    return m;
}

// Permutes arcs and shuffles crossing order; coloring counts must not care.
PlanarDiagram permuted(const PlanarDiagram& d, std::mt19937& rng) {
    std::vector<long long> perm(d.arcs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<long long>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    PlanarDiagram out = d;
    for (auto& c : out.crossings) {
        c.over_in = perm[c.over_in];
        c.over_out = perm[c.over_out];
        c.under_in = perm[c.under_in];
        c.under_out = perm[c.under_out];
    }
    std::shuffle(out.crossings.begin(), out.crossings.end(), rng);
    return out;
}

}  // namespace

TEST_CASE("coloring matrix shape") {
    PlanarDiagram unlink = diagram::closure_trace(integral(0));
    ColoringMatrix m = fox::coloring_matrix(unlink);
    CHECK(m.rows == 0);
    CHECK(m.cols == 2);

    PlanarDiagram trefoil = diagram::closure_trace(rational_word(Frac(1, 3)));
    m = fox::coloring_matrix(trefoil);
    CHECK(m.rows == 3);
    CHECK(m.cols == 3);
    for (std::size_t r = 0; r < m.rows; ++r) {
        BigInt sum = 0;
        std::vector<BigInt> row;
        for (std::size_t c = 0; c < m.cols; ++c) {
            sum += m.at(r, c);
            row.push_back(m.at(r, c));
        }
        CHECK(sum == 0);
        std::sort(row.begin(), row.end());
        CHECK(row == std::vector<BigInt>{BigInt(-2), BigInt(1), BigInt(1)});
    }
}

TEST_CASE("smith normal form on known matrices") {
    auto d23 = fox::smith_normal_form(from_rows(2, 2, {2, 0, 0, 3}));
    REQUIRE(d23.rank == 2);
    CHECK(d23.diag == std::vector<BigInt>{BigInt(1), BigInt(6)});

    auto zero = fox::smith_normal_form(from_rows(2, 3, {0, 0, 0, 0, 0, 0}));
    CHECK(zero.rank == 0);

    auto id3 = fox::smith_normal_form(from_rows(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}));
    REQUIRE(id3.rank == 3);
    CHECK(id3.diag == std::vector<BigInt>{BigInt(1), BigInt(1), BigInt(1)});

    // divisibility chain and transform verification on random matrices
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> val(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + trial % 5, cols = 1 + (trial * 7) % 5;
        ColoringMatrix m;
        m.rows = rows;
        m.cols = cols;
        for (std::size_t i = 0; i < rows * cols; ++i) m.a.emplace_back(val(rng));
        auto snf = fox::smith_normal_form(m);
        CHECK(snf.verify(m));
        for (std::size_t i = 0; i + 1 < snf.diag.size(); ++i) {
            CHECK(snf.diag[i] > 0);
            CHECK(snf.diag[i + 1] % snf.diag[i] == 0);
        }
    }
}

TEST_CASE("coloring counts on standard closures") {
    PlanarDiagram unknot = diagram::closure_trace(rational_word(Frac(3, 1)));
    for (long long n : {3, 5, 7, 9}) CHECK(fox::count_colorings(unknot, n) == static_cast<unsigned long long>(n));

    PlanarDiagram trefoil = diagram::closure_trace(rational_word(Frac(1, 3)));
    CHECK(fox::count_colorings(trefoil, 3) == 9);
    CHECK(fox::count_colorings_naive(trefoil, 3) == 9);

    PlanarDiagram pretzel = diagram::closure_trace(montesinos_word({Frac(3, 1), Frac(3, 1), Frac(3, 1)}));
    CHECK(fox::count_colorings(pretzel, 3) == 27);
    CHECK(fox::count_colorings_naive(pretzel, 3) == 27);

    PlanarDiagram unlink = diagram::closure_trace(integral(0));
    for (long long n : {3, 5}) CHECK(fox::count_colorings(unlink, n) == static_cast<unsigned long long>(n * n));

    CHECK_THROWS_AS(fox::count_colorings(trefoil, 4), EvenOrder);
}

TEST_CASE("SNF count equals naive count on small diagrams") {
    std::vector<Word> words = {
        integral(0),           integral(1),
        rational_word(Frac(1, 3)), rational_word(Frac(2, 5)),
        rational_word(Frac(5, 2)), rational_word(Frac(3, 7)),
        montesinos_word({Frac(3, 1), Frac(3, 1), Frac(3, 1)}),
    };
    for (const auto& w : words) {
        PlanarDiagram d = diagram::closure_trace(w);
        if (d.arcs.size() > 9) continue;
        for (long long n : {3, 5})
            CHECK(fox::count_colorings(d, n) == fox::count_colorings_naive(d, n));
    }
}

TEST_CASE("counts divisible by n and invariant under renumbering") {
    std::mt19937 rng(31337);
    std::vector<Word> words = {rational_word(Frac(1, 3)), rational_word(Frac(3, 7)),
                               montesinos_word({Frac(-2, 1), Frac(3, 1), Frac(5, 1)})};
    for (const auto& w : words) {
        PlanarDiagram d = diagram::closure_trace(w);
        for (long long n : {3, 5, 9, 15}) {
            unsigned long long count = fox::count_colorings(d, n);
            CHECK(count % static_cast<unsigned long long>(n) == 0);
            for (int trial = 0; trial < 3; ++trial)
                CHECK(fox::count_colorings(permuted(d, rng), n) == count);
        }
    }
}

TEST_CASE("naive enumeration budget") {
    PlanarDiagram d = diagram::closure_trace(montesinos_word({Frac(5, 1), Frac(5, 1), Frac(5, 1)}));
    CHECK(d.arcs.size() == 15);
    CHECK_THROWS_AS(fox::count_colorings_naive(d, 5), BudgetExceeded);
}

TEST_CASE("oracle accepts PD JSON input") {
    PlanarDiagram d = diagram::closure_trace(rational_word(Frac(1, 3)));
    PlanarDiagram back = diagram::from_pd_json(diagram::to_pd_json(d));
    CHECK(fox::count_colorings(back, 3) == 9);

    // crossing-free unknot straight from PD JSON: one free arc
    PlanarDiagram unknot =
        diagram::from_pd_json(R"({"n_components":1,"writhe":0,"arcs":[0],"crossings":[]})");
    ColoringMatrix m = fox::coloring_matrix(unknot);
    CHECK(m.rows == 0);
    CHECK(m.cols == 1);
    for (long long n : {3, 5, 9}) CHECK(fox::count_colorings(unknot, n) == static_cast<unsigned long long>(n));
}
