#include "doctest.h"
#include "oracles.hpp"

#include "ren/engine.hpp"
#include "ren/errors.hpp"
#include "ren/random.hpp"

#include <cmath>

using namespace ren;

namespace {

constexpr Boundary kBoundaries[] = {Boundary::periodic, Boundary::fixed_zero};

bool periodic(Boundary b) { return b == Boundary::periodic; }

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("1-D layered step matches the naive recursion") {
    std::mt19937_64 rng(11);
    for (int width : {1, 2, 3, 7, 63, 64, 65, 127, 130, 200}) {
        for (Boundary b : kBoundaries) {
            for (int trial = 0; trial < 6; ++trial) {
                const int number = static_cast<int>(rng() % 256);
                const int radius = 1 + static_cast<int>(rng() % 10);
                const auto x = oracle::random_row(rng, width);
                const Grid1D g = oracle::to_grid(x, b);
                const auto expect = oracle::eca_step(x, number, radius, periodic(b));
                CAPTURE(width);
                CAPTURE(number);
                CAPTURE(radius);
                REQUIRE(oracle::cells(step_eca_extended(g, EcaRule(number), radius)) == expect);
                REQUIRE(oracle::cells(step_eca_extended(g, EcaRule(number), radius, StepOptions{4})) == expect);
            }
        }
    }
}

TEST_CASE("R = 1 reproduces the base step") {
    std::mt19937_64 rng(12);
    for (int n = 0; n < 256; ++n) {
        const Grid1D g = oracle::to_grid(oracle::random_row(rng, 97), Boundary::periodic);
        CHECK(step_eca_extended(g, EcaRule(n), 1) == step_eca_base(g, EcaRule(n)));
        CHECK(step_eca_extended(g, ExtendedRule{EcaRule(n), 1}) == step_eca_base(g, EcaRule(n)));
    }
}

TEST_CASE("hand-computed R = 2 windows") {
    const Grid1D window = Grid1D::from_string("00100", Boundary::fixed_zero);
    CHECK(step_eca_extended(window, EcaRule(110), 2).get(2) == 1);
    CHECK(step_eca_r2_closed_form(window, EcaRule(110)).get(2) == 1);
    CHECK(step_eca_r2_closed_form(window, EcaRule(30)).get(2) == 0);
    CHECK(step_eca_extended(window, EcaRule(30), 2).get(2) == 0);
}

TEST_CASE("closed form equals the layered step on every window of every rule") {
    for (int n = 0; n < 256; ++n)
        for (int w = 0; w < 32; ++w) {
            oracle::Row x(5);
            for (int c = 0; c < 5; ++c) x[static_cast<std::size_t>(c)] = (w >> (4 - c)) & 1;
            const Grid1D g = oracle::to_grid(x, Boundary::fixed_zero);
            const int f1 = oracle::eca(n, x[0], x[1], x[2]);
            const int f2 = oracle::eca(n, x[2], x[3], x[4]);
            const int expect = oracle::eca(n, f1, x[2], f2);
            REQUIRE(step_eca_r2_closed_form(g, EcaRule(n)).get(2) == expect);
            REQUIRE(step_eca_extended(g, EcaRule(n), 2).get(2) == expect);
        }
}

TEST_CASE("identity rule is a fixed point at every radius") {
    std::mt19937_64 rng(13);
    const Grid1D g = oracle::to_grid(oracle::random_row(rng, 150), Boundary::periodic);
    for (int r : {1, 2, 5, 20, 64}) CHECK(step_eca_extended(g, EcaRule(204), r) == g);
    CHECK(step_eca_r2_closed_form(g, EcaRule(204)) == g);
}

TEST_CASE("quiescent rules keep the empty lattice empty") {
    for (int n = 0; n < 256; n += 2) {
        for (int r : {1, 3, 17}) {
            CHECK(step_eca_extended(Grid1D(100), EcaRule(n), r).live_count() == 0);
            CHECK(cone_estimate_1d(Grid1D(40), EcaRule(n), 7, r) == 0);
        }
    }
    CHECK(step_life_extended(Grid2D(33, 20), parse_life_code("B3S23"), 6).live_count() == 0);
}

TEST_CASE("cone recursion agrees with the layers") {
    std::mt19937_64 rng(14);
    for (int radius = 1; radius <= 6; ++radius)
        for (Boundary b : kBoundaries)
            for (int trial = 0; trial < 5; ++trial) {
                const int number = static_cast<int>(rng() % 256);
                const int width = 1 + static_cast<int>(rng() % 40);
                const Grid1D g = oracle::to_grid(oracle::random_row(rng, width), b);
                const Grid1D layered = step_eca_extended(g, EcaRule(number), radius);
                for (int i = 0; i < width; ++i) REQUIRE(cone_estimate_1d(g, EcaRule(number), i, radius) == layered.get(i));
            }
    const Grid1D g = Grid1D::from_string("0110101");
    for (int i = 0; i < 7; ++i)
        CHECK(cone_estimate_1d(g, EcaRule(110), i, 1) == oracle::eca(110, g.at(i - 1), g.get(i), g.at(i + 1)));
}

TEST_CASE("estimation layers") {
    std::mt19937_64 rng(15);
    const auto x = oracle::random_row(rng, 90);
    const Grid1D g = oracle::to_grid(x, Boundary::periodic);
    const auto expect = oracle::eca_layers(x, 54, 4, true);
    EstimationLayer layer = base_layer(g);
    for (int m = 1; m <= 4; ++m) {
        layer = estimate_layer_1d(layer, g, EcaRule(54));
        CHECK(layer.level == m);
        for (int i = 0; i < 90; ++i) REQUIRE(layer.get(i) == expect[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]);
    }
    CHECK_THROWS_AS(estimate_layer_1d(base_layer(Grid1D(10)), g, EcaRule(54)), contract_violation);

    const LifeRule life = parse_life_code("B3S23");
    const Grid2D soup = random_soup(20, 15, 0.4, 3);
    const EstimationLayer one = estimate_layer_2d(base_layer(soup), soup, life);
    const Grid2D stepped = step_life_base(soup, life);
    for (int r = 0; r < 15; ++r)
        for (int c = 0; c < 20; ++c) REQUIRE(one.get(r, c) == stepped.get(r, c));
    CHECK_THROWS_AS(estimate_layer_2d(base_layer(Grid2D(5, 5)), soup, life), contract_violation);
}

TEST_CASE("heterogeneous 1-D step") {
    std::mt19937_64 rng(16);
    for (Boundary b : kBoundaries) {
        const auto x = oracle::random_row(rng, 101);
        const Grid1D g = oracle::to_grid(x, b);
        RadiusField constant(101, 1, 3);
        CHECK(step_eca_extended(g, EcaRule(110), constant) == step_eca_extended(g, EcaRule(110), 3));

        RadiusField field(101, 1);
        std::vector<int> radii(101);
        for (int i = 0; i < 101; ++i) {
            radii[static_cast<std::size_t>(i)] = 1 + static_cast<int>(rng() % 5);
            field.set(0, i, radii[static_cast<std::size_t>(i)]);
        }
        CHECK(oracle::cells(step_eca_extended(g, EcaRule(22), field)) == oracle::eca_step(x, 22, radii, periodic(b)));
    }
    CHECK_THROWS_AS(step_eca_extended(Grid1D(10), EcaRule(1), RadiusField(9, 1)), contract_violation);
}

TEST_CASE("radius limits") {
    CHECK_THROWS_AS(step_eca_extended(Grid1D(10), EcaRule(1), 0), range_error);
    CHECK_THROWS_AS(step_eca_extended(Grid1D(10), EcaRule(1), kMaxRadius1D + 1), capacity_error);
    CHECK_NOTHROW(step_eca_extended(Grid1D(10), EcaRule(1), kMaxRadius1D));
    const LifeRule life = parse_life_code("B3S23");
    CHECK_THROWS_AS(step_life_extended(Grid2D(8, 8), life, 0), range_error);
    CHECK_THROWS_AS(step_life_extended(Grid2D(8, 8), life, kMaxRadius2D + 1), capacity_error);
    CHECK_THROWS_AS(step_life_extended(Grid2D(8, 8), parse_life_code("B03S23"), 1), unsupported_rule);
}

TEST_CASE("2-D layered step matches the naive recursion") {
    std::mt19937_64 rng(17);
    const LifeRule rules[] = {parse_life_code("B3S23"), parse_life_code("B23S234"), parse_life_code("B4S1234"),
                              parse_life_code("B36S23")};
    for (auto [w, h] : {std::pair{1, 1}, {5, 3}, {16, 16}, {63, 7}, {64, 5}, {70, 9}, {130, 4}}) {
        for (Boundary b : kBoundaries) {
            for (const auto& rule : rules) {
                const int radius = 1 + static_cast<int>(rng() % 5);
                const Grid2D g = random_soup(w, h, 0.4, rng(), b);
                const auto expect = oracle::life_step(oracle::cells(g), rule, radius, periodic(b));
                CAPTURE(w);
                CAPTURE(h);
                CAPTURE(radius);
                REQUIRE(oracle::cells(step_life_extended(g, rule, radius)) == expect);
                REQUIRE(oracle::cells(step_life_extended(g, rule, radius, StepOptions{3})) == expect);
            }
        }
    }
}

TEST_CASE("2-D base rule and blinker") {
    const LifeRule life = parse_life_code("B3S23");
    const Grid2D blinker = Grid2D::from_rows(".....\n.....\n.ooo.\n.....\n.....");
    const Grid2D rotated = Grid2D::from_rows(".....\n..o..\n..o..\n..o..\n.....");
    CHECK(step_life_extended(blinker, life, 1) == rotated);
    CHECK(step_life_base(blinker, life) == rotated);
    CHECK(step_life_extended(rotated, life, 1) == blinker);

    const Grid2D soup = random_soup(40, 30, 0.5, 9);
    CHECK(step_life_extended(soup, life, 1) == step_life_base(soup, life));
    CHECK(step_life_extended(soup, life, RadiusField(40, 30, 1)) == step_life_base(soup, life));
}

TEST_CASE("heterogeneous 2-D step") {
    const LifeRule rule = parse_life_code("B3S23");
    const Grid2D soup = random_soup(37, 23, 0.45, 21);
    CHECK(step_life_extended(soup, rule, RadiusField(37, 23, 4)) == step_life_extended(soup, rule, 4));

    const RadiusField field = build_gradient_radius_field(37, 23, 1, 3, 8);
    const auto layers = oracle::life_layers(oracle::cells(soup), rule, 3, true);
    const Grid2D out = step_life_extended(soup, rule, field);
    for (int r = 0; r < 23; ++r)
        for (int c = 0; c < 37; ++c)
            REQUIRE(out.get(r, c) == layers[static_cast<std::size_t>(field.at(r, c))][static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);

    Grid2D carrying = soup;
    carrying.set_radius_field(field);
    CHECK(step_life_extended(carrying, rule, StepOptions{}) == out);
    CHECK_THROWS_AS(carrying.set_radius_field(RadiusField(5, 5)), contract_violation);
    CHECK_THROWS_AS(step_life_extended(soup, rule, RadiusField(36, 23)), contract_violation);
}

TEST_CASE("isolated still lifes survive any radius") {
    const LifeRule life = parse_life_code("B3S23");
    for (const char* rows : {"oo\noo", ".oo.\no..o\n.oo.", "oo.\no.o\n.oo", ".o.\no.o\n.o.", "oo.\no.o\n.o."}) {
        for (int radius = 1; radius <= 8; ++radius) {
            // Padding so the live cells' R-halo stays clear of the border.
            const Grid2D small = Grid2D::from_rows(rows);
            Grid2D g(small.width() + 2 * radius + 4, small.height() + 2 * radius + 4, Boundary::fixed_zero);
            for (int r = 0; r < small.height(); ++r)
                for (int c = 0; c < small.width(); ++c) g.set(r + radius + 2, c + radius + 2, small.get(r, c));
            CAPTURE(rows);
            CAPTURE(radius);
            CHECK(step_life_extended(g, life, radius) == g);
        }
    }
}

TEST_CASE("boundary policy is irrelevant away from the edges") {
    std::mt19937_64 rng(18);
    const int width = 300, radius = 9;
    const auto x = oracle::random_row(rng, width);
    const Grid1D a = step_eca_extended(oracle::to_grid(x, Boundary::periodic), EcaRule(110), radius);
    const Grid1D b = step_eca_extended(oracle::to_grid(x, Boundary::fixed_zero), EcaRule(110), radius);
    for (int i = radius; i < width - radius; ++i) REQUIRE(a.get(i) == b.get(i));

    const Grid2D s = random_soup(60, 50, 0.5, 4);
    Grid2D z = s;
    z.set_boundary(Boundary::fixed_zero);
    const Grid2D pa = step_life_extended(s, parse_life_code("B3S23"), 4);
    const Grid2D pb = step_life_extended(z, parse_life_code("B3S23"), 4);
    for (int r = 4; r < 46; ++r)
        for (int c = 4; c < 56; ++c) REQUIRE(pa.get(r, c) == pb.get(r, c));
}

TEST_CASE("prng") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xe220a8397b1dcdafULL);
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    Xoshiro256 a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.next_double();
        CHECK((u >= 0.0 && u < 1.0));
    }
}

TEST_CASE("soups") {
    CHECK(random_soup(100, 0.0, 1).live_count() == 0);
    CHECK(random_soup(100, 1.0, 1).live_count() == 100);
    CHECK(random_soup(30, 20, 1.0, 1).live_count() == 600);
    CHECK(random_soup(64, 64, 0.5, 3) == random_soup(64, 64, 0.5, 3));
    CHECK_FALSE(random_soup(64, 64, 0.5, 3) == random_soup(64, 64, 0.5, 4));

    const double n = 4096, p = 0.2;
    const double live = static_cast<double>(random_soup(64, 64, p, 42).live_count());
    CHECK(std::abs(live - n * p) <= 4 * std::sqrt(n * p * (1 - p)));

    // Row-major draw order with the documented threshold.
    Xoshiro256 rng(77);
    const Grid2D soup = random_soup(9, 4, 0.3, 77);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 9; ++c) {
            const int expect = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53 < 0.3;
            REQUIRE(soup.get(r, c) == expect);
        }
    CHECK(single_seed(9).live_count() == 1);
    CHECK(single_seed(9).get(4) == 1);
}

TEST_CASE("gradient radius field") {
    const int w = 100, h = 400;
    const RadiusField field = build_gradient_radius_field(w, h, 1, 2, 99);
    CHECK(field == build_gradient_radius_field(w, h, 1, 2, 99));
    for (int r = 0; r < h; ++r) {
        CHECK(field.at(r, 0) == 1);
        CHECK(field.at(r, w - 1) == 2);
    }
    for (int c = 0; c < w; ++c) {
        int count = 0;
        for (int r = 0; r < h; ++r) count += field.at(r, c) == 2;
        const double p = static_cast<double>(c) / (w - 1);
        CHECK(std::abs(count - h * p) <= 4 * std::sqrt(h * p * (1 - p)) + 1e-9);
    }
    CHECK(build_gradient_radius_field(10, 10, 3, 3, 1).constant());
    CHECK_THROWS_AS(build_gradient_radius_field(1, 10, 1, 2, 1), contract_violation);
}

}
