#include "doctest.h"
#include "oracles.hpp"

#include "ren/errors.hpp"
#include "ren/engine.hpp"
#include "ren/pattern_io.hpp"

using namespace ren;

namespace {

Pattern random_pattern(std::mt19937_64& rng) {
    const int w = static_cast<int>(rng() % 90), h = static_cast<int>(rng() % 12);
    std::vector<Cell> cells;
    if (w > 0 && h > 0) {
        const int density = static_cast<int>(rng() % 100);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (static_cast<int>(rng() % 100) < density) cells.push_back({r, c});
    }
    return Pattern(w, h, cells);
}

}  // namespace

TEST_SUITE("pattern_io") {

TEST_CASE("pattern invariants") {
    const Pattern p(3, 2, {{1, 2}, {0, 0}, {1, 2}});
    CHECK(p.cells() == std::vector<Cell>{{0, 0}, {1, 2}});
    CHECK_THROWS_AS(Pattern(2, 2, {{2, 0}}), contract_violation);
    Grid2D g(10, 10);
    g.set(3, 4, 1);
    g.set(5, 7, 1);
    const Pattern tight = Pattern::from_grid(g);
    CHECK(tight.width() == 4);
    CHECK(tight.height() == 3);
    CHECK(tight.cells() == std::vector<Cell>{{0, 0}, {2, 3}});
    const Grid2D back = tight.to_grid(2);
    CHECK(back.width() == 8);
    CHECK(back.get(2, 2) == 1);
    CHECK(back.get(4, 5) == 1);
    CHECK(back.boundary() == Boundary::fixed_zero);
}

TEST_CASE("rle parsing") {
    const RleDocument glider = parse_rle("x = 3, y = 3, rule = B3/S23\nbo$2bo$3o!");
    CHECK(glider.pattern.cells() == std::vector<Cell>{{0, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
    REQUIRE(glider.rule.has_value());
    CHECK(glider.rule->code() == "B3S23R1");
    const RleDocument block = parse_rle("x = 2, y = 2\n2o$2o!");
    CHECK(block.pattern == Pattern(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    CHECK_FALSE(block.rule.has_value());
    CHECK(parse_rle("#N comment\n#C more\nx = 3, y = 3, rule = B3S23R4\nbo$\n2bo$3o!").rule->radius == 4);
    CHECK(parse_rle("x = 4, y = 5\no2$3bo!").pattern.cells() == std::vector<Cell>{{0, 0}, {2, 3}});
    // Without a header the box is the extent of the body.
    CHECK(parse_rle("3o!").pattern.width() == 3);
}

TEST_CASE("rle errors carry positions") {
    CHECK_THROWS_AS(parse_rle("3o"), parse_error);
    CHECK_THROWS_AS(parse_rle("x = 2, y = 1\n3o!"), parse_error);
    CHECK_THROWS_AS(parse_rle("x = 2, y = 1\n2o$o!"), parse_error);
    CHECK_THROWS_AS(parse_rle("x = 3, y = 1, rule = B3S29\n3o!"), parse_error);
    try {
        parse_rle("x = 3, y = 3\nbo$2bq$3o!");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 6);
    }
}

TEST_CASE("rle emission") {
    const Pattern block = parse_rle("2o$2o!").pattern;
    CHECK(emit_rle(block, ExtendedRule{parse_life_code("B3S23"), 1}) == "x = 2, y = 2, rule = B3/S23\n2o$2o!");
    CHECK(emit_rle(block, ExtendedRule{parse_life_code("B3S23"), 3}) == "x = 2, y = 2, rule = B3/S23R3\n2o$2o!");
    CHECK(emit_rle(Pattern()) == "x = 0, y = 0\n!");
    CHECK(emit_rle(Pattern(5, 3, {{0, 0}, {2, 4}})) == "x = 5, y = 3\no2$4bo!");
    const Pattern wide(200, 1, [] {
        std::vector<Cell> v;
        for (int c = 0; c < 200; c += 2) v.push_back({0, c});
        return v;
    }());
    const std::string text = emit_rle(wide);
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        CHECK((end == std::string::npos ? text.size() : end) - start <= 70);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    CHECK(parse_rle(text).pattern == wide);
}

TEST_CASE("rle round trip on random patterns") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 200; ++i) {
        const Pattern p = random_pattern(rng);
        const RleDocument doc = parse_rle(emit_rle(p, ExtendedRule{parse_life_code("B36S23"), 1 + i % 4}));
        REQUIRE(doc.pattern == p);
        CHECK(doc.rule->radius == 1 + i % 4);
    }
}

TEST_CASE("pbm rendering") {
    Grid2D full(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) full.set(r, c, 1);
    CHECK(render_pbm(full, PbmFormat::plain) == "P1\n2 2\n1 1\n1 1\n");
    const std::string raw = render_pbm(full);
    CHECK(raw == std::string("P4\n2 2\n") + '\xc0' + '\xc0');

    const Grid2D soup = random_soup(37, 11, 0.5, 2);
    CHECK(decode_pbm(render_pbm(soup, PbmFormat::plain)) == soup);
    CHECK(decode_pbm(render_pbm(soup, PbmFormat::raw)) == soup);

    std::vector<Grid1D> history{single_seed(9)};
    for (int t = 0; t < 4; ++t) history.push_back(step_eca_base(history.back(), EcaRule(90)));
    const Grid2D st = space_time(history);
    CHECK(st.width() == 9);
    CHECK(st.height() == 5);
    CHECK(st.get(0, 4) == 1);
    CHECK(st.get(1, 3) == 1);
    CHECK(st.get(1, 5) == 1);
    CHECK(render_pbm(history[0], PbmFormat::plain) == "P1\n9 1\n0 0 0 0 1 0 0 0 0\n");
    CHECK_THROWS_AS(decode_pbm("P2\n1 1\n0\n"), parse_error);
}

TEST_CASE("ppm radius rendering") {
    const Grid2D soup = random_soup(30, 10, 0.5, 8);
    const RadiusField field = build_gradient_radius_field(30, 10, 1, 2, 8);
    const std::string ppm = render_ppm_radius(soup, field);
    const std::string header = "P6\n30 10\n255\n";
    REQUIRE(ppm.size() == header.size() + 30 * 10 * 3);
    CHECK(ppm.substr(0, header.size()) == header);
    const auto& palette = default_radius_palette();
    CHECK(palette.size() == 32);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 30; ++c) {
            const std::size_t at = header.size() + 3 * static_cast<std::size_t>(r * 30 + c);
            const Rgb px{static_cast<std::uint8_t>(ppm[at]), static_cast<std::uint8_t>(ppm[at + 1]),
                         static_cast<std::uint8_t>(ppm[at + 2])};
            CHECK(px == (soup.get(r, c) ? palette[static_cast<std::size_t>(field.at(r, c) - 1)] : Rgb{0, 0, 0}));
        }
    const std::string dark = render_ppm_radius(Grid2D(4, 4), RadiusField(4, 4, 3));
    CHECK(dark.find_first_not_of('\0', std::string("P6\n4 4\n255\n").size()) == std::string::npos);
    CHECK_THROWS_AS(render_ppm_radius(soup, field, {{255, 0, 0}}), range_error);
    CHECK(render_ppm_radius(soup, field) == ppm);
}

}
