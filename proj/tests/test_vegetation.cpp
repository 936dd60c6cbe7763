#include <doctest.h>

#include <cmath>
#include <sstream>

#include "parksent/errors.hpp"
#include "parksent/rng.hpp"
#include "parksent/vegetation.hpp"

using namespace parksent;

namespace {

// 4x4 pixel raster covering [0,4] x [0,4] in lon/lat, one unit per pixel,
// north-up (origin at the top-left corner, dy negative).
RasterGrid grid4(std::vector<double> nir, std::vector<double> red) {
    RasterGrid g;
    g.width = 4;
    g.height = 4;
    g.origin_lon = 0.0;
    g.origin_lat = 4.0;
    g.pixel_dx = 1.0;
    g.pixel_dy = -1.0;
    g.nir = std::move(nir);
    g.red = std::move(red);
    return g;
}

ParkFacility square_park(double x0, double y0, double size, const std::string& id = "park",
                         ParkCategory category = ParkCategory::RegionalPark) {
    ParkFacility f;
    f.id = id;
    f.name = "Park " + id;
    f.category = category;
    f.geometry.push_back(
        PolygonWithHoles{{{x0, y0}, {x0 + size, y0}, {x0 + size, y0 + size}, {x0, y0 + size}}, {}});
    f.acres = size * size * 100.0;
    return f;
}

}  // namespace

TEST_SUITE("vegetation") {

TEST_CASE("ndvi basics") {
    CHECK(ndvi(0.5, 0.5).value() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ndvi(1.0, 0.0).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ndvi(0.6, 0.2).value() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ndvi(0.0, 1.0).value() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_FALSE(ndvi(0.0, 0.0).has_value());
    CHECK_THROWS_AS(ndvi(-0.1, 0.5), ValidationError);
    CHECK_THROWS_AS(ndvi(0.5, -0.1), ValidationError);
}

TEST_CASE("ndvi is antisymmetric") {
    rng::Engine eng(4);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng::uniform01(eng);
        const double b = rng::uniform01(eng);
        const auto forward = ndvi(a, b);
        const auto backward = ndvi(b, a);
        if (!forward) {
            CHECK_FALSE(backward.has_value());
            continue;
        }
        CHECK(*forward == -*backward);  // same operations, exact negation
        CHECK(*forward >= -1.0);
        CHECK(*forward <= 1.0);
    }
}

TEST_CASE("uniform raster gives its NDVI and full vegetation") {
    // nir 0.75, red 0.25 -> ndvi exactly 0.5 everywhere
    const RasterGrid g = grid4(std::vector<double>(16, 0.75), std::vector<double>(16, 0.25));
    const auto stats = park_stats(g, square_park(0, 0, 4), {}, 0.2);
    CHECK(stats.pixels_total == 16);
    CHECK(stats.pixels_water == 0);
    CHECK(stats.pixels_nodata == 0);
    CHECK(stats.mean_ndvi == 0.5);
    CHECK(stats.percent_vegetated == 100.0);
}

TEST_CASE("water polygons are excluded before any band math") {
    const RasterGrid g = grid4(std::vector<double>(16, 0.75), std::vector<double>(16, 0.25));
    // left half [0,2] x [0,4] is water
    const std::vector<PolygonWithHoles> water = {
        PolygonWithHoles{{{0, 0}, {2, 0}, {2, 4}, {0, 4}}, {}}};
    const auto stats = park_stats(g, square_park(0, 0, 4), water, 0.2);
    CHECK(stats.pixels_total == 16);
    CHECK(stats.pixels_water == 8);
    CHECK(stats.mean_ndvi == 0.5);
    CHECK(stats.percent_vegetated == 100.0);
}

TEST_CASE("checkerboard raster has exact hand-computed stats") {
    std::vector<double> nir(16), red(16);
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) {
            const bool high = (row + col) % 2 == 0;
            // high: ndvi 0.4 (0.875 vs 0.375); low: ndvi 0.0 (0.25 vs 0.25)
            nir[row * 4 + col] = high ? 0.875 : 0.25;
            red[row * 4 + col] = high ? 0.375 : 0.25;
        }
    const auto stats = park_stats(grid4(std::move(nir), std::move(red)), square_park(0, 0, 4), {},
                                  0.2);
    CHECK(stats.pixels_total == 16);
    CHECK(stats.mean_ndvi == 0.2);
    CHECK(stats.percent_vegetated == 50.0);
}

TEST_CASE("nodata pixels are counted and skipped") {
    std::vector<double> nir(16, 0.75), red(16, 0.25);
    nir[0] = -9999.0;
    red[5] = -9999.0;
    RasterGrid g = grid4(std::move(nir), std::move(red));
    g.nodata = -9999.0;
    // nir+red == 0 also counts as nodata
    g.nir[10] = 0.0;
    g.red[10] = 0.0;
    const auto stats = park_stats(g, square_park(0, 0, 4), {}, 0.2);
    CHECK(stats.pixels_nodata == 3);
    CHECK(stats.mean_ndvi == 0.5);
}

TEST_CASE("a park with no valid pixels is an error naming it") {
    const RasterGrid g = grid4(std::vector<double>(16, 0.75), std::vector<double>(16, 0.25));
    try {
        park_stats(g, square_park(100, 100, 2, "far-away"), {}, 0.2);
        FAIL("expected EmptyPoolError");
    } catch (const EmptyPoolError& e) {
        CHECK(std::string(e.what()).find("far-away") != std::string::npos);
    }
}

TEST_CASE("percent vegetated never rises with the threshold") {
    rng::Engine eng(8);
    std::vector<double> nir(16), red(16);
    for (int i = 0; i < 16; ++i) {
        nir[i] = 0.05 + 0.9 * rng::uniform01(eng);
        red[i] = 0.05 + 0.9 * rng::uniform01(eng);
    }
    const RasterGrid g = grid4(std::move(nir), std::move(red));
    const ParkFacility park = square_park(0, 0, 4);
    double last = 101.0;
    for (const double threshold : {-0.5, 0.0, 0.1, 0.2, 0.4, 0.8}) {
        const auto stats = park_stats(g, park, {}, threshold);
        CHECK(stats.percent_vegetated <= last);
        last = stats.percent_vegetated;
    }
}

TEST_CASE("adding water polygons never raises the valid pixel count") {
    const RasterGrid g = grid4(std::vector<double>(16, 0.75), std::vector<double>(16, 0.25));
    const ParkFacility park = square_park(0, 0, 4);
    std::vector<PolygonWithHoles> water;
    std::uint64_t last_valid = 16;
    for (int i = 0; i < 3; ++i) {
        water.push_back(PolygonWithHoles{
            {{0.0, 0.0}, {1.0 + i, 0.0}, {1.0 + i, 2.0}, {0.0, 2.0}}, {}});
        const auto stats = park_stats(g, park, water, 0.2);
        const std::uint64_t valid = stats.pixels_total - stats.pixels_water - stats.pixels_nodata;
        CHECK(valid <= last_valid);
        last_valid = valid;
    }
}

TEST_CASE("mean ndvi stays within the contributing pixel range") {
    rng::Engine eng(21);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<double> nir(16), red(16);
        double lo = 1.0, hi = -1.0;
        for (int i = 0; i < 16; ++i) {
            nir[i] = 0.05 + 0.9 * rng::uniform01(eng);
            red[i] = 0.05 + 0.9 * rng::uniform01(eng);
            const double v = *ndvi(nir[i], red[i]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const auto stats =
            park_stats(grid4(std::move(nir), std::move(red)), square_park(0, 0, 4), {}, 0.2);
        CHECK(stats.mean_ndvi >= lo);
        CHECK(stats.mean_ndvi <= hi);
    }
}

TEST_CASE("raster json round trip") {
    RasterGrid g = grid4(std::vector<double>(16, 0.75), std::vector<double>(16, 0.25));
    g.nodata = -1.0;
    std::istringstream in(g.to_json_string());
    const RasterGrid back = RasterGrid::load_json(in);
    CHECK(back.width == 4);
    CHECK(back.height == 4);
    CHECK(back.pixel_dy == -1.0);
    CHECK(back.nodata.value() == -1.0);
    CHECK(back.nir == g.nir);
    CHECK(back.red == g.red);

    std::istringstream bad("{\"width\":2,\"height\":2,\"origin\":[0,0],\"pixel_size\":[1,-1],"
                           "\"bands\":{\"nir\":[1,2,3],\"red\":[1,2,3,4]}}");
    CHECK_THROWS_AS(RasterGrid::load_json(bad), ValidationError);
}

TEST_CASE("single facility per category echoes its values") {
    const ParkFacility regional = square_park(0, 0, 4, "r1", ParkCategory::RegionalPark);
    const ParkFacility civic = square_park(10, 10, 2, "c1", ParkCategory::CivicPlazaOrSquare);
    std::vector<ParkVegStats> stats(2);
    stats[0] = {"r1", 0.21, 79.48, 16, 0, 0};
    stats[1] = {"c1", 0.06, 45.42, 4, 0, 0};
    const auto rows = category_report(stats, std::vector<ParkFacility>{regional, civic});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].category == "Regional Park");
    CHECK(rows[0].count == 1);
    CHECK(rows[0].mean_acres == doctest::Approx(1600.0));
    CHECK(rows[0].mean_ndvi == doctest::Approx(0.21));
    CHECK(rows[0].mean_percent_vegetated == doctest::Approx(79.48));
    CHECK(rows[1].category == "Civic Plaza or Square");
}

TEST_CASE("category means are unweighted") {
    const ParkFacility a = square_park(0, 0, 2, "a", ParkCategory::RegionalPark);
    const ParkFacility b = square_park(5, 5, 4, "b", ParkCategory::RegionalPark);
    std::vector<ParkVegStats> stats(2);
    stats[0] = {"a", 0.1, 40.0, 4, 0, 0};
    stats[1] = {"b", 0.3, 60.0, 16, 0, 0};
    const auto rows = category_report(stats, std::vector<ParkFacility>{a, b});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 2);
    CHECK(rows[0].mean_ndvi == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(rows[0].mean_percent_vegetated == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("report rejects stats for unknown facilities") {
    std::vector<ParkVegStats> stats(1);
    stats[0] = {"ghost", 0.1, 40.0, 4, 0, 0};
    CHECK_THROWS_AS(category_report(stats, std::vector<ParkFacility>{}), ValidationError);
}

}  // TEST_SUITE
