#include <cmath>
#include <fstream>

#include "doctest.h"
#include "linex/io.hpp"
#include "linex/raster.hpp"
#include "tmpdir.hpp"

using namespace linex;

TEST_CASE("georef maps pixel centers and inverts exactly") {
    GeoRef g{500000.0, 4200000.0, 30.0, "EPSG:32636"};
    // pixel (0,0) center sits half a cell in from the outer corner
    const Vec2 w = g.pixel_to_world(0, 0);
    CHECK(w.x == doctest::Approx(500015.0));
    CHECK(w.y == doctest::Approx(4199985.0));

    // row direction is southward
    CHECK(g.pixel_to_world(0, 1).y < w.y);

    for (double col : {0.0, 3.25, 511.0})
        for (double row : {0.0, 17.5, 211.0}) {
            const Vec2 p = g.pixel_to_world(col, row);
            const Vec2 back = g.world_to_pixel(p.x, p.y);
            CHECK(back.x == doctest::Approx(col).epsilon(1e-12));
            CHECK(back.y == doctest::Approx(row).epsilon(1e-12));
        }

    GeoRef bad = g;
    bad.pixel_size = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("rescale_to_255 stretches the valid range") {
    GrayImage img(4, 1);
    img.at(0, 0) = 10.0;
    img.at(0, 1) = 20.0;
    img.at(0, 2) = 30.0;
    img.at(0, 3) = -999.0;
    img.set_valid(0, 3, false);

    const GrayImage out = rescale_to_255(img);
    CHECK(out.at(0, 0) == doctest::Approx(0.0));
    CHECK(out.at(0, 1) == doctest::Approx(127.5));
    CHECK(out.at(0, 2) == doctest::Approx(255.0));
    CHECK(out.at(0, 3) == 0.0);  // masked pixels pinned to zero
    CHECK(!out.is_valid(0, 3));

    // constant image maps to all zeros rather than dividing by zero
    GrayImage flat(3, 2, 7.5);
    const GrayImage fout = rescale_to_255(flat);
    for (double v : fout.values) CHECK(v == 0.0);
}

TEST_CASE("multiband round-trips through bsq + sidecar") {
    TmpDir tmp;
    MultibandRaster r(5, 4, 3, 0.0, GeoRef{1000.0, 2000.0, 10.0, "EPSG:32633"});
    for (int b = 0; b < 3; ++b)
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 5; ++x) r.at(b, y, x) = b * 100.0 + y * 5.0 + x + 0.25;
    r.nodata = -9999.0;
    r.set_valid(2, 3, false);

    const std::string path = tmp.file("cube.bsq");
    io::write_multiband(r, path);
    const MultibandRaster back = io::read_multiband(path);

    CHECK(back.width == 5);
    CHECK(back.height == 4);
    CHECK(back.bands == 3);
    CHECK(back.georef.same_grid(r.georef));
    CHECK(back.georef.epsg_hint == "EPSG:32633");
    CHECK(!back.is_valid(2, 3));
    for (int b = 0; b < 3; ++b)
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 5; ++x) {
                if (!r.is_valid(y, x)) continue;
                // float32 payload: values survive only to float precision
                CHECK(back.at(b, y, x) ==
                      doctest::Approx(static_cast<float>(r.at(b, y, x))));
            }
}

TEST_CASE("multiband reader rejects truncated payloads") {
    TmpDir tmp;
    MultibandRaster r(4, 4, 2);
    const std::string path = tmp.file("cube.bsq");
    io::write_multiband(r, path);
    // chop the payload short
    std::filesystem::resize_file(path, 10);
    CHECK_THROWS_AS(io::read_multiband(path), Error);
}

TEST_CASE("ascii grid round-trips doubles exactly") {
    TmpDir tmp;
    GrayImage img(3, 2, 0.0, GeoRef{100.0, 250.0, 25.0, ""});
    img.at(0, 0) = 0.1;  // not representable in binary; to_chars must round-trip
    img.at(0, 1) = -17.25;
    img.at(0, 2) = 3.0000000000000004;
    img.at(1, 0) = 1e-300;
    img.at(1, 1) = 12345678.875;
    img.at(1, 2) = -0.0;
    const std::string path = tmp.file("g.asc");
    io::write_ascii_grid(img, path);
    const GrayImage back = io::read_ascii_grid(path);
    CHECK(back.width == 3);
    CHECK(back.height == 2);
    CHECK(back.georef.same_grid(img.georef));
    for (std::size_t i = 0; i < img.values.size(); ++i)
        CHECK(back.values[i] == img.values[i]);  // bitwise, not approx
}

TEST_CASE("ascii grid nodata cells come back masked") {
    TmpDir tmp;
    const std::string path = tmp.file("nd.asc");
    {
        std::ofstream f(path);
        f << "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
             "NODATA_value -9999\n"
             "1 -9999\n3 4\n";
    }
    const GrayImage g = io::read_ascii_grid(path);
    CHECK(g.is_valid(0, 0));
    CHECK(!g.is_valid(0, 1));
    CHECK(g.at(1, 0) == 3.0);
    // yllcorner is the bottom edge: origin_y = yll + nrows * cellsize
    CHECK(g.georef.origin_y == 2.0);

    const std::string out = tmp.file("nd2.asc");
    io::write_ascii_grid(g, out);
    const GrayImage back = io::read_ascii_grid(out);
    CHECK(!back.is_valid(0, 1));
    CHECK(back.at(1, 1) == 4.0);
}

TEST_CASE("ascii grid parse errors carry the line number") {
    TmpDir tmp;
    const std::string path = tmp.file("bad.asc");
    {
        std::ofstream f(path);
        f << "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2\n3 oops\n";
    }
    try {
        io::read_ascii_grid(path);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":7") != std::string::npos);
    }
}

TEST_CASE("lineaments round-trip through geojson") {
    TmpDir tmp;
    LineamentSet set;
    set.georef = {5000.0, 80000.0, 15.0, "EPSG:32610"};
    set.provenance = "test";
    Lineament a;
    a.id = 3;
    a.vertices = {{10.0, 20.0}, {30.0, 25.0}, {31.0, 40.0}};
    Lineament b;
    b.id = 7;
    b.vertices = {{100.25, 4.5}, {90.0, 60.0}};
    set.lines = {a, b};

    const std::string path = tmp.file("l.geojson");
    io::write_lineaments(set, path, io::VectorFormat::geojson);
    const LineamentSet back = io::read_lineaments_geojson(path);

    REQUIRE(back.lines.size() == 2);
    CHECK(back.georef.same_grid(set.georef));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.lines[i].id == set.lines[i].id);
        REQUIRE(back.lines[i].vertices.size() == set.lines[i].vertices.size());
        for (std::size_t v = 0; v < set.lines[i].vertices.size(); ++v) {
            CHECK(back.lines[i].vertices[v].x ==
                  doctest::Approx(set.lines[i].vertices[v].x).epsilon(1e-9));
            CHECK(back.lines[i].vertices[v].y ==
                  doctest::Approx(set.lines[i].vertices[v].y).epsilon(1e-9));
        }
    }
}

TEST_CASE("lineament lengths and azimuths") {
    Lineament l;
    l.vertices = {{0.0, 0.0}, {3.0, 4.0}};
    CHECK(l.pixel_length() == doctest::Approx(5.0));
    GeoRef g;
    g.pixel_size = 30.0;
    CHECK(l.world_length(g) == doctest::Approx(150.0));

    // pixel coords: +y is south, so (0,0)->(1,1) heads southeast = azimuth 135
    Lineament d;
    d.vertices = {{0.0, 0.0}, {1.0, 1.0}};
    CHECK(d.mean_azimuth_deg() == doctest::Approx(135.0));

    // the mean is length-weighted and undirected
    Lineament two;
    two.vertices = {{0.0, 0.0}, {10.0, 0.0}, {20.0, 0.0}};
    CHECK(two.mean_azimuth_deg() == doctest::Approx(90.0));
}

TEST_CASE("azimuth helpers fold into [0,180)") {
    CHECK(azimuth_from_en(0.0, 1.0) == doctest::Approx(0.0));
    CHECK(azimuth_from_en(1.0, 0.0) == doctest::Approx(90.0));
    CHECK(azimuth_from_en(-1.0, 0.0) == doctest::Approx(90.0));  // undirected
    CHECK(azimuth_from_en(1.0, 1.0) == doctest::Approx(45.0));
    CHECK(azimuth_from_en(-1.0, 1.0) == doctest::Approx(135.0));
    CHECK(azimuth_diff(170.0, 10.0) == doctest::Approx(20.0));
    CHECK(azimuth_diff(5.0, 175.0) == doctest::Approx(10.0));
}

TEST_CASE("occurrence csv round-trip and validation") {
    TmpDir tmp;
    PointSet pts;
    pts.points = {{1.5, 2.5, "gold"}, {3.25, -4.0, ""}};
    const std::string path = tmp.file("occ.csv");
    io::write_occurrences(pts, path);
    const PointSet back = io::read_occurrences(path);
    REQUIRE(back.points.size() == 2);
    CHECK(back.points[0].x == 1.5);
    CHECK(back.points[0].label == "gold");
    CHECK(back.points[1].y == -4.0);

    const std::string bad = tmp.file("bad.csv");
    {
        std::ofstream f(bad);
        f << "x,y\n1,notanumber\n";
    }
    CHECK_THROWS_AS(io::read_occurrences(bad), Error);
}
