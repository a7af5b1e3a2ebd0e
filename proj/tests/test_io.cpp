#include <doctest.h>

#include <sstream>

#include "zeroset/io.hpp"
#include "zeroset/subdivide.hpp"

using zeroset::Box;
using zeroset::Enclosure;
using zeroset::EnclosureBox;
using zeroset::Interval;
using zeroset::SolveOptions;
using zeroset::SparsePoly;

namespace {

Enclosure sample_enclosure() {
    Enclosure enc;
    enc.domain = {Interval(-2, 2), Interval(-2, 2)};
    enc.included.push_back(EnclosureBox{3, {1, 5}});
    enc.included.push_back(EnclosureBox{3, {2, 5}});
    enc.undetermined.push_back(EnclosureBox{4, {9, 0}});
    return enc;
}

} // namespace

TEST_CASE("boxes text format") {
    std::ostringstream os;
    zeroset::write_boxes_text(os, sample_enclosure());
    CHECK(os.str() ==
          "# domain -2 2 -2 2\n"
          "# k 2\n"
          "Z 3 1 5\n"
          "Z 3 2 5\n"
          "U 4 9 0\n");
}

TEST_CASE("json round trip") {
    auto enc = sample_enclosure();
    std::ostringstream os;
    zeroset::write_boxes_json(os, enc);
    std::istringstream is(os.str());
    auto back = zeroset::read_boxes_json(is);
    REQUIRE(back.domain.size() == enc.domain.size());
    for (std::size_t i = 0; i < enc.domain.size(); ++i) CHECK(back.domain[i] == enc.domain[i]);
    CHECK(back.included == enc.included);
    CHECK(back.undetermined == enc.undetermined);
}

TEST_CASE("json round trip on a solver run") {
    auto F = SparsePoly<double>::from_terms(2, {{{0, 0}, -1.0}, {{2, 0}, 1.0}, {{0, 2}, 1.0}});
    SolveOptions opt;
    opt.min_size = 0.25;
    opt.max_depth = 7;
    auto enc = subdivide_enclose({F}, {}, Box{Interval(-2, 2), Interval(-2, 2)}, opt);
    std::ostringstream os;
    zeroset::write_boxes_json(os, enc);
    std::istringstream is(os.str());
    auto back = zeroset::read_boxes_json(is);
    CHECK(back.included == enc.included);
    CHECK(back.undetermined == enc.undetermined);
}

TEST_CASE("obj export") {
    Enclosure enc;
    enc.domain = {Interval(0, 1), Interval(0, 1), Interval(0, 1)};
    enc.included.push_back(EnclosureBox{0, {0, 0, 0}});
    std::ostringstream os;
    zeroset::write_boxes_obj(os, enc);
    std::istringstream is(os.str());
    std::string line;
    int verts = 0, faces = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) ++verts;
        if (line.rfind("f ", 0) == 0) ++faces;
    }
    CHECK(verts == 8);
    CHECK(faces == 12);

    // Two adjacent boxes: 16 vertices, no welding.
    enc.included.push_back(EnclosureBox{1, {0, 0, 0}});
    std::ostringstream os2;
    zeroset::write_boxes_obj(os2, enc);
    std::istringstream is2(os2.str());
    verts = faces = 0;
    while (std::getline(is2, line)) {
        if (line.rfind("v ", 0) == 0) ++verts;
        if (line.rfind("f ", 0) == 0) ++faces;
    }
    CHECK(verts == 16);
    CHECK(faces == 24);

    // Empty enclosures produce a valid empty mesh.
    Enclosure empty;
    empty.domain = enc.domain;
    std::ostringstream os3;
    zeroset::write_boxes_obj(os3, empty);
    CHECK(os3.str().empty());

    Enclosure flat;
    flat.domain = {Interval(0, 1), Interval(0, 1)};
    std::ostringstream os4;
    CHECK_THROWS_AS(zeroset::write_boxes_obj(os4, flat), zeroset::DimensionUnsupportedError);
}

TEST_CASE("boxes text output is byte-identical across worker counts") {
    auto F = SparsePoly<double>::from_terms(2, {{{0, 0}, -1.0}, {{2, 0}, 1.0}, {{0, 2}, 1.0}});
    Box domain = {Interval(-2, 2), Interval(-2, 2)};
    SolveOptions opt;
    opt.min_size = 0.125;
    opt.max_depth = 8;
    std::string base;
    for (int workers : {1, 2, 4}) {
        opt.workers = workers;
        auto enc = subdivide_enclose({F}, {}, domain, opt);
        std::ostringstream os;
        zeroset::write_boxes_text(os, enc);
        if (workers == 1)
            base = os.str();
        else
            REQUIRE(os.str() == base);
    }
}
