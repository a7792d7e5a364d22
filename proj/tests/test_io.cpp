#include <doctest.h>

#include "sphinx/io.hpp"

using namespace sphinx;

namespace {

TilingDocument decorated_doc(int n, ParentContext ctx) {
    TilingDocument d;
    d.meta = {{"level", std::to_string(n)}, {"context", to_string(ctx)}};
    for (const auto& p : decorate_supertile(n, ctx).placements()) d.placements.push_back({p.tile, p.pose});
    return d;
}

}  // namespace

TEST_CASE("plain tiling documents round trip") {
    for (int n = 1; n <= 3; ++n) {
        TilingDocument d;
        d.meta = {{"kind", "supertile"}, {"note", "two words"}};
        SupertileNode root = generate(n, Pose{{2, -1}, 4, true});
        for (auto* l : leaves(root)) d.placements.push_back({std::nullopt, l->pose});
        auto text = serialize(d);
        CHECK(parse_tiling(text) == d);
        CHECK(serialize(parse_tiling(text)) == text);
        CHECK(parse_tiling(text).get("note") == std::optional<std::string>("two words"));
    }
}

TEST_CASE("decorated documents round trip") {
    for (auto [i, w] : valid_contexts()) {
        auto d = decorated_doc(2, {i, w});
        CHECK(parse_tiling(serialize(d)) == d);
    }
}

TEST_CASE("tileset documents round trip") {
    TilesetDocument d;
    d.tiles = verifier_tileset(false).tiles();
    d.meta = {{"closure-level", "4"}};
    auto text = serialize(d);
    CHECK(parse_tileset(text) == d);
    for (const auto& t : d.tiles) CHECK(parse_tile(describe(t)) == t);
}

TEST_CASE("headers are checked, never guessed") {
    std::string body = "place 0 0 0 0 sphinx\n";
    CHECK_NOTHROW(parse_tiling("format sphinx-tiling 1\nlattice tri-skew-1\n" + body));
    CHECK_THROWS_AS(parse_tiling("format sphinx-tiling 2\nlattice tri-skew-1\n" + body), FormatError);
    CHECK_THROWS_AS(parse_tiling("format sphinx-tiling 1\nlattice hex-axial\n" + body), FormatError);
    CHECK_THROWS_AS(parse_tiling("format sphinx-tileset 1\nlattice tri-skew-1\n" + body), FormatError);
    CHECK_THROWS_AS(parse_tiling(body), FormatError);
    CHECK_THROWS_AS(parse_tiling(""), FormatError);
}

TEST_CASE("comments, blank lines and CRLF") {
    auto d = parse_tiling("# hi\r\nformat sphinx-tiling 1\r\n\r\nlattice tri-skew-1\r\nplace 1 2 3 1 sphinx\r\n");
    REQUIRE(d.placements.size() == 1);
    CHECK(d.placements[0].pose == Pose{{1, 2}, 3, true});
}

TEST_CASE("malformed bodies") {
    std::string head = "format sphinx-tiling 1\nlattice tri-skew-1\n";
    CHECK_THROWS_AS(parse_tiling(head + "place 0 0 7 0 sphinx\n"), FormatError);
    CHECK_THROWS_AS(parse_tiling(head + "place 0 0 0 2 sphinx\n"), FormatError);
    CHECK_THROWS_AS(parse_tiling(head + "place 0 x 0 0 sphinx\n"), FormatError);
    CHECK_THROWS_AS(parse_tiling(head + "place 0 0 0 0 edge 1 U n\n"), FormatError);
    CHECK_THROWS_AS(parse_tiling(head + "place 0 0 0 0 vertex R j1ol/P0/n |\n"), FormatError);
    CHECK_THROWS_AS(parse_tiling(head + "tile edge 1 0 n 1\n"), FormatError);
    try {
        parse_tiling(head + "place 0 0 0 0 wat\n");
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("pose specs") {
    CHECK(parse_pose("3,-2,5") == Pose{{3, -2}, 5, false});
    CHECK(parse_pose("3,-2,5,m") == Pose{{3, -2}, 5, true});
    CHECK(parse_pose(pose_spec(Pose{{-1, 4}, 2, true})) == Pose{{-1, 4}, 2, true});
    CHECK_THROWS_AS(parse_pose("1,2"), FormatError);
    CHECK_THROWS_AS(parse_pose("1,2,6"), FormatError);
    CHECK_THROWS_AS(parse_pose("1,2,3,x"), FormatError);
}

TEST_CASE("region specs") {
    CHECK(parse_region("supertile:1") == supertile_region(1));
    CHECK(parse_region("supertile:2:1,1,3,m") == supertile_region(2, Pose{{1, 1}, 3, true}));
    CHECK(parse_region("cells:U0,0;D1,1;U1,0") == Region{{0, 0, Parity::Up}, {1, 0, Parity::Up}, {1, 1, Parity::Down}});
    CHECK_THROWS_AS(parse_region("cells:U0,0;U0,0"), FormatError);
    CHECK_THROWS_AS(parse_region("cells:"), FormatError);
    CHECK_THROWS_AS(parse_region("blob:3"), FormatError);
    CHECK_THROWS_AS(parse_region("supertile:x"), FormatError);
}
