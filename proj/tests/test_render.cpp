#include <doctest.h>

#include "sphinx/render.hpp"

using namespace sphinx;

namespace {

std::size_t count_of(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

std::string golden(const std::string& name) { return read_file(std::string(SPHINX_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST_CASE("one closed tile path per placement") {
    auto d = decorate_supertile(2, {2, Terminal::B});
    auto svg = render_tiling(d);
    CHECK(count_of(svg, "<path class=\"tile ") == d.placements().size());
    CHECK(count_of(svg, " Z\"") == d.placements().size());
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("-0.000") == std::string::npos);
}

TEST_CASE("plain sphinxes") {
    std::vector<DocPlacement> ps;
    SupertileNode root = generate(1);
    for (auto* l : leaves(root)) ps.push_back({std::nullopt, l->pose});
    auto svg = render_tiling(ps);
    CHECK(count_of(svg, "class=\"tile sphinx\"") == 4);
    CHECK(render_tiling(std::vector<DocPlacement>{}).find("viewBox=\"0.000 0.000 1.000 1.000\"") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    auto d = decorate_supertile(2, {0, Terminal::A});
    CHECK(render_tiling(d) == render_tiling(d));
    auto tiles = verifier_tileset(false).tiles();
    CHECK(render_catalog(tiles) == render_catalog(tiles));
    CHECK(count_of(render_catalog(tiles), "<g class=\"entry\">") == tiles.size());
}

TEST_CASE("labels become titles") {
    auto d = decorate_supertile(1, {0, Terminal::A});
    RenderOptions o;
    o.labels = true;
    auto svg = render_tiling(d, o);
    CHECK(count_of(svg, "<title>") == d.placements().size());
}

TEST_CASE("golden files") {
    CHECK(render_tiling(decorate_supertile(1, {0, Terminal::A})) == golden("level1_S0A.svg"));
    CHECK(render_catalog(verifier_tileset(false).tiles()) == golden("catalog.svg"));
}
