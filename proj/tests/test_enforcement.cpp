#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sphinx/enforcement.hpp"

using namespace sphinx;

TEST_CASE("supertile regions") {
    auto r = supertile_region(2);
    CHECK(r.size() == 96);
    CHECK(std::is_sorted(r.begin(), r.end(), row_major_less));
    CHECK(std::set<TriCell>(r.begin(), r.end()) == oracle::sphinx_cells(4, {0, 0}, 0, false));
}

TEST_CASE("plain tiling counts agree with an independent tiler") {
    for (int n = 0; n <= 2; ++n) {
        auto r = supertile_region(n);
        auto c = count_plain_tilings(r);
        CHECK(!c.capped);
        CHECK(c.count == static_cast<std::uint64_t>(oracle::count_tilings({r.begin(), r.end()})));
    }
    // frozen: the level-2 region admits 16 sphinx tilings, only one of them
    // the substitution tiling
    CHECK(count_plain_tilings(supertile_region(1)).count == 1);
    CHECK(count_plain_tilings(supertile_region(2)).count == 16);
}

TEST_CASE("plain counts on small odd regions") {
    // a 2x sphinx with one corner cell removed cannot be tiled
    auto r = supertile_region(1);
    r.erase(r.begin());
    CHECK(count_plain_tilings(r).count == 0);
    // two sphinxes side by side
    auto a = supertile_region(0), b = supertile_region(0, Pose{{3, 0}, 0, false});
    Region ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    std::sort(ab.begin(), ab.end(), row_major_less);
    CHECK(count_plain_tilings(ab).count == static_cast<std::uint64_t>(oracle::count_tilings({ab.begin(), ab.end()})));
}

TEST_CASE("plain search witnesses cover the region") {
    SearchOptions o;
    o.witnesses = 100;
    auto r = supertile_region(2);
    auto c = count_plain_tilings(r, o);
    REQUIRE(c.samples.size() == 16);
    for (const auto& poses : c.samples) {
        std::set<TriCell> cells;
        for (const auto& p : poses) {
            auto cs = place(canonical_sphinx(), p);
            cells.insert(cs.begin(), cs.end());
        }
        CHECK(cells == std::set<TriCell>(r.begin(), r.end()));
    }
}

TEST_CASE("cap and thread count") {
    SearchOptions o;
    o.cap = 5;
    auto c = count_plain_tilings(supertile_region(2), o);
    CHECK(c.count == 5);
    CHECK(c.capped);
    SearchOptions t1, t3;
    t1.witnesses = t3.witnesses = 100;
    t3.threads = 3;
    auto a = count_plain_tilings(supertile_region(2), t1), b = count_plain_tilings(supertile_region(2), t3);
    CHECK(a.count == b.count);
    CHECK(a.samples == b.samples);
}

TEST_CASE("marked tilings of the level-1 region are the six decorations") {
    SearchOptions o;
    o.witnesses = 10;
    auto c = count_marked_tilings(supertile_region(1), verifier_tileset(false), o);
    CHECK(c.count == 6);
    CHECK(c.geometries == 1);
    for (const auto& t : c.samples) CHECK(check_matching(t.placements()).ok());
}

TEST_CASE("marked tilings force the level-2 geometry") {
    SearchOptions o;
    o.witnesses = 1000;
    auto c = count_marked_tilings(supertile_region(2), verifier_tileset(false), o);
    CHECK(c.geometries == 16);
    SupertileNode root = generate(2);
    std::vector<Pose> want;
    for (auto* l : leaves(root)) want.push_back(l->pose);
    std::sort(want.begin(), want.end());
    REQUIRE(!c.samples.empty());
    for (const auto& t : c.samples) {
        auto got = t.poses;
        std::sort(got.begin(), got.end());
        CHECK(got == want);
        CHECK(check_matching(t.placements()).ok());
    }
}

TEST_CASE("enforcement at level 1") {
    Evidence ev = verify_enforcement(1, 0);
    CHECK(ev.verdict == Verdict::Pass);
    CHECK(ev.geometries == 1);
    CHECK(ev.labelings == 6);
    CHECK(ev.non_decorations == 0);
    CHECK(ev.matched.size() == 6);
    CHECK(ev.core_cells == 24);
}

TEST_CASE("the channel-3-stripped control does not pass at level 2") {
    VerifyOptions o;
    o.strip3 = true;
    Evidence ev = verify_enforcement(2, 1, o);
    CHECK(ev.verdict == Verdict::Fail);
    REQUIRE(ev.counterexample);
    CHECK(check_matching(ev.counterexample->placements()).ok());
    CHECK(ev.counterexample_diff > 0);
}

TEST_CASE("a capped search is never a pass") {
    VerifyOptions o;
    o.cap = 2;
    Evidence ev = verify_enforcement(1, 0, o);
    CHECK(ev.verdict == Verdict::Inconclusive);
}

TEST_CASE("verdicts do not depend on the thread count") {
    VerifyOptions a, b;
    b.threads = 4;
    a.strip3 = b.strip3 = true;
    CHECK(verify_enforcement(2, 1, a).summary() == verify_enforcement(2, 1, b).summary());
}

TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(verify_enforcement(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(verify_enforcement(1, -1), std::invalid_argument);
    CHECK_THROWS_AS(count_plain_tilings({}), std::invalid_argument);
}
