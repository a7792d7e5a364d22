#include <doctest.h>

#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "sphinx/substitution.hpp"

using namespace sphinx;

namespace {

std::vector<Pose> all_poses() {
    std::vector<Pose> ps;
    for (Lin l : all_lins()) ps.push_back(Pose::from({2 * l.rot - 5, l.ref ? 3 : -1}, l));
    return ps;
}

}  // namespace

TEST_CASE("rep-4 partition for every pose class") {
    for (const Pose& p : all_poses()) {
        CAPTURE(to_string(p));
        auto want = oracle::sphinx_cells(2, p.anchor, p.rotation, p.reflected);
        REQUIRE(want.size() == 24);
        std::set<TriCell> seen;
        std::size_t total = 0;
        for (const auto& [idx, cp] : substitute(p)) {
            auto cells = place(canonical_sphinx(), cp);
            total += cells.size();
            seen.insert(cells.begin(), cells.end());
        }
        CHECK(total == 24);
        CHECK(seen == want);
        auto st = supertile_cells(1, p);
        CHECK(std::set<TriCell>(st.begin(), st.end()) == want);
    }
}

TEST_CASE("child labels are ordered by least cell") {
    auto kids = substitute(identity_pose());
    std::vector<TriCell> least;
    for (int i = 0; i < 4; ++i) {
        CHECK(kids[i].first == i);
        auto cells = place(canonical_sphinx(), kids[i].second);
        least.push_back(*std::min_element(cells.begin(), cells.end()));
    }
    CHECK(std::is_sorted(least.begin(), least.end()));
}

TEST_CASE("parent_pose inverts substitute") {
    for (const Pose& p : all_poses())
        for (int lvl : {1, 2})
            for (const auto& [i, c] : substitute(p, lvl)) CHECK(parent_pose(c, i, lvl - 1) == canonical(p));
}

TEST_CASE("generate: census and nesting") {
    for (int n = 0; n <= 4; ++n) {
        SupertileNode root = generate(n, all_poses()[7]);
        auto ls = leaves(root);
        CHECK(ls.size() == (std::size_t{1} << (2 * n)));
        std::set<TriCell> cells;
        for (auto* l : ls) {
            auto cs = place(canonical_sphinx(), l->pose);
            cells.insert(cs.begin(), cs.end());
        }
        CHECK(cells.size() == 6 * ls.size());
        Pose rp = root.pose;
        CHECK(cells == oracle::sphinx_cells(1 << n, rp.anchor, rp.rotation, rp.reflected));
        for (auto* node : all_nodes(root)) CHECK(&node_at(root, node->path) == node);
    }
}

TEST_CASE("decompose recovers the root for levels 1..3 and all pose classes") {
    for (const Pose& p : all_poses())
        for (int n = 1; n <= 3; ++n) {
            SupertileNode root = generate(n, p);
            Patch patch;
            for (auto* l : leaves(root)) patch.push_back(l->pose);
            for (int lvl = 0; lvl < n; ++lvl) {
                auto gs = decompose(patch, lvl);
                REQUIRE(gs.size() == 1);
                patch = gs[0].parents;
            }
            REQUIRE(patch.size() == 1);
            CHECK(patch[0] == canonical(p));
        }
}

TEST_CASE("decompose of a patch that is not a union of parents") {
    SupertileNode root = generate(1);
    Patch patch;
    for (auto* l : leaves(root)) patch.push_back(l->pose);
    patch.pop_back();
    CHECK(decompose(patch, 0).empty());
}

TEST_CASE("resource cap") {
    CHECK(max_leaves() >= (std::size_t{1} << 10));
    CHECK_THROWS_AS(generate(30), ResourceLimit);
}
