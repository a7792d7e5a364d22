#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sphinx/lattice.hpp"

using namespace sphinx;

TEST_CASE("cell corners follow the skew convention") {
    CHECK(corners({2, 3, Parity::Up}) == std::array<Vtx, 3>{{{2, 3}, {3, 3}, {2, 4}}});
    auto d = corners({2, 3, Parity::Down});
    std::set<Vtx> got(d.begin(), d.end());
    CHECK(got == std::set<Vtx>{{2, 3}, {3, 3}, {3, 2}});
    // Up and Down with the same index share the horizontal edge
    auto ec = edge_cells(make_edge({2, 3}, {3, 3}));
    std::set<TriCell> both(ec.begin(), ec.end());
    CHECK(both == std::set<TriCell>{{2, 3, Parity::Up}, {2, 3, Parity::Down}});
}

TEST_CASE("C3 coordinates round trip and reject non-cells") {
    for (int c = -3; c <= 3; ++c)
        for (int r = -3; r <= 3; ++r)
            for (auto p : {Parity::Up, Parity::Down}) CHECK(from_c3(to_c3({c, r, p})) == TriCell{c, r, p});
    CHECK_THROWS_AS(from_c3({0, 0}), std::invalid_argument);
}

TEST_CASE("unit steps and sectors") {
    for (int k = 0; k < 6; ++k) {
        CHECK(dir_index(kDirs[k]) == k);
        Vtx v{1, -2};
        auto cs = corners(sector_cell(v, k));
        std::set<Vtx> s(cs.begin(), cs.end());
        CHECK(s == std::set<Vtx>{v, v + kDirs[k], v + kDirs[(k + 1) % 6]});
    }
    CHECK(dir_index({1, 1}) == -1);
}

TEST_CASE("linear maps form the dihedral group of order 12") {
    auto ls = all_lins();
    std::set<Lin> distinct(ls.begin(), ls.end());
    CHECK(distinct.size() == 12);
    for (Lin a : ls) {
        CHECK(lin_mul(a, lin_inv(a)) == Lin{});
        for (Lin b : ls)
            for (Vtx v : {Vtx{1, 0}, Vtx{0, 1}, Vtx{2, -5}}) {
                CHECK(lin_apply(lin_mul(a, b), v) == lin_apply(a, lin_apply(b, v)));
                CHECK(lin_apply(a, v) == oracle::act(v, a.rot, a.ref));
            }
    }
}

TEST_CASE("pose composition, inverse and identity") {
    std::vector<Pose> ps;
    for (Lin l : all_lins()) ps.push_back(Pose::from({l.rot - 2, 3 - l.rot}, l));
    for (const auto& a : ps) {
        CHECK(compose_poses(a, invert_pose(a)) == identity_pose());
        CHECK(compose_poses(identity_pose(), a) == a);
        for (const auto& b : ps)
            for (Vtx v : {Vtx{0, 0}, Vtx{4, -1}}) {
                CHECK(apply(compose_poses(a, b), v) == apply(a, apply(b, v)));
                CHECK(apply_inverse(a, apply(a, v)) == v);
            }
    }
}

TEST_CASE("the canonical sphinx") {
    auto cells = canonical_sphinx().cells;
    CHECK(cells.size() == 6);
    auto want = oracle::sphinx_cells(1, {0, 0}, 0, false);
    CHECK(std::set<TriCell>(cells.begin(), cells.end()) == want);

    auto b = boundary(cells);
    REQUIRE(b.size() == 8);  // unit segments: base 3, sides 1, 1, 1, 2
    const auto& sb = sphinx_boundary_vertices();
    for (int k = 0; k < 8; ++k) {
        CHECK(b[k].from == sb[k]);
        CHECK(sb[k] == oracle::sphinx_outline()[k]);
    }
}

TEST_CASE("sphinx placements: chirality and 12 distinct classes") {
    std::set<std::set<TriCell>> shapes;
    for (Lin l : all_lins()) {
        auto placed = place(canonical_sphinx(), Pose::from({0, 0}, l));
        std::set<TriCell> s(placed.begin(), placed.end());
        CHECK(s == oracle::sphinx_cells(1, {0, 0}, l.rot, l.ref));
        // normalize by translation
        auto m = *s.begin();
        std::set<TriCell> n;
        for (auto c : s) n.insert({c.col - m.col, c.row - m.row, c.parity});
        shapes.insert(n);
    }
    CHECK(shapes.size() == 12);  // no symmetry: mirror images are distinct shapes
}

TEST_CASE("boundary of a region with a hole or two pieces") {
    CHECK_THROWS_AS(boundary({{0, 0, Parity::Up}, {5, 5, Parity::Up}}), Disconnected);
    std::vector<TriCell> ring;
    for (int k = 0; k < 6; ++k) ring.push_back(sector_cell({0, 0}, k));
    std::vector<TriCell> outer;
    // the 18-cell ring of side-2 hexagon minus its 6 centre cells
    for (int c = -3; c <= 3; ++c)
        for (int r = -3; r <= 3; ++r)
            for (auto p : {Parity::Up, Parity::Down}) {
                TriCell t{c, r, p};
                auto cs = corners(t);
                bool in = true, centre = false;
                for (auto v : cs) {
                    int d = std::max({std::abs(v.x), std::abs(v.y), std::abs(v.x + v.y)});
                    in = in && d <= 2;
                }
                for (auto& q : ring) centre = centre || q == t;
                if (in && !centre) outer.push_back(t);
            }
    CHECK(outer.size() == 18);
    CHECK_THROWS_AS(boundary(outer), NotSimplyConnected);
}

TEST_CASE("cartesian embedding") {
    auto c = to_cartesian({1, 1});
    CHECK(c.x == doctest::Approx(1.5));
    CHECK(c.y == doctest::Approx(std::sqrt(3.0) / 2));
}
