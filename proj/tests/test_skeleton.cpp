#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sphinx/skeleton.hpp"

using namespace sphinx;

namespace {

// owner by lowest common ancestor of the two leaves beside the edge
std::map<Edge, std::vector<int>> lca_owners(const SupertileNode& root) {
    std::map<TriCell, std::vector<int>> path_of;
    for (auto* l : leaves(root))
        for (auto c : place(canonical_sphinx(), l->pose)) path_of[c] = l->path;
    std::map<Edge, std::vector<int>> out;
    for (const auto& [c, p] : path_of)
        for (const auto& e : cell_edges(c)) {
            auto ec = edge_cells(e);
            auto a = path_of.find(ec[0]), b = path_of.find(ec[1]);
            if (a == path_of.end() || b == path_of.end() || a->second == b->second) continue;
            std::vector<int> common;
            for (std::size_t i = 0; i < a->second.size() && a->second[i] == b->second[i]; ++i)
                common.push_back(a->second[i]);
            out[e] = common;
        }
    return out;
}

}  // namespace

TEST_CASE("kappa = 1: every interior tiling edge has exactly one owner") {
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        SupertileNode root = generate(n);
        Ownership own = edge_ownership(root);
        auto want = lca_owners(root);
        std::size_t owned = 0;
        for (const auto& [e, s] : own) {
            if (s.ambient) {
                CHECK(s.owner_level == n + 1);
                continue;
            }
            ++owned;
            REQUIRE(want.count(e));
            CHECK(s.owner_path == want.at(e));
            CHECK(s.owner_level == n - static_cast<int>(s.owner_path.size()));
        }
        CHECK(owned == want.size());
        if (n == 1)
            for (const auto& [e, s] : own) CHECK((s.ambient || s.owner_level == 1));
    }
}

TEST_CASE("skeleton sizes and pattern") {
    CHECK(skeleton_pattern().size() == 8);
    CHECK(skeleton_terminals() == std::vector<Vtx>{{0, 1}, {2, 2}, {3, 0}, {4, 2}});
    SupertileNode root = generate(3);
    Ownership own = edge_ownership(root);
    for (auto* node : all_nodes(root)) {
        if (node->level == 0) continue;
        auto sk = skeleton_of(*node, own);
        CHECK(sk.size() == 8u << (node->level - 1));
        for (const auto& s : sk) CHECK(s.owner_path == node->path);
    }
}

TEST_CASE("level-2 skeleton edges come in collinear runs of two") {
    SupertileNode root = generate(2);
    Ownership own = edge_ownership(root);
    auto sk = skeleton_of(root, own);
    REQUIRE(sk.size() == 16);
    for (std::size_t i = 0; i < sk.size(); i += 2) {
        CHECK(sk[i].position == sk[i + 1].position);
        CHECK(sk[i].direction.to == sk[i + 1].direction.from);
        CHECK(sk[i].direction.to - sk[i].direction.from == sk[i + 1].direction.to - sk[i + 1].direction.from);
    }
}

TEST_CASE("skeleton labels are pose-equivariant") {
    SupertileNode base = generate(2);
    Ownership ob = edge_ownership(base);
    auto sb = skeleton_of(base, ob);
    for (Lin l : all_lins()) {
        Pose p = Pose::from({l.rot, -l.rot}, l);
        SupertileNode moved = generate(2, p);
        Ownership om = edge_ownership(moved);
        auto sm = skeleton_of(moved, om);
        REQUIRE(sm.size() == sb.size());
        for (std::size_t i = 0; i < sb.size(); ++i) {
            CHECK(sm[i].position == sb[i].position);
            CHECK(sm[i].direction.from == apply(p, sb[i].direction.from));
            CHECK(sm[i].direction.to == apply(p, sb[i].direction.to));
        }
    }
}

TEST_CASE("two epivertices per node, on the base, equivariant") {
    for (Lin l : all_lins()) {
        Pose p = Pose::from({3, -1}, l);
        SupertileNode root = generate(3, p);
        for (auto* node : all_nodes(root)) {
            if (node->level == 0) continue;
            auto ev = epivertices(*node);
            CHECK(ev[0].vertex != ev[1].vertex);
            CHECK(ev[0].kind == Terminal::A);
            CHECK(ev[1].kind == Terminal::B);
            int s = 1 << node->level;
            CHECK(ev[0].vertex == apply(node->pose, Vtx{0, 0}));
            CHECK(ev[1].vertex == apply(node->pose, oracle::sphinx_outline()[3] * s));
        }
    }
}

TEST_CASE("vertex substitution is total, single valued and goes down one level") {
    SupertileNode root = generate(3);
    for (auto* node : all_nodes(root)) {
        if (node->level < 2) continue;
        for (const auto& e : epivertices(*node)) {
            Epivertex c = vertex_substitution(root, e);
            CHECK(c.vertex == e.vertex);
            CHECK(c.level == e.level - 1);
            CHECK(c.kind == swap(e.kind));
            CHECK(vertex_substitution(root, e) == c);
        }
    }
    Epivertex bogus{{1, 1}, {}, 3, Terminal::A};
    CHECK_THROWS_AS(vertex_substitution(root, bogus), NotAnEpivertex);
}

TEST_CASE("wire routes are least paths on the skeleton") {
    SupertileNode root = generate(3);
    Ownership own = edge_ownership(root);
    for (auto* node : all_nodes(root)) {
        if (node->level == 0) continue;
        std::vector<Edge> edges;
        for (const auto& s : skeleton_of(*node, own)) edges.push_back(s.edge);
        for (Terminal t : {Terminal::A, Terminal::B}) {
            VertexWire w = route_vertex_wire(*node, t, own);
            REQUIRE(!w.vertices.empty());
            CHECK(w.vertices == oracle::least_path(edges, w.vertices.front(), w.vertices.back()));
            CHECK(w.vertices.front() == origin_vertex(*node));
            std::set<Edge> sk(edges.begin(), edges.end());
            for (const auto& e : w.edges()) CHECK(sk.count(e));
        }
    }
}

TEST_CASE("wire chains end on the two epivertices") {
    SupertileNode root = generate(3);
    Ownership own = edge_ownership(root);
    auto ev = epivertices(root);
    std::set<Vtx> ends;
    for (Terminal t : {Terminal::A, Terminal::B}) {
        WireChain ch = trace_wire(root, root, t, own);
        CHECK(ch.segments.size() == 3);
        CHECK(ch.terminal == ev[static_cast<int>(t)].vertex);
        ends.insert(ch.terminal);
    }
    CHECK(ends.size() == 2);
}

TEST_CASE("wires use only part of the skeletons") {
    std::set<Edge> all, used;
    for (int n = 1; n <= 3; ++n) {
        SupertileNode root = generate(n);
        Ownership own = edge_ownership(root);
        for (auto* node : all_nodes(root)) {
            if (node->level == 0) continue;
            for (const auto& s : skeleton_of(*node, own)) all.insert(s.edge);
            for (Terminal t : {Terminal::A, Terminal::B})
                for (const auto& e : route_vertex_wire(*node, t, own).edges()) used.insert(e);
        }
    }
    CHECK(!used.empty());
    CHECK(used.size() < all.size());
}

TEST_CASE("shortest_path reports unreachable targets") {
    std::vector<Edge> edges{make_edge({0, 0}, {1, 0})};
    CHECK_THROWS_AS(shortest_path(edges, {0, 0}, {5, 5}), Unroutable);
    CHECK(shortest_path(edges, {0, 0}, {1, 0}) == std::vector<Vtx>{{0, 0}, {1, 0}});
}

TEST_CASE("valid parent contexts") {
    auto cs = valid_contexts();
    CHECK(cs.size() == 7);
    CHECK(!cs[0].first);
    CHECK(!valid_context(0, std::nullopt));
    for (int i = 0; i < 4; ++i) CHECK(valid_context(i, default_child_wire(i)));
}
