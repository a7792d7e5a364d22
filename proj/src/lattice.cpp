#include "sphinx/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <set>

namespace sphinx {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

int floordiv(int a, int m) { return (a - mod(a, m)) / m; }

Vtx rot60(Vtx v) { return {-v.y, v.x + v.y}; }
Vtx flip(Vtx v) { return {v.x + v.y, -v.y}; }

}  // namespace

int dir_index(Vtx step) {
    for (int k = 0; k < 6; ++k)
        if (kDirs[k] == step) return k;
    return -1;
}

C3 to_c3(const TriCell& c) {
    if (c.parity == Parity::Up) return {3 * c.col + 1, 3 * c.row + 1};
    return {3 * c.col + 2, 3 * c.row - 1};
}

TriCell from_c3(C3 p) {
    if (mod(p.x, 3) == 1 && mod(p.y, 3) == 1)
        return {floordiv(p.x, 3), floordiv(p.y, 3), Parity::Up};
    if (mod(p.x, 3) == 2 && mod(p.y, 3) == 2)
        return {floordiv(p.x, 3), floordiv(p.y + 1, 3), Parity::Down};
    throw std::invalid_argument("not a cell centroid");
}

std::array<Vtx, 3> corners(const TriCell& c) {
    if (c.parity == Parity::Up) return {{{c.col, c.row}, {c.col + 1, c.row}, {c.col, c.row + 1}}};
    return {{{c.col, c.row}, {c.col + 1, c.row - 1}, {c.col + 1, c.row}}};
}

bool row_major_less(const TriCell& a, const TriCell& b) {
    C3 p = to_c3(a), q = to_c3(b);
    return std::tie(p.y, p.x) < std::tie(q.y, q.x);
}

Edge make_edge(Vtx p, Vtx q) { return p < q ? Edge{p, q} : Edge{q, p}; }

std::array<Edge, 3> cell_edges(const TriCell& c) {
    auto v = corners(c);
    return {make_edge(v[0], v[1]), make_edge(v[1], v[2]), make_edge(v[2], v[0])};
}

TriCell sector_cell(Vtx v, int k) {
    Vtx a = kDirs[mod(k, 6)], b = kDirs[mod(k + 1, 6)];
    return from_c3({3 * v.x + a.x + b.x, 3 * v.y + a.y + b.y});
}

std::array<TriCell, 2> edge_cells(const Edge& e) {
    int k = dir_index(e.b - e.a);
    if (k < 0) throw std::invalid_argument("not a unit edge");
    return {sector_cell(e.a, k), sector_cell(e.a, k - 1)};
}

Lin lin_mul(Lin a, Lin b) { return {mod(a.rot + (a.ref ? -b.rot : b.rot), 6), a.ref != b.ref}; }

Lin lin_inv(Lin a) { return a.ref ? Lin{mod(a.rot, 6), true} : Lin{mod(-a.rot, 6), false}; }

Vtx lin_apply(Lin l, Vtx v) {
    if (l.ref) v = flip(v);
    for (int i = 0; i < mod(l.rot, 6); ++i) v = rot60(v);
    return v;
}

std::array<Lin, 12> all_lins() {
    std::array<Lin, 12> out;
    for (int f = 0; f < 2; ++f)
        for (int r = 0; r < 6; ++r) out[f * 6 + r] = {r, f == 1};
    return out;
}

Pose canonical(Pose p) {
    p.rotation = mod(p.rotation, 6);
    return p;
}

Pose identity_pose() { return {}; }

Pose compose_poses(const Pose& a, const Pose& b) {
    Lin l = lin_mul(a.lin(), b.lin());
    return Pose::from(lin_apply(a.lin(), b.anchor) + a.anchor, l);
}

Pose invert_pose(const Pose& a) {
    Lin li = lin_inv(a.lin());
    return Pose::from(lin_apply(li, a.anchor) * -1, li);
}

Vtx apply(const Pose& p, Vtx v) { return lin_apply(p.lin(), v) + p.anchor; }

Vtx apply_inverse(const Pose& p, Vtx v) { return lin_apply(lin_inv(p.lin()), v - p.anchor); }

TriCell apply(const Pose& p, const TriCell& c) {
    C3 q = to_c3(c);
    Vtx w = lin_apply(p.lin(), {q.x, q.y});
    return from_c3({w.x + 3 * p.anchor.x, w.y + 3 * p.anchor.y});
}

Edge apply(const Pose& p, const Edge& e) { return make_edge(apply(p, e.a), apply(p, e.b)); }

const SphinxShape& canonical_sphinx() {
    static const SphinxShape s{{{0, 0, Parity::Up},
                                {1, 0, Parity::Up},
                                {2, 0, Parity::Up},
                                {0, 1, Parity::Down},
                                {1, 1, Parity::Down},
                                {0, 1, Parity::Up}}};
    return s;
}

const std::array<Vtx, 8>& sphinx_boundary_vertices() {
    static const std::array<Vtx, 8> sb{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {2, 1}, {1, 1}, {0, 2}, {0, 1}}};
    return sb;
}

std::vector<TriCell> place(const SphinxShape& shape, const Pose& pose) {
    std::vector<TriCell> out;
    out.reserve(shape.cells.size());
    for (const auto& c : shape.cells) out.push_back(apply(pose, c));
    return out;
}

std::array<TriCell, 4> subdivide(const TriCell& c) {
    C3 s = to_c3(c);
    auto v = corners(c);
    std::array<TriCell, 4> out;
    for (int i = 0; i < 3; ++i) out[i] = from_c3({3 * v[i].x + s.x, 3 * v[i].y + s.y});
    out[3] = from_c3({2 * s.x, 2 * s.y});
    return out;
}

std::vector<TriCell> supertile_cells(int level, const Pose& pose) {
    static std::mutex mu;
    static std::map<int, std::vector<TriCell>> cache;
    std::vector<TriCell> base;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(level);
        if (it == cache.end()) {
            std::vector<TriCell> cur = canonical_sphinx().cells;
            for (int k = 0; k < level; ++k) {
                std::vector<TriCell> nxt;
                nxt.reserve(cur.size() * 4);
                for (const auto& c : cur)
                    for (const auto& d : subdivide(c)) nxt.push_back(d);
                cur = std::move(nxt);
            }
            std::sort(cur.begin(), cur.end());
            it = cache.emplace(level, std::move(cur)).first;
        }
        base = it->second;
    }
    for (auto& c : base) c = apply(pose, c);
    return base;
}

std::vector<DirectedEdge> boundary(const std::vector<TriCell>& cells) {
    if (cells.empty()) return {};
    std::set<TriCell> cs(cells.begin(), cells.end());

    // edge connectivity
    std::set<TriCell> seen{*cs.begin()};
    std::queue<TriCell> q;
    q.push(*cs.begin());
    while (!q.empty()) {
        TriCell c = q.front();
        q.pop();
        for (const auto& e : cell_edges(c))
            for (const auto& d : edge_cells(e))
                if (cs.count(d) && !seen.count(d)) {
                    seen.insert(d);
                    q.push(d);
                }
    }
    if (seen.size() != cs.size()) throw Disconnected();

    std::map<Edge, int> count;
    for (const auto& c : cs)
        for (const auto& e : cell_edges(c)) ++count[e];
    std::map<Vtx, std::vector<Vtx>> out_edges;
    size_t total = 0;
    for (const auto& c : cs) {
        auto v = corners(c);
        for (int i = 0; i < 3; ++i) {
            Vtx a = v[i], b = v[(i + 1) % 3];
            if (count[make_edge(a, b)] == 1) {
                out_edges[a].push_back(b);
                ++total;
            }
        }
    }
    Vtx start = out_edges.begin()->first;
    Vtx cur = start;
    Vtx nxt = *std::min_element(out_edges[cur].begin(), out_edges[cur].end());
    std::vector<DirectedEdge> cycle;
    while (true) {
        cycle.push_back({cur, nxt});
        if (cycle.size() > total) throw NotSimplyConnected();
        int back = dir_index(cur - nxt);
        cur = nxt;
        if (cur == start) break;
        // tightest turn: first outgoing direction clockwise from the way back
        const auto& outs = out_edges[cur];
        bool found = false;
        for (int s = 1; s < 6 && !found; ++s) {
            Vtx cand = cur + kDirs[mod(back - s, 6)];
            if (std::find(outs.begin(), outs.end(), cand) != outs.end()) {
                nxt = cand;
                found = true;
            }
        }
        if (!found) throw NotSimplyConnected();
    }
    if (cycle.size() != total) throw NotSimplyConnected();
    return cycle;
}

Cartesian to_cartesian(Vtx v) { return {v.x + 0.5 * v.y, v.y * std::sqrt(3.0) / 2.0}; }

std::string to_string(const Vtx& v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

std::string to_string(const TriCell& c) {
    return std::string(c.parity == Parity::Up ? "U" : "D") + "(" + std::to_string(c.col) + "," +
           std::to_string(c.row) + ")";
}

std::string to_string(const Pose& p) {
    return to_string(p.anchor) + " r" + std::to_string(mod(p.rotation, 6)) + (p.reflected ? " m" : "");
}

}  // namespace sphinx
