#include "sphinx/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sphinx {

namespace {

std::map<Edge, int> edge_counts(const std::vector<TriCell>& cells) {
    std::map<Edge, int> cnt;
    for (const auto& c : cells)
        for (const auto& e : cell_edges(c)) ++cnt[e];
    return cnt;
}

bool on_segment(Vtx p, Vtx a, Vtx b) {
    long cross = static_cast<long>(b.x - a.x) * (p.y - a.y) - static_cast<long>(b.y - a.y) * (p.x - a.x);
    if (cross != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

char terminal_char(Terminal t) { return t == Terminal::A ? 'A' : 'B'; }

const std::vector<Edge>& skeleton_pattern() {
    static const std::vector<Edge> pattern = [] {
        SupertileNode root = generate(1);
        std::map<TriCell, int> leaf_of;
        for (const auto* l : leaves(root))
            for (const auto& c : place(canonical_sphinx(), l->pose)) leaf_of[c] = *l->child_index;
        std::set<Edge> out;
        for (const auto& [c, i] : leaf_of)
            for (const auto& e : cell_edges(c))
                for (const auto& d : edge_cells(e)) {
                    auto it = leaf_of.find(d);
                    if (it != leaf_of.end() && it->second != i) out.insert(e);
                }
        return std::vector<Edge>(out.begin(), out.end());
    }();
    return pattern;
}

const std::vector<Vtx>& skeleton_terminals() {
    static const std::vector<Vtx> terms = [] {
        std::set<Vtx> bv;
        for (const auto& [e, k] : edge_counts(supertile_cells(1, identity_pose())))
            if (k == 1) {
                bv.insert(e.a);
                bv.insert(e.b);
            }
        std::set<Vtx> out;
        for (const auto& e : skeleton_pattern())
            for (Vtx v : {e.a, e.b})
                if (bv.count(v)) out.insert(v);
        return std::vector<Vtx>(out.begin(), out.end());
    }();
    return terms;
}

std::pair<int, DirectedEdge> skeleton_label(const SupertileNode& owner, const Edge& e) {
    int s = 1 << (owner.level - 1);
    Vtx u = apply_inverse(owner.pose, e.a), w = apply_inverse(owner.pose, e.b);
    const auto& pat = skeleton_pattern();
    for (int j = 0; j < static_cast<int>(pat.size()); ++j) {
        Vtx a = pat[j].a * s, b = pat[j].b * s;
        if (on_segment(u, a, b) && on_segment(w, a, b)) {
            Vtx d = w - u, ab = b - a;
            bool fwd = d.x * ab.x + d.y * ab.y > 0;
            return {j, fwd ? DirectedEdge{e.a, e.b} : DirectedEdge{e.b, e.a}};
        }
    }
    throw std::logic_error("edge not on the owner's skeleton");
}

Ownership edge_ownership(const SupertileNode& root) {
    auto root_counts = edge_counts(supertile_cells(root.level, root.pose));
    Ownership own;
    for (const auto& [e, k] : root_counts)
        if (k == 1) {
            SkeletonEdge s;
            s.edge = e;
            s.owner_level = root.level + 1;
            s.ambient = true;
            s.direction = {e.a, e.b};
            own[e] = s;
        }
    // deepest boundary level first: an edge on the boundary of some level-m
    // node and of no larger node belongs to that node's parent
    std::vector<std::vector<const SupertileNode*>> by_level(root.level + 1);
    std::map<const SupertileNode*, const SupertileNode*> parent;
    for (const auto* n : all_nodes(root)) {
        by_level[n->level].push_back(n);
        for (const auto& c : n->children) parent[&c] = n;
    }
    for (int m = root.level - 1; m >= 0; --m)
        for (const auto* n : by_level[m]) {
            const SupertileNode* p = parent.at(n);
            for (const auto& [e, k] : edge_counts(supertile_cells(n->level, n->pose))) {
                if (k != 1 || own.count(e)) continue;
                SkeletonEdge s;
                s.edge = e;
                s.owner_level = m + 1;
                s.owner_path = p->path;
                auto [j, dir] = skeleton_label(*p, e);
                s.position = j;
                s.direction = dir;
                own[e] = s;
            }
        }
    return own;
}

std::vector<SkeletonEdge> skeleton_of(const SupertileNode& node, const Ownership& own) {
    if (node.level < 1) return {};
    int s = 1 << (node.level - 1);
    std::vector<SkeletonEdge> out;
    for (const auto& pe : skeleton_pattern()) {
        Vtx a = pe.a * s, d = pe.b - pe.a;
        for (int k = 0; k < s; ++k) {
            Vtx u = a + d * k;
            Edge e = make_edge(apply(node.pose, u), apply(node.pose, u + d));
            auto it = own.find(e);
            if (it == own.end() || it->second.owner_path != node.path || it->second.ambient)
                throw std::logic_error("skeleton edge not owned by its node");
            out.push_back(it->second);
        }
    }
    return out;
}

std::array<Epivertex, 2> epivertices(const SupertileNode& node) {
    if (node.level < 1) throw std::invalid_argument("epivertices need level >= 1");
    int s = 1 << node.level;
    return {Epivertex{apply(node.pose, Vtx{0, 0}), node.path, node.level, Terminal::A},
            Epivertex{apply(node.pose, Vtx{3 * s, 0}), node.path, node.level, Terminal::B}};
}

ChildIndex wire_target_child(Terminal t) { return t == Terminal::A ? 0 : 3; }

Terminal default_child_wire(ChildIndex i) { return i == 0 ? Terminal::A : Terminal::B; }

std::optional<Terminal> child_wire(std::optional<Terminal> parent, ChildIndex i, int child_level) {
    if (parent && wire_target_child(*parent) == i) return swap(*parent);
    if (child_level == 0) return std::nullopt;
    return default_child_wire(i);
}

bool valid_context(std::optional<ChildIndex> idx, std::optional<Terminal> wire) {
    if (!idx && !wire) return true;
    if (!idx || !wire || *idx < 0 || *idx > 3) return false;
    if (*wire == default_child_wire(*idx)) return true;
    for (Terminal p : {Terminal::A, Terminal::B})
        if (wire_target_child(p) == *idx && swap(p) == *wire) return true;
    return false;
}

std::vector<std::pair<std::optional<ChildIndex>, std::optional<Terminal>>> valid_contexts() {
    std::vector<std::pair<std::optional<ChildIndex>, std::optional<Terminal>>> out{{std::nullopt, std::nullopt}};
    for (int i = 0; i < 4; ++i)
        for (Terminal t : {Terminal::A, Terminal::B})
            if (valid_context(i, t)) out.push_back({i, t});
    return out;
}

Epivertex vertex_substitution(const SupertileNode& root, const Epivertex& e) {
    const SupertileNode& node = node_at(root, e.owner_path);
    auto ev = epivertices(node);
    if (std::find(ev.begin(), ev.end(), e) == ev.end()) throw NotAnEpivertex();
    if (node.level < 2) throw std::invalid_argument("vertex_substitution needs level >= 2");
    // the A corner of a parent is the B corner of child 0, the B corner the
    // A corner of child 3
    const SupertileNode& child = node.children[wire_target_child(e.kind)];
    auto cv = epivertices(child);
    const Epivertex& out = cv[static_cast<int>(swap(e.kind))];
    if (out.vertex != e.vertex) throw std::logic_error("vertex substitution table disagrees with geometry");
    return out;
}

const std::array<int, 4>& origin_terminal_table() {
    static const std::array<int, 4> table = [] {
        SupertileNode root = generate(2);
        std::set<Vtx> parent_vs;
        for (const auto& pe : skeleton_pattern())
            for (int k = 0; k < 2; ++k) {
                Vtx d = pe.b - pe.a;
                parent_vs.insert(apply(root.pose, pe.a * 2 + d * k));
                parent_vs.insert(apply(root.pose, pe.a * 2 + d * (k + 1)));
            }
        std::array<int, 4> t{};
        const auto& terms = skeleton_terminals();
        for (const auto& c : root.children) {
            int found = -1;
            for (int k = 0; k < static_cast<int>(terms.size()) && found < 0; ++k)
                if (parent_vs.count(apply(c.pose, terms[k]))) found = k;
            if (found < 0) throw std::logic_error("child skeleton does not meet its parent");
            t[*c.child_index] = found;
        }
        return t;
    }();
    return table;
}

Vtx origin_vertex(const SupertileNode& node) {
    if (node.level < 1) throw std::invalid_argument("origin needs level >= 1");
    int s = 1 << (node.level - 1);
    int t = node.child_index ? origin_terminal_table()[*node.child_index] : 0;
    return apply(node.pose, skeleton_terminals()[t] * s);
}

std::vector<Edge> VertexWire::edges() const {
    std::vector<Edge> out;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) out.push_back(make_edge(vertices[i], vertices[i + 1]));
    return out;
}

std::vector<Vtx> shortest_path(const std::vector<Edge>& edges, Vtx src, Vtx dst) {
    std::map<Vtx, std::set<Vtx>> adj;
    for (const auto& e : edges) {
        adj[e.a].insert(e.b);
        adj[e.b].insert(e.a);
    }
    std::map<Vtx, int> dist{{dst, 0}};
    std::deque<Vtx> q{dst};
    while (!q.empty()) {
        Vtx x = q.front();
        q.pop_front();
        for (Vtx y : adj[x])
            if (!dist.count(y)) {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
    }
    if (!dist.count(src)) throw Unroutable();
    std::vector<Vtx> path{src};
    Vtx cur = src;
    while (cur != dst) {
        for (Vtx y : adj[cur]) {  // ascending: least vertex first
            auto it = dist.find(y);
            if (it != dist.end() && it->second == dist[cur] - 1) {
                cur = y;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

VertexWire route_vertex_wire(const SupertileNode& node, Terminal t, const Ownership& own) {
    if (node.level < 1) throw std::invalid_argument("wires need level >= 1");
    std::vector<Edge> edges;
    for (const auto& s : skeleton_of(node, own)) edges.push_back(s.edge);
    Vtx src = origin_vertex(node);
    const SupertileNode& target = node.children[wire_target_child(t)];
    Vtx dst = node.level == 1 ? apply(node.pose, skeleton_terminals()[kLeafEntryTerminal]) : origin_vertex(target);
    VertexWire w;
    w.color = t;
    w.owner_path = node.path;
    w.vertices = shortest_path(edges, src, dst);
    w.next_path = target.path;
    return w;
}

WireChain trace_wire(const SupertileNode& root, const SupertileNode& node, Terminal t, const Ownership& own) {
    WireChain ch;
    const SupertileNode* cur = &node;
    Terminal c = t;
    while (true) {
        ch.segments.push_back(route_vertex_wire(*cur, c, own));
        const SupertileNode& y = node_at(root, ch.segments.back().next_path);
        c = swap(c);
        if (y.level == 0) {
            ch.leaf_path = y.path;
            ch.entry = ch.segments.back().vertices.back();
            ch.terminal = apply(y.pose, c == Terminal::A ? Vtx{0, 0} : Vtx{3, 0});
            break;
        }
        cur = &y;
    }
    return ch;
}

}  // namespace sphinx
