#include "sphinx/markedset.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sphinx {

namespace {

int mod6(int a) { return ((a % 6) + 6) % 6; }

int base_direction(VertexForm f, int i) { return f == VertexForm::Run ? (i == 0 ? 0 : 3) : i; }

std::vector<Port> permuted(const std::vector<Port>& p, const std::vector<int>& idx) {
    std::vector<Port> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(p[i]);
    return out;
}

std::vector<Mark> permuted(const std::vector<Mark>& p, const std::vector<int>& idx) {
    std::vector<Mark> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(p[i]);
    return out;
}

// candidate arrangements of a piece: (rearranged piece, symmetry taking the
// rearranged port i to the direction of the original port)
std::vector<std::pair<VertexPiece, Lin>> arrangements(const VertexPiece& p) {
    std::vector<std::pair<VertexPiece, Lin>> out;
    auto push = [&](std::vector<Port> ports, std::vector<Mark> secs, Lin l) {
        regroup(ports);
        out.push_back({VertexPiece{p.form, std::move(ports), std::move(secs)}, l});
    };
    if (p.form == VertexForm::Full) {
        for (int r = 0; r < 6; ++r) {
            std::vector<int> pi(6), si(6), pr(6), sr(6);
            for (int i = 0; i < 6; ++i) {
                pi[i] = mod6(r + i);
                si[i] = mod6(r + i);
                pr[i] = mod6(r - i);
                sr[i] = mod6(r - i - 1);
            }
            push(permuted(p.ports, pi), permuted(p.sectors, si), Lin{r, false});
            push(permuted(p.ports, pr), permuted(p.sectors, sr), Lin{r, true});
        }
    } else if (p.form == VertexForm::Run) {
        push(p.ports, p.sectors, Lin{0, false});
        push(permuted(p.ports, {1, 0}), p.sectors, Lin{3, false});
    } else {
        push(p.ports, p.sectors, Lin{0, false});
        push(permuted(p.ports, {3, 2, 1, 0}), permuted(p.sectors, {2, 1, 0}), Lin{3, true});
    }
    return out;
}

char mark_char(Mark m) { return m == Mark::None ? '.' : (m == Mark::In ? 'i' : 'e'); }

std::string ch2_text(int v) { return v == kUnknown ? "U" : std::to_string(v); }

std::string port_text(const Port& p) {
    if (p.kind == PortKind::Unused) return "_";
    if (p.kind == PortKind::NoEdge) return "-";
    std::string s = "j" + std::to_string(p.j) + (p.out ? "o" : "i") + (p.l1 ? "l" : "h") + "/";
    s += p.c2 == SpecKind::Group ? "G" + std::to_string(p.c2v) : "P" + ch2_text(p.c2v);
    s += "/";
    if (p.c3 == SpecKind::None)
        s += "n";
    else if (p.c3 == SpecKind::Pinned)
        s += std::string("P") + terminal_char(static_cast<Terminal>(p.c3v));
    else
        s += "W" + std::to_string(p.c3v);
    return s;
}

char form_char(VertexForm f) {
    switch (f) {
        case VertexForm::Full: return 'F';
        case VertexForm::Half: return 'H';
        case VertexForm::Side: return 'S';
        case VertexForm::Run: return 'R';
    }
    return '?';
}

}  // namespace

void regroup(std::vector<Port>& ports) {
    std::map<int, int> g2, g3;
    for (auto& p : ports) {
        if (p.kind != PortKind::Edge) continue;
        if (p.c2 == SpecKind::Group) {
            auto it = g2.try_emplace(p.c2v, static_cast<int>(g2.size())).first;
            p.c2v = it->second;
        }
        if (p.c3 == SpecKind::Group) {
            auto it = g3.try_emplace(p.c3v, static_cast<int>(g3.size())).first;
            p.c3v = it->second;
        }
    }
}

VertexPiece canonical_piece(const VertexPiece& p) {
    auto arr = arrangements(p);
    return std::min_element(arr.begin(), arr.end(), [](const auto& a, const auto& b) { return a.first < b.first; })
        ->first;
}

Lin canonical_orientation(const VertexPiece& p) {
    auto arr = arrangements(p);
    return std::min_element(arr.begin(), arr.end(), [](const auto& a, const auto& b) { return a.first < b.first; })
        ->second;
}

int port_direction(VertexForm f, int i, Lin l) { return dir_index(lin_apply(l, kDirs[base_direction(f, i)])); }

int sector_index(VertexForm, int i, Lin l) {
    int a = dir_index(lin_apply(l, kDirs[mod6(i)]));
    int b = dir_index(lin_apply(l, kDirs[mod6(i + 1)]));
    return b == mod6(a + 1) ? a : b;
}

Oriented orient(const VertexPiece& p, Lin l) {
    Oriented o;
    for (int i = 0; i < static_cast<int>(p.ports.size()); ++i)
        if (p.ports[i].kind != PortKind::Unused) o.ports[port_direction(p.form, i, l)] = p.ports[i];
    for (int i = 0; i < static_cast<int>(p.sectors.size()); ++i) o.sectors[sector_index(p.form, i, l)] = p.sectors[i];
    return o;
}

std::vector<std::pair<Lin, Oriented>> orientations(const VertexPiece& p) {
    std::vector<std::pair<Lin, Oriented>> out;
    std::set<std::pair<std::array<std::optional<Port>, 6>, std::array<std::optional<Mark>, 6>>> seen;
    for (Lin l : all_lins()) {
        Oriented o = orient(p, l);
        if (seen.insert({o.ports, o.sectors}).second) out.push_back({l, o});
    }
    return out;
}

MarkedTile canonicalize(const MarkedTile& t) {
    MarkedTile out = t;
    if (t.kind == TileKind::VertexTile) out.vertex = canonical_piece(t.vertex);
    if (t.kind != TileKind::TileTile) out.face = {};
    if (t.kind != TileKind::EdgeTile) out.edge = {};
    if (t.kind != TileKind::VertexTile) out.vertex = {};
    return out;
}

std::string describe(const MarkedTile& t) {
    std::ostringstream os;
    if (t.kind == TileKind::TileTile) {
        os << "face";
        for (const auto& s : t.face.segs) {
            if (!s)
                os << " -";
            else
                os << ' ' << s->j << (s->with_ccw ? '+' : '-');
        }
        os << " |";
        for (Mark m : t.face.marks) os << ' ' << mark_char(m);
    } else if (t.kind == TileKind::EdgeTile) {
        os << "edge " << t.edge.j << ' ' << ch2_text(t.edge.ch2) << ' '
           << (t.edge.ch3 ? std::string(1, terminal_char(*t.edge.ch3)) : std::string("n")) << ' '
           << (t.edge.l1 ? 1 : 0);
    } else {
        os << "vertex " << form_char(t.vertex.form);
        for (const auto& p : t.vertex.ports) os << ' ' << port_text(p);
        os << " |";
        for (Mark m : t.vertex.sectors) os << ' ' << mark_char(m);
    }
    return os.str();
}

size_t TileSet::count(VertexForm f) const {
    return static_cast<size_t>(
        std::count_if(vertices.begin(), vertices.end(), [f](const VertexPiece& p) { return p.form == f; }));
}

void TileSet::merge(const TileSet& o) {
    faces.insert(o.faces.begin(), o.faces.end());
    edges.insert(o.edges.begin(), o.edges.end());
    vertices.insert(o.vertices.begin(), o.vertices.end());
}

std::vector<MarkedTile> TileSet::tiles() const {
    std::vector<MarkedTile> out;
    for (const auto& f : faces) out.push_back({TileKind::TileTile, f, {}, {}});
    for (const auto& e : edges) out.push_back({TileKind::EdgeTile, {}, e, {}});
    for (const auto& v : vertices) out.push_back({TileKind::VertexTile, {}, {}, v});
    return out;
}

TileSet strip_channel3(const TileSet& t) {
    TileSet out;
    for (auto f : t.faces) {
        f.marks.fill(Mark::None);
        out.faces.insert(f);
    }
    for (auto e : t.edges) {
        e.ch3.reset();
        out.edges.insert(e);
    }
    for (auto v : t.vertices) {
        for (auto& p : v.ports) {
            p.c3 = SpecKind::None;
            p.c3v = 0;
        }
        for (auto& m : v.sectors) m = Mark::None;
        out.vertices.insert(canonical_piece(v));
    }
    return out;
}

std::vector<VertexPiece> concretizations(const VertexPiece& tpl, const std::set<EdgeType>& edges) {
    int n2 = 0, n3 = 0;
    for (const auto& p : tpl.ports) {
        if (p.kind != PortKind::Edge) continue;
        if (p.c2 == SpecKind::Group) n2 = std::max(n2, p.c2v + 1);
        if (p.c3 == SpecKind::Group) n3 = std::max(n3, p.c3v + 1);
    }
    std::vector<VertexPiece> out;
    std::vector<int> v2(n2, 0), v3(n3, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k < n2) {
            for (int v = kUnknown; v <= 3; ++v) {
                v2[k] = v;
                rec(k + 1);
            }
            return;
        }
        if (k < n2 + n3) {
            for (int v = 0; v < 2; ++v) {
                v3[k - n2] = v;
                rec(k + 1);
            }
            return;
        }
        VertexPiece c = tpl;
        for (auto& p : c.ports) {
            if (p.kind != PortKind::Edge) continue;
            if (p.c2 == SpecKind::Group) {
                p.c2 = SpecKind::Pinned;
                p.c2v = v2[p.c2v];
            }
            if (p.c3 == SpecKind::Group) {
                p.c3 = SpecKind::Pinned;
                p.c3v = v3[p.c3v];
            }
            std::optional<Terminal> c3;
            if (p.c3 == SpecKind::Pinned) c3 = static_cast<Terminal>(p.c3v);
            // a port no edge tile can serve is useless
            if (!edges.count(EdgeType{p.j, p.c2v, c3, p.l1})) return;
        }
        out.push_back(canonical_piece(c));
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

size_t concrete_vertex_tile_count(const TileSet& t) {
    std::set<VertexPiece> out;
    for (const auto& tpl : t.vertices)
        for (auto& c : concretizations(tpl, t.edges)) out.insert(std::move(c));
    return out.size();
}

std::string to_string(const ParentContext& c) {
    if (!c.index) return "none";
    return "S" + std::to_string(*c.index) + "/" + (c.wire ? std::string(1, terminal_char(*c.wire)) : "-");
}

// ---- decoration -------------------------------------------------------------

DecoratedSupertile decorate_supertile(int n, ParentContext ctx, bool strip3) {
    if (n < 1) throw std::invalid_argument("decorate_supertile needs n >= 1");
    if (!valid_context(ctx.index, ctx.wire)) throw InconsistentContext();
    DecoratedSupertile d;
    d.level = n;
    d.ctx = ctx;
    d.strip3 = strip3;
    auto root = std::make_shared<SupertileNode>(generate(n));
    root->child_index = ctx.index;
    d.root = root;
    d.own = edge_ownership(*root);
    for (const auto* x : all_nodes(*root)) d.nodes[x->path] = x;
    d.leaf_nodes = leaves(*root);
    for (int i = 0; i < static_cast<int>(d.leaf_nodes.size()); ++i)
        for (const auto& c : place(canonical_sphinx(), d.leaf_nodes[i]->pose)) d.leaf_of[c] = i;

    // wire classes flow from the parent context downwards
    std::function<void(const SupertileNode&, std::optional<Terminal>)> assign = [&](const SupertileNode& x,
                                                                                    std::optional<Terminal> c) {
        d.color[x.path] = c;
        for (const auto& k : x.children) assign(k, child_wire(c, *k.child_index, k.level));
    };
    assign(*root, ctx.wire);

    std::map<Edge, Terminal> wire_edges;
    std::map<int, std::map<int, Mark>> face_marks;
    const auto& sb = sphinx_boundary_vertices();
    for (const auto* x : all_nodes(*root)) {
        if (x->level == 0) continue;
        auto c = d.color[x->path];
        if (!c) continue;
        VertexWire w = route_vertex_wire(*x, *c, d.own);
        for (const auto& e : w.edges()) wire_edges[e] = *c;
        const SupertileNode& y = *d.nodes.at(w.next_path);
        if (y.level == 0) {
            int li = d.leaf_of.at(place(canonical_sphinx(), y.pose)[0]);
            Vtx term = swap(*c) == Terminal::A ? Vtx{0, 0} : Vtx{3, 0};
            for (int k = 0; k < 8; ++k) {
                if (apply(y.pose, sb[k]) == w.vertices.back()) face_marks[li][k] = Mark::In;
                if (sb[k] == term) face_marks[li][k] = Mark::End;
            }
        }
        d.wires[x->path] = std::move(w);
    }

    for (const auto& [e, s] : d.own) {
        if (s.ambient) {
            d.outer.insert(e);
            continue;
        }
        const SupertileNode& owner = *d.nodes.at(s.owner_path);
        EdgeLabel l;
        l.j = s.position;
        l.forward = s.direction.from == e.a;
        l.ch2 = owner.child_index ? *owner.child_index : kUnknown;
        if (!strip3) {
            auto it = wire_edges.find(e);
            if (it != wire_edges.end()) l.ch3 = it->second;
        }
        l.l1 = s.owner_level == 1;
        d.labels[e] = l;
    }

    for (int i = 0; i < static_cast<int>(d.leaf_nodes.size()); ++i) {
        const SupertileNode& leaf = *d.leaf_nodes[i];
        std::vector<int> parent_path(leaf.path.begin(), leaf.path.end() - 1);
        FaceType ft;
        for (int k = 0; k < 8; ++k) {
            Vtx a = apply(leaf.pose, sb[k]), b = apply(leaf.pose, sb[(k + 1) % 8]);
            Edge e = make_edge(a, b);
            auto it = d.labels.find(e);
            if (it != d.labels.end() && it->second.l1 && d.own.at(e).owner_path == parent_path)
                ft.segs[k] = SegMark{it->second.j, d.own.at(e).direction.from == a};
        }
        if (!strip3) {
            auto it = face_marks.find(i);
            if (it != face_marks.end())
                for (auto [k, m] : it->second) ft.marks[k] = m;
        }
        d.faces.push_back(ft);
    }

    d.summary.position = ctx.index;
    d.summary.wire = strip3 ? std::nullopt : ctx.wire;
    d.summary.origin = origin_vertex(*root);
    int s = 1 << (n - 1);
    const auto& pat = skeleton_pattern();
    for (Vtx t : skeleton_terminals())
        for (int j = 0; j < static_cast<int>(pat.size()); ++j)
            if (pat[j].a == t || pat[j].b == t) d.summary.boundary_edges.push_back({apply(root->pose, t * s), j});
    if (ctx.wire && !strip3) d.summary.wire_terminal = trace_wire(*root, *root, *ctx.wire, d.own).terminal;
    return d;
}

std::vector<Vtx> DecoratedSupertile::vertices() const {
    std::set<Vtx> vs;
    for (const auto& [e, l] : labels) {
        vs.insert(e.a);
        vs.insert(e.b);
    }
    for (const auto& e : outer) {
        vs.insert(e.a);
        vs.insert(e.b);
    }
    return {vs.begin(), vs.end()};
}

std::vector<std::pair<VertexPiece, std::optional<PlacedTile>>> DecoratedSupertile::pieces_at(Vtx v) const {
    // what meets v in each direction
    enum class PK { None, Outer, Edge };
    std::array<PK, 6> pk{};
    std::array<Edge, 6> pe{};
    std::array<const std::vector<int>*, 6> owner{};
    for (int k = 0; k < 6; ++k) {
        Edge e = make_edge(v, v + kDirs[k]);
        pe[k] = e;
        if (labels.count(e)) {
            pk[k] = PK::Edge;
            owner[k] = &own.at(e).owner_path;
        } else if (outer.count(e)) {
            pk[k] = PK::Outer;
        }
    }
    std::array<std::optional<Mark>, 6> secs;  // nullopt: outside the region
    const auto& sb = sphinx_boundary_vertices();
    for (int k = 0; k < 6; ++k) {
        auto it = leaf_of.find(sector_cell(v, k));
        if (it == leaf_of.end()) continue;
        Mark m = Mark::None;
        for (int q = 0; q < 8; ++q)
            if (apply(leaf_nodes[it->second]->pose, sb[q]) == v) m = faces[it->second].marks[q];
        secs[k] = m;
    }

    // template and concrete ports for the given directions
    auto pdata = [&](const std::vector<int>& dirs, std::vector<Port>& tpl, std::vector<Port>& conc) {
        std::set<std::vector<int>> present;
        for (int k : dirs)
            if (owner[k]) present.insert(*owner[k]);
        std::map<std::vector<int>, int> g2, g3;
        for (int k : dirs) {
            Port t, c;
            if (pk[k] != PK::Edge) {
                t.kind = c.kind = PortKind::NoEdge;
                tpl.push_back(t);
                conc.push_back(c);
                continue;
            }
            const EdgeLabel& l = labels.at(pe[k]);
            const auto& o = *owner[k];
            const auto& dir = own.at(pe[k]).direction;
            t.kind = c.kind = PortKind::Edge;
            t.j = c.j = l.j;
            t.out = c.out = dir.from == v;
            t.l1 = c.l1 = l.l1;
            c.c2 = SpecKind::Pinned;
            c.c2v = l.ch2;
            std::vector<int> po(o.begin(), o.end() - (o.empty() ? 0 : 1));
            if (!o.empty() && present.count(po)) {
                t.c2 = SpecKind::Pinned;
                t.c2v = l.ch2;
            } else {
                t.c2 = SpecKind::Group;
                t.c2v = g2.try_emplace(o, static_cast<int>(g2.size())).first->second;
            }
            if (!l.ch3) {
                t.c3 = c.c3 = SpecKind::None;
            } else {
                c.c3 = SpecKind::Pinned;
                c.c3v = static_cast<int>(*l.ch3);
                const VertexWire& w = wires.at(o);
                bool starts = !o.empty() && w.vertices.front() == v;
                bool ends = w.vertices.back() == v;
                if (starts || ends) {
                    t.c3 = SpecKind::Pinned;
                    t.c3v = static_cast<int>(*l.ch3);
                } else {
                    t.c3 = SpecKind::Group;
                    t.c3v = g3.try_emplace(o, static_cast<int>(g3.size())).first->second;
                }
            }
            tpl.push_back(t);
            conc.push_back(c);
        }
    };

    std::vector<std::pair<VertexPiece, std::optional<PlacedTile>>> res;
    auto emit = [&](VertexForm f, std::vector<Port> tpl, std::vector<Port> conc, std::vector<Mark> sc, Lin l) {
        VertexPiece t{f, std::move(tpl), sc};
        VertexPiece c{f, std::move(conc), std::move(sc)};
        PlacedTile pt{MarkedTile{TileKind::VertexTile, {}, {}, c}, Pose::from(v, l)};
        res.push_back({canonical_piece(t), pt});
    };

    for (int k = 0; k < 3; ++k) {
        if (!(owner[k] && owner[k + 3] && *owner[k] == *owner[k + 3])) continue;
        bool run_placed = false;
        for (int start : {k, k + 3}) {
            std::vector<int> dirs, sd;
            for (int i = 0; i < 4; ++i) dirs.push_back(mod6(start + i));
            for (int i = 0; i < 3; ++i) sd.push_back(mod6(start + i));
            bool skip = false;
            for (int q : dirs)
                if (pk[q] == PK::Outer) skip = true;
            for (int q : sd)
                if (!secs[q]) skip = true;
            if (skip) continue;
            std::vector<Port> tpl, conc;
            pdata(dirs, tpl, conc);
            std::vector<Mark> sc;
            for (int q : sd) sc.push_back(*secs[q]);
            const auto& run_owner = *owner[start];
            bool child_side = false;
            for (int i : {1, 2}) {
                const auto* o = owner[dirs[i]];
                if (o && !o->empty() && std::vector<int>(o->begin(), o->end() - 1) == run_owner) child_side = true;
            }
            Lin l{start, false};
            if (child_side) {
                emit(VertexForm::Half, tpl, conc, sc, l);
            } else {
                emit(VertexForm::Run, {tpl[0], tpl[3]}, {conc[0], conc[3]}, {}, l);
                // both sides see the same run; place it once
                if (run_placed) res.back().second.reset();
                run_placed = true;
                tpl[0] = tpl[3] = conc[0] = conc[3] = Port{};
                emit(VertexForm::Side, tpl, conc, sc, l);
            }
        }
        return res;
    }
    for (int k = 0; k < 6; ++k)
        if (pk[k] == PK::Outer || !secs[k]) return res;
    std::vector<Port> tpl, conc;
    pdata({0, 1, 2, 3, 4, 5}, tpl, conc);
    std::vector<Mark> sc;
    for (int k = 0; k < 6; ++k) sc.push_back(*secs[k]);
    emit(VertexForm::Full, tpl, conc, sc, Lin{0, false});
    return res;
}

std::vector<PlacedTile> DecoratedSupertile::placements() const {
    std::vector<PlacedTile> out;
    for (int i = 0; i < static_cast<int>(leaf_nodes.size()); ++i)
        out.push_back({MarkedTile{TileKind::TileTile, faces[i], {}, {}}, leaf_nodes[i]->pose});
    for (const auto& [e, l] : labels) {
        Vtx tail = l.forward ? e.a : e.b, head = l.forward ? e.b : e.a;
        out.push_back({MarkedTile{TileKind::EdgeTile, {}, type_of(l), {}}, Pose{tail, dir_index(head - tail), false}});
    }
    for (Vtx v : vertices())
        for (auto& [tpl, pt] : pieces_at(v))
            if (pt) out.push_back(*pt);
    return out;
}

TileSet tiles_at_level(int n) {
    TileSet ts;
    auto take = [&](const DecoratedSupertile& d, bool skip_root_full) {
        ts.faces.insert(d.faces.begin(), d.faces.end());
        for (const auto& [e, l] : d.labels) ts.edges.insert(type_of(l));
        for (Vtx v : d.vertices()) {
            auto ps = d.pieces_at(v);
            if (ps.empty()) continue;
            if (skip_root_full && ps[0].first.form == VertexForm::Full) {
                bool on_root = false;
                for (int k = 0; k < 6; ++k) {
                    auto it = d.own.find(make_edge(v, v + kDirs[k]));
                    if (it != d.own.end() && !it->second.ambient && it->second.owner_path.empty()) on_root = true;
                }
                if (on_root) continue;
            }
            for (auto& [tpl, pt] : ps) ts.vertices.insert(tpl);
        }
    };
    take(decorate_supertile(n), false);
    // level-n supertiles sitting inside a parent, in every context
    for (auto [idx, w] : valid_contexts()) take(decorate_supertile(n + 1, {idx, w}), true);
    return ts;
}

TilesetReport enumerate_tileset(int max_level) {
    if (max_level < 2) throw std::invalid_argument("enumerate_tileset needs max_level >= 2");
    TilesetReport r;
    TileSet cum;
    for (int k = 1; k <= max_level; ++k) {
        cum.merge(tiles_at_level(k));
        r.cumulative.push_back(cum);
    }
    for (int k = 1; k < max_level; ++k)
        if (r.cumulative[k - 1] == r.cumulative[k]) {
            r.closure_level = k;
            break;
        }
    if (!(r.cumulative[max_level - 2] == r.cumulative[max_level - 1])) throw NotClosed(max_level);
    r.tiles = cum;
    return r;
}

// ---- recomposition ---------------------------------------------------------

std::vector<RecomposedPiece> recompose(const SupertileNode& node, const Ownership& own) {
    std::vector<RecomposedPiece> out;
    auto cells = supertile_cells(node.level, node.pose);
    std::set<TriCell> region(cells.begin(), cells.end());
    std::set<SubTri> used;
    std::set<Vtx> verts;
    std::vector<Edge> tiling_edges;
    for (const auto& [e, s] : own) {
        // only edges inside this node's region
        if (!region.count(edge_cells(e)[0]) && !region.count(edge_cells(e)[1])) continue;
        tiling_edges.push_back(e);
        verts.insert(e.a);
        verts.insert(e.b);
    }
    std::vector<RecomposedPiece> edge_pieces, vertex_pieces;
    for (const auto& e : tiling_edges) {
        RecomposedPiece p;
        p.kind = TileKind::EdgeTile;
        const auto& s = own.at(e);
        p.pose = Pose{s.direction.from, dir_index(s.direction.to - s.direction.from), false};
        for (const auto& c : edge_cells(e)) {
            if (!region.count(c)) continue;
            auto cv = corners(c);
            for (int i = 0; i < 3; ++i)
                if (make_edge(cv[i], cv[(i + 1) % 3]) == e) p.geometry.push_back({c, 3 + i});
        }
        std::sort(p.geometry.begin(), p.geometry.end());
        used.insert(p.geometry.begin(), p.geometry.end());
        edge_pieces.push_back(std::move(p));
    }
    for (Vtx v : verts) {
        RecomposedPiece p;
        p.kind = TileKind::VertexTile;
        p.pose = Pose{v, 0, false};
        for (int k = 0; k < 6; ++k) {
            TriCell c = sector_cell(v, k);
            if (!region.count(c)) continue;
            auto cv = corners(c);
            for (int i = 0; i < 3; ++i)
                if (cv[i] == v) p.geometry.push_back({c, i});
        }
        std::sort(p.geometry.begin(), p.geometry.end());
        used.insert(p.geometry.begin(), p.geometry.end());
        vertex_pieces.push_back(std::move(p));
    }
    for (const auto* l : leaves(node)) {
        RecomposedPiece p;
        p.kind = TileKind::TileTile;
        p.pose = l->pose;
        for (const auto& c : place(canonical_sphinx(), l->pose))
            for (int i = 0; i < 9; ++i)
                if (!used.count({c, i})) p.geometry.push_back({c, i});
        std::sort(p.geometry.begin(), p.geometry.end());
        out.push_back(std::move(p));
    }
    for (auto& p : edge_pieces) out.push_back(std::move(p));
    for (auto& p : vertex_pieces) out.push_back(std::move(p));
    return out;
}

}  // namespace sphinx
