#include "sphinx/enforcement.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace sphinx {

namespace {

std::string seg_text(const std::optional<SegMark>& s, Vtx head) {
    if (!s) return "none";
    return "j" + std::to_string(s->j) + ">" + to_string(head);
}

std::string c2_text(int v) { return v == kUnknown ? "U" : std::to_string(v); }
std::string c3_text(std::optional<Terminal> t) { return t ? std::string(1, terminal_char(*t)) : std::string("n"); }

char mark_text(Mark m) { return m == Mark::None ? '.' : (m == Mark::In ? 'i' : 'e'); }

// run fn(i) for i in [0, n) on up to `threads` workers; results are placed by
// index so the caller's aggregation does not depend on scheduling
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

// ---- matching ----------------------------------------------------------------

MatchReport check_matching(const std::vector<PlacedTile>& placed) {
    // (place, channel) -> labels seen there
    std::map<std::pair<std::string, int>, std::set<std::string>> seen;
    auto put = [&](const std::string& where, int ch, const std::string& label) { seen[{where, ch}].insert(label); };
    std::set<TriCell> cells;
    std::set<Edge> edge_tiles;
    std::set<std::pair<Vtx, int>> sectors;
    const auto& sb = sphinx_boundary_vertices();

    for (const auto& pt : placed) {
        if (pt.tile.kind == TileKind::TileTile) {
            auto cs = place(canonical_sphinx(), pt.pose);
            std::set<TriCell> mine(cs.begin(), cs.end());
            for (const auto& c : cs)
                if (!cells.insert(c).second) throw Overlap("cell " + to_string(c));
            const FaceType& ft = pt.tile.face;
            for (int k = 0; k < 8; ++k) {
                Vtx a = apply(pt.pose, sb[k]), b = apply(pt.pose, sb[(k + 1) % 8]);
                Edge e = make_edge(a, b);
                for (const auto& c : edge_cells(e))
                    if (mine.count(c)) {
                        Vtx head = ft.segs[k] && ft.segs[k]->with_ccw ? b : a;
                        put("segment " + to_string(e.a) + "-" + to_string(e.b) + " of " + to_string(c), 1,
                            seg_text(ft.segs[k], head));
                    }
            }
            std::map<Vtx, int> corner;
            for (int k = 0; k < 8; ++k) corner[apply(pt.pose, sb[k])] = k;
            for (const auto& c : cs)
                for (Vtx v : corners(c))
                    put("corner " + to_string(v) + " in " + to_string(c), 3, std::string(1, mark_text(ft.marks[corner.at(v)])));
            // edges inside the sphinx carry no edge tile
            for (const auto& c : cs)
                for (const auto& e : cell_edges(c)) {
                    auto ec = edge_cells(e);
                    if (mine.count(ec[0]) && mine.count(ec[1]))
                        for (Vtx v : {e.a, e.b})
                            put("port " + to_string(e.a) + "-" + to_string(e.b) + " at " + to_string(v), 1, "none");
                }
        } else if (pt.tile.kind == TileKind::EdgeTile) {
            const EdgeType& et = pt.tile.edge;
            Vtx tail = pt.pose.anchor, head = tail + kDirs[pt.pose.rotation];
            Edge e = make_edge(tail, head);
            if (!edge_tiles.insert(e).second) throw Overlap("edge " + to_string(e.a) + "-" + to_string(e.b));
            for (const auto& c : edge_cells(e))
                put("segment " + to_string(e.a) + "-" + to_string(e.b) + " of " + to_string(c), 1,
                    et.l1 ? "j" + std::to_string(et.j) + ">" + to_string(head) : "none");
            for (Vtx v : {tail, head}) {
                std::string w = "port " + to_string(e.a) + "-" + to_string(e.b) + " at " + to_string(v);
                put(w, 1, "j" + std::to_string(et.j) + (v == tail ? "o" : "i") + (et.l1 ? "l" : "h"));
                put(w, 2, c2_text(et.ch2));
                put(w, 3, c3_text(et.ch3));
            }
        } else {
            Vtx v = pt.pose.anchor;
            Oriented o = orient(pt.tile.vertex, pt.pose.lin());
            for (int k = 0; k < 6; ++k) {
                if (o.sectors[k]) {
                    if (!sectors.insert({v, k}).second) throw Overlap("vertex sector " + to_string(v) + "/" + std::to_string(k));
                    put("corner " + to_string(v) + " in " + to_string(sector_cell(v, k)), 3,
                        std::string(1, mark_text(*o.sectors[k])));
                }
                if (!o.ports[k]) continue;
                const Port& p = *o.ports[k];
                Edge e = make_edge(v, v + kDirs[k]);
                std::string w = "port " + to_string(e.a) + "-" + to_string(e.b) + " at " + to_string(v);
                if (p.kind == PortKind::NoEdge) {
                    put(w, 1, "none");
                    continue;
                }
                put(w, 1, "j" + std::to_string(p.j) + (p.out ? "o" : "i") + (p.l1 ? "l" : "h"));
                if (p.c2 == SpecKind::Pinned) put(w, 2, c2_text(p.c2v));
                if (p.c3 == SpecKind::None)
                    put(w, 3, "n");
                else if (p.c3 == SpecKind::Pinned)
                    put(w, 3, std::string(1, terminal_char(static_cast<Terminal>(p.c3v))));
            }
        }
    }
    MatchReport r;
    for (const auto& [key, labels] : seen) {
        if (labels.size() < 2) continue;
        auto it = labels.begin();
        for (auto jt = std::next(it); jt != labels.end(); ++jt) r.violations.push_back({key.first, key.second, *it, *jt});
    }
    std::sort(r.violations.begin(), r.violations.end());
    return r;
}

// ---- regions -------------------------------------------------------------------

Region supertile_region(int level, const Pose& pose) {
    auto cs = supertile_cells(level, pose);
    std::sort(cs.begin(), cs.end(), row_major_less);
    return cs;
}

namespace {

struct Shape {
    Lin lin;
    std::vector<TriCell> cells;  // at zero anchor
    TriCell least;
};

const std::vector<Shape>& shapes() {
    static const std::vector<Shape> s = [] {
        std::vector<Shape> out;
        for (Lin l : all_lins()) {
            Shape sh;
            sh.lin = l;
            sh.cells = place(canonical_sphinx(), Pose::from({0, 0}, l));
            sh.least = *std::min_element(sh.cells.begin(), sh.cells.end(), row_major_less);
            out.push_back(sh);
        }
        return out;
    }();
    return s;
}

struct PlainSearch {
    std::vector<TriCell> cells;  // row-major
    std::map<TriCell, int> index;
    std::vector<std::vector<int>> nbr;
    std::vector<char> covered;
    std::vector<Pose> acc;
    std::uint64_t cap = 0;

    explicit PlainSearch(const Region& r) : cells(r) {
        std::sort(cells.begin(), cells.end(), row_major_less);
        for (int i = 0; i < static_cast<int>(cells.size()); ++i) index[cells[i]] = i;
        nbr.resize(cells.size());
        for (int i = 0; i < static_cast<int>(cells.size()); ++i)
            for (const auto& e : cell_edges(cells[i]))
                for (const auto& d : edge_cells(e)) {
                    auto it = index.find(d);
                    if (it != index.end() && it->second != i) nbr[i].push_back(it->second);
                }
        covered.assign(cells.size(), 0);
    }

    // placements covering the least uncovered cell
    std::vector<std::pair<Pose, std::vector<int>>> candidates() const {
        int m = -1;
        for (int i = 0; i < static_cast<int>(cells.size()); ++i)
            if (!covered[i]) {
                m = i;
                break;
            }
        std::vector<std::pair<Pose, std::vector<int>>> out;
        if (m < 0) return out;
        C3 cm = to_c3(cells[m]);
        for (const auto& sh : shapes()) {
            C3 cl = to_c3(sh.least);
            int dx = cm.x - cl.x, dy = cm.y - cl.y;
            if (dx % 3 || dy % 3) continue;
            Pose p = Pose::from({dx / 3, dy / 3}, sh.lin);
            std::vector<int> idx;
            bool ok = true;
            for (const auto& c : sh.cells) {
                auto it = index.find(apply(Pose::from({dx / 3, dy / 3}, Lin{0, false}), c));
                if (it == index.end() || covered[it->second]) {
                    ok = false;
                    break;
                }
                idx.push_back(it->second);
            }
            if (ok) out.push_back({p, idx});
        }
        return out;
    }

    // every uncovered pocket must hold a whole number of sphinxes
    bool pockets_ok() const {
        std::vector<char> seen(cells.size(), 0);
        for (int s = 0; s < static_cast<int>(cells.size()); ++s) {
            if (covered[s] || seen[s]) continue;
            int size = 0;
            std::deque<int> q{s};
            seen[s] = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                ++size;
                for (int y : nbr[x])
                    if (!covered[y] && !seen[y]) {
                        seen[y] = 1;
                        q.push_back(y);
                    }
            }
            if (size % 6) return false;
        }
        return true;
    }

    // returns false when the cap stops the search
    bool run(const std::function<bool(const std::vector<Pose>&)>& emit) {
        auto cands = candidates();
        if (cands.empty()) {
            if (std::all_of(covered.begin(), covered.end(), [](char c) { return c; })) return emit(acc);
            return true;
        }
        for (auto& [p, idx] : cands) {
            for (int i : idx) covered[i] = 1;
            acc.push_back(p);
            bool go = pockets_ok() ? run(emit) : true;
            acc.pop_back();
            for (int i : idx) covered[i] = 0;
            if (!go) return false;
        }
        return true;
    }
};

void check_region(const Region& region) {
    if (region.empty()) throw std::invalid_argument("empty region");
    if (region.size() > max_cells())
        throw ResourceLimit("ResourceLimit: region of " + std::to_string(region.size()) + " cells exceeds cap " +
                            std::to_string(max_cells()));
}

}  // namespace

PlainCount count_plain_tilings(const Region& region, const SearchOptions& opt) {
    check_region(region);
    PlainSearch root(region);
    auto top = root.candidates();
    struct Branch {
        std::uint64_t count = 0;
        bool capped = false;
        std::vector<std::vector<Pose>> samples;
    };
    std::vector<Branch> br(top.size());
    parallel_for(top.size(), opt.threads, [&](std::size_t b) {
        PlainSearch s(region);
        for (int i : top[b].second) s.covered[i] = 1;
        s.acc.push_back(top[b].first);
        auto emit = [&](const std::vector<Pose>& t) {
            ++br[b].count;
            if (br[b].samples.size() < opt.witnesses) br[b].samples.push_back(t);
            if (opt.cap && br[b].count >= opt.cap) {
                br[b].capped = true;
                return false;
            }
            return true;
        };
        if (s.pockets_ok()) s.run(emit);
    });
    PlainCount out;
    for (auto& b : br) {
        out.count += b.count;
        out.capped = out.capped || b.capped;
        for (auto& t : b.samples)
            if (out.samples.size() < opt.witnesses) out.samples.push_back(std::move(t));
    }
    if (opt.cap && out.count >= opt.cap) {
        out.capped = out.capped || out.count > opt.cap;
        out.count = std::min(out.count, opt.cap);
    }
    return out;
}

// ---- marked search -------------------------------------------------------------

namespace {

// labels and ports as small integers:
//   j | out-or-forward << 3 | (ch2 + 1) << 4 | (ch3 + 1) << 7 | l1 << 9
constexpr int kNoEdge = -1;

int port_code(const Port& p) {
    if (p.kind != PortKind::Edge) return kNoEdge;
    int c3 = p.c3 == SpecKind::None ? 0 : p.c3v + 1;
    return p.j | (p.out ? 8 : 0) | ((p.c2v + 1) << 4) | (c3 << 7) | (p.l1 ? 512 : 0);
}

EdgeLabel decode(int code) {
    EdgeLabel l;
    l.j = code & 7;
    l.forward = (code >> 3) & 1;
    l.ch2 = ((code >> 4) & 7) - 1;
    int c3 = (code >> 7) & 3;
    if (c3) l.ch3 = static_cast<Terminal>(c3 - 1);
    l.l1 = (code >> 9) & 1;
    return l;
}

int encode(const EdgeLabel& l) {
    return l.j | (l.forward ? 8 : 0) | ((l.ch2 + 1) << 4) | ((l.ch3 ? static_cast<int>(*l.ch3) + 1 : 0) << 7) |
           (l.l1 ? 512 : 0);
}

struct OrientedPiece {
    const VertexPiece* piece;
    Lin lin;
};

struct FullOpt {
    std::array<int, 6> ports;
    std::array<Mark, 6> secs;
    OrientedPiece src;
};
struct SideOpt {  // Half: 4 ports from the start; Side: the 2 middle ones
    std::array<int, 4> ports;
    std::array<Mark, 3> secs;
    OrientedPiece src;
};
struct RunOpt {
    std::array<int, 2> ports;  // at k and k + 3
    OrientedPiece src;
};

struct Options {
    std::vector<VertexPiece> concrete;
    std::vector<FaceType> faces;
    std::vector<FullOpt> full;
    std::array<std::vector<SideOpt>, 6> half, side;
    std::array<std::vector<RunOpt>, 3> run;

    explicit Options(const TileSet& ts) : faces(ts.faces.begin(), ts.faces.end()) {
        std::set<VertexPiece> cs;
        for (const auto& t : ts.vertices)
            for (auto& c : concretizations(t, ts.edges)) cs.insert(std::move(c));
        concrete.assign(cs.begin(), cs.end());
        for (const auto& p : concrete)
            for (const auto& [l, o] : orientations(p)) {
                OrientedPiece src{&p, l};
                if (p.form == VertexForm::Full) {
                    FullOpt f;
                    for (int k = 0; k < 6; ++k) {
                        f.ports[k] = port_code(*o.ports[k]);
                        f.secs[k] = *o.sectors[k];
                    }
                    f.src = src;
                    full.push_back(f);
                } else if (p.form == VertexForm::Run) {
                    int k = 0;
                    while (!o.ports[k]) ++k;
                    run[k].push_back({{port_code(*o.ports[k]), port_code(*o.ports[k + 3])}, src});
                } else {
                    int s = 0;
                    while (!(o.sectors[s] && !o.sectors[(s + 5) % 6])) ++s;
                    SideOpt h;
                    h.src = src;
                    for (int i = 0; i < 3; ++i) h.secs[i] = *o.sectors[(s + i) % 6];
                    for (int i = 0; i < 4; ++i) {
                        const auto& q = o.ports[(s + i) % 6];
                        h.ports[i] = q ? port_code(*q) : kNoEdge;
                    }
                    (p.form == VertexForm::Half ? half : side)[s].push_back(h);
                }
            }
    }
};

constexpr int kFree = -3, kBoundary = -2, kInside = -1;

struct VertexConf {
    Vtx v;
    std::array<int, 6> port;   // kFree / kBoundary / kInside / interior edge index
    std::array<bool, 6> flip;  // v is the larger endpoint of that edge
    std::array<int, 6> face;   // sector's sphinx, -1 outside
    std::array<int, 6> corner;  // corner index of v on that sphinx
};

struct Geometry {
    const Region* region;
    std::vector<Pose> poses;
    std::vector<Edge> iedges;
    std::map<Edge, int> eidx;
    std::vector<VertexConf> order;  // search order
    // per interior edge: (sphinx, segment, segment start is edge.a)
    std::vector<std::vector<std::tuple<int, int, bool>>> eseg;
    // per sphinx: its interior segments (edge index, segment, start is edge.a)
    std::vector<std::vector<std::tuple<int, int, bool>>> fseg;
};

std::map<Vtx, int> boundary_distance(const Region& region) {
    std::map<Edge, int> cnt;
    for (const auto& c : region)
        for (const auto& e : cell_edges(c)) ++cnt[e];
    std::map<Vtx, std::set<Vtx>> adj;
    std::map<Vtx, int> dist;
    std::deque<Vtx> q;
    for (const auto& [e, k] : cnt) {
        adj[e.a].insert(e.b);
        adj[e.b].insert(e.a);
    }
    for (const auto& [e, k] : cnt)
        if (k == 1)
            for (Vtx v : {e.a, e.b})
                if (dist.emplace(v, 0).second) q.push_back(v);
    while (!q.empty()) {
        Vtx x = q.front();
        q.pop_front();
        for (Vtx y : adj[x])
            if (dist.emplace(y, dist[x] + 1).second) q.push_back(y);
    }
    return dist;
}

Geometry make_geometry(const Region& region, const std::map<Vtx, int>& dist, const std::vector<Pose>& poses) {
    Geometry g;
    g.region = &region;
    g.poses = poses;
    std::map<TriCell, int> face_of;
    for (int f = 0; f < static_cast<int>(poses.size()); ++f)
        for (const auto& c : place(canonical_sphinx(), poses[f])) face_of[c] = f;
    // deepest first; only breaks ties in the search
    std::vector<Vtx> vs;
    for (const auto& [v, d] : dist) vs.push_back(v);
    std::stable_sort(vs.begin(), vs.end(), [&](Vtx a, Vtx b) { return dist.at(a) > dist.at(b); });
    const auto& sb = sphinx_boundary_vertices();
    for (Vtx v : vs) {
        VertexConf vc;
        vc.v = v;
        for (int k = 0; k < 6; ++k) {
            auto it = face_of.find(sector_cell(v, k));
            vc.face[k] = it == face_of.end() ? -1 : it->second;
            vc.corner[k] = -1;
            if (vc.face[k] >= 0)
                for (int q = 0; q < 8; ++q)
                    if (apply(poses[vc.face[k]], sb[q]) == v) vc.corner[k] = q;
        }
        for (int k = 0; k < 6; ++k) {
            int a = vc.face[(k + 5) % 6], b = vc.face[k];
            Edge e = make_edge(v, v + kDirs[k]);
            vc.flip[k] = !(e.a == v);
            if (a < 0 && b < 0)
                vc.port[k] = kFree;
            else if ((a < 0) != (b < 0))
                vc.port[k] = kBoundary;
            else if (a == b)
                vc.port[k] = kInside;
            else {
                auto [it, fresh] = g.eidx.try_emplace(e, static_cast<int>(g.iedges.size()));
                if (fresh) g.iedges.push_back(e);
                vc.port[k] = it->second;
            }
        }
        g.order.push_back(vc);
    }
    g.eseg.resize(g.iedges.size());
    g.fseg.resize(poses.size());
    for (int f = 0; f < static_cast<int>(poses.size()); ++f)
        for (int k = 0; k < 8; ++k) {
            Vtx a = apply(poses[f], sb[k]), b = apply(poses[f], sb[(k + 1) % 8]);
            auto it = g.eidx.find(make_edge(a, b));
            if (it == g.eidx.end()) continue;
            bool a_first = make_edge(a, b).a == a;
            g.eseg[it->second].push_back({f, k, a_first});
            g.fseg[f].push_back({it->second, k, a_first});
        }
    return g;
}

struct Solution {
    std::vector<int> faces;  // face type index per sphinx
    std::vector<int> labels;  // code per interior edge
    std::vector<std::vector<OrientedPiece>> vertex;  // per vertex of Geometry::order
};

// Face types are kept as candidate sets that shrink as labels and corner
// marks get fixed.  The next vertex is always the one with the fewest local
// solutions left.
class MarkedSearch {
public:
    MarkedSearch(const Options& o, const Geometry& g, std::uint64_t cap) : opt_(o), g_(g), cap_(cap) {
        if (o.faces.size() > 32) throw std::logic_error("too many face types");
        dom_.assign(g.poses.size(), o.faces.size() == 32 ? ~0u : (1u << o.faces.size()) - 1);
        lab_.assign(g.iedges.size(), -1);
        chosen_.resize(g.order.size());
        done_.assign(g.order.size(), false);
    }

    // returns false when stopped by the cap
    bool run(const std::function<void(const Solution&)>& emit) {
        emit_ = &emit;
        return rec(0);
    }
    std::uint64_t count() const { return count_; }

private:
    // labels of the six ports (-2 untouched), then the six sector marks
    // (-1 outside the region)
    using Key = std::array<int, 12>;
    using Sols = std::map<Key, std::vector<OrientedPiece>>;

    const Options& opt_;
    const Geometry& g_;
    std::uint64_t cap_;
    std::uint64_t count_ = 0;
    const std::function<void(const Solution&)>* emit_ = nullptr;
    std::vector<std::uint32_t> dom_;
    std::vector<int> lab_;
    std::vector<std::vector<OrientedPiece>> chosen_;
    std::vector<bool> done_;

    bool seg_ok(int t, int k, bool a_first, int code) const {
        const auto& seg = opt_.faces[t].segs[k];
        bool l1 = (code >> 9) & 1;
        if (!seg) return !l1;
        if (!l1 || seg->j != (code & 7)) return false;
        bool fwd = (code >> 3) & 1;
        return (fwd == a_first) == seg->with_ccw;
    }

    bool mark_ok(const VertexConf& vc, int k, Mark m) const {
        int f = vc.face[k];
        if (f < 0) return true;
        for (std::uint32_t d = dom_[f]; d; d &= d - 1)
            if (opt_.faces[std::countr_zero(d)].marks[vc.corner[k]] == m) return true;
        return false;
    }

    bool secs_ok(const VertexConf& vc, int start, const Mark* secs, int n) const {
        for (int i = 0; i < n; ++i)
            if (!mark_ok(vc, (start + i) % 6, secs[i])) return false;
        return true;
    }

    void put_secs(const VertexConf& vc, Key& key, int start, const Mark* secs, int n) const {
        for (int i = 0; i < n; ++i) {
            int k = (start + i) % 6;
            key[6 + k] = vc.face[k] < 0 ? -1 : static_cast<int>(secs[i]);
        }
    }

    // match port code p at direction k; writes the label an open edge gets
    bool port_ok(const VertexConf& vc, int k, int p, int& assign) const {
        assign = -2;
        int kind = vc.port[k];
        if (kind == kFree) return true;
        if (kind == kBoundary) return p != kNoEdge;
        if (kind == kInside) return p == kNoEdge;
        if (p == kNoEdge) return false;
        int code = vc.flip[k] ? (p ^ 8) : p;
        if (lab_[kind] >= 0) return lab_[kind] == code;
        // the label must still fit some candidate type of each face it borders
        for (auto [f, s, a_first] : g_.eseg[kind]) {
            bool any = false;
            for (std::uint32_t d = dom_[f]; d && !any; d &= d - 1) any = seg_ok(std::countr_zero(d), s, a_first, code);
            if (!any) return false;
        }
        assign = code;
        return true;
    }

    // distinct local outcomes at vertex vi; pieces that leave the same labels
    // and marks behind are interchangeable
    Sols solutions(std::size_t vi) const {
        const VertexConf& vc = g_.order[vi];
        Sols sols;
        for (const auto& f : opt_.full) {
            if (!secs_ok(vc, 0, f.secs.data(), 6)) continue;
            Key a;
            bool ok = true;
            for (int k = 0; k < 6 && ok; ++k) ok = port_ok(vc, k, f.ports[k], a[k]);
            if (!ok) continue;
            put_secs(vc, a, 0, f.secs.data(), 6);
            sols.try_emplace(a, std::vector<OrientedPiece>{f.src});
        }
        for (int k = 0; k < 3; ++k) {
            // the two sides of line k must agree on the raw port codes at k
            // and k + 3, also where those ports carry no interior label
            using Raw = std::pair<int, int>;
            std::map<Raw, const RunOpt*> runs;
            for (const auto& r : opt_.run[k]) {
                int x, y;
                if (port_ok(vc, k, r.ports[0], x) && port_ok(vc, k + 3, r.ports[1], y))
                    runs.try_emplace({r.ports[0], r.ports[1]}, &r);
            }
            std::array<std::map<std::pair<Raw, Key>, std::vector<OrientedPiece>>, 2> sides;
            for (int h = 0; h < 2; ++h) {
                int s = k + 3 * h;
                for (const auto& o : opt_.half[s]) {
                    if (!secs_ok(vc, s, o.secs.data(), 3)) continue;
                    Key a;
                    a.fill(-2);
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i) ok = port_ok(vc, (s + i) % 6, o.ports[i], a[(s + i) % 6]);
                    if (!ok) continue;
                    put_secs(vc, a, s, o.secs.data(), 3);
                    Raw raw = h == 0 ? Raw{o.ports[0], o.ports[3]} : Raw{o.ports[3], o.ports[0]};
                    sides[h].try_emplace({raw, a}, std::vector<OrientedPiece>{o.src});
                }
                if (runs.empty()) continue;
                std::map<Key, const SideOpt*> mids;
                for (const auto& o : opt_.side[s]) {
                    if (!secs_ok(vc, s, o.secs.data(), 3)) continue;
                    Key a;
                    a.fill(-2);
                    bool ok = true;
                    for (int i = 1; i < 3 && ok; ++i) ok = port_ok(vc, (s + i) % 6, o.ports[i], a[(s + i) % 6]);
                    if (!ok) continue;
                    put_secs(vc, a, s, o.secs.data(), 3);
                    mids.try_emplace(a, &o);
                }
                for (const auto& [a, o] : mids)
                    for (const auto& [raw, r] : runs) {
                        Key b = a;
                        port_ok(vc, k, raw.first, b[k]);
                        port_ok(vc, k + 3, raw.second, b[k + 3]);
                        sides[h].try_emplace({raw, b}, std::vector<OrientedPiece>{o->src, r->src});
                    }
            }
            std::map<Raw, std::vector<const std::pair<const std::pair<Raw, Key>, std::vector<OrientedPiece>>*>> by_run;
            for (const auto& e : sides[1]) by_run[e.first.first].push_back(&e);
            for (const auto& [rk0, s0] : sides[0]) {
                auto it = by_run.find(rk0.first);
                if (it == by_run.end()) continue;
                for (const auto* e1 : it->second) {
                    const Key& a1 = e1->first.second;
                    const auto& s1 = e1->second;
                    Key a = rk0.second;
                    for (int i = 1; i < 3; ++i) a[(k + 3 + i) % 6] = a1[(k + 3 + i) % 6];
                    for (int i = 0; i < 3; ++i) a[6 + (k + 3 + i) % 6] = a1[6 + (k + 3 + i) % 6];
                    std::vector<OrientedPiece> src = s0;
                    bool run_used = s0.size() == 2;
                    for (const auto& p : s1)
                        if (!(run_used && p.piece->form == VertexForm::Run)) src.push_back(p);
                    sols.try_emplace(a, std::move(src));
                }
            }
        }
        return sols;
    }

    // narrow face candidates to what the chosen outcome fixes; false on a wipe-out
    bool apply(const VertexConf& vc, const Key& a) {
        for (int k = 0; k < 6; ++k) {
            int f = vc.face[k];
            if (f < 0) continue;
            std::uint32_t keep = 0;
            for (std::uint32_t d = dom_[f]; d; d &= d - 1) {
                int t = std::countr_zero(d);
                if (static_cast<int>(opt_.faces[t].marks[vc.corner[k]]) == a[6 + k]) keep |= 1u << t;
            }
            if (!(dom_[f] = keep)) return false;
        }
        for (int k = 0; k < 6; ++k) {
            if (a[k] < 0) continue;
            int e = vc.port[k];
            lab_[e] = a[k];
            for (auto [f, s, a_first] : g_.eseg[e]) {
                std::uint32_t keep = 0;
                for (std::uint32_t d = dom_[f]; d; d &= d - 1) {
                    int t = std::countr_zero(d);
                    if (seg_ok(t, s, a_first, a[k])) keep |= 1u << t;
                }
                if (!(dom_[f] = keep)) return false;
            }
        }
        return true;
    }

    bool leaf(std::vector<int>& ft, std::size_t f) {
        if (f == ft.size()) {
            ++count_;
            (*emit_)(Solution{ft, lab_, chosen_});
            return !(cap_ && count_ >= cap_);
        }
        for (std::uint32_t d = dom_[f]; d; d &= d - 1) {
            ft[f] = std::countr_zero(d);
            if (!leaf(ft, f + 1)) return false;
        }
        return true;
    }

    bool rec(std::size_t depth) {
        if (depth == g_.order.size()) {
            std::vector<int> ft(dom_.size(), -1);
            return leaf(ft, 0);
        }
        std::size_t pick = 0;
        Sols best;
        bool have = false;
        for (std::size_t vi = 0; vi < g_.order.size(); ++vi) {
            if (done_[vi]) continue;
            Sols s = solutions(vi);
            if (s.empty()) return true;
            if (!have || s.size() < best.size()) {
                pick = vi;
                best = std::move(s);
                have = true;
                if (best.size() == 1) break;
            }
        }
        const VertexConf& vc = g_.order[pick];
        done_[pick] = true;
        auto saved_dom = dom_;
        bool go = true;
        for (const auto& [a, src] : best) {
            if (apply(vc, a)) {
                chosen_[pick] = src;
                go = rec(depth + 1);
            }
            dom_ = saved_dom;
            for (int k = 0; k < 6; ++k)
                if (a[k] >= 0) lab_[vc.port[k]] = -1;
            if (!go) break;
        }
        done_[pick] = false;
        return go;
    }
};

MarkedTiling to_tiling(const Options& o, const Geometry& g, const Solution& s) {
    MarkedTiling t;
    t.poses = g.poses;
    for (int f : s.faces) t.faces.push_back(o.faces[f]);
    for (std::size_t e = 0; e < g.iedges.size(); ++e) t.labels[g.iedges[e]] = decode(s.labels[e]);
    for (std::size_t vi = 0; vi < g.order.size(); ++vi)
        for (const auto& p : s.vertex[vi])
            t.vertex_tiles.push_back({MarkedTile{TileKind::VertexTile, {}, {}, *p.piece}, Pose::from(g.order[vi].v, p.lin)});
    return t;
}

std::vector<std::vector<Pose>> all_geometries(const Region& region, int threads) {
    SearchOptions so;
    so.witnesses = static_cast<std::size_t>(-1);
    so.threads = threads;
    return count_plain_tilings(region, so).samples;
}

}  // namespace

std::vector<PlacedTile> MarkedTiling::placements() const {
    std::vector<PlacedTile> out;
    for (std::size_t i = 0; i < poses.size(); ++i) out.push_back({MarkedTile{TileKind::TileTile, faces[i], {}, {}}, poses[i]});
    for (const auto& [e, l] : labels) {
        Vtx tail = l.forward ? e.a : e.b, head = l.forward ? e.b : e.a;
        out.push_back({MarkedTile{TileKind::EdgeTile, {}, type_of(l), {}}, Pose{tail, dir_index(head - tail), false}});
    }
    out.insert(out.end(), vertex_tiles.begin(), vertex_tiles.end());
    return out;
}

MarkedCount count_marked_tilings(const Region& region, const TileSet& tiles, const SearchOptions& opt) {
    check_region(region);
    Options o(tiles);
    auto geos = all_geometries(region, opt.threads);
    auto dist = boundary_distance(region);
    struct Part {
        std::uint64_t count = 0;
        bool capped = false;
        std::vector<MarkedTiling> samples;
    };
    std::vector<Part> parts(geos.size());
    parallel_for(geos.size(), opt.threads, [&](std::size_t i) {
        Geometry g = make_geometry(region, dist, geos[i]);
        MarkedSearch s(o, g, opt.cap);
        parts[i].capped = !s.run([&](const Solution& sol) {
            if (parts[i].samples.size() < opt.witnesses) parts[i].samples.push_back(to_tiling(o, g, sol));
        });
        parts[i].count = s.count();
    });
    MarkedCount out;
    out.geometries = geos.size();
    for (auto& p : parts) {
        out.count += p.count;
        out.capped = out.capped || p.capped;
        for (auto& t : p.samples)
            if (out.samples.size() < opt.witnesses) out.samples.push_back(std::move(t));
    }
    if (opt.cap && out.count >= opt.cap) {
        out.capped = out.capped || out.count > opt.cap;
        out.count = std::min(out.count, opt.cap);
    }
    return out;
}

// ---- enforcement -------------------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const TileSet& verifier_tileset(bool strip3) {
    static const TileSet full = enumerate_tileset(5).tiles;
    static const TileSet stripped = strip_channel3(full);
    return strip3 ? stripped : full;
}

std::string Evidence::summary() const {
    std::ostringstream os;
    os << "level " << level << " collar " << collar << (strip3 ? " channel3-stripped" : "") << ": " << to_string(verdict)
       << "\n";
    os << "geometries " << geometries << " labelings " << labelings << " non-decorations " << non_decorations << "\n";
    os << "core cells " << core_cells << " core edges " << core_edges << "\n";
    os << "matched contexts";
    for (const auto& c : matched) os << ' ' << to_string(c);
    os << "\n";
    if (counterexample) os << "counterexample differs from the nearest decoration in " << counterexample_diff << " core items\n";
    return os.str();
}

Evidence verify_enforcement(int n, int collar, const VerifyOptions& opt) {
    if (n < 1) throw std::invalid_argument("verify_enforcement needs n >= 1");
    if (collar < 0) throw std::invalid_argument("collar must be >= 0");
    Evidence ev;
    ev.level = n;
    ev.collar = collar;
    ev.strip3 = opt.strip3;
    Region region = supertile_region(n);
    check_region(region);
    const TileSet& ts = verifier_tileset(opt.strip3);
    Options o(ts);
    auto dist = boundary_distance(region);

    std::vector<TriCell> core_cells;
    for (const auto& c : region) {
        auto cv = corners(c);
        if (std::all_of(cv.begin(), cv.end(), [&](Vtx v) { return dist.at(v) >= collar; })) core_cells.push_back(c);
    }
    std::map<Edge, int> cnt;
    for (const auto& c : region)
        for (const auto& e : cell_edges(c)) ++cnt[e];
    std::vector<Edge> core_edges;
    for (const auto& [e, k] : cnt)
        if (k == 2 && dist.at(e.a) >= collar && dist.at(e.b) >= collar) core_edges.push_back(e);
    ev.core_cells = core_cells.size();
    ev.core_edges = core_edges.size();

    struct Ref {
        ParentContext ctx;
        std::map<TriCell, std::pair<Pose, FaceType>> face;
        std::map<Edge, EdgeLabel> label;
    };
    std::vector<Ref> refs;
    for (auto [idx, w] : valid_contexts()) {
        DecoratedSupertile d = decorate_supertile(n, {idx, w}, opt.strip3);
        Ref r;
        r.ctx = {idx, w};
        for (std::size_t i = 0; i < d.leaf_nodes.size(); ++i)
            for (const auto& c : place(canonical_sphinx(), d.leaf_nodes[i]->pose))
                r.face[c] = {d.leaf_nodes[i]->pose, d.faces[i]};
        r.label = d.labels;
        refs.push_back(std::move(r));
    }

    auto geos = all_geometries(region, opt.threads);
    ev.geometries = geos.size();
    struct Part {
        std::uint64_t count = 0, bad = 0;
        bool capped = false;
        std::set<ParentContext> matched;
        std::optional<MarkedTiling> worst;
        std::size_t diff = 0;
    };
    std::vector<Part> parts(geos.size());
    parallel_for(geos.size(), opt.threads, [&](std::size_t gi) {
        Part& part = parts[gi];
        Geometry g = make_geometry(region, dist, geos[gi]);
        std::map<TriCell, int> face_of;
        for (int f = 0; f < static_cast<int>(g.poses.size()); ++f)
            for (const auto& c : place(canonical_sphinx(), g.poses[f])) face_of[c] = f;
        std::vector<int> core_eidx;
        for (const auto& e : core_edges) {
            auto it = g.eidx.find(e);
            core_eidx.push_back(it == g.eidx.end() ? -1 : it->second);
        }
        std::vector<std::vector<int>> ref_codes;
        for (const auto& r : refs) {
            std::vector<int> codes;
            for (const auto& e : core_edges) {
                auto it = r.label.find(e);
                codes.push_back(it == r.label.end() ? -1 : encode(it->second));
            }
            ref_codes.push_back(std::move(codes));
        }
        MarkedSearch s(o, g, opt.cap);
        part.capped = !s.run([&](const Solution& sol) {
            std::size_t best = static_cast<std::size_t>(-1);
            for (std::size_t ri = 0; ri < refs.size(); ++ri) {
                std::size_t diff = 0;
                for (const auto& c : core_cells) {
                    int f = face_of.at(c);
                    const auto& [pose, ft] = refs[ri].face.at(c);
                    if (!(pose == g.poses[f]) || !(ft == o.faces[sol.faces[f]])) ++diff;
                }
                for (std::size_t i = 0; i < core_edges.size(); ++i) {
                    int mine = core_eidx[i] < 0 ? -1 : sol.labels[core_eidx[i]];
                    if (mine != ref_codes[ri][i]) ++diff;
                }
                if (diff == 0) part.matched.insert(refs[ri].ctx);
                best = std::min(best, diff);
                if (diff == 0) break;
            }
            if (best > 0) {
                ++part.bad;
                if (!part.worst || best < part.diff) {
                    part.worst = to_tiling(o, g, sol);
                    part.diff = best;
                }
            }
        });
        part.count = s.count();
    });
    bool capped = false;
    for (auto& p : parts) {
        ev.labelings += p.count;
        ev.non_decorations += p.bad;
        capped = capped || p.capped;
        ev.matched.insert(p.matched.begin(), p.matched.end());
        if (p.worst && (!ev.counterexample || p.diff < ev.counterexample_diff)) {
            ev.counterexample = std::move(p.worst);
            ev.counterexample_diff = p.diff;
        }
    }
    if (ev.non_decorations > 0)
        ev.verdict = Verdict::Fail;
    else if (capped)
        ev.verdict = Verdict::Inconclusive;
    else
        ev.verdict = Verdict::Pass;
    return ev;
}

}  // namespace sphinx
