#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "sphinx/enforcement.hpp"
#include "sphinx/io.hpp"
#include "sphinx/markedset.hpp"
#include "sphinx/render.hpp"
#include "sphinx/substitution.hpp"

using namespace sphinx;

namespace {

// exit codes, see README
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;
constexpr int kResource = 4;
constexpr int kError = 5;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

ParentContext parse_context(const std::string& s) {
    if (s == "none") return {};
    if (s.size() != 4 || s[0] != 'S' || s[2] != '/' || s[1] < '0' || s[1] > '3')
        throw UsageError("context must be none or S<0-3>/<A|B|->");
    ParentContext c;
    c.index = s[1] - '0';
    if (s[3] == 'A')
        c.wire = Terminal::A;
    else if (s[3] == 'B')
        c.wire = Terminal::B;
    else if (s[3] != '-')
        throw UsageError("wire class must be A, B or -");
    if (!valid_context(c.index, c.wire)) throw UsageError("context " + s + " never occurs");
    return c;
}

// malformed arguments are usage errors, malformed files are not
template <class F>
auto arg(F parse, const std::string& s) {
    try {
        return parse(s);
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
}

std::vector<DocPlacement> doc_placements(const std::vector<PlacedTile>& ps) {
    std::vector<DocPlacement> out;
    for (const auto& p : ps) out.push_back({p.tile, p.pose});
    return out;
}

std::string uint_text(std::uint64_t v) { return std::to_string(v); }

// ---- subcommands --------------------------------------------------------------

struct GenerateArgs {
    int level = 1;
    std::string pose = "0,0,0";
    std::string decorate;  // context, empty: plain sphinxes
    bool strip3 = false;
    std::string out;
};

int cmd_generate(const GenerateArgs& a) {
    Pose pose = arg(parse_pose, a.pose);
    TilingDocument doc;
    doc.meta = {{"kind", "supertile"}, {"level", std::to_string(a.level)}, {"root", pose_spec(pose)}};
    if (a.decorate.empty()) {
        SupertileNode root = generate(a.level, pose);
        for (const auto* l : leaves(root)) doc.placements.push_back({std::nullopt, l->pose});
    } else {
        if (!(pose == identity_pose())) throw UsageError("--decorate needs the identity pose");
        if (a.level < 1) throw UsageError("--decorate needs --level >= 1");
        ParentContext ctx = parse_context(a.decorate);
        doc.meta.push_back({"context", to_string(ctx)});
        if (a.strip3) doc.meta.push_back({"channel3", "stripped"});
        doc.placements = doc_placements(decorate_supertile(a.level, ctx, a.strip3).placements());
    }
    emit(serialize(doc), a.out);
    return kOk;
}

int cmd_decompose(const std::string& in) {
    TilingDocument doc = parse_tiling(read_file(in));
    Patch patch;
    for (const auto& p : doc.placements)
        if (!p.tile || p.tile->kind == TileKind::TileTile) patch.push_back(p.pose);
    if (patch.empty()) throw FormatError("no sphinx placements in " + in);
    int level = 0;
    while (patch.size() > 1) {
        auto gs = decompose(patch, level);
        if (gs.size() != 1) {
            std::cout << "level " << level << ": " << patch.size() << " tiles, " << gs.size()
                      << " groupings into complete parents\n";
            std::cout << (gs.empty() ? "not a supertile\n" : "ambiguous\n");
            return kFail;
        }
        patch = gs[0].parents;
        ++level;
        std::cout << "level " << level << ": " << patch.size() << " supertiles\n";
    }
    std::cout << "root level " << level << " pose " << pose_spec(patch[0]) << "\n";
    return kOk;
}

int cmd_enumerate(int max_level, const std::string& out) {
    TilesetReport r = enumerate_tileset(max_level);
    TilesetDocument doc;
    doc.meta = {{"closure-level", std::to_string(r.closure_level)},
                {"faces", std::to_string(r.tiles.faces.size())},
                {"edges", std::to_string(r.tiles.edges.size())},
                {"vertex-templates", std::to_string(r.tiles.vertices.size())},
                {"vertex-concrete", std::to_string(concrete_vertex_tile_count(r.tiles))}};
    doc.tiles = r.tiles.tiles();
    write_file(out, serialize(doc));
    std::cout << "closure level " << r.closure_level << ", " << doc.tiles.size() << " tiles\n";
    return kOk;
}

struct VerifyArgs {
    int level = 1;
    int collar = 0;
    bool strip3 = false;
    std::uint64_t cap = VerifyOptions{}.cap;
    std::string witness;
};

int cmd_verify(const VerifyArgs& a, int threads) {
    VerifyOptions opt;
    opt.strip3 = a.strip3;
    opt.cap = a.cap;
    opt.threads = threads;
    Evidence ev = verify_enforcement(a.level, a.collar, opt);
    std::cout << ev.summary();
    if (ev.counterexample && !a.witness.empty()) {
        TilingDocument doc;
        doc.meta = {{"kind", "counterexample"},
                    {"level", std::to_string(a.level)},
                    {"collar", std::to_string(a.collar)},
                    {"core-differences", std::to_string(ev.counterexample_diff)}};
        doc.placements = doc_placements(ev.counterexample->placements());
        write_file(a.witness, serialize(doc));
    }
    switch (ev.verdict) {
        case Verdict::Pass: return kOk;
        case Verdict::Fail: return kFail;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kError;
}

struct CountArgs {
    std::string region;
    std::string tileset = "plain";
    std::string tiles_file;  // optional tileset document for --tileset marked
    std::uint64_t cap = 0;
    std::string witness;
};

int cmd_count(const CountArgs& a, int threads) {
    Region region = arg(parse_region, a.region);
    SearchOptions opt;
    opt.cap = a.cap;
    opt.threads = threads;
    opt.witnesses = a.witness.empty() ? 0 : 1;
    TilingDocument wdoc;
    wdoc.meta = {{"kind", "witness"}, {"region", a.region}};
    std::uint64_t count = 0;
    bool capped = false;
    if (a.tileset == "plain") {
        PlainCount c = count_plain_tilings(region, opt);
        count = c.count;
        capped = c.capped;
        if (!c.samples.empty())
            for (const auto& p : c.samples[0]) wdoc.placements.push_back({std::nullopt, p});
        std::cout << "tileset plain\n";
    } else if (a.tileset == "marked") {
        TileSet ts = verifier_tileset(false);
        if (!a.tiles_file.empty()) {
            TileSet own;
            for (const auto& t : parse_tileset(read_file(a.tiles_file)).tiles) {
                if (t.kind == TileKind::TileTile) own.faces.insert(t.face);
                if (t.kind == TileKind::EdgeTile) own.edges.insert(t.edge);
                if (t.kind == TileKind::VertexTile) own.vertices.insert(t.vertex);
            }
            ts = own;
        }
        MarkedCount c = count_marked_tilings(region, ts, opt);
        count = c.count;
        capped = c.capped;
        if (!c.samples.empty()) wdoc.placements = doc_placements(c.samples[0].placements());
        std::cout << "tileset marked\ngeometries " << uint_text(c.geometries) << "\n";
    } else {
        throw UsageError("--tileset must be plain or marked");
    }
    std::cout << "region " << region.size() << " cells\n";
    std::cout << "count " << uint_text(count) << (capped ? " (capped)" : "") << "\n";
    if (!a.witness.empty() && !wdoc.placements.empty()) write_file(a.witness, serialize(wdoc));
    return capped ? kInconclusive : kOk;
}

struct RenderArgs {
    std::string in, out;
    bool catalog = false;
    bool labels = false;
    double unit = RenderOptions{}.unit;
};

int cmd_render(const RenderArgs& a) {
    RenderOptions opt;
    opt.labels = a.labels;
    opt.unit = a.unit;
    std::string text = read_file(a.in);
    std::string svg = a.catalog ? render_catalog(parse_tileset(text).tiles, opt)
                                : render_tiling(parse_tiling(text).placements, opt);
    emit(svg, a.out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sphinx substitution tilings and their marked tiles"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for the exhaustive searches")->check(CLI::Range(1, 256));

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "write the sphinxes of a level-N supertile");
    g->add_option("--level", gen.level, "supertile level")->required()->check(CLI::Range(0, 30));
    g->add_option("--pose", gen.pose, "root pose x,y,r[,m]");
    g->add_option("--decorate", gen.decorate, "write marked tiles for a parent context (none, S0/A, ...)");
    g->add_flag("--strip-channel3", gen.strip3, "drop the vertex-wire channel when decorating");
    g->add_option("--out", gen.out, "output file (default stdout)");

    std::string dec_in;
    auto* d = app.add_subcommand("decompose", "recover the supertile hierarchy of a tiling file");
    d->add_option("--in", dec_in, "tiling document")->required();

    int max_level = 5;
    std::string enum_out;
    auto* e = app.add_subcommand("enumerate-tiles", "enumerate the marked tile set up to closure");
    e->add_option("--max-level", max_level, "deepest supertile level examined")->required()->check(CLI::Range(2, 8));
    e->add_option("--out", enum_out, "tileset document")->required();

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify-enforcement", "exhaustively check that marked tilings are decorations");
    v->add_option("--level", ver.level, "supertile level")->required()->check(CLI::Range(1, 6));
    v->add_option("--collar", ver.collar, "width of the ignored boundary band")->required()->check(CLI::NonNegativeNumber);
    v->add_flag("--strip-channel3", ver.strip3, "control run without vertex wires");
    v->add_option("--cap", ver.cap, "labelings per geometry before giving up (0: none)");
    v->add_option("--witness", ver.witness, "write the counterexample here");

    CountArgs cnt;
    auto* c = app.add_subcommand("count-tilings", "count tilings of a region");
    c->add_option("--region", cnt.region, "supertile:N[:pose] or cells:U0,0;D0,0;...")->required();
    c->add_option("--tileset", cnt.tileset, "plain or marked")->required();
    c->add_option("--tiles", cnt.tiles_file, "tileset document used with --tileset marked");
    c->add_option("--cap", cnt.cap, "stop after this many tilings (0: none)");
    c->add_option("--witness", cnt.witness, "write the first tiling found here");

    RenderArgs ren;
    auto* r = app.add_subcommand("render", "draw a tiling or tileset document as SVG");
    r->add_option("--in", ren.in, "input document")->required();
    r->add_option("--out", ren.out, "SVG file (default stdout)");
    r->add_flag("--catalog", ren.catalog, "input is a tileset; draw the catalogue");
    r->add_flag("--labels", ren.labels, "attach tile records as titles");
    r->add_option("--unit", ren.unit, "pixels per lattice unit")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*g) return cmd_generate(gen);
        if (*d) return cmd_decompose(dec_in);
        if (*e) return cmd_enumerate(max_level, enum_out);
        if (*v) return cmd_verify(ver, threads);
        if (*c) return cmd_count(cnt, threads);
        if (*r) return cmd_render(ren);
    } catch (const UsageError& err) {
        std::cerr << "usage: " << err.what() << "\n";
        return kUsage;
    } catch (const ResourceLimit& err) {
        std::cerr << err.what() << "\n";
        return kResource;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kError;
    }
    return kUsage;
}
