#include "sphinx/substitution.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace sphinx {

namespace {

std::size_t env_cap(const char* name, std::size_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || x == 0) return fallback;
    return static_cast<std::size_t>(x);
}

void build(SupertileNode& node) {
    if (node.level == 0) return;
    node.children.reserve(4);
    for (auto [i, p] : substitute(node.pose, node.level)) {
        SupertileNode c;
        c.level = node.level - 1;
        c.pose = p;
        c.child_index = i;
        c.path = node.path;
        c.path.push_back(i);
        build(c);
        node.children.push_back(std::move(c));
    }
}

void collect(const SupertileNode& n, std::vector<const SupertileNode*>& out, bool leaves_only) {
    if (!leaves_only || n.level == 0) out.push_back(&n);
    for (const auto& c : n.children) collect(c, out, leaves_only);
}

}  // namespace

const std::array<ChildRule, 4>& child_table() {
    // the unique dissection of the doubled sphinx into four sphinxes
    static const std::array<ChildRule, 4> t{{
        {{3, 0}, {3, true}},
        {{0, 4}, {4, false}},
        {{1, 2}, {0, true}},
        {{6, 0}, {3, true}},
    }};
    return t;
}

std::size_t max_leaves() { return env_cap("SPHINX_MAX_LEAVES", std::size_t{1} << 14); }
std::size_t max_cells() { return env_cap("SPHINX_MAX_CELLS", 384); }

std::array<std::pair<ChildIndex, Pose>, 4> substitute(const Pose& pose, int level) {
    if (level < 1) throw std::invalid_argument("substitute needs level >= 1");
    int s = 1 << (level - 1);
    std::array<std::pair<ChildIndex, Pose>, 4> out;
    const auto& t = child_table();
    for (int i = 0; i < 4; ++i) {
        Vtx off = lin_apply(pose.lin(), t[i].offset * s) + pose.anchor;
        out[i] = {i, Pose::from(off, lin_mul(pose.lin(), t[i].lin))};
    }
    return out;
}

Pose parent_pose(const Pose& child, ChildIndex i, int child_level) {
    const auto& r = child_table()[i];
    Lin l = lin_mul(child.lin(), lin_inv(r.lin));
    Vtx t = child.anchor - lin_apply(l, r.offset * (1 << child_level));
    return Pose::from(t, l);
}

SupertileNode generate(int level, const Pose& root_pose) {
    if (level < 0) throw std::invalid_argument("negative level");
    if (level > 15 || (std::size_t{1} << (2 * level)) > max_leaves())
        throw ResourceLimit("ResourceLimit: 4^" + std::to_string(level) + " leaves exceeds cap " +
                            std::to_string(max_leaves()));
    SupertileNode root;
    root.level = level;
    root.pose = canonical(root_pose);
    build(root);
    return root;
}

std::vector<const SupertileNode*> leaves(const SupertileNode& root) {
    std::vector<const SupertileNode*> out;
    collect(root, out, true);
    return out;
}

std::vector<const SupertileNode*> all_nodes(const SupertileNode& root) {
    std::vector<const SupertileNode*> out;
    collect(root, out, false);
    return out;
}

const SupertileNode& node_at(const SupertileNode& root, const std::vector<int>& path) {
    const SupertileNode* n = &root;
    for (int i : path) n = &n->children.at(i);
    return *n;
}

std::vector<Grouping> decompose(const Patch& patch, int level) {
    std::map<Pose, int> where;
    for (int k = 0; k < static_cast<int>(patch.size()); ++k) where[canonical(patch[k])] = k;
    if (where.size() != patch.size() || patch.empty()) return {};

    // candidate parents: those whose four children all occur in the patch
    std::set<Pose> cands;
    for (const auto& p : patch)
        for (int i = 0; i < 4; ++i) {
            Pose par = parent_pose(canonical(p), i, level);
            bool all = true;
            for (auto [j, c] : substitute(par, level + 1))
                if (!where.count(c)) {
                    all = false;
                    break;
                }
            if (all) cands.insert(par);
        }
    // members of each candidate, indexed by the placement they would cover
    std::vector<std::vector<std::pair<Pose, std::array<int, 4>>>> by_member(patch.size());
    for (const auto& par : cands) {
        std::array<int, 4> members;
        for (auto [j, c] : substitute(par, level + 1)) members[j] = where[c];
        for (int m : members) by_member[m].push_back({par, members});
    }

    std::vector<Grouping> out;
    std::vector<int> owner(patch.size(), -1);
    std::vector<std::pair<Pose, std::array<int, 4>>> chosen;
    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int k = 0; k < static_cast<int>(patch.size()); ++k)
            if (owner[k] < 0) {
                first = k;
                break;
            }
        if (first < 0) {
            Grouping g;
            g.assignment.resize(patch.size());
            for (int pi = 0; pi < static_cast<int>(chosen.size()); ++pi) {
                g.parents.push_back(chosen[pi].first);
                for (int j = 0; j < 4; ++j) g.assignment[chosen[pi].second[j]] = {pi, j};
            }
            out.push_back(std::move(g));
            return;
        }
        for (const auto& [par, members] : by_member[first]) {
            bool free = std::all_of(members.begin(), members.end(), [&](int m) { return owner[m] < 0; });
            if (!free) continue;
            for (int m : members) owner[m] = static_cast<int>(chosen.size());
            chosen.push_back({par, members});
            self(self);
            chosen.pop_back();
            for (int m : members) owner[m] = -1;
        }
    };
    rec(rec);
    return out;
}

bool patch_in_supertile(const Patch& patch, int max_level) {
    if (patch.empty()) return true;
    for (int k = 0; k <= max_level; ++k) {
        SupertileNode root = generate(k);
        std::set<Pose> leafset;
        for (const auto* l : leaves(root)) leafset.insert(l->pose);
        Pose inv0 = invert_pose(canonical(patch[0]));
        for (const auto& q : leafset) {
            Pose g = compose_poses(q, inv0);
            bool ok = std::all_of(patch.begin(), patch.end(),
                                  [&](const Pose& p) { return leafset.count(canonical(compose_poses(g, p))) > 0; });
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace sphinx
