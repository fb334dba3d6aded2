#include "twapprox/tree_decomposition.hpp"

#include "twapprox/errors.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace twapprox {

namespace {

std::size_t at(std::int64_t i) { return static_cast<std::size_t>(i); }

std::string edge_str(Vertex u, Vertex v) {
    return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

} // namespace

std::int32_t TreeDecomposition::width() const {
    std::int32_t w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<std::int32_t>(b.size()) - 1);
    return w;
}

std::vector<TdViolation> validate(const Graph& g, const TreeDecomposition& td) {
    using K = TdViolation::Kind;
    std::vector<TdViolation> out;
    const NodeId nn = td.size();

    if (nn == 0) {
        out.push_back({K::NotATree, "decomposition has no nodes"});
        return out;
    }
    std::vector<std::vector<NodeId>> tadj(at(nn));
    bool shape_ok = static_cast<NodeId>(td.tree_edges.size()) == nn - 1;
    if (!shape_ok)
        out.push_back({K::NotATree, "tree has " + std::to_string(td.tree_edges.size()) +
                                        " edges for " + std::to_string(nn) + " nodes"});
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= nn || b >= nn || a == b) {
            out.push_back({K::NotATree, "tree edge (" + std::to_string(a + 1) + "," +
                                            std::to_string(b + 1) + ") is invalid"});
            shape_ok = false;
            continue;
        }
        tadj[at(a)].push_back(b);
        tadj[at(b)].push_back(a);
    }
    {
        std::vector<char> seen(at(nn), 0);
        std::deque<NodeId> q{0};
        seen[0] = 1;
        NodeId reached = 0;
        while (!q.empty()) {
            NodeId a = q.front();
            q.pop_front();
            ++reached;
            for (NodeId b : tadj[at(a)])
                if (!seen[at(b)]) {
                    seen[at(b)] = 1;
                    q.push_back(b);
                }
        }
        if (reached != nn) {
            out.push_back({K::NotATree, "decomposition tree is disconnected"});
            shape_ok = false;
        }
    }

    std::vector<std::vector<NodeId>> holders(at(g.n()) + 1);
    for (NodeId a = 0; a < nn; ++a)
        for (Vertex v : td.bags[at(a)]) {
            if (!g.has_vertex(v)) {
                out.push_back({K::UnknownVertex, "bag " + std::to_string(a + 1) +
                                                     " contains unknown vertex " + std::to_string(v)});
                continue;
            }
            holders[at(v)].push_back(a);
        }
    for (Vertex v = 1; v <= g.n(); ++v)
        if (holders[at(v)].empty())
            out.push_back({K::VertexUncovered, "vertex " + std::to_string(v) + " in no bag"});

    for (const Edge& e : g.edges()) {
        const auto& hu = holders[at(e.u)];
        const auto& hv = holders[at(e.v)];
        bool found = false;
        for (NodeId a : hu)
            if (std::find(hv.begin(), hv.end(), a) != hv.end()) {
                found = true;
                break;
            }
        if (!found) out.push_back({K::EdgeUncovered, "edge " + edge_str(e.u, e.v) + " in no bag"});
    }

    if (shape_ok) {
        // In a tree, a node subset is connected iff it spans |subset|-1 edges.
        std::vector<char> mark(at(nn), 0);
        for (Vertex v = 1; v <= g.n(); ++v) {
            const auto& h = holders[at(v)];
            if (h.empty()) continue;
            for (NodeId a : h) mark[at(a)] = 1;
            std::size_t inner = 0;
            for (auto [a, b] : td.tree_edges)
                if (mark[at(a)] && mark[at(b)]) ++inner;
            if (inner + 1 != h.size())
                out.push_back({K::NotSubtree, "vertex " + std::to_string(v) + "'s nodes not a subtree"});
            for (NodeId a : h) mark[at(a)] = 0;
        }
    }
    return out;
}

TreeDecomposition min_fill_decomposition(const Graph& g) {
    TreeDecomposition td;
    const Vertex n = g.n();
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<Vertex>> adj(at(n) + 1);
    for (const Edge& e : g.edges()) {
        adj[at(e.u)].insert(e.v);
        adj[at(e.v)].insert(e.u);
    }
    std::vector<char> gone(at(n) + 1, 0);
    std::vector<std::int32_t> position(at(n) + 1, 0);
    std::vector<Vertex> order;
    std::vector<VertexSet> higher(at(n) + 1);

    auto fill_in = [&](Vertex v) {
        std::int64_t fill = 0;
        for (auto i = adj[at(v)].begin(); i != adj[at(v)].end(); ++i)
            for (auto j = std::next(i); j != adj[at(v)].end(); ++j)
                if (!adj[at(*i)].count(*j)) ++fill;
        return fill;
    };

    for (Vertex step = 0; step < n; ++step) {
        Vertex best = 0;
        std::int64_t best_fill = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (gone[at(v)]) continue;
            std::int64_t f = fill_in(v);
            if (best == 0 || f < best_fill) {
                best = v;
                best_fill = f;
            }
        }
        VertexSet nb(adj[at(best)].begin(), adj[at(best)].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[at(nb[i])].insert(nb[j]);
                adj[at(nb[j])].insert(nb[i]);
            }
        for (Vertex u : nb) adj[at(u)].erase(best);
        adj[at(best)].clear();
        gone[at(best)] = 1;
        position[at(best)] = step;
        order.push_back(best);
        higher[at(best)] = nb;
    }

    NodeId prev_root = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        VertexSet bag = higher[at(v)];
        bag.push_back(v);
        normalize(bag);
        td.bags.push_back(bag);
        const auto node = static_cast<NodeId>(i);
        if (higher[at(v)].empty()) {
            if (prev_root >= 0) td.tree_edges.emplace_back(prev_root, node);
            prev_root = node;
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        if (higher[at(v)].empty()) continue;
        Vertex next = *std::min_element(higher[at(v)].begin(), higher[at(v)].end(),
                                        [&](Vertex a, Vertex b) { return position[at(a)] < position[at(b)]; });
        td.tree_edges.emplace_back(static_cast<NodeId>(i), position[at(next)]);
    }
    return td;
}

TreeDecomposition read_pace_td(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    bool header = false;
    NodeId declared = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        auto fail = [&](const std::string& why) {
            throw InputError("td line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "s") {
            std::string kind;
            long long bags = 0, wp1 = 0, n = 0;
            if (!(ls >> kind >> bags >> wp1 >> n) || kind != "td" || bags < 0) fail("malformed header");
            declared = static_cast<NodeId>(bags);
            td.bags.assign(at(declared), {});
            header = true;
        } else if (tok == "b") {
            if (!header) fail("bag before header");
            long long id = 0;
            if (!(ls >> id) || id < 1 || id > declared) fail("bad bag id");
            VertexSet bag;
            long long v;
            while (ls >> v) bag.push_back(static_cast<Vertex>(v));
            normalize(bag);
            td.bags[at(id - 1)] = std::move(bag);
        } else {
            if (!header) fail("edge before header");
            long long a = 0, b = 0;
            std::istringstream es(line);
            if (!(es >> a >> b)) fail("malformed tree edge");
            if (a < 1 || b < 1 || a > declared || b > declared) fail("tree edge references unknown bag");
            td.tree_edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
        }
    }
    if (!header) throw InputError("td file has no 's td' header");
    return td;
}

void write_pace_td(std::ostream& out, const TreeDecomposition& td, Vertex n) {
    out << "s td " << td.size() << ' ' << (td.width() + 1) << ' ' << n << '\n';
    for (NodeId a = 0; a < td.size(); ++a) {
        out << "b " << (a + 1);
        for (Vertex v : td.bags[at(a)]) out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << (a + 1) << ' ' << (b + 1) << '\n';
}

const char* to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Introduce: return "introduce";
    case NodeKind::Forget: return "forget";
    case NodeKind::Join: return "join";
    }
    return "?";
}

NiceTreeDecomposition::NiceTreeDecomposition(Vertex n, std::vector<NiceNode> nodes)
    : n_(n), nodes_(std::move(nodes)) {
    const NodeId nn = size();
    forget_of_.assign(at(n) + 1, -1);
    y_size_.assign(at(nn), 0);
    for (NodeId a = 0; a < nn; ++a) {
        const NiceNode& nd = node(a);
        if (nd.kind == NodeKind::Forget && nd.vertex >= 1 && nd.vertex <= n) {
            // A second forget of the same vertex is reported by check_nice.
            if (forget_of_[at(nd.vertex)] < 0) forget_of_[at(nd.vertex)] = a;
        }
        std::int32_t ys = nd.kind == NodeKind::Forget ? 1 : 0;
        for (NodeId c : nd.children) ys += y_size_[at(c)];
        y_size_[at(a)] = ys;
    }
    tin_.assign(at(nn), 0);
    tout_.assign(at(nn), 0);
    if (nn == 0) return;
    std::int32_t clock = 0;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root(), 0}};
    tin_[at(root())] = clock++;
    while (!stack.empty()) {
        auto& [a, i] = stack.back();
        const auto& ch = node(a).children;
        if (i < ch.size()) {
            NodeId c = ch[i++];
            tin_[at(c)] = clock++;
            stack.emplace_back(c, 0);
        } else {
            tout_[at(a)] = clock++;
            stack.pop_back();
        }
    }
}

std::int32_t NiceTreeDecomposition::width() const {
    std::int32_t w = -1;
    for (const auto& nd : nodes_) w = std::max(w, static_cast<std::int32_t>(nd.bag.size()) - 1);
    return w;
}

bool NiceTreeDecomposition::in_subtree(NodeId a, NodeId desc) const {
    return tin_[at(a)] <= tin_[at(desc)] && tout_[at(desc)] <= tout_[at(a)];
}

bool NiceTreeDecomposition::in_y(NodeId a, Vertex u) const {
    NodeId f = forget_of_[at(u)];
    return f >= 0 && in_subtree(a, f);
}

VertexSet NiceTreeDecomposition::y_set(NodeId a) const {
    VertexSet y;
    for (Vertex u = 1; u <= n_; ++u)
        if (in_y(a, u)) y.push_back(u);
    return y;
}

VertexSet NiceTreeDecomposition::v_set(NodeId a) const { return set_union(node(a).bag, y_set(a)); }

std::vector<std::string> NiceTreeDecomposition::check_nice() const {
    std::vector<std::string> out;
    const NodeId nn = size();
    if (nn == 0) {
        out.push_back("no nodes");
        return out;
    }
    auto where = [](NodeId a) { return "node " + std::to_string(a) + ": "; };
    if (!node(root()).bag.empty()) out.push_back("root bag is not empty");
    if (node(root()).parent != -1) out.push_back("root has a parent");
    std::vector<std::int32_t> forgets(at(n_) + 1, 0);
    for (NodeId a = 0; a < nn; ++a) {
        const NiceNode& nd = node(a);
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end()) ||
            std::adjacent_find(nd.bag.begin(), nd.bag.end()) != nd.bag.end())
            out.push_back(where(a) + "bag not sorted/unique");
        std::int32_t h = 0;
        for (NodeId c : nd.children) {
            if (c >= a || c < 0) out.push_back(where(a) + "child id not below parent id");
            else {
                if (node(c).parent != a) out.push_back(where(a) + "child parent link broken");
                h = std::max(h, node(c).height + 1);
            }
        }
        if (nd.height != h) out.push_back(where(a) + "height mismatch");
        if (a != root() && nd.parent < 0) out.push_back(where(a) + "non-root node without parent");
        switch (nd.kind) {
        case NodeKind::Leaf:
            if (!nd.children.empty()) out.push_back(where(a) + "leaf with children");
            if (!nd.bag.empty()) out.push_back(where(a) + "leaf bag not empty");
            break;
        case NodeKind::Introduce: {
            if (nd.children.size() != 1) { out.push_back(where(a) + "introduce needs one child"); break; }
            const auto& cb = node(nd.children[0]).bag;
            VertexSet expect = cb;
            expect.push_back(nd.vertex);
            normalize(expect);
            if (contains(cb, nd.vertex) || expect != nd.bag) out.push_back(where(a) + "introduce bag relation broken");
            break;
        }
        case NodeKind::Forget: {
            if (nd.children.size() != 1) { out.push_back(where(a) + "forget needs one child"); break; }
            const auto& cb = node(nd.children[0]).bag;
            VertexSet expect = nd.bag;
            expect.push_back(nd.vertex);
            normalize(expect);
            if (contains(nd.bag, nd.vertex) || expect != cb) out.push_back(where(a) + "forget bag relation broken");
            if (nd.vertex >= 1 && nd.vertex <= n_) ++forgets[at(nd.vertex)];
            break;
        }
        case NodeKind::Join: {
            if (nd.children.size() != 2) { out.push_back(where(a) + "join needs two children"); break; }
            NodeId l = nd.children[0], r = nd.children[1];
            if (node(l).bag != nd.bag || node(r).bag != nd.bag) out.push_back(where(a) + "join bags differ");
            if (!set_intersection(y_set(l), y_set(r)).empty()) out.push_back(where(a) + "join children Y sets intersect");
            break;
        }
        }
    }
    for (Vertex v = 1; v <= n_; ++v)
        if (forgets[at(v)] != 1)
            out.push_back("vertex " + std::to_string(v) + " forgotten " + std::to_string(forgets[at(v)]) + " times");
    return out;
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
    TreeDecomposition td;
    for (const auto& nd : nodes_) td.bags.push_back(nd.bag);
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId c : node(a).children) td.tree_edges.emplace_back(c, a);
    return td;
}

namespace {

class NiceBuilder {
public:
    NodeId add(NodeKind kind, Vertex v, VertexSet bag, std::vector<NodeId> children) {
        NiceNode nd;
        nd.kind = kind;
        nd.vertex = v;
        nd.bag = std::move(bag);
        nd.children = std::move(children);
        const auto id = static_cast<NodeId>(nodes.size());
        for (NodeId c : nd.children) {
            nodes[at(c)].parent = id;
            nd.height = std::max(nd.height, nodes[at(c)].height + 1);
        }
        nodes.push_back(std::move(nd));
        return id;
    }

    NodeId introduce(NodeId child, Vertex v) {
        VertexSet bag = nodes[at(child)].bag;
        bag.push_back(v);
        normalize(bag);
        return add(NodeKind::Introduce, v, std::move(bag), {child});
    }

    NodeId forget(NodeId child, Vertex v) {
        VertexSet bag = nodes[at(child)].bag;
        bag.erase(std::find(bag.begin(), bag.end(), v));
        return add(NodeKind::Forget, v, std::move(bag), {child});
    }

    /// Forget what `target` lacks, then introduce what it adds.
    NodeId morph(NodeId from, const VertexSet& target) {
        VertexSet cur = nodes[at(from)].bag;
        for (Vertex v : set_difference(cur, target)) from = forget(from, v);
        for (Vertex v : set_difference(target, cur)) from = introduce(from, v);
        return from;
    }

    std::vector<NiceNode> nodes;
};

} // namespace

NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
    if (g.n() == 0 && td.size() == 0) return NiceTreeDecomposition(0, {NiceNode{}});
    if (auto bad = validate(g, td); !bad.empty()) throw InputError("invalid tree decomposition: " + bad.front().message);

    const NodeId nn = td.size();
    std::vector<VertexSet> bag = td.bags;
    std::vector<std::set<NodeId>> adj(at(nn));
    for (auto [a, b] : td.tree_edges) {
        adj[at(a)].insert(b);
        adj[at(b)].insert(a);
    }
    std::vector<char> alive(at(nn), 1);
    auto subset = [](const VertexSet& a, const VertexSet& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    // Contract any node whose bag is contained in a neighbor's bag.
    std::deque<NodeId> work;
    for (NodeId a = 0; a < nn; ++a) work.push_back(a);
    while (!work.empty()) {
        NodeId a = work.front();
        work.pop_front();
        if (!alive[at(a)]) continue;
        for (NodeId b : adj[at(a)]) {
            if (!subset(bag[at(a)], bag[at(b)])) continue;
            for (NodeId x : adj[at(a)]) {
                adj[at(x)].erase(a);
                if (x != b) {
                    adj[at(x)].insert(b);
                    adj[at(b)].insert(x);
                    work.push_back(x);
                }
            }
            adj[at(a)].clear();
            alive[at(a)] = 0;
            work.push_back(b);
            break;
        }
    }

    NodeId root = 0;
    while (!alive[at(root)]) ++root;
    std::vector<NodeId> order{root};
    std::vector<NodeId> parent(at(nn), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        NodeId a = order[i];
        for (NodeId b : adj[at(a)])
            if (b != parent[at(a)]) {
                parent[at(b)] = a;
                order.push_back(b);
            }
    }
    std::vector<std::vector<NodeId>> kids(at(nn));
    for (NodeId a : order)
        if (parent[at(a)] >= 0) kids[at(parent[at(a)])].push_back(a);

    NiceBuilder nb;
    std::vector<NodeId> top(at(nn), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeId a = *it;
        std::vector<NodeId> branches;
        for (NodeId c : kids[at(a)]) branches.push_back(nb.morph(top[at(c)], bag[at(a)]));
        if (branches.empty()) branches.push_back(nb.morph(nb.add(NodeKind::Leaf, 0, {}, {}), bag[at(a)]));
        NodeId acc = branches[0];
        for (std::size_t i = 1; i < branches.size(); ++i)
            acc = nb.add(NodeKind::Join, 0, bag[at(a)], {acc, branches[i]});
        top[at(a)] = acc;
    }
    nb.morph(top[at(root)], {});
    return NiceTreeDecomposition(g.n(), std::move(nb.nodes));
}

bool separator_check(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a) {
    for (const Edge& e : g.edges()) {
        if (ntd.in_y(a, e.u) && !ntd.in_v(a, e.v)) return false;
        if (ntd.in_y(a, e.v) && !ntd.in_v(a, e.u)) return false;
    }
    return true;
}

} // namespace twapprox
