#include "twapprox/instance_io.hpp"

#include "twapprox/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace twapprox {

WeightedInstance read_instance(std::istream& in) {
    WeightedInstance inst;
    std::string line;
    bool header = false;
    long long n = 0, m = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        auto fail = [&](const std::string& why) {
            throw InputError("instance line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "p") {
            std::string kind;
            if (header) fail("duplicate header");
            if (!(ls >> kind >> n >> m) || n < 0 || m < 0) fail("malformed header");
            inst.kind = parse_problem_kind(kind);
            inst.weight.assign(static_cast<std::size_t>(n) + 1, 0);
            header = true;
        } else if (tok == "w") {
            long long v = 0, wt = 0;
            if (!header) fail("weight before header");
            if (!(ls >> v >> wt)) fail("malformed weight line");
            if (v < 1 || v > n) fail("weight for unknown vertex " + std::to_string(v));
            if (wt < 0) fail("negative weight");
            inst.weight[static_cast<std::size_t>(v)] = wt;
        } else if (tok == "e") {
            long long u = 0, v = 0;
            if (!header) fail("edge before header");
            if (!(ls >> u >> v)) fail("malformed edge line");
            if (u < 1 || v < 1 || u > n || v > n) fail("edge references unknown vertex");
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } else {
            fail("unknown line type '" + tok + "'");
        }
    }
    if (!header) throw InputError("instance has no 'p' header");
    if (static_cast<long long>(edges.size()) != m)
        throw InputError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    inst.graph = Graph(static_cast<Vertex>(n), edges);
    return inst;
}

WeightedInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file '" + path + "'");
    return read_instance(in);
}

void write_instance(std::ostream& out, const WeightedInstance& inst) {
    const Graph& g = inst.graph;
    out << "p " << to_string(inst.kind) << ' ' << g.n() << ' ' << g.m() << '\n';
    for (Vertex v = 1; v <= g.n(); ++v) out << "w " << v << ' ' << inst.w(v) << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

std::uint64_t instance_hash(const WeightedInstance& inst) {
    std::ostringstream os;
    write_instance(os, inst);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return s;
}

} // namespace twapprox
