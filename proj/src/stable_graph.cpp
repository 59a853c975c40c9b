#include "rspin/stable_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rspin {

int StableGraph::valence(int v) const
{
    int val = static_cast<int>(std::count(leg_vertex.begin(), leg_vertex.end(), v));
    for (const auto& [a, b] : edges) val += (a == v) + (b == v);
    return val;
}

int StableGraph::total_genus() const
{
    return std::accumulate(genus.begin(), genus.end(), 0) + betti();
}

bool StableGraph::stable() const
{
    for (int v = 0; v < vertices(); ++v)
        if (2 * genus[v] - 2 + valence(v) <= 0) return false;
    return true;
}

std::string StableGraph::str() const
{
    std::ostringstream os;
    os << "genus[";
    for (int v = 0; v < vertices(); ++v) os << (v ? "," : "") << genus[v];
    os << "] legs[";
    for (std::size_t i = 0; i < leg_vertex.size(); ++i) os << (i ? "," : "") << leg_vertex[i];
    os << "] edges[";
    for (std::size_t e = 0; e < edges.size(); ++e) os << (e ? "," : "") << edges[e].first << "-" << edges[e].second;
    os << "] aut=" << automorphisms;
    return os.str();
}

namespace {

using Adjacency = std::vector<std::vector<int>>;

struct Raw {
    std::vector<int> genus;
    Adjacency adj;
    std::vector<int> legs;
};

std::vector<int> encode(const Raw& x, const std::vector<int>& perm)
{
    const int V = static_cast<int>(x.genus.size());
    std::vector<int> inv(V);
    for (int v = 0; v < V; ++v) inv[perm[v]] = v;
    std::vector<int> key;
    for (int v = 0; v < V; ++v) key.push_back(x.genus[inv[v]]);
    for (int u = 0; u < V; ++u)
        for (int v = u; v < V; ++v) key.push_back(x.adj[inv[u]][inv[v]]);
    for (int l : x.legs) key.push_back(perm[l]);
    return key;
}

bool connected(const Adjacency& adj)
{
    const int V = static_cast<int>(adj.size());
    std::vector<bool> seen(V, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < V; ++v)
            if (!seen[v] && adj[u][v] > 0) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

long factorial_long(int k)
{
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

StableGraph finish(const Raw& x, long vertex_symmetries)
{
    StableGraph g;
    g.genus = x.genus;
    g.leg_vertex = x.legs;
    long aut = vertex_symmetries;
    const int V = static_cast<int>(x.genus.size());
    for (int u = 0; u < V; ++u)
        for (int v = u; v < V; ++v) {
            const int a = x.adj[u][v];
            for (int e = 0; e < a; ++e) g.edges.emplace_back(u, v);
            aut *= factorial_long(a);
            if (u == v) aut <<= a;
        }
    g.automorphisms = aut;
    return g;
}

std::vector<StableGraph> enumerate(int g, int n)
{
    std::map<std::vector<int>, StableGraph> found;
    for (int V = 1; V <= 2 * g - 2 + n; ++V) {
        std::vector<int> perm(V);
        std::vector<int> genus(V, 0);
        std::function<void(int, int)> genus_rec;
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < V; ++u)
            for (int v = u; v < V; ++v) slots.emplace_back(u, v);

        auto try_raw = [&](const Raw& raw) {
            for (int v = 0; v < V; ++v) {
                int val = 2 * raw.adj[v][v];
                for (int u = 0; u < V; ++u)
                    if (u != v) val += raw.adj[u][v];
                val += static_cast<int>(std::count(raw.legs.begin(), raw.legs.end(), v));
                if (2 * raw.genus[v] - 2 + val <= 0) return;
            }
            if (!connected(raw.adj)) return;
            std::iota(perm.begin(), perm.end(), 0);
            const std::vector<int> self = encode(raw, perm);
            std::vector<int> best = self;
            long stabilizer = 0;
            do {
                std::vector<int> key = encode(raw, perm);
                if (key == self) ++stabilizer;
                if (key < best) best = std::move(key);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (found.count(best)) return;
            // Store the canonical representative so that output is independent
            // of enumeration order.
            std::vector<int> order(V);
            std::iota(order.begin(), order.end(), 0);
            do {
                if (encode(raw, order) == best) break;
            } while (std::next_permutation(order.begin(), order.end()));
            Raw canon{std::vector<int>(V), Adjacency(V, std::vector<int>(V, 0)), raw.legs};
            for (int v = 0; v < V; ++v) canon.genus[order[v]] = raw.genus[v];
            for (int u = 0; u < V; ++u)
                for (int v = 0; v < V; ++v) canon.adj[order[u]][order[v]] = raw.adj[u][v];
            for (int& l : canon.legs) l = order[l];
            found.emplace(best, finish(canon, stabilizer));
        };

        auto legs_then = [&](Raw& raw) {
            std::vector<int> legs(n, 0);
            while (true) {
                raw.legs = legs;
                try_raw(raw);
                int i = 0;
                while (i < n && ++legs[i] == V) legs[i++] = 0;
                if (i == n) break;
            }
        };

        std::function<void(Raw&, std::size_t, int)> edges_rec = [&](Raw& raw, std::size_t slot, int left) {
            if (slot + 1 == slots.size()) {
                const auto [u, v] = slots[slot];
                raw.adj[u][v] = raw.adj[v][u] = left;
                legs_then(raw);
                return;
            }
            const auto [u, v] = slots[slot];
            for (int c = 0; c <= left; ++c) {
                raw.adj[u][v] = raw.adj[v][u] = c;
                edges_rec(raw, slot + 1, left - c);
            }
        };

        genus_rec = [&](int v, int sum) {
            if (v == V) {
                const int E = g - sum + V - 1;
                if (E < V - 1) return;
                Raw raw{genus, Adjacency(V, std::vector<int>(V, 0)), {}};
                edges_rec(raw, 0, E);
                return;
            }
            for (int gv = 0; sum + gv <= g; ++gv) {
                genus[v] = gv;
                genus_rec(v + 1, sum + gv);
            }
        };
        genus_rec(0, 0);
    }
    std::vector<StableGraph> out;
    std::vector<std::pair<std::pair<std::size_t, std::vector<int>>, StableGraph>> keyed;
    for (auto& [key, graph] : found) keyed.push_back({{graph.genus.size() * 64 + graph.edges.size(), key}, graph});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, graph] : keyed) out.push_back(std::move(graph));
    return out;
}

}  // namespace

const std::vector<StableGraph>& stable_graphs(int g, int n)
{
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
        throw std::invalid_argument("stable_graphs: unstable (g, n) = (" + std::to_string(g) + ", " +
                                    std::to_string(n) + ")");
    if (3 * g - 3 + n > kMaxGraphDimension)
        throw std::out_of_range("stable_graphs: 3g - 3 + n = " + std::to_string(3 * g - 3 + n) +
                                " exceeds " + std::to_string(kMaxGraphDimension));
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<StableGraph>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find({g, n});
    if (it == cache.end()) it = cache.emplace(std::make_pair(g, n), enumerate(g, n)).first;
    return it->second;
}

}  // namespace rspin
