#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rspin/psi.hpp"
#include "rspin/rational.hpp"
#include "rspin/series.hpp"
#include "rspin/stable_graph.hpp"

namespace rspin {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Matrix-valued series: entry [k] is the coefficient of z^k.
template <class T>
using MatrixSeries = std::vector<Matrix<T>>;

template <class T>
Matrix<T> identity_matrix(int size)
{
    Matrix<T> m(size, std::vector<T>(size, T(0)));
    for (int i = 0; i < size; ++i) m[i][i] = T(1);
    return m;
}

/// Inverse of a matrix series with R(0) = Id, to the same order.
template <class T>
MatrixSeries<T> invert_matrix_series(const MatrixSeries<T>& R)
{
    if (R.empty()) throw std::invalid_argument("invert_matrix_series: empty series");
    const int B = static_cast<int>(R[0].size());
    if (R[0] != identity_matrix<T>(B)) throw std::domain_error("invert_matrix_series: R(0) is not the identity");
    MatrixSeries<T> inv(R.size(), Matrix<T>(B, std::vector<T>(B, T(0))));
    inv[0] = identity_matrix<T>(B);
    for (std::size_t k = 1; k < R.size(); ++k)
        for (std::size_t j = 1; j <= k; ++j)
            for (int a = 0; a < B; ++a)
                for (int c = 0; c < B; ++c) {
                    if (is_zero(R[j][a][c])) continue;
                    for (int b = 0; b < B; ++b) inv[k][a][b] -= R[j][a][c] * inv[k - j][c][b];
                }
    return inv;
}

/// T(z) = z (unit - R^{-1}(z) unit), as vectors indexed by the power of z.
template <class T>
Matrix<T> standard_translation(const MatrixSeries<T>& r_inverse, const std::vector<T>& unit)
{
    const int B = static_cast<int>(unit.size());
    Matrix<T> t(r_inverse.size() + 1, std::vector<T>(B, T(0)));
    for (std::size_t k = 1; k < r_inverse.size(); ++k)
        for (int a = 0; a < B; ++a)
            for (int b = 0; b < B; ++b) t[k + 1][a] -= r_inverse[k][a][b] * unit[b];
    return t;
}

/**
 * Data of a CohFT obtained from a TQFT by an R-matrix action, written in a
 * fixed basis. Conventions: legs carry R^{-1}(psi), edges carry
 * (eta^{-1} - R^{-1}(x) eta^{-1} R^{-1}(y)^t) / (x + y), and each vertex
 * receives extra points with insertions translation(psi), pushed forward
 * with weight 1/k!.
 */
template <class T>
struct GiventalTheory {
    int basis = 1;
    /// omega_{g,n}(e_{b_1}, ..., e_{b_n}).
    std::function<T(int g, const std::vector<int>& b)> omega;
    Matrix<T> eta_inverse;
    MatrixSeries<T> r_inverse;
    /// translation[k][b]: coefficient of z^k e_b; entries with k < 2 must vanish.
    Matrix<T> translation;
};

/// Stable-graph evaluator. correlator() is thread-safe.
template <class T>
class GiventalEngine {
public:
    explicit GiventalEngine(GiventalTheory<T> theory) : th_(std::move(theory))
    {
        const int B = th_.basis;
        if (B < 1 || !th_.omega) throw std::invalid_argument("GiventalEngine: incomplete theory");
        if (static_cast<int>(th_.eta_inverse.size()) != B) throw std::invalid_argument("GiventalEngine: metric size");
        for (std::size_t k = 0; k < th_.translation.size() && k < 2; ++k)
            for (const T& x : th_.translation[k])
                if (!is_zero(x)) throw std::invalid_argument("GiventalEngine: translation must be O(z^2)");
        // Max total psi-degree the data supports.
        max_degree_ = std::min<int>(static_cast<int>(th_.r_inverse.size()) - 1,
                                    static_cast<int>(th_.translation.size()) - 2);
        build_edge_kernel();
    }

    int max_degree() const { return max_degree_; }
    const GiventalTheory<T>& theory() const { return th_; }

    /// Integral of Omega_{g,n}(e_{b_1}, ..., e_{b_n}) psi_1^{d_1} ... psi_n^{d_n};
    /// insertions are (b_i, d_i).
    T correlator(int g, const std::vector<std::pair<int, int>>& insertions) const
    {
        const int n = static_cast<int>(insertions.size());
        if (g < 0 || 2 * g - 2 + n <= 0)
            throw std::invalid_argument("correlator: unstable (g, n) = (" + std::to_string(g) + ", " +
                                        std::to_string(n) + ")");
        int dsum = 0;
        for (const auto& [b, d] : insertions) {
            if (b < 0 || b >= th_.basis || d < 0) throw std::invalid_argument("correlator: bad insertion");
            dsum += d;
        }
        const int dim = 3 * g - 3 + n;
        if (dsum > dim) return T(0);
        if (dim > max_degree_)
            throw std::out_of_range("correlator: R-matrix truncated below degree " + std::to_string(dim));
        const auto& graphs = stable_graphs(g, n);
        std::vector<std::future<T>> parts;
        parts.reserve(graphs.size());
        for (const StableGraph& G : graphs)
            parts.push_back(std::async(std::launch::async, [this, &G, &insertions] { return graph_sum(G, insertions); }));
        // Summed in graph order; the result does not depend on scheduling.
        T total(0);
        for (auto& f : parts) total += f.get();
        return total;
    }

private:
    using Slot = std::pair<int, int>;  // (basis index, psi exponent)

    GiventalTheory<T> th_;
    int max_degree_ = 0;
    // edge_[b][c][i][j]: coefficient of x^i y^j in the edge bivector.
    std::vector<std::vector<Matrix<T>>> edge_;
    mutable std::shared_mutex memo_mutex_;
    mutable std::map<std::pair<int, std::vector<Slot>>, T> memo_;

    void build_edge_kernel()
    {
        const int B = th_.basis;
        const int D = std::max(max_degree_, 0);
        const auto& Ri = th_.r_inverse;
        edge_.assign(B, std::vector<Matrix<T>>(B, Matrix<T>(D, std::vector<T>(D, T(0)))));
        // M_i = R^{-1}_i eta^{-1}
        MatrixSeries<T> M(D + 1, Matrix<T>(B, std::vector<T>(B, T(0))));
        for (int i = 0; i <= D; ++i)
            for (int b = 0; b < B; ++b)
                for (int c = 0; c < B; ++c) {
                    for (int bb = 0; bb < B; ++bb) {
                        if (is_zero(Ri[i][b][bb])) continue;
                        M[i][b][c] += Ri[i][b][bb] * th_.eta_inverse[bb][c];
                    }
                }
        for (int b = 0; b < B; ++b)
            for (int c = 0; c < B; ++c) {
                Matrix<T> p(D + 1, std::vector<T>(D + 1, T(0)));
                for (int i = 0; i <= D; ++i)
                    for (int j = 0; i + j <= D; ++j) {
                        T s(0);
                        for (int cc = 0; cc < B; ++cc) {
                            if (is_zero(Ri[j][c][cc])) continue;
                            s += M[i][b][cc] * Ri[j][c][cc];
                        }
                        p[i][j] = -s;
                    }
                p[0][0] += th_.eta_inverse[b][c];
                if (!is_zero(p[0][0])) throw std::logic_error("edge kernel: numerator does not vanish at 0");
                // (x + y) e(x, y) = p(x, y)
                Matrix<T>& e = edge_[b][c];
                for (int s = 0; s + 1 <= D; ++s)
                    for (int i = 0; i <= s; ++i) {
                        const int j = s - i;
                        e[i][j] = p[i][j + 1];
                        if (i > 0) e[i][j] -= e[i - 1][j + 1];
                    }
                // Divisibility check on the top-degree relation p_{s+1,0} = e_{s,0}.
                for (int s = 0; s + 1 <= D; ++s)
                    if (e[s][0] != p[s + 1][0]) throw std::logic_error("edge kernel: numerator not divisible by x + y");
            }
    }

    T vertex_value(int gv, std::vector<Slot> slots) const
    {
        std::sort(slots.begin(), slots.end());
        auto key = std::make_pair(gv, slots);
        {
            std::shared_lock lock(memo_mutex_);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }
        const int nv = static_cast<int>(slots.size());
        int used = 0;
        for (const auto& s : slots) used += s.second;
        const int rem = 3 * gv - 3 + nv - used;
        T total(0);
        if (rem >= 0) {
            std::vector<int> bases, exps;
            for (const auto& [b, d] : slots) {
                bases.push_back(b);
                exps.push_back(d);
            }
            // Ordered tuples of extra points, weighted by 1/k!.
            std::function<void(int, int, const T&)> rec = [&](int left, int k, const T& weight) {
                if (left == 0) {
                    const Rat psi = psi_intersection(gv, exps);
                    if (psi != 0) {
                        const T om = th_.omega(gv, bases);
                        if (!is_zero(om)) total += weight * om * T(Rat(psi / Rat(factorial(static_cast<unsigned long>(k)))));
                    }
                    return;
                }
                for (int e = 2; e - 1 <= left && e < static_cast<int>(th_.translation.size()); ++e)
                    for (int u = 0; u < th_.basis; ++u) {
                        const T& t = th_.translation[e][u];
                        if (is_zero(t)) continue;
                        bases.push_back(u);
                        exps.push_back(e);
                        rec(left - (e - 1), k + 1, weight * t);
                        bases.pop_back();
                        exps.pop_back();
                    }
            };
            rec(rem, 0, T(1));
        }
        std::unique_lock lock(memo_mutex_);
        memo_.emplace(std::move(key), total);
        return total;
    }

    T graph_sum(const StableGraph& G, const std::vector<std::pair<int, int>>& insertions) const
    {
        const int V = G.vertices();
        std::vector<int> budget(V);
        for (int v = 0; v < V; ++v) budget[v] = 3 * G.genus[v] - 3 + G.valence(v);
        std::vector<std::vector<Slot>> slots(V);
        std::vector<int> used(V, 0);
        T total(0);
        const int E = static_cast<int>(G.edges.size());
        const int n = static_cast<int>(insertions.size());
        const int B = th_.basis;

        std::function<void(int, const T&)> legs = [&](int i, const T& weight) {
            if (i == n) {
                T prod = weight;
                for (int v = 0; v < V && !is_zero(prod); ++v) prod *= vertex_value(G.genus[v], slots[v]);
                total += prod;
                return;
            }
            const int v = G.leg_vertex[i];
            const auto [a, d] = insertions[i];
            for (int k = 0; used[v] + d + k <= budget[v]; ++k)
                for (int b = 0; b < B; ++b) {
                    const T& c = th_.r_inverse[k][b][a];
                    if (is_zero(c)) continue;
                    slots[v].emplace_back(b, d + k);
                    used[v] += d + k;
                    legs(i + 1, weight * c);
                    used[v] -= d + k;
                    slots[v].pop_back();
                }
        };

        std::function<void(int, const T&)> edges = [&](int e, const T& weight) {
            if (e == E) {
                legs(0, weight);
                return;
            }
            const auto [u, w] = G.edges[e];
            const int D = static_cast<int>(edge_.empty() ? 0 : edge_[0][0].size());
            for (int i = 0; i < D; ++i)
                for (int j = 0; i + j < D; ++j) {
                    if (used[u] + i + (u == w ? j : 0) > budget[u] || used[w] + j + (u == w ? i : 0) > budget[w]) continue;
                    for (int b = 0; b < B; ++b)
                        for (int c = 0; c < B; ++c) {
                            const T& k = edge_[b][c][i][j];
                            if (is_zero(k)) continue;
                            slots[u].emplace_back(b, i);
                            slots[w].emplace_back(c, j);
                            used[u] += i;
                            used[w] += j;
                            edges(e + 1, weight * k);
                            used[u] -= i;
                            used[w] -= j;
                            slots[w].pop_back();
                            slots[u].pop_back();
                        }
                }
        };

        edges(0, T(1));
        return total * T(Rat(1) / Rat(G.automorphisms));
    }
};

}  // namespace rspin
