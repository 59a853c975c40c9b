#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rspin/mpoly.hpp"
#include "rspin/partitions.hpp"
#include "rspin/rational.hpp"

namespace rspin {

/**
 * (g, r, k_1..k_n). m = (K + n + 2g - 2)/r and k_i = r p_i + (r - 1 - a_i)
 * with 0 <= a_i < r.
 */
struct Profile {
    int g = 0;
    int r = 1;
    std::vector<int> k;

    /// Throws std::invalid_argument on g < 0, r < 1, empty k or k_i < 1.
    Profile(int g, int r, std::vector<int> k);

    int n() const { return static_cast<int>(k.size()); }
    int K() const;
    /// True when m is a non-negative integer.
    bool valid() const;
    /// Throws std::domain_error unless valid().
    int m() const;
    int p(int i) const;
    int a(int i) const;
    Partition cycle_type() const;
    /// 2g - 2 + n > 0.
    bool stable() const { return 2 * g - 2 + n() > 0; }
    std::string str() const;

    friend bool operator<(const Profile& x, const Profile& y)
    {
        return std::tie(x.g, x.r, x.k) < std::tie(y.g, y.r, y.k);
    }
    friend bool operator==(const Profile& x, const Profile& y)
    {
        return x.g == y.g && x.r == y.r && x.k == y.k;
    }
};

/// Sum over lambda |- |mu| of (dim/K!)^2 |C_mu| chi_lambda(mu)/dim p_{r+1}(lambda)^m.
Rat disconnected_coefficient(int r, const Partition& mu, int m);

struct HurwitzResult {
    Rat value;
    /// False when m is not a non-negative integer (value is then 0).
    bool valid_profile = true;
};

/// Connected completed Hurwitz number h_{g,r;k}, with the poles labeled by the
/// k_i: h = prod_j m_j(k)! m! [beta^m p_k] log Z.
HurwitzResult connected_hurwitz_checked(const Profile& p);
Rat connected_hurwitz(const Profile& p);

/// Oracle by enumeration of r-factorizations. Guard: K <= 5, m <= 3; beyond
/// it throws std::out_of_range.
Rat brute_force_hurwitz(const Profile& p);

enum class Provenance { character, oracle };
std::string to_string(Provenance p);

/// Profile -> value store; inserting a disagreeing value for an existing
/// profile throws std::logic_error. Thread-safe.
class HurwitzTable {
public:
    struct Entry {
        std::optional<Rat> character;
        std::optional<Rat> oracle;
    };

    void insert(const Profile& p, const Rat& value, Provenance source);
    std::map<Profile, Entry> entries() const;
    /// Columns g,r,k,m,h,provenance; one row per stored value.
    std::string to_csv() const;

private:
    mutable std::mutex mutex_;
    std::map<Profile, Entry> entries_;
};

/// Form of the first KP equation F_1111 + 6 s F_11^2 + 3 F_22 - 4 F_13 = 0.
struct KpConvention {
    /// Times t_i = p_i / i (true) or t_i = p_i (false).
    bool divided_times = true;
    /// s in the quadratic term.
    int quadratic_sign = 1;
    std::string str() const;
};

/// Polynomial in p_1..p_W (variables 0..W-1) and beta (variable W).
struct KpSeries {
    int weight_bound = 0;
    int beta_bound = 0;
    RatPoly poly;
};

int kp_weight(const Exponent& e);

/// log of the tau function sum_lambda (dim/|lambda|!) s_lambda(p) e^{beta p_{r+1}(lambda)},
/// i.e. the connected series G_r, kept up to the given weight and beta degree.
KpSeries hurwitz_log_tau(int r, int weight_bound, int beta_bound);

/// KP residual of F, restricted to weight <= residual_weight. F must be known
/// to weight residual_weight + 4.
RatPoly kp_residual_of(const KpSeries& F, const KpConvention& c, int residual_weight);

struct KpReport {
    int r = 0;
    int degree_bound = 0;
    int beta_bound = 0;
    KpConvention convention;
    std::vector<std::string> calibration;
    std::size_t nonzero_terms = 0;
    std::string first_nonzero;
    bool satisfied() const { return nonzero_terms == 0; }
};

/// Chooses the convention that annihilates tau = 1, tau = exp(p_1) and the
/// r = 1 Hurwitz series; records the trials. Throws std::logic_error if none
/// or several survive.
KpConvention calibrate_kp(int degree_bound, int beta_bound, std::vector<std::string>* log = nullptr);

/// Calibrated residual of G_r: weights <= degree_bound, beta degree <= beta_bound
/// (default degree_bound + 8).
KpReport kp_residual(int r, int degree_bound, int beta_bound = -1);

}  // namespace rspin
