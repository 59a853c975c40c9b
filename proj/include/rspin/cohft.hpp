#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rspin/cyclotomic.hpp"
#include "rspin/givental.hpp"
#include "rspin/hurwitz.hpp"
#include "rspin/rational.hpp"
#include "rspin/series.hpp"

namespace rspin {

// Flat basis e_0 .. e_{r-1} of the r-spin TQFT.

/// omega_{g,n}(a_1..a_n) = r^{2g-1} [2g - 2 - sum a_i = 0 mod r].
/// Throws std::invalid_argument for r < 1, g < 0 or a_i outside 0..r-1.
Rat tqft_value(int r, int g, const std::vector<int>& a);

/// eta_{ab} = (1/r) [a + b + 2 = 0 mod r].
Rat metric(int r, int a, int b);
/// r [a + b + 2 = 0 mod r].
Rat metric_inverse(int r, int a, int b);

/// Index c with e_a * e_b = e_c.
int quantum_product(int r, int a, int b);
/// Coefficient of e_a in the i-th idempotent, J^{ai} / r.
CycExt idempotent_coefficient(int r, int i, int a);

/// [z^k] R_{aa}(z), R(z) = exp(-sum_k diag B_{k+1}((a+1)/r) z^k / (k(k+1))).
Rat r_matrix_coefficient(int r, int a, int k);
/// R_{aa}(z) to the given order (coefficients z^0 .. z^{order-1}).
RatSeries r_matrix_series(int r, int a, int order);

/// Checks R(z) eta^{-1} R(-z)^t eta = Id through z^{order-1}.
bool symplectic_condition(int r, int order);

/// Givental data of the r-spin CohFT in the flat basis with R-matrix
/// truncated at z^degree.
GiventalTheory<Rat> rspin_theory(int r, int degree);

/// (a, d): insertion tau_d^a.
using Insertion = std::pair<int, int>;

/// Integral of Omega_{g,n}(a_1..a_n) psi^{d_1} ... psi^{d_n}. Uses a per-r
/// engine truncated at kMaxGraphDimension. Throws std::invalid_argument for
/// unstable (g, n) or a_i out of range.
Rat givental_correlator(int r, int g, const std::vector<Insertion>& pairs);

/// f_{g,r;k}: m! r^{m+n+2g-2} prod (k_i/r)^{p_i}/p_i! times the sum over d of
/// prod (k_i/r)^{d_i} <tau_{d_1}^{a_1} ...>. Throws std::invalid_argument for
/// unstable (g, n) and std::domain_error for an invalid profile.
Rat f_number(const Profile& p);

/// Coefficient of exp(sum k_i x_i) in F_{g,r}, i.e. f/m!. Also recomputed by
/// the correlator resummation with exponent
/// 2g + 2n - 2 + (2g - 2 - sum a)/r - sum d; a mismatch throws std::logic_error.
Rat F_coefficient(const Profile& p);

/// (g, sorted insertions) -> value for one r.
struct CorrelatorTable {
    int r = 1;
    std::map<std::pair<int, std::vector<Insertion>>, Rat> entries;

    /// Every correlator of genus g with n insertions, sum d <= 3g - 3 + n,
    /// up to permutation.
    static CorrelatorTable build(int r, int g, int n);
    /// [{"g":..,"r":..,"pairs":[[a,d],..],"value":"p/q"}, ..]
    std::string to_json() const;
};

}  // namespace rspin
