#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rspin/cohft.hpp"
#include "rspin/cyclotomic.hpp"
#include "rspin/givental.hpp"
#include "rspin/rational.hpp"
#include "rspin/series.hpp"

namespace rspin {

// Local data of the curve x = -y^r + log y at its branch points
// y_i = r^{-1/r} J^i. Writing y = y_i (1 + u), x - x_i is the rational series
// phi(u) = -((1+u)^r - 1)/r + log(1+u) = -(r/2) u^2 + O(u^3).

/// phi(u) through u^{order-1}.
RatSeries local_phi(int r, int order);

/// u as a series in s, where phi(u) = -(r/2) s^2 and u = s + O(s^2). With the
/// local coordinate z_i^2 = x - x_i this is u = t(alpha z_i), alpha^2 = -2/r.
RatSeries local_u_series(int r, int order);

/// V_0 .. V_order.
struct VSeries {
    int r = 1;
    std::vector<Rat> coefficients;
};

/// V_j read off the odd part of y(z_i). branch = +1 picks u'(0) = +alpha;
/// branch = -1 is the other sheet (every V_j changes sign).
VSeries local_odd_expansion(int r, int order, int branch = 1);
/// Coefficients of exp(-sum_j B_{j+1}(1/r)/(j(j+1)) zeta^j).
VSeries v_bernoulli(int r, int order);

/// (U_0)_{i1 i2} .. (U_order)_{i1 i2} from the even part of Y_{i1 i2}(z_{i2}).
std::vector<CycExt> u_matrix_direct(int r, int i1, int i2, int order);
/// (1/r) sum_c [z^k] exp(-sum B_{m+1}(c/r) z^m/(m(m+1))) J^{c(i2 - i1)}.
std::vector<CycExt> u_matrix_bernoulli(int r, int i1, int i2, int order);

/**
 * Leaf function of flat index a, divided by I sqrt2 r^{1/2-(a+1)/r} and by
 * e^{(r-a-1)x}: coefficient n of e^{rnx}.
 */
struct XiSeries {
    int r = 1;
    int a = 0;
    /// (rn + r - a - 1)^n / n!, with 0^0 = 1.
    std::vector<Rat> closed_form;
    /// From e^x = y e^{-y^r}: expansion of y^{r-a-1}/(1 - r y^r).
    std::vector<Rat> direct;
    /// sum_i J^{-(a+1)i}/(1 - J^{-i} w) = r w^{r-a-1}/(1 - w^r) as series in w.
    bool idempotent_sum_ok = false;
    bool agree() const { return idempotent_sum_ok && closed_form == direct; }
};
/// Coefficients n = 0 .. order.
XiSeries xi_tilde(int r, int a, int order);

/**
 * Finite sums of c_f r^f with c_f in Q(J, alpha) and f in [0, 1). Used to
 * carry the fractional powers of r in the scaling identities. Equality is
 * that of canonical forms.
 */
class RootScaled {
public:
    RootScaled() = default;
    explicit RootScaled(int r) : r_(r) {}
    /// c r^q.
    RootScaled(int r, const CycExt& c, const Rat& q);

    int r() const { return r_; }
    bool is_zero() const { return terms_.empty(); }
    /// True when only f = 0 occurs with a rational coefficient.
    bool is_rational() const;
    Rat rational_value() const;
    /// Inverse of a single term; throws std::domain_error otherwise.
    RootScaled inverse() const;

    RootScaled& operator+=(const RootScaled& o);
    RootScaled& operator*=(const RootScaled& o);
    friend RootScaled operator+(RootScaled a, const RootScaled& b) { return a += b; }
    friend RootScaled operator*(RootScaled a, const RootScaled& b) { return a *= b; }
    friend bool operator==(const RootScaled& a, const RootScaled& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const RootScaled& a, const RootScaled& b) { return !(a == b); }
    std::string str() const;

private:
    int r_ = 1;
    std::map<Rat, CycExt> terms_;
    void add_term(const Rat& f, const CycExt& c);
};

/// Givental data in the basis v_i = sum_a J^{-(a+1)i} e_a, built from the
/// local data: vertex weight r^{2q+p-2} J^{-(2q+p-2)i} on equal indices,
/// eta = Id, R_{ij}(z) = sum_k (U_k)_{ji} z^k, translation z (J^i/r)(1 - 1/V(z)).
GiventalTheory<CycExt> local_idempotent_theory(int r, int degree);

/// Engine on local_idempotent_theory; insertions are (i, d).
CycExt local_idempotent_correlator(int r, int g, const std::vector<std::pair<int, int>>& pairs);
/// sum_a <tau^a_d ...>^coh prod J^{-(a_j+1) i_j}.
CycExt coh_idempotent_correlator(int r, int g, const std::vector<std::pair<int, int>>& pairs);

/// Topological-recursion correlator in the idempotent basis:
/// local engine value times r^{2g+n-2+(2g+n-2)/r} / prod (-2r)^{d+1/2},
/// with (-2r)^{1/2} = alpha r.
RootScaled tr_correlator(int r, int g, const std::vector<std::pair<int, int>>& pairs);

struct ScalingReport {
    RootScaled lhs;
    RootScaled rhs;
    bool holds = false;
};

/// Flat-basis scaling identity: sum_i tr prod r^{1/2} J^{(a+1)i} I sqrt2 r^{-(a+1)/r} (-2)^d
/// against coh r^{2g+2n-2+(2g-2-sum a)/r-sum d}. pairs are (a, d).
ScalingReport scaling_identity_check(int g, int r, const std::vector<Insertion>& pairs);

/// k_1..k_n -> coefficient of prod e^{k_j x_j} dx_j in W_{g,n}.
using CoefficientTable = std::map<std::vector<int>, Rat>;

/// W_{g,n} assembled from t.r. correlators and leaf functions, for k_j <= k_bound.
/// Throws std::logic_error if a coefficient fails to be rational.
CoefficientTable doss_assemble(int g, int r, int n, int k_bound);

/// W_{g,n} by the residue recursion on the curve (omega_{0,1} = y dx,
/// omega_{0,2} = dy dy'/(y - y')^2, kernel
/// int_{s z}^{z} omega_{0,2}(z0, .) / (2 (omega_{0,1}(s z) - omega_{0,1}(z)))),
/// expanded at y = 0, for k_j <= k_bound.
/// Only (0,3) and (1,1); other (g, n) throw std::invalid_argument.
CoefficientTable eo_direct(int g, int n, int r, int k_bound);

struct LemmaCheck {
    std::string lemma;
    int r = 0;
    int order = 0;
    bool holds = false;
    /// Empty when holds.
    std::string first_mismatch;
};

/// Runs the local-expansion, two-point, leaf and scaling checks for one r.
std::vector<LemmaCheck> verify_lemmas(int r, int order);
std::string lemma_report_json(const std::vector<LemmaCheck>& checks);
std::string lemma_report_markdown(const std::vector<LemmaCheck>& checks);

}  // namespace rspin
