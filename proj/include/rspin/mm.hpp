#pragma once

#include <map>
#include <string>
#include <vector>

#include "rspin/mpoly.hpp"
#include "rspin/partitions.hpp"
#include "rspin/rational.hpp"

namespace rspin {

/// A_{r+1} for a fixed N: coefficients[j] multiplies x^j (degree r + 1).
struct APoly {
    int r = 0;
    int N = 1;
    std::vector<Rat> coefficients;

    Rat operator()(const Rat& x) const;
};

/// sum_k r! (1/2 - N)^k x^{r+1-k} / (k! (r+1-k)!)
///   + (-1)^{r+1} r! (-1)^k B_k (2^{k-1} - 1) N^{r+1-k} / (2^{k-1} k! (r+2-k)!),
/// B_1 = -1/2. r = 0 gives A_1(x) = x - (N-1)/2. Throws std::invalid_argument
/// for r < 0 or N < 1.
APoly a_polynomial(int r, int N);

/// h_i = lambda_i - i + N, i = 1..N. Throws std::invalid_argument if
/// length(lambda) > N.
std::vector<int> h_tuple(const Partition& lambda, int N);

/// sum_i A_{r+1}(h_i) == shifted_power_sum(r + 1, lambda).
bool a_identity_check(int r, int N, const Partition& lambda);

/// prod_{i<j} (x_i - x_j).
Rat vandermonde(const std::vector<int>& x);

/// det(v_j^{e_i}) / prod_{i<j} (v_i - v_j) in N = e.size() variables; exact division.
RatPoly alternant_quotient(const std::vector<int>& e);

/// s_lambda(v_1..v_N) = det(v_j^{lambda_i - i + N}) / prod_{i<j} (v_i - v_j).
RatPoly schur_poly(const Partition& lambda, int N);

/// (1/K!) sum_mu |C_mu| chi_lambda(mu) prod_j (v_1^{mu_j} + .. + v_N^{mu_j}).
RatPoly frobenius_schur(const Partition& lambda, int N);

/// Coefficient of t^K: g_s power -> polynomial in v_1..v_N.
struct ZCoefficient {
    int K = 0;
    int N = 1;
    int gs_order = 0;
    std::map<int, RatPoly> value;

    friend bool operator==(const ZCoefficient& a, const ZCoefficient& b) { return a.value == b.value; }
    std::string str() const;
};

/// sum_{|lambda| = K, l(lambda) <= N} g_s^{-K} dim(lambda)/K! s_lambda(v)
/// exp(g_s^r p_{r+1}(lambda)/(r+1)), g_s powers <= gs_order. Requires N > K.
ZCoefficient z_coefficient_character(int K, int N, int r, int gs_order);

/// (1/N!) sum over h in [0, D]^N of det(v_j^{h_i})/Delta(v) Delta(h) / prod h_i!
/// prod e^{g_s^r A_{r+1}(h_i)} (t/g_s)^{A_1(h_i)}, coefficient of t^K.
/// Requires N > K and D > K + (N-1)/2.
ZCoefficient z_coefficient_finite_sum(int K, int N, int D, int r, int gs_order);

/// Smallest integer D with D > K + (N-1)/2.
int minimal_truncation(int K, int N);

struct MatrixModelCheck {
    int K = 0;
    int N = 1;
    int D = 0;
    int r = 1;
    int gs_order = 0;
    bool holds = false;
    /// "g_s^e v-monomial" of the first difference; empty when holds.
    std::string first_mismatch;
};

MatrixModelCheck matrix_model_check(int K, int N, int D, int r, int gs_order);
std::string matrix_model_report_json(const std::vector<MatrixModelCheck>& checks);

}  // namespace rspin
