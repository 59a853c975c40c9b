#pragma once

#include <compare>
#include <string>
#include <vector>

#include "rspin/rational.hpp"

namespace rspin {

/// Integer partition: non-increasing positive parts.
class Partition {
public:
    Partition() = default;
    /// Throws std::invalid_argument unless parts are positive and non-increasing.
    explicit Partition(std::vector<int> parts);
    /// Sorts the parts first; zeros are dropped, negatives rejected.
    static Partition from_unsorted(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int operator[](int i) const { return parts_.at(static_cast<std::size_t>(i)); }
    /// Number of parts equal to j.
    int multiplicity(int j) const;
    /// Product of multiplicities factorials (the order of the automorphism group
    /// permuting equal parts).
    BigInt automorphism_order() const;
    Partition conjugate() const;

    std::string str() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b)
    {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

/// All partitions of n in reverse lexicographic order ((n) first). Memoized.
const std::vector<Partition>& partitions_of(int n);

/// Number of standard Young tableaux, by the hook-length formula.
BigInt hook_dimension(const Partition& lambda);

/// z_mu = prod_j j^{m_j} m_j!.
BigInt z_factor(const Partition& mu);

/// Size of the conjugacy class of cycle type mu in S_{|mu|}.
BigInt class_size(const Partition& mu);

/// Shifted power sum (1/s) sum_i [(mu_i - i + 1/2)^s - (-i + 1/2)^s].
Rat shifted_power_sum(int s, const Partition& mu);

/// Irreducible character chi_lambda at cycle type mu (Murnaghan-Nakayama).
long irreducible_character(const Partition& lambda, const Partition& mu);

/// Scalar by which the stable center element C_{|mu|, lambda} acts on the
/// irreducible representation mu; zero when |mu| < |lambda|.
Rat stable_central_character(const Partition& lambda, const Partition& mu);

/// [r + 2 - sum_i (lambda_i + 1)] / 2.
Rat genus_defect(int r, const Partition& lambda);

struct StableCenterTerm {
    Partition lambda;
    Rat coefficient;
    Rat genus_defect;
};

struct CompletedCycle {
    int r_plus_1 = 0;
    /// Non-zero terms, larger |lambda| first, reverse lexicographic within a size.
    std::vector<StableCenterTerm> terms;

    /// Coefficient of C_lambda (zero if absent).
    Rat coefficient(const Partition& lambda) const;
    std::string str() const;
};

/// Expansion of the shifted power sum p_{r+1} in stable center elements.
/// Memoized.
const CompletedCycle& completed_cycle(int r_plus_1);

}  // namespace rspin
