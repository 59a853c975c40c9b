#include "rspin/hurwitz.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace rspin {

Profile::Profile(int g_, int r_, std::vector<int> k_) : g(g_), r(r_), k(std::move(k_))
{
    if (g < 0) throw std::invalid_argument("Profile: genus must be non-negative");
    if (r < 1) throw std::invalid_argument("Profile: r must be positive");
    if (k.empty()) throw std::invalid_argument("Profile: need at least one part");
    for (int x : k)
        if (x < 1) throw std::invalid_argument("Profile: parts must be positive");
}

int Profile::K() const { return std::accumulate(k.begin(), k.end(), 0); }

bool Profile::valid() const { return (K() + n() + 2 * g - 2) % r == 0; }

int Profile::m() const
{
    if (!valid()) throw std::domain_error("Profile " + str() + ": m is not an integer");
    return (K() + n() + 2 * g - 2) / r;
}

int Profile::p(int i) const { return k.at(static_cast<std::size_t>(i)) / r; }

int Profile::a(int i) const { return r - 1 - k.at(static_cast<std::size_t>(i)) % r; }

Partition Profile::cycle_type() const { return Partition::from_unsorted(k); }

std::string Profile::str() const
{
    std::ostringstream os;
    os << "(g=" << g << ", r=" << r << ", k=";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << ")";
    return os.str();
}

namespace {

// Per (r, nu): the distinct values of p_{r+1}(lambda) over lambda |- |nu| with
// the summed weights dim |C_nu| chi_lambda(nu) / |nu|!^2.
struct WeightedSpectrum {
    std::vector<Rat> weight;
    std::vector<Rat> value;
};

std::shared_mutex spectrum_mutex;
std::map<std::pair<int, std::vector<int>>, WeightedSpectrum> spectrum_cache;

const WeightedSpectrum& spectrum(int r, const Partition& nu)
{
    const auto key = std::make_pair(r, nu.parts());
    {
        std::shared_lock lock(spectrum_mutex);
        if (auto it = spectrum_cache.find(key); it != spectrum_cache.end()) return it->second;
    }
    const int size = nu.size();
    const BigInt kf = factorial(static_cast<unsigned long>(size));
    const Rat scale = Rat(class_size(nu)) / Rat(kf * kf);
    std::map<Rat, Rat> grouped;
    for (const auto& lambda : partitions_of(size)) {
        const long chi = irreducible_character(lambda, nu);
        if (chi == 0) continue;
        grouped[shifted_power_sum(r + 1, lambda)] += Rat(hook_dimension(lambda)) * Rat(chi) * scale;
    }
    WeightedSpectrum s;
    for (const auto& [v, w] : grouped) {
        if (w == 0) continue;
        s.value.push_back(v);
        s.weight.push_back(w);
    }
    std::unique_lock lock(spectrum_mutex);
    return spectrum_cache.emplace(key, std::move(s)).first->second;
}

// D(nu, j) / j! for j = 0..jmax.
std::vector<Rat> disconnected_row(int r, const Partition& nu, int jmax)
{
    const auto& s = spectrum(r, nu);
    std::vector<Rat> row(static_cast<std::size_t>(jmax) + 1, Rat(0));
    std::vector<Rat> power(s.weight);
    for (int j = 0; j <= jmax; ++j) {
        Rat total = 0;
        for (std::size_t i = 0; i < power.size(); ++i) {
            total += power[i];
            power[i] *= s.value[i];
        }
        row[static_cast<std::size_t>(j)] = total / Rat(factorial(static_cast<unsigned long>(j)));
    }
    return row;
}

}  // namespace

Rat disconnected_coefficient(int r, const Partition& mu, int m)
{
    if (r < 1 || m < 0) throw std::invalid_argument("disconnected_coefficient: need r >= 1, m >= 0");
    return disconnected_row(r, mu, m)[static_cast<std::size_t>(m)] * Rat(factorial(static_cast<unsigned long>(m)));
}

HurwitzResult connected_hurwitz_checked(const Profile& p)
{
    if (!p.valid()) return {Rat(0), false};
    const int m = p.m();
    const Partition mu = p.cycle_type();
    std::vector<int> distinct;
    std::vector<int> mult;
    for (int part : mu.parts()) {
        if (distinct.empty() || distinct.back() != part) {
            distinct.push_back(part);
            mult.push_back(0);
        }
        ++mult.back();
    }
    const std::size_t s = distinct.size();
    auto keep = [&](const Exponent& e) {
        for (std::size_t i = 0; i < s; ++i)
            if (e[i] > mult[i]) return false;
        return e[s] <= m;
    };
    // Z - 1 restricted to sub-multisets of mu and beta^j, j <= m.
    RatPoly x(s + 1);
    Exponent e(s + 1, 0);
    while (true) {
        std::size_t i = 0;
        while (i < s && e[i] == mult[i]) e[i++] = 0;
        if (i == s) break;
        ++e[i];
        std::vector<int> parts;
        for (std::size_t t = 0; t < s; ++t) parts.insert(parts.end(), static_cast<std::size_t>(e[t]), distinct[t]);
        const auto row = disconnected_row(p.r, Partition(parts), m);
        for (int j = 0; j <= m; ++j) {
            Exponent term = e;
            term[s] = j;
            x.add_term(term, row[static_cast<std::size_t>(j)]);
        }
    }
    const RatPoly g = log1p_truncated(x, keep);
    Exponent top(mult.begin(), mult.end());
    top.push_back(m);
    Rat h = g.coeff(top) * Rat(factorial(static_cast<unsigned long>(m))) * Rat(mu.automorphism_order());
    return {h, true};
}

Rat connected_hurwitz(const Profile& p) { return connected_hurwitz_checked(p).value; }

namespace {

constexpr int kOracleMaxDegree = 5;
constexpr int kOracleMaxFactors = 3;

using Perm = std::array<std::int8_t, kOracleMaxDegree>;

struct FactorOption {
    Perm perm;
    std::uint32_t block;  // elements of the distinguished cycles
    Rat weight;
};

std::vector<std::vector<int>> cycles_of(const Perm& p, int K)
{
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(static_cast<std::size_t>(K), false);
    for (int i = 0; i < K; ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<FactorOption> factor_options(int K, int r)
{
    const auto& cc = completed_cycle(r + 1);
    std::vector<FactorOption> out;
    Perm p{};
    std::vector<int> base(static_cast<std::size_t>(K));
    std::iota(base.begin(), base.end(), 0);
    do {
        for (int i = 0; i < K; ++i) p[i] = static_cast<std::int8_t>(base[i]);
        const auto cycles = cycles_of(p, K);
        std::vector<int> fixed;
        std::vector<int> lengths;
        std::uint32_t moved = 0;
        for (const auto& c : cycles) {
            if (c.size() == 1) {
                fixed.push_back(c[0]);
                continue;
            }
            lengths.push_back(static_cast<int>(c.size()));
            for (int x : c) moved |= 1U << x;
        }
        // Non-distinguished cycles must be fixed points; any subset of the
        // fixed points may be distinguished.
        for (std::uint32_t sub = 0; sub < (1U << fixed.size()); ++sub) {
            std::vector<int> parts = lengths;
            std::uint32_t block = moved;
            for (std::size_t f = 0; f < fixed.size(); ++f) {
                if (!(sub & (1U << f))) continue;
                parts.push_back(1);
                block |= 1U << fixed[f];
            }
            if (parts.empty()) continue;
            const Rat c = cc.coefficient(Partition::from_unsorted(parts));
            if (c == 0) continue;
            out.push_back({p, block, c});
        }
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::uint32_t cycle_code(const Perm& p, int K)
{
    std::array<int, kOracleMaxDegree> lengths{};
    int count = 0;
    std::uint32_t seen = 0;
    for (int i = 0; i < K; ++i) {
        if (seen & (1U << i)) continue;
        int len = 0;
        for (int j = i; !(seen & (1U << j)); j = p[j]) {
            seen |= 1U << j;
            ++len;
        }
        lengths[count++] = len;
    }
    std::sort(lengths.begin(), lengths.begin() + count, std::greater<>());
    std::uint32_t code = 0;
    for (int i = 0; i < count; ++i) code = code * 8 + static_cast<std::uint32_t>(lengths[i]);
    return code;
}

Partition decode_cycle_type(std::uint32_t code)
{
    std::vector<int> parts;
    while (code != 0) {
        parts.push_back(static_cast<int>(code % 8));
        code /= 8;
    }
    return Partition::from_unsorted(parts);
}

struct OracleSearch {
    int K;
    int m;
    const std::vector<FactorOption>& options;
    std::map<std::uint32_t, Rat> table;
    std::array<std::uint32_t, kOracleMaxFactors> blocks{};

    bool transitive(int used) const
    {
        const std::uint32_t full = (1U << K) - 1;
        std::uint32_t reach = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int i = 0; i < used; ++i) {
                if ((blocks[i] & reach) && (blocks[i] | reach) != reach) {
                    reach |= blocks[i];
                    grew = true;
                }
            }
        }
        return reach == full;
    }

    void run(int depth, const Perm& product, const Rat& weight)
    {
        if (depth == m) {
            if (transitive(m)) table[cycle_code(product, K)] += weight;
            return;
        }
        for (const auto& opt : options) {
            Perm next{};
            for (int i = 0; i < K; ++i) next[i] = product[opt.perm[i]];
            blocks[depth] = opt.block;
            run(depth + 1, next, weight * opt.weight);
        }
    }
};

std::mutex oracle_mutex;
std::map<std::tuple<int, int, int>, std::map<std::uint32_t, Rat>> oracle_cache;

const std::map<std::uint32_t, Rat>& oracle_table(int K, int r, int m)
{
    const auto key = std::make_tuple(K, r, m);
    {
        std::lock_guard lock(oracle_mutex);
        if (auto it = oracle_cache.find(key); it != oracle_cache.end()) return it->second;
    }
    const auto options = factor_options(K, r);
    OracleSearch search{K, m, options, {}, {}};
    Perm id{};
    for (int i = 0; i < K; ++i) id[i] = static_cast<std::int8_t>(i);
    search.run(0, id, Rat(1));
    std::lock_guard lock(oracle_mutex);
    return oracle_cache.emplace(key, std::move(search.table)).first->second;
}

}  // namespace

Rat brute_force_hurwitz(const Profile& p)
{
    if (!p.valid()) return 0;
    const int K = p.K();
    const int m = p.m();
    if (K > kOracleMaxDegree || m > kOracleMaxFactors)
        throw std::out_of_range("brute_force_hurwitz: " + p.str() + " exceeds the guard K <= 5, m <= 3");
    const Partition mu = p.cycle_type();
    const auto& table = oracle_table(K, p.r, m);
    Rat total = 0;
    for (const auto& [code, w] : table)
        if (decode_cycle_type(code) == mu) total += w;
    return total * Rat(mu.automorphism_order()) / Rat(factorial(static_cast<unsigned long>(K)));
}

std::string to_string(Provenance p) { return p == Provenance::character ? "character" : "oracle"; }

void HurwitzTable::insert(const Profile& p, const Rat& value, Provenance source)
{
    std::lock_guard lock(mutex_);
    Entry& e = entries_[p];
    auto& slot = source == Provenance::character ? e.character : e.oracle;
    const auto& other = source == Provenance::character ? e.oracle : e.character;
    if (slot && *slot != value) throw std::logic_error("HurwitzTable: conflicting values for " + p.str());
    if (other && *other != value)
        throw std::logic_error("HurwitzTable: character and oracle values disagree for " + p.str());
    slot = value;
}

std::map<Profile, HurwitzTable::Entry> HurwitzTable::entries() const
{
    std::lock_guard lock(mutex_);
    return entries_;
}

std::string HurwitzTable::to_csv() const
{
    std::ostringstream os;
    os << "g,r,k,m,h,provenance\n";
    for (const auto& [p, e] : entries()) {
        std::ostringstream k;
        for (std::size_t i = 0; i < p.k.size(); ++i) k << (i ? " " : "") << p.k[i];
        const std::string m = p.valid() ? std::to_string(p.m()) : "";
        if (e.character) os << p.g << "," << p.r << "," << k.str() << "," << m << "," << to_string(*e.character) << ",character\n";
        if (e.oracle) os << p.g << "," << p.r << "," << k.str() << "," << m << "," << to_string(*e.oracle) << ",oracle\n";
    }
    return os.str();
}

std::string KpConvention::str() const
{
    std::ostringstream os;
    os << "F_1111 " << (quadratic_sign > 0 ? "+" : "-") << " 6 F_11^2 + 3 F_22 - 4 F_13 = 0 in times t_i = "
       << (divided_times ? "p_i/i" : "p_i");
    return os.str();
}

int kp_weight(const Exponent& e)
{
    int w = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) w += static_cast<int>(i + 1) * e[i];
    return w;
}

KpSeries hurwitz_log_tau(int r, int weight_bound, int beta_bound)
{
    if (weight_bound < 1 || beta_bound < 0) throw std::invalid_argument("hurwitz_log_tau: bad bounds");
    const auto W = static_cast<std::size_t>(weight_bound);
    auto keep = [&](const Exponent& e) {
        return kp_weight(e) <= weight_bound && e[W] <= beta_bound;
    };
    RatPoly x(W + 1);
    for (int K = 1; K <= weight_bound; ++K) {
        const Rat inv_kf = Rat(1) / Rat(factorial(static_cast<unsigned long>(K)));
        for (const auto& mu : partitions_of(K)) {
            Exponent e(W + 1, 0);
            for (int part : mu.parts()) ++e[static_cast<std::size_t>(part - 1)];
            const Rat inv_z = Rat(1) / Rat(z_factor(mu));
            for (const auto& lambda : partitions_of(K)) {
                const long chi = irreducible_character(lambda, mu);
                if (chi == 0) continue;
                const Rat base = Rat(hook_dimension(lambda)) * inv_kf * Rat(chi) * inv_z;
                const Rat pv = shifted_power_sum(r + 1, lambda);
                Rat term = base;
                for (int j = 0; j <= beta_bound; ++j) {
                    e[W] = j;
                    x.add_term(e, term);
                    term *= pv / (j + 1);
                }
            }
        }
    }
    return {weight_bound, beta_bound, log1p_truncated(x, keep)};
}

RatPoly kp_residual_of(const KpSeries& F, const KpConvention& c, int residual_weight)
{
    if (F.weight_bound < residual_weight + 4)
        throw std::invalid_argument("kp_residual_of: series not known to weight residual_weight + 4");
    auto d = [&](const RatPoly& f, int i) {
        RatPoly out = f.derivative(static_cast<std::size_t>(i - 1));
        if (c.divided_times) out *= Rat(i);
        return out;
    };
    auto keep = [&](const Exponent& e) {
        return kp_weight(e) <= residual_weight && e.back() <= F.beta_bound;
    };
    const RatPoly& f = F.poly;
    const RatPoly f1 = d(f, 1);
    const RatPoly f11 = d(f1, 1);
    const RatPoly f1111 = d(d(f11, 1), 1);
    const RatPoly f22 = d(d(f, 2), 2);
    const RatPoly f13 = d(f1, 3);
    RatPoly res = f1111 + truncated_mul(f11, f11, keep) * Rat(6 * c.quadratic_sign) + f22 * Rat(3) - f13 * Rat(4);
    return res.filtered(keep);
}

namespace {

std::string describe_first(const RatPoly& res)
{
    if (res.is_zero()) return "";
    const auto& [e, c] = *res.terms().begin();
    std::ostringstream os;
    os << to_string(c) << " at [";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << "]";
    return os.str();
}

}  // namespace

KpConvention calibrate_kp(int degree_bound, int beta_bound, std::vector<std::string>* log)
{
    const int W = degree_bound + 4;
    const auto nv = static_cast<std::size_t>(W + 1);
    const KpSeries zero{W, beta_bound, RatPoly(nv)};
    const KpSeries single{W, beta_bound, RatPoly::variable(nv, 0)};
    const KpSeries hurwitz1 = hurwitz_log_tau(1, W, beta_bound);
    std::vector<KpConvention> survivors;
    for (bool divided : {true, false})
        for (int sign : {1, -1}) {
            const KpConvention c{divided, sign};
            bool ok = true;
            const std::vector<std::pair<std::string, const KpSeries*>> trials{
                {"tau=1", &zero}, {"tau=exp(p_1)", &single}, {"r=1 Hurwitz", &hurwitz1}};
            for (const auto& [name, series] : trials) {
                const RatPoly res = kp_residual_of(*series, c, degree_bound);
                if (log)
                    log->push_back(c.str() + " on " + name + ": " +
                                   (res.is_zero() ? "0" : std::to_string(res.size()) + " nonzero terms"));
                ok = ok && res.is_zero();
            }
            if (ok) survivors.push_back(c);
        }
    if (survivors.size() != 1)
        throw std::logic_error("calibrate_kp: expected exactly one surviving convention, got " +
                               std::to_string(survivors.size()));
    return survivors.front();
}

KpReport kp_residual(int r, int degree_bound, int beta_bound)
{
    // Connected terms of weight w carry beta^m with m >= w - 1, so the beta
    // cap must clear the weight of F (degree_bound + 4) to keep the check honest.
    if (beta_bound < 0) beta_bound = degree_bound + 8;
    KpReport report;
    report.r = r;
    report.degree_bound = degree_bound;
    report.beta_bound = beta_bound;
    report.convention = calibrate_kp(degree_bound, beta_bound, &report.calibration);
    const KpSeries F = hurwitz_log_tau(r, degree_bound + 4, beta_bound);
    const RatPoly res = kp_residual_of(F, report.convention, degree_bound);
    report.nonzero_terms = res.size();
    report.first_nonzero = describe_first(res);
    return report;
}

}  // namespace rspin
