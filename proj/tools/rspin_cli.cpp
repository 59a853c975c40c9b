// rspin: verification campaigns for completed-cycle Hurwitz numbers and the
// r-spin intersection side.
//
// Exit status: 0 when every asserted check passes, 1 on a failed assertion,
// 2 on a usage, configuration, guard or cache error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rspin/cohft.hpp"
#include "rspin/hurwitz.hpp"
#include "rspin/mm.hpp"
#include "rspin/partitions.hpp"
#include "rspin/psi.hpp"
#include "rspin/spectral.hpp"
#include "rspin/stable_graph.hpp"

using namespace rspin;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kReportSchema = "rspin-report-v1";

struct Config {
    int r = 1;
    int genus = 0;
    int n = 0;
    std::vector<int> profile;
    int order = -1;
    int k_bound = 3;
    int max_euler = 2;
    int max_k = 3;
    std::string cache_dir;
    std::string format = "text";
    unsigned seed = 20240611;
    bool evidence_mode = false;
    bool oracle = false;
    bool theorem_window = false;
    bool timings = false;
};

struct Check {
    std::string suite;
    std::string name;
    bool asserted = true;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> values;
    std::string detail;
    double seconds = 0;
};

struct Report {
    std::string command;
    Config config;
    std::vector<std::string> calibration;
    std::vector<Check> checks;

    bool ok() const
    {
        for (const auto& c : checks)
            if (c.asserted && !c.pass) return false;
        return true;
    }
};

// Guard and cache problems: reported with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<int>& k)
{
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s;
}

template <class F>
void timed(Check& c, F&& f)
{
    const auto start = std::chrono::steady_clock::now();
    f();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::vector<int>> tuples(int n, int bound)
{
    std::vector<std::vector<int>> out;
    std::vector<int> k(static_cast<std::size_t>(n), 1);
    while (true) {
        out.push_back(k);
        std::size_t i = 0;
        while (i < k.size() && k[i] == bound) k[i++] = 1;
        if (i == k.size()) return out;
        ++k[i];
    }
}

bool elsv_proved(int g, int n) { return g == 0 || (g == 1 && n == 1); }

// Suites

Check hurwitz_check(const Config& cfg, const Profile& p)
{
    Check c{"hurwitz", p.str(), cfg.oracle, true, {}, "", 0};
    timed(c, [&] {
        const HurwitzResult h = connected_hurwitz_checked(p);
        c.values.emplace_back("h", to_string(h.value));
        if (!h.valid_profile) c.detail = "m is not a non-negative integer";
        else c.values.emplace_back("m", std::to_string(p.m()));
        if (cfg.oracle && h.valid_profile) {
            const Rat b = brute_force_hurwitz(p);
            c.values.emplace_back("oracle", to_string(b));
            c.pass = b == h.value;
        }
    });
    return c;
}

void hurwitz_oracle_suite(const Config& cfg, Report& rep)
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& k : tuples(n, 5)) {
            int K = 0;
            for (int x : k) K += x;
            if (K > 5) continue;
            for (int g = 0; g <= 8; ++g) {
                const Profile p(g, cfg.r, k);
                if (!p.valid() || p.m() > 3) continue;
                Config c = cfg;
                c.oracle = true;
                rep.checks.push_back(hurwitz_check(c, p));
            }
        }
}

Check elsv_check(const Config& cfg, const Profile& p)
{
    const bool proved = elsv_proved(p.g, p.n());
    Check c{"elsv", p.str(), proved || cfg.evidence_mode, false, {}, proved ? "proved cell" : "evidence cell", 0};
    timed(c, [&] {
        const Rat h = connected_hurwitz(p);
        const Rat f = f_number(p);
        c.values = {{"h", to_string(h)}, {"f", to_string(f)}};
        c.pass = h == f;
    });
    return c;
}

void elsv_cell(const Config& cfg, int g, int n, Report& rep)
{
    if (2 * g - 2 + n <= 0) throw UsageError("elsv: unstable (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")");
    if (3 * g - 3 + n > kMaxGraphDimension) {
        rep.checks.push_back(Check{"elsv", "g=" + std::to_string(g) + " n=" + std::to_string(n), false, false, {},
                                   "skipped: 3g-3+n exceeds the graph dimension guard " +
                                       std::to_string(kMaxGraphDimension),
                                   0});
        return;
    }
    for (const auto& k : tuples(n, cfg.k_bound)) {
        const Profile p(g, cfg.r, k);
        if (p.valid()) rep.checks.push_back(elsv_check(cfg, p));
    }
}

void spectral_suite(const Config& cfg, Report& rep)
{
    const int order = cfg.order < 0 ? 4 : cfg.order;
    for (const LemmaCheck& l : verify_lemmas(cfg.r, order))
        rep.checks.push_back(Check{"spectral", l.lemma, true, l.holds, {{"order", std::to_string(l.order)}},
                                   l.first_mismatch, 0});
    rep.calibration.push_back(
        "recursion kernel: int B / (2 (omega01(s z) - omega01(z))), fixed by the r = 1 coefficient 1 at k = (1,1,1)");
    if (cfg.r > 2) return;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}}) {
        Check c{"spectral", "recursion vs assembly vs Hurwitz g=" + std::to_string(g) + " n=" + std::to_string(n),
                true, true, {}, "", 0};
        timed(c, [&] {
            const CoefficientTable d = doss_assemble(g, cfg.r, n, cfg.k_bound);
            const CoefficientTable e = eo_direct(g, n, cfg.r, cfg.k_bound);
            if (d != e) {
                c.pass = false;
                c.detail = "recursion and assembly differ";
            }
            for (const auto& [k, v] : d) {
                const Profile p(g, cfg.r, k);
                Rat want = 0;
                if (p.valid()) {
                    want = connected_hurwitz(p) / Rat(factorial(static_cast<unsigned long>(p.m())));
                    for (int x : k) want *= x;
                }
                if (v != want && c.pass) {
                    c.pass = false;
                    c.detail = "first mismatch at k = (" + join(k) + ")";
                }
            }
            c.values.emplace_back("coefficients", std::to_string(d.size()));
        });
        rep.checks.push_back(c);
    }
}

void matrix_model_suite(const Config& cfg, Report& rep)
{
    Check a{"matrix-model", "A identity on 50 sampled partitions", true, true, {}, "", 0};
    timed(a, [&] {
        std::mt19937 gen(cfg.seed);
        std::uniform_int_distribution<int> rd(1, 4), nd(1, 6), sd(0, 8);
        int done = 0;
        while (done < 50) {
            const int r = rd(gen), N = nd(gen);
            const auto& all = partitions_of(sd(gen));
            const Partition& lambda = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(gen)];
            if (lambda.length() > N) continue;
            ++done;
            if (!a_identity_check(r, N, lambda) && a.pass) {
                a.pass = false;
                a.detail = "r=" + std::to_string(r) + " N=" + std::to_string(N) + " lambda=" + lambda.str();
            }
        }
    });
    rep.checks.push_back(a);
    const int gs_order = 3 * cfg.r;
    for (int K = 0; K <= cfg.max_k; ++K)
        for (int N = K + 1; N <= K + 2; ++N) {
            const int dmin = minimal_truncation(K, N);
            const int dfull = std::max(dmin, K + N - 1);
            // When the two windows differ, the minimal one is asserted only on request.
            std::vector<std::pair<int, bool>> runs{{dmin, cfg.theorem_window || dmin == dfull}};
            if (dfull != dmin) runs.emplace_back(dfull, true);
            for (auto [D, asserted] : runs) {
                Check c{"matrix-model",
                        "K=" + std::to_string(K) + " N=" + std::to_string(N) + " D=" + std::to_string(D) +
                            (D == dmin ? " (minimal D)" : " (all partitions inside)"),
                        asserted, false, {}, "", 0};
                timed(c, [&] {
                    const MatrixModelCheck m = matrix_model_check(K, N, D, cfg.r, gs_order);
                    c.pass = m.holds;
                    c.detail = m.first_mismatch;
                    c.values.emplace_back("gs_order", std::to_string(gs_order));
                });
                rep.checks.push_back(c);
            }
        }
}

void kp_suite(const Config& cfg, Report& rep)
{
    const int degree = cfg.order < 0 ? 5 : cfg.order;
    KpReport kp;
    Check c{"kp", "first KP equation, weight <= " + std::to_string(degree), true, false, {}, "", 0};
    timed(c, [&] { kp = kp_residual(cfg.r, degree); });
    c.pass = kp.satisfied();
    c.values = {{"beta_bound", std::to_string(kp.beta_bound)}, {"nonzero_terms", std::to_string(kp.nonzero_terms)}};
    c.detail = kp.first_nonzero;
    rep.calibration.push_back("kp convention: " + kp.convention.str());
    for (const auto& line : kp.calibration) rep.calibration.push_back("kp trial: " + line);
    rep.checks.push_back(c);
}

// Output

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

Json config_json(const Config& c)
{
    return Json{{"r", c.r},
                {"genus", c.genus},
                {"n", c.n},
                {"profile", c.profile},
                {"order", c.order},
                {"k-bound", c.k_bound},
                {"max-euler", c.max_euler},
                {"max-k", c.max_k},
                {"seed", c.seed},
                {"evidence-mode", c.evidence_mode},
                {"theorem-window", c.theorem_window}};
}

void emit(const Report& rep, std::ostream& os)
{
    const Config& cfg = rep.config;
    std::size_t asserted = 0, failed = 0;
    for (const auto& c : rep.checks)
        if (c.asserted) {
            ++asserted;
            if (!c.pass) ++failed;
        }
    if (cfg.format == "json") {
        Json checks = Json::array();
        for (const auto& c : rep.checks) {
            Json values = Json::object();
            for (const auto& [k, v] : c.values) values[k] = v;
            Json row{{"suite", c.suite}, {"check", c.name}, {"asserted", c.asserted},
                     {"verdict", c.pass ? "pass" : "fail"}, {"values", values}, {"detail", c.detail}};
            if (cfg.timings) row["seconds"] = c.seconds;
            checks.push_back(row);
        }
        Json doc{{"schema", kReportSchema},
                 {"command", rep.command},
                 {"config", config_json(cfg)},
                 {"calibration", rep.calibration},
                 {"checks", checks},
                 {"summary", {{"asserted", asserted}, {"failed", failed}}}};
        os << doc.dump(1) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        os << "suite,check,asserted,verdict,values,detail" << (cfg.timings ? ",seconds" : "") << "\n";
        for (const auto& c : rep.checks) {
            std::string values;
            for (const auto& [k, v] : c.values) values += (values.empty() ? "" : ";") + k + "=" + v;
            os << csv_field(c.suite) << "," << csv_field(c.name) << "," << (c.asserted ? "yes" : "no") << ","
               << (c.pass ? "pass" : "fail") << "," << csv_field(values) << "," << csv_field(c.detail);
            if (cfg.timings) os << "," << c.seconds;
            os << "\n";
        }
        return;
    }
    if (cfg.format == "text" && (rep.command == "hurwitz" || rep.command == "elsv")) {
        for (const auto& c : rep.checks) {
            if (rep.command == "hurwitz" && !cfg.oracle) {
                os << c.values.front().second << "\n";
                continue;
            }
            if (rep.checks.size() > 1) os << c.name << ": ";
            for (const auto& [k, v] : c.values) os << k << "=" << v << ", ";
            os << "verdict " << (c.pass ? "PASS" : "FAIL") << (c.asserted ? "" : " (reported only)") << "\n";
        }
        return;
    }
    os << "# rspin " << rep.command << "\n\n";
    os << "schema " << kReportSchema << ", config " << config_json(cfg).dump() << "\n\n";
    for (const auto& line : rep.calibration) os << "- " << line << "\n";
    if (!rep.calibration.empty()) os << "\n";
    os << "| suite | check | asserted | verdict | values | detail |" << (cfg.timings ? " seconds |" : "") << "\n";
    os << "|---|---|---|---|---|---|" << (cfg.timings ? "---|" : "") << "\n";
    for (const auto& c : rep.checks) {
        std::string values;
        for (const auto& [k, v] : c.values) values += (values.empty() ? "" : ", ") + k + "=" + v;
        os << "| " << c.suite << " | " << c.name << " | " << (c.asserted ? "yes" : "no") << " | "
           << (c.pass ? "pass" : "fail") << " | " << (values.empty() ? "-" : values) << " | "
           << (c.detail.empty() ? "-" : c.detail) << " |";
        if (cfg.timings) os << " " << c.seconds << " |";
        os << "\n";
    }
    os << "\n" << asserted - failed << "/" << asserted << " asserted checks pass\n";
}

// Values from a JSON config file fill options that were not given on the command line.
void apply_config_file(CLI::App& app, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config file " + path + ": expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "config") throw UsageError("config file: nested config is not supported");
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr) throw UsageError("config file: unknown key " + key);
        if (opt->count() > 0) continue;
        std::vector<std::string> items;
        if (value.is_array())
            for (const auto& v : value) items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        else if (value.is_boolean())
            items.push_back(value.get<bool>() ? "true" : "false");
        else
            items.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        if (opt->get_type_size() == 0 && items.front() == "false") continue;
        for (const auto& s : items) opt->add_result(s);
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config file: bad value for " + key + ": " + e.what());
        }
    }
}

}  // namespace

int main(int argc, char** argv)
{
    Config cfg;
    std::string config_path;
    CLI::App app{"Completed-cycle Hurwitz numbers against r-spin intersection numbers"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--r", cfg.r, "r (completed (r+1)-cycles)")->check(CLI::Range(1, 12));
    app.add_option("-g,--g,--genus", cfg.genus, "genus")->check(CLI::NonNegativeNumber);
    app.add_option("--n", cfg.n, "number of poles")->check(CLI::NonNegativeNumber);
    app.add_option("--profile,--k", cfg.profile, "pole orders k_1,..,k_n")->delimiter(',')->check(CLI::PositiveNumber);
    app.add_option("--order", cfg.order, "series order (lemmas) or weight bound (KP)")->check(CLI::NonNegativeNumber);
    app.add_option("--k-bound", cfg.k_bound, "largest k_i in range campaigns")->check(CLI::Range(1, 8));
    app.add_option("--max-euler", cfg.max_euler, "largest 2g-2+n in verify-all")->check(CLI::Range(1, 4));
    app.add_option("--max-k", cfg.max_k, "largest degree K in the matrix-model suite")->check(CLI::Range(0, 4));
    app.add_option("--cache-dir", cfg.cache_dir, "directory for the psi-intersection cache");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv", "md"}));
    app.add_option("--seed", cfg.seed, "seed for sampled identity checks");
    app.add_flag("--evidence-mode", cfg.evidence_mode, "assert r-ELSV outside the proved cells");
    app.add_flag("--oracle", cfg.oracle, "compare Hurwitz numbers with enumeration");
    app.add_flag("--theorem-window", cfg.theorem_window, "assert the matrix-model match at the minimal D");
    app.add_flag("--timings", cfg.timings, "include wall-clock seconds (reports are then not reproducible)");
    app.add_option("--config", config_path, "JSON file with option values; flags override it");

    auto* hurwitz = app.add_subcommand("hurwitz", "connected completed-cycle Hurwitz number");
    auto* elsv = app.add_subcommand("elsv", "Hurwitz number against the r-spin intersection side");
    auto* lemmas = app.add_subcommand("spectral-lemmas", "local expansions of the spectral curve");
    auto* mm = app.add_subcommand("matrix-model", "Schur / finite-sum coefficient match");
    auto* kp = app.add_subcommand("kp-check", "first KP equation for the Hurwitz generating function");
    auto* all = app.add_subcommand("verify-all", "every suite for one r");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report rep;
    try {
        if (!config_path.empty()) apply_config_file(app, config_path);
        rep.config = cfg;

        std::filesystem::path cache_file;
        if (!cfg.cache_dir.empty()) {
            cache_file = std::filesystem::path(cfg.cache_dir) / "psi.json";
            try {
                load_psi_cache(cache_file.string());
            } catch (const std::runtime_error& e) {
                throw UsageError(std::string("cache: ") + e.what());
            }
        }

        if (hurwitz->parsed()) {
            rep.command = "hurwitz";
            if (cfg.profile.empty()) throw UsageError("hurwitz: --profile is required");
            rep.checks.push_back(hurwitz_check(cfg, Profile(cfg.genus, cfg.r, cfg.profile)));
            if (!cfg.oracle) rep.checks.back().pass = true;
        } else if (elsv->parsed()) {
            rep.command = "elsv";
            if (!cfg.profile.empty()) {
                if (cfg.n != 0 && cfg.n != static_cast<int>(cfg.profile.size()))
                    throw UsageError("elsv: --n does not match the profile length");
                const Profile p(cfg.genus, cfg.r, cfg.profile);
                if (!p.stable()) throw UsageError("elsv: unstable (g, n)");
                if (3 * p.g - 3 + p.n() > kMaxGraphDimension)
                    throw UsageError("elsv: 3g-3+n exceeds the graph dimension guard");
                if (!p.valid()) throw UsageError("elsv: m is not a non-negative integer for " + p.str());
                rep.checks.push_back(elsv_check(cfg, p));
            } else {
                if (cfg.n < 1) throw UsageError("elsv: give --profile or --n");
                elsv_cell(cfg, cfg.genus, cfg.n, rep);
            }
        } else if (lemmas->parsed()) {
            rep.command = "spectral-lemmas";
            spectral_suite(cfg, rep);
        } else if (mm->parsed()) {
            rep.command = "matrix-model";
            matrix_model_suite(cfg, rep);
        } else if (kp->parsed()) {
            rep.command = "kp-check";
            kp_suite(cfg, rep);
        } else if (all->parsed()) {
            rep.command = "verify-all";
            hurwitz_oracle_suite(cfg, rep);
            for (int g = 0; 2 * g - 1 <= cfg.max_euler; ++g)
                for (int n = 1; 2 * g - 2 + n <= cfg.max_euler; ++n)
                    if (2 * g - 2 + n > 0) elsv_cell(cfg, g, n, rep);
            spectral_suite(cfg, rep);
            matrix_model_suite(cfg, rep);
            kp_suite(cfg, rep);
        }

        if (!cache_file.empty()) {
            std::filesystem::create_directories(cache_file.parent_path());
            save_psi_cache(cache_file.string());
        }
    } catch (const UsageError& e) {
        std::cerr << "rspin: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rspin: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "rspin: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "rspin: guard: " << e.what() << "\n";
        return 2;
    }

    emit(rep, std::cout);
    return rep.ok() ? 0 : 1;
}
