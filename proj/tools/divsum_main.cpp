// Experiment runner for exact divisibility probabilities of i.i.d. lattice
// sums, their theta-function approximants, and the associated error bounds.
//
// Exit codes: 0 success, 1 validation error, 2 numeric-integrity error,
// 3 oracle mismatch.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "divsum/bounds.hpp"
#include "divsum/coupling.hpp"
#include "divsum/detail/parallel.hpp"
#include "divsum/detail/trig.hpp"
#include "divsum/divisorsets.hpp"
#include "divsum/exactprob.hpp"
#include "divsum/io.hpp"
#include "divsum/lattice.hpp"
#include "divsum/semilocal.hpp"
#include "divsum/theta.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitOracleMismatch = 3;

class oracle_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<long long> parse_ll_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw divsum::validation_error(std::string("bad ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) throw divsum::validation_error(std::string(what) + " must be nonempty");
    return out;
}

// --out is resolved against DIVSUM_OUT_DIR when relative; empty means stdout.
std::unique_ptr<std::ofstream> open_output(const std::string& out_path, std::ostream*& stream) {
    if (out_path.empty()) {
        stream = &std::cout;
        return nullptr;
    }
    std::filesystem::path path(out_path);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("DIVSUM_OUT_DIR")) path = std::filesystem::path(dir) / path;
    }
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) throw divsum::validation_error("cannot open output file: " + path.string());
    stream = file.get();
    return file;
}

struct CommonOptions {
    std::string out;
    std::string format = "csv";
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--out", common.out, "output file (default stdout; relative paths resolve against $DIVSUM_OUT_DIR)");
    cmd->add_option("--format", common.format, "table format: csv | json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    cmd->add_option("--workers", common.workers, "worker threads for grid sweeps")
        ->check(CLI::PositiveNumber);
}

double round_trip(long double v) { return static_cast<double>(v); }

// ---------------------------------------------------------------- exact ----

int run_exact(const std::string& law_path, const std::string& n_list, long long d_max,
              const std::string& u_list, double tol, const CommonOptions& common) {
    divsum::LatticeLaw law = divsum::load_law_file(law_path).law;
    const auto n_set = parse_ll_list(n_list, "--n-set");
    const auto u_set = parse_ll_list(u_list, "--u-set");
    if (d_max < 2) throw divsum::validation_error("--d-max must be >= 2");

    std::ostream* out = nullptr;
    auto file = open_output(common.out, out);
    divsum::TableWriter table(*out, divsum::parse_table_format(common.format),
                              {"n", "d", "u", "method", "probability"});

    bool mismatch = false;
    std::string mismatch_note;
    for (long long n : n_set) {
        for (long long d = 2; d <= d_max; ++d) {
            divsum::ResidueDistribution dist(law, n, d);
            for (long long u : u_set) {
                const divsum::DivisibilityQuery q{n, d, u};
                const divsum::Rat exact = dist.prob_divisible(u);
                const long double charsum = divsum::prob_divisible_charsum(law, q);

                std::optional<divsum::Rat> enumerated;
                try {
                    enumerated = divsum::enumerate_oracle(law, q);
                } catch (const divsum::enumeration_cap_error&) {
                    // path count too large; the other two routes still run
                }

                if (enumerated) {
                    table.row({q.n, q.d, q.u, "enumerate",
                               divsum::to_d(*enumerated)});
                    if (*enumerated != exact) {
                        mismatch = true;
                        mismatch_note = "enumerate != convolution at n=" + std::to_string(n) +
                                        " d=" + std::to_string(d) + " u=" + std::to_string(u);
                    }
                }
                table.row({q.n, q.d, q.u, "convolution", divsum::to_d(exact)});
                table.row({q.n, q.d, q.u, "charsum", round_trip(charsum)});
                if (std::abs(charsum - divsum::to_ld(exact)) > tol) {
                    mismatch = true;
                    mismatch_note = "charsum off by " +
                                    std::to_string(static_cast<double>(
                                        std::abs(charsum - divsum::to_ld(exact)))) +
                                    " at n=" + std::to_string(n) + " d=" + std::to_string(d) +
                                    " u=" + std::to_string(u);
                }
            }
        }
    }
    if (mismatch) throw oracle_mismatch(mismatch_note);
    return kExitOk;
}

// ------------------------------------------------------------ theorem11 ----

long double bernoulli_sup_error(long long n, long long u, long long d_max, int workers) {
    std::vector<long double> errs(static_cast<std::size_t>(d_max - 1), 0.0L);
    divsum::detail::parallel_for(2, d_max + 1, workers, [&](long long d) {
        const long double exact = divsum::bernoulli_closed_form({n, d, u});
        const divsum::ThetaValue tv = divsum::theta_u(d, n, u);
        errs[static_cast<std::size_t>(d - 2)] =
            std::abs(exact - tv.value / static_cast<long double>(d));
    });
    long double sup = 0.0L;
    for (long double e : errs) sup = std::max(sup, e);
    return sup;
}

int run_theorem11(const std::string& n_list, const std::string& u_list, long long d_max_opt,
                  const CommonOptions& common) {
    const auto n_set = parse_ll_list(n_list, "--n-set");
    const auto u_set = parse_ll_list(u_list, "--u-set");

    std::ostream* out = nullptr;
    auto file = open_output(common.out, out);
    divsum::TableWriter table(*out, divsum::parse_table_format(common.format),
                              {"u", "n", "sup_error", "normalized", "ratio_vs_half"});

    for (long long u : u_set) {
        std::map<long long, long double> sup;
        for (long long n : n_set) {
            const long long d_max = d_max_opt > 0 ? d_max_opt : n;
            sup[n] = bernoulli_sup_error(n, u, d_max, common.workers);
        }
        for (long long n : n_set) {
            const double logn = std::log(static_cast<double>(n));
            const double normalized = static_cast<double>(sup[n]) *
                                      std::pow(static_cast<double>(n), 1.5) /
                                      std::pow(logn, 2.5);
            json ratio;
            if (n % 2 == 0 && sup.count(n / 2))
                ratio = static_cast<double>(sup[n] / sup[n / 2]);
            table.row({u, n, round_trip(sup[n]), normalized, ratio});
        }
    }
    return kExitOk;
}

// ------------------------------------------------------------ theorem21 ----

divsum::CouplingSpec coupling_from_options(const divsum::LawFileContent& content,
                                           const std::string& theta_text,
                                           const std::string& mu_text) {
    if (!theta_text.empty())
        return divsum::coupling_from_theta(content.law, divsum::parse_rational(theta_text));
    if (!mu_text.empty()) {
        divsum::MuSequence mu;
        mu.total = 0;
        std::stringstream ss(mu_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw divsum::validation_error("--mu entries look like '<index>=<rational>'");
            const long long k = std::stoll(item.substr(0, eq));
            mu.mu.emplace_back(k, divsum::parse_rational(item.substr(eq + 1)));
            mu.total += mu.mu.back().second;
        }
        std::sort(mu.mu.begin(), mu.mu.end());
        const divsum::TauSequence tau = divsum::solve_tau(content.law, mu);
        return divsum::build_coupling(content.law, tau, mu);
    }
    if (!content.mu.empty() && !content.tau.empty())
        return divsum::parse_coupling_text(divsum::serialize_law(content.law), "law-file");
    throw divsum::validation_error("theorem21 needs --theta or --mu (or a law file with both mu and tau lines)");
}

int run_theorem21(const std::string& law_path, const std::string& theta_text,
                  const std::string& mu_text, const std::string& n_list, long long d_max,
                  const std::string& u_list, const std::string& phi_list, double rho,
                  std::uint64_t seed, bool have_seed, const CommonOptions& common) {
    const divsum::LawFileContent content = divsum::load_law_file(law_path);
    const divsum::ReducedLaw reduced = divsum::reduce_to_unit_span(content.law);
    if (reduced.span_found != content.law.span() || content.law.v0() != 0)
        std::cerr << "note: law reduced to unit span (offset " << reduced.offset << ", span "
                  << reduced.span_found << ")\n";
    const divsum::CouplingSpec spec = coupling_from_options(content, theta_text, mu_text);

    const auto n_set = parse_ll_list(n_list, "--n-set");
    const auto u_set = parse_ll_list(u_list, "--u-set");
    const auto phi_set = parse_ll_list(phi_list, "--phi-set");
    if (d_max < 2) throw divsum::validation_error("--d-max must be >= 2");

    divsum::ScanSummary scan =
        divsum::discrepancy_scan(spec, n_set, 2, d_max, u_set, rho, common.workers);

    std::ostream* out = nullptr;
    auto file = open_output(common.out, out);
    divsum::TableWriter table(*out, divsum::parse_table_format(common.format),
                              {"n", "d", "u", "exact", "approx", "abs_error", "bound_smooth",
                               "bound_chernoff"});
    for (const auto& rec : scan.records)
        table.row({rec.query.n, rec.query.d, rec.query.u, divsum::to_d(rec.exact),
                   round_trip(rec.approx), round_trip(rec.abs_error),
                   round_trip(rec.bound_smooth), round_trip(rec.bound_chernoff)});

    // series comparison over the dense n range
    const long long n_lo = *std::min_element(n_set.begin(), n_set.end());
    const long long n_hi = *std::max_element(n_set.begin(), n_set.end());
    const divsum::DivisorTestSet ts = divsum::DivisorTestSet::range(2, d_max);
    const divsum::SeriesOfSups series =
        divsum::series_of_sups(spec.base(), spec, ts, n_lo, n_hi, u_set, phi_set);
    const double rhs = divsum::series_bound_rhs(divsum::to_d(spec.vartheta()), scan.theta, rho,
                                                scan.c_emp, n_lo);

    std::ostream& rep = std::cerr;
    rep.precision(12);
    rep << "theorem21-report\n";
    rep << "vartheta " << divsum::format_rational(spec.vartheta()) << "\n";
    rep << "rho " << rho << "\n";
    rep << "theta " << scan.theta << "\n";
    for (const auto& [n, sup] : scan.sup_by_n) rep << "sup_error n=" << n << " " << static_cast<double>(sup) << "\n";
    rep << "c_emp " << scan.c_emp << "\n";
    rep << "series_partial_sum " << series.partial_sum << "\n";
    rep << "series_bound_rhs " << rhs << "\n";
    rep << "series_within_bound " << (series.partial_sum <= rhs ? "yes" : "no") << "\n";
    if (have_seed) {
        // Monte Carlo spot check of the first grid point
        const long long n = n_set.front();
        const auto summary = divsum::sample_coupled_paths(spec, n, 20000, seed);
        const long long d = std::min<long long>(d_max, 5);
        const double emp = summary.empirical_prob_divisible(d, u_set.front());
        const double exact = divsum::to_d(
            divsum::prob_divisible_convolution(spec.base(), {n, d, u_set.front()}));
        rep << "mc_check generator=" << summary.generator << " seed=" << seed << " n=" << n
            << " d=" << d << " emp=" << emp << " exact=" << exact << "\n";
    }
    return kExitOk;
}

// ----------------------------------------------------------- compare-llt ----

int run_compare_llt(const std::string& n_list, const CommonOptions& common) {
    const auto n_set = parse_ll_list(n_list, "--n-set");
    std::ostream* out = nullptr;
    auto file = open_output(common.out, out);
    divsum::TableWriter table(*out, divsum::parse_table_format(common.format),
                              {"n", "discrepancy", "envelope_sqrtlog_over_n",
                               "envelope_log52_over_n32", "fit_sqrtlog", "fit_log52"});
    for (long long n : n_set) {
        long double sup = 0.0L;
        for (long long d = 2; d <= n; ++d) {
            const long double exact = divsum::bernoulli_closed_form({n, d, 0});
            const long double gauss = divsum::gaussian_residue_sum(d, n, 0);
            sup = std::max(sup, std::abs(exact - gauss));
        }
        const double logn = std::log(static_cast<double>(n));
        const double env_sqrt = std::sqrt(logn) / static_cast<double>(n);
        const double env_32 = std::pow(logn, 2.5) / std::pow(static_cast<double>(n), 1.5);
        table.row({n, round_trip(sup), env_sqrt, env_32,
                   round_trip(sup / env_sqrt), round_trip(sup / env_32)});
    }
    return kExitOk;
}

// -------------------------------------------------------------- regimes ----

int run_regimes(long long n, double alpha, double alpha_prime, double rho, double eps,
                bool verify, const std::string& u_list, const CommonOptions& common) {
    const divsum::RegimeReport report =
        divsum::smallcase_regimes(n, alpha, alpha_prime, rho, eps);
    std::ostream* out = nullptr;
    auto file = open_output(common.out, out);
    *out << report.to_text();
    if (verify) {
        const auto u_set = parse_ll_list(u_list, "--u-set");
        long double sup_i = 0.0L, sup_ii = 0.0L;
        for (long long u : u_set) {
            for (long long d = 2; d < static_cast<long long>(report.d_limit_i); ++d)
                sup_i = std::max(sup_i,
                                 std::abs(divsum::bernoulli_closed_form({n, d, u}) -
                                          1.0L / static_cast<long double>(d)));
            for (long long d = 2; d < static_cast<long long>(report.d_limit_ii); ++d)
                sup_ii = std::max(sup_ii,
                                  std::abs(divsum::bernoulli_closed_form({n, d, u}) -
                                           1.0L / static_cast<long double>(d)));
        }
        out->precision(12);
        *out << "verified_sup_i " << static_cast<double>(sup_i) << "\n"
             << "verified_i_ok "
             << (report.regime_i_ok && sup_i <= report.bound_i ? "yes" : "no") << "\n"
             << "verified_sup_ii " << static_cast<double>(sup_ii) << "\n"
             << "verified_ii_ok "
             << (report.regime_ii_ok && sup_ii <= report.bound_ii ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------- remark52 ----

int run_remark52(const std::string& m_list, const std::string& phi_list,
                 const CommonOptions& common) {
    const auto m_set = parse_ll_list(m_list, "--m-set");
    const auto phi_set = parse_ll_list(phi_list, "--phi-set");
    std::ostream* out = nullptr;
    auto file = open_output(common.out, out);
    divsum::TableWriter table(*out, divsum::parse_table_format(common.format),
                              {"m", "phi", "value", "value_times_sqrt_m"});
    for (long long m : m_set)
        for (long long phi : phi_set) {
            const double v = divsum::remark52_sum(m, phi);
            table.row({m, phi, v, v * std::sqrt(static_cast<double>(m))});
        }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact divisibility probabilities of i.i.d. lattice sums and their theta approximants"};
    app.require_subcommand(1);

    // exact
    auto* exact = app.add_subcommand("exact", "exact P{d | S_n + u} by all three routes");
    std::string law_path, n_list, u_list = "0";
    long long d_max = 0;
    double tol = 1e-11;
    CommonOptions exact_common;
    exact->add_option("--law", law_path, "law file")->required();
    exact->add_option("--n-set", n_list, "comma-separated n values")->required();
    exact->add_option("--d-max", d_max, "largest modulus (range starts at 2)")->required();
    exact->add_option("--u-set", u_list, "comma-separated drifts");
    exact->add_option("--tol", tol, "charsum agreement tolerance");
    add_common(exact, exact_common);

    // theorem11
    auto* t11 = app.add_subcommand("theorem11",
                                   "decay of sup_d |P{d|B_n+u} - theta_u(d,n)/d| for Bernoulli sums");
    std::string t11_n = "64,128,256,512,1024,2048", t11_u = "0,1,7,1000000";
    long long t11_dmax = 0;
    CommonOptions t11_common;
    t11->add_option("--n-set", t11_n, "comma-separated n values");
    t11->add_option("--u-set", t11_u, "comma-separated drifts");
    t11->add_option("--d-max", t11_dmax, "cap the modulus range (default: d <= n)");
    add_common(t11, t11_common);

    // theorem21
    auto* t21 = app.add_subcommand("theorem21",
                                   "exact-vs-approximant discrepancies and the averaged series bound");
    std::string t21_law, t21_theta, t21_mu, t21_n, t21_u = "0", t21_phi;
    long long t21_dmax = 0;
    double t21_rho = 0.0;
    std::uint64_t t21_seed = 0;
    CommonOptions t21_common;
    t21->add_option("--law", t21_law, "law file")->required();
    t21->add_option("--theta", t21_theta, "coupling theta as a rational, e.g. 2/5");
    t21->add_option("--mu", t21_mu, "explicit mu entries '<k>=<p/q>,...'");
    t21->add_option("--n-set", t21_n, "comma-separated n values")->required();
    t21->add_option("--d-max", t21_dmax, "largest modulus")->required();
    t21->add_option("--u-set", t21_u, "comma-separated drifts");
    t21->add_option("--phi-set", t21_phi, "section heights for the averaged series")->required();
    t21->add_option("--rho", t21_rho, "Chernoff rho in (1 - vartheta, 1); default 1 - vartheta/2");
    auto* seed_opt = t21->add_option("--seed", t21_seed, "run a Monte Carlo spot check with this seed");
    add_common(t21, t21_common);

    // compare-llt
    auto* cllt = app.add_subcommand("compare-llt",
                                    "Bernoulli discrepancy against both error envelopes");
    std::string cllt_n = "64,128,256,512,1024";
    CommonOptions cllt_common;
    cllt->add_option("--n-set", cllt_n, "comma-separated n values");
    add_common(cllt, cllt_common);

    // regimes
    auto* reg = app.add_subcommand("regimes", "small-divisor regime report");
    long long reg_n = 10000;
    double reg_alpha = 2.0, reg_alpha_prime = 1.8, reg_rho = 0.5, reg_eps = 0.5;
    bool reg_verify = false;
    std::string reg_u = "0,5";
    CommonOptions reg_common;
    reg->add_option("--n", reg_n, "number of summands");
    reg->add_option("--alpha", reg_alpha, "alpha > alpha'");
    reg->add_option("--alpha-prime", reg_alpha_prime, "claimed polynomial rate");
    reg->add_option("--rho", reg_rho, "stretched-exponential exponent");
    reg->add_option("--eps", reg_eps, "slack in (0, 1)");
    reg->add_flag("--verify", reg_verify, "verify the claimed bounds against exact probabilities");
    reg->add_option("--u-set", reg_u, "drifts for --verify");
    add_common(reg, reg_common);

    // remark52
    auto* r52 = app.add_subcommand("remark52", "double-sum decay table");
    std::string r52_m = "4,16,64,256,1024", r52_phi = "10,50,200";
    CommonOptions r52_common;
    r52->add_option("--m-set", r52_m, "comma-separated m values");
    r52->add_option("--phi-set", r52_phi, "comma-separated heights");
    add_common(r52, r52_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*exact) return run_exact(law_path, n_list, d_max, u_list, tol, exact_common);
        if (*t11) return run_theorem11(t11_n, t11_u, t11_dmax, t11_common);
        if (*t21) {
            double rho = t21_rho;
            if (rho == 0.0) {
                const divsum::LawFileContent content = divsum::load_law_file(t21_law);
                const divsum::CouplingSpec spec =
                    coupling_from_options(content, t21_theta, t21_mu);
                rho = 1.0 - divsum::to_d(spec.vartheta()) / 2.0;
            }
            return run_theorem21(t21_law, t21_theta, t21_mu, t21_n, t21_dmax, t21_u, t21_phi,
                                 rho, t21_seed, seed_opt->count() > 0, t21_common);
        }
        if (*cllt) return run_compare_llt(cllt_n, cllt_common);
        if (*reg)
            return run_regimes(reg_n, reg_alpha, reg_alpha_prime, reg_rho, reg_eps, reg_verify,
                               reg_u, reg_common);
        if (*r52) return run_remark52(r52_m, r52_phi, r52_common);
    } catch (const oracle_mismatch& e) {
        std::cerr << "oracle mismatch: " << e.what() << "\n";
        return kExitOracleMismatch;
    } catch (const divsum::numeric_error& e) {
        std::cerr << "numeric-integrity error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const divsum::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
