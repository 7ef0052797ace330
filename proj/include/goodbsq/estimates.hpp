// estimates.hpp -- brute-force verification of the multiplier suprema on
// finite frequency lattices, the sharpness constant with its exponent fit,
// and randomized/adversarial boundedness trials for the bilinear operator.
//
// Every scan substitutes the worst admissible modulation
// L_max = max(1, |resonance|) allowed by the integer resonance identity of
// the sign pattern, so the reported supremum dominates the true one.
// Growth exponents are fitted on dyadic-shell suprema (largest frequency in
// (cutoff/2, cutoff]) -- the cumulative supremum is reported alongside but
// saturates on O(1) low-frequency tuples long before desk-scale cutoffs can
// resolve a small exponent.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goodbsq/fitting.hpp"
#include "goodbsq/normal_form.hpp"
#include "goodbsq/parallel.hpp"
#include "goodbsq/random_field.hpp"

namespace goodbsq {

// Shell slope above which a scan is declared growing.  Margin-0.05 grid
// points sit at measured slopes <= -0.01 (bounded side) and >= +0.06
// (growing side) for delta = 0.01.
inline constexpr double kVerdictSlopeThreshold = 0.025;

// (x1+x2)^2 - e1 x1^2 - e2 x2^2, exactly.
inline long long bilinear_resonance(long long x1, long long x2, int e1, int e2) {
    const long long s = x1 + x2;
    return s * s - e1 * x1 * x1 - e2 * x2 * x2;
}

enum class ResonanceCase { pm, pp }; // sign pair (e1,e2) = (+,-) resp. (+,+)

// Factored resonance value of a frequency quadruple on the hyperplane
// sum xi = 0, for the four (case, eps3) sign patterns; cross-checked against
// the quadratic-form expansion with eps4 = -1.
inline long long quadruple_resonance(const std::array<long long, 4>& xi, int eps3,
                                     ResonanceCase rc) {
    if (xi[0] + xi[1] + xi[2] + xi[3] != 0)
        throw std::domain_error("quadruple_resonance: frequencies must sum to zero");
    if (eps3 != +1 && eps3 != -1)
        throw std::invalid_argument("quadruple_resonance: eps3 must be +-1");
    long long factored = 0, expanded = 0;
    const long long a = xi[0], b = xi[1], c = xi[2], d = xi[3];
    if (rc == ResonanceCase::pm) {
        // epsilon pattern (+, -, eps3, -)
        expanded = -a * a + b * b - eps3 * c * c + d * d;
        factored = eps3 == +1 ? 2 * (a + b) * (b + c) : -2 * (b * c + c * d + d * b);
    } else {
        // epsilon pattern (+, +, eps3, -)
        expanded = -a * a - b * b - eps3 * c * c + d * d;
        factored = eps3 == +1 ? 2 * (a * b + c * (a + b)) : 2 * (a + c) * (b + c);
    }
    if (factored != expanded)
        throw std::logic_error("quadruple_resonance: identity cross-check failed");
    return factored;
}

enum class ScanKind { M1, M2, M3, M4 };

inline const char* to_string(ScanKind k) {
    switch (k) {
        case ScanKind::M1: return "M1";
        case ScanKind::M2: return "M2";
        case ScanKind::M3: return "M3";
        case ScanKind::M4: return "M4";
    }
    return "?";
}

struct LatticeScanConfig {
    ScanKind kind = ScanKind::M1;
    double alpha = 0.3;
    double gamma = 0.0;
    double delta = 0.01;
    std::vector<int> cutoffs{64, 128, 256, 512};
    // Unset signs mean: maximize over the sign assignments relevant to the
    // kind (M1: the four (e1,e2) pairs; M3/M4: eps3 = +-1; M2: none).
    std::optional<int> eps1, eps2, eps3;

    void validate() const {
        if (!(delta > 0.0 && delta <= 0.1))
            throw std::invalid_argument("LatticeScanConfig: delta must lie in (0, 0.1]");
        if (cutoffs.size() < 3)
            throw std::invalid_argument(
                "LatticeScanConfig: need at least 3 cutoffs to fit an exponent");
        for (std::size_t i = 0; i + 1 < cutoffs.size(); ++i)
            if (cutoffs[i] >= cutoffs[i + 1])
                throw std::invalid_argument("LatticeScanConfig: cutoffs must increase");
        if (cutoffs.front() < 4)
            throw std::invalid_argument("LatticeScanConfig: cutoffs must be >= 4");
    }
};

enum class Verdict { bounded, growing };

struct ScanRow {
    int cutoff = 0;
    double shell_sup = 0.0;
    double cumulative_sup = 0.0;
    std::array<long long, 4> argmax{0, 0, 0, 0}; // xi3=xi4=0 for bilinear kinds
    std::array<int, 3> argmax_signs{0, 0, 0};    // (e1,e2,e3); zeros where unused
};

struct SymbolScanReport {
    LatticeScanConfig config;
    std::vector<ScanRow> rows;
    SlopeFit shell_slope;
    Verdict verdict = Verdict::bounded;
};

namespace detail_scan {

struct Best {
    double value = 0.0;
    std::array<long long, 4> tuple{0, 0, 0, 0};
    std::array<int, 3> signs{0, 0, 0};

    void consider(double v, const std::array<long long, 4>& t, const std::array<int, 3>& s) {
        if (v > value || (v == value && value > 0.0 && t < tuple)) {
            value = v;
            tuple = t;
            signs = s;
        }
    }

    void merge(const Best& o) {
        if (o.value > value || (o.value == value && o.value > 0.0 && o.tuple < tuple)) *this = o;
    }
};

// <n>^e lookup over 0..nmax
inline std::vector<double> bracket_pow_table(int nmax, double e) {
    std::vector<double> t(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) t[static_cast<std::size_t>(n)] = std::pow(bracket(n), e);
    return t;
}

// max(1,L)^{-(1/2-delta)} lookup over 0..lmax
inline std::vector<double> lmax_table(long long lmax, double delta) {
    std::vector<double> t(static_cast<std::size_t>(lmax) + 1);
    t[0] = 1.0;
    for (long long l = 1; l <= lmax; ++l)
        t[static_cast<std::size_t>(l)] = std::pow(static_cast<double>(l), delta - 0.5);
    return t;
}

} // namespace detail_scan

// Enumerates the admissible lattice, substitutes the saturated modulation,
// and reports shell/cumulative suprema with argmax per cutoff plus the
// shell-growth exponent.
inline SymbolScanReport scan_M(const LatticeScanConfig& config) {
    config.validate();
    using detail_scan::Best;
    SymbolScanReport rep;
    rep.config = config;
    const int kmax = config.cutoffs.back();
    const int ncut = static_cast<int>(config.cutoffs.size());
    const double a = config.alpha, g = config.gamma, d = config.delta;

    const bool bilinear = config.kind == ScanKind::M1 || config.kind == ScanKind::M2;

    std::vector<Best> shell(ncut), cum(ncut);

    // Per-frequency shell memberships (shells overlap for non-dyadic
    // cutoff lists) and the first cutoff >= m for the cumulative row.
    std::vector<std::vector<int>> shells_of(static_cast<std::size_t>(kmax) + 1);
    std::vector<int> bucket_of(static_cast<std::size_t>(kmax) + 1, -1);
    for (long long m = 1; m <= kmax; ++m) {
        for (int i = 0; i < ncut; ++i)
            if (m > config.cutoffs[i] / 2 && m <= config.cutoffs[i])
                shells_of[static_cast<std::size_t>(m)].push_back(i);
        for (int i = 0; i < ncut; ++i)
            if (m <= config.cutoffs[i]) {
                bucket_of[static_cast<std::size_t>(m)] = i;
                break;
            }
    }

    if (bilinear) {
        const auto t_a_g = detail_scan::bracket_pow_table(2 * kmax, a - g);   // <x1>^{a-g}
        const auto t_a = detail_scan::bracket_pow_table(2 * kmax, a);         // <x2>^a
        const auto t_out = detail_scan::bracket_pow_table(2 * kmax, g - a);   // <x>^{g-a}
        const auto t_am1 = detail_scan::bracket_pow_table(2 * kmax, a - 1.0); // <x1>^{a-1}
        const auto t_ah = detail_scan::bracket_pow_table(2 * kmax, a - 0.5 + d);
        const long long lcap = 8LL * kmax * kmax + 4;
        const auto t_l = detail_scan::lmax_table(lcap, d);

        std::array<std::array<int, 2>, 4> sign_pairs{{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};
        int pair_lo = 0, pair_hi = 4;
        if (config.eps1 && config.eps2) {
            for (int i = 0; i < 4; ++i)
                if (sign_pairs[i][0] == *config.eps1 && sign_pairs[i][1] == *config.eps2)
                    pair_lo = i, pair_hi = i + 1;
        }

        const long span = 2L * kmax + 1;
        std::vector<std::vector<Best>> lshell(worker_count() + 1), lcum(worker_count() + 1);
        parallel_chunks(span, [&](long lo, long hi, int chunk) {
            auto& sh = lshell[chunk];
            auto& cu = lcum[chunk];
            sh.assign(ncut, Best{});
            cu.assign(ncut, Best{});
            for (long i = lo; i < hi; ++i) {
                const long long x1 = i - kmax;
                if (x1 == 0) continue;
                for (long long x2 = -kmax; x2 <= kmax; ++x2) {
                    const long long x = x1 + x2;
                    if (x2 == 0 || x == 0) continue;
                    const long long m = std::max(std::llabs(x1), std::llabs(x2));
                    double v = 0.0;
                    std::array<int, 3> vsigns{0, 0, 0};
                    if (config.kind == ScanKind::M2) {
                        v = t_am1[std::llabs(x1)] * t_ah[std::llabs(x2)] * t_out[std::llabs(x)];
                    } else {
                        for (int pi = pair_lo; pi < pair_hi; ++pi) {
                            const int e1 = sign_pairs[pi][0], e2 = sign_pairs[pi][1];
                            const long long res = std::llabs(bilinear_resonance(x1, x2, e1, e2));
                            const double val = t_a_g[std::llabs(x1)] * t_a[std::llabs(x2)] *
                                               t_out[std::llabs(x)] *
                                               t_l[std::min(res, lcap)];
                            if (val > v) {
                                v = val;
                                vsigns = {e1, e2, 0};
                            }
                        }
                    }
                    const std::array<long long, 4> tup{x1, x2, 0, 0};
                    for (int si : shells_of[static_cast<std::size_t>(m)])
                        sh[si].consider(v, tup, vsigns);
                    const int bi = bucket_of[static_cast<std::size_t>(m)];
                    if (bi >= 0) cu[bi].consider(v, tup, vsigns);
                }
            }
        });
        for (auto& v : lshell)
            for (int i = 0; i < static_cast<int>(v.size()); ++i) shell[i].merge(v[i]);
        for (auto& v : lcum)
            for (int i = 0; i < static_cast<int>(v.size()); ++i) cum[i].merge(v[i]);
    } else {
        // trilinear: xi4 = -(x1+x2+x3), all |xi| <= cutoff, x1 x2 x4 (x1+x2) != 0
        const auto t_x1 = detail_scan::bracket_pow_table(
            kmax, config.kind == ScanKind::M3 ? a : -(1.0 - a)); // M3: <x1>^a, M4: <x1>^{a-1}
        const auto t_x2 = detail_scan::bracket_pow_table(kmax, -(1.0 - a));
        const auto t_x3 = detail_scan::bracket_pow_table(kmax, a);
        const auto t_x4 = detail_scan::bracket_pow_table(kmax, g - a);
        const auto t_pair = detail_scan::bracket_pow_table(
            2 * kmax, config.kind == ScanKind::M3 ? -1.0 : 0.0); // <x1+x2>^{-1} for M3
        std::vector<double> t_n3d(static_cast<std::size_t>(kmax) + 1, 0.0);
        for (int n = 1; n <= kmax; ++n)
            t_n3d[static_cast<std::size_t>(n)] = std::pow(static_cast<double>(n), 3.0 * d);
        const long long lcap = 16LL * kmax * kmax + 4;
        const auto t_l = detail_scan::lmax_table(lcap, d);
        const ResonanceCase rc =
            config.kind == ScanKind::M3 ? ResonanceCase::pm : ResonanceCase::pp;

        int e3_lo = -1, e3_hi = +1;
        if (config.eps3) e3_lo = e3_hi = *config.eps3;

        const long span = 2L * kmax + 1;
        std::vector<std::vector<Best>> lshell(worker_count() + 1), lcum(worker_count() + 1);
        parallel_chunks(span, [&](long lo, long hi, int chunk) {
            auto& sh = lshell[chunk];
            auto& cu = lcum[chunk];
            sh.assign(ncut, Best{});
            cu.assign(ncut, Best{});
            for (long i = lo; i < hi; ++i) {
                const long long x1 = i - kmax;
                if (x1 == 0) continue;
                for (long long x2 = -kmax; x2 <= kmax; ++x2) {
                    if (x2 == 0 || x1 + x2 == 0) continue;
                    const double base12 = t_x1[std::llabs(x1)] * t_x2[std::llabs(x2)] *
                                          t_pair[std::llabs(x1 + x2)];
                    const int e2_kind = rc == ResonanceCase::pm ? -1 : +1;
                    for (long long x3 = -kmax; x3 <= kmax; ++x3) {
                        const long long x4 = -(x1 + x2 + x3);
                        if (x4 == 0 || std::llabs(x4) > kmax) continue;
                        const long long m = std::max(std::max(std::llabs(x1), std::llabs(x2)),
                                                     std::max(std::llabs(x3), std::llabs(x4)));
                        const double base = base12 * t_x3[std::llabs(x3)] *
                                            t_x4[std::llabs(x4)] * t_n3d[m];
                        double v = 0.0;
                        std::array<int, 3> vsigns{0, 0, 0};
                        for (int e3 = e3_lo; e3 <= e3_hi; e3 += 2) {
                            long long res = 0;
                            if (rc == ResonanceCase::pm)
                                res = e3 == +1 ? 2 * (x1 + x2) * (x2 + x3)
                                               : -2 * (x2 * x3 + x3 * x4 + x4 * x2);
                            else
                                res = e3 == +1 ? 2 * (x1 * x2 + x3 * (x1 + x2))
                                               : 2 * (x1 + x3) * (x2 + x3);
                            const double val = base * t_l[std::min(std::llabs(res), lcap)];
                            if (val > v) {
                                v = val;
                                vsigns = {+1, e2_kind, e3};
                            }
                        }
                        const std::array<long long, 4> tup{x1, x2, x3, x4};
                        for (int si : shells_of[static_cast<std::size_t>(m)])
                            sh[si].consider(v, tup, vsigns);
                        const int bi = bucket_of[static_cast<std::size_t>(m)];
                        if (bi >= 0) cu[bi].consider(v, tup, vsigns);
                    }
                }
            }
        });
        for (auto& v : lshell)
            for (int i = 0; i < static_cast<int>(v.size()); ++i) shell[i].merge(v[i]);
        for (auto& v : lcum)
            for (int i = 0; i < static_cast<int>(v.size()); ++i) cum[i].merge(v[i]);
    }

    double running = 0.0;
    std::vector<double> xs, ys;
    for (int i = 0; i < ncut; ++i) {
        running = std::max(running, cum[i].value);
        ScanRow row;
        row.cutoff = config.cutoffs[i];
        row.shell_sup = shell[i].value;
        row.cumulative_sup = running;
        row.argmax = shell[i].tuple;
        row.argmax_signs = shell[i].signs;
        rep.rows.push_back(row);
        xs.push_back(static_cast<double>(config.cutoffs[i]));
        ys.push_back(shell[i].value);
    }
    rep.shell_slope = fit_loglog(xs, ys);
    rep.verdict = rep.shell_slope.slope > kVerdictSlopeThreshold ? Verdict::growing
                                                                 : Verdict::bounded;
    return rep;
}

// Verdict map over an (alpha, gamma) grid for one scan kind.
struct RegionCell {
    double alpha = 0.0, gamma = 0.0;
    double slope = 0.0;
    Verdict verdict = Verdict::bounded;
};

inline std::vector<RegionCell> region_map(ScanKind kind, const std::vector<double>& alphas,
                                          const std::vector<double>& gammas,
                                          const std::vector<int>& cutoffs, double delta) {
    std::vector<RegionCell> cells;
    for (double a : alphas)
        for (double g : gammas) {
            LatticeScanConfig cfg;
            cfg.kind = kind;
            cfg.alpha = a;
            cfg.gamma = g;
            cfg.delta = delta;
            cfg.cutoffs = cutoffs;
            const SymbolScanReport rep = scan_M(cfg);
            cells.push_back({a, g, rep.shell_slope.slope, rep.verdict});
        }
    return cells;
}

// Sharpness constant of the high-low interaction family (normalization 1):
//   C(N) = (N+1) <N>^{2a} / ( <N+1>^{1-g} (N[<N+1>-<N>] + <N> - sqrt2) ).
// The bracket difference is evaluated in the cancellation-free form
// (2N+1)/(<N+1>+<N>).  counterexample_constant_alt replaces the lone <N>
// with <N+1>, which is what the operator symbol itself produces at
// (N+1, -N); the two agree to O(1/N).
inline double counterexample_constant(long long N, double alpha, double gamma) {
    if (N < 1) throw std::invalid_argument("counterexample_constant: N must be >= 1");
    const double n = static_cast<double>(N);
    const double brN = bracket(n), brN1 = bracket(n + 1.0);
    const double diff = (2.0 * n + 1.0) / (brN1 + brN);
    const double denom = n * diff + brN - std::sqrt(2.0);
    return (n + 1.0) * std::pow(brN, 2.0 * alpha) /
           (std::pow(brN1, 1.0 - gamma) * denom);
}

inline double counterexample_constant_alt(long long N, double alpha, double gamma) {
    if (N < 1) throw std::invalid_argument("counterexample_constant_alt: N must be >= 1");
    const double n = static_cast<double>(N);
    const double brN = bracket(n), brN1 = bracket(n + 1.0);
    const double diff = (2.0 * n + 1.0) / (brN1 + brN);
    const double denom = n * diff + brN1 - std::sqrt(2.0);
    return (n + 1.0) * std::pow(brN, 2.0 * alpha) /
           (std::pow(brN1, 1.0 - gamma) * denom);
}

struct CounterexampleReport {
    double alpha = 0.0, gamma = 0.0;
    std::vector<long long> n_values;
    std::vector<double> values;     // C(N)
    std::vector<double> values_alt; // variant denominator
    SlopeFit fit;
    double theory_exponent = 0.0; // 2*alpha + gamma - 1
};

inline CounterexampleReport counterexample_report(double alpha, double gamma,
                                                  const std::vector<long long>& n_values) {
    if (n_values.size() < 3)
        throw std::invalid_argument("counterexample_report: need at least 3 N values");
    CounterexampleReport rep;
    rep.alpha = alpha;
    rep.gamma = gamma;
    rep.n_values = n_values;
    std::vector<double> xs, ys;
    for (long long N : n_values) {
        rep.values.push_back(counterexample_constant(N, alpha, gamma));
        rep.values_alt.push_back(counterexample_constant_alt(N, alpha, gamma));
        xs.push_back(static_cast<double>(N));
        ys.push_back(rep.values.back());
    }
    rep.fit = fit_loglog(xs, ys);
    rep.theory_exponent = 2.0 * alpha + gamma - 1.0;
    return rep;
}

inline std::vector<long long> default_counterexample_n() {
    std::vector<long long> out;
    for (int p = 6; p <= 20; ++p) out.push_back(1LL << p);
    return out;
}

// Randomized and adversarial L^2 x L^2 -> H^1 boundedness trials.
struct TBoundRow {
    int trunc = 0;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    double adversarial_max = 0.0;
    double closed_form_highlow = 0.0; // single-pair (N+1, -N) probe, signs (+,-)
};

struct TBoundReport {
    double alpha = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<TBoundRow> rows;
    SlopeFit slope; // of max_ratio against N
};

namespace detail_tbound {

inline double h1_ratio(const BilinearNormalForm& op, const SpectralField& u,
                       const SpectralField& v) {
    const double nu = u.l2_norm(), nv = v.l2_norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return sobolev_norm(op.apply(u, v), 1.0) / (nu * nv);
}

// Band-limited unit field with flat magnitudes and deterministic phases.
inline SpectralField band_field(int trunc, int lo, int hi, std::uint64_t seed) {
    SpectralField out(trunc, false);
    std::mt19937_64 rng(seed);
    int count = 0;
    for (int n = lo; n <= hi && n <= trunc; ++n)
        if (n != 0) ++count;
    if (count == 0) return out;
    const double mag = 1.0 / std::sqrt(static_cast<double>(count));
    for (int n = lo; n <= hi && n <= trunc; ++n) {
        if (n == 0) continue;
        const double th = 2.0 * 3.14159265358979323846 * uniform01(rng);
        out.c(n) = mag * cdouble(std::cos(th), std::sin(th));
    }
    return out;
}

} // namespace detail_tbound

inline TBoundReport test_T_boundedness(double alpha, int trials, const std::vector<int>& n_list,
                                       std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("test_T_boundedness: alpha must lie in (0, 1/2)");
    TBoundReport rep;
    rep.alpha = alpha;
    rep.trials = trials;
    rep.seed = seed;
    const std::array<std::array<int, 2>, 4> pairs{{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};

    for (int N : n_list) {
        TBoundRow row;
        row.trunc = N;
        std::vector<double> ratios;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const BilinearNormalForm op(N, alpha,
                                        SignTriple(+1, pairs[pi][0], pairs[pi][1]));
            std::vector<double> local(static_cast<std::size_t>(trials), 0.0);
            parallel_chunks(trials, [&](long lo, long hi, int) {
                for (long tr = lo; tr < hi; ++tr) {
                    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (tr + 1)) ^
                                        (static_cast<std::uint64_t>(N) << 32) ^ pi);
                    const SpectralField u = random_unit_field(N, rng);
                    const SpectralField v = random_unit_field(N, rng);
                    local[static_cast<std::size_t>(tr)] = detail_tbound::h1_ratio(op, u, v);
                }
            });
            for (double r : local) ratios.push_back(r);

            // adversarial probes: concentrated bands per symbol regime
            const int root = std::max(1, static_cast<int>(std::lround(std::sqrt(N))));
            std::vector<std::pair<SpectralField, SpectralField>> probes;
            probes.emplace_back(detail_tbound::band_field(N, N / 2, N, seed + 11),
                                detail_tbound::band_field(N, 1, root, seed + 13));
            probes.emplace_back(detail_tbound::band_field(N, 1, root, seed + 17),
                                detail_tbound::band_field(N, N / 2, N, seed + 19));
            probes.emplace_back(detail_tbound::band_field(N, N / 2, N, seed + 23),
                                detail_tbound::band_field(N, -N, -N / 2, seed + 29));
            probes.emplace_back(detail_tbound::band_field(N, 1, 4, seed + 31),
                                detail_tbound::band_field(N, -4, -1, seed + 37));
            {
                SpectralField e1(N, false), e1b(N, false);
                e1.c(1) = 1.0;
                e1b.c(1) = 1.0;
                probes.emplace_back(std::move(e1), std::move(e1b));
            }
            for (const auto& pr : probes)
                row.adversarial_max =
                    std::max(row.adversarial_max, detail_tbound::h1_ratio(op, pr.first, pr.second));
        }

        // closed-form high-low pair at (N+1, -N), signs (+,-): single output
        // mode 1, so the ratio is <1> |sigma(N+1, -N)|.
        {
            const SignTriple s(+1, +1, -1);
            row.closed_form_highlow =
                bracket(1.0) * std::abs(normal_form_symbol(N + 1, -N, s, alpha));
            const BilinearNormalForm op(N + 1, alpha, s);
            SpectralField u(N + 1, false), v(N + 1, false);
            u.c(N + 1) = 1.0;
            v.c(-N) = 1.0;
            row.adversarial_max =
                std::max(row.adversarial_max, detail_tbound::h1_ratio(op, u, v));
        }

        std::sort(ratios.begin(), ratios.end());
        row.median_ratio = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
        row.max_ratio = ratios.empty() ? 0.0 : ratios.back();
        row.max_ratio = std::max(row.max_ratio, row.adversarial_max);
        rep.rows.push_back(row);
    }

    std::vector<double> xs, ys;
    for (const auto& r : rep.rows) {
        xs.push_back(static_cast<double>(r.trunc));
        ys.push_back(r.max_ratio);
    }
    rep.slope = fit_loglog(xs, ys);
    return rep;
}

} // namespace goodbsq
