// Acceptance suite: one numbered end-to-end check per release criterion,
// each printing a single pass/FAIL line with the measured quantities and
// the pinned tolerance.  Run with no arguments for the whole suite or
// with a list of criterion numbers to run a subset.  Exit code 0 iff
// every criterion that ran passed.

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specop/operators.hpp"

using namespace specop;
using std::numbers::pi;

namespace {

std::string strf(const char* fmt, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

double sup_abs(const std::vector<cplx>& a) {
    double m = 0.0;
    for (const cplx& z : a) m = std::max(m, std::abs(z));
    return m;
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

SampledField random_field(const Grid& g, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    SampledField f{g, Side::space, std::vector<cplx>(g.size())};
    for (cplx& z : f.values) z = cplx(U(rng), U(rng));
    return f;
}

SampledField gaussian_field(const Grid& g) {
    return sample(g, Side::space, [](double x) {
        return cplx(std::exp(-x * x / 2.0), 0.3 * std::sin(x) * std::exp(-x * x / 8.0));
    });
}

SampledField retag_space(const SampledField& f) {
    SampledField g = f;
    g.side = Side::space;
    return g;
}

std::vector<double> moduli(const std::vector<cplx>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
    return out;
}

// ----------------------------------------------------------------- criterion 1

// The dyadic frequency bumps telescope: once the top block covers a
// point the partial sum saturates at one.  Checked at every frequency
// node of an N = 256 line grid.
Outcome c01_partition() {
    Grid g = make_grid(1, 256, 8.0);
    int jtop = 1;
    while (std::ldexp(1.0, jtop) < g.xi_max()) ++jtop;
    double worst = 0.0;
    for (int i = 0; i < g.N; ++i) {
        const double axi = std::abs(g.xi(i));
        double s = 0.0;
        for (int j = 0; j <= jtop; ++j) s += lp_phi(j, axi);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return {worst < 1e-12,
            strf("max |sum phi_j - 1| = %.3e over %d nodes, blocks 0..%d (tol 1e-12)",
                 worst, g.N, jtop)};
}

// ----------------------------------------------------------------- criterion 2

Outcome c02_roundtrip_parseval() {
    double worst_rt = 0.0, worst_par = 0.0;
    int fields = 0;
    auto drive = [&](const SampledField& f) {
        SampledField fh = transform(f, Direction::forward);
        SampledField back = transform(fh, Direction::inverse);
        worst_rt = std::max(worst_rt, sup_diff(back.values, f.values) / sup_abs(f.values));
        const double n2 = lebesgue_norm(f, 2.0);
        worst_par = std::max(worst_par, std::abs(lebesgue_norm(fh, 2.0) - n2) / n2);
        ++fields;
    };
    Grid g1 = make_grid(1, 256, 8.0);
    for (unsigned s = 0; s < 35; ++s) drive(random_field(g1, 100 + s));
    Grid g2 = make_grid(2, 32, 6.0);
    for (unsigned s = 0; s < 15; ++s) drive(random_field(g2, 200 + s));
    return {worst_rt < 1e-10 && worst_par < 1e-10,
            strf("%d fields: round trip rel %.3e, Parseval rel %.3e (tol 1e-10)",
                 fields, worst_rt, worst_par)};
}

// ----------------------------------------------------------------- criterion 3

// Orthonormality by scalar quadrature on the dyadic sample lattice: with
// an x step of 2^-13 and cascade depth 13 every evaluation 2^j x - m for
// j <= 4 lands exactly on a sample, so the only error is the Riemann rule.
Outcome c03_orthonormality_moments() {
    WaveletSystem sys = daubechies_system(4, 13);
    struct Key {
        int j;
        Gender g;
        int m;
    };
    std::vector<Key> fam;
    for (int j = 0; j <= 4; ++j)
        for (int m = -3; m <= 3; ++m) {
            if (j == 0) fam.push_back({0, Gender::F, m});
            fam.push_back({j, Gender::M, m});
        }
    const double step = std::ldexp(1.0, -13);
    const double w = sys.support_len();
    double worst_gram = 0.0;
    for (std::size_t a = 0; a < fam.size(); ++a)
        for (std::size_t b = a; b < fam.size(); ++b) {
            const double lo = std::max(std::ldexp(double(fam[a].m), -fam[a].j),
                                       std::ldexp(double(fam[b].m), -fam[b].j));
            const double hi = std::min(std::ldexp(fam[a].m + w, -fam[a].j),
                                       std::ldexp(fam[b].m + w, -fam[b].j));
            if (hi <= lo) continue;
            double acc = 0.0;
            for (double x = lo; x < hi - 1e-15; x += step)
                acc += wavelet_value(sys, fam[a].g, std::ldexp(x, fam[a].j) - fam[a].m) *
                       wavelet_value(sys, fam[b].g, std::ldexp(x, fam[b].j) - fam[b].m);
            const double ip =
                std::exp2(0.5 * (fam[a].j + fam[b].j)) * acc * step;
            const bool same = fam[a].j == fam[b].j && fam[a].g == fam[b].g &&
                              fam[a].m == fam[b].m;
            worst_gram = std::max(worst_gram, std::abs(ip - (same ? 1.0 : 0.0)));
        }

    double worst_mom = 0.0;
    for (int u = 1; u <= 6; ++u) {
        WaveletSystem ms = daubechies_system(u, 12);
        const double sp = ms.spacing();
        for (int v = 0; v < u; ++v) {
            double quad = 0.0;
            for (std::size_t i = 0; i < ms.samples_M.size(); ++i)
                quad += ms.samples_M[i] * std::pow(i * sp, v) * sp;
            worst_mom = std::max(worst_mom, std::abs(quad));
        }
    }
    return {worst_gram < 1e-5 && worst_mom < 1e-8,
            strf("gram deviation %.3e over %zu functions, levels 0..4 (tol 1e-5); "
                 "moment residual %.3e for v < u <= 6 (tol 1e-8)",
                 worst_gram, fam.size(), worst_mom)};
}

// ----------------------------------------------------------------- criterion 4

std::vector<SampledField> equivalence_suite(const Grid& g, unsigned long long seed) {
    std::vector<SampledField> suite;
    for (double w : {0.4, 0.7, 1.0, 1.5})
        for (double c : {0.0, 1.3})
            suite.push_back(sample(g, Side::space, [w, c](double x) {
                return cplx(std::exp(-(x - c) * (x - c) / (w * w)));
            }));
    for (double k : {2.0, 5.0, 9.0})
        for (double w : {0.8, 1.6})
            suite.push_back(sample(g, Side::space, [k, w](double x) {
                return std::polar(std::exp(-x * x / (w * w)), k * x);
            }));
    for (double b : {0.5, 1.0, 2.0})
        suite.push_back(sample(g, Side::space, [b](double x) {
            return cplx(std::exp(-x * x / 4.0) * std::cos(b * x * x));
        }));
    suite.push_back(sample(g, Side::space, [](double x) {
        const double u = x / 3.0;
        return cplx(std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0);
    }));
    suite.push_back(sample(g, Side::space, [](double x) {
        return cplx(std::exp(-x * x) + 0.5 * std::exp(-9.0 * (x - 1.0) * (x - 1.0)));
    }));
    suite.push_back(apply_lift(random_field(g, seed), 3.0));
    return suite;
}

Outcome c04_norm_equivalence() {
    Grid g = make_grid(1, 512, 8.0);
    WaveletSystem sys = daubechies_system(3, 10);
    LPPartition part = lp_partition(g);
    std::vector<SampledField> suite = equivalence_suite(g, 1);
    std::vector<CoeffSet> coeffs;
    for (const SampledField& f : suite) coeffs.push_back(analyze(f, sys, 3));

    const double combos[3][2] = {{1.0, 2.0}, {1.5, 1.5}, {0.5, 3.0}};
    bool pass = true;
    std::string detail;
    for (const auto& c : combos) {
        const SpaceParams sp{Family::B, c[0], c[1], c[1]};
        double rmin = 1e300, rmax = 0.0;
        for (std::size_t i = 0; i < suite.size(); ++i) {
            const double ratio =
                seq_norm(coeffs[i], sp, SeqKind::b, g) / besov_norm(suite[i], sp, part);
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
        const bool ok = rmin >= 1.0 / 16.0 && rmax <= 16.0 && rmax / rmin < 8.0;
        pass = pass && ok;
        detail += strf("%s(s=%g,p=%g) ratios [%.3f, %.3f] spread %.3f",
                       detail.empty() ? "" : "; ", c[0], c[1], rmin, rmax, rmax / rmin);
    }
    return {pass, detail + " (band [1/16, 16], spread < 8, 20 functions)"};
}

// ----------------------------------------------------------------- criterion 5

Outcome c05_constant_symbol() {
    Grid g = make_grid(1, 256, 8.0);
    Symbol one = builtin_symbol(SymbolKind::one);
    double worst_u = 0.0, worst_l = 0.0;
    for (unsigned s = 0; s < 5; ++s) {
        SampledField f = s == 0 ? gaussian_field(g) : random_field(g, 300 + s);
        const double scale = sup_abs(f.values);
        SampledField u = apply_pseudo(one, f);
        worst_u = std::max(worst_u, sup_diff(u.values, f.values) / scale);
        SampledField l = apply_pseudo(one, f, Normalization::literal);
        SampledField want = f;
        for (cplx& z : want.values) z *= std::sqrt(2.0 * pi);
        worst_l = std::max(worst_l, sup_diff(l.values, want.values) /
                                        (std::sqrt(2.0 * pi) * scale));
    }
    return {worst_u < 1e-10 && worst_l < 1e-10,
            strf("identity rel %.3e; sqrt(2 pi) scaling rel %.3e (tol 1e-10)",
                 worst_u, worst_l)};
}

// ----------------------------------------------------------------- criterion 6

Outcome c06_composition() {
    Grid g = make_self_dual_grid(1, 64);
    SymbolParams lp;
    lp.rho = 1.0;
    SymbolParams hp;
    hp.t = 0.1;
    hp.order = -1.0;
    const Symbol syms[] = {builtin_symbol(SymbolKind::one),
                           builtin_symbol(SymbolKind::lift, lp),
                           builtin_symbol(SymbolKind::heat, hp)};
    double worst = 0.0;
    for (const Symbol& sym : syms)
        for (unsigned s = 0; s < 10; ++s) {
            SampledField f = s == 0 ? gaussian_field(g) : random_field(g, 400 + s);
            SampledField direct = apply_fourier_op(sym, f);
            SampledField composed = apply_pseudo(
                reflect_frequency(sym), retag_space(transform(f, Direction::forward)));
            worst = std::max(worst, sup_diff(direct.values, composed.values) /
                                        sup_abs(direct.values));
        }
    return {worst < 1e-9,
            strf("worst relative gap %.3e over 3 symbols x 10 fields (tol 1e-9)", worst)};
}

// ----------------------------------------------------------------- criterion 7

Outcome c07_dual_transpose() {
    Grid g = make_self_dual_grid(1, 32);
    SymbolParams lp;
    lp.rho = 1.0;
    SymbolParams hp;
    hp.t = 0.1;
    SymbolParams fp;
    fp.t = 0.2;
    fp.alpha = 0.7;
    const Symbol syms[] = {builtin_symbol(SymbolKind::one),
                           builtin_symbol(SymbolKind::lift, lp),
                           builtin_symbol(SymbolKind::heat, hp),
                           builtin_symbol(SymbolKind::frac_heat, fp)};
    double worst = 0.0;
    for (const Symbol& sym : syms) {
        OperatorMatrix M = assemble_fourier_matrix(sym, g);
        double gap2 = 0.0, ref2 = 0.0;
        for (int j = 0; j < g.N; ++j) {
            SampledField e{g, Side::space, std::vector<cplx>(g.size())};
            e.values[std::size_t(j)] = 1.0;
            SampledField col = dual_fourier_apply(sym, e);
            for (int k = 0; k < g.N; ++k) {
                gap2 += std::norm(col.values[std::size_t(k)] - M.entries.at(j, k));
                ref2 += std::norm(M.entries.at(j, k));
            }
        }
        worst = std::max(worst, std::sqrt(gap2 / ref2));
    }
    return {worst < 1e-10,
            strf("worst ||dual - transpose||_F / ||M||_F = %.3e over 4 symbols "
                 "(tol 1e-10)",
                 worst)};
}

// ----------------------------------------------------------------- criterion 8

Outcome c08_gaussian_closed_forms() {
    Grid g = make_grid(1, 256, 12.0);
    double worst_semi = 0.0, worst_op = 0.0;
    for (double t : {0.1, 0.5}) {
        SampledField f = sample(g, Side::space,
                                [](double x) { return cplx(std::exp(-0.5 * x * x)); });
        SampledField out = heat_semigroup(f, {t, 1.0});
        for (int i = 0; i < g.N; ++i) {
            const double x = g.x(i);
            const double want =
                std::exp(-x * x / (2.0 * (1.0 + 2.0 * t))) / std::sqrt(1.0 + 2.0 * t);
            worst_semi = std::max(worst_semi, std::abs(out.values[i] - cplx(want)));
        }

        // the conjugate-kernel route reads its input at the frequency nodes
        SampledField fs = retag_space(sample(
            g, Side::frequency, [](double xi) { return cplx(std::exp(-0.5 * xi * xi)); }));
        SymbolParams hp;
        hp.t = t;
        SampledField hout = apply_fourier_op(builtin_symbol(SymbolKind::heat, hp), fs,
                                             Normalization::literal);
        const double c = 2.0 * t + 1.0;
        for (int i = 0; i < g.N; ++i) {
            const double x = g.x(i);
            const double want = std::sqrt(2.0 * pi / c) * std::exp(-x * x / (2.0 * c));
            worst_op = std::max(worst_op, std::abs(hout.values[i] - cplx(want)));
        }
    }
    return {worst_semi < 1e-6 && worst_op < 1e-6,
            strf("multiplier route max error %.3e, kernel route %.3e, t in {0.1, 0.5} "
                 "(tol 1e-6)",
                 worst_semi, worst_op)};
}

// ----------------------------------------------------------------- criterion 9

Outcome c09_norm_stability() {
    std::vector<Grid> ladder;
    for (int N : {64, 128, 256}) ladder.push_back(make_grid(1, N, 8.0));
    const SpaceParams sp{Family::B, 1.0, 2.0, 2.0};
    bool pass = true;
    std::string detail;
    for (double a : {0.3, 0.7}) {
        SymbolParams mp;
        mp.rho = 0.0;
        mp.a = a;
        std::vector<NormEstimate> est =
            operator_norm_probe(builtin_symbol(SymbolKind::modulated, mp), sp, ladder, 8);
        double emin = 1e300, emax = 0.0;
        for (const NormEstimate& e : est) {
            emin = std::min(emin, e.estimate);
            emax = std::max(emax, e.estimate);
        }
        pass = pass && emin > 0.0 && emax / emin < 2.0;
        detail += strf("%sa=%.1f: estimates [%.4f, %.4f] factor %.4f",
                       detail.empty() ? "" : "; ", a, emin, emax, emax / emin);
    }
    return {pass, detail + " over N in {64,128,256} (factor < 2)"};
}

// ---------------------------------------------------------------- criterion 10

OperatorMatrix heat_matrix(const Grid& g, double t) {
    SymbolParams hp;
    hp.t = t;
    return assemble_fourier_matrix(builtin_symbol(SymbolKind::heat, hp), g);
}

Outcome c10_heat_spectrum() {
    Grid g = make_grid(1, 256, 12.0);
    OperatorMatrix M = heat_matrix(g, 0.1);
    std::vector<double> mods = moduli(eigenvalues(M.entries));
    DecayFit fit = fit_decay(mods, 4, 32, FitModel::pure_power);

    bool pass = true;
    std::string detail = strf("beta_hat = %.5f over k in [4,32]:", fit.beta);
    for (double s : {1.0, 2.0, 4.0}) {
        const bool ok = fit.beta >= s;
        pass = pass && ok;
        detail += strf(" s=%g %s;", s, ok ? "ok" : "VIOLATED");
    }

    const double ts[] = {0.05, 0.1, 0.2};
    std::vector<double> prev = singular_values(heat_matrix(g, ts[0]).entries);
    bool mono = true;
    for (int i = 1; i < 3; ++i) {
        std::vector<double> cur = singular_values(heat_matrix(g, ts[i]).entries);
        for (std::size_t k = 0; k < cur.size(); ++k)
            mono = mono && cur[k] <= prev[k] * (1.0 + 1e-10);
        prev = std::move(cur);
    }
    pass = pass && mono;
    detail += strf(" singular values %s in t over {0.05, 0.1, 0.2}",
                   mono ? "nonincreasing" : "NOT nonincreasing");
    return {pass, detail};
}

// ---------------------------------------------------------------- criterion 11

Outcome c11_fourier_spectrum() {
    Grid g = make_grid(1, 128, pi);
    SymbolParams mp;
    mp.rho = 2.0;
    mp.a = 0.5;
    OperatorMatrix M = assemble_fourier_matrix(builtin_symbol(SymbolKind::modulated, mp), g);
    std::vector<double> mods = moduli(eigenvalues(M.entries));
    DecayFit fit = fit_decay(mods, 4, 32, FitModel::pure_power);

    bool pass = true;
    std::string detail = strf("beta_hat = %.5f over k in [4,32]:", fit.beta);
    for (double s : {0.5, 1.0}) {
        RateParams rp;
        rp.s = s;
        rp.sigma = 2.0;
        const RateBound rb = predicted_rate(RateSource::thm45i, 1, 2.0, rp);
        const bool ok = fit.beta >= rb.beta;
        pass = pass && ok;
        detail += strf(" (s=%g, p=2) predicted %.4f %s;", s, rb.beta,
                       ok ? "ok" : "VIOLATED");
    }
    return {pass, detail + " one-sided"};
}

// ---------------------------------------------------------------- criterion 12

Outcome c12_weyl_everywhere() {
    struct Entry {
        std::string label;
        DenseMatrix m;
    };
    std::vector<Entry> suite;
    Grid gh = make_grid(1, 256, 12.0);
    for (double t : {0.05, 0.1, 0.2})
        suite.push_back({strf("heat t=%.2f", t), heat_matrix(gh, t).entries});
    SymbolParams mp;
    mp.rho = 2.0;
    mp.a = 0.5;
    suite.push_back({"modulated sigma=2",
                     assemble_fourier_matrix(builtin_symbol(SymbolKind::modulated, mp),
                                             make_grid(1, 128, pi))
                         .entries});
    WaveletSystem sys = daubechies_system(3, 10);
    suite.push_back({"wavelet transport",
                     wavelet_operator_matrix(builtin_symbol(SymbolKind::one), sys, 2,
                                             make_grid(1, 4096, 4.0))
                         .a});

    bool pass = true;
    std::string detail;
    for (const Entry& e : suite) {
        WeylReport w =
            weyl_check(moduli(eigenvalues(e.m)), singular_values(e.m), 1e-8);
        pass = pass && w.all_ok;
        int first_fail = -1;
        for (std::size_t k = 0; k < w.ok.size(); ++k)
            if (!w.ok[k]) {
                first_fail = int(k) + 1;
                break;
            }
        detail += strf("%s%s: %s", detail.empty() ? "" : "; ", e.label.c_str(),
                       w.all_ok ? strf("ok (margin %.2e)", w.worst_margin).c_str()
                                : strf("FAILS from k=%d (log margin %.1f)", first_fail,
                                       w.worst_margin)
                                      .c_str());
    }
    return {pass, detail + " (rel tol 1e-8, every k)"};
}

// ---------------------------------------------------------------- criterion 13

DenseMatrix random_matrix(int n, unsigned seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix m(n, n);
    for (auto& z : m.a) z = scale * cplx(u(rng), u(rng));
    return m;
}

Outcome c13_eigensolver_oracle() {
    const int n = 8;
    double worst_match = 0.0, worst_trace = 0.0, worst_sim = 0.0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        DenseMatrix m = random_matrix(n, 5000 + seed);
        std::vector<cplx> ev = eigenvalues(m);
        worst_match = std::max(
            worst_match, oracles::multiset_distance(ev, oracles::charpoly_eigenvalues(m.a, n)));

        cplx tr = 0.0, evsum = 0.0;
        for (int i = 0; i < n; ++i) tr += m.at(i, i);
        for (const cplx& l : ev) evsum += l;
        worst_trace = std::max(worst_trace, std::abs(tr - evsum));

        DenseMatrix p = random_matrix(n, 6000 + seed, 0.1);
        for (int i = 0; i < n; ++i) p.at(i, i) += 1.0;
        DenseMatrix ms(n, n);
        ms.a = oracles::mat_solve(p.a, oracles::mat_mul(m.a, p.a, n), n);
        worst_sim = std::max(worst_sim, oracles::multiset_distance(eigenvalues(ms), ev));
    }
    return {worst_match < 1e-8 && worst_trace < 1e-7 && worst_sim < 1e-7,
            strf("100 8x8 matrices: root-oracle gap %.3e (tol 1e-8), trace gap %.3e, "
                 "similarity gap %.3e (tol 1e-7)",
                 worst_match, worst_trace, worst_sim)};
}

// ---------------------------------------------------------------- criterion 14

Outcome c14_smoothing() {
    Grid g = make_grid(1, 256, 4.0);
    LPPartition part = lp_partition(g);
    const SpaceParams lo{Family::B, 1.0, 2.0, 2.0};
    const SpaceParams hi{Family::B, 2.0, 2.0, 2.0};

    std::vector<SampledField> suite;
    for (int m : {1, 2, 4, 8, 16, 32}) {
        const double xi0 = m * g.dxi();
        suite.push_back(
            sample(g, Side::space, [xi0](double x) { return std::polar(1.0, xi0 * x); }));
    }
    const double pairs[3][2] = {{4.0, 1.0}, {16.0, 0.5}, {8.0, 2.0}};
    for (const auto& kw : pairs) {
        const double xi0 = kw[0] * g.dxi(), w = kw[1];
        suite.push_back(sample(g, Side::space, [xi0, w](double x) {
            return std::polar(std::exp(-x * x / (2.0 * w * w)), xi0 * x);
        }));
    }
    suite.push_back(random_field(g, 1));

    double cmin = 1e300, cmax = 0.0;
    for (int e = 1; e <= 8; ++e) {
        const double t = std::ldexp(1.0, -e);
        double ct = 0.0;
        for (const SampledField& w : suite)
            ct = std::max(ct, std::sqrt(t) * besov_norm(heat_semigroup(w, {t, 1.0}), hi, part) /
                                  besov_norm(w, lo, part));
        cmin = std::min(cmin, ct);
        cmax = std::max(cmax, ct);
    }
    return {cmax / cmin < 10.0,
            strf("constants in [%.5f, %.5f], spread %.5f over t = 2^-1..2^-8, "
                 "10 functions (spread < 10)",
                 cmin, cmax, cmax / cmin)};
}

struct Criterion {
    int id;
    const char* label;
    Outcome (*run)();
};

const Criterion criteria[] = {
    {1, "frequency bump partition sums to one", c01_partition},
    {2, "transform round trip and Parseval", c02_roundtrip_parseval},
    {3, "wavelet orthonormality and vanishing moments", c03_orthonormality_moments},
    {4, "besov / sequence norm equivalence", c04_norm_equivalence},
    {5, "constant symbol acts as the identity", c05_constant_symbol},
    {6, "fourier operator composes through the transform", c06_composition},
    {7, "dual operator matrix is the transpose", c07_dual_transpose},
    {8, "gaussian closed forms of both heat routes", c08_gaussian_closed_forms},
    {9, "multiplication symbol norm stable across grids", c09_norm_stability},
    {10, "heat operator spectral decay and t-monotonicity", c10_heat_spectrum},
    {11, "modulated fourier operator spectral decay", c11_fourier_spectrum},
    {12, "weyl inequality on every assembled matrix", c12_weyl_everywhere},
    {13, "eigensolver against the root-finding oracle", c13_eigensolver_oracle},
    {14, "heat smoothing constant across dyadic times", c14_smoothing},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long id = std::strtol(argv[i], &end, 10);
        if (end == argv[i] || *end != '\0' || id < 1 || id > 14) {
            std::fprintf(stderr, "usage: %s [criterion numbers in 1..14]\n", argv[0]);
            return 2;
        }
        wanted.insert(int(id));
    }

    int ran = 0, failed = 0;
    for (const Criterion& c : criteria) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        ++ran;
        if (!o.pass) ++failed;
        std::printf("[%2d] %s  %s: %s\n", c.id, o.pass ? "pass" : "FAIL", c.label,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
