#include "specop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specop {

namespace {

// Parlett-Reinsch balancing with radix-2 scale factors: a diagonal
// similarity, so the spectrum is untouched and no back-transform is
// needed.  Essential for the heavily column-graded matrices the heat
// experiments assemble.
void balance(DenseMatrix& m) {
    const int n = m.rows;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(m.at(j, i));
                r += std::abs(m.at(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
            while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
            if (f != 1.0 && c + r < 0.95 * s) {
                done = false;
                const double g = 1.0 / f;
                for (int j = 0; j < n; ++j) m.at(i, j) *= g;
                for (int j = 0; j < n; ++j) m.at(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (similarity).
void hessenberg(DenseMatrix& m) {
    const int n = m.rows;
    std::vector<cplx> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(m.at(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;

        cplx x0 = m.at(k + 1, k);
        cplx alpha = (std::abs(x0) == 0.0) ? cplx(-xnorm, 0.0)
                                           : -(x0 / std::abs(x0)) * xnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = m.at(i, k) - (i == k + 1 ? alpha : cplx(0.0));
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // left: A <- A - beta v (v^* A), rows k+1..n-1
        for (int j = k; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * m.at(i, j);
            s *= beta;
            for (int i = k + 1; i < n; ++i) m.at(i, j) -= v[i] * s;
        }
        // right: A <- A - beta (A v) v^*, columns k+1..n-1
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += m.at(i, j) * v[j];
            s *= beta;
            for (int j = k + 1; j < n; ++j) m.at(i, j) -= s * std::conj(v[j]);
        }
        m.at(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) m.at(i, k) = 0.0;
    }
}

struct Givens {
    double c = 1.0;  // real by construction
    cplx s = 0.0;
};

// Unitary [c, s; -conj(s), c] with c real sending (a, b) to (r, 0).
Givens make_givens(cplx a, cplx b) {
    Givens g;
    const double ab = std::abs(b);
    if (ab == 0.0) return g;
    const double aa = std::abs(a);
    if (aa == 0.0) {
        g.c = 0.0;
        g.s = std::conj(b) / ab;
        return g;
    }
    const double r = std::hypot(aa, ab);
    g.c = aa / r;
    g.s = (a / aa) * std::conj(b) / r;
    return g;
}

cplx wilkinson_shift(const DenseMatrix& h, int hi) {
    const cplx a = h.at(hi - 1, hi - 1), b = h.at(hi - 1, hi);
    const cplx c = h.at(hi, hi - 1), d = h.at(hi, hi);
    const cplx half = 0.5 * (a + d);
    const cplx disc = std::sqrt(half * half - (a * d - b * c));
    const cplx mu1 = half + disc, mu2 = half - disc;
    return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

// One explicit shifted QR step H <- Q^* H Q on the active block [lo, hi].
void qr_step(DenseMatrix& h, int lo, int hi, cplx mu) {
    for (int i = lo; i <= hi; ++i) h.at(i, i) -= mu;
    std::vector<Givens> rot(hi);
    for (int i = lo; i < hi; ++i) {
        Givens g = make_givens(h.at(i, i), h.at(i + 1, i));
        rot[i] = g;
        for (int j = i; j <= hi; ++j) {
            const cplx t1 = h.at(i, j), t2 = h.at(i + 1, j);
            h.at(i, j) = g.c * t1 + g.s * t2;
            h.at(i + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
        }
        h.at(i + 1, i) = 0.0;
    }
    for (int i = lo; i < hi; ++i) {
        const Givens g = rot[i];
        const int rtop = std::min(i + 1, hi);
        for (int r = lo; r <= rtop; ++r) {
            const cplx t1 = h.at(r, i), t2 = h.at(r, i + 1);
            h.at(r, i) = g.c * t1 + std::conj(g.s) * t2;
            h.at(r, i + 1) = -g.s * t1 + g.c * t2;
        }
    }
    for (int i = lo; i <= hi; ++i) h.at(i, i) += mu;
}

constexpr double kDeflate = 1e-14;
constexpr int kStallLimit = 30;   // sweeps before an exceptional shift
constexpr int kIterCap = 300;     // sweeps per trailing eigenvalue

}  // namespace

std::vector<cplx> eigenvalues(const DenseMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("eigenvalues: matrix must be square");
    const int n = m.rows;
    std::vector<cplx> ev(n);
    if (n == 0) return ev;

    DenseMatrix h = m;
    for (const cplx& z : h.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("eigenvalues: non-finite entry");

    if (n > 1) {
        balance(h);
        hessenberg(h);
    }

    int hi = n - 1;
    int iter = 0;
    while (hi >= 0) {
        // deflate off converged trailing entries and find the active block
        int lo = hi;
        while (lo > 0) {
            const double s = std::abs(h.at(lo - 1, lo - 1)) + std::abs(h.at(lo, lo));
            if (std::abs(h.at(lo, lo - 1)) <= kDeflate * s) {
                h.at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            ev[hi] = h.at(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++iter > kIterCap)
            throw std::runtime_error("eigenvalues: QR failed to converge at block ending at index " +
                                     std::to_string(hi));
        cplx mu;
        if (iter % kStallLimit == 0) {
            // exceptional shift to break symmetric stalls
            mu = h.at(hi, hi) + 0.75 * std::abs(h.at(hi, hi - 1));
        } else {
            mu = wilkinson_shift(h, hi);
        }
        qr_step(h, lo, hi, mu);
    }

    std::sort(ev.begin(), ev.end(), [](const cplx& a, const cplx& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    return ev;
}

std::vector<double> singular_values(const DenseMatrix& m) {
    // Work on columns of the tall orientation; singular values are shared.
    const bool flip = m.rows < m.cols;
    const int rows = flip ? m.cols : m.rows;
    const int cols = flip ? m.rows : m.cols;
    std::vector<std::vector<cplx>> col(cols, std::vector<cplx>(rows));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            (flip ? col[i][j] : col[j][i]) = m.at(i, j);

    std::vector<double> sq(cols);
    auto sqnorm = [&](int j) {
        double s = 0.0;
        for (const cplx& z : col[j]) s += std::norm(z);
        return s;
    };
    for (int j = 0; j < cols; ++j) sq[j] = sqnorm(j);

    // de Rijk ordering: large columns first speeds convergence
    std::vector<int> order(cols);
    for (int j = 0; j < cols; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sq[a] > sq[b]; });
    {
        std::vector<std::vector<cplx>> tmp(cols);
        std::vector<double> tsq(cols);
        for (int j = 0; j < cols; ++j) {
            tmp[j] = std::move(col[order[j]]);
            tsq[j] = sq[order[j]];
        }
        col = std::move(tmp);
        sq = std::move(tsq);
    }

    const double tol = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < cols - 1; ++i) {
            for (int j = i + 1; j < cols; ++j) {
                if (sq[i] == 0.0 || sq[j] == 0.0) continue;
                cplx cij = 0.0;
                for (int r = 0; r < rows; ++r) cij += std::conj(col[i][r]) * col[j][r];
                const double ac = std::abs(cij);
                if (ac <= tol * std::sqrt(sq[i] * sq[j])) continue;
                rotated = true;

                // phase-fold column j so the 2x2 Gram is real, then a
                // classical Jacobi rotation zeroes the cross term
                const cplx ph = std::conj(cij) / ac;
                const double zeta = (sq[j] - sq[i]) / (2.0 * ac);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (int r = 0; r < rows; ++r) {
                    const cplx xi = col[i][r], xj = ph * col[j][r];
                    col[i][r] = cs * xi - sn * xj;
                    col[j][r] = sn * xi + cs * xj;
                }
                sq[i] = sqnorm(i);
                sq[j] = sqnorm(j);
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(cols);
    for (int j = 0; j < cols; ++j) sv[j] = std::sqrt(sq[j]);
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

WeylReport weyl_check(const std::vector<double>& eigen_moduli,
                      const std::vector<double>& singular_values, double tol) {
    if (eigen_moduli.size() != singular_values.size())
        throw std::invalid_argument("weyl_check: length mismatch");
    WeylReport rep;
    rep.ok.resize(eigen_moduli.size());
    rep.worst_margin = std::numeric_limits<double>::infinity();
    double la = 0.0, ls = 0.0;
    bool lzero = false, szero = false;
    const double slack = std::log1p(tol);
    for (std::size_t k = 0; k < eigen_moduli.size(); ++k) {
        if (eigen_moduli[k] == 0.0) lzero = true;
        else la += std::log(eigen_moduli[k]);
        if (singular_values[k] == 0.0) szero = true;
        else ls += std::log(singular_values[k]);
        const bool ok = lzero || (!szero && la <= ls + slack);
        rep.ok[k] = ok;
        rep.all_ok = rep.all_ok && ok;
        if (!lzero && !szero) rep.worst_margin = std::min(rep.worst_margin, ls - la);
    }
    return rep;
}

namespace {

// Dense normal-equation solve for the tiny fit systems (2x2 / 3x3).
std::vector<double> solve_small(std::vector<double> a, std::vector<double> b, int n) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (a[piv * n + k] == 0.0) throw std::runtime_error("fit_decay: singular fit system");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] / a[k * n + k];
            for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

}  // namespace

DecayFit fit_decay(const std::vector<double>& values, int k_lo, int k_hi, FitModel model) {
    if (k_lo < 1 || k_hi <= k_lo || k_hi > static_cast<int>(values.size()))
        throw std::invalid_argument("fit_decay: window out of range");
    if (model == FitModel::log_corrected && k_lo < 2)
        throw std::invalid_argument("fit_decay: log_corrected model needs k_lo >= 2");
    const int dim = model == FitModel::pure_power ? 2 : 3;
    const int npts = k_hi - k_lo + 1;
    if (npts < dim) throw std::invalid_argument("fit_decay: window too short for model");

    std::vector<double> ata(dim * dim, 0.0), atb(dim, 0.0);
    double ss_res = 0.0;
    std::vector<std::vector<double>> rows_x(npts, std::vector<double>(dim));
    std::vector<double> rows_y(npts);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double v = values[k - 1];
        if (!(v > 0.0)) throw std::invalid_argument("fit_decay: nonpositive value at k=" +
                                                    std::to_string(k));
        const int r = k - k_lo;
        rows_y[r] = std::log(v);
        rows_x[r][0] = 1.0;
        if (model == FitModel::pure_power) {
            rows_x[r][1] = -std::log(double(k));
        } else {
            const double lk = std::log(double(k));
            rows_x[r][1] = -std::log(k / lk);
            rows_x[r][2] = std::log(lk);
        }
        for (int i = 0; i < dim; ++i) {
            atb[i] += rows_x[r][i] * rows_y[r];
            for (int j = 0; j < dim; ++j) ata[i * dim + j] += rows_x[r][i] * rows_x[r][j];
        }
    }
    const std::vector<double> th = solve_small(ata, atb, dim);
    for (int r = 0; r < npts; ++r) {
        double pred = 0.0;
        for (int i = 0; i < dim; ++i) pred += th[i] * rows_x[r][i];
        ss_res += (rows_y[r] - pred) * (rows_y[r] - pred);
    }

    DecayFit fit;
    fit.model = model;
    fit.intercept = th[0];
    fit.beta = th[1];
    fit.gamma = dim == 3 ? th[2] : 0.0;
    fit.residual = std::sqrt(ss_res / npts);
    fit.k_lo = k_lo;
    fit.k_hi = k_hi;
    return fit;
}

double pivot_exponent(int n, double p) { return 2.0 * n * (1.0 / p - 0.5); }

namespace {

void require_hyp(bool ok, const std::string& who, const std::string& inequality) {
    if (!ok) throw std::invalid_argument("predicted_rate(" + who + "): requires " + inequality);
}

}  // namespace

RateBound predicted_rate(RateSource source, int n, double p, const RateParams& params) {
    const std::string who = rate_source_name(source);
    require_hyp(n >= 1, who, "n >= 1");
    require_hyp(p > 0.0, who, "p > 0");
    RateBound rb;
    rb.source = source;
    rb.n = n;
    rb.p = p;
    rb.params = params;
    rb.d = pivot_exponent(n, p);
    const double d = rb.d;
    const double half_gap = 1.0 / p - 0.5;  // 1/p - 1/2

    switch (source) {
        case RateSource::prop43i: {
            require_hyp(1.0 < p && p <= 2.0, who, "1 < p <= 2 (got p = " + std::to_string(p) + ")");
            require_hyp(params.s1 > d, who, "s1 > 2n(1/p - 1/2)");
            require_hyp(params.s2 < 0.0, who, "s2 < 0");
            const double crit = d - params.s1;
            if (params.s2 > crit) {
                rb.regime = RateRegime::polynomial;
                rb.beta = -params.s2 / n;
            } else if (params.s2 == crit) {
                rb.regime = RateRegime::log_critical;
                rb.beta = -params.s2 / n;
                rb.log_power = half_gap;
            } else {
                rb.regime = RateRegime::polynomial;
                rb.beta = params.s1 / n - 2.0 * half_gap;
            }
            break;
        }
        case RateSource::prop43ii: {
            require_hyp(2.0 <= p && std::isfinite(p), who, "2 <= p < infinity");
            require_hyp(params.s1 > 0.0, who, "s1 > 0");
            require_hyp(params.s2 < d, who, "s2 < 2n(1/p - 1/2)");
            const double crit = d - params.s1;
            if (params.s2 > crit) {
                rb.regime = RateRegime::polynomial;
                rb.beta = 2.0 * half_gap - params.s2 / n;
            } else if (params.s2 == crit) {
                rb.regime = RateRegime::log_critical;
                rb.beta = params.s1 / n;
                rb.log_power = -half_gap;
            } else {
                rb.regime = RateRegime::polynomial;
                rb.beta = params.s1 / n;
            }
            break;
        }
        case RateSource::thm45i: {
            require_hyp(params.sigma > 0.0, who, "sigma > 0");
            require_hyp(1.0 < p && p <= 2.0, who, "1 < p <= 2 (got p = " + std::to_string(p) + ")");
            require_hyp(params.sigma > params.s, who, "sigma > s");
            require_hyp(params.s > d, who, "s > 2n(1/p - 1/2)");
            if (2.0 * params.s != params.sigma + d) {
                rb.regime = RateRegime::polynomial;
                rb.beta = std::min(params.sigma - params.s, params.s - d) / n;
            } else {
                rb.regime = RateRegime::log_critical;
                rb.beta = (params.sigma - params.s) / n;
                rb.log_power = half_gap;
            }
            break;
        }
        case RateSource::thm45ii: {
            require_hyp(params.sigma > 0.0, who, "sigma > 0");
            require_hyp(2.0 <= p && std::isfinite(p), who, "2 <= p < infinity");
            require_hyp(params.s > 0.0, who, "s > 0");
            require_hyp(params.s < params.sigma + d, who, "s < sigma + 2n(1/p - 1/2)");
            if (2.0 * params.s != params.sigma + d) {
                rb.regime = RateRegime::polynomial;
                rb.beta = std::min(params.s, d - params.s + params.sigma) / n;
            } else {
                rb.regime = RateRegime::log_critical;
                rb.beta = params.s / n;
                rb.log_power = -half_gap;
            }
            break;
        }
        case RateSource::thm48i: {
            require_hyp(1.0 < p && p <= 2.0, who, "1 < p <= 2 (got p = " + std::to_string(p) + ")");
            require_hyp(params.s > d, who, "s > 2n(1/p - 1/2)");
            require_hyp(params.t > 0.0 && params.t <= 1.0, who, "0 < t <= 1");
            rb.regime = RateRegime::log_critical;
            rb.beta = (params.s - d) / n;
            rb.log_power = half_gap;
            rb.t_exponent = -params.s + n * half_gap;
            break;
        }
        case RateSource::thm48ii: {
            require_hyp(2.0 <= p && std::isfinite(p), who, "2 <= p < infinity");
            require_hyp(params.s > 0.0, who, "s > 0");
            require_hyp(params.t > 0.0 && params.t <= 1.0, who, "0 < t <= 1");
            rb.regime = RateRegime::log_critical;
            rb.beta = params.s / n;
            rb.log_power = -half_gap;
            rb.t_exponent = -params.s + n * half_gap;
            break;
        }
    }
    return rb;
}

double rate_shape(const RateBound& rb, int k) {
    if (k < 1) throw std::invalid_argument("rate_shape: k >= 1");
    if (rb.regime == RateRegime::polynomial) return std::pow(double(k), -rb.beta);
    // the log-corrected statements are for k >= 2; clamp below that
    const double kk = std::max(k, 2);
    const double lk = std::log(kk);
    return std::pow(kk / lk, -rb.beta) * std::pow(lk, rb.log_power);
}

std::string rate_source_name(RateSource s) {
    switch (s) {
        case RateSource::prop43i: return "prop43i";
        case RateSource::prop43ii: return "prop43ii";
        case RateSource::thm45i: return "thm45i";
        case RateSource::thm45ii: return "thm45ii";
        case RateSource::thm48i: return "thm48i";
        case RateSource::thm48ii: return "thm48ii";
    }
    return "unknown";
}

RateSource rate_source_from(const std::string& name) {
    if (name == "prop43i") return RateSource::prop43i;
    if (name == "prop43ii") return RateSource::prop43ii;
    if (name == "thm45i") return RateSource::thm45i;
    if (name == "thm45ii") return RateSource::thm45ii;
    if (name == "thm48i") return RateSource::thm48i;
    if (name == "thm48ii") return RateSource::thm48ii;
    throw std::invalid_argument("unknown rate source: " + name);
}

}  // namespace specop
