#include "specop/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace specop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(const SpaceParams& sp) {
    if (!(sp.p > 0.0)) throw std::invalid_argument("space params: p must be > 0");
    if (!(sp.q > 0.0)) throw std::invalid_argument("space params: q must be > 0");
    if (!std::isfinite(sp.s)) throw std::invalid_argument("space params: s must be finite");
}

// Least integer strictly greater than x (x >= 0 in every reachable case).
int least_int_above(double x) { return static_cast<int>(std::floor(x)) + 1; }

// Node-index window [lo, hi] of the half-open interval [a, b) on the
// axis lattice x_i = -R + i h; hi < lo when no node falls inside.
void interval_window(double a, double b, double R, double h, int N, int* lo, int* hi) {
    *lo = static_cast<int>(std::ceil((a + R) / h));
    *hi = static_cast<int>(std::ceil((b + R) / h)) - 1;
    if (*lo < 0) *lo = 0;
    if (*hi > N - 1) *hi = N - 1;
}

}  // namespace

std::vector<GenderTuple> gender_tuples(int n, int j) {
    if (n != 1 && n != 2) throw std::invalid_argument("gender_tuples: n must be 1 or 2");
    if (j < 0) throw std::invalid_argument("gender_tuples: level must be >= 0");
    std::vector<GenderTuple> out;
    const unsigned count = 1u << n;
    for (unsigned bits = 0; bits < count; ++bits)
        if (j == 0 || bits != 0) out.push_back(GenderTuple{n, bits});
    return out;
}

bool gender_admissible(const GenderTuple& g, int j) { return j == 0 || g.any_m(); }

double DyadicCube::side() const { return std::ldexp(1.0, -j); }

bool DyadicCube::contains(double x) const {
    const double s = side();
    return x >= s * m[0] && x < s * (m[0] + 1);
}

bool DyadicCube::contains(double x1, double x2) const {
    const double s = side();
    return x1 >= s * m[0] && x1 < s * (m[0] + 1) && x2 >= s * m[1] && x2 < s * (m[1] + 1);
}

double besov_norm(const SampledField& f, const SpaceParams& sp,
                  const LPPartition& partition) {
    check_params(sp);
    if (f.side != Side::space)
        throw std::invalid_argument("besov_norm: field must be space-side");
    if (!(f.grid == partition.grid))
        throw std::invalid_argument("besov_norm: partition built for a different grid");
    if (sp.family == Family::F && sp.p == kInf)
        throw std::invalid_argument("besov_norm: family F requires p < inf");

    const int J = partition.J;
    if (sp.family == Family::B) {
        if (sp.q == kInf) {
            double best = 0.0;
            for (int j = 0; j <= J; ++j)
                best = std::max(best, std::exp2(j * sp.s) *
                                          lebesgue_norm(lp_block(f, partition, j), sp.p));
            return best;
        }
        double acc = 0.0;
        for (int j = 0; j <= J; ++j)
            acc += std::pow(std::exp2(j * sp.s) *
                                lebesgue_norm(lp_block(f, partition, j), sp.p),
                            sp.q);
        return std::pow(acc, 1.0 / sp.q);
    }

    // F: pointwise l_q aggregate across blocks, then the spatial L_p norm.
    const std::size_t sz = f.grid.size();
    std::vector<double> agg(sz, 0.0);
    for (int j = 0; j <= J; ++j) {
        const SampledField block = lp_block(f, partition, j);
        const double w = std::exp2(j * sp.s);
        if (sp.q == kInf) {
            for (std::size_t i = 0; i < sz; ++i)
                agg[i] = std::max(agg[i], w * std::abs(block.values[i]));
        } else {
            for (std::size_t i = 0; i < sz; ++i)
                agg[i] += std::pow(w * std::abs(block.values[i]), sp.q);
        }
    }
    const double cell = f.grid.cell(Side::space);
    double acc = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
        const double g = sp.q == kInf ? agg[i] : std::pow(agg[i], 1.0 / sp.q);
        acc += std::pow(g, sp.p) * cell;
    }
    return std::pow(acc, 1.0 / sp.p);
}

double seq_norm(const CoeffSet& c, const SpaceParams& sp, SeqKind kind,
                const Grid& grid) {
    check_params(sp);
    if (grid.n != c.n) throw std::invalid_argument("seq_norm: grid dimension mismatch");

    if (kind == SeqKind::b) {
        // l_q over (j, G) of 2^{j(s - n/p)} l_p over m; sup forms at inf.
        const double np = sp.p == kInf ? 0.0 : c.n / sp.p;
        std::vector<double> inner;  // one value per (j, G) group, in key order
        std::vector<double> weight;
        int cur_j = -1;
        unsigned cur_bits = ~0u;
        for (const auto& [key, lam] : c.entries) {
            if (key.j != cur_j || key.G.bits != cur_bits) {
                cur_j = key.j;
                cur_bits = key.G.bits;
                inner.push_back(0.0);
                weight.push_back(std::exp2(cur_j * (sp.s - np)));
            }
            const double a = std::abs(lam);
            if (sp.p == kInf)
                inner.back() = std::max(inner.back(), a);
            else
                inner.back() += std::pow(a, sp.p);
        }
        double acc = 0.0;
        for (std::size_t g = 0; g < inner.size(); ++g) {
            const double lp = sp.p == kInf ? inner[g] : std::pow(inner[g], 1.0 / sp.p);
            const double term = weight[g] * lp;
            acc = sp.q == kInf ? std::max(acc, term) : acc + std::pow(term, sp.q);
        }
        return sp.q == kInf ? acc : std::pow(acc, 1.0 / sp.q);
    }

    // f: the cube-indicator aggregate evaluated on the grid nodes.
    if (sp.p == kInf) throw std::invalid_argument("seq_norm: kind f requires p < inf");
    if (std::ldexp(1.0, c.Jmax) * grid.h() > 1.0)
        throw std::invalid_argument("seq_norm: cubes at level " + std::to_string(c.Jmax) +
                                    " are finer than the grid spacing");

    const std::size_t sz = grid.size();
    std::vector<double> agg(sz, 0.0);
    for (const auto& [key, lam] : c.entries) {
        const double a = std::abs(lam);
        if (a == 0.0) continue;
        const double side = std::ldexp(1.0, -key.j);
        const double t = std::exp2(key.j * sp.s) * a;
        int lo0 = 0, hi0 = 0;
        interval_window(side * key.m[0], side * (key.m[0] + 1), grid.R, grid.h(),
                        grid.N, &lo0, &hi0);
        if (hi0 < lo0) continue;
        if (grid.n == 1) {
            for (int i = lo0; i <= hi0; ++i)
                agg[i] = sp.q == kInf ? std::max(agg[i], t) : agg[i] + std::pow(t, sp.q);
            continue;
        }
        int lo1 = 0, hi1 = 0;
        interval_window(side * key.m[1], side * (key.m[1] + 1), grid.R, grid.h(),
                        grid.N, &lo1, &hi1);
        if (hi1 < lo1) continue;
        const double tq = sp.q == kInf ? t : std::pow(t, sp.q);
        for (int i0 = lo0; i0 <= hi0; ++i0) {
            double* row = agg.data() + static_cast<std::size_t>(i0) * grid.N;
            for (int i1 = lo1; i1 <= hi1; ++i1)
                row[i1] = sp.q == kInf ? std::max(row[i1], tq) : row[i1] + tq;
        }
    }
    const double cell = grid.cell(Side::space);
    double acc = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
        const double g = sp.q == kInf ? agg[i] : std::pow(agg[i], 1.0 / sp.q);
        acc += std::pow(g, sp.p) * cell;
    }
    return std::pow(acc, 1.0 / sp.p);
}

AdmissibilityReport smoothness_thresholds(int n, const SpaceParams& sp) {
    check_params(sp);
    if (n != 1 && n != 2)
        throw std::invalid_argument("smoothness_thresholds: n must be 1 or 2");

    const double ip = sp.p == kInf ? 0.0 : 1.0 / sp.p;
    const double iq = sp.q == kInf ? 0.0 : 1.0 / sp.q;
    AdmissibilityReport rep;
    rep.sigma_p = n * (std::max(ip, 1.0) - 1.0);
    rep.sigma_pq = n * (std::max({ip, iq, 1.0}) - 1.0);
    rep.u_min_B = least_int_above(std::max(sp.s, rep.sigma_p - sp.s));
    rep.u_min_F = least_int_above(std::max(sp.s, rep.sigma_pq - sp.s));
    return rep;
}

}  // namespace specop
