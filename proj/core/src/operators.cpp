#include "specop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace specop {

namespace {

double norm_factor(int n, Normalization norm) {
    return norm == Normalization::unitary
               ? std::pow(2.0 * std::numbers::pi, -0.5 * n)
               : 1.0;
}

void require_space_side(const SampledField& f, const char* where) {
    if (f.side != Side::space)
        throw std::invalid_argument(std::string(where) + ": field must be space-side");
}

void require_eval(const Symbol& sym, const char* where) {
    if (!sym.eval)
        throw std::invalid_argument(std::string(where) + ": symbol has no evaluator");
}

std::array<double, 2> space_node(const Grid& g, std::size_t i) {
    if (g.n == 1) return {g.x(int(i)), 0.0};
    return {g.x(int(i) / g.N), g.x(int(i) % g.N)};
}

std::array<double, 2> freq_node(const Grid& g, std::size_t i) {
    if (g.n == 1) return {g.xi(int(i)), 0.0};
    return {g.xi(int(i) / g.N), g.xi(int(i) % g.N)};
}

double node_dot(const std::array<double, 2>& x, const std::array<double, 2>& xi) {
    return x[0] * xi[0] + x[1] * xi[1];
}

// Multiplier application m(xi) fhat(xi), inverted back to the space side.
SampledField multiplier_apply(const SampledField& f,
                              const std::function<cplx(const std::array<double, 2>&)>& m,
                              const char* where) {
    require_space_side(f, where);
    SampledField fh = transform(f, Direction::forward);
    for (std::size_t i = 0; i < fh.values.size(); ++i)
        fh.values[i] *= m(freq_node(fh.grid, i));
    return transform(fh, Direction::inverse);
}

}  // namespace

SampledField apply_pseudo(const Symbol& sym, const SampledField& f, Normalization norm) {
    require_space_side(f, "apply_pseudo");
    require_eval(sym, "apply_pseudo");
    const Grid& g = f.grid;
    const double lit = std::pow(2.0 * std::numbers::pi, 0.5 * g.n);

    if (sym.x_independent) {
        static const std::array<double, 2> origin{0.0, 0.0};
        SampledField out = multiplier_apply(
            f, [&](const std::array<double, 2>& xi) { return sym.eval(origin, xi); },
            "apply_pseudo");
        if (norm == Normalization::literal)
            for (cplx& v : out.values) v *= lit;
        return out;
    }

    SampledField fh = transform(f, Direction::forward);
    const double w = norm_factor(g.n, norm) * std::pow(g.dxi(), g.n);
    SampledField out{g, Side::space, std::vector<cplx>(g.size())};
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        const std::array<double, 2> x = space_node(g, j);
        cplx acc = 0.0;
        for (std::size_t m = 0; m < fh.values.size(); ++m) {
            const std::array<double, 2> xi = freq_node(g, m);
            acc += std::polar(1.0, node_dot(x, xi)) * sym.eval(x, xi) * fh.values[m];
        }
        out.values[j] = w * acc;
    }
    return out;
}

SampledField apply_lift(const SampledField& f, double rho) {
    return multiplier_apply(
        f,
        [rho](const std::array<double, 2>& xi) {
            return cplx(std::pow(xi_bracket(xi), -rho));
        },
        "apply_lift");
}

SampledField heat_semigroup(const SampledField& f, const HeatParams& hp) {
    if (!(hp.t > 0.0)) throw std::invalid_argument("heat_semigroup: t must be positive");
    if (!(hp.alpha > 0.0))
        throw std::invalid_argument("heat_semigroup: alpha must be positive");
    return multiplier_apply(
        f,
        [&hp](const std::array<double, 2>& xi) {
            const double sq = xi[0] * xi[0] + xi[1] * xi[1];
            return cplx(std::exp(-hp.t * std::pow(sq, hp.alpha)));
        },
        "heat_semigroup");
}

SampledField apply_fourier_op(const Symbol& sym, const SampledField& f,
                              Normalization norm) {
    require_space_side(f, "apply_fourier_op");
    require_eval(sym, "apply_fourier_op");
    const Grid& g = f.grid;
    const double w = norm_factor(g.n, norm) * std::pow(g.dxi(), g.n);
    SampledField out{g, Side::space, std::vector<cplx>(g.size())};
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        const std::array<double, 2> x = space_node(g, j);
        cplx acc = 0.0;
        for (std::size_t m = 0; m < f.values.size(); ++m) {
            const std::array<double, 2> xi = freq_node(g, m);
            acc += std::polar(1.0, -node_dot(x, xi)) * sym.eval(x, xi) * f.values[m];
        }
        out.values[j] = w * acc;
    }
    return out;
}

OperatorMatrix assemble_fourier_matrix(const Symbol& sym, const Grid& grid,
                                       Normalization norm) {
    require_eval(sym, "assemble_fourier_matrix");
    const std::size_t sz = grid.size();
    if (sz > 4096)
        throw std::invalid_argument(
            "assemble_fourier_matrix: N^n exceeds the 4096 dense-matrix guard");

    OperatorMatrix M;
    M.grid = grid;
    M.normalization = norm;
    M.symbol_name = sym.name;
    M.weight = norm_factor(grid.n, norm) * std::pow(grid.dxi(), grid.n);
    M.entries = DenseMatrix(int(sz), int(sz));
    for (std::size_t j = 0; j < sz; ++j) {
        const std::array<double, 2> x = space_node(grid, j);
        for (std::size_t m = 0; m < sz; ++m) {
            const std::array<double, 2> xi = freq_node(grid, m);
            const cplx e = M.weight * std::polar(1.0, -node_dot(x, xi)) * sym.eval(x, xi);
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
                throw std::runtime_error("assemble_fourier_matrix: non-finite entry from " +
                                         sym.name);
            M.entries.at(int(j), int(m)) = e;
        }
    }
    return M;
}

SampledField dual_fourier_apply(const Symbol& sym, const SampledField& f) {
    require_eval(sym, "dual_fourier_apply");
    if (!sym.x_independent)
        throw std::invalid_argument("dual_fourier_apply: symbol must be x-independent");
    require_space_side(f, "dual_fourier_apply");
    static const std::array<double, 2> origin{0.0, 0.0};
    SampledField fh = transform(f, Direction::forward);
    for (std::size_t i = 0; i < fh.values.size(); ++i)
        fh.values[i] *= sym.eval(origin, freq_node(fh.grid, i));
    return fh;
}

Symbol reflect_frequency(const Symbol& sym) {
    Symbol out = sym;
    out.eval = [inner = sym.eval](const std::array<double, 2>& x,
                                  const std::array<double, 2>& xi) {
        return inner(x, {-xi[0], -xi[1]});
    };
    out.name = "reflected(" + sym.name + ")";
    return out;
}

namespace {

// Interior translates at level j: support [m, m + 2u - 1] / 2^j inside
// [-R, R] on every axis.
std::vector<int> interior_range(double R, int j, int support) {
    const double scale = std::ldexp(1.0, j);
    const int lo = int(std::ceil(-R * scale));
    const int hi = int(std::floor(R * scale)) - support;
    std::vector<int> ms;
    for (int m = lo; m <= hi; ++m) ms.push_back(m);
    return ms;
}

}  // namespace

WaveletOperatorMatrix wavelet_operator_matrix(const Symbol& sym, const WaveletSystem& sys,
                                              int Jmax, const Grid& grid) {
    require_eval(sym, "wavelet_operator_matrix");
    if (Jmax < 0 || Jmax > 4)
        throw std::invalid_argument(
            "wavelet_operator_matrix: Jmax must be in [0, 4] (index guard)");
    if (std::ldexp(1.0, Jmax) * grid.h() > 1.0)
        throw std::invalid_argument(
            "wavelet_operator_matrix: level " + std::to_string(Jmax) +
            " wavelets are finer than the grid spacing");

    const int support = 2 * sys.u - 1;
    WaveletOperatorMatrix wm;
    wm.grid = grid;
    wm.Jmax = Jmax;
    wm.symbol_name = sym.name;
    for (int j = 0; j <= Jmax; ++j) {
        const std::vector<int> ms = interior_range(grid.R, j, support);
        for (const GenderTuple& G : gender_tuples(grid.n, j)) {
            if (grid.n == 1) {
                for (int m : ms) wm.index.push_back({j, G, {m, 0}});
            } else {
                for (int m1 : ms)
                    for (int m2 : ms) wm.index.push_back({j, G, {m1, m2}});
            }
        }
    }

    const std::size_t count = wm.index.size();
    std::vector<SampledField> transported(count);
    for (std::size_t c = 0; c < count; ++c) {
        const WaveletKey& k = wm.index[c];
        transported[c] =
            apply_pseudo(sym, wavelet_function(sys, k.j, k.G, k.m, grid), Normalization::unitary);
    }

    const double cell = std::pow(grid.h(), grid.n);
    wm.a = DenseMatrix(int(count), int(count));
    for (std::size_t r = 0; r < count; ++r) {
        const WaveletKey& k = wm.index[r];
        const SampledField psi = wavelet_function(sys, k.j, k.G, k.m, grid);
        const double amp = std::exp2(double(k.j) * grid.n);
        for (std::size_t c = 0; c < count; ++c) {
            cplx acc = 0.0;
            const std::vector<cplx>& tv = transported[c].values;
            for (std::size_t i = 0; i < tv.size(); ++i)
                acc += std::conj(psi.values[i]) * tv[i];
            wm.a.at(int(r), int(c)) = amp * cell * acc;
        }
    }
    return wm;
}

std::vector<DecayBin> operator_decay_bins(const WaveletOperatorMatrix& wm) {
    const double width = std::ldexp(1.0, -wm.Jmax);
    std::map<std::pair<int, int>, DecayBin> bins;
    const int count = int(wm.index.size());
    for (int r = 0; r < count; ++r) {
        const WaveletKey& kr = wm.index[r];
        for (int c = 0; c < count; ++c) {
            const WaveletKey& kc = wm.index[c];
            double sq = 0.0;
            for (int l = 0; l < wm.grid.n; ++l) {
                const double d = std::ldexp(double(kr.m[l]), -kr.j) -
                                 std::ldexp(double(kc.m[l]), -kc.j);
                sq += d * d;
            }
            const int gap = std::abs(kr.j - kc.j);
            const int bin = int(std::floor(std::sqrt(sq) / width + 1e-9));
            DecayBin& b = bins[{gap, bin}];
            b.level_gap = gap;
            b.bin = bin;
            b.distance = bin * width;
            b.max_abs = std::max(b.max_abs, std::abs(wm.a.at(r, c)));
            ++b.count;
        }
    }
    std::vector<DecayBin> out;
    out.reserve(bins.size());
    for (const auto& [key, b] : bins) out.push_back(b);
    return out;
}

namespace {

// Adjoint of apply_pseudo in the h^n-weighted inner product: conjugated
// multiplier when x-independent, otherwise the conjugate-transposed
// kernel evaluated as two stage sums.
SampledField apply_pseudo_adjoint(const Symbol& sym, const SampledField& f) {
    const Grid& g = f.grid;
    if (sym.x_independent) {
        static const std::array<double, 2> origin{0.0, 0.0};
        return multiplier_apply(
            f,
            [&](const std::array<double, 2>& xi) { return std::conj(sym.eval(origin, xi)); },
            "apply_pseudo_adjoint");
    }
    const double c = norm_factor(g.n, Normalization::unitary);
    const double hw = c * std::pow(g.h(), g.n);
    SampledField u{g, Side::frequency, std::vector<cplx>(g.size())};
    for (std::size_t m = 0; m < u.values.size(); ++m) {
        const std::array<double, 2> xi = freq_node(g, m);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < f.values.size(); ++j) {
            const std::array<double, 2> x = space_node(g, j);
            acc += std::polar(1.0, -node_dot(x, xi)) * std::conj(sym.eval(x, xi)) *
                   f.values[j];
        }
        u.values[m] = hw * acc;
    }
    return transform(u, Direction::inverse);
}

struct Probe {
    std::string label;
    SampledField field;
};

cplx gauss_value(double r2, double w) { return cplx(std::exp(-r2 / (2.0 * w * w))); }

std::vector<Probe> probe_family(const Grid& g, const WaveletSystem& sys) {
    std::vector<Probe> out;
    const std::string v = "v" + std::to_string(norm_probe_family_version) + "/";
    auto add = [&](const std::string& label, const std::function<cplx(double, double)>& f) {
        if (g.n == 1) {
            out.push_back({v + label, sample(g, Side::space,
                                             [&](double x) { return f(x, 0.0); })});
        } else {
            out.push_back({v + label, sample2(g, Side::space, f)});
        }
    };

    for (double frac : {0.125, 0.25, 0.5}) {
        const double w = frac * g.R;
        add("gauss(w=" + std::to_string(frac) + "R)", [w](double x1, double x2) {
            return gauss_value(x1 * x1 + x2 * x2, w);
        });
    }
    {
        const double w = 0.25 * g.R, x0 = 0.25 * g.R;
        add("gauss(w=0.25R,off-center)", [w, x0](double x1, double x2) {
            return gauss_value((x1 - x0) * (x1 - x0) + x2 * x2, w);
        });
    }
    for (int div : {8, 4}) {
        const double k = (g.N / div) * g.dxi();
        const double w = 0.25 * g.R;
        add("mgauss(k=N/" + std::to_string(div) + " dxi)", [k, w](double x1, double x2) {
            return std::polar(1.0, k * x1) * gauss_value(x1 * x1 + x2 * x2, w);
        });
    }
    const int support = 2 * sys.u - 1;
    for (int j : {0, 1}) {
        if (support / std::ldexp(1.0, j) > g.R) continue;  // keep the support in the box
        GenderTuple mother{g.n, 1};
        out.push_back({v + "wavelet(j=" + std::to_string(j) + ",m=0)",
                       wavelet_function(sys, j, mother, {0, 0}, g, true)});
    }
    return out;
}

}  // namespace

std::vector<NormEstimate> operator_norm_probe(const Symbol& sym, const SpaceParams& sp,
                                              const std::vector<Grid>& ladder,
                                              int probes) {
    require_eval(sym, "operator_norm_probe");
    if (probes < 1)
        throw std::invalid_argument("operator_norm_probe: need at least one probe");
    if (ladder.empty())
        throw std::invalid_argument("operator_norm_probe: empty grid ladder");

    const WaveletSystem sys = daubechies_system(3);
    std::vector<NormEstimate> out;
    for (const Grid& g : ladder) {
        const LPPartition part = lp_partition(g);
        auto ratio = [&](const SampledField& f) -> double {
            const double den = besov_norm(f, sp, part);
            if (!(den > 1e-280)) return -1.0;
            return besov_norm(apply_pseudo(sym, f, Normalization::unitary), sp, part) / den;
        };

        std::vector<Probe> family = probe_family(g, sys);
        if (int(family.size()) > probes) family.resize(std::size_t(probes));

        NormEstimate best{g, -1.0, ""};
        std::size_t best_at = 0;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const double r = ratio(family[i].field);
            if (r > best.estimate) {
                best.estimate = r;
                best.best_probe = family[i].label;
                best_at = i;
            }
        }

        SampledField v = family[best_at].field;
        for (int it = 1; it <= 4; ++it) {
            v = apply_pseudo_adjoint(sym, apply_pseudo(sym, v, Normalization::unitary));
            const double scale = lebesgue_norm(v, 2.0);
            if (!(scale > 1e-280)) break;
            for (cplx& z : v.values) z /= scale;
            const double r = ratio(v);
            if (r > best.estimate) {
                best.estimate = r;
                best.best_probe =
                    family[best_at].label + "+power" + std::to_string(it);
            }
        }
        out.push_back(std::move(best));
    }
    return out;
}

}  // namespace specop
