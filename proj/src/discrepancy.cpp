#include "seqpart/discrepancy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "seqpart/parallel.hpp"

namespace seqpart {

namespace {

struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Per-axis columns plus |y - 1/2|, the layout the pairwise kernel wants.
struct Columns {
    std::size_t n = 0;
    int d = 0;
    std::vector<double> y;  // d columns of length n
    std::vector<double> a;  // |y - 1/2|

    const double* col(int j) const { return y.data() + static_cast<std::size_t>(j) * n; }
    const double* acol(int j) const { return a.data() + static_cast<std::size_t>(j) * n; }
};

Columns to_columns(const UnitPointSet& pts) {
    Columns c;
    c.n = pts.size();
    c.d = pts.dim;
    c.y.resize(c.n * static_cast<std::size_t>(c.d));
    c.a.resize(c.n * static_cast<std::size_t>(c.d));
    for (std::size_t i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.d; ++j) {
            const double v = pts.at(i, j);
            c.y[static_cast<std::size_t>(j) * c.n + i] = v;
            c.a[static_cast<std::size_t>(j) * c.n + i] = std::abs(v - 0.5);
        }
    }
    return c;
}

// Sum over k in [k0, k1) of prod_j kernel(y_i, y_k), for one fixed i.
template <int D>
double pair_row_sum(const Columns& c, std::size_t i, std::size_t k0, std::size_t k1) {
    const double* ycol[D];
    const double* acol[D];
    double ci[D];
    double yi[D];
    for (int j = 0; j < D; ++j) {
        ycol[j] = c.col(j);
        acol[j] = c.acol(j);
        yi[j] = ycol[j][i];
        ci[j] = 15.0 / 8.0 - 0.25 * acol[j][i];
    }
    double s = 0.0;
    for (std::size_t k = k0; k < k1; ++k) {
        double prod = 1.0;
        for (int j = 0; j < D; ++j) {
            const double t = std::abs(yi[j] - ycol[j][k]);
            prod *= ci[j] - 0.25 * acol[j][k] + t * (0.5 * t - 0.75);
        }
        s += prod;
    }
    return s;
}

double pair_row_sum_generic(const Columns& c, std::size_t i, std::size_t k0, std::size_t k1) {
    double s = 0.0;
    for (std::size_t k = k0; k < k1; ++k) {
        double prod = 1.0;
        for (int j = 0; j < c.d; ++j) {
            const double* yj = c.col(j);
            const double* aj = c.acol(j);
            const double t = std::abs(yj[i] - yj[k]);
            prod *= 15.0 / 8.0 - 0.25 * aj[i] - 0.25 * aj[k] + t * (0.5 * t - 0.75);
        }
        s += prod;
    }
    return s;
}

double row_sum_dispatch(const Columns& c, std::size_t i, std::size_t k0, std::size_t k1) {
    switch (c.d) {
        case 1: return pair_row_sum<1>(c, i, k0, k1);
        case 2: return pair_row_sum<2>(c, i, k0, k1);
        case 3: return pair_row_sum<3>(c, i, k0, k1);
        case 4: return pair_row_sum<4>(c, i, k0, k1);
        case 5: return pair_row_sum<5>(c, i, k0, k1);
        case 6: return pair_row_sum<6>(c, i, k0, k1);
        default: return pair_row_sum_generic(c, i, k0, k1);
    }
}

double kernel_value(std::span<const double> u, std::span<const double> v) {
    double prod = 1.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double t = std::abs(u[j] - v[j]);
        prod *= 15.0 / 8.0 - 0.25 * std::abs(u[j] - 0.5) - 0.25 * std::abs(v[j] - 0.5) +
                t * (0.5 * t - 0.75);
    }
    return prod;
}

double g0_value(std::span<const double> z) {
    double prod = 1.0;
    for (double zj : z) {
        const double a = std::abs(zj - 0.5);
        prod *= 5.0 / 3.0 - 0.25 * a - 0.25 * a * a;
    }
    return prod;
}

void require_nonempty(const UnitPointSet& pts) {
    if (pts.size() == 0) {
        throw std::invalid_argument("discrepancy: empty point set");
    }
    if (pts.dim < 1) {
        throw std::invalid_argument("discrepancy: dimension must be >= 1");
    }
}

// Solve G x = g for a small SPD system; returns false if the Cholesky
// factorization breaks down.
bool solve_spd(std::vector<double>& G, std::vector<double>& x, int m) {
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = G[static_cast<std::size_t>(i) * m + j];
            for (int k = 0; k < j; ++k) {
                s -= G[static_cast<std::size_t>(i) * m + k] * G[static_cast<std::size_t>(j) * m + k];
            }
            if (i == j) {
                if (s <= 0.0) return false;
                G[static_cast<std::size_t>(i) * m + j] = std::sqrt(s);
            } else {
                G[static_cast<std::size_t>(i) * m + j] = s / G[static_cast<std::size_t>(j) * m + j];
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= G[static_cast<std::size_t>(i) * m + k] * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / G[static_cast<std::size_t>(i) * m + i];
    }
    for (int i = m - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < m; ++k) s -= G[static_cast<std::size_t>(k) * m + i] * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / G[static_cast<std::size_t>(i) * m + i];
    }
    return true;
}

}  // namespace

double mixture_discrepancy_squared(const UnitPointSet& pts) {
    require_nonempty(pts);
    const std::size_t n = pts.size();
    const int d = pts.dim;
    const Columns cols = to_columns(pts);

    NeumaierSum single;
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (int j = 0; j < d; ++j) {
            const double a = cols.acol(j)[i];
            prod *= 5.0 / 3.0 - 0.25 * a - 0.25 * a * a;
        }
        single.add(prod);
    }

    // Diagonal of the pairwise sum: t = 0.
    NeumaierSum diag;
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (int j = 0; j < d; ++j) prod *= 15.0 / 8.0 - 0.5 * cols.acol(j)[i];
        diag.add(prod);
    }

    // Strict upper triangle, row-chunked. Each chunk owns a result slot, so
    // the reduction order is fixed no matter how chunks are scheduled.
    const std::size_t chunk_rows = 64;
    const std::size_t num_chunks = (n + chunk_rows - 1) / chunk_rows;
    std::vector<double> chunk_sums(num_chunks, 0.0);
    parallel_chunks(n, chunk_rows, [&](std::size_t b, std::size_t e, std::size_t ci) {
        NeumaierSum local;
        for (std::size_t i = b; i < e; ++i) {
            if (i + 1 < n) local.add(row_sum_dispatch(cols, i, i + 1, n));
        }
        chunk_sums[ci] = local.value();
    });
    NeumaierSum upper;
    for (double v : chunk_sums) upper.add(v);

    const double dn = static_cast<double>(n);
    const double term1 = std::pow(19.0 / 12.0, d);
    const double term2 = 2.0 / dn * single.value();
    const double term3 = (2.0 * upper.value() + diag.value()) / (dn * dn);
    return term1 - term2 + term3;
}

double mixture_discrepancy(const UnitPointSet& pts) {
    return std::sqrt(std::max(0.0, mixture_discrepancy_squared(pts)));
}

double mixture_discrepancy_lower_bound(const UnitPointSet& pts) {
    require_nonempty(pts);
    const std::size_t n = pts.size();
    const int d = pts.dim;

    std::vector<std::vector<double>> probes;
    probes.emplace_back(static_cast<std::size_t>(d), 0.5);

    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    std::vector<double> sq(static_cast<std::size_t>(d), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            const double v = pts.at(i, static_cast<int>(j));
            mean[static_cast<std::size_t>(j)] += v;
            sq[static_cast<std::size_t>(j)] += v * v;
        }
    }
    std::vector<double> sd(static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        mean[static_cast<std::size_t>(j)] /= static_cast<double>(n);
        const double var = sq[static_cast<std::size_t>(j)] / static_cast<double>(n) -
                           mean[static_cast<std::size_t>(j)] * mean[static_cast<std::size_t>(j)];
        sd[static_cast<std::size_t>(j)] = std::sqrt(std::max(0.0, var));
    }
    probes.push_back(mean);
    for (int j = 0; j < d; ++j) {
        for (double off : {-0.25, 0.25}) {
            auto z = std::vector<double>(static_cast<std::size_t>(d), 0.5);
            z[static_cast<std::size_t>(j)] += off;
            probes.push_back(std::move(z));
        }
    }
    for (double dir : {-1.0, 1.0}) {
        std::vector<double> z(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            z[static_cast<std::size_t>(j)] = std::clamp(
                mean[static_cast<std::size_t>(j)] + dir * sd[static_cast<std::size_t>(j)], 0.0, 1.0);
        }
        probes.push_back(std::move(z));
    }

    const int m = static_cast<int>(probes.size());
    std::vector<double> gap(static_cast<std::size_t>(m), 0.0);
    const std::size_t chunk = 65536;
    const std::size_t num_chunks = (n + chunk - 1) / chunk;
    std::vector<double> partials(num_chunks * static_cast<std::size_t>(m), 0.0);
    parallel_chunks(n, chunk, [&](std::size_t b, std::size_t e, std::size_t ci) {
        for (int p = 0; p < m; ++p) {
            const std::span<const double> z(probes[static_cast<std::size_t>(p)]);
            NeumaierSum s;
            for (std::size_t i = b; i < e; ++i) {
                const std::span<const double> yi(&pts.pts[i * static_cast<std::size_t>(d)],
                                                 static_cast<std::size_t>(d));
                s.add(kernel_value(yi, z));
            }
            partials[ci * static_cast<std::size_t>(m) + static_cast<std::size_t>(p)] = s.value();
        }
    });
    for (int p = 0; p < m; ++p) {
        NeumaierSum s;
        for (std::size_t ci = 0; ci < num_chunks; ++ci) {
            s.add(partials[ci * static_cast<std::size_t>(m) + static_cast<std::size_t>(p)]);
        }
        gap[static_cast<std::size_t>(p)] =
            s.value() / static_cast<double>(n) - g0_value(probes[static_cast<std::size_t>(p)]);
    }

    std::vector<double> gram(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            gram[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] =
                kernel_value(probes[static_cast<std::size_t>(i)], probes[static_cast<std::size_t>(j)]);
        }
        gram[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)] *=
            1.0 + 1e-9;
    }
    std::vector<double> coef = gap;
    if (!solve_spd(gram, coef, m)) return 0.0;
    double lb2 = 0.0;
    for (int i = 0; i < m; ++i) lb2 += coef[static_cast<std::size_t>(i)] * gap[static_cast<std::size_t>(i)];
    if (!(lb2 > 0.0)) return 0.0;
    // Shave a hair so floating point in the projection cannot push the
    // bound past the true value.
    return std::sqrt(lb2) * (1.0 - 1e-6);
}

// ---- star discrepancy -------------------------------------------------

namespace {

struct CriticalGrid {
    int d = 0;
    std::vector<std::vector<double>> axis;  // sorted unique coords + 1.0
};

CriticalGrid critical_grid(const UnitPointSet& pts) {
    CriticalGrid g;
    g.d = pts.dim;
    g.axis.resize(static_cast<std::size_t>(pts.dim));
    for (int j = 0; j < pts.dim; ++j) {
        auto& ax = g.axis[static_cast<std::size_t>(j)];
        ax.reserve(pts.size() + 1);
        for (std::size_t i = 0; i < pts.size(); ++i) ax.push_back(pts.at(i, j));
        ax.push_back(1.0);
        std::sort(ax.begin(), ax.end());
        ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    }
    return g;
}

// Column-major evaluator for the heuristic, fused and branchless so the
// counting loop vectorizes. The closed-box limit "y <= v when v < 1, else
// y < 1" becomes y <= w with w = nextafter(1, 0) on saturated axes.
struct BoxCounter {
    std::size_t n = 0;
    int d = 0;
    std::vector<double> cols;

    explicit BoxCounter(const UnitPointSet& pts)
        : n(pts.size()), d(pts.dim), cols(n * static_cast<std::size_t>(d)) {
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                cols[static_cast<std::size_t>(j) * n + i] = pts.at(i, j);
            }
        }
    }

    template <int D>
    void count_t(const double* v, const double* w, std::uint64_t& strict,
                 std::uint64_t& closed) const {
        const double* col[D];
        for (int j = 0; j < D; ++j) col[j] = cols.data() + static_cast<std::size_t>(j) * n;
        std::uint64_t s_total = 0;
        std::uint64_t c_total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned s = 1;
            unsigned c = 1;
            for (int j = 0; j < D; ++j) {
                const double x = col[j][i];
                s &= static_cast<unsigned>(x < v[j]);
                c &= static_cast<unsigned>(x <= w[j]);
            }
            s_total += s;
            c_total += c;
        }
        strict = s_total;
        closed = c_total;
    }

    void count_generic(const double* v, const double* w, std::uint64_t& strict,
                       std::uint64_t& closed) const {
        std::uint64_t s_total = 0;
        std::uint64_t c_total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned s = 1;
            unsigned c = 1;
            for (int j = 0; j < d; ++j) {
                const double x = cols[static_cast<std::size_t>(j) * n + i];
                s &= static_cast<unsigned>(x < v[j]);
                c &= static_cast<unsigned>(x <= w[j]);
            }
            s_total += s;
            c_total += c;
        }
        strict = s_total;
        closed = c_total;
    }

    double objective(const double* v) const {
        double w[64];
        for (int j = 0; j < d; ++j) {
            w[j] = v[j] < 1.0 ? v[j] : std::nextafter(1.0, 0.0);
        }
        std::uint64_t strict = 0;
        std::uint64_t closed = 0;
        switch (d) {
            case 1: count_t<1>(v, w, strict, closed); break;
            case 2: count_t<2>(v, w, strict, closed); break;
            case 3: count_t<3>(v, w, strict, closed); break;
            case 4: count_t<4>(v, w, strict, closed); break;
            case 5: count_t<5>(v, w, strict, closed); break;
            case 6: count_t<6>(v, w, strict, closed); break;
            default: count_generic(v, w, strict, closed); break;
        }
        double vol = 1.0;
        for (int j = 0; j < d; ++j) vol *= v[j];
        const double dn = static_cast<double>(n);
        return std::max(vol - static_cast<double>(strict) / dn,
                        static_cast<double>(closed) / dn - vol);
    }
};


}  // namespace

double star_exact_work(const UnitPointSet& pts) {
    const CriticalGrid g = critical_grid(pts);
    double nodes = 1.0;
    for (const auto& ax : g.axis) nodes *= static_cast<double>(ax.size());
    return nodes * static_cast<double>(pts.size());
}

StarDiscrepancyEstimate star_discrepancy_exact(const UnitPointSet& pts, double work_budget) {
    require_nonempty(pts);
    const CriticalGrid g = critical_grid(pts);
    double nodes = 1.0;
    for (const auto& ax : g.axis) nodes *= static_cast<double>(ax.size());
    if (nodes * static_cast<double>(pts.size()) > work_budget) {
        throw std::runtime_error(
            "star_discrepancy_exact: work budget exceeded, use the heuristic");
    }
    const int d = pts.dim;
    const BoxCounter counter(pts);
    std::vector<std::size_t> ix(static_cast<std::size_t>(d), 0);
    std::vector<double> v(static_cast<std::size_t>(d));
    StarDiscrepancyEstimate out;
    out.is_exact = true;
    for (;;) {
        for (int j = 0; j < d; ++j) {
            v[static_cast<std::size_t>(j)] = g.axis[static_cast<std::size_t>(j)][ix[static_cast<std::size_t>(j)]];
        }
        out.value = std::max(out.value, counter.objective(v.data()));
        ++out.iterations;
        int j = 0;
        while (j < d) {
            if (++ix[static_cast<std::size_t>(j)] < g.axis[static_cast<std::size_t>(j)].size()) break;
            ix[static_cast<std::size_t>(j)] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return out;
}

StarDiscrepancyEstimate star_discrepancy_heuristic(const UnitPointSet& pts,
                                                   const StarHeuristicConfig& cfg) {
    require_nonempty(pts);
    const CriticalGrid g = critical_grid(pts);
    const BoxCounter counter(pts);
    const int d = pts.dim;
    const int restarts = std::max(1, cfg.restarts);
    const int steps = std::max(0, cfg.steps);
    // Decay schedule runs the acceptance window from threshold_init down to
    // effectively zero over the step budget.
    const double decay = steps > 0 ? std::pow(1e-6, 1.0 / static_cast<double>(steps)) : 1.0;

    std::vector<double> best_per_restart(static_cast<std::size_t>(restarts), 0.0);
    std::vector<std::uint64_t> evals_per_restart(static_cast<std::size_t>(restarts), 0);
    std::atomic<bool> stop{false};

    parallel_chunks(static_cast<std::size_t>(restarts), 1,
                    [&](std::size_t b, std::size_t, std::size_t) {
        const std::size_t r = b;
        if (stop.load(std::memory_order_relaxed) &&
            cfg.stop_above < std::numeric_limits<double>::infinity()) {
            return;
        }
        std::mt19937_64 rng(derive_seed(cfg.seed, 0x5741 + r));
        std::vector<std::size_t> ix(static_cast<std::size_t>(d));
        std::vector<double> v(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            const auto& ax = g.axis[static_cast<std::size_t>(j)];
            ix[static_cast<std::size_t>(j)] =
                std::uniform_int_distribution<std::size_t>(0, ax.size() - 1)(rng);
            v[static_cast<std::size_t>(j)] = ax[ix[static_cast<std::size_t>(j)]];
        }
        double cur = counter.objective(v.data());
        double best = cur;
        std::uint64_t evals = 1;
        double threshold = cfg.threshold_init;
        for (int t = 0; t < steps; ++t, threshold *= decay) {
            if (best > cfg.stop_above) break;
            const int j = std::uniform_int_distribution<int>(0, d - 1)(rng);
            const auto& ax = g.axis[static_cast<std::size_t>(j)];
            int delta = std::uniform_int_distribution<int>(1, 3)(rng);
            if (std::uniform_int_distribution<int>(0, 1)(rng)) delta = -delta;
            const auto old_ix = ix[static_cast<std::size_t>(j)];
            const std::int64_t moved = std::clamp<std::int64_t>(
                static_cast<std::int64_t>(old_ix) + delta, 0,
                static_cast<std::int64_t>(ax.size()) - 1);
            if (static_cast<std::size_t>(moved) == old_ix) continue;
            ix[static_cast<std::size_t>(j)] = static_cast<std::size_t>(moved);
            v[static_cast<std::size_t>(j)] = ax[static_cast<std::size_t>(moved)];
            const double cand = counter.objective(v.data());
            ++evals;
            best = std::max(best, cand);
            if (cand > cur - threshold) {
                cur = cand;
            } else {
                ix[static_cast<std::size_t>(j)] = old_ix;
                v[static_cast<std::size_t>(j)] = ax[old_ix];
            }
        }
        best_per_restart[r] = best;
        evals_per_restart[r] = evals;
        if (best > cfg.stop_above) stop.store(true, std::memory_order_relaxed);
    });

    StarDiscrepancyEstimate out;
    out.is_exact = false;
    for (int r = 0; r < restarts; ++r) {
        out.value = std::max(out.value, best_per_restart[static_cast<std::size_t>(r)]);
        out.iterations += evals_per_restart[static_cast<std::size_t>(r)];
    }
    return out;
}

StarDiscrepancyEstimate star_discrepancy_heuristic(const UnitPointSet& pts, int iterations,
                                                   std::uint64_t seed) {
    StarHeuristicConfig cfg;
    cfg.steps = iterations;
    cfg.seed = seed;
    return star_discrepancy_heuristic(pts, cfg);
}

}  // namespace seqpart
