#include "seqpart/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "seqpart/io.hpp"

namespace seqpart {

std::string to_string(Method m) {
    switch (m) {
        case Method::dsp: return "dsp";
        case Method::dsp_mix: return "dsp-mix";
        case Method::msp: return "msp";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "dsp") return Method::dsp;
    if (s == "dsp-mix" || s == "dspmix") return Method::dsp_mix;
    if (s == "msp") return Method::msp;
    throw std::invalid_argument("unknown method: " + s + " (expected dsp|dsp-mix|msp)");
}

double l2_relative_error(const PiecewiseConstantDensity& pcd, const ReferenceDensity& ref) {
    double num = 0.0;
    double den = 0.0;
    std::vector<double> center(static_cast<std::size_t>(pcd.domain().dim()));
    for (const auto& leaf : pcd.leaves()) {
        for (int j = 0; j < leaf.box.dim(); ++j) {
            center[static_cast<std::size_t>(j)] = leaf.box.center(j);
        }
        const double volume = leaf.box.volume();
        const double r = ref.pdf(center);
        const double diff = leaf.c - r;
        num += diff * diff * volume;
        den += r * r * volume;
    }
    if (den <= 0.0) {
        throw std::runtime_error("l2_relative_error: reference vanishes at every leaf center");
    }
    return std::sqrt(num / den);
}

namespace {

CriterionKind kind_for(Method m) {
    switch (m) {
        case Method::dsp: return CriterionKind::star;
        case Method::dsp_mix: return CriterionKind::mixture;
        case Method::msp: return CriterionKind::moment;
    }
    return CriterionKind::mixture;
}

}  // namespace

BenchRecord run_benchmark(const ModelSpec& spec, const std::string& spec_name, Method method,
                          std::uint64_t n, std::uint64_t seed, const BenchParams& params,
                          std::function<double()> clock) {
    if (!clock) {
        clock = []() {
            return std::chrono::duration<double>(
                       std::chrono::steady_clock::now().time_since_epoch())
                .count();
        };
    }
    const SampleSet samples = draw_samples(spec, n, seed);

    UniformityCriterion criterion = params.criterion;
    criterion.kind = kind_for(method);
    EngineConfig engine = params.engine;
    engine.seed = seed;

    const double t0 = clock();
    const PiecewiseConstantDensity pcd = estimate(samples, spec_domain(spec), criterion, engine);
    const double t1 = clock();

    double normalizer = 1.0;
    if (params.renormalize_reference) {
        normalizer = estimate_normalizer(spec, params.normalizer_mc_samples,
                                         params.normalizer_seed).z;
    }
    const ReferenceDensity ref(spec, normalizer);

    BenchRecord rec;
    rec.method = method;
    rec.spec_name = spec_name;
    rec.dim = spec_dim(spec);
    rec.n = n;
    rec.seed = seed;
    rec.error = l2_relative_error(pcd, ref);
    rec.wall_time_s = t1 - t0;
    rec.leaf_count = pcd.leaves().size();
    return rec;
}

std::vector<BenchRecord> sweep(SweepParameter parameter, const std::vector<double>& grid,
                               const ModelSpec& spec, const std::string& spec_name, Method method,
                               std::uint64_t n, std::uint64_t seed, const BenchParams& base) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<BenchRecord> out;
    out.reserve(grid.size());
    for (double v : grid) {
        BenchParams params = base;
        std::uint64_t run_n = n;
        switch (parameter) {
            case SweepParameter::theta:
                params.criterion.theta = v;
                break;
            case SweepParameter::eps:
                params.criterion.tol.eps1 = v;
                params.criterion.tol.eps2 = v;
                params.criterion.tol.eps3 = v;
                break;
            case SweepParameter::n:
                run_n = static_cast<std::uint64_t>(v);
                break;
        }
        out.push_back(run_benchmark(spec, spec_name, method, run_n, seed, params));
    }
    return out;
}

void write_bench_csv_header(std::ostream& os) {
    os << "method,spec,d,N,seed,error,wall_time_s,leaves\n";
}

void write_bench_csv_row(std::ostream& os, const BenchRecord& rec) {
    os << to_string(rec.method) << ',' << rec.spec_name << ',' << rec.dim << ',' << rec.n << ','
       << rec.seed << ',' << fmt_g17(rec.error) << ',' << fmt_g17(rec.wall_time_s) << ','
       << rec.leaf_count << '\n';
}

void write_bench_table(std::ostream& os, const std::vector<BenchRecord>& recs) {
    os << std::left << std::setw(8) << "method" << std::setw(12) << "spec" << std::right
       << std::setw(4) << "d" << std::setw(10) << "N" << std::setw(6) << "seed" << std::setw(12)
       << "error" << std::setw(12) << "time_s" << std::setw(9) << "leaves" << '\n';
    for (const auto& rec : recs) {
        os << std::left << std::setw(8) << to_string(rec.method) << std::setw(12) << rec.spec_name
           << std::right << std::setw(4) << rec.dim << std::setw(10) << rec.n << std::setw(6)
           << rec.seed << std::setw(12) << std::fixed << std::setprecision(4) << rec.error
           << std::setw(12) << std::setprecision(4) << rec.wall_time_s << std::setw(9)
           << rec.leaf_count << '\n';
    }
    os.unsetf(std::ios::fixed);
}

}  // namespace seqpart
