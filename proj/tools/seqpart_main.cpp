// Command-line front end: sampling, estimation, evaluation, benchmarks,
// parameter sweeps, and the randomized invariance checks.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqpart/discrepancy.hpp"
#include "seqpart/engine.hpp"
#include "seqpart/evaluation.hpp"
#include "seqpart/io.hpp"
#include "seqpart/models.hpp"
#include "seqpart/moments.hpp"
#include "seqpart/parallel.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace seqpart;

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<std::uint64_t> parse_count_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    for (double v : parse_double_list(csv)) {
        out.push_back(static_cast<std::uint64_t>(std::llround(v)));
    }
    return out;
}

struct SpecArgs {
    std::string preset;
    std::string spec_path;
    int dim = 2;

    ModelSpec resolve() const {
        if (!spec_path.empty()) return read_model_spec(spec_path);
        if (preset.empty()) throw std::runtime_error("need --preset or --spec");
        return preset_spec(preset, dim);
    }
    std::string name() const { return spec_path.empty() ? preset : spec_path; }
};

struct EngineArgs {
    std::string method = "dsp-mix";
    double theta = 0.1;
    int m = 10;
    double eps1 = 0.1, eps2 = 0.1, eps3 = 0.1;
    std::uint32_t n_min = 10;
    int max_depth = 50;
    std::uint64_t max_leaves = 1000000;
    int workers = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--method", method, "dsp | dsp-mix | msp")
            ->check(CLI::IsMember({"dsp", "dsp-mix", "msp"}));
        cmd->add_option("--theta", theta, "discrepancy threshold scale (default 0.1)");
        cmd->add_option("-m,--m", m, "candidate split count per axis (default 10)")
            ->check(CLI::Range(2, 1000000));
        cmd->add_option("--eps1", eps1, "moment mean tolerance (default 0.1)");
        cmd->add_option("--eps2", eps2, "moment variance tolerance (default 0.1)");
        cmd->add_option("--eps3", eps3, "moment covariance tolerance (default 0.1)");
        cmd->add_option("--n-min", n_min, "leaf termination floor (default 10)")
            ->check(CLI::Range(1u, 1000000000u));
        cmd->add_option("--max-depth", max_depth, "maximum split depth (default 50)")
            ->check(CLI::Range(1, 10000));
        cmd->add_option("--max-leaves", max_leaves, "leaf budget (default 1e6)");
        cmd->add_option("--workers", workers, "worker threads (default: hardware)");
    }

    UniformityCriterion criterion() const {
        UniformityCriterion c;
        c.kind = method == "dsp"      ? CriterionKind::star
                 : method == "msp"    ? CriterionKind::moment
                                      : CriterionKind::mixture;
        c.theta = theta;
        c.tol = {eps1, eps2, eps3};
        return c;
    }
    EngineConfig engine(std::uint64_t seed) const {
        EngineConfig cfg;
        cfg.m = m;
        cfg.n_min = n_min;
        cfg.max_depth = max_depth;
        cfg.max_leaves = max_leaves;
        cfg.seed = seed;
        return cfg;
    }
    void apply_workers() const {
        if (workers > 0) set_worker_count(workers);
    }
};

RunManifest make_manifest(const std::string& command, const std::string& spec,
                          const EngineArgs& eng, std::uint64_t n, std::uint64_t seed) {
    RunManifest mf;
    mf.command = command;
    mf.spec = spec;
    mf.method = eng.method;
    mf.theta = eng.theta;
    mf.m = eng.m;
    mf.eps1 = eng.eps1;
    mf.eps2 = eng.eps2;
    mf.eps3 = eng.eps3;
    mf.n_min = eng.n_min;
    mf.max_depth = eng.max_depth;
    mf.n = n;
    mf.seed = seed;
    mf.workers = worker_count();
    mf.tool_version = kVersion;
    return mf;
}

int cmd_sample(const SpecArgs& spec_args, std::uint64_t n, std::uint64_t seed,
               const std::string& out_path, const std::string& format_name,
               const EngineArgs& eng) {
    eng.apply_workers();
    const ModelSpec spec = spec_args.resolve();
    const SampleSet samples = draw_samples(spec, n, seed);
    SampleFormat format = sample_format_for_path(out_path);
    if (format_name == "csv") format = SampleFormat::csv;
    if (format_name == "bin") format = SampleFormat::binary;
    write_samples(out_path, samples, format);
    RunManifest mf = make_manifest("sample", spec_args.name(), eng, n, seed);
    write_manifest(out_path, mf);
    std::cout << mf.to_json() << '\n';
    std::cerr << "wrote " << samples.count() << " points (d=" << samples.dim() << ") to "
              << out_path << '\n';
    return 0;
}

int cmd_estimate(const std::string& in_path, const std::string& out_path, const EngineArgs& eng,
                 std::uint64_t seed, const std::string& domain_lo, const std::string& domain_hi) {
    eng.apply_workers();
    const SampleSet samples = read_samples(in_path);
    std::vector<double> lo(static_cast<std::size_t>(samples.dim()), 0.0);
    std::vector<double> hi(static_cast<std::size_t>(samples.dim()), 1.0);
    if (!domain_lo.empty()) lo = parse_double_list(domain_lo);
    if (!domain_hi.empty()) hi = parse_double_list(domain_hi);
    const AxisBox domain{lo, hi};

    const auto t0 = std::chrono::steady_clock::now();
    const PiecewiseConstantDensity pcd =
        estimate(samples, domain, eng.criterion(), eng.engine(seed));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    RunManifest mf = make_manifest("estimate", in_path, eng, samples.count(), seed);
    write_partition(out_path, pcd, eng.method, mf);
    write_manifest(out_path, mf);
    std::cout << mf.to_json() << '\n';
    std::cout << "leaves=" << pcd.leaves().size() << " wall_time_s=" << fmt_g17(secs)
              << (pcd.truncated() ? " truncated=1" : "") << '\n';
    return 0;
}

int cmd_evaluate(const std::string& partition_path, const SpecArgs& spec_args, bool renormalize,
                 std::uint64_t mc_samples, std::uint64_t mc_seed) {
    const PartitionFile part = read_partition(partition_path);
    const ModelSpec spec = spec_args.resolve();
    double z = 1.0;
    if (renormalize) z = estimate_normalizer(spec, mc_samples, mc_seed).z;
    const ReferenceDensity ref(spec, z);
    std::cout << fmt_g17(l2_relative_error(part.density, ref)) << '\n';
    return 0;
}

struct TableDef {
    std::string preset;
    std::vector<int> dims;
};

TableDef table_def(int table) {
    switch (table) {
        case 1: return {"gauss2d", {2}};
        case 2: return {"gaussmix2d", {2}};
        case 3: return {"betamix2d", {2}};
        case 4: return {"gaussmixNd", {2, 3, 4, 5, 6}};
        case 5: return {"betamixNd", {2, 3, 4, 5, 6}};
        default: throw std::runtime_error("table must be 1..5");
    }
}

int cmd_bench(int table, const SpecArgs& spec_args_in, const std::string& n_list,
              const std::string& methods_csv, int seeds, std::uint64_t seed_base,
              const std::string& dims_csv, const std::string& out_path, const EngineArgs& eng,
              bool renormalize) {
    eng.apply_workers();
    SpecArgs spec_args = spec_args_in;
    std::vector<int> dims = {spec_args.dim};
    if (table > 0) {
        const TableDef def = table_def(table);
        spec_args.preset = def.preset;
        spec_args.spec_path.clear();
        dims = def.dims;
    }
    if (!dims_csv.empty()) {
        dims.clear();
        for (std::uint64_t v : parse_count_list(dims_csv)) dims.push_back(static_cast<int>(v));
    }
    std::vector<std::string> methods;
    {
        std::stringstream ss(methods_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) methods.push_back(item);
        }
    }
    const std::vector<std::uint64_t> ns = parse_count_list(n_list);
    if (ns.empty()) throw std::runtime_error("bench: need at least one N");

    BenchParams params;
    params.criterion = eng.criterion();
    params.engine = eng.engine(0);
    params.renormalize_reference = renormalize;

    std::vector<BenchRecord> records;
    for (int d : dims) {
        spec_args.dim = d;
        const ModelSpec spec = spec_args.resolve();
        std::string name = spec_args.name();
        if (spec_args.spec_path.empty() &&
            (spec_args.preset == "gaussmixNd" || spec_args.preset == "betamixNd")) {
            name += "/d" + std::to_string(d);
        }
        for (std::uint64_t n : ns) {
            for (const auto& method_name : methods) {
                const Method method = method_from_string(method_name);
                for (int s = 0; s < seeds; ++s) {
                    records.push_back(run_benchmark(spec, name, method, n,
                                                    seed_base + static_cast<std::uint64_t>(s),
                                                    params));
                    write_bench_csv_row(std::cerr, records.back());
                }
            }
        }
    }
    write_bench_table(std::cout, records);
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error(out_path + ": cannot open for writing");
        write_bench_csv_header(os);
        for (const auto& rec : records) write_bench_csv_row(os, rec);
        RunManifest mf = make_manifest("bench", spec_args.name(), eng,
                                       ns.empty() ? 0 : ns.front(), seed_base);
        write_manifest(out_path, mf);
    }
    return 0;
}

int cmd_sweep(const std::string& param_name, const std::string& grid_csv,
              const SpecArgs& spec_args, std::uint64_t n, std::uint64_t seed,
              const std::string& out_path, const EngineArgs& eng, bool renormalize) {
    eng.apply_workers();
    SweepParameter param = SweepParameter::theta;
    if (param_name == "eps") param = SweepParameter::eps;
    else if (param_name == "N") param = SweepParameter::n;
    else if (param_name != "theta") throw std::runtime_error("--param must be theta|eps|N");

    const std::vector<double> grid = parse_double_list(grid_csv);
    BenchParams params;
    params.criterion = eng.criterion();
    params.engine = eng.engine(seed);
    params.renormalize_reference = renormalize;
    const ModelSpec spec = spec_args.resolve();
    const auto records = sweep(param, grid, spec, spec_args.name(),
                               method_from_string(eng.method), n, seed, params);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error(out_path + ": cannot open for writing");
        os = &file;
    }
    write_bench_csv_header(*os);
    for (const auto& rec : records) write_bench_csv_row(*os, rec);
    if (!out_path.empty()) {
        write_bench_table(std::cout, records);
        write_manifest(out_path, make_manifest("sweep", spec_args.name(), eng, n, seed));
    }
    return 0;
}

// ---- randomized invariance report --------------------------------------

UnitPointSet random_unit_set(std::mt19937_64& rng, std::size_t n, int d) {
    UnitPointSet pts;
    pts.dim = d;
    pts.pts.resize(n * static_cast<std::size_t>(d));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto& v : pts.pts) v = uni(rng);
    return pts;
}

int cmd_check_invariance(int trials, std::uint64_t seed) {
    if (trials == 0) {
        std::cout << "WARNING: 0 trials requested, invariance checks are vacuous\n";
        std::cout << "PASS (vacuous)\n";
        return 0;
    }
    std::mt19937_64 rng(seed);
    int failures = 0;
    const double tol = 1e-12;

    double worst_mix = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int d = std::uniform_int_distribution<int>(1, 6)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 64)(rng);
        const UnitPointSet pts = random_unit_set(rng, n, d);
        const double base = mixture_discrepancy(pts);
        const int j = std::uniform_int_distribution<int>(0, d - 1)(rng);
        double dev = std::abs(mixture_discrepancy(reflect_unit_axis(pts, j)) - base);
        if (d >= 2) {
            int j2 = std::uniform_int_distribution<int>(0, d - 2)(rng);
            if (j2 >= j) ++j2;
            dev = std::max(dev, std::abs(mixture_discrepancy(rotate_unit_plane(pts, j, j2)) - base));
        }
        std::vector<int> perm(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) perm[static_cast<std::size_t>(k)] = k;
        std::shuffle(perm.begin(), perm.end(), rng);
        dev = std::max(dev, std::abs(mixture_discrepancy(permute_axes(pts, perm)) - base));
        worst_mix = std::max(worst_mix, dev / std::max(1.0, base));
    }
    std::cout << (worst_mix <= tol ? "PASS" : "FAIL")
              << " mixture reflection/rotation/permutation invariance: max relative deviation = "
              << worst_mix << '\n';
    if (worst_mix > tol) ++failures;

    int moment_mismatches = 0;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        const int d = std::uniform_int_distribution<int>(2, 5)(rng);
        std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        const int ri = std::uniform_int_distribution<int>(0, d - 1)(rng);
        int rj = std::uniform_int_distribution<int>(0, d - 2)(rng);
        if (rj >= ri) ++rj;
        for (int j = 0; j < d; ++j) {
            lo[static_cast<std::size_t>(j)] = -2.0 + 3.0 * uni(rng);
            hi[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + 0.1 + 2.0 * uni(rng);
        }
        // Rotation needs matching extents on the rotated pair.
        hi[static_cast<std::size_t>(rj)] =
            lo[static_cast<std::size_t>(rj)] +
            (hi[static_cast<std::size_t>(ri)] - lo[static_cast<std::size_t>(ri)]);
        const AxisBox box{lo, hi};
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 128)(rng);
        std::vector<double> data(n * static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                data[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                    box.lo(j) + uni(rng) * box.width(j);
            }
        }
        MomentTolerances tols{0.02 + 0.3 * uni(rng), 0.02 + 0.3 * uni(rng), 0.02 + 0.3 * uni(rng)};
        const SampleSet base_set(d, data);
        const bool base_outcome = moment_uniformity_test(full_view(base_set), box, tols);

        std::vector<double> reflected = data;
        for (std::size_t i = 0; i < n; ++i) {
            auto& v = reflected[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(ri)];
            v = box.lo(ri) + box.hi(ri) - v;
        }
        const SampleSet refl_set(d, reflected);
        if (moment_uniformity_test(full_view(refl_set), box, tols) != base_outcome) {
            ++moment_mismatches;
        }

        std::vector<double> rotated = data;
        for (std::size_t i = 0; i < n; ++i) {
            double* row = rotated.data() + i * static_cast<std::size_t>(d);
            const double yi = row[ri], yj = row[rj];
            row[ri] = box.center(ri) + (yj - box.center(rj));
            row[rj] = box.center(rj) - (yi - box.center(ri));
        }
        const SampleSet rot_set(d, rotated);
        if (moment_uniformity_test(full_view(rot_set), box, tols) != base_outcome) {
            ++moment_mismatches;
        }
    }
    std::cout << (moment_mismatches == 0 ? "PASS" : "FAIL")
              << " moment test reflection/rotation invariance: " << moment_mismatches
              << " outcome changes in " << trials << " trials\n";
    if (moment_mismatches > 0) ++failures;

    bool star_witness = false;
    double witness_gap = 0.0;
    for (int t = 0; t < std::max(trials, 200) && !star_witness; ++t) {
        const UnitPointSet pts = random_unit_set(rng, 3, 2);
        const double a = star_discrepancy_exact(pts).value;
        const double b = star_discrepancy_exact(reflect_unit_axis(pts, 0)).value;
        if (std::abs(a - b) > 1e-9) {
            star_witness = true;
            witness_gap = std::abs(a - b);
        }
    }
    std::cout << (star_witness ? "PASS" : "FAIL")
              << " star discrepancy reflection non-invariance witness"
              << (star_witness ? " found, |D* gap| = " + fmt_g17(witness_gap) : " not found")
              << '\n';
    if (!star_witness) ++failures;

    if (failures > 0) {
        std::cout << failures << " invariance suite(s) failed\n";
        return 3;
    }
    std::cout << "all invariance suites passed (" << trials << " trials, seed " << seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive piecewise-constant density estimation on binary sequential "
                 "partitions (DSP / DSP-mix / MSP)"};
    app.set_version_flag("--version", std::string("seqpart ") + kVersion);
    app.require_subcommand(1);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Draw reference-model samples to a file");
    SpecArgs sample_spec;
    EngineArgs sample_eng;
    std::uint64_t sample_n = 0, sample_seed = 0;
    std::string sample_out, sample_format;
    sample_cmd->add_option("--preset", sample_spec.preset, "preset model name");
    sample_cmd->add_option("--spec", sample_spec.spec_path, "model spec JSON path");
    sample_cmd->add_option("-d,--dim", sample_spec.dim, "dimension for Nd presets");
    sample_cmd->add_option("-N,--count", sample_n, "number of samples")
        ->required()
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{4000000000}));
    sample_cmd->add_option("--seed", sample_seed, "RNG seed");
    sample_cmd->add_option("-o,--out", sample_out, "output path (.csv, .bin)")->required();
    sample_cmd->add_option("--format", sample_format, "csv | bin (default by extension)")
        ->check(CLI::IsMember({"csv", "bin"}));
    sample_cmd->add_option("--workers", sample_eng.workers, "worker threads");

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Fit a partition density to a sample file");
    EngineArgs est_eng;
    std::string est_in, est_out, est_lo, est_hi;
    std::uint64_t est_seed = 0;
    est_cmd->add_option("-i,--in", est_in, "sample file")->required();
    est_cmd->add_option("-o,--out", est_out, "partition JSON output")->required();
    est_cmd->add_option("--domain-lo", est_lo, "domain lower corner, comma separated (default 0s)");
    est_cmd->add_option("--domain-hi", est_hi, "domain upper corner, comma separated (default 1s)");
    est_cmd->add_option("--seed", est_seed, "seed for the star heuristic");
    est_eng.add_flags(est_cmd);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "L2 relative error of a partition file");
    SpecArgs eval_spec;
    std::string eval_in;
    bool eval_renorm = false;
    std::uint64_t eval_mc = 1000000, eval_mc_seed = 20240901;
    eval_cmd->add_option("-i,--in", eval_in, "partition JSON")->required();
    eval_cmd->add_option("--preset", eval_spec.preset, "reference preset");
    eval_cmd->add_option("--spec", eval_spec.spec_path, "reference spec JSON path");
    eval_cmd->add_option("-d,--dim", eval_spec.dim, "dimension for Nd presets");
    eval_cmd->add_flag("--renormalize", eval_renorm,
                       "divide the reference by the Monte Carlo truncated mass");
    eval_cmd->add_option("--mc-samples", eval_mc, "draws for the normalizer estimate");
    eval_cmd->add_option("--mc-seed", eval_mc_seed, "seed for the normalizer estimate");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run benchmark grids and emit CSV records");
    SpecArgs bench_spec;
    EngineArgs bench_eng;
    int bench_table = 0, bench_seeds = 5;
    std::uint64_t bench_seed_base = 1;
    std::string bench_n = "100000", bench_methods = "dsp,dsp-mix,msp", bench_dims, bench_out;
    bool bench_renorm = false;
    bench_cmd->add_option("--table", bench_table, "published table number 1..5")
        ->check(CLI::Range(1, 5));
    bench_cmd->add_option("--preset", bench_spec.preset, "preset model (alternative to --table)");
    bench_cmd->add_option("--spec", bench_spec.spec_path, "model spec JSON path");
    bench_cmd->add_option("-d,--dim", bench_spec.dim, "dimension for Nd presets");
    bench_cmd->add_option("--dims", bench_dims, "comma list of dimensions (tables 4-5)");
    bench_cmd->add_option("-N,--counts", bench_n, "comma list of sample sizes (default 1e5)");
    bench_cmd->add_option("--methods", bench_methods, "comma list from dsp,dsp-mix,msp");
    bench_cmd->add_option("--seeds", bench_seeds, "seeds per cell (default 5)")
        ->check(CLI::Range(1, 1000));
    bench_cmd->add_option("--seed-base", bench_seed_base, "first seed value (default 1)");
    bench_cmd->add_option("-o,--out", bench_out, "CSV output path");
    bench_cmd->add_flag("--renormalize", bench_renorm,
                        "evaluate against the renormalized truncated reference");
    bench_eng.add_flags(bench_cmd);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Benchmark along a parameter grid");
    SpecArgs sweep_spec;
    EngineArgs sweep_eng;
    std::string sweep_param = "theta", sweep_grid, sweep_out;
    std::uint64_t sweep_n = 100000, sweep_seed = 1;
    bool sweep_renorm = false;
    sweep_cmd->add_option("--param", sweep_param, "theta | eps | N")->required();
    sweep_cmd->add_option("--grid", sweep_grid, "comma list of grid values")->required();
    sweep_cmd->add_option("--preset", sweep_spec.preset, "preset model");
    sweep_cmd->add_option("--spec", sweep_spec.spec_path, "model spec JSON path");
    sweep_cmd->add_option("-d,--dim", sweep_spec.dim, "dimension for Nd presets");
    sweep_cmd->add_option("-N,--count", sweep_n, "sample size (fixed unless --param N)");
    sweep_cmd->add_option("--seed", sweep_seed, "RNG seed");
    sweep_cmd->add_option("-o,--out", sweep_out, "CSV output path (default stdout)");
    sweep_cmd->add_flag("--renormalize", sweep_renorm,
                        "evaluate against the renormalized truncated reference");
    sweep_eng.add_flags(sweep_cmd);

    // check-invariance
    auto* inv_cmd = app.add_subcommand("check-invariance",
                                       "Randomized reflection/rotation invariance report");
    int inv_trials = 200;
    std::uint64_t inv_seed = 7;
    inv_cmd->add_option("--trials", inv_trials, "trials per suite (default 200)")
        ->check(CLI::Range(0, 1000000));
    inv_cmd->add_option("--seed", inv_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sample_cmd->parsed()) {
            return cmd_sample(sample_spec, sample_n, sample_seed, sample_out, sample_format,
                              sample_eng);
        }
        if (est_cmd->parsed()) {
            return cmd_estimate(est_in, est_out, est_eng, est_seed, est_lo, est_hi);
        }
        if (eval_cmd->parsed()) {
            return cmd_evaluate(eval_in, eval_spec, eval_renorm, eval_mc, eval_mc_seed);
        }
        if (bench_cmd->parsed()) {
            return cmd_bench(bench_table, bench_spec, bench_n, bench_methods, bench_seeds,
                             bench_seed_base, bench_dims, bench_out, bench_eng, bench_renorm);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_param, sweep_grid, sweep_spec, sweep_n, sweep_seed, sweep_out,
                             sweep_eng, sweep_renorm);
        }
        if (inv_cmd->parsed()) {
            return cmd_check_invariance(inv_trials, inv_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
