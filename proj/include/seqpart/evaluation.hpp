#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqpart/engine.hpp"
#include "seqpart/models.hpp"

namespace seqpart {

enum class Method { dsp, dsp_mix, msp };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct BenchRecord {
    Method method = Method::dsp_mix;
    std::string spec_name;
    int dim = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double error = 0.0;        // L2 relative error E2
    double wall_time_s = 0.0;  // estimate() call only
    std::uint64_t leaf_count = 0;
};

/// L2 relative error by leaf-center quadrature on the learned partition:
///   sqrt(sum (c_l - ref(x_c))^2 |leaf|) / sqrt(sum ref(x_c)^2 |leaf|).
/// Throws std::runtime_error when the reference vanishes at every center.
double l2_relative_error(const PiecewiseConstantDensity& pcd,
                         const ReferenceDensity& ref);

struct BenchParams {
    UniformityCriterion criterion{};
    EngineConfig engine{};
    // Compare against the raw mixture density (normalizer 1) as the
    // published tables do, or renormalize by the Monte Carlo truncated mass.
    bool renormalize_reference = false;
    std::uint64_t normalizer_mc_samples = 1000000;
    std::uint64_t normalizer_seed = 20240901;
};

/// Sample, estimate, evaluate; wall_time_s covers the estimate() call only.
/// The clock is injectable for the timing-isolation test.
BenchRecord run_benchmark(const ModelSpec& spec, const std::string& spec_name,
                          Method method, std::uint64_t n, std::uint64_t seed,
                          const BenchParams& params,
                          std::function<double()> clock = {});

enum class SweepParameter { theta, eps, n };

/// One benchmark per grid value, varying theta, the shared moment
/// tolerance, or the sample size.
std::vector<BenchRecord> sweep(SweepParameter parameter,
                               const std::vector<double>& grid,
                               const ModelSpec& spec, const std::string& spec_name,
                               Method method, std::uint64_t n, std::uint64_t seed,
                               const BenchParams& base);

void write_bench_csv_header(std::ostream& os);
void write_bench_csv_row(std::ostream& os, const BenchRecord& rec);
void write_bench_table(std::ostream& os, const std::vector<BenchRecord>& recs);

}  // namespace seqpart
