#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqpart/engine.hpp"
#include "seqpart/geometry.hpp"
#include "seqpart/models.hpp"

namespace seqpart {

/// Shortest-width formatting with 17 significant digits; round-trips
/// doubles exactly.
std::string fmt_g17(double v);

// ---- sample files ----------------------------------------------------
//
// CSV: one point per row, d float columns, optional header line.
// Binary: magic "DSP1", little-endian u32 d, u64 N, then N*d f64 row-major.

enum class SampleFormat { csv, binary };

/// Pick a format from the file extension: .bin/.dsp are binary, anything
/// else CSV.
SampleFormat sample_format_for_path(const std::string& path);

void write_samples(const std::string& path, const SampleSet& samples,
                   SampleFormat format);

/// Throws std::runtime_error with a line number on parse failures.
SampleSet read_samples(const std::string& path, SampleFormat format);
SampleSet read_samples(const std::string& path);

// ---- run manifest ----------------------------------------------------

struct RunManifest {
    std::string command;
    std::string spec;           // preset name or spec file path
    std::string method;
    double theta = 0.1;
    int m = 10;
    double eps1 = 0.1, eps2 = 0.1, eps3 = 0.1;
    std::uint32_t n_min = 10;
    int max_depth = 50;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string tool_version;

    std::string to_json() const;
};

/// Written next to every output file as <path>.manifest.json.
void write_manifest(const std::string& output_path, const RunManifest& manifest);

// ---- partition files -------------------------------------------------

struct PartitionFile {
    PiecewiseConstantDensity density;
    std::string method;
    RunManifest manifest;
};

/// JSON with fields {domain:{lo,hi}, total_n, truncated, method, params,
/// leaves:[{lo,hi,count,c}]}; numbers carry 17 significant digits so a
/// round trip is exact.
void write_partition(const std::string& path, const PiecewiseConstantDensity& pcd,
                     const std::string& method, const RunManifest& manifest);

PartitionFile read_partition(const std::string& path);

// ---- model spec files --------------------------------------------------
//
// JSON, either
//   {"type":"gaussian_mixture","weights":[...],"means":[[...]],
//    "covariances":[[[row],[row],...]],"domain":{"lo":[...],"hi":[...]}}
// or
//   {"type":"beta_mixture","weights":[...],
//    "components":[[[alpha,beta],... per axis], ...]}

ModelSpec read_model_spec(const std::string& path);
std::string model_spec_to_json(const ModelSpec& spec);

}  // namespace seqpart
