#include "seqpart/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace seqpart {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os) fail(path, "cannot open for writing");
    return os;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream is(path, mode);
    if (!is) fail(path, "cannot open for reading");
    return is;
}

void write_double_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += fmt_g17(values[i]);
    }
    out += ']';
}

}  // namespace

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SampleFormat sample_format_for_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos) {
        const std::string ext = path.substr(dot + 1);
        if (ext == "bin" || ext == "dsp") return SampleFormat::binary;
    }
    return SampleFormat::csv;
}

void write_samples(const std::string& path, const SampleSet& samples, SampleFormat format) {
    if (format == SampleFormat::csv) {
        auto os = open_out(path);
        std::string line;
        for (std::uint64_t i = 0; i < samples.count(); ++i) {
            line.clear();
            for (int j = 0; j < samples.dim(); ++j) {
                if (j) line += ',';
                line += fmt_g17(samples.at(i, j));
            }
            line += '\n';
            os << line;
        }
        return;
    }
    auto os = open_out(path, std::ios::out | std::ios::binary);
    os.write("DSP1", 4);
    const std::uint32_t d = static_cast<std::uint32_t>(samples.dim());
    const std::uint64_t n = samples.count();
    os.write(reinterpret_cast<const char*>(&d), sizeof(d));
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(samples.data().data()),
             static_cast<std::streamsize>(samples.data().size() * sizeof(double)));
    if (!os) fail(path, "write failed");
}

namespace {

SampleSet read_samples_csv(const std::string& path) {
    auto is = open_in(path);
    std::string line;
    std::vector<double> data;
    int dim = 0;
    std::uint64_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t at = 0;
        int fields = 0;
        bool parse_ok = true;
        const std::size_t row_start = data.size();
        while (at < line.size()) {
            std::size_t end = line.find(',', at);
            if (end == std::string::npos) end = line.size();
            double v = 0.0;
            const char* b = line.data() + at;
            const char* e = line.data() + end;
            while (b < e && (*b == ' ' || *b == '\t')) ++b;
            auto [ptr, ec] = std::from_chars(b, e, v);
            while (ptr < e && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
            if (ec != std::errc() || ptr != e) {
                parse_ok = false;
                break;
            }
            data.push_back(v);
            ++fields;
            at = end + 1;
        }
        if (!parse_ok) {
            if (first_data_line) {
                // Header line; drop any partial parse of it.
                data.resize(row_start);
                first_data_line = false;
                continue;
            }
            fail(path, "parse error on line " + std::to_string(line_no));
        }
        if (first_data_line) {
            dim = fields;
            first_data_line = false;
        } else if (dim == 0) {
            dim = fields;
        } else if (fields != dim) {
            fail(path, "line " + std::to_string(line_no) + " has " + std::to_string(fields) +
                           " fields, expected " + std::to_string(dim));
        }
    }
    if (dim == 0) fail(path, "no sample rows");
    return SampleSet(dim, std::move(data));
}

SampleSet read_samples_binary(const std::string& path) {
    auto is = open_in(path, std::ios::in | std::ios::binary);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "DSP1", 4) != 0) fail(path, "bad magic, not a DSP1 file");
    std::uint32_t d = 0;
    std::uint64_t n = 0;
    is.read(reinterpret_cast<char*>(&d), sizeof(d));
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!is || d == 0) fail(path, "bad header");
    std::vector<double> data(n * d);
    is.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!is) fail(path, "truncated sample data");
    return SampleSet(static_cast<int>(d), std::move(data));
}

}  // namespace

SampleSet read_samples(const std::string& path, SampleFormat format) {
    return format == SampleFormat::csv ? read_samples_csv(path) : read_samples_binary(path);
}

SampleSet read_samples(const std::string& path) {
    return read_samples(path, sample_format_for_path(path));
}

std::string RunManifest::to_json() const {
    std::string out = "{";
    const auto str = [&](const std::string& k, const std::string& v, bool last = false) {
        out += '"';
        out += k;
        out += "\":\"";
        out += v;
        out += last ? "\"" : "\",";
    };
    const auto num = [&](const std::string& k, const std::string& v) {
        out += '"';
        out += k;
        out += "\":";
        out += v;
        out += ',';
    };
    str("command", command);
    str("spec", spec);
    str("method", method);
    num("theta", fmt_g17(theta));
    num("m", std::to_string(m));
    num("eps1", fmt_g17(eps1));
    num("eps2", fmt_g17(eps2));
    num("eps3", fmt_g17(eps3));
    num("n_min", std::to_string(n_min));
    num("max_depth", std::to_string(max_depth));
    num("N", std::to_string(n));
    num("seed", std::to_string(seed));
    num("workers", std::to_string(workers));
    str("tool_version", tool_version, true);
    out += '}';
    return out;
}

void write_manifest(const std::string& output_path, const RunManifest& manifest) {
    auto os = open_out(output_path + ".manifest.json");
    os << manifest.to_json() << '\n';
}

void write_partition(const std::string& path, const PiecewiseConstantDensity& pcd,
                     const std::string& method, const RunManifest& manifest) {
    std::string out;
    out.reserve(pcd.leaves().size() * 96 + 512);
    out += "{\"domain\":{\"lo\":";
    write_double_array(out, pcd.domain().lo_vec());
    out += ",\"hi\":";
    write_double_array(out, pcd.domain().hi_vec());
    out += "},\"total_n\":";
    out += std::to_string(pcd.total_n());
    out += ",\"truncated\":";
    out += pcd.truncated() ? "true" : "false";
    out += ",\"method\":\"";
    out += method;
    out += "\",\"params\":";
    out += manifest.to_json();
    out += ",\"leaves\":[";
    bool first = true;
    for (const auto& leaf : pcd.leaves()) {
        if (!first) out += ',';
        first = false;
        out += "{\"lo\":";
        write_double_array(out, leaf.box.lo_vec());
        out += ",\"hi\":";
        write_double_array(out, leaf.box.hi_vec());
        out += ",\"count\":";
        out += std::to_string(leaf.count);
        out += ",\"c\":";
        out += fmt_g17(leaf.c);
        out += '}';
    }
    out += "]}\n";
    auto os = open_out(path);
    os << out;
    if (!os) fail(path, "write failed");
}

PartitionFile read_partition(const std::string& path) {
    auto is = open_in(path);
    json doc;
    try {
        is >> doc;
    } catch (const json::parse_error& err) {
        fail(path, std::string("JSON parse error: ") + err.what());
    }
    try {
        const auto lo = doc.at("domain").at("lo").get<std::vector<double>>();
        const auto hi = doc.at("domain").at("hi").get<std::vector<double>>();
        AxisBox domain(lo, hi);
        std::vector<DensityLeaf> leaves;
        for (const auto& jl : doc.at("leaves")) {
            DensityLeaf leaf{AxisBox(jl.at("lo").get<std::vector<double>>(),
                                     jl.at("hi").get<std::vector<double>>()),
                             jl.at("c").get<double>(), jl.at("count").get<std::uint64_t>()};
            leaves.push_back(std::move(leaf));
        }
        PartitionFile out{
            PiecewiseConstantDensity(std::move(domain), doc.at("total_n").get<std::uint64_t>(),
                                     std::move(leaves), doc.value("truncated", false)),
            doc.at("method").get<std::string>(), RunManifest{}};
        if (doc.contains("params")) {
            const auto& p = doc["params"];
            out.manifest.command = p.value("command", "");
            out.manifest.spec = p.value("spec", "");
            out.manifest.method = p.value("method", "");
            out.manifest.theta = p.value("theta", 0.1);
            out.manifest.m = p.value("m", 10);
            out.manifest.eps1 = p.value("eps1", 0.1);
            out.manifest.eps2 = p.value("eps2", 0.1);
            out.manifest.eps3 = p.value("eps3", 0.1);
            out.manifest.n_min = p.value("n_min", 10u);
            out.manifest.max_depth = p.value("max_depth", 50);
            out.manifest.n = p.value("N", std::uint64_t{0});
            out.manifest.seed = p.value("seed", std::uint64_t{0});
            out.manifest.workers = p.value("workers", 1);
            out.manifest.tool_version = p.value("tool_version", "");
        }
        return out;
    } catch (const json::exception& err) {
        fail(path, std::string("bad partition file: ") + err.what());
    }
}

ModelSpec read_model_spec(const std::string& path) {
    auto is = open_in(path);
    json doc;
    try {
        is >> doc;
    } catch (const json::parse_error& err) {
        fail(path, std::string("JSON parse error: ") + err.what());
    }
    try {
        const std::string type = doc.at("type").get<std::string>();
        if (type == "gaussian_mixture") {
            GaussianMixtureSpec s{doc.at("weights").get<std::vector<double>>(),
                                  doc.at("means").get<std::vector<std::vector<double>>>(),
                                  {},
                                  AxisBox(doc.at("domain").at("lo").get<std::vector<double>>(),
                                          doc.at("domain").at("hi").get<std::vector<double>>())};
            for (const auto& jc : doc.at("covariances")) {
                std::vector<double> cov;
                for (const auto& row : jc) {
                    for (const auto& v : row) cov.push_back(v.get<double>());
                }
                s.covs.push_back(std::move(cov));
            }
            return s;
        }
        if (type == "beta_mixture") {
            BetaMixtureSpec s;
            s.weights = doc.at("weights").get<std::vector<double>>();
            for (const auto& jc : doc.at("components")) {
                std::vector<BetaMixtureSpec::Shape> axes;
                for (const auto& pair : jc) {
                    axes.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
                }
                s.components.push_back(std::move(axes));
            }
            return s;
        }
        fail(path, "unknown spec type: " + type);
    } catch (const json::exception& err) {
        fail(path, std::string("bad spec file: ") + err.what());
    }
}

std::string model_spec_to_json(const ModelSpec& spec) {
    std::string out = "{";
    if (const auto* g = std::get_if<GaussianMixtureSpec>(&spec)) {
        out += "\"type\":\"gaussian_mixture\",\"weights\":";
        write_double_array(out, g->weights);
        out += ",\"means\":[";
        for (std::size_t c = 0; c < g->means.size(); ++c) {
            if (c) out += ',';
            write_double_array(out, g->means[c]);
        }
        out += "],\"covariances\":[";
        const int d = g->dim();
        for (std::size_t c = 0; c < g->covs.size(); ++c) {
            if (c) out += ',';
            out += '[';
            for (int i = 0; i < d; ++i) {
                if (i) out += ',';
                std::vector<double> row(g->covs[c].begin() + static_cast<std::ptrdiff_t>(i) * d,
                                        g->covs[c].begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
                write_double_array(out, row);
            }
            out += ']';
        }
        out += "],\"domain\":{\"lo\":";
        write_double_array(out, g->domain.lo_vec());
        out += ",\"hi\":";
        write_double_array(out, g->domain.hi_vec());
        out += "}}";
        return out;
    }
    const auto& b = std::get<BetaMixtureSpec>(spec);
    out += "\"type\":\"beta_mixture\",\"weights\":";
    write_double_array(out, b.weights);
    out += ",\"components\":[";
    for (std::size_t c = 0; c < b.components.size(); ++c) {
        if (c) out += ',';
        out += '[';
        for (std::size_t j = 0; j < b.components[c].size(); ++j) {
            if (j) out += ',';
            out += '[';
            out += fmt_g17(b.components[c][j].alpha);
            out += ',';
            out += fmt_g17(b.components[c][j].beta);
            out += ']';
        }
        out += ']';
    }
    out += "]}";
    return out;
}

}  // namespace seqpart
