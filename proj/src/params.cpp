#include "coref/params.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>

#include <json.hpp>

namespace coref {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

void add_ffnn_shapes(std::map<std::string, std::vector<int>>& shapes, const std::string& prefix,
                     int in, int hidden) {
    shapes[prefix + ".w0"] = {hidden, in};
    shapes[prefix + ".b0"] = {hidden};
    shapes[prefix + ".w1"] = {hidden, hidden};
    shapes[prefix + ".b1"] = {hidden};
    shapes[prefix + ".w2"] = {1, hidden};
    shapes[prefix + ".b2"] = {1};
}

json config_to_json(const ModelConfig& c) {
    return json{{"dim", c.dim},
                {"hidden", c.hidden},
                {"max_segment", c.max_segment},
                {"vocab", c.vocab},
                {"max_span_length", c.max_span_length},
                {"prune_ratio", c.prune_ratio},
                {"max_antecedents", c.max_antecedents},
                {"detect_all_spans", c.detect_all_spans},
                {"seed", c.seed}};
}

ModelConfig config_from_json(const json& j) {
    ModelConfig c;
    c.dim = j.at("dim").get<int>();
    c.hidden = j.at("hidden").get<int>();
    c.max_segment = j.at("max_segment").get<int>();
    c.vocab = j.at("vocab").get<int>();
    c.max_span_length = j.at("max_span_length").get<int>();
    c.prune_ratio = j.at("prune_ratio").get<double>();
    c.max_antecedents = j.at("max_antecedents").get<int>();
    c.detect_all_spans = j.at("detect_all_spans").get<bool>();
    c.seed = j.at("seed").get<unsigned long long>();
    return c;
}

}  // namespace

std::map<std::string, std::vector<int>> parameter_shapes(const ModelConfig& c) {
    std::map<std::string, std::vector<int>> shapes;
    shapes["encoder.embeddings"] = {c.vocab, c.dim};
    shapes["encoder.mix_w"] = {c.dim, c.dim};
    shapes["encoder.mix_b"] = {c.dim};
    add_ffnn_shapes(shapes, "alpha", c.dim, c.hidden);
    add_ffnn_shapes(shapes, "mention", 3 * c.dim, c.hidden);
    add_ffnn_shapes(shapes, "antecedent", 9 * c.dim, c.hidden);
    return shapes;
}

ParameterSet init_parameters(const ModelConfig& config) {
    ParameterSet ps;
    ps.config = config;
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (const auto& [name, shape] : parameter_shapes(config)) {
        size_t total = 1;
        for (int s : shape) total *= static_cast<size_t>(s);
        int fan_in = shape.size() == 2 ? shape[1] : 1;
        double scale = shape.size() == 2 ? 1.0 / std::sqrt(static_cast<double>(fan_in)) : 0.0;
        Array a;
        a.shape = shape;
        a.data.resize(total);
        for (double& v : a.data) v = normal(rng) * scale;
        ps.arrays[name] = std::move(a);
    }
    return ps;
}

void save_checkpoint(const ParameterSet& params, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["config"] = config_to_json(params.config);
    json arrays = json::object();
    for (const auto& [name, a] : params.arrays)
        arrays[name] = json{{"shape", a.shape}, {"data", a.data}};
    j["arrays"] = std::move(arrays);
    std::ofstream out(path);
    if (!out) throw CheckpointError("cannot open '" + path + "' for writing");
    out << j.dump();
    if (!out) throw CheckpointError("write failed for '" + path + "'");
}

ParameterSet load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw CheckpointError("invalid checkpoint '" + path + "': " + e.what());
    }
    if (j.value("format_version", -1) != kFormatVersion)
        throw CheckpointError("unsupported checkpoint format version in '" + path + "'");
    ParameterSet ps;
    try {
        ps.config = config_from_json(j.at("config"));
        for (const auto& [name, aj] : j.at("arrays").items()) {
            Array a;
            a.shape = aj.at("shape").get<std::vector<int>>();
            a.data = aj.at("data").get<std::vector<double>>();
            size_t total = 1;
            for (int s : a.shape) total *= static_cast<size_t>(s);
            if (a.data.size() != total)
                throw CheckpointError("array '" + name + "' data does not match its shape");
            ps.arrays[name] = std::move(a);
        }
    } catch (const json::exception& e) {
        throw CheckpointError("malformed checkpoint '" + path + "': " + e.what());
    }
    // Shapes must be consistent with the embedded config.
    for (const auto& [name, shape] : parameter_shapes(ps.config)) {
        auto it = ps.arrays.find(name);
        if (it == ps.arrays.end()) throw CheckpointError("missing array '" + name + "'");
        if (it->second.shape != shape)
            throw CheckpointError("array '" + name + "' shape mismatch vs checkpoint config");
    }
    return ps;
}

ParameterSet load_checkpoint(const std::string& path, const ModelConfig& expected) {
    ParameterSet ps = load_checkpoint(path);
    std::string bad;
    for (const auto& [name, shape] : parameter_shapes(expected)) {
        auto it = ps.arrays.find(name);
        if (it == ps.arrays.end() || it->second.shape != shape) bad += " '" + name + "'";
    }
    if (!bad.empty())
        throw CheckpointError("shape mismatch vs requested config for array(s):" + bad);
    return ps;
}

int token_hash(const std::string& text, int vocab) {
    // FNV-1a 64-bit
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return static_cast<int>(h % static_cast<std::uint64_t>(vocab));
}

}  // namespace coref
