#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace coref {

struct ModelConfig {
    int dim = 16;           // token vector width d
    int hidden = 32;        // FFNN hidden width
    int max_segment = 64;   // segment length W (even)
    int vocab = 1024;       // hash-embedding rows V
    int max_span_length = 10;
    double prune_ratio = 0.25;   // lambda
    int max_antecedents = -1;    // K; -1 = unlimited
    bool detect_all_spans = false;  // pretraining loss over all candidates
    unsigned long long seed = 1;

    bool operator==(const ModelConfig&) const = default;
};

struct Array {
    std::vector<int> shape;
    std::vector<double> data;
};

struct ParameterSet {
    ModelConfig config;
    std::map<std::string, Array> arrays;
};

using GradientMap = std::map<std::string, std::vector<double>>;

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expected array shapes for a config (embedding table, mixing layer, and
// the three scoring FFNNs).
std::map<std::string, std::vector<int>> parameter_shapes(const ModelConfig& config);

// Random-normal initialization, deterministic per config.seed.
ParameterSet init_parameters(const ModelConfig& config);

void save_checkpoint(const ParameterSet& params, const std::string& path);
ParameterSet load_checkpoint(const std::string& path);

// Load and verify shapes against `expected`; names the offending array.
ParameterSet load_checkpoint(const std::string& path, const ModelConfig& expected);

// Stable hash of a token string into [0, vocab).
int token_hash(const std::string& text, int vocab);

}  // namespace coref
