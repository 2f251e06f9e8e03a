#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coref/conll.hpp"
#include "coref/jsonl.hpp"
#include "coref/learning.hpp"
#include "coref/pipeline.hpp"
#include "coref/speakers.hpp"

namespace {

using namespace coref;

int log_level() {
    const char* v = std::getenv("COREF_LOG");
    return v ? std::atoi(v) : 1;
}

std::vector<Document> read_docs(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    if (format == "conll") return parse_conll(in);
    if (format == "jsonl") return read_jsonlines(in);
    throw std::runtime_error("unknown input format '" + format + "'");
}

// Key-value config file: one "key value" or "key=value" pair per line,
// '#' comments. Command-line flags win over file entries.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (char& c : line)
            if (c == '=') c = ' ';
        std::istringstream ss(line);
        std::string key, value;
        if (ss >> key >> value) kv[key] = value;
    }
    return kv;
}

struct TrainFlags {
    std::string data, config_path, init_path, out_path;
    TrainConfig cfg;

    void add_options(CLI::App* cmd, bool with_init) {
        cmd->add_option("--data", data, "training documents (jsonl)")->required();
        if (with_init)
            cmd->add_option("--init", init_path, "initial checkpoint")->required();
        cmd->add_option("--config", config_path, "key-value config file");
        cmd->add_option("--out", out_path, "output checkpoint path")->required();
        cmd->add_option("--epochs", cfg.epochs, "training epochs");
        cmd->add_option("--lr-encoder", cfg.lr_encoder, "encoder learning rate");
        cmd->add_option("--lr-head", cfg.lr_head, "head learning rate");
        cmd->add_option("--lr-decay", cfg.lr_decay, "per-epoch learning rate decay");
        cmd->add_option("--seed", cfg.model.seed, "random seed");
        cmd->add_option("--dim", cfg.model.dim, "token vector width");
        cmd->add_option("--hidden", cfg.model.hidden, "FFNN hidden width");
        cmd->add_option("--segment", cfg.model.max_segment, "encoder segment length");
        cmd->add_option("--vocab", cfg.model.vocab, "hash embedding rows");
        cmd->add_option("--max-span-length", cfg.model.max_span_length, "max span length L");
        cmd->add_option("--lambda", cfg.model.prune_ratio, "span pruning ratio");
        cmd->add_option("--max-antecedents", cfg.model.max_antecedents,
                        "antecedent cap (-1 = unlimited)");
        cmd->add_flag("--detect-all-spans", cfg.model.detect_all_spans,
                      "pretraining loss over all candidate spans");
    }

    void apply_config_file(const CLI::App* cmd) {
        if (config_path.empty()) return;
        auto kv = read_config_file(config_path);
        auto set_if_absent = [&](const char* flag, const char* key, auto& dst) {
            auto it = kv.find(key);
            if (it == kv.end() || cmd->count(flag) > 0) return;
            std::istringstream(it->second) >> dst;
        };
        set_if_absent("--epochs", "epochs", cfg.epochs);
        set_if_absent("--lr-encoder", "lr_encoder", cfg.lr_encoder);
        set_if_absent("--lr-head", "lr_head", cfg.lr_head);
        set_if_absent("--lr-decay", "lr_decay", cfg.lr_decay);
        set_if_absent("--seed", "seed", cfg.model.seed);
        set_if_absent("--dim", "dim", cfg.model.dim);
        set_if_absent("--hidden", "hidden", cfg.model.hidden);
        set_if_absent("--segment", "segment", cfg.model.max_segment);
        set_if_absent("--vocab", "vocab", cfg.model.vocab);
        set_if_absent("--max-span-length", "max_span_length", cfg.model.max_span_length);
        set_if_absent("--lambda", "lambda", cfg.model.prune_ratio);
        set_if_absent("--max-antecedents", "max_antecedents", cfg.model.max_antecedents);
        int all_spans = -1;
        set_if_absent("--detect-all-spans", "detect_all_spans", all_spans);
        if (all_spans >= 0) cfg.model.detect_all_spans = all_spans != 0;
    }
};

int cmd_preprocess(const std::string& input, const std::string& format,
                   const std::string& output, bool speakers) {
    auto docs = read_docs(input, format);
    if (speakers)
        for (auto& doc : docs) doc = insert_speakers(doc);
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open '" + output + "' for writing");
    write_jsonlines(docs, out);

    size_t tokens = 0, clusters = 0, mentions = 0;
    for (const auto& d : docs) {
        tokens += d.tokens.size();
        clusters += d.gold_clusters.size();
        for (const auto& c : d.gold_clusters) mentions += c.size();
    }
    std::cout << "documents " << docs.size() << " tokens " << tokens << " clusters " << clusters
              << " mentions " << mentions << "\n";
    return 0;
}

int cmd_train_phase(TrainFlags& flags, bool pretrain_phase) {
    auto docs = read_docs(flags.data, "jsonl");
    ParameterSet init = flags.init_path.empty()
                            ? init_parameters(flags.cfg.model)
                            : load_checkpoint(flags.init_path);
    if (!flags.init_path.empty()) flags.cfg.model = init.config;
    std::ostream* log = log_level() >= 1 ? &std::cerr : nullptr;
    ParameterSet out = pretrain_phase ? pretrain_mentions(docs, flags.cfg, std::move(init), log)
                                      : train(docs, flags.cfg, std::move(init), log);
    save_checkpoint(out, flags.out_path);
    std::cout << "wrote checkpoint " << flags.out_path << "\n";
    return 0;
}

int cmd_evaluate(const std::string& data, const std::string& checkpoint,
                 const std::string& report, const std::string& predictions_path) {
    auto docs = read_docs(data, "jsonl");
    if (docs.empty()) throw std::runtime_error("no documents in '" + data + "'");
    ParameterSet params = load_checkpoint(checkpoint);
    std::vector<DocPrediction> preds;
    EvalResult r = evaluate_documents(params, docs, true, &preds);

    if (report == "json") {
        auto j = nlohmann::json::parse(format_report_json(r.metrics));
        j["spans_proposed_per_doc"] = r.recall.spans_proposed_per_doc;
        j["gold_mention_recall"] = r.recall.gold_mention_recall;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_report_table(r.metrics);
        std::cout << "  mention extractor | " << r.recall.spans_proposed_per_doc
                  << " spans / doc | gold mention recall "
                  << 100.0 * r.recall.gold_mention_recall << "%\n";
    }
    if (!predictions_path.empty()) {
        std::vector<Document> out_docs = docs;
        for (size_t i = 0; i < out_docs.size(); ++i) out_docs[i].gold_clusters = preds[i].clusters;
        std::ofstream out(predictions_path);
        if (!out) throw std::runtime_error("cannot open '" + predictions_path + "'");
        write_jsonlines(out_docs, out);
    }
    return 0;
}

int cmd_score(const std::string& gold_path, const std::string& system_path,
              const std::string& report) {
    auto gold = read_docs(gold_path, "conll");
    auto system = read_docs(system_path, "conll");
    std::map<std::string, const Document*> sys_by_key;
    for (const auto& d : system) sys_by_key[d.doc_key] = &d;

    std::set<std::string> gold_keys, sys_keys;
    for (const auto& d : gold) gold_keys.insert(d.doc_key);
    for (const auto& d : system) sys_keys.insert(d.doc_key);
    if (gold_keys != sys_keys) {
        std::string msg = "mismatched doc keys:";
        for (const auto& k : gold_keys)
            if (!sys_keys.count(k)) msg += " gold-only:" + k;
        for (const auto& k : sys_keys)
            if (!gold_keys.count(k)) msg += " system-only:" + k;
        throw std::runtime_error(msg);
    }

    CorefScorer scorer;
    for (const auto& d : gold) scorer.add(d.gold_clusters, sys_by_key[d.doc_key]->gold_clusters);
    MetricReport r = scorer.report();
    std::cout << (report == "json" ? format_report_json(r) + "\n" : format_report_table(r));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coreference resolution toolkit"};
    app.require_subcommand(1);

    // preprocess
    std::string pp_input, pp_format = "conll", pp_output, pp_speakers = "on";
    auto* pp = app.add_subcommand("preprocess", "parse and speaker-concatenate documents");
    pp->add_option("--input", pp_input, "input file")->required();
    pp->add_option("--format", pp_format, "conll|jsonl")
        ->check(CLI::IsMember({"conll", "jsonl"}));
    pp->add_option("--output", pp_output, "output jsonl")->required();
    pp->add_option("--speakers", pp_speakers, "on|off")->check(CLI::IsMember({"on", "off"}));

    TrainFlags pre_flags, tr_flags;
    auto* pre = app.add_subcommand("pretrain", "pre-train the mention extractor");
    pre_flags.add_options(pre, false);
    pre->add_option("--init", pre_flags.init_path, "optional initial checkpoint");
    auto* tr = app.add_subcommand("train", "jointly train extractor and linker");
    tr_flags.add_options(tr, true);

    std::string ev_data, ev_ckpt, ev_report = "text", ev_preds;
    auto* ev = app.add_subcommand("evaluate", "run the full pipeline and report metrics");
    ev->add_option("--data", ev_data, "documents (jsonl)")->required();
    ev->add_option("--checkpoint", ev_ckpt, "model checkpoint")->required();
    ev->add_option("--report", ev_report, "text|json")->check(CLI::IsMember({"text", "json"}));
    ev->add_option("--predictions", ev_preds, "write predicted clusters (jsonl)");

    std::string sc_gold, sc_system, sc_report = "text";
    auto* sc = app.add_subcommand("score", "score two CoNLL files against each other");
    sc->add_option("--gold", sc_gold, "gold conll file")->required();
    sc->add_option("--system", sc_system, "system conll file")->required();
    sc->add_option("--report", sc_report, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (pp->parsed())
            return cmd_preprocess(pp_input, pp_format, pp_output, pp_speakers == "on");
        if (pre->parsed()) {
            pre_flags.apply_config_file(pre);
            return cmd_train_phase(pre_flags, true);
        }
        if (tr->parsed()) {
            tr_flags.apply_config_file(tr);
            return cmd_train_phase(tr_flags, false);
        }
        if (ev->parsed()) return cmd_evaluate(ev_data, ev_ckpt, ev_report, ev_preds);
        if (sc->parsed()) return cmd_score(sc_gold, sc_system, sc_report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
