/*
   Copyright 2026 The ofdmts Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end. Talks to the library only through the C API.

#include "ofdmts/ofdmts.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(ofdmts_status s, const std::string& context) {
    if (s != OFDMTS_OK)
        throw CliError(context + ": " + ofdmts_status_string(s) + ": " + ofdmts_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<ofdmts_config, Deleter<ofdmts_config, ofdmts_config_destroy>>;
using DatasetPtr = std::unique_ptr<ofdmts_dataset, Deleter<ofdmts_dataset, ofdmts_dataset_destroy>>;
using ModelPtr = std::unique_ptr<ofdmts_model, Deleter<ofdmts_model, ofdmts_model_destroy>>;
using ResultsPtr = std::unique_ptr<ofdmts_results, Deleter<ofdmts_results, ofdmts_results_destroy>>;

struct Common {
    std::string config;
    std::uint64_t seed = 1;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool out_required = true) {
    cmd->add_option("--config", c.config, "Frame config file (N, Ng, zc_root); defaults to N=128 Ng=32");
    cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    auto* out = cmd->add_option("--out", c.out, "Output path");
    if (out_required) out->required();
}

ConfigPtr open_config(const std::string& path) {
    ofdmts_config* raw = nullptr;
    if (path.empty())
        check(ofdmts_config_create(128, 32, 25, &raw), "config");
    else
        check(ofdmts_config_load(path.c_str(), &raw), "config " + path);
    return ConfigPtr(raw);
}

ofdmts_dims dims_of(const ofdmts_config* c) {
    ofdmts_dims d{};
    check(ofdmts_config_dims(c, &d), "config");
    return d;
}

ofdmts_label_mode parse_label(const std::string& s) {
    if (s == "triangular" || s == "tri") return OFDMTS_LABEL_TRIANGULAR;
    if (s == "rectangular" || s == "rect") return OFDMTS_LABEL_RECTANGULAR;
    throw CliError("unknown label mode '" + s + "' (triangular | rectangular)");
}

std::vector<double> parse_snr_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CliError("bad SNR value '" + item + "'");
        }
    }
    if (out.empty()) throw CliError("empty SNR list");
    return out;
}

struct GenArgs {
    std::size_t count = 10000;
    int los_ratio = 0;
    std::string label = "triangular";
    double cfo = 0.0;
};

void add_gen_args(CLI::App* cmd, GenArgs& g) {
    cmd->add_option("--count", g.count, "Number of training samples")->capture_default_str();
    cmd->add_option("--los-ratio", g.los_ratio, "LOS delay bound in samples (default ceil(7 Ng / 8))");
    cmd->add_option("--label", g.label, "Label mode: triangular | rectangular")->capture_default_str();
    cmd->add_option("--cfo", g.cfo, "Normalized CFO applied to training frames")->capture_default_str();
}

DatasetPtr generate(const ofdmts_config* cfg, const GenArgs& g, ofdmts_label_mode mode, std::uint64_t seed) {
    ofdmts_gen_options opts = ofdmts_gen_options_default();
    opts.los_ratio = g.los_ratio;
    opts.label_mode = mode;
    opts.cfo = g.cfo;
    ofdmts_dataset* raw = nullptr;
    check(ofdmts_dataset_generate(cfg, &opts, g.count, seed, &raw), "gen-data");
    return DatasetPtr(raw);
}

struct TrainArgs {
    ofdmts_train_options opts = ofdmts_train_options_default();
    std::string trace;
};

void add_train_args(CLI::App* cmd, TrainArgs& t) {
    cmd->add_option("--lr", t.opts.learning_rate, "SGD learning rate")->capture_default_str();
    cmd->add_option("--batch", t.opts.batch_size, "Mini-batch size")->capture_default_str();
    cmd->add_option("--epochs", t.opts.max_epochs, "Maximum epochs")->capture_default_str();
    cmd->add_option("--patience", t.opts.patience, "Early-stop patience in epochs")->capture_default_str();
    cmd->add_option("--val-fraction", t.opts.val_fraction, "Held-out validation fraction")->capture_default_str();
    cmd->add_option("--lr-decay", t.opts.lr_decay, "Per-epoch learning-rate multiplier")->capture_default_str();
}

ModelPtr train(const ofdmts_dataset* data, const TrainArgs& t, std::uint64_t seed) {
    ofdmts_model* raw = nullptr;
    check(ofdmts_model_train(data, &t.opts, seed, &raw), "train");
    return ModelPtr(raw);
}

void write_trace(const ofdmts_model* model, const std::string& path) {
    std::size_t count = 0;
    check(ofdmts_model_loss_trace(model, nullptr, 0, &count), "trace");
    std::vector<ofdmts_epoch_loss> trace(count);
    check(ofdmts_model_loss_trace(model, trace.data(), trace.size(), &count), "trace");
    std::ofstream out(path);
    if (!out) throw CliError("cannot write " + path);
    out << "epoch,train_loss,val_loss\n";
    char buf[96];
    for (const auto& e : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", e.epoch, e.train, e.validation);
        out << buf;
    }
}

void print_curves(const ofdmts_results* res, std::size_t from = 0) {
    for (std::size_t c = from; c < ofdmts_results_curve_count(res); ++c) {
        const char* scenario = nullptr;
        const char* method = nullptr;
        std::size_t points = 0;
        check(ofdmts_results_curve_info(res, c, &scenario, &method, &points), "results");
        std::printf("%-22s %-14s", scenario, method);
        for (std::size_t p = 0; p < points; ++p) {
            ofdmts_curve_point pt{};
            check(ofdmts_results_point(res, c, p, &pt), "results");
            std::printf(" %g:%.4f", pt.snr_db, pt.error_prob);
        }
        std::printf("\n");
    }
}

struct EvalArgs {
    long trials = 2000;
    std::string snr;
    double cfo = 0.0;
    int theta = -1;
    std::string profile_dir = OFDMTS_PROFILE_DIR;
};

void add_eval_args(CLI::App* cmd, EvalArgs& e) {
    cmd->add_option("--trials", e.trials, "Trials per SNR point")->capture_default_str();
    cmd->add_option("--snr", e.snr, "Comma-separated SNR list in dB (default -2,0,...,10)");
    cmd->add_option("--cfo", e.cfo, "Normalized CFO of test frames")->capture_default_str();
    cmd->add_option("--theta", e.theta, "Fixed timing offset (default: uniform per trial)");
    cmd->add_option("--profile-dir", e.profile_dir, "Directory holding tdl_b.txt and tdl_c.txt")->capture_default_str();
}

void evaluate(const ofdmts_config* cfg, const std::string& preset, const EvalArgs& e,
              const std::vector<const ofdmts_model*>& models, std::uint64_t seed, ofdmts_results* res) {
    ofdmts_eval_options opts = ofdmts_eval_options_default();
    opts.trials = e.trials;
    opts.cfo = e.cfo;
    opts.fixed_theta = e.theta;
    opts.profile_dir = e.profile_dir.c_str();
    std::vector<double> snr;
    if (!e.snr.empty()) {
        snr = parse_snr_list(e.snr);
        opts.snr_db = snr.data();
        opts.snr_count = snr.size();
    }
    const std::size_t before = ofdmts_results_curve_count(res);
    check(ofdmts_evaluate(cfg, preset.c_str(), &opts, models.data(), models.size(), seed, res), "eval " + preset);
    print_curves(res, before);
}

std::vector<std::string> group_presets(const std::string& group) {
    std::vector<std::string> all;
    for (std::size_t i = 0; i < ofdmts_preset_count(); ++i) all.emplace_back(ofdmts_preset_name(i));
    if (group == "all") return all;
    std::vector<std::string> out;
    for (const auto& name : all)
        if (name == group || name.rfind(group + "-", 0) == 0) out.push_back(name);
    if (out.empty()) throw CliError("unknown preset group '" + group + "'");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM timing synchronization lab: data generation, training, evaluation"};
    app.require_subcommand(1);

    Common gen_c;
    GenArgs gen_g;
    auto* gen = app.add_subcommand("gen-data", "Generate a training dataset");
    add_common(gen, gen_c);
    add_gen_args(gen, gen_g);

    Common train_c;
    TrainArgs train_t;
    std::string train_data;
    auto* trn = app.add_subcommand("train", "Train a network on a dataset");
    add_common(trn, train_c);
    trn->add_option("--data", train_data, "Dataset file from gen-data")->required();
    add_train_args(trn, train_t);
    trn->add_option("--trace", train_t.trace, "Write the per-epoch loss trace as CSV");

    Common eval_c;
    EvalArgs eval_e;
    std::string eval_scenario = "effectiveness";
    std::vector<std::string> eval_models;
    std::string eval_svg;
    auto* evl = app.add_subcommand("eval", "Evaluate the classic correlator and trained models on a preset");
    add_common(evl, eval_c);
    evl->add_option("--scenario", eval_scenario, "Preset name")->capture_default_str();
    evl->add_option("--model", eval_models, "Trained model file (repeatable)");
    add_eval_args(evl, eval_e);
    evl->add_option("--svg", eval_svg, "Also write an SVG plot");

    Common sweep_c;
    GenArgs sweep_g;
    TrainArgs sweep_t;
    EvalArgs sweep_e;
    std::string sweep_group = "effectiveness";
    std::string sweep_labels = "triangular,rectangular";
    auto* swp = app.add_subcommand("sweep", "Generate, train and evaluate a preset group end to end");
    add_common(swp, sweep_c);
    swp->add_option("--preset", sweep_group, "effectiveness | robustness | generalization | all | <preset>")
        ->capture_default_str();
    swp->add_option("--labels", sweep_labels, "Label modes to train")->capture_default_str();
    swp->add_option("--count", sweep_g.count, "Training samples per model")->capture_default_str();
    swp->add_option("--los-ratio", sweep_g.los_ratio, "LOS delay bound in samples");
    add_train_args(swp, sweep_t);
    add_eval_args(swp, sweep_e);

    Common cx_c;
    int cx_taps = 28;
    std::string cx_range;
    auto* cx = app.add_subcommand("complexity", "Complex-multiplication counts per method");
    add_common(cx, cx_c, false);
    cx->add_option("--taps", cx_taps, "Path count L for the iterative method")->capture_default_str();
    cx->add_option("--ns-range", cx_range, "Sweep Ns as start:stop:step (N = Ns - Ng)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            auto cfg = open_config(gen_c.config);
            auto data = generate(cfg.get(), gen_g, parse_label(gen_g.label), gen_c.seed);
            check(ofdmts_dataset_save(data.get(), gen_c.out.c_str()), "save " + gen_c.out);
            std::printf("wrote %zu samples to %s\n", ofdmts_dataset_size(data.get()), gen_c.out.c_str());
        } else if (*trn) {
            auto cfg = open_config(train_c.config);
            ofdmts_dataset* raw = nullptr;
            check(ofdmts_dataset_load(train_data.c_str(), cfg.get(), &raw), "load " + train_data);
            DatasetPtr data(raw);
            auto model = train(data.get(), train_t, train_c.seed);
            check(ofdmts_model_save(model.get(), train_c.out.c_str()), "save " + train_c.out);
            std::size_t epochs = 0;
            check(ofdmts_model_loss_trace(model.get(), nullptr, 0, &epochs), "trace");
            std::printf("trained %zu epochs, wrote %s\n", epochs ? epochs - 1 : 0, train_c.out.c_str());
            if (!train_t.trace.empty()) write_trace(model.get(), train_t.trace);
        } else if (*evl) {
            auto cfg = open_config(eval_c.config);
            ofdmts_config* pc = nullptr;
            check(ofdmts_preset_config(eval_scenario.c_str(), cfg.get(), &pc), "preset " + eval_scenario);
            ConfigPtr preset_cfg(pc);
            std::vector<ModelPtr> owned;
            std::vector<const ofdmts_model*> models;
            for (const auto& path : eval_models) {
                ofdmts_model* m = nullptr;
                check(ofdmts_model_load(path.c_str(), preset_cfg.get(), &m), "load " + path);
                owned.emplace_back(m);
                models.push_back(m);
            }
            ofdmts_results* rr = nullptr;
            check(ofdmts_results_create(&rr), "results");
            ResultsPtr res(rr);
            evaluate(cfg.get(), eval_scenario, eval_e, models, eval_c.seed, res.get());
            check(ofdmts_results_write_csv(res.get(), eval_c.out.c_str()), "write " + eval_c.out);
            if (!eval_svg.empty())
                check(ofdmts_results_write_svg(res.get(), eval_svg.c_str(), eval_scenario.c_str()), "write svg");
        } else if (*swp) {
            auto cfg = open_config(sweep_c.config);
            std::filesystem::create_directories(sweep_c.out);
            std::vector<ofdmts_label_mode> modes;
            {
                std::stringstream in(sweep_labels);
                std::string item;
                while (std::getline(in, item, ',')) modes.push_back(parse_label(item));
            }
            ofdmts_results* rr = nullptr;
            check(ofdmts_results_create(&rr), "results");
            ResultsPtr res(rr);

            // One trained model set per frame shape; robustness presets change N.
            struct Trained {
                int n = 0;
                std::vector<ModelPtr> models;
            };
            std::vector<Trained> cache;
            for (const auto& preset : group_presets(sweep_group)) {
                ofdmts_config* pc = nullptr;
                check(ofdmts_preset_config(preset.c_str(), cfg.get(), &pc), "preset " + preset);
                ConfigPtr preset_cfg(pc);
                const auto d = dims_of(preset_cfg.get());
                auto it = std::find_if(cache.begin(), cache.end(), [&](const Trained& t) { return t.n == d.n; });
                if (it == cache.end()) {
                    Trained t{d.n, {}};
                    for (auto mode : modes) {
                        std::printf("training N=%d label=%s\n", d.n,
                                    mode == OFDMTS_LABEL_TRIANGULAR ? "triangular" : "rectangular");
                        auto data = generate(preset_cfg.get(), sweep_g, mode, sweep_c.seed);
                        auto model = train(data.get(), sweep_t, sweep_c.seed);
                        const std::string name = sweep_c.out + "/model-N" + std::to_string(d.n) + "-" +
                                                 (mode == OFDMTS_LABEL_TRIANGULAR ? "tri" : "rect") + ".bin";
                        check(ofdmts_model_save(model.get(), name.c_str()), "save " + name);
                        t.models.push_back(std::move(model));
                    }
                    cache.push_back(std::move(t));
                    it = cache.end() - 1;
                }
                std::vector<const ofdmts_model*> models;
                for (const auto& m : it->models) models.push_back(m.get());
                evaluate(cfg.get(), preset, sweep_e, models, sweep_c.seed, res.get());
            }
            const std::string csv = sweep_c.out + "/" + sweep_group + ".csv";
            const std::string svg = sweep_c.out + "/" + sweep_group + ".svg";
            check(ofdmts_results_write_csv(res.get(), csv.c_str()), "write " + csv);
            check(ofdmts_results_write_svg(res.get(), svg.c_str(), sweep_group.c_str()), "write " + svg);
            std::printf("wrote %s and %s\n", csv.c_str(), svg.c_str());
        } else if (*cx) {
            auto cfg = open_config(cx_c.config);
            const auto d = dims_of(cfg.get());
            std::vector<int> ns_values{d.ns};
            if (!cx_range.empty()) {
                int a = 0, b = 0, s = 0;
                if (std::sscanf(cx_range.c_str(), "%d:%d:%d", &a, &b, &s) != 3 || s <= 0 || a > b || a <= d.ng)
                    throw CliError("--ns-range must be start:stop:step with start > Ng");
                ns_values.clear();
                for (int v = a; v <= b; v += s) ns_values.push_back(v);
            }
            std::ostringstream out;
            out << "method,N,Ns,Ng,L,cm\n";
            for (int ns : ns_values) {
                const int n = ns - d.ng;
                for (std::size_t i = 0; i < ofdmts_complexity_method_count(); ++i) {
                    const char* id = ofdmts_complexity_method(i);
                    double cm = 0.0;
                    check(ofdmts_complexity_cm(id, n, ns, d.ng, cx_taps, &cm), "complexity");
                    char line[160];
                    std::snprintf(line, sizeof line, "%s,%d,%d,%d,%d,%.0f\n", id, n, ns, d.ng, cx_taps, cm);
                    out << line;
                }
            }
            if (cx_c.out.empty()) {
                std::fputs(out.str().c_str(), stdout);
            } else {
                std::ofstream f(cx_c.out);
                if (!f) throw CliError("cannot write " + cx_c.out);
                f << out.str();
            }
        }
    } catch (const CliError& e) {
        std::fprintf(stderr, "ofdmts: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ofdmts: %s\n", e.what());
        return 1;
    }
    return 0;
}
