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

#include "ofdmts/ofdmts.h"

#include "ofdmts/correlator.hpp"
#include "ofdmts/dataset.hpp"
#include "ofdmts/error.hpp"
#include "ofdmts/eval.hpp"
#include "ofdmts/network.hpp"

#include <limits>
#include <new>
#include <string>

#ifndef OFDMTS_PROFILE_DIR
#define OFDMTS_PROFILE_DIR "data/profiles"
#endif

using namespace ofdmts;

struct ofdmts_config {
    OfdmConfig value;
};

struct ofdmts_dataset {
    dataset::Dataset value;
};

struct ofdmts_model {
    network::Mlp net;
    label::LabelMode mode = label::LabelMode::triangular;
    std::vector<dataset::EpochLoss> trace;
};

struct ofdmts_results {
    std::vector<eval::ErrorCurve> curves;
};

namespace {

thread_local std::string g_last_error;

ofdmts_status to_status(Errc code) {
    switch (code) {
    case Errc::invalid_argument: return OFDMTS_E_INVALID_ARGUMENT;
    case Errc::invalid_root: return OFDMTS_E_INVALID_ROOT;
    case Errc::invalid_cp: return OFDMTS_E_INVALID_CP;
    case Errc::invalid_offset: return OFDMTS_E_INVALID_OFFSET;
    case Errc::dimension: return OFDMTS_E_DIMENSION;
    case Errc::profile: return OFDMTS_E_PROFILE;
    case Errc::degenerate_input: return OFDMTS_E_DEGENERATE;
    case Errc::prior_violation: return OFDMTS_E_PRIOR;
    case Errc::format: return OFDMTS_E_FORMAT;
    case Errc::io: return OFDMTS_E_IO;
    case Errc::training: return OFDMTS_E_TRAINING;
    case Errc::unknown_method: return OFDMTS_E_UNKNOWN_METHOD;
    }
    return OFDMTS_E_INTERNAL;
}

template <class F>
ofdmts_status guarded(F&& body) noexcept {
    try {
        body();
        return OFDMTS_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return OFDMTS_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return OFDMTS_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return OFDMTS_E_INTERNAL;
    }
}

template <class T>
const T& need(const T* p, const char* what) {
    if (!p) fail(Errc::invalid_argument, std::string(what) + " must not be NULL");
    return *p;
}

template <class T>
T& need_out(T* p, const char* what) {
    if (!p) fail(Errc::invalid_argument, std::string(what) + " must not be NULL");
    return *p;
}

CVec read_complex(const double* interleaved, std::size_t count) {
    if (!interleaved) fail(Errc::invalid_argument, "sample buffer must not be NULL");
    CVec out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
    return out;
}

const eval::ErrorCurve& curve_at(const ofdmts_results* results, std::size_t curve) {
    const auto& r = need(results, "results");
    if (curve >= r.curves.size()) fail(Errc::invalid_argument, "curve index out of range");
    return r.curves[curve];
}

} // namespace

extern "C" {

const char* ofdmts_version(void) { return "0.1.0"; }

const char* ofdmts_status_string(ofdmts_status status) {
    switch (status) {
    case OFDMTS_OK: return "ok";
    case OFDMTS_E_INVALID_ARGUMENT: return errc_name(Errc::invalid_argument);
    case OFDMTS_E_INVALID_ROOT: return errc_name(Errc::invalid_root);
    case OFDMTS_E_INVALID_CP: return errc_name(Errc::invalid_cp);
    case OFDMTS_E_INVALID_OFFSET: return errc_name(Errc::invalid_offset);
    case OFDMTS_E_DIMENSION: return errc_name(Errc::dimension);
    case OFDMTS_E_PROFILE: return errc_name(Errc::profile);
    case OFDMTS_E_DEGENERATE: return errc_name(Errc::degenerate_input);
    case OFDMTS_E_PRIOR: return errc_name(Errc::prior_violation);
    case OFDMTS_E_FORMAT: return errc_name(Errc::format);
    case OFDMTS_E_IO: return errc_name(Errc::io);
    case OFDMTS_E_TRAINING: return errc_name(Errc::training);
    case OFDMTS_E_UNKNOWN_METHOD: return errc_name(Errc::unknown_method);
    case OFDMTS_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ofdmts_last_error(void) { return g_last_error.c_str(); }

ofdmts_status ofdmts_config_create(int n, int ng, int zc_root, ofdmts_config** out) {
    return guarded([&] {
        auto& slot = need_out(out, "out");
        slot = new ofdmts_config{OfdmConfig(n, ng, zc_root)};
    });
}

ofdmts_status ofdmts_config_load(const char* path, ofdmts_config** out) {
    return guarded([&] {
        auto& slot = need_out(out, "out");
        slot = new ofdmts_config{load_config(&need(path, "path"))};
    });
}

void ofdmts_config_destroy(ofdmts_config* config) { delete config; }

ofdmts_status ofdmts_config_dims(const ofdmts_config* config, ofdmts_dims* out) {
    return guarded([&] {
        const auto& c = need(config, "config").value;
        need_out(out, "out") = {c.n(), c.ng(), c.nw(), c.ns(), c.zc_root()};
    });
}

ofdmts_status ofdmts_timing_metric(const ofdmts_config* config, const double* y_interleaved, size_t nw,
                                   double* metric_out, size_t ns) {
    return guarded([&] {
        const auto& c = need(config, "config").value;
        if (!metric_out) fail(Errc::invalid_argument, "metric_out must not be NULL");
        if (ns != static_cast<std::size_t>(c.ns())) fail(Errc::dimension, "metric buffer length must equal Ns");
        const CVec y = read_complex(y_interleaved, nw);
        const auto f = correlator::timing_metric(c, y, signal::local_sequence(c));
        std::copy(f.f.begin(), f.f.end(), metric_out);
    });
}

ofdmts_status ofdmts_synchronize(const ofdmts_config* config, const ofdmts_model* model, const double* y_interleaved,
                                 size_t nw, int* theta_hat) {
    return guarded([&] {
        const auto& c = need(config, "config").value;
        auto& out = need_out(theta_hat, "theta_hat");
        const CVec y = read_complex(y_interleaved, nw);
        const auto f = correlator::timing_metric(c, y, signal::local_sequence(c));
        if (!model) {
            out = correlator::classic_estimate(f);
            return;
        }
        network::check_shape(model->net, c);
        out = network::estimate(network::forward(model->net, correlator::normalize(f).q));
    });
}

ofdmts_gen_options ofdmts_gen_options_default(void) {
    const dataset::GenOptions d;
    return {0, OFDMTS_LABEL_TRIANGULAR, d.eta_min, d.eta_max, d.cfo};
}

ofdmts_status ofdmts_dataset_generate(const ofdmts_config* config, const ofdmts_gen_options* options, size_t count,
                                      uint64_t seed, ofdmts_dataset** out) {
    return guarded([&] {
        const auto& c = need(config, "config").value;
        auto& slot = need_out(out, "out");
        auto opts = dataset::default_gen_options(c);
        if (options) {
            if (options->los_ratio > 0) opts.prior.los_ratio = options->los_ratio;
            if (options->label_mode != OFDMTS_LABEL_TRIANGULAR && options->label_mode != OFDMTS_LABEL_RECTANGULAR)
                fail(Errc::invalid_argument, "unknown label mode");
            opts.mode = static_cast<label::LabelMode>(options->label_mode);
            opts.eta_min = options->eta_min;
            opts.eta_max = options->eta_max;
            opts.cfo = options->cfo;
        }
        slot = new ofdmts_dataset{dataset::generate_dataset(c, opts, count, seed)};
    });
}

ofdmts_status ofdmts_dataset_save(const ofdmts_dataset* data, const char* path) {
    return guarded([&] { dataset::save_dataset(need(data, "dataset").value, &need(path, "path")); });
}

ofdmts_status ofdmts_dataset_load(const char* path, const ofdmts_config* config, ofdmts_dataset** out) {
    return guarded([&] {
        auto& slot = need_out(out, "out");
        const char* p = &need(path, "path");
        slot = new ofdmts_dataset{config ? dataset::load_dataset(p, config->value) : dataset::load_dataset(p)};
    });
}

size_t ofdmts_dataset_size(const ofdmts_dataset* data) { return data ? data->value.samples.size() : 0; }

void ofdmts_dataset_destroy(ofdmts_dataset* data) { delete data; }

ofdmts_train_options ofdmts_train_options_default(void) {
    const dataset::TrainOptions d;
    return {d.learning_rate, d.batch_size, d.max_epochs, d.patience, d.val_fraction, d.lr_decay};
}

ofdmts_status ofdmts_model_train(const ofdmts_dataset* data, const ofdmts_train_options* options, uint64_t seed,
                                 ofdmts_model** out) {
    return guarded([&] {
        const auto& d = need(data, "dataset").value;
        auto& slot = need_out(out, "out");
        dataset::TrainOptions opts;
        if (options)
            opts = {options->learning_rate, options->batch_size, options->max_epochs,
                    options->patience,      options->val_fraction, options->lr_decay};
        auto result = dataset::train_pipeline(d, opts, seed);
        slot = new ofdmts_model{std::move(result.model), d.mode, std::move(result.trace)};
    });
}

ofdmts_status ofdmts_model_loss_trace(const ofdmts_model* model, ofdmts_epoch_loss* entries, size_t capacity,
                                      size_t* count) {
    return guarded([&] {
        const auto& m = need(model, "model");
        if (capacity > 0 && !entries) fail(Errc::invalid_argument, "entries must not be NULL");
        const std::size_t n = std::min(capacity, m.trace.size());
        for (std::size_t i = 0; i < n; ++i) entries[i] = {m.trace[i].epoch, m.trace[i].train, m.trace[i].validation};
        if (count) *count = m.trace.size();
    });
}

ofdmts_status ofdmts_model_save(const ofdmts_model* model, const char* path) {
    return guarded([&] {
        const auto& m = need(model, "model");
        network::save_model(m.net, &need(path, "path"), m.mode);
    });
}

ofdmts_status ofdmts_model_load(const char* path, const ofdmts_config* config, ofdmts_model** out) {
    return guarded([&] {
        auto& slot = need_out(out, "out");
        const char* p = &need(path, "path");
        label::LabelMode mode{};
        network::Mlp net = config ? network::load_model(p, config->value, &mode) : network::load_model(p, &mode);
        slot = new ofdmts_model{std::move(net), mode, {}};
    });
}

ofdmts_label_mode ofdmts_model_label_mode(const ofdmts_model* model) {
    return model ? static_cast<ofdmts_label_mode>(model->mode) : OFDMTS_LABEL_TRIANGULAR;
}

void ofdmts_model_destroy(ofdmts_model* model) { delete model; }

ofdmts_eval_options ofdmts_eval_options_default(void) { return {2000, 0.0, nullptr, 0, -1, nullptr}; }

size_t ofdmts_preset_count(void) { return eval::preset_names().size(); }

const char* ofdmts_preset_name(size_t index) {
    static const std::vector<std::string> names = eval::preset_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

ofdmts_status ofdmts_preset_config(const char* preset, const ofdmts_config* config, ofdmts_config** out) {
    return guarded([&] {
        const auto& c = need(config, "config").value;
        auto& slot = need_out(out, "out");
        const auto s = eval::preset_scenario(&need(preset, "preset"), c, OFDMTS_PROFILE_DIR);
        slot = new ofdmts_config{s.config};
    });
}

ofdmts_status ofdmts_results_create(ofdmts_results** out) {
    return guarded([&] { need_out(out, "out") = new ofdmts_results{}; });
}

void ofdmts_results_destroy(ofdmts_results* results) { delete results; }

ofdmts_status ofdmts_evaluate(const ofdmts_config* config, const char* preset, const ofdmts_eval_options* options,
                              const ofdmts_model* const* models, size_t model_count, uint64_t seed,
                              ofdmts_results* results) {
    return guarded([&] {
        const auto& c = need(config, "config").value;
        auto& res = need_out(results, "results");
        const ofdmts_eval_options opts = options ? *options : ofdmts_eval_options_default();
        const char* dir = opts.profile_dir ? opts.profile_dir : OFDMTS_PROFILE_DIR;
        auto scenario = eval::preset_scenario(&need(preset, "preset"), c, dir, opts.trials, seed);
        scenario.cfo = opts.cfo;
        if (opts.snr_db) scenario.snr_db.assign(opts.snr_db, opts.snr_db + opts.snr_count);
        else if (opts.snr_count > 0) fail(Errc::invalid_argument, "snr_count given without snr_db");
        if (opts.fixed_theta >= 0) scenario.fixed_theta = opts.fixed_theta;

        std::vector<eval::Method> methods{eval::ClassicMethod{}};
        if (model_count > 0 && !models) fail(Errc::invalid_argument, "models must not be NULL");
        for (std::size_t i = 0; i < model_count; ++i)
            if (models[i]) methods.push_back(eval::LearnedMethod{&models[i]->net, models[i]->mode});
        auto curves = eval::run_curves(methods, scenario);
        res.curves.insert(res.curves.end(), curves.begin(), curves.end());
    });
}

size_t ofdmts_results_curve_count(const ofdmts_results* results) { return results ? results->curves.size() : 0; }

ofdmts_status ofdmts_results_curve_info(const ofdmts_results* results, size_t curve, const char** scenario,
                                        const char** method, size_t* points) {
    return guarded([&] {
        const auto& c = curve_at(results, curve);
        if (scenario) *scenario = c.scenario.c_str();
        if (method) *method = c.method.c_str();
        if (points) *points = c.points.size();
    });
}

ofdmts_status ofdmts_results_point(const ofdmts_results* results, size_t curve, size_t point,
                                   ofdmts_curve_point* out) {
    return guarded([&] {
        const auto& c = curve_at(results, curve);
        if (point >= c.points.size()) fail(Errc::invalid_argument, "point index out of range");
        const auto& p = c.points[point];
        need_out(out, "out") = {p.snr_db, p.trials, p.errors, p.error_prob, p.ci_lo, p.ci_hi};
    });
}

ofdmts_status ofdmts_results_write_csv(const ofdmts_results* results, const char* path) {
    return guarded([&] { eval::write_csv(need(results, "results").curves, &need(path, "path")); });
}

ofdmts_status ofdmts_results_write_svg(const ofdmts_results* results, const char* path, const char* title) {
    return guarded(
        [&] { eval::write_svg(need(results, "results").curves, &need(path, "path"), title ? title : ""); });
}

ofdmts_status ofdmts_complexity_cm(const char* method, int n, int ns, int ng, int taps, double* out) {
    return guarded([&] {
        auto& slot = need_out(out, "out");
        slot = eval::complexity_cm(&need(method, "method"), n, ns, ng, taps);
    });
}

size_t ofdmts_complexity_method_count(void) { return eval::complexity_methods().size(); }

const char* ofdmts_complexity_method(size_t index) {
    const auto& ids = eval::complexity_methods();
    return index < ids.size() ? ids[index].c_str() : nullptr;
}

} // extern "C"
