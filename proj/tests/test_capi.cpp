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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace {

struct ConfigDel {
    void operator()(ofdmts_config* p) const { ofdmts_config_destroy(p); }
};
struct DataDel {
    void operator()(ofdmts_dataset* p) const { ofdmts_dataset_destroy(p); }
};
struct ModelDel {
    void operator()(ofdmts_model* p) const { ofdmts_model_destroy(p); }
};
struct ResultsDel {
    void operator()(ofdmts_results* p) const { ofdmts_results_destroy(p); }
};
using Config = std::unique_ptr<ofdmts_config, ConfigDel>;
using Data = std::unique_ptr<ofdmts_dataset, DataDel>;
using Model = std::unique_ptr<ofdmts_model, ModelDel>;
using Results = std::unique_ptr<ofdmts_results, ResultsDel>;

Config make_config(int n, int ng, int root) {
    ofdmts_config* c = nullptr;
    REQUIRE(ofdmts_config_create(n, ng, root, &c) == OFDMTS_OK);
    return Config(c);
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

// Noiseless single-path window: the training symbol's CP at theta, zeros elsewhere.
std::vector<double> clean_window(const ofdmts_dims& d, int theta, int root) {
    const double pi = std::acos(-1.0);
    std::vector<std::complex<double>> body(static_cast<std::size_t>(d.n));
    for (int t = 0; t < d.n; ++t) {
        std::complex<double> acc{};
        for (int k = 0; k < d.n; ++k) {
            const double zc = -pi * root * double(k) * k / d.n;
            acc += std::polar(1.0, zc + 2 * pi * double(k) * t / d.n);
        }
        body[t] = acc / std::sqrt(double(d.n));
    }
    std::vector<double> y(2 * static_cast<std::size_t>(d.nw), 0.0);
    for (int i = 0; i < d.n + d.ng; ++i) {
        const auto v = body[static_cast<std::size_t>((i - d.ng + d.n) % d.n)];
        y[2 * (theta + i)] = v.real();
        y[2 * (theta + i) + 1] = v.imag();
    }
    return y;
}

} // namespace

TEST_CASE("status strings and version") {
    CHECK(std::string(ofdmts_version()) == "0.1.0");
    CHECK(std::strlen(ofdmts_status_string(OFDMTS_OK)) > 0);
    CHECK(std::string(ofdmts_status_string(OFDMTS_E_IO)) != ofdmts_status_string(OFDMTS_E_FORMAT));
    CHECK(std::strlen(ofdmts_status_string(static_cast<ofdmts_status>(1234))) > 0);
}

TEST_CASE("config handles") {
    auto c = make_config(128, 32, 25);
    ofdmts_dims d{};
    REQUIRE(ofdmts_config_dims(c.get(), &d) == OFDMTS_OK);
    CHECK(d.n == 128);
    CHECK(d.ng == 32);
    CHECK(d.nw == 288);
    CHECK(d.ns == 160);
    CHECK(d.zc_root == 25);

    ofdmts_config* bad = reinterpret_cast<ofdmts_config*>(0x1);
    CHECK(ofdmts_config_create(128, 128, 25, &bad) == OFDMTS_E_INVALID_CP);
    CHECK(bad == reinterpret_cast<ofdmts_config*>(0x1));
    CHECK(std::strlen(ofdmts_last_error()) > 0);
    CHECK(ofdmts_config_create(128, 32, 2, &bad) == OFDMTS_E_INVALID_ROOT);
    CHECK(ofdmts_config_create(128, 32, 25, nullptr) == OFDMTS_E_INVALID_ARGUMENT);
    CHECK(ofdmts_config_dims(nullptr, &d) == OFDMTS_E_INVALID_ARGUMENT);
    ofdmts_config* loaded = nullptr;
    CHECK(ofdmts_config_load("/nonexistent/x.cfg", &loaded) == OFDMTS_E_IO);
    CHECK(loaded == nullptr);
    ofdmts_config_destroy(nullptr);
}

TEST_CASE("timing metric and synchronize") {
    auto c = make_config(128, 32, 25);
    ofdmts_dims d{};
    REQUIRE(ofdmts_config_dims(c.get(), &d) == OFDMTS_OK);
    const auto y = clean_window(d, 40, 25);
    std::vector<double> f(static_cast<std::size_t>(d.ns));
    REQUIRE(ofdmts_timing_metric(c.get(), y.data(), d.nw, f.data(), f.size()) == OFDMTS_OK);
    CHECK(std::abs(f[72] - 128.0 * 128.0) < 1e-6);
    int theta_hat = -1;
    REQUIRE(ofdmts_synchronize(c.get(), nullptr, y.data(), d.nw, &theta_hat) == OFDMTS_OK);
    CHECK(theta_hat == 72);
    CHECK(ofdmts_timing_metric(c.get(), y.data(), 10, f.data(), f.size()) == OFDMTS_E_DIMENSION);
    CHECK(ofdmts_timing_metric(c.get(), y.data(), d.nw, f.data(), 3) == OFDMTS_E_DIMENSION);
    const std::vector<double> zero(2 * static_cast<std::size_t>(d.nw), 0.0);
    CHECK(ofdmts_synchronize(c.get(), nullptr, zero.data(), d.nw, nullptr) == OFDMTS_E_INVALID_ARGUMENT);
}

TEST_CASE("dataset, model and evaluation round trip") {
    auto c = make_config(64, 32, 5);
    ofdmts_gen_options g = ofdmts_gen_options_default();
    CHECK(g.los_ratio == 0);
    ofdmts_dataset* raw_data = nullptr;
    REQUIRE(ofdmts_dataset_generate(c.get(), &g, 64, 3, &raw_data) == OFDMTS_OK);
    Data data(raw_data);
    CHECK(ofdmts_dataset_size(data.get()) == 64);

    const auto dpath = temp_path("ofdmts_capi_data.bin");
    REQUIRE(ofdmts_dataset_save(data.get(), dpath.c_str()) == OFDMTS_OK);
    ofdmts_dataset* reloaded = nullptr;
    REQUIRE(ofdmts_dataset_load(dpath.c_str(), c.get(), &reloaded) == OFDMTS_OK);
    CHECK(ofdmts_dataset_size(reloaded) == 64);
    ofdmts_dataset_destroy(reloaded);
    auto big = make_config(128, 32, 25);
    ofdmts_dataset* mismatch = nullptr;
    CHECK(ofdmts_dataset_load(dpath.c_str(), big.get(), &mismatch) == OFDMTS_E_DIMENSION);
    CHECK(mismatch == nullptr);

    g.los_ratio = 32;
    CHECK(ofdmts_dataset_generate(c.get(), &g, 4, 3, &mismatch) == OFDMTS_E_PRIOR);
    g = ofdmts_gen_options_default();
    g.label_mode = static_cast<ofdmts_label_mode>(7);
    CHECK(ofdmts_dataset_generate(c.get(), &g, 4, 3, &mismatch) == OFDMTS_E_INVALID_ARGUMENT);

    ofdmts_train_options t = ofdmts_train_options_default();
    CHECK(t.learning_rate == 1e-3);
    CHECK(t.batch_size == 32);
    CHECK(t.max_epochs == 100);
    t.max_epochs = 4;
    ofdmts_model* raw_model = nullptr;
    REQUIRE(ofdmts_model_train(data.get(), &t, 9, &raw_model) == OFDMTS_OK);
    Model model(raw_model);
    size_t count = 0;
    REQUIRE(ofdmts_model_loss_trace(model.get(), nullptr, 0, &count) == OFDMTS_OK);
    CHECK(count == 5);
    std::vector<ofdmts_epoch_loss> trace(count);
    REQUIRE(ofdmts_model_loss_trace(model.get(), trace.data(), trace.size(), &count) == OFDMTS_OK);
    CHECK(trace[0].epoch == 0);
    CHECK(trace[4].epoch == 4);
    CHECK(ofdmts_model_label_mode(model.get()) == OFDMTS_LABEL_TRIANGULAR);
    t.batch_size = 0;
    CHECK(ofdmts_model_train(data.get(), &t, 9, &raw_model) == OFDMTS_E_INVALID_ARGUMENT);

    const auto mpath = temp_path("ofdmts_capi_model.bin");
    REQUIRE(ofdmts_model_save(model.get(), mpath.c_str()) == OFDMTS_OK);
    ofdmts_model* raw_loaded = nullptr;
    REQUIRE(ofdmts_model_load(mpath.c_str(), c.get(), &raw_loaded) == OFDMTS_OK);
    Model loaded(raw_loaded);
    REQUIRE(ofdmts_model_loss_trace(loaded.get(), nullptr, 0, &count) == OFDMTS_OK);
    CHECK(count == 0);
    ofdmts_model* wrong = nullptr;
    CHECK(ofdmts_model_load(mpath.c_str(), big.get(), &wrong) == OFDMTS_E_DIMENSION);
    CHECK(ofdmts_model_load(dpath.c_str(), nullptr, &wrong) == OFDMTS_E_FORMAT);

    ofdmts_dims d{};
    REQUIRE(ofdmts_config_dims(c.get(), &d) == OFDMTS_OK);
    const auto y = clean_window(d, 3, 5);
    int theta_hat = -1;
    REQUIRE(ofdmts_synchronize(c.get(), loaded.get(), y.data(), d.nw, &theta_hat) == OFDMTS_OK);
    CHECK(theta_hat >= 0);
    CHECK(theta_hat < d.ns);
    CHECK(ofdmts_synchronize(big.get(), loaded.get(), y.data(), d.nw, &theta_hat) == OFDMTS_E_DIMENSION);

    ofdmts_results* raw_results = nullptr;
    REQUIRE(ofdmts_results_create(&raw_results) == OFDMTS_OK);
    Results results(raw_results);
    ofdmts_eval_options e = ofdmts_eval_options_default();
    CHECK(e.trials == 2000);
    const double snr[] = {0.0, 10.0};
    e.trials = 30;
    e.snr_db = snr;
    e.snr_count = 2;
    const ofdmts_model* models[] = {model.get(), nullptr};
    REQUIRE(ofdmts_evaluate(c.get(), "generalization-TDL-C", &e, models, 2, 1, results.get()) == OFDMTS_OK);
    REQUIRE(ofdmts_results_curve_count(results.get()) == 2);
    const char* scenario = nullptr;
    const char* method = nullptr;
    size_t points = 0;
    REQUIRE(ofdmts_results_curve_info(results.get(), 1, &scenario, &method, &points) == OFDMTS_OK);
    CHECK(std::string(scenario) == "generalization-TDL-C");
    CHECK(std::string(method) == "learned");
    CHECK(points == 2);
    ofdmts_curve_point p{};
    REQUIRE(ofdmts_results_point(results.get(), 0, 1, &p) == OFDMTS_OK);
    CHECK(p.snr_db == 10.0);
    CHECK(p.trials == 30);
    CHECK(p.ci_lo <= p.error_prob);
    CHECK(p.error_prob <= p.ci_hi);
    CHECK(ofdmts_results_point(results.get(), 0, 2, &p) == OFDMTS_E_INVALID_ARGUMENT);
    CHECK(ofdmts_results_curve_info(results.get(), 5, &scenario, &method, &points) == OFDMTS_E_INVALID_ARGUMENT);

    const auto cpath = temp_path("ofdmts_capi.csv");
    const auto spath = temp_path("ofdmts_capi.svg");
    CHECK(ofdmts_results_write_csv(results.get(), cpath.c_str()) == OFDMTS_OK);
    CHECK(ofdmts_results_write_svg(results.get(), spath.c_str(), nullptr) == OFDMTS_OK);
    CHECK(std::filesystem::file_size(cpath) > 0);

    CHECK(ofdmts_evaluate(c.get(), "nope", &e, nullptr, 0, 1, results.get()) == OFDMTS_E_INVALID_ARGUMENT);
    e.trials = 0;
    CHECK(ofdmts_evaluate(c.get(), "effectiveness", &e, nullptr, 0, 1, results.get()) == OFDMTS_E_INVALID_ARGUMENT);
    CHECK(ofdmts_results_curve_count(results.get()) == 2);

    for (const auto& path : {dpath, mpath, cpath, spath}) std::filesystem::remove(path);
}

TEST_CASE("presets") {
    REQUIRE(ofdmts_preset_count() == 6);
    CHECK(std::string(ofdmts_preset_name(0)) == "effectiveness");
    CHECK(ofdmts_preset_name(6) == nullptr);
    auto c = make_config(128, 32, 25);
    ofdmts_config* raw = nullptr;
    REQUIRE(ofdmts_preset_config("robustness-N96", c.get(), &raw) == OFDMTS_OK);
    Config n96(raw);
    ofdmts_dims d{};
    REQUIRE(ofdmts_config_dims(n96.get(), &d) == OFDMTS_OK);
    CHECK(d.n == 96);
    CHECK(d.ns == 128);
}

TEST_CASE("complexity") {
    double v = 0.0;
    REQUIRE(ofdmts_complexity_cm("prop", 128, 160, 32, 28, &v) == OFDMTS_OK);
    CHECK(v == 30720.0);
    REQUIRE(ofdmts_complexity_cm("ref-ompalg", 128, 160, 32, 28, &v) == OFDMTS_OK);
    CHECK(v == 2167396.0);
    CHECK(ofdmts_complexity_cm("bogus", 128, 160, 32, 28, &v) == OFDMTS_E_UNKNOWN_METHOD);
    CHECK(v == 2167396.0);
    CHECK(ofdmts_complexity_method_count() == 4);
    CHECK(ofdmts_complexity_method(4) == nullptr);
    CHECK(std::string(ofdmts_complexity_method(3)) == "prop");
}
