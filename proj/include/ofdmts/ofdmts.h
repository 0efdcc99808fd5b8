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

#ifndef OFDMTS_OFDMTS_H
#define OFDMTS_OFDMTS_H

/*
 * C interface to the ofdmts timing-synchronization library.
 *
 * All objects are opaque handles created by *_create / *_load / *_generate
 * functions and released with the matching *_destroy. Every fallible call
 * returns an ofdmts_status; on failure ofdmts_last_error() returns a
 * thread-local message describing the most recent error on the calling
 * thread. Output pointers are left untouched when a call fails.
 *
 * Complex sample buffers are interleaved (re, im) doubles.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OFDMTS_BUILDING_LIBRARY)
#    define OFDMTS_API __declspec(dllexport)
#  else
#    define OFDMTS_API __declspec(dllimport)
#  endif
#else
#  define OFDMTS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ofdmts_status {
    OFDMTS_OK = 0,
    OFDMTS_E_INVALID_ARGUMENT = 1,
    OFDMTS_E_INVALID_ROOT = 2,
    OFDMTS_E_INVALID_CP = 3,
    OFDMTS_E_INVALID_OFFSET = 4,
    OFDMTS_E_DIMENSION = 5,
    OFDMTS_E_PROFILE = 6,
    OFDMTS_E_DEGENERATE = 7,
    OFDMTS_E_PRIOR = 8,
    OFDMTS_E_FORMAT = 9,
    OFDMTS_E_IO = 10,
    OFDMTS_E_TRAINING = 11,
    OFDMTS_E_UNKNOWN_METHOD = 12,
    OFDMTS_E_INTERNAL = 99
} ofdmts_status;

typedef enum ofdmts_label_mode {
    OFDMTS_LABEL_TRIANGULAR = 0,
    OFDMTS_LABEL_RECTANGULAR = 1
} ofdmts_label_mode;

typedef struct ofdmts_config ofdmts_config;
typedef struct ofdmts_dataset ofdmts_dataset;
typedef struct ofdmts_model ofdmts_model;
typedef struct ofdmts_results ofdmts_results;

OFDMTS_API const char* ofdmts_version(void);
OFDMTS_API const char* ofdmts_status_string(ofdmts_status status);
OFDMTS_API const char* ofdmts_last_error(void);

/* ---- frame configuration ---------------------------------------------- */

OFDMTS_API ofdmts_status ofdmts_config_create(int n, int ng, int zc_root, ofdmts_config** out);
OFDMTS_API ofdmts_status ofdmts_config_load(const char* path, ofdmts_config** out);
OFDMTS_API void ofdmts_config_destroy(ofdmts_config* config);

typedef struct ofdmts_dims {
    int n;       /* subcarriers / DFT length */
    int ng;      /* cyclic prefix */
    int nw;      /* observation window, 2N + Ng */
    int ns;      /* search range, N + Ng */
    int zc_root;
} ofdmts_dims;

OFDMTS_API ofdmts_status ofdmts_config_dims(const ofdmts_config* config, ofdmts_dims* out);

/* ---- single-frame processing ------------------------------------------ */

/* Writes the Ns-long timing metric for an Nw-long observed window. */
OFDMTS_API ofdmts_status ofdmts_timing_metric(const ofdmts_config* config, const double* y_interleaved,
                                              size_t nw, double* metric_out, size_t ns);

/* Estimates the DFT-window start for an Nw-long observed window with the
 * classic correlator (model == NULL) or a trained model. */
OFDMTS_API ofdmts_status ofdmts_synchronize(const ofdmts_config* config, const ofdmts_model* model,
                                            const double* y_interleaved, size_t nw, int* theta_hat);

/* ---- training data ----------------------------------------------------- */

typedef struct ofdmts_gen_options {
    int los_ratio;        /* <= 0 selects ceil(7 Ng / 8) */
    ofdmts_label_mode label_mode;
    double eta_min;
    double eta_max;
    double cfo;
} ofdmts_gen_options;

OFDMTS_API ofdmts_gen_options ofdmts_gen_options_default(void);

OFDMTS_API ofdmts_status ofdmts_dataset_generate(const ofdmts_config* config, const ofdmts_gen_options* options,
                                                 size_t count, uint64_t seed, ofdmts_dataset** out);
OFDMTS_API ofdmts_status ofdmts_dataset_save(const ofdmts_dataset* data, const char* path);
/* config may be NULL to skip the shape check. */
OFDMTS_API ofdmts_status ofdmts_dataset_load(const char* path, const ofdmts_config* config, ofdmts_dataset** out);
OFDMTS_API size_t ofdmts_dataset_size(const ofdmts_dataset* data);
OFDMTS_API void ofdmts_dataset_destroy(ofdmts_dataset* data);

/* ---- model ------------------------------------------------------------- */

typedef struct ofdmts_train_options {
    double learning_rate;
    int batch_size;
    int max_epochs;
    int patience;
    double val_fraction;
    double lr_decay;
} ofdmts_train_options;

OFDMTS_API ofdmts_train_options ofdmts_train_options_default(void);

typedef struct ofdmts_epoch_loss {
    int epoch;
    double train;
    double validation; /* NaN without a validation split */
} ofdmts_epoch_loss;

OFDMTS_API ofdmts_status ofdmts_model_train(const ofdmts_dataset* data, const ofdmts_train_options* options,
                                            uint64_t seed, ofdmts_model** out);
/* Copies up to capacity entries of the loss trace; *count receives the full
 * trace length. Models loaded from disk have an empty trace. */
OFDMTS_API ofdmts_status ofdmts_model_loss_trace(const ofdmts_model* model, ofdmts_epoch_loss* entries,
                                                 size_t capacity, size_t* count);
OFDMTS_API ofdmts_status ofdmts_model_save(const ofdmts_model* model, const char* path);
/* config may be NULL to skip the shape check. */
OFDMTS_API ofdmts_status ofdmts_model_load(const char* path, const ofdmts_config* config, ofdmts_model** out);
OFDMTS_API ofdmts_label_mode ofdmts_model_label_mode(const ofdmts_model* model);
OFDMTS_API void ofdmts_model_destroy(ofdmts_model* model);

/* ---- evaluation -------------------------------------------------------- */

typedef struct ofdmts_eval_options {
    long trials;
    double cfo;
    const double* snr_db; /* NULL selects the preset SNR list */
    size_t snr_count;
    int fixed_theta;      /* < 0 draws theta uniformly per trial */
    const char* profile_dir; /* NULL selects the built-in profile directory */
} ofdmts_eval_options;

OFDMTS_API ofdmts_eval_options ofdmts_eval_options_default(void);

/* Preset names: effectiveness, robustness-N96, robustness-N128,
 * robustness-N160, generalization-TDL-B, generalization-TDL-C. The
 * robustness presets replace N in the config they are built from. */
OFDMTS_API size_t ofdmts_preset_count(void);
OFDMTS_API const char* ofdmts_preset_name(size_t index);
/* Dimensions the named preset evaluates with when built from config. */
OFDMTS_API ofdmts_status ofdmts_preset_config(const char* preset, const ofdmts_config* config, ofdmts_config** out);

OFDMTS_API ofdmts_status ofdmts_results_create(ofdmts_results** out);
OFDMTS_API void ofdmts_results_destroy(ofdmts_results* results);

/* Runs the classic correlator, plus each non-NULL model, on the preset and
 * appends one curve per method to results. */
OFDMTS_API ofdmts_status ofdmts_evaluate(const ofdmts_config* config, const char* preset,
                                         const ofdmts_eval_options* options, const ofdmts_model* const* models,
                                         size_t model_count, uint64_t seed, ofdmts_results* results);

typedef struct ofdmts_curve_point {
    double snr_db;
    long trials;
    long errors;
    double error_prob;
    double ci_lo;
    double ci_hi;
} ofdmts_curve_point;

OFDMTS_API size_t ofdmts_results_curve_count(const ofdmts_results* results);
/* Name pointers stay valid until results is modified or destroyed. */
OFDMTS_API ofdmts_status ofdmts_results_curve_info(const ofdmts_results* results, size_t curve,
                                                   const char** scenario, const char** method, size_t* points);
OFDMTS_API ofdmts_status ofdmts_results_point(const ofdmts_results* results, size_t curve, size_t point,
                                              ofdmts_curve_point* out);
OFDMTS_API ofdmts_status ofdmts_results_write_csv(const ofdmts_results* results, const char* path);
OFDMTS_API ofdmts_status ofdmts_results_write_svg(const ofdmts_results* results, const char* path,
                                                  const char* title);

/* ---- complexity -------------------------------------------------------- */

/* Method ids: prop, ref-newts, ref-labelts, ref-ompalg. */
OFDMTS_API ofdmts_status ofdmts_complexity_cm(const char* method, int n, int ns, int ng, int taps, double* out);
OFDMTS_API size_t ofdmts_complexity_method_count(void);
OFDMTS_API const char* ofdmts_complexity_method(size_t index);

#ifdef __cplusplus
}
#endif

#endif /* OFDMTS_OFDMTS_H */
