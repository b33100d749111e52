// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the aircomp simulation library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns an aircomp_status; on failure
 * aircomp_last_error() describes the problem for the calling thread.
 * Strings returned through char** are allocated by the library and released
 * with aircomp_string_free.
 */
#ifndef AIRCOMP_AIRCOMP_H_
#define AIRCOMP_AIRCOMP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AIRCOMP_BUILDING_LIBRARY)
#    define AIRCOMP_API __declspec(dllexport)
#  else
#    define AIRCOMP_API __declspec(dllimport)
#  endif
#else
#  define AIRCOMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aircomp_status {
  AIRCOMP_OK = 0,
  AIRCOMP_ERR_INVALID_ARGUMENT = 1, /* null handle/pointer or bad size */
  AIRCOMP_ERR_PARSE = 2,            /* config text rejected */
  AIRCOMP_ERR_RANGE = 3,            /* value outside the codeword range */
  AIRCOMP_ERR_CONTRACT = 4,         /* precondition violated */
  AIRCOMP_ERR_IO = 5,               /* file could not be read or written */
  AIRCOMP_ERR_INTERNAL = 6
} aircomp_status;

typedef struct aircomp_config aircomp_config;
typedef struct aircomp_sweep aircomp_sweep;

typedef struct aircomp_sweep_row {
  const char* scheme; /* experiment name; valid while the sweep handle lives */
  double snr_db;
  double nmse;
  double stderr_nmse;
  double quantization_nmse;
  double mean_active;
  double mean_p;
  int64_t trials;
  uint64_t seed;
} aircomp_sweep_row;

typedef struct aircomp_check {
  const char* name;
  int passed;
  const char* detail;
} aircomp_check;

/* Receives each verification result; pointers are only valid during the call. */
typedef void (*aircomp_check_fn)(const aircomp_check* check, void* user);

AIRCOMP_API const char* aircomp_version(void);
AIRCOMP_API const char* aircomp_last_error(void);
AIRCOMP_API const char* aircomp_status_string(aircomp_status status);
AIRCOMP_API void aircomp_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

AIRCOMP_API aircomp_status aircomp_config_parse(const char* text, aircomp_config** out);
AIRCOMP_API aircomp_status aircomp_config_load(const char* path, aircomp_config** out);
AIRCOMP_API void aircomp_config_free(aircomp_config* config);
AIRCOMP_API aircomp_status aircomp_config_experiment_count(const aircomp_config* config,
                                                           size_t* count);
AIRCOMP_API aircomp_status aircomp_config_output(const aircomp_config* config,
                                                 const char** path);
/* Overrides apply to every experiment. */
AIRCOMP_API aircomp_status aircomp_config_set_seed(aircomp_config* config, uint64_t seed);
AIRCOMP_API aircomp_status aircomp_config_set_trials(aircomp_config* config, int64_t trials);
AIRCOMP_API aircomp_status aircomp_config_serialize(const aircomp_config* config, char** text);

/* ---- sweeps ----------------------------------------------------------- */

/* threads <= 0 uses the hardware concurrency. */
AIRCOMP_API aircomp_status aircomp_sweep_run(const aircomp_config* config, int threads,
                                             aircomp_sweep** out);
AIRCOMP_API void aircomp_sweep_free(aircomp_sweep* sweep);
AIRCOMP_API aircomp_status aircomp_sweep_row_count(const aircomp_sweep* sweep, size_t* count);
AIRCOMP_API aircomp_status aircomp_sweep_get_row(const aircomp_sweep* sweep, size_t index,
                                                 aircomp_sweep_row* row);
AIRCOMP_API aircomp_status aircomp_sweep_write_csv(const aircomp_sweep* sweep, const char* path);
AIRCOMP_API aircomp_status aircomp_sweep_csv(const aircomp_sweep* sweep, char** text);
AIRCOMP_API aircomp_status aircomp_sweep_write_metadata(const aircomp_sweep* sweep,
                                                        const char* path);

/* ---- tools ------------------------------------------------------------ */

/* Runs the built-in oracle suite; *failures receives the number of failed checks. */
AIRCOMP_API aircomp_status aircomp_verify(int quick, uint64_t seed, aircomp_check_fn callback,
                                          void* user, int* failures);

/* Single-trial trace of the proposed scheme with K devices and b bits (L = b). */
AIRCOMP_API aircomp_status aircomp_demo(uint64_t seed, int devices, int bits, double snr_db,
                                        char** text);

/* Writes one channel realization (see WriteRealization) to path. */
AIRCOMP_API aircomp_status aircomp_channel_dump(int devices, int subcarriers, int taps,
                                                double noise_power, double csi_error_radius,
                                                uint64_t seed, const char* path);

/* ---- primitives ------------------------------------------------------- */

/* bits[0..length) receives x_1..x_L (LSB first). */
AIRCOMP_API aircomp_status aircomp_encode(int64_t value, int length, uint8_t* bits);
AIRCOMP_API aircomp_status aircomp_decode(const double* sums, int length, double zeta,
                                          double* value);
/* active_mask[k] receives 1 for selected devices. */
AIRCOMP_API aircomp_status aircomp_greedy_select(const double* effective_gains, int devices,
                                                 double noise_power, uint8_t* active_mask,
                                                 double* scaling, double* mse);
AIRCOMP_API aircomp_status aircomp_lmmse_mse(double scaling, int active, int devices,
                                             double noise_power, double* mse);

#ifdef __cplusplus
}
#endif

#endif /* AIRCOMP_AIRCOMP_H_ */
