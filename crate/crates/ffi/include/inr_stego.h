/*
 * C interface to the inrstego library.
 *
 * Maintained by hand alongside crates/ffi/src/lib.rs; the two must stay in
 * lockstep. Conventions:
 *
 *   - Keys are opaque handles. Free them with inr_stego_key_free.
 *   - Strings returned through `char **` parameters are owned by the
 *     library; free them with inr_stego_string_free.
 *   - All other buffers are allocated and owned by the caller. Their sizes
 *     follow from the key: the cover/container is side*side interleaved RGB
 *     (3 bytes per pixel, row-major, top-left first), and the sample matrix
 *     is sample_count rows of channel_count floats in grid order (slowest
 *     secret axis first).
 *   - Every fallible call returns a status; 0 is success. After a failure,
 *     inr_stego_last_error_message() describes it (thread-local, valid
 *     until the next call into the library from the same thread).
 */

#ifndef INR_STEGO_H
#define INR_STEGO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values match the command-line tool's exit codes. */
#define INR_STEGO_OK 0
#define INR_STEGO_ERR_INVALID 2   /* rejected argument or key */
#define INR_STEGO_ERR_DIVERGED 3  /* training lost a finite loss */
#define INR_STEGO_ERR_DATA 4      /* malformed input data */
#define INR_STEGO_ERR_INTERNAL 5  /* caught internal panic */

/* Secret kinds. */
#define INR_STEGO_MODALITY_VIDEO 0
#define INR_STEGO_MODALITY_AUDIO 1
#define INR_STEGO_MODALITY_IMAGE 2

/* Opaque key handle. */
typedef struct InrStegoKey InrStegoKey;

/* Training knobs. Obtain defaults from inr_stego_train_config_default and
 * override fields as needed. use_qat is a C boolean: 0 trains in plain float
 * and quantizes only at export. */
typedef struct InrStegoTrainConfig {
  uint64_t steps;
  size_t batch_size;
  float learning_rate;
  float beta;
  uint64_t shuffle_seed;
  int use_qat;
} InrStegoTrainConfig;

/* End-of-run quality figures reported by inr_stego_hide. */
typedef struct InrStegoHideStats {
  double secret_psnr_db;
  double cover_psnr_db;
  double cover_apd;
  double final_secret_loss;
  double final_cover_loss;
} InrStegoHideStats;

/* Message for the most recent failing call on this thread. Never NULL;
 * empty after a success. */
const char *inr_stego_last_error_message(void);

/* Library version as a static string. */
const char *inr_stego_version(void);

/* Builds a key with the default architecture. `modality` is one of the
 * INR_STEGO_MODALITY_* constants; `dims` lists the secret's axes, slowest
 * first (video: frames,height,width; audio: samples; image: height,width);
 * `cover_side` is the square container's side length. On success a new
 * handle is written to `out`. */
int inr_stego_key_create(int modality, const size_t *dims, size_t dims_len,
                         size_t cover_side, uint64_t seed, InrStegoKey **out);

/* Parses and validates a key from a NUL-terminated JSON string. */
int inr_stego_key_from_json(const char *json, InrStegoKey **out);

/* Serializes the key as pretty JSON. */
int inr_stego_key_to_json(const InrStegoKey *key, char **out);

/* SHA-256 fingerprint of the key as lowercase hex. */
int inr_stego_key_fingerprint(const InrStegoKey *key, char **out);

/* Releases a key handle. NULL is ignored. */
void inr_stego_key_free(InrStegoKey *key);

/* Releases a string the library returned. NULL is ignored. */
void inr_stego_string_free(char *s);

/* Buffer geometry implied by a key; all three return 0 on NULL. */
size_t inr_stego_key_cover_side(const InrStegoKey *key);
size_t inr_stego_key_sample_count(const InrStegoKey *key);
size_t inr_stego_key_channel_count(const InrStegoKey *key);

/* The library's training defaults. */
InrStegoTrainConfig inr_stego_train_config_default(void);

/* Trains a container that carries the secret. `cover_rgb` and
 * `out_container_rgb` are 3*side*side bytes; `samples` is
 * sample_count*channel_count normalized floats. `config` may be NULL for
 * defaults and `out_stats` may be NULL to skip the quality report. */
int inr_stego_hide(const InrStegoKey *key, const uint8_t *cover_rgb,
                   const float *samples, const InrStegoTrainConfig *config,
                   uint8_t *out_container_rgb, InrStegoHideStats *out_stats);

/* Rebuilds the carried network from a container and evaluates it over the
 * secret's grid. `out_samples` receives sample_count*channel_count floats. */
int inr_stego_reveal(const InrStegoKey *key, const uint8_t *container_rgb,
                     float *out_samples);

/* Normalization helpers matching the library's signal conventions. Each
 * converts `count` elements. Pixels map by 2p/255 - 1 and back by rounding;
 * 16-bit PCM maps by s/32768 and back by rounding with clamping. */
int inr_stego_pixels_to_samples(const uint8_t *pixels, size_t count, float *out);
int inr_stego_samples_to_pixels(const float *samples, size_t count, uint8_t *out);
int inr_stego_pcm16_to_samples(const int16_t *pcm, size_t count, float *out);
int inr_stego_samples_to_pcm16(const float *samples, size_t count, int16_t *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INR_STEGO_H */
