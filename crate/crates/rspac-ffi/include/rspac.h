/* C interface to the rspac forward-error-correction library. */

#ifndef RSPAC_H
#define RSPAC_H

/* Generated by cbindgen from rspac-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum RspacStatus {
  RSPAC_OK = 0,
  RSPAC_NULL_POINTER = 1,
  RSPAC_INVALID_ARGUMENT = 2,
  RSPAC_LENGTH_MISMATCH = 3,
  RSPAC_CONFIG_ERROR = 4,
  RSPAC_IO_ERROR = 5,
} RspacStatus;

// Scheme selector for [`rspac_scheme_new`].
typedef enum RspacScheme {
  // Standalone PAC(64,32).
  RSPAC_SCHEME_PAC = 0,
  // RS(252,220,33) + 63 × PAC(64,32), no interleaver.
  RSPAC_SCHEME_RS_PAC1 = 1,
  // Depth-8 interleaved RS(255,223,33) + 255 × PAC(128,64).
  RSPAC_SCHEME_RS_PAC_IL = 2,
  // Depth-8 interleaved RS(255,223,33) + rate-1/2 64-state CC.
  RSPAC_SCHEME_RS_CC = 3,
} RspacScheme;

// Opaque PAC codec (profile + precoder + metric biases).
typedef struct RspacPac RspacPac;

// Opaque Reed-Solomon codec.
typedef struct RspacRs RspacRs;

// Opaque encoder/decoder for one stock concatenation scheme.
typedef struct RspacSchemeHandle RspacSchemeHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent error on this thread, or NULL.
const char *rspac_last_error_message(void);

// Library version as a static string.
const char *rspac_version(void);

// Create an (n, k) RS codec over GF(2^8); n < 255 shortens the
// (255, k + 255 − n) mother code.
//
// # Safety
// `out` must be a valid location for one pointer.
enum RspacStatus rspac_rs_new(uint32_t n, uint32_t k, struct RspacRs **out);

// # Safety
// `rs` must be a handle from [`rspac_rs_new`] (or NULL) not yet freed.
void rspac_rs_free(struct RspacRs *rs);

// # Safety
// `msg` must hold `msg_len == k` bytes; `codeword_out` room for `n`.
enum RspacStatus rspac_rs_encode(const struct RspacRs *rs,
                                 const uint8_t *msg,
                                 uintptr_t msg_len,
                                 uint8_t *codeword_out);

// Decode `n` received symbols. On success `*failed_out` reports whether
// the decoder declared a failure; the buffer then holds the received
// word unchanged (the caller's fallback), otherwise the corrected
// codeword, with `*error_count_out` corrections applied.
//
// # Safety
// `received` must hold `received_len == n` bytes; `codeword_out` room
// for `n` bytes.
enum RspacStatus rspac_rs_decode(const struct RspacRs *rs,
                                 const uint8_t *received,
                                 uintptr_t received_len,
                                 uint8_t *codeword_out,
                                 uint32_t *error_count_out,
                                 bool *failed_out);

// Create an (n, k) PAC codec.
//
// - `data_indices`: `k` 1-based profile indices, or NULL for the
//   Reed-Muller profile.
// - `conv_octal`: connection polynomial in octal, or NULL for "3211".
// - `biases`: `n` per-bit-channel biases in `[0, 1]`, or NULL to estimate
//   them at `design_snr_db` with `bias_samples` samples and `bias_seed`.
//
// # Safety
// Non-NULL pointers must reference buffers of the stated lengths;
// `conv_octal` must be a NUL-terminated string.
enum RspacStatus rspac_pac_new(uint32_t n,
                               uint32_t k,
                               const uint32_t *data_indices,
                               const char *conv_octal,
                               const double *biases,
                               double design_snr_db,
                               uintptr_t bias_samples,
                               uint64_t bias_seed,
                               struct RspacPac **out);

// # Safety
// `pac` must be a handle from [`rspac_pac_new`] (or NULL) not yet freed.
void rspac_pac_free(struct RspacPac *pac);

// # Safety
// `pac` must be a live handle.
uint32_t rspac_pac_n(const struct RspacPac *pac);

// # Safety
// `pac` must be a live handle.
uint32_t rspac_pac_k(const struct RspacPac *pac);

// Encode `k` data bits (one byte each) into `n` codeword bits;
// `systematic` selects the encoder variant.
//
// # Safety
// `data_bits` must hold `data_len == k` bytes; `codeword_out` room for `n`.
enum RspacStatus rspac_pac_encode(const struct RspacPac *pac,
                                  const uint8_t *data_bits,
                                  uintptr_t data_len,
                                  bool systematic,
                                  uint8_t *codeword_out);

// Fano-decode `n` channel LLRs (positive favors bit 0) and extract the
// systematic data bits. `*anv_out` reports visits per bit and
// `*budget_exhausted_out` whether the search hit `visit_budget`.
//
// # Safety
// `llrs` must hold `llr_len == n` doubles; `data_out` room for `k` bytes.
enum RspacStatus rspac_pac_decode(const struct RspacPac *pac,
                                  const double *llrs,
                                  uintptr_t llr_len,
                                  double delta,
                                  uint64_t visit_budget,
                                  uint8_t *data_out,
                                  double *anv_out,
                                  bool *budget_exhausted_out);

// Instantiate a stock scheme with its shipped profile and seeded bias
// estimate (deterministic for a given build).
//
// # Safety
// `out` must be a valid location for one pointer.
enum RspacStatus rspac_scheme_new(enum RspacScheme scheme, struct RspacSchemeHandle **out);

// # Safety
// `scheme` must be a handle from [`rspac_scheme_new`] (or NULL).
void rspac_scheme_free(struct RspacSchemeHandle *scheme);

// Payload size in bytes for [`rspac_scheme_encode_bytes`].
//
// # Safety
// `scheme` must be a live handle.
uintptr_t rspac_scheme_data_len(const struct RspacSchemeHandle *scheme);

// Encoded size in bytes (packed bits, zero-padded to a byte boundary).
//
// # Safety
// `scheme` must be a live handle.
uintptr_t rspac_scheme_packed_len(const struct RspacSchemeHandle *scheme);

// Encode a payload of `rspac_scheme_data_len` bytes into
// `rspac_scheme_packed_len` packed codeword bytes (LSB-first bits).
//
// # Safety
// Buffers must have the advertised sizes.
enum RspacStatus rspac_scheme_encode_bytes(const struct RspacSchemeHandle *scheme,
                                           const uint8_t *data,
                                           uintptr_t data_len,
                                           uint8_t *packed_out);

// Decode packed codeword bytes (hard decisions) back into the payload.
//
// # Safety
// Buffers must have the advertised sizes.
enum RspacStatus rspac_scheme_decode_bytes(const struct RspacSchemeHandle *scheme,
                                           const uint8_t *packed,
                                           uintptr_t packed_len,
                                           uint8_t *data_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSPAC_H */
