#ifndef IDGSC_H
#define IDGSC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IdgscStatus {
  IDGSC_STATUS_OK = 0,
  /**
   * Cryptographic rejection: the ciphertext did not verify.
   */
  IDGSC_STATUS_REJECT = 1,
  IDGSC_STATUS_NULL_POINTER = 2,
  IDGSC_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A key required by the mode is absent, or one is given that must not be.
   */
  IDGSC_STATUS_MISSING_KEY = 4,
  IDGSC_STATUS_DECODE = 5,
  /**
   * Wrong passphrase or damaged master-key file.
   */
  IDGSC_STATUS_UNLOCK = 6,
  /**
   * A bug; the library caught a panic.
   */
  IDGSC_STATUS_INTERNAL = 7,
} IdgscStatus;

/**
 * A user's key pair.
 */
typedef struct IdgscKeyPair IdgscKeyPair;

/**
 * The master secret.
 */
typedef struct IdgscMasterKey IdgscMasterKey;

/**
 * Public system parameters.
 */
typedef struct IdgscParams IdgscParams;

/**
 * Bytes owned by the library until passed to [`idgsc_buffer_free`].
 */
typedef struct IdgscBuffer {
  uint8_t *data;
  size_t len;
} IdgscBuffer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of `status`.
 */
const char *idgsc_status_message(enum IdgscStatus status);

/**
 * Releases a buffer returned by this library. Null data is a no-op.
 *
 * # Safety
 * `buffer` must come from this library and not have been freed.
 */
void idgsc_buffer_free(struct IdgscBuffer buffer);

/**
 * Generates parameters and a master key. Widths are in bits; zero selects
 * the default of 256.
 *
 * # Safety
 * Both output pointers must be valid for writes.
 */
enum IdgscStatus idgsc_setup(uint32_t id_bits,
                             uint32_t msg_bits,
                             struct IdgscParams **params_out,
                             struct IdgscMasterKey **master_out);

/**
 * # Safety
 * `params` must be null or a live handle; `out_buf` valid for writes.
 */
enum IdgscStatus idgsc_params_encode(const struct IdgscParams *params, struct IdgscBuffer *out_buf);

/**
 * # Safety
 * `data` must point to `len` readable bytes; `params_out` valid for writes.
 */
enum IdgscStatus idgsc_params_decode(const uint8_t *data,
                                     size_t len,
                                     struct IdgscParams **params_out);

/**
 * # Safety
 * `params` must be null or a handle from this library, not yet freed.
 */
void idgsc_params_free(struct IdgscParams *params);

/**
 * Seals the master key under a passphrase with Argon2id; zero costs select
 * the defaults.
 *
 * # Safety
 * Pointers must be valid for their lengths; `out_buf` valid for writes.
 */
enum IdgscStatus idgsc_master_encode(const struct IdgscMasterKey *master,
                                     const uint8_t *passphrase,
                                     size_t passphrase_len,
                                     uint32_t kdf_memory_kib,
                                     uint32_t kdf_iterations,
                                     struct IdgscBuffer *out_buf);

/**
 * # Safety
 * Pointers must be valid for their lengths; `master_out` valid for writes.
 */
enum IdgscStatus idgsc_master_decode(const uint8_t *data,
                                     size_t len,
                                     const uint8_t *passphrase,
                                     size_t passphrase_len,
                                     struct IdgscMasterKey **master_out);

/**
 * # Safety
 * `master` must be null or a handle from this library, not yet freed.
 */
void idgsc_master_free(struct IdgscMasterKey *master);

/**
 * Derives the key pair for the identity labelled `label`.
 *
 * # Safety
 * Handles must be live; `label` must point to `label_len` bytes.
 */
enum IdgscStatus idgsc_extract(const struct IdgscParams *params,
                               const struct IdgscMasterKey *master,
                               const uint8_t *label,
                               size_t label_len,
                               struct IdgscKeyPair **key_out);

/**
 * Encodes the full key pair, private half included.
 *
 * # Safety
 * `key` must be a live handle; `out_buf` valid for writes.
 */
enum IdgscStatus idgsc_key_encode(const struct IdgscKeyPair *key, struct IdgscBuffer *out_buf);

/**
 * Decodes a private key file and checks it against `params`. Public-only
 * files are refused with [`IdgscStatus::MissingKey`].
 *
 * # Safety
 * `params` must be live; `data` must point to `len` bytes.
 */
enum IdgscStatus idgsc_key_decode(const struct IdgscParams *params,
                                  const uint8_t *data,
                                  size_t len,
                                  struct IdgscKeyPair **key_out);

/**
 * # Safety
 * `key` must be null or a handle from this library, not yet freed.
 */
void idgsc_key_free(struct IdgscKeyPair *key);

/**
 * Pads and signcrypts `data` of any length into a stream container.
 * `sender_key` is required exactly when `sender` is non-null.
 *
 * # Safety
 * Handles must be null or live; byte pointers valid for their lengths.
 */
enum IdgscStatus idgsc_signcrypt(const struct IdgscParams *params,
                                 const struct IdgscKeyPair *sender_key,
                                 const uint8_t *sender,
                                 size_t sender_len,
                                 const uint8_t *receiver,
                                 size_t receiver_len,
                                 const uint8_t *data,
                                 size_t data_len,
                                 struct IdgscBuffer *out_buf);

/**
 * Verifies and opens a stream or single-envelope container for the claimed
 * `(sender, receiver)` pair. Any container that fails to decode is a
 * [`IdgscStatus::Reject`], like a failed verification.
 *
 * # Safety
 * Handles must be null or live; byte pointers valid for their lengths.
 */
enum IdgscStatus idgsc_unsigncrypt(const struct IdgscParams *params,
                                   const uint8_t *sender,
                                   size_t sender_len,
                                   const struct IdgscKeyPair *receiver_key,
                                   const uint8_t *receiver,
                                   size_t receiver_len,
                                   const uint8_t *ciphertext,
                                   size_t ciphertext_len,
                                   struct IdgscBuffer *out_buf);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDGSC_H */
