#include <stdio.h>
#include <string.h>

#include "idgsc.h"

#define CHECK(expr, want)                                                       \
    do {                                                                        \
        IdgscStatus s_ = (expr);                                                \
        if (s_ != (want)) {                                                     \
            fprintf(stderr, "%s:%d: %s -> %s\n", __FILE__, __LINE__, #expr,    \
                    idgsc_status_message(s_));                                  \
            return 1;                                                           \
        }                                                                       \
    } while (0)

int main(void) {
    IdgscParams *params = NULL;
    IdgscMasterKey *master = NULL;
    IdgscKeyPair *alice = NULL, *bob = NULL;
    const char *msg = "attack at dawn";

    CHECK(idgsc_setup(0, 0, &params, &master), IDGSC_STATUS_OK);
    CHECK(idgsc_extract(params, master, (const uint8_t *)"alice", 5, &alice), IDGSC_STATUS_OK);
    CHECK(idgsc_extract(params, master, (const uint8_t *)"bob", 3, &bob), IDGSC_STATUS_OK);

    IdgscBuffer ct, pt;
    CHECK(idgsc_signcrypt(params, alice, (const uint8_t *)"alice", 5, (const uint8_t *)"bob", 3,
                          (const uint8_t *)msg, strlen(msg), &ct),
          IDGSC_STATUS_OK);
    CHECK(idgsc_unsigncrypt(params, (const uint8_t *)"alice", 5, bob, (const uint8_t *)"bob", 3,
                            ct.data, ct.len, &pt),
          IDGSC_STATUS_OK);
    if (pt.len != strlen(msg) || memcmp(pt.data, msg, pt.len) != 0) {
        fprintf(stderr, "plaintext mismatch\n");
        return 1;
    }
    idgsc_buffer_free(pt);

    ct.data[ct.len / 2] ^= 1;
    CHECK(idgsc_unsigncrypt(params, (const uint8_t *)"alice", 5, bob, (const uint8_t *)"bob", 3,
                            ct.data, ct.len, &pt),
          IDGSC_STATUS_REJECT);
    idgsc_buffer_free(ct);

    CHECK(idgsc_setup(0, 0, NULL, &master), IDGSC_STATUS_NULL_POINTER);

    idgsc_key_free(alice);
    idgsc_key_free(bob);
    idgsc_master_free(master);
    idgsc_params_free(params);
    puts("ok");
    return 0;
}
