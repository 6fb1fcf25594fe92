/* qwlimits C API: discrete-time quantum walk engine with continuum-limit
 * verification experiments, exposed as a shared library with opaque handles
 * and error codes. All functions are thread-compatible: distinct handles may
 * be used from distinct threads; a single handle must not be shared without
 * external synchronization.
 */
#ifndef QWLIMITS_CAPI_H
#define QWLIMITS_CAPI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qw_status {
    QW_OK = 0,
    QW_ERR_INVALID_ARGUMENT = 1,
    QW_ERR_NOT_UNITARY = 2,
    QW_ERR_NON_HERMITIAN = 3,
    QW_ERR_DEGENERATE_SCHEDULE = 4,
    QW_ERR_ODD_STEP_COUNT = 5,
    QW_ERR_INSUFFICIENT_DATA = 6,
    QW_ERR_CUTOFF_TOO_SMALL = 7,
    QW_ERR_OUT_OF_RANGE = 8,
    QW_ERR_GRID_MISMATCH = 9,
    QW_ERR_INVALID_CONFIG = 10,
    QW_ERR_IO = 11,
    QW_ERR_INTERNAL = 12
} qw_status;

/* Short static description of a status code. */
const char* qw_status_message(qw_status status);

/* Library version string, e.g. "1.0.0". */
const char* qw_version(void);

/* ---------------------------------------------------------------- fields */

/* Two-component complex field on a periodic 1D grid. */
typedef struct qw_field qw_field;

/* Creates a zero field; n_sites must be even and >= 2, dx > 0.
 * On failure returns NULL and stores the code in *status when non-NULL. */
qw_field* qw_field_create(int n_sites, double dx, qw_status* status);
void qw_field_destroy(qw_field* field);
qw_field* qw_field_clone(const qw_field* field, qw_status* status);

int qw_field_n_sites(const qw_field* field);
double qw_field_dx(const qw_field* field);

qw_status qw_field_set(qw_field* field, int site, double re_l, double im_l, double re_r,
                       double im_r);
qw_status qw_field_get(const qw_field* field, int site, double* re_l, double* im_l, double* re_r,
                       double* im_r);

/* Sum over sites of |l|^2 + |r|^2. Returns a negative value on NULL input. */
double qw_field_norm(const qw_field* field);

/* ----------------------------------------------------------------- coins */

/* Coins are passed as 8 doubles: row-major 2x2, interleaved re/im:
 * { re00, im00, re01, im01, re10, im10, re11, im11 }. */

/* (1/sqrt2) [[1, -1], [1, 1]] */
qw_status qw_coin_hadamard(double out[8]);
/* e^{i delta} e^{-i psi sz/2} e^{-i theta sy/2} e^{-i phi sz/2} */
qw_status qw_coin_zyz(double delta, double psi, double theta, double phi, double out[8]);
/* e^{i pi l/m} e^{-i (pi l/m) n.sigma}; (nx,ny,nz) must be unit length. */
qw_status qw_coin_root_unity(int l, int m, double nx, double ny, double nz, double out[8]);

/* ------------------------------------------------------------------ walk */

/* Applies `steps` iterations of (shift o coin) in place.
 * The coin must be unitary to 1e-12. */
qw_status qw_walk_evolve(qw_field* field, const double coin[8], long steps);

/* One conditional translation: L reads from the right neighbor, R from the left. */
qw_status qw_walk_shift(qw_field* field);

/* ----------------------------------------------------------- experiments */

int qw_experiment_count(void);
/* Name of experiment i in [0, qw_experiment_count()), else NULL. */
const char* qw_experiment_name(int i);
/* Static description of what the experiment verifies, or NULL if unknown. */
const char* qw_experiment_describe(const char* name);

/* Runs an experiment. keys/values are n_params parallel arrays of parameter
 * overrides; out_dir receives summary.json plus CSV/plot files. *pass_out is
 * set to 1 when every tolerance check passed, else 0. On error, a message is
 * copied into err (when err != NULL, at most err_len-1 chars). */
qw_status qw_experiment_run(const char* experiment, const char* const* keys,
                            const char* const* values, int n_params, const char* out_dir,
                            uint64_t seed, int jobs, int* pass_out, char* err, size_t err_len);

#ifdef __cplusplus
}
#endif

#endif /* QWLIMITS_CAPI_H */
