/* C interface to the almost abelian Hermitian geometry library.
 *
 * Every call returns an aah_status. Strings returned through char** are JSON
 * documents owned by the caller and released with aah_string_free. On failure the
 * message is available from aah_last_error() on the calling thread. */
#ifndef AAH_AAH_H
#define AAH_AAH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  AAH_OK = 0,
  AAH_INVALID_INPUT = 1,
  AAH_CONSISTENCY = 2,
  AAH_NONCONVERGENCE = 3,
  AAH_PRECONDITION = 4,
  AAH_NO_WITNESS = 5,
  AAH_DEGENERATE = 6,
  AAH_LOOKUP = 7,
  AAH_INTERNAL = 8
} aah_status;

typedef struct aah_algebra aah_algebra;

const char* aah_status_name(aah_status s);
const char* aah_last_error(void);
void aah_string_free(char* s);

/* {"n":2,"L":[[0,1,0],[1,0,0],[0,0,0]],"mode":"float","tolerance":1e-9}
 * or {"n":..,"mu":..,"v0":[..],"w0":[..],"D":[[..]]}. Entries are numbers or strings
 * "p/q"; float mode also accepts "pi/2"-style strings. default_tol applies when the
 * document has no "tolerance". */
aah_status aah_algebra_from_json(const char* json, double default_tol, aah_algebra** out);
void aah_algebra_free(aah_algebra* a);
/* 2n */
int aah_algebra_dim(const aah_algebra* a);

aah_status aah_analyze(const aah_algebra* a, char** json_out);
aah_status aah_classify(const aah_algebra* a, char** json_out);
aah_status aah_harmonic(const aah_algebra* a, char** json_out);
aah_status aah_skt(const aah_algebra* a, char** json_out);

/* [{"kind":"hyperbolic","m":3},{"kind":"rotation","angle":"pi/2"},
 *  {"kind":"unipotent","size":2,"param":1},{"kind":"identity","size":1},
 *  {"kind":"explicit","matrix":[[..]]}] */
aah_status aah_lattice_witness(const char* blocks_json, char** json_out);
/* [[..]] or {"E":[[..]]}, integer entries, det +-1 */
aah_status aah_lattice_abelianization(const char* matrix_json, char** json_out);

typedef void (*aah_flow_callback)(void* user, int start, long step, double energy, double grad_norm);

typedef struct {
  int starts;          /* random compatible starting structures */
  uint64_t seed;       /* start i uses seed + i */
  double tol_grad;
  long max_steps;
  aah_flow_callback on_step; /* optional; starts run sequentially when set */
  void* user;
} aah_flow_options;

void aah_flow_options_init(aah_flow_options* o);
/* AAH_NONCONVERGENCE when any start fails to converge; json_out is still filled. */
aah_status aah_flow(const aah_algebra* a, const aah_flow_options* o, char** json_out);

aah_status aah_catalog_list(char** json_out);
/* name is an entry name or "all"; params_json may be NULL or {"n":3,"m":3,"a":..,"b":..,"mu":..}.
 * AAH_CONSISTENCY when an entry fails; json_out is still filled. */
aah_status aah_catalog_run(const char* name, const char* params_json, char** json_out);

/* 0 when docs/formula-map.md style text covers every mapped operation exactly once. */
aah_status aah_verify_formula_map(const char* markdown, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
