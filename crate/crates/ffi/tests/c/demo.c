#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "twomode.h"

#define CHECK(call)                                                        \
  do {                                                                     \
    TmStatus s_ = (call);                                                  \
    if (s_ != TM_STATUS_OK) {                                              \
      char msg_[256];                                                      \
      tm_last_error_message(msg_, sizeof msg_);                            \
      fprintf(stderr, "%s: %s: %s\n", #call, tm_status_name(s_), msg_);    \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  TmSimulator *sim = NULL;
  CHECK(tm_simulator_new(1.0, 2.0, 0.5, 0.5, &sim));

  double omega[2];
  CHECK(tm_simulator_eigenfrequencies(sim, omega));

  TmSeries *series = NULL;
  CHECK(tm_simulator_time_series(sim, 50.0, 0.01, &series));
  size_t n = tm_series_len(series);
  double *e = malloc(n * sizeof *e);
  CHECK(tm_series_copy(series, TM_COLUMN_E, e, n));
  double sup = 0.0;
  for (size_t i = 0; i < n; i++) {
    if (e[i] > sup) sup = e[i];
  }
  free(e);
  tm_series_free(series);

  TmSimulator *bad = NULL;
  TmStatus status = tm_simulator_new(1.0, 2.0, 0.1, 1.5, &bad);

  printf("omega %.6f %.6f\n", omega[0], omega[1]);
  printf("samples %zu\n", n);
  printf("sup_E %.6f\n", sup);
  printf("unstable %s %d\n", tm_status_name(status), bad == NULL);
  tm_simulator_free(sim);
  return 0;
}
