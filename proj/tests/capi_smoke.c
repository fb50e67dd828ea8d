/* Compiles the public header as C and drives a small session. */
#include <stdio.h>
#include <string.h>

#include "dulac/dulac.h"

int main(void) {
  dulac_profile p = {1.0, 0.0, 2.0, 0, 8.0};
  dulac_germ* g = NULL;
  dulac_grid_row* rows = NULL;
  size_t n = 0;
  if (dulac_germ_parse("zeta + 1 + exp(-zeta)", &p, &g) != DULAC_OK) return 1;
  if (dulac_koenigs_grid(g, "9:9:1,0:0:1", 1e-10, NULL, 1000000, &rows, &n) != DULAC_OK) return 2;
  if (n != 1 || rows[0].status != DULAC_OK || !(rows[0].residual < 1e-9)) return 3;
  dulac_grid_rows_free(rows);
  dulac_germ_free(g);
  if (dulac_germ_parse("zeta +", &p, &g) != DULAC_PARSE_ERROR) return 4;
  if (strlen(dulac_last_error()) == 0) return 5;
  printf("ok %s\n", dulac_version());
  return 0;
}
