#include <stdio.h>
#include "opposition.h"

int main(void) {
  uint32_t circled[] = {1, 6};
  uint32_t d = 0;
  if (opp_displacement("E7", circled, 2, &d) != OPP_STATUS_OK || d != 50) return 1;

  OppGeometry *g = NULL;
  if (opp_geometry_build("A3@3", &g) != OPP_STATUS_OK) return 2;
  OppAutomorphism *a = NULL;
  if (opp_automorphism_symplectic_polarity(g, &a) != OPP_STATUS_OK) return 3;
  OppAnalysis r;
  if (opp_analyze(g, a, &r) != OPP_STATUS_OK) return 4;
  if (r.opposition_type != 2 || !r.capped || r.measured_displacement != 4) return 5;
  opp_automorphism_free(a);

  if (opp_geometry_build("X1@2", &g) == OPP_STATUS_OK) return 6;
  char msg[128];
  if (opp_last_error(msg, sizeof msg) == 0) return 7;
  opp_geometry_free(g);
  printf("ok\n");
  return 0;
}
