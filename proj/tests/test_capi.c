#include "hxray/hxray.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  hx_structure *h = NULL, *q = NULL;
  EXPECT(hx_structure_heisenberg(1, &h) == HX_OK);
  EXPECT(hx_structure_quaternionic(&q) == HX_OK);
  int n = 0, m = 0;
  EXPECT(hx_structure_dims(q, &n, &m) == HX_OK && n == 2 && m == 3);

  /* J_mu^2 = -|mu|^2 */
  double mu3[3] = {0.3, -0.4, 1.2}, J[16], J2 = 0.0;
  EXPECT(hx_j_map(q, mu3, J) == HX_OK);
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += J[i * 4 + k] * J[k * 4 + i];
    J2 += s;
  }
  EXPECT(fabs(J2 + 4.0 * (0.09 + 0.16 + 1.44)) < 1e-12);

  double x1[2] = {1, 0}, u1[1] = {0}, x2[2] = {0, 1}, u2[1] = {0}, xo[2], uo[1];
  EXPECT(hx_group_mul(h, x1, u1, x2, u2, xo, uo) == HX_OK);
  EXPECT(fabs(uo[0] - 0.5) < 1e-15);

  double bx[2] = {0, 0}, bu[1] = {0}, nu[2] = {1, 0}, lam0[1] = {0}, re, im;
  EXPECT(hx_xray_gaussian(h, 1.0, 1.0, bx, bu, nu, lam0, &re, &im) == HX_OK);
  EXPECT(fabs(re - sqrt(acos(-1.0))) < 1e-13);

  double lam[1] = {1.0}, pt_x[2], pt_u[1];
  EXPECT(hx_geodesic_point(h, bx, bu, nu, lam, 2.0 * acos(-1.0), pt_x, pt_u) == HX_OK);

  int k = 0, ok = 0;
  double mu[1] = {4.0};
  EXPECT(hx_compatible(1, lam, mu, &k, &ok) == HX_OK && ok == 1 && k == 2);
  mu[0] = 3.0;
  EXPECT(hx_compatible(1, lam, mu, &k, &ok) == HX_OK && ok == 0);

  /* multiplier forms agree */
  double nuu[2] = {0.6, 0.8};
  mu[0] = 2.0;
  hx_operator *a = NULL, *b = NULL;
  EXPECT(hx_multiplier(h, nuu, lam, mu, 8, 1, &a) == HX_OK);
  EXPECT(hx_multiplier(h, nuu, lam, mu, 8, 2, &b) == HX_OK);
  int dim = 0;
  EXPECT(hx_operator_dims(a, NULL, NULL, &dim) == HX_OK && dim == 9);
  double *ea = malloc(sizeof(double) * 2 * dim * dim), *eb = malloc(sizeof(double) * 2 * dim * dim);
  hx_operator_entries(a, ea);
  hx_operator_entries(b, eb);
  double d = 0.0;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      for (int z = 0; z < 2; ++z) d = fmax(d, fabs(ea[2 * (r * dim + c) + z] - eb[2 * (r * dim + c) + z]));
  EXPECT(d < 1e-8);

  /* save / load */
  const char *path = "capi_operator.txt";
  EXPECT(hx_operator_save(b, path) == HX_OK);
  hx_operator *c = NULL;
  EXPECT(hx_operator_load(path, &c) == HX_OK);
  double *ec = malloc(sizeof(double) * 2 * dim * dim);
  hx_operator_entries(c, ec);
  EXPECT(memcmp(ec, eb, sizeof(double) * 2 * dim * dim) == 0);
  remove(path);

  double eig[4];
  EXPECT(hx_averaged_eigenvalues(1, 0, sqrt(2.0), 3, eig) == HX_OK);
  EXPECT(fabs(eig[1]) < 1e-12);

  /* errors carry a status and a message */
  mu[0] = 3.0;
  hx_operator *bad = NULL;
  EXPECT(hx_multiplier(h, nuu, lam, mu, 4, 0, &bad) == HX_E_INCOMPATIBLE && bad == NULL);
  EXPECT(strlen(hx_last_error()) > 0);
  EXPECT(strcmp(hx_status_reason(HX_E_INCOMPATIBLE), "incompatible_pair") == 0);
  hx_structure *none = NULL;
  EXPECT(hx_structure_heisenberg(0, &none) == HX_E_INVALID_ARGUMENT && none == NULL);
  EXPECT(hx_j_map(NULL, mu3, J) == HX_E_INVALID_ARGUMENT);
  EXPECT(hx_operator_load("/nonexistent/x", &bad) == HX_E_IO);

  /* run */
  hx_run_options opt;
  hx_run_options_init(&opt);
  opt.write_files = 0;
  char *report = NULL;
  int code = -1;
  const char *cfg =
      "{\"structure\":{\"family\":\"heisenberg\",\"n\":1},"
      "\"experiment\":{\"k\":0,\"w2\":2.0,\"expect_invertible\":false,\"expect_witness\":1}}";
  EXPECT(hx_run("spectrum", cfg, &opt, &report, &code) == HX_OK && code == 0);
  EXPECT(report && strstr(report, "\"status\": \"pass\"") != NULL);
  hx_string_free(report);
  report = NULL;
  EXPECT(hx_run("spectrum", "{\"structure\":1}", &opt, &report, &code) == HX_E_CONFIG && code == 2);
  EXPECT(report == NULL);
  EXPECT(strstr(hx_last_error(), "config") != NULL);

  free(ea);
  free(eb);
  free(ec);
  hx_operator_free(a);
  hx_operator_free(b);
  hx_operator_free(c);
  hx_structure_free(h);
  hx_structure_free(q);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("all C API checks passed\n");
  return failures ? 1 : 0;
}
