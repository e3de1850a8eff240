#include <math.h>
#include <stdio.h>
#include <string.h>

#include "lorentz3.h"

#define CHECK(cond)                                               \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    L3Derivation *d = NULL;
    CHECK(l3_derivation_from_json("[[\"1\",\"0\",\"0\"],[\"0\",\"2\",\"0\"],[\"0\",\"0\",\"-1\"]]", &d) == L3_STATUS_OK);
    char *b = NULL;
    CHECK(l3_invariant_b(d, &b) == L3_STATUS_OK);
    CHECK(strcmp(b, "2") == 0);
    l3_string_free(b);

    L3Chart *chart = NULL;
    CHECK(l3_chart_for(d, &chart) == L3_STATUS_OK);
    double p[3] = {2.0, 0.0, 1.0};
    double g[9];
    CHECK(l3_chart_metric(chart, p, g) == L3_STATUS_OK);
    CHECK(fabs(g[0] - 0.5) < 1e-15 && g[1] == 1.0 && g[8] == 1.0);

    double bad[3] = {0.0, 0.0, 0.0};
    CHECK(l3_chart_metric(chart, bad, g) == L3_STATUS_DOMAIN_ERROR);
    CHECK(strlen(l3_last_error()) > 0);

    double state[6] = {1.0, 0.0, 0.0, -1.0, 0.0, 0.0};
    double end[6];
    double reached = 0.0;
    L3Termination term = L3_TERMINATION_COMPLETED_SPAN;
    CHECK(l3_integrate_geodesic(chart, state, 10.0, end, &reached, &term) == L3_STATUS_OK);
    CHECK(term == L3_TERMINATION_HIT_DOMAIN_BOUNDARY);
    CHECK(fabs(reached - 1.0) < 1e-6);

    l3_chart_free(chart);
    l3_derivation_free(d);
    printf("lorentz3 %s: C smoke test passed\n", l3_version());
    return 0;
}
