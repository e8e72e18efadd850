#include <stdio.h>
#include "confspace.h"

int main(void) {
    size_t count = 0, f[3];
    if (cs_count_trees(4, CS_VARIANT_FULL, &count) != CS_STATUS_OK) return 1;
    if (cs_f_vector(2, f, 3) != CS_STATUS_OK) return 1;

    double xy[] = {0.0, 0.0, 1.0, 0.0, 0.2, 0.9};
    CsConfig *c = NULL;
    CsAmbient *a = NULL;
    bool pass = false;
    if (cs_config_new(2, 3, xy, &c) != CS_STATUS_OK) return 1;
    if (cs_alpha(c, &a) != CS_STATUS_OK) return 1;
    if (cs_membership_canonical(a, 1e-9, &pass, NULL) != CS_STATUS_OK) return 1;

    double same[] = {0.0, 0.0, 0.0, 0.0};
    CsConfig *bad = NULL;
    if (cs_config_new(2, 2, same, &bad) != CS_STATUS_DUPLICATE || cs_last_error() == NULL) return 1;

    printf("%zu %zu,%zu,%zu %s\n", count, f[0], f[1], f[2], pass ? "pass" : "fail");
    cs_ambient_free(a);
    cs_config_free(c);
    return 0;
}
