#include <stdio.h>
#include <string.h>
#include "gtomo.h"

int main(void) {
    printf("gtomo version %s\n", gt_version());

    GtRegistry *registry = NULL;
    if (gt_registry_builtin("S3", &registry) != GtStatus_Ok) {
        fprintf(stderr, "registry: %s\n", gt_last_error_message());
        return 1;
    }
    unsigned order = gt_registry_group_order(registry);
    unsigned dim = gt_registry_irrep_dim(registry, "D2");
    printf("S3 order %u, D2 dim %u\n", order, dim);

    /* Bloch state (0, 0, 0.5): diag(0.75, 0.25). */
    double state[8] = {0.75, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.0};
    double vectors[12];
    if (gt_tomogram(registry, "D2", state, vectors) != GtStatus_Ok) {
        fprintf(stderr, "tomogram: %s\n", gt_last_error_message());
        return 1;
    }
    GtVerdict verdict;
    double recovered[8];
    if (gt_decide(registry, "D2", vectors, &verdict, recovered) != GtStatus_Ok) {
        fprintf(stderr, "decide: %s\n", gt_last_error_message());
        return 1;
    }
    printf("accepted=%d tomogram_residual=%.3e rho00=%.6f\n",
           verdict.accepted, verdict.tomogram_residual, recovered[0]);
    gt_registry_free(registry);
    if (verdict.accepted != 1) return 1;
    if (recovered[0] < 0.7499 || recovered[0] > 0.7501) return 1;
    return 0;
}
