#include <stdio.h>
#include <string.h>

#include "cfhm.h"

int main(void) {
    CfhmInstance *inst = NULL;
    const char *params = "{\"name\":\"steiner\",\"m\":7,\"s\":3,\"t\":2,\"ell\":4,\"kappa\":[]}";
    if (cfhm_instance_build(params, &inst) != CFHM_STATUS_OK) {
        fprintf(stderr, "build: %s\n", cfhm_last_error());
        return 1;
    }
    CfhmCounts counts;
    cfhm_instance_counts(inst, &counts);
    if (counts.p_vertices != 21 || counts.h1_edges != 35) {
        fprintf(stderr, "counts %zu %zu\n", counts.p_vertices, counts.h1_edges);
        return 1;
    }
    CfhmRunOptions opts = cfhm_run_options_default();
    opts.stage1_only = true;
    CfhmRun *run = NULL;
    if (cfhm_match(inst, &opts, &run) != CFHM_STATUS_OK) {
        fprintf(stderr, "match: %s\n", cfhm_last_error());
        return 1;
    }
    const uint32_t *edges = NULL;
    size_t len = 0;
    cfhm_run_edges(run, 1, &edges, &len);
    char *report = cfhm_run_report_json(run);
    int ok = len > 0 && report != NULL && strstr(report, "stage1-only") != NULL;
    cfhm_string_free(report);
    if (cfhm_instance_build("{", &inst) != CFHM_STATUS_INVALID_INPUT || cfhm_last_error() == NULL) {
        ok = 0;
    }
    cfhm_run_free(run);
    cfhm_instance_free(inst);
    printf("%s %zu\n", cfhm_version(), len);
    return ok ? 0 : 1;
}
