#include <stdio.h>
#include <string.h>
#include "tiltcore.h"

int main(int argc, char **argv) {
    TfWorkspace *ws = NULL;
    if (argc < 2 || tf_workspace_open(argv[1], &ws) != TF_STATUS_OK) {
        fprintf(stderr, "open: %s\n", tf_last_error());
        return 1;
    }
    char *json = NULL;
    TfOptions opts = {0, 0, 0, 0};
    TfStatus s = tf_run(ws, "classify S3", &opts, &json);
    if (s != TF_STATUS_OK || strstr(json, "\"kind\": \"classify\"") == NULL) {
        fprintf(stderr, "run: %d\n", (int)s);
        return 1;
    }
    if (tf_verify(json, NULL) != TF_STATUS_OK) {
        fprintf(stderr, "verify: %s\n", tf_last_error());
        return 1;
    }
    tf_string_free(json);
    if (tf_run(ws, "phi nosuch", NULL, &json) != TF_STATUS_INPUT || json != NULL) return 1;
    tf_workspace_free(ws);
    printf("ok %s\n", tf_version());
    return 0;
}
