#include <stdio.h>
#include <string.h>

#include "resonance.h"

static const char *TWO_LINES =
    "{\"n\": 4, \"field\": \"rational\", \"K\": [[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0]]}";

int main(void) {
    RlPair *pair = NULL;
    if (rl_pair_from_json(TWO_LINES, &pair) != RL_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", rl_last_error());
        return 1;
    }
    bool resonant = false;
    size_t rank = 0;
    if (rl_is_resonant(pair, "[1, 1, 0, 0]", 1e-8, &resonant, &rank) != RL_STATUS_OK || !resonant) {
        return 2;
    }
    RlReport *report = NULL;
    if (rl_solve(pair, 0, &report) != RL_STATUS_OK) {
        return 3;
    }
    size_t points = 0;
    uint64_t expected = 0;
    bool transversal = false;
    rl_report_summary(report, &points, &expected, &transversal);
    if (points != 2 || expected != 2 || !transversal || strstr(rl_report_json(report), "\"solutions\"") == NULL) {
        return 4;
    }
    rl_report_free(report);
    rl_pair_free(pair);

    if (rl_pair_from_json("{\"n\": 4", &pair) != RL_STATUS_PARSE || strlen(rl_last_error()) == 0) {
        return 5;
    }
    printf("ok %s\n", rl_version());
    return 0;
}
