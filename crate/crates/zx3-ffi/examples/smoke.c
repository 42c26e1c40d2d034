#include <assert.h>
#include <stdio.h>
#include "zx3.h"

int main(void) {
    Zx3Diagram *a = NULL, *b = NULL;
    assert(zx3_diagram_random(2, 4, 7, &a) == ZX3_STATUS_OK);
    assert(zx3_diagram_random(2, 4, 7, &b) == ZX3_STATUS_OK);
    uintptr_t ins = 0, outs = 0;
    assert(zx3_diagram_arity(a, &ins, &outs) == ZX3_STATUS_OK);
    Zx3Verdict v;
    assert(zx3_eq(a, b, 1, &v) == ZX3_STATUS_OK);
    assert(v == ZX3_VERDICT_EQUAL);
    char *json = NULL;
    assert(zx3_normalize_json(a, 1, &json) == ZX3_STATUS_OK);
    printf("normal form: %.60s...\n", json);
    zx3_string_free(json);
    zx3_diagram_free(a);
    zx3_diagram_free(b);
    assert(zx3_selftest(5, 1) == ZX3_STATUS_OK);
    puts("c-abi smoke ok");
    return 0;
}
