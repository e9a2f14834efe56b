#include <stdio.h>
#include <string.h>
#include "iotacx.h"

int main(void) {
    IcxComplex *t = NULL, *tt = NULL;
    char *params = NULL;
    bool ok = false, sf = true;
    if (icx_torus_cfk(2, 3, &t) != ICX_STATUS_OK) return 1;
    if (icx_tensor(t, t, &tt) != ICX_STATUS_OK || icx_complex_len(tt) != 9) return 2;
    if (icx_verify(tt, false, &ok) != ICX_STATUS_OK || !ok) return 3;
    if (icx_yn(3, 3, 3, &params, &sf) != ICX_STATUS_OK || strcmp(params, "+,-1,+,-2") != 0 || sf) return 4;
    if (icx_box(0, &t) != ICX_STATUS_INVALID_INPUT || icx_last_error() == NULL) return 5;
    printf("%s\n", params);
    icx_string_free(params);
    icx_complex_free(tt);
    icx_complex_free(t);
    return 0;
}
