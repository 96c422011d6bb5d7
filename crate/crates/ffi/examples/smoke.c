/* cc -I crates/ffi/include crates/ffi/examples/smoke.c target/release/liblsdc_ffi.a -lm -lpthread -ldl */
#include <stdio.h>
#include "lsdc.h"

int main(void) {
    LsdcScheme *s = NULL;
    if (lsdc_worked_example(&s) != LSDC_STATUS_OK) return 1;
    LsdcCosts c;
    lsdc_scheme_costs(s, &c);
    uint32_t w[6] = {1, 6, 0, 3, 5, 2}, dem[4], dec[4];
    bool ok = false;
    lsdc_run_round(s, w, dem, dec, &ok);
    printf("gamma %llu/%llu delta %llu/%llu round %s\n",
           (unsigned long long)c.gamma_num, (unsigned long long)c.gamma_den,
           (unsigned long long)c.delta_num, (unsigned long long)c.delta_den, ok ? "ok" : "wrong");
    if (lsdc_scheme_verify(NULL) == LSDC_STATUS_NULL_POINTER)
        printf("null: %s\n", lsdc_last_error_message());
    lsdc_scheme_free(s);
    return ok ? 0 : 1;
}
