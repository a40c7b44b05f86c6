/* Compiled as C to keep the public header valid C. */
#include "injrad/injrad.h"

int injrad_c_header_status_count(void) { return INJRAD_PRECONDITION - INJRAD_OK + 1; }
