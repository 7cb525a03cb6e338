#include "nearmiss/real.hpp"

#include <cstdio>

namespace nearmiss::exactcore {

std::string Real::str6() const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.6Rg", v_);
    return buf;
}

}  // namespace nearmiss::exactcore
