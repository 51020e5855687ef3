#include "casimir/real.hpp"

#include <mpfr.h>

#include <sstream>

namespace casimir {

Real pi() {
    Real result;
    mpfr_const_pi(result.backend().data(), MPFR_RNDN);
    return result;
}

std::string to_string(const Real& value, unsigned significant_digits) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(significant_digits > 0 ? significant_digits - 1 : 0) << value;
    return out.str();
}

}  // namespace casimir
