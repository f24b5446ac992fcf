#ifndef HRCS_TOLERANCE_HPP
#define HRCS_TOLERANCE_HPP

#include <cmath>
#include <cstdlib>

namespace hrcs {

// Single zero-threshold knob shared by every numerical decision in the
// library (rank, residual acceptance, sign classification).  Thresholds are
// interpreted relative to a caller-supplied scale so that classifications are
// invariant under rescaling of the data.
struct Tolerance {
    double eps0 = 1e-9;

    double scaled(double scale) const {
        return eps0 * (scale > 1.0 ? scale : 1.0);
    }

    bool is_zero(double v, double scale = 1.0) const {
        return std::abs(v) <= scaled(scale);
    }

    // Honors the HRCS_TOLERANCE environment variable when set.
    static Tolerance from_env() {
        Tolerance tol;
        if (const char* s = std::getenv("HRCS_TOLERANCE")) {
            double v = std::atof(s);
            if (v > 0.0) tol.eps0 = v;
        }
        return tol;
    }
};

}  // namespace hrcs

#endif
