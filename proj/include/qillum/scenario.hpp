#pragma once

#include <cmath>

#include "qillum/errors.hpp"

namespace qillum {

/// Physical parameters of one target-detection scenario.
///
/// A transmitter sends m modes (mode pairs, for the entangled source) with
/// n_s mean photons each toward a region that may contain a weakly
/// reflecting target (reflectivity kappa). The receiver sees n_b mean
/// background photons per mode in either case.
struct ScenarioParams {
    double n_s;    ///< mean signal photons per transmitted mode, > 0
    double n_b;    ///< mean background photons per received mode, >= 0
    double kappa;  ///< target reflectivity, in (0, 1)
    long m;        ///< number of transmissions, >= 1

    ScenarioParams(double n_s_, double n_b_, double kappa_, long m_ = 1)
        : n_s(n_s_), n_b(n_b_), kappa(kappa_), m(m_) {
        if (!(n_s > 0.0) || !std::isfinite(n_s))
            throw InvalidParameter("n_s must be positive and finite");
        if (!(n_b >= 0.0) || !std::isfinite(n_b))
            throw InvalidParameter("n_b must be non-negative and finite");
        if (!(kappa > 0.0 && kappa < 1.0))
            throw InvalidParameter("kappa must lie in (0, 1)");
        if (m < 1) throw InvalidParameter("M must be >= 1");
    }
};

}  // namespace qillum
