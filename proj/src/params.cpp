#include "dicke/params.hpp"

#include <string>

#include "dicke/errors.hpp"

namespace dicke {

void ModelParams::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("invalid model parameters: " + msg); };
    if (!(omega > 0.0) || !std::isfinite(omega)) fail("omega must be positive and finite");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) fail("omega0 must be positive and finite");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be non-negative and finite");
    if (n_atoms < 1) fail("n_atoms must be at least 1");
    if (boson_cutoff < 1) fail("boson_cutoff must be at least 1");
}

}  // namespace dicke
