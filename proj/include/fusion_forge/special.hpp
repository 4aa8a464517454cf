#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fusion_forge {

using cd = std::complex<double>;

struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
cd complex_gamma(cd z);
// Gamma(x) Gamma(y) / Gamma(x + y); `label` names the factor in pole errors.
cd complex_beta(cd x, cd y, const std::string& label = "B");

}  // namespace fusion_forge
