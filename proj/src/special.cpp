#include "fusion_forge/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fusion_forge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(cd z) {
    if (z.real() > 0.5) return false;
    const double k = std::round(z.real());
    return std::abs(z - cd(k, 0.0)) < 1e-14 * std::max(1.0, std::abs(k));
}

}  // namespace

cd complex_gamma(cd z) {
    if (near_nonpositive_integer(z))
        throw PoleError("Gamma pole at " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) + "i");
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
    z -= 1.0;
    cd x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cd t = z + kG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cd complex_beta(cd x, cd y, const std::string& label) {
    try {
        const cd s = x + y;
        if (near_nonpositive_integer(s)) {
            // Gamma(x+y) has a pole: B vanishes unless a numerator factor also blows up.
            if (near_nonpositive_integer(x) || near_nonpositive_integer(y))
                throw PoleError("indeterminate");
            return 0.0;
        }
        return complex_gamma(x) * complex_gamma(y) / complex_gamma(s);
    } catch (const PoleError& e) {
        throw PoleError(label + ": " + e.what());
    }
}

}  // namespace fusion_forge
