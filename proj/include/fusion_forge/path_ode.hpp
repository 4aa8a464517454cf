#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fusion_forge {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

// dy/dz = field(z, y) for a linear system in the complex variable z.
using Field = std::function<void(cd z, const CVec& y, CVec& dydz)>;

// Parametrised path z(t), t in [t0, t1].
struct Path {
    std::function<cd(double)> z;
    std::function<cd(double)> dz;  // dz/dt
    double t0 = 0.0;
    double t1 = 1.0;
};

Path segment(cd from, cd to);
// Arc of the circle |z - centre| = radius from angle phi0 to phi1 (radians).
Path arc(cd centre, double radius, double phi0, double phi1);

struct Tolerances {
    double rtol = 1e-11;
    double atol = 1e-14;
};

struct PathStats {
    std::size_t steps = 0;
};

struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive Dormand-Prince with dense output along `path`.
CVec integrate_path(const Field& f, const Path& path, CVec y0, Tolerances tol = {}, PathStats* stats = nullptr);

// Same, returning the solution at each parameter value in `ts` (ascending, inside [t0, t1]).
std::vector<CVec> integrate_path_sampled(const Field& f, const Path& path, CVec y0, const std::vector<double>& ts,
                                         Tolerances tol = {}, PathStats* stats = nullptr);

// Runs the paths one after the other.
CVec integrate_chain(const Field& f, const std::vector<Path>& paths, CVec y0, Tolerances tol = {}, PathStats* stats = nullptr);

}  // namespace fusion_forge
