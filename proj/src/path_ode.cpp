#include "fusion_forge/path_ode.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <string>

namespace fusion_forge {

namespace odeint = boost::numeric::odeint;

Path segment(cd from, cd to) {
    Path p;
    p.z = [from, to](double t) { return from + t * (to - from); };
    p.dz = [from, to](double) { return to - from; };
    return p;
}

Path arc(cd centre, double radius, double phi0, double phi1) {
    Path p;
    p.z = [=](double t) { return centre + std::polar(radius, phi0 + t * (phi1 - phi0)); };
    p.dz = [=](double t) { return cd(0.0, phi1 - phi0) * std::polar(radius, phi0 + t * (phi1 - phi0)); };
    return p;
}

namespace {

constexpr std::size_t kMaxSteps = 2'000'000;

std::vector<CVec> run(const Field& f, const Path& path, CVec y0, const std::vector<double>& ts, Tolerances tol,
                      PathStats* stats) {
    auto system = [&](const CVec& y, CVec& dy, double t) {
        f(path.z(t), y, dy);
        const cd s = path.dz(t);
        for (cd& v : dy) v *= s;
    };
    auto stepper = odeint::make_dense_output(tol.atol, tol.rtol, odeint::runge_kutta_dopri5<CVec>());
    const double span = path.t1 - path.t0;
    stepper.initialize(y0, path.t0, span * 1e-3);

    std::vector<CVec> out;
    out.reserve(ts.size());
    std::size_t steps = 0;
    CVec y(y0.size());
    for (double t : ts) {
        if (t < path.t0 || t > path.t1) throw std::invalid_argument("sample outside the path");
        while (stepper.current_time() < t) {
            if (t - stepper.current_time() < 1e-15 * span) break;
            const double before = stepper.current_time();
            stepper.do_step(system);
            if (++steps > kMaxSteps || !(stepper.current_time() - before > 1e-15 * span))
                throw IntegrationError("step size underflow at t = " + std::to_string(before));
        }
        if (std::abs(stepper.current_time() - t) <= 1e-15 * span)
            y = stepper.current_state();
        else
            stepper.calc_state(t, y);
        out.push_back(y);
    }
    if (stats) stats->steps += steps;
    return out;
}

}  // namespace

CVec integrate_path(const Field& f, const Path& path, CVec y0, Tolerances tol, PathStats* stats) {
    return run(f, path, std::move(y0), {path.t1}, tol, stats).front();
}

std::vector<CVec> integrate_path_sampled(const Field& f, const Path& path, CVec y0, const std::vector<double>& ts,
                                         Tolerances tol, PathStats* stats) {
    return run(f, path, std::move(y0), ts, tol, stats);
}

CVec integrate_chain(const Field& f, const std::vector<Path>& paths, CVec y0, Tolerances tol, PathStats* stats) {
    for (const Path& p : paths) y0 = integrate_path(f, p, std::move(y0), tol, stats);
    return y0;
}

}  // namespace fusion_forge
