#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/grid.hpp"

namespace qwg {

/// One piecewise-constant region [z_start, z_end) at potential value V.
struct PotentialSegment {
    double z_start = 0.0;
    double z_end = 0.0;
    double V = 0.0;
};

/// Declarative 1D potential: either an ordered, contiguous list of constant
/// segments, or one of the named analytic forms. Energies are in the solver's
/// natural units (hbar = m = 1) unless stated otherwise at the call site.
class PotentialSpec {
  public:
    struct Free {};
    struct Harmonic {
        double omega = 1.0;
        double center = 0.0;
    };
    struct LinearRamp {
        double force = 0.0; // V(z) = -force * z
    };

    PotentialSpec() : form_(Free{}) {}

    static PotentialSpec free() { return PotentialSpec(); }

    static PotentialSpec harmonic(double omega, double center = 0.0) {
        if (!(omega > 0.0))
            throw config_error("PotentialSpec: harmonic omega must be positive");
        PotentialSpec p;
        p.form_ = Harmonic{omega, center};
        return p;
    }

    static PotentialSpec linear_ramp(double force) {
        PotentialSpec p;
        p.form_ = LinearRamp{force};
        return p;
    }

    static PotentialSpec piecewise(std::vector<PotentialSegment> segments) {
        if (segments.size() < 1)
            throw config_error("PotentialSpec: piecewise needs at least one segment");
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const auto& s = segments[i];
            if (!(s.z_end > s.z_start))
                throw config_error("PotentialSpec: segment of zero or negative width");
            if (!std::isfinite(s.V))
                throw config_error("PotentialSpec: potential value must be finite");
            if (i > 0 && segments[i - 1].z_end != s.z_start)
                throw config_error("PotentialSpec: segments must be contiguous");
        }
        PotentialSpec p;
        p.form_ = std::move(segments);
        return p;
    }

    bool is_piecewise() const { return std::holds_alternative<std::vector<PotentialSegment>>(form_); }
    bool is_free() const { return std::holds_alternative<Free>(form_); }

    const std::vector<PotentialSegment>& segments() const {
        if (!is_piecewise())
            throw config_error("PotentialSpec: not a piecewise potential");
        return std::get<std::vector<PotentialSegment>>(form_);
    }

    /// Pointwise evaluation. Outside the covered range a piecewise potential
    /// continues with its first/last segment value (the lead convention used
    /// by the scattering solver).
    double operator()(double z) const {
        if (std::holds_alternative<Free>(form_))
            return 0.0;
        if (const auto* h = std::get_if<Harmonic>(&form_)) {
            const double x = z - h->center;
            return 0.5 * h->omega * h->omega * x * x;
        }
        if (const auto* r = std::get_if<LinearRamp>(&form_))
            return -r->force * z;
        const auto& segs = std::get<std::vector<PotentialSegment>>(form_);
        if (z < segs.front().z_start)
            return segs.front().V;
        for (const auto& s : segs)
            if (z < s.z_end)
                return s.V;
        return segs.back().V;
    }

    std::vector<double> sample(const Grid1D& g) const {
        std::vector<double> out(g.n);
        for (std::size_t j = 0; j < g.n; ++j)
            out[j] = (*this)(g.z(j));
        return out;
    }

    std::string describe() const {
        if (is_free())
            return "free";
        if (std::holds_alternative<Harmonic>(form_))
            return "harmonic";
        if (std::holds_alternative<LinearRamp>(form_))
            return "linear_ramp";
        return "piecewise[" + std::to_string(segments().size()) + "]";
    }

  private:
    std::variant<Free, Harmonic, LinearRamp, std::vector<PotentialSegment>> form_;
};

} // namespace qwg
