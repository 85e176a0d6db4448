#pragma once

// Polyline paths in the complex plane, integrator configuration and dense
// trajectory output.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "painlax/errors.hpp"
#include "painlax/jet.hpp"

namespace painlax {

struct ComplexPath {
    std::vector<cplx> vertices;
    bool closed = false;

    ComplexPath() = default;
    ComplexPath(std::vector<cplx> pts, bool closed_path = false)
        : vertices(std::move(pts)), closed(closed_path) {
        if (closed && vertices.size() >= 2 && vertices.front() != vertices.back())
            vertices.push_back(vertices.front());
        validate();
    }

    static ComplexPath segment(cplx a, cplx b) { return ComplexPath({a, b}); }

    // counterclockwise circle as a closed polygon; the base point sits at
    // angle base_angle on the circle
    static ComplexPath circle(cplx center, double radius, int segments = 64,
                              double base_angle = 0.0, bool counterclockwise = true) {
        std::vector<cplx> pts;
        pts.reserve(segments + 1);
        const double sgn = counterclockwise ? 1.0 : -1.0;
        for (int k = 0; k <= segments; ++k) {
            double ang = base_angle + sgn * 2.0 * M_PI * k / segments;
            pts.push_back(center + radius * cplx(std::cos(ang), std::sin(ang)));
        }
        pts.back() = pts.front();  // exact closure
        ComplexPath p;
        p.vertices = std::move(pts);
        p.closed = true;
        p.validate();
        return p;
    }

    ComplexPath reversed() const {
        ComplexPath p;
        p.vertices.assign(vertices.rbegin(), vertices.rend());
        p.closed = closed;
        return p;
    }

    ComplexPath then(const ComplexPath& next) const {
        ComplexPath p;
        p.vertices = vertices;
        if (!next.vertices.empty()) {
            size_t start = (p.vertices.back() == next.vertices.front()) ? 1 : 0;
            p.vertices.insert(p.vertices.end(), next.vertices.begin() + start, next.vertices.end());
        }
        p.closed = p.vertices.front() == p.vertices.back();
        return p;
    }

    double length() const {
        double L = 0.0;
        for (size_t k = 0; k + 1 < vertices.size(); ++k) L += std::abs(vertices[k + 1] - vertices[k]);
        return L;
    }

    void validate() const {
        if (vertices.size() < 2) fail(ErrorCode::ConfigError, "ComplexPath: needs at least 2 vertices");
        for (size_t k = 0; k + 1 < vertices.size(); ++k)
            if (vertices[k + 1] == vertices[k])
                fail(ErrorCode::ConfigError, "ComplexPath: consecutive vertices must be distinct");
        if (closed && vertices.front() != vertices.back())
            fail(ErrorCode::ConfigError, "ComplexPath: closed path must return to its first vertex");
    }
};

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1e300;    // arclength cap per step
    double pole_guard = 1e8;    // abort when any state magnitude exceeds this
    long max_steps = 2000000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0))
            fail(ErrorCode::ConfigError, "IntegratorConfig: tolerances and max_step must be positive");
        if (!(pole_guard > 1.0)) fail(ErrorCode::ConfigError, "IntegratorConfig: pole_guard must exceed 1");
        if (max_steps <= 0) fail(ErrorCode::ConfigError, "IntegratorConfig: max_steps must be positive");
    }
};

struct Trajectory {
    struct Sample {
        cplx t;                  // path parameter (point in the complex plane)
        double arclength = 0.0;  // cumulative arclength along the path
        Eigen::VectorXcd state;
    };
    std::vector<Sample> samples;
    long accepted_steps = 0;
    long rejected_steps = 0;

    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
};

}  // namespace painlax
