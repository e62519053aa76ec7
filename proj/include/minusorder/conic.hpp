#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "minusorder/psd_matrix.hpp"

namespace minusorder {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Concentric ellipse x^T Q x = 1 with Q symmetric positive definite.
class Conic2 {
public:
    Conic2(double q11, double q12, double q22, const TolerancePolicy& policy = {});

    static Conic2 unit_circle() { return Conic2(1.0, 0.0, 1.0); }
    static Conic2 standard(double a, double b) { return Conic2(a, 0.0, b); }

    double q11() const { return q11_; }
    double q12() const { return q12_; }
    double q22() const { return q22_; }

    double evaluate(const Vec2& p) const;  ///< p^T Q p
    Vec2 gradient_direction(const Vec2& p) const;  ///< Q p
    /// Eigenvalues of Q, ascending.
    std::array<double, 2> eigenvalues() const;
    DenseMatrix matrix() const;

    bool approx_equal(const Conic2& other, double abs_tol) const;

private:
    double q11_, q12_, q22_;
};

nlohmann::ordered_json to_json(const Conic2& q);
Conic2 conic_from_json(const nlohmann::json& j);

/// Standard ellipse a x^2 + b y^2 = 1 (axes on the coordinate axes).
struct StandardEllipse {
    double a = 1.0;
    double b = 1.0;
    Conic2 conic() const { return Conic2::standard(a, b); }
};

DenseMatrix rotation(double phi);  ///< 2x2 counterclockwise rotation

/// R_phi diag(1, r) R_phi^T: the ellipse at angle phi with axis parameter r.
Conic2 ellipse_at_angle(double phi, double r);

enum class ConicRelation { Identical, Disjoint, Touching, Crossing };

std::string to_string(ConicRelation r);

/// Intersection points come in antipodal pairs; each pair is reported as
/// (canonical representative, its antipode) with the canonical point having
/// y > 0, or y = 0 and x >= 0.
struct ConicIntersection {
    ConicRelation relation = ConicRelation::Disjoint;
    std::vector<Vec2> points;
};

ConicIntersection intersect_concentric(const Conic2& q1, const Conic2& q2,
                                       const TolerancePolicy& policy = {});

/// Strict interior: both eigenvalues of Q exceed 1.
bool lies_inside_unit_circle(const Conic2& q, const TolerancePolicy& policy = {});

/// E_inner contained in the open interior of E_outer.
bool contains(const Conic2& outer, const Conic2& inner, const TolerancePolicy& policy = {});

/// The unique ellipse at angle phi touching both the unit circle and E_Q.
struct TouchingSolution {
    double phi = 0.0;
    double r = 1.0;
    Conic2 conic = Conic2::unit_circle();
    Vec2 touch_point;
};

TouchingSolution touching_ellipse(const Conic2& q, double phi,
                                  const TolerancePolicy& policy = {});

/// Closed form of the touching parameter for Q = diag(a, b):
/// r = ((a-1) b + a (b-1) tan^2 phi) / ((a-1) + (b-1) tan^2 phi).
double touching_r_closed_form(double a, double b, double phi);

/// Entrywise closed form of the touching conic for Q = diag(a, b).
Conic2 touching_conic_matrix(double a, double b, double phi);

/// Angle making the ellipses at +-phi with parameter r intersect on x = 0 at
/// height rho0: phi = arccos((2 - rho0^2 (r+1)) / (rho0^2 (r-1))) / 2.
double phi_for_vertical_intersection(double rho0, double r);

/// Height of the vertical intersection: 1 / sqrt(r cos^2 phi + sin^2 phi).
double vertical_intersection(double r, double phi);

/// Touching-ellipse parameters a = a0 (1 + t^2) - t^2 and
/// b = (a0 - 1)(1 + t^2) / gamma^2 + 1, with t = tan(phi).
std::pair<double, double> touching_params_ab(double a0, double gamma, double t);

/// Image of the circle of radius 1/sqrt(r) (r >= 4) under the induced map:
/// a = (a0-1)(r-1)/3 + 1, b = (a0-1)(r-1)/(3 gamma^2) + 1.
StandardEllipse image_of_circle(double a0, double gamma, double r);

/// Raw eq-of-image formula without the domain guard (algebraic checks only).
StandardEllipse image_of_circle_formula(double a0, double gamma, double r);

/// The planar rigidity map: sqrt(3) (x, gamma y) / sqrt((a0-1)(1-x^2-y^2)
/// + 3 (x^2 + gamma^2 y^2)), sign resolved to the canonical representative.
Vec2 phi_hat(double a0, double gamma, const Vec2& p);

/// Inverse of phi_hat on canonical representatives.
Vec2 phi_hat_inverse(double a0, double gamma, const Vec2& p);

/// Image of the quadric a x^2 + b xy + c y^2 = 1 under phi_hat.
struct QuadricCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

QuadricCoeffs quadric_image_coeffs(double a0, double gamma, double a, double b, double c);

/// Surjectivity constraints on (a0, gamma); both pairs holding forces
/// a0 = 4 and gamma = 1, i.e. the identity map.
struct SurjectivityCheck {
    bool upper_bounds_hold = false;  ///< a0 <= 4 and a0 <= 1 + 3 gamma^2
    bool lower_bounds_hold = false;  ///< a0 >= 4 and a0 >= 1 + 3 gamma^2
    bool rigid = false;
};

SurjectivityCheck surjectivity_constraints(double a0, double gamma);

/// Touching witness for a nested pair: reduces to the unit-circle solver by
/// the congruence x -> outer^(1/2) x and maps the solution back.
Conic2 witness_touching_ellipse(const Conic2& inner, const Conic2& outer, double phi,
                                const TolerancePolicy& policy = {});

/// The four image conics of the slanted tangent ellipses, their common
/// touching standard ellipse, and the base ellipse their axis intersections
/// must land on.
struct FourEllipseConfiguration {
    double phi = 0.0;
    std::array<Conic2, 4> images{Conic2::unit_circle(), Conic2::unit_circle(),
                                 Conic2::unit_circle(), Conic2::unit_circle()};
    StandardEllipse touching;
    StandardEllipse base;
};

FourEllipseConfiguration four_ellipse_configuration(double rho0, double r, double gamma,
                                                    double a0,
                                                    const TolerancePolicy& policy = {});

nlohmann::ordered_json to_json(const StandardEllipse& e);
nlohmann::ordered_json to_json(const FourEllipseConfiguration& cfg);

/// Origin-centered planar ellipse in R^n carried by a rank-two PSD matrix.
class PlanarEllipseND {
public:
    explicit PlanarEllipseND(const PsdMatrix& source);

    const PsdMatrix& source() const { return source_; }
    /// n x 2 orthonormal basis of the carrier plane.
    const DenseMatrix& plane() const { return plane_; }
    /// The ellipse expressed in plane() coordinates (c^T Q c = 1).
    Conic2 plane_conic() const;

private:
    PsdMatrix source_;
    DenseMatrix plane_;
};

bool same_plane(const PlanarEllipseND& e1, const PlanarEllipseND& e2,
                const TolerancePolicy& policy = {});

/// Incidence route to coplanarity: builds a witness ellipse crossing E1 in
/// four points and counts its intersections with E2 in ambient space.
bool coplanarity_by_incidence(const PlanarEllipseND& e1, const PlanarEllipseND& e2,
                              const TolerancePolicy& policy = {});

}  // namespace minusorder
