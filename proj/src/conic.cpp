#include "minusorder/conic.hpp"

#include <algorithm>
#include <cmath>

namespace minusorder {

namespace {

// Classification thresholds for the conic pencil (tangency is a measure-zero
// event, so the zero band must be explicit).
constexpr double kIdenticalRelTol = 1e-10;
constexpr double kPencilEigRelTol = 1e-9;
constexpr double kPencilEigAbsTol = 1e-12;
constexpr double kSurjectivityTol = 1e-12;

struct Eig2 {
    double l1 = 0.0;  // smaller eigenvalue
    double l2 = 0.0;  // larger eigenvalue
    Vec2 v1;          // unit eigenvector for l1
    Vec2 v2;          // unit eigenvector for l2
};

Eig2 eig2x2(double p, double q, double s) {
    Eig2 e;
    const double scale = std::abs(p) + std::abs(q) + std::abs(s);
    if (std::abs(q) <= 1e-300 || std::abs(q) < 1e-18 * scale) {
        if (p <= s) {
            e = {p, s, {1.0, 0.0}, {0.0, 1.0}};
        } else {
            e = {s, p, {0.0, 1.0}, {1.0, 0.0}};
        }
        return e;
    }
    const double half_tr = 0.5 * (p + s);
    const double disc = std::hypot(0.5 * (p - s), q);
    e.l1 = half_tr - disc;
    e.l2 = half_tr + disc;
    // (q, l - p) solves (Q - l I) v = 0 and cannot vanish here since q != 0.
    const double nx = q, ny = e.l2 - p;
    const double nn = std::hypot(nx, ny);
    e.v2 = {nx / nn, ny / nn};
    e.v1 = {-e.v2.y, e.v2.x};
    return e;
}

Vec2 canonical(Vec2 p) {
    if (p.y < 0.0 || (p.y == 0.0 && p.x < 0.0)) {
        p.x = -p.x;
        p.y = -p.y;
    }
    if (p.x == 0.0) p.x = 0.0;  // normalize -0
    if (p.y == 0.0) p.y = 0.0;
    return p;
}

Vec2 negated(const Vec2& p) { return {-p.x, -p.y}; }

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kPlaneMembershipTol = 1e-8;

}  // namespace

Conic2::Conic2(double q11, double q12, double q22, const TolerancePolicy& policy)
    : q11_(q11), q12_(q12), q22_(q22) {
    policy.validate();
    const Eig2 e = eig2x2(q11_, q12_, q22_);
    if (!(e.l1 > policy.psd_eig_tol))
        throw NotPositiveDefinite("Conic2: matrix must be positive definite");
}

double Conic2::evaluate(const Vec2& p) const {
    return q11_ * p.x * p.x + 2.0 * q12_ * p.x * p.y + q22_ * p.y * p.y;
}

Vec2 Conic2::gradient_direction(const Vec2& p) const {
    return {q11_ * p.x + q12_ * p.y, q12_ * p.x + q22_ * p.y};
}

std::array<double, 2> Conic2::eigenvalues() const {
    const Eig2 e = eig2x2(q11_, q12_, q22_);
    return {e.l1, e.l2};
}

DenseMatrix Conic2::matrix() const {
    return DenseMatrix::from_rows({{q11_, q12_}, {q12_, q22_}});
}

bool Conic2::approx_equal(const Conic2& other, double abs_tol) const {
    return std::abs(q11_ - other.q11_) <= abs_tol && std::abs(q12_ - other.q12_) <= abs_tol &&
           std::abs(q22_ - other.q22_) <= abs_tol;
}

nlohmann::ordered_json to_json(const Conic2& q) {
    return nlohmann::ordered_json{{"q11", q.q11()}, {"q12", q.q12()}, {"q22", q.q22()}};
}

Conic2 conic_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("q11") || !j.contains("q12") || !j.contains("q22"))
        throw ParseError("conic: expected object with q11, q12, q22");
    return Conic2(j["q11"].get<double>(), j["q12"].get<double>(), j["q22"].get<double>());
}

DenseMatrix rotation(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return DenseMatrix::from_rows({{c, -s}, {s, c}});
}

Conic2 ellipse_at_angle(double phi, double r) {
    if (!(r > 0.0)) throw NonPositiveR();
    const double s = std::sin(phi), c = std::cos(phi);
    return Conic2((r - 1.0) * s * s + 1.0, -(r - 1.0) * s * c, (r - 1.0) * c * c + 1.0);
}

std::string to_string(ConicRelation r) {
    switch (r) {
        case ConicRelation::Identical: return "Identical";
        case ConicRelation::Disjoint: return "Disjoint";
        case ConicRelation::Touching: return "Touching";
        case ConicRelation::Crossing: return "Crossing";
    }
    return "?";
}

ConicIntersection intersect_concentric(const Conic2& q1, const Conic2& q2,
                                       const TolerancePolicy& policy) {
    policy.validate();
    ConicIntersection out;

    const double d11 = q1.q11() - q2.q11();
    const double d12 = q1.q12() - q2.q12();
    const double d22 = q1.q22() - q2.q22();
    const double diff_max = std::max({std::abs(d11), std::abs(d12), std::abs(d22)});
    const double scale = std::max({std::abs(q1.q11()), std::abs(q1.q12()), std::abs(q1.q22()),
                                   std::abs(q2.q11()), std::abs(q2.q12()), std::abs(q2.q22())});
    if (diff_max < kIdenticalRelTol * scale) {
        out.relation = ConicRelation::Identical;
        return out;
    }

    const Eig2 e = eig2x2(d11, d12, d22);
    const double eig_scale = std::max(std::abs(e.l1), std::abs(e.l2));
    const double zero_tol = std::max(kPencilEigRelTol * eig_scale, kPencilEigAbsTol);
    const bool z1 = std::abs(e.l1) < zero_tol;
    const bool z2 = std::abs(e.l2) < zero_tol;

    auto on_q1 = [&](const Vec2& dir) {
        const double quad = q1.evaluate(dir);
        const double s = 1.0 / std::sqrt(quad);
        return canonical({dir.x * s, dir.y * s});
    };

    if (z1 && z2) {
        out.relation = ConicRelation::Identical;
        return out;
    }
    if (z1 || z2) {
        // Semidefinite rank one: the kernel line meets both conics at one
        // antipodal pair ((Q1 - Q2) v = 0 forces v^T Q1 v = v^T Q2 v).
        const Vec2 kernel_dir = z1 ? e.v1 : e.v2;
        const Vec2 p = on_q1(kernel_dir);
        out.relation = ConicRelation::Touching;
        out.points = {p, negated(p)};
        return out;
    }
    if ((e.l1 > 0.0) == (e.l2 > 0.0)) {
        out.relation = ConicRelation::Disjoint;
        return out;
    }

    // Indefinite pencil: x^T (Q1 - Q2) x = 0 is a pair of lines through the
    // origin, each contributing an antipodal pair of crossing points.
    const double lp = e.l2;          // positive eigenvalue
    const Vec2 wp = e.v2;
    const double ln = e.l1;          // negative eigenvalue
    const Vec2 wn = e.v1;
    const double t = std::sqrt(lp / -ln);
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    Vec2 pa = on_q1({c * wp.x + s * wn.x, c * wp.y + s * wn.y});
    Vec2 pb = on_q1({c * wp.x - s * wn.x, c * wp.y - s * wn.y});
    if (pb.x < pa.x || (pb.x == pa.x && pb.y < pa.y)) std::swap(pa, pb);
    out.relation = ConicRelation::Crossing;
    out.points = {pa, negated(pa), pb, negated(pb)};
    return out;
}

bool lies_inside_unit_circle(const Conic2& q, const TolerancePolicy& policy) {
    return q.eigenvalues()[0] > 1.0 + policy.psd_eig_tol;
}

bool contains(const Conic2& outer, const Conic2& inner, const TolerancePolicy& policy) {
    // E_inner inside int E_outer iff Q_inner - Q_outer is positive definite;
    // equivalently every generalized eigenvalue of (Q_outer, Q_inner) is < 1.
    const Eig2 diff = eig2x2(inner.q11() - outer.q11(), inner.q12() - outer.q12(),
                             inner.q22() - outer.q22());
    return diff.l1 > policy.psd_eig_tol;
}

TouchingSolution touching_ellipse(const Conic2& q, double phi, const TolerancePolicy& policy) {
    if (!(phi > 0.0 && phi < kHalfPi))
        throw DomainError("touching_ellipse: phi must lie in (0, pi/2)");
    if (!lies_inside_unit_circle(q, policy)) throw NotInsideUnitCircle();

    // det(R^T Q R - diag(1, r)) = 0 is linear in r because the (1,1) entry
    // of R^T Q R - I is positive for Q inside the unit circle.
    const DenseMatrix rot = rotation(phi);
    const DenseMatrix m = rot.transpose() * q.matrix() * rot;
    const double m11 = m(0, 0), m12 = m(0, 1), m22 = m(1, 1);
    const double r = m22 - m12 * m12 / (m11 - 1.0);

    TouchingSolution sol;
    sol.phi = phi;
    sol.r = r;
    sol.conic = ellipse_at_angle(phi, r);

    // Touch point: kernel of Q - conic, scaled onto both ellipses.
    const double k11 = q.q11() - sol.conic.q11();
    const double k12 = q.q12() - sol.conic.q12();
    const double k22 = q.q22() - sol.conic.q22();
    const Eig2 ker = eig2x2(k11, k12, k22);
    const double eig_scale = std::max(std::abs(ker.l1), std::abs(ker.l2));
    const double zero_tol = std::max(kPencilEigRelTol * eig_scale, kPencilEigAbsTol);
    const bool z1 = std::abs(ker.l1) < zero_tol;
    const bool z2 = std::abs(ker.l2) < zero_tol;
    if (z1 == z2) throw DegenerateKernel("kernel dimension of Q - E is not one");
    const Vec2 dir = z1 ? ker.v1 : ker.v2;
    const double quad = q.evaluate(dir);
    if (!(quad > 0.0)) throw DegenerateKernel("kernel direction misses the ellipse");
    const double s = 1.0 / std::sqrt(quad);
    sol.touch_point = canonical({dir.x * s, dir.y * s});
    return sol;
}

double touching_r_closed_form(double a, double b, double phi) {
    if (!(a > 1.0 && b > 1.0)) throw DomainError("touching_r_closed_form: need a, b > 1");
    if (!(phi > 0.0 && phi < kHalfPi))
        throw DomainError("touching_r_closed_form: phi must lie in (0, pi/2)");
    const double t2 = std::tan(phi) * std::tan(phi);
    return ((a - 1.0) * b + a * (b - 1.0) * t2) / ((a - 1.0) + (b - 1.0) * t2);
}

Conic2 touching_conic_matrix(double a, double b, double phi) {
    if (!(a > 1.0 && b > 1.0)) throw DomainError("touching_conic_matrix: need a, b > 1");
    if (!(phi > 0.0 && phi < kHalfPi))
        throw DomainError("touching_conic_matrix: phi must lie in (0, pi/2)");
    const double t = std::tan(phi);
    const double u = a - 1.0, v = b - 1.0;
    const double denom = u + v * t * t;
    return Conic2((u + a * v * t * t) / denom, -u * v * t / denom, (u * b + v * t * t) / denom);
}

double phi_for_vertical_intersection(double rho0, double r) {
    if (!(rho0 > 0.0 && rho0 < 1.0)) throw DomainError("rho0 must lie in (0, 1)");
    if (!(r > 1.0)) throw DomainError("r must exceed 1");
    const double arg = (2.0 - rho0 * rho0 * (r + 1.0)) / (rho0 * rho0 * (r - 1.0));
    if (!(arg > -1.0 && arg < 1.0))
        throw InfeasibleConfiguration("arccos argument outside (-1, 1): the angle degenerates");
    return 0.5 * std::acos(arg);
}

double vertical_intersection(double r, double phi) {
    if (!(r > 0.0)) throw NonPositiveR();
    const double c = std::cos(phi), s = std::sin(phi);
    return 1.0 / std::sqrt(r * c * c + s * s);
}

std::pair<double, double> touching_params_ab(double a0, double gamma, double t) {
    if (!(a0 > 1.0 && gamma > 0.0 && t > 0.0))
        throw DomainError("touching_params_ab: need a0 > 1, gamma > 0, t > 0");
    const double one_plus_t2 = 1.0 + t * t;
    const double a = a0 * one_plus_t2 - t * t;
    const double b = (a0 - 1.0) * one_plus_t2 / (gamma * gamma) + 1.0;
    return {a, b};
}

StandardEllipse image_of_circle_formula(double a0, double gamma, double r) {
    const double k = (a0 - 1.0) * (r - 1.0) / 3.0;
    return {k + 1.0, k / (gamma * gamma) + 1.0};
}

StandardEllipse image_of_circle(double a0, double gamma, double r) {
    if (!(a0 > 1.0 && gamma > 0.0)) throw DomainError("image_of_circle: need a0 > 1, gamma > 0");
    if (!(r >= 4.0)) throw DomainError("image_of_circle: need r >= 4 (circle radius <= 1/2)");
    return image_of_circle_formula(a0, gamma, r);
}

Vec2 phi_hat(double a0, double gamma, const Vec2& p) {
    if (!(a0 > 1.0 && gamma > 0.0)) throw DomainError("phi_hat: need a0 > 1, gamma > 0");
    const double x = p.x, y = p.y;
    const double radicand =
        (a0 - 1.0) * (1.0 - x * x - y * y) + 3.0 * (x * x + gamma * gamma * y * y);
    if (!(radicand > 0.0))
        throw ImaginaryDenominator(
            "phi_hat requires (a0-1)(1-x^2-y^2) + 3(x^2+gamma^2 y^2) > 0; got " +
            std::to_string(radicand));
    const double s = std::sqrt(3.0 / radicand);
    return canonical({s * x, s * gamma * y});
}

Vec2 phi_hat_inverse(double a0, double gamma, const Vec2& p) {
    if (!(a0 > 1.0 && gamma > 0.0)) throw DomainError("phi_hat_inverse: need a0 > 1, gamma > 0");
    const double u = p.x, v = p.y;
    const double g2 = gamma * gamma;
    const double denom = (a0 - 4.0) * g2 * u * u + v * v * (a0 - 1.0 - 3.0 * g2) + 3.0 * g2;
    if (!(denom > 0.0))
        throw NotInRange(
            "phi_hat_inverse requires (a0-4)gamma^2 u^2 + (a0-1-3 gamma^2) v^2 + 3 gamma^2 "
            "> 0; got " +
            std::to_string(denom));
    const double x2 = (a0 - 1.0) * g2 * u * u / denom;
    const double y2 = (a0 - 1.0) * v * v / denom;
    // Match the ray of p: Re / Im of the image equals x / (gamma y).
    const double x = std::copysign(std::sqrt(x2), u);
    const double y = v == 0.0 ? 0.0 : std::copysign(std::sqrt(y2), v);
    return {x == 0.0 ? 0.0 : x, y};
}

QuadricCoeffs quadric_image_coeffs(double a0, double gamma, double a, double b, double c) {
    if (!(a0 > 1.0 && gamma > 0.0))
        throw DomainError("quadric_image_coeffs: need a0 > 1, gamma > 0");
    QuadricCoeffs out;
    out.a = (a * (a0 - 1.0) - a0 + 4.0) / 3.0;
    out.b = (a0 - 1.0) * b / (3.0 * gamma);
    out.c = (a0 - 1.0) * (c - 1.0) / (3.0 * gamma * gamma) + 1.0;
    return out;
}

SurjectivityCheck surjectivity_constraints(double a0, double gamma) {
    if (!(a0 > 1.0 && gamma > 0.0))
        throw DomainError("surjectivity_constraints: need a0 > 1, gamma > 0");
    const double bound = 1.0 + 3.0 * gamma * gamma;
    SurjectivityCheck check;
    check.upper_bounds_hold =
        a0 <= 4.0 + kSurjectivityTol && a0 <= bound + kSurjectivityTol;
    check.lower_bounds_hold =
        a0 >= 4.0 - kSurjectivityTol && a0 >= bound - kSurjectivityTol;
    check.rigid = check.upper_bounds_hold && check.lower_bounds_hold;
    return check;
}

Conic2 witness_touching_ellipse(const Conic2& inner, const Conic2& outer, double phi,
                                const TolerancePolicy& policy) {
    if (!contains(outer, inner, policy)) throw NotNested();

    // Congruence x -> outer^(1/2) x sends E_outer to the unit circle and
    // conics Q to outer^(-1/2) Q outer^(-1/2).
    const Eig2 e = eig2x2(outer.q11(), outer.q12(), outer.q22());
    const double s1 = std::sqrt(e.l1), s2 = std::sqrt(e.l2);
    auto rank_one = [](const Vec2& v, double w) {
        return DenseMatrix::from_rows(
            {{w * v.x * v.x, w * v.x * v.y}, {w * v.x * v.y, w * v.y * v.y}});
    };
    const DenseMatrix root = rank_one(e.v1, s1) + rank_one(e.v2, s2);
    const DenseMatrix inv_root = rank_one(e.v1, 1.0 / s1) + rank_one(e.v2, 1.0 / s2);

    const DenseMatrix reduced = (inv_root * inner.matrix() * inv_root).symmetrized();
    const Conic2 reduced_inner(reduced(0, 0), reduced(0, 1), reduced(1, 1), policy);
    const TouchingSolution sol = touching_ellipse(reduced_inner, phi, policy);

    const DenseMatrix back = (root * sol.conic.matrix() * root).symmetrized();
    return Conic2(back(0, 0), back(0, 1), back(1, 1), policy);
}

FourEllipseConfiguration four_ellipse_configuration(double rho0, double r, double gamma,
                                                    double a0, const TolerancePolicy& policy) {
    if (!(a0 > 1.0 && gamma > 0.0))
        throw DomainError("four_ellipse_configuration: need a0 > 1, gamma > 0");
    policy.validate();

    const double phi = phi_for_vertical_intersection(rho0, r);
    const double t = std::tan(phi);
    const auto [a, b] = touching_params_ab(a0, gamma, t);
    const double b0 = (a0 - 1.0) / (gamma * gamma) + 1.0;

    const double u = a - 1.0, v = b - 1.0;
    auto slanted = [&](double tau, double sign) {
        // The touching-conic closed form with tan(phi) replaced by tau; the
        // sign flips the off-diagonal for the mirror ellipse.
        const double denom = u + v * tau * tau;
        return Conic2((u + a * v * tau * tau) / denom, sign * u * v * tau / denom,
                      (u * b + v * tau * tau) / denom, policy);
    };
    const double gt = gamma * t;
    const double gc = gamma / t;

    FourEllipseConfiguration cfg;
    cfg.phi = phi;
    cfg.images = {slanted(gt, -1.0), slanted(gt, +1.0), slanted(gc, -1.0), slanted(gc, +1.0)};
    cfg.touching = StandardEllipse{a, b};
    cfg.base = StandardEllipse{a0, b0};
    return cfg;
}

nlohmann::ordered_json to_json(const StandardEllipse& e) {
    return nlohmann::ordered_json{{"a", e.a}, {"b", e.b}};
}

nlohmann::ordered_json to_json(const FourEllipseConfiguration& cfg) {
    nlohmann::ordered_json images = nlohmann::ordered_json::array();
    for (const Conic2& q : cfg.images) images.push_back(to_json(q));
    return nlohmann::ordered_json{{"phi", cfg.phi},
                                  {"images", std::move(images)},
                                  {"touching", to_json(cfg.touching)},
                                  {"base", to_json(cfg.base)}};
}

PlanarEllipseND::PlanarEllipseND(const PsdMatrix& source) : source_(source) {
    if (source_.certified_rank() != 2) throw RankNotTwo();
    plane_ = DenseMatrix(source_.dim(), 2);
    for (std::size_t i = 0; i < source_.dim(); ++i)
        for (std::size_t k = 0; k < 2; ++k) plane_(i, k) = source_.eigenvectors()(i, k);
}

Conic2 PlanarEllipseND::plane_conic() const {
    const DenseMatrix pinv = pinv_psd(source_);
    const DenseMatrix q = (plane_.transpose() * pinv * plane_).symmetrized();
    return Conic2(q(0, 0), q(0, 1), q(1, 1), source_.policy());
}

bool same_plane(const PlanarEllipseND& e1, const PlanarEllipseND& e2,
                const TolerancePolicy& policy) {
    (void)policy;
    if (e1.source().dim() != e2.source().dim()) throw ShapeMismatch("same_plane");
    const DenseMatrix& v1 = e1.plane();
    const DenseMatrix& v2 = e2.plane();
    const DenseMatrix r1 = v1 - v2 * (v2.transpose() * v1);
    const DenseMatrix r2 = v2 - v1 * (v1.transpose() * v2);
    return r1.frobenius_norm() < 1e-8 && r2.frobenius_norm() < 1e-8;
}

bool coplanarity_by_incidence(const PlanarEllipseND& e1, const PlanarEllipseND& e2,
                              const TolerancePolicy& policy) {
    if (e1.source().dim() != e2.source().dim())
        throw ShapeMismatch("coplanarity_by_incidence");

    // Witness: a sliver ellipse in E1's plane, longer than both ellipses on
    // one axis and thinner on the other, at a generic angle. It crosses any
    // origin-centered ellipse of intermediate extent in four points.
    const Conic2 q1 = e1.plane_conic();
    const Conic2 q2_own = e2.plane_conic();
    const auto ev1 = q1.eigenvalues();
    const auto ev2 = q2_own.eigenvalues();
    const double longest = std::max(1.0 / std::sqrt(ev1[0]), 1.0 / std::sqrt(ev2[0]));
    const double thinnest = std::min(1.0 / std::sqrt(ev1[1]), 1.0 / std::sqrt(ev2[1]));
    const double big = 2.0 * longest, small = 0.5 * thinnest;

    const Eig2 frame = eig2x2(q1.q11(), q1.q12(), q1.q22());
    const double generic_angle = 0.6154797086703873;  // avoid axis alignment
    const DenseMatrix w = DenseMatrix::from_rows({{frame.v1.x, frame.v2.x},
                                                  {frame.v1.y, frame.v2.y}}) *
                          rotation(generic_angle);
    const DenseMatrix qw_m =
        (w * DenseMatrix::diagonal({1.0 / (big * big), 1.0 / (small * small)}) * w.transpose())
            .symmetrized();
    const Conic2 qw(qw_m(0, 0), qw_m(0, 1), qw_m(1, 1), policy);

    const ConicIntersection own = intersect_concentric(qw, q1, policy);
    const bool crosses_e1 = own.relation == ConicRelation::Crossing;

    // Points of the witness: x(theta) = M (cos theta, sin theta)^T with
    // M = V1 W diag(big, small). Intersections with E2 must lie in E2's
    // plane, i.e. where (I - P2) x(theta) vanishes.
    const DenseMatrix m =
        e1.plane() * (w * DenseMatrix::diagonal({big, small}));
    const DenseMatrix& v2 = e2.plane();
    const DenseMatrix k = m - v2 * (v2.transpose() * m);
    const DenseMatrix g = (k.transpose() * k).symmetrized();
    const Eig2 ge = eig2x2(g(0, 0), g(0, 1), g(1, 1));
    const double m_scale = m.frobenius_norm();
    const double zero_tol = 1e-14 * m_scale * m_scale;

    std::size_t count_e2 = 0;
    if (ge.l2 <= zero_tol) {
        // The whole witness lies in E2's plane: count conic intersections.
        const DenseMatrix pinv2 = pinv_psd(e2.source());
        const DenseMatrix q2in1 =
            (e1.plane().transpose() * pinv2 * e1.plane()).symmetrized();
        const ConicIntersection cross =
            intersect_concentric(qw, Conic2(q2in1(0, 0), q2in1(0, 1), q2in1(1, 1), policy),
                                 policy);
        switch (cross.relation) {
            case ConicRelation::Crossing: count_e2 = 4; break;
            case ConicRelation::Touching: count_e2 = 2; break;
            case ConicRelation::Identical: count_e2 = 4; break;  // infinitely many
            case ConicRelation::Disjoint: count_e2 = 0; break;
        }
    } else if (ge.l1 <= zero_tol) {
        // The witness meets E2's plane along one line: at most one antipodal
        // pair, which still must land on the ellipse itself.
        const Vec2 dir = ge.v1;
        std::vector<double> x(e1.source().dim(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = m(i, 0) * dir.x + m(i, 1) * dir.y;
        const double xn = norm2(x);
        if (xn > 0.0) {
            const DenseMatrix pinv2 = pinv_psd(e2.source());
            std::vector<double> in_plane = v2.apply(v2.transpose().apply(x));
            const bool in_im = norm2(sub(x, in_plane)) < kPlaneMembershipTol * xn;
            const double quad = dot(x, pinv2.apply(x));
            if (in_im && std::abs(quad - 1.0) < kPlaneMembershipTol) count_e2 = 2;
        }
    }

    return crosses_e1 && count_e2 >= 4;
}

}  // namespace minusorder
