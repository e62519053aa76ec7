#include "minusorder/suites.hpp"

#include <algorithm>
#include <cmath>

#include "minusorder/conic.hpp"
#include "minusorder/order.hpp"
#include "minusorder/reconstruct.hpp"
#include "minusorder/rng.hpp"

namespace minusorder {

namespace {

constexpr double kPi = 3.141592653589793;

SuiteReport make_report(std::string name, std::size_t trials, std::uint64_t seed) {
    SuiteReport r;
    r.name = std::move(name);
    r.trials = trials;
    r.seed = seed;
    return r;
}

void finish(SuiteReport& r) { r.pass = r.failures == 0; }

void track(SuiteReport& r, double residual, double bound) {
    r.max_residual = std::max(r.max_residual, residual);
    if (!(residual < bound)) ++r.failures;
}

void expect(SuiteReport& r, bool ok) {
    if (!ok) ++r.failures;
}

}  // namespace

nlohmann::ordered_json to_json(const SuiteReport& r) {
    return nlohmann::ordered_json{{"name", r.name},         {"trials", r.trials},
                                  {"failures", r.failures}, {"max_residual", r.max_residual},
                                  {"verdict", r.pass},      {"seed", r.seed},
                                  {"note", r.note}};
}

SuiteReport predicate_agreement_suite(std::size_t n, std::size_t pairs, std::uint64_t seed,
                                      const TolerancePolicy& policy) {
    SuiteReport report = make_report("predicate_agreement", pairs, seed);
    for (std::size_t trial = 0; trial < pairs; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        DenseMatrix a(n, n), b(n, n);
        if (trial % 2 == 0) {
            const DenseMatrix s = random_invertible(rng, n);
            std::size_t i = rng.uniform_index(n + 1);
            std::size_t j = rng.uniform_index(n + 1);
            if (i > j) std::swap(i, j);
            a = congruence(s, DenseMatrix::leading_projector(n, i), policy);
            b = congruence(s, DenseMatrix::leading_projector(n, j), policy);
        } else {
            a = random_psd_matrix(rng, n, 1 + rng.uniform_index(n));
            b = random_psd_matrix(rng, n, 1 + rng.uniform_index(n));
        }
        const bool by_rank = minus_leq_rank(a, b, policy);
        const bool by_image = minus_leq_image(a, b, policy);
        const OrderVerdict inner = minus_leq_inner(a, b, policy);
        expect(report, by_rank == by_image && by_rank == inner.holds);
        if (inner.holds) report.max_residual = std::max(report.max_residual, inner.residual);
    }
    finish(report);
    return report;
}

SuiteReport bimonotone_forward_suite(std::size_t n, std::size_t maps,
                                     std::size_t pairs_per_map, std::uint64_t seed,
                                     const TolerancePolicy& policy) {
    SuiteReport report = make_report("bimonotone_forward", maps * pairs_per_map, seed);
    for (std::size_t m = 0; m < maps; ++m) {
        Rng rng = Rng::substream(seed, m);
        const DenseMatrix s = random_invertible(rng, n);
        const MonotonicityReport mono =
            test_bimonotone(congruence_map(s, policy), pairs_per_map, n,
                            Rng::substream(seed, m).next_u64(), policy);
        report.failures += mono.violations.size();
    }
    finish(report);
    return report;
}

SuiteReport rank_one_domination_suite(std::size_t n, std::size_t instances,
                                      std::uint64_t seed, const TolerancePolicy& policy) {
    SuiteReport report = make_report("rank_one_domination", 2 * instances, seed);
    for (std::size_t trial = 0; trial < instances; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const std::size_t k = 1 + rng.uniform_index(n);
        const PsdMatrix a = random_psd(rng, n, k, policy);
        if (a.certified_rank() != k) {  // degenerate draw; count as tested, not failed
            continue;
        }
        const auto desc = ellipsoid_of(a);
        const auto points = sample_ellipsoid(desc, 1, rng.next_u64());
        const std::vector<double>& x = points.front();

        // On the ellipsoid: dominated, and the rank-subtractivity oracle
        // rank(A - x x^T) = rank(A) - 1 must agree. The difference lives at
        // A's scale, so its singular values are cut against sigma_max(A)
        // (a bare relative cutoff would see roundoff residue as full rank
        // when A - x x^T is the zero matrix).
        const bool dominated = rank_one_dominated(x, a, policy);
        const Svd diff = svd(a.mat() - DenseMatrix::outer(x, x));
        const double cutoff = policy.rank_rel_tol * a.eigenvalues().front();
        std::size_t rank_drop = 0;
        for (double sigma : diff.sigma)
            if (sigma > cutoff) ++rank_drop;
        expect(report, dominated && rank_drop == a.certified_rank() - 1);

        // Scaled off the ellipsoid by 1.1: not dominated.
        expect(report, !rank_one_dominated(scaled(x, 1.1), a, policy));
    }
    finish(report);
    return report;
}

SuiteReport partial_order_axioms_suite(std::size_t n, std::size_t samples,
                                       std::uint64_t seed, const TolerancePolicy& policy) {
    SuiteReport report = make_report("partial_order_axioms", samples, seed);
    for (std::size_t trial = 0; trial < samples; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const DenseMatrix s = random_invertible(rng, n);
        std::size_t i = rng.uniform_index(n + 1);
        std::size_t j = rng.uniform_index(n + 1);
        std::size_t k = rng.uniform_index(n + 1);
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
        const DenseMatrix a = congruence(s, DenseMatrix::leading_projector(n, i), policy);
        const DenseMatrix b = congruence(s, DenseMatrix::leading_projector(n, j), policy);
        const DenseMatrix c = congruence(s, DenseMatrix::leading_projector(n, k), policy);

        expect(report, minus_leq_rank(a, a, policy));  // reflexivity
        // Transitivity along the constructed chain.
        expect(report, minus_leq_rank(a, b, policy) && minus_leq_rank(b, c, policy) &&
                           minus_leq_rank(a, c, policy));
        // Antisymmetry: strictly below never holds both ways.
        if (i < j) {
            expect(report, !minus_leq_rank(b, a, policy));
            expect(report, minus_lt(a, b, policy) && rank(a, policy) < rank(b, policy));
        }
        // Within-tolerance equality is not strict.
        const DenseMatrix nudged = a + DenseMatrix::unit(n, 0, 0) * 1e-15;
        expect(report, !minus_lt(a, nudged, policy));
    }
    finish(report);
    return report;
}

SuiteReport congruence_invariance_suite(std::size_t n, std::size_t samples,
                                        std::uint64_t seed, const TolerancePolicy& policy) {
    SuiteReport report = make_report("congruence_invariance", samples, seed);
    for (std::size_t trial = 0; trial < samples; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const DenseMatrix s = random_invertible(rng, n);
        DenseMatrix a(n, n), b(n, n);
        if (trial % 2 == 0) {
            const DenseMatrix t = random_invertible(rng, n);
            std::size_t i = rng.uniform_index(n + 1);
            std::size_t j = rng.uniform_index(n + 1);
            if (i > j) std::swap(i, j);
            a = congruence(t, DenseMatrix::leading_projector(n, i), policy);
            b = congruence(t, DenseMatrix::leading_projector(n, j), policy);
        } else {
            a = random_psd_matrix(rng, n, 1 + rng.uniform_index(n));
            b = random_psd_matrix(rng, n, 1 + rng.uniform_index(n));
        }
        const bool direct = minus_leq_rank(a, b, policy);
        const bool conjugated =
            minus_leq_rank(congruence(s, a, policy), congruence(s, b, policy), policy);
        expect(report, direct == conjugated);
    }
    finish(report);
    return report;
}

SuiteReport tangency_suite(std::size_t cases, std::uint64_t seed,
                           const TolerancePolicy& policy) {
    SuiteReport report = make_report("tangency", cases, seed);

    // Pinned value: r(4, 9, pi/4) = 59/11.
    const double pinned = touching_r_closed_form(4.0, 9.0, kPi / 4.0);
    track(report, std::abs(pinned - 59.0 / 11.0) / (59.0 / 11.0), 1e-9);

    for (std::size_t trial = 0; trial < cases; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const double a = std::exp(rng.uniform(std::log(1.02), std::log(100.0)));
        const double b = std::exp(rng.uniform(std::log(1.02), std::log(100.0)));
        const double phi = rng.uniform(1e-3, kPi / 2.0 - 1e-3);

        Conic2 q = Conic2::standard(a, b);
        bool diagonal_case = trial % 2 == 0;
        if (!diagonal_case) {
            const double theta = rng.uniform(0.0, kPi);
            const DenseMatrix rot = rotation(theta);
            const DenseMatrix rotated =
                (rot * DenseMatrix::diagonal({a, b}) * rot.transpose()).symmetrized();
            q = Conic2(rotated(0, 0), rotated(0, 1), rotated(1, 1), policy);
        }

        const TouchingSolution sol = touching_ellipse(q, phi, policy);

        // Determinant residual of the singular pencil member.
        const double k11 = q.q11() - sol.conic.q11();
        const double k12 = q.q12() - sol.conic.q12();
        const double k22 = q.q22() - sol.conic.q22();
        track(report, std::abs(k11 * k22 - k12 * k12), 1e-8);

        // Dual membership of the touch point.
        track(report, std::abs(q.evaluate(sol.touch_point) - 1.0), 1e-8);
        track(report, std::abs(sol.conic.evaluate(sol.touch_point) - 1.0), 1e-8);

        // Gradient parallelism at the touch point.
        const Vec2 g1 = q.gradient_direction(sol.touch_point);
        const Vec2 g2 = sol.conic.gradient_direction(sol.touch_point);
        const double cross = std::abs(g1.x * g2.y - g1.y * g2.x);
        const double sine = cross / (std::hypot(g1.x, g1.y) * std::hypot(g2.x, g2.y));
        track(report, sine, 1e-6);

        // Linearity certificate: the (1,1) entry of R^T Q R - I stays away
        // from zero for Q inside the unit circle.
        const DenseMatrix rot = rotation(phi);
        const DenseMatrix m = (rot.transpose() * q.matrix() * rot).symmetrized();
        expect(report, std::abs(m(0, 0) - 1.0) > 1e-10);

        // Classification: touching against both the unit circle and Q.
        expect(report, intersect_concentric(sol.conic, Conic2::unit_circle(), policy)
                               .relation == ConicRelation::Touching);
        expect(report,
               intersect_concentric(sol.conic, q, policy).relation == ConicRelation::Touching);

        if (diagonal_case) {
            const double closed = touching_r_closed_form(a, b, phi);
            track(report, std::abs(sol.r - closed) / std::abs(closed), 1e-9);
            // Entrywise route of the closed form must match the solver conic.
            const Conic2 entrywise = touching_conic_matrix(a, b, phi);
            track(report,
                  std::max({std::abs(entrywise.q11() - sol.conic.q11()),
                            std::abs(entrywise.q12() - sol.conic.q12()),
                            std::abs(entrywise.q22() - sol.conic.q22())}) /
                      (1.0 + std::abs(sol.r)),
                  1e-9);
        }
    }
    finish(report);
    return report;
}

SuiteReport rigidity_identity_suite(std::size_t points, std::uint64_t seed) {
    SuiteReport report = make_report("rigidity_identity", points, seed);
    Rng rng(seed);
    for (std::size_t trial = 0; trial < points; ++trial) {
        Vec2 p;
        if (trial % 16 == 0) {
            p = {rng.uniform(0.0, 2.5), 0.0};  // canonical boundary ray
        } else {
            const double radius = rng.uniform(1e-6, 2.5);
            const double angle = rng.uniform(1e-9, kPi - 1e-9);  // y > 0
            p = {radius * std::cos(angle), radius * std::sin(angle)};
        }
        const Vec2 image = phi_hat(4.0, 1.0, p);
        track(report, std::max(std::abs(image.x - p.x), std::abs(image.y - p.y)), 1e-12);
    }

    // Rigidity grid: only (4, 1) satisfies both bound pairs.
    for (double a0 : {2.0, 3.0, 3.9, 4.0, 4.1}) {
        for (double gamma : {0.5, 1.0, 2.0}) {
            const bool rigid = surjectivity_constraints(a0, gamma).rigid;
            expect(report, rigid == (a0 == 4.0 && gamma == 1.0));
        }
    }
    expect(report, surjectivity_constraints(4.0, 1.0).rigid);
    finish(report);
    return report;
}

SuiteReport quadric_transport_suite(std::size_t cases, std::size_t points_per_case,
                                    std::uint64_t seed) {
    SuiteReport report = make_report("quadric_transport", cases * points_per_case, seed);
    for (std::size_t trial = 0; trial < cases; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const double a0 = rng.uniform(1.05, 4.0);
        const double gamma_lo = std::sqrt((a0 - 1.0) / 3.0);
        const double gamma = rng.uniform(gamma_lo, 3.0);

        // Random positive definite quadric a x^2 + b xy + c y^2 = 1.
        const double l1 = std::exp(rng.uniform(std::log(0.2), std::log(8.0)));
        const double l2 = std::exp(rng.uniform(std::log(0.2), std::log(8.0)));
        const double theta = rng.uniform(0.0, kPi);
        const DenseMatrix rot = rotation(theta);
        const DenseMatrix qm =
            (rot * DenseMatrix::diagonal({l1, l2}) * rot.transpose()).symmetrized();
        const double qa = qm(0, 0), qb = 2.0 * qm(0, 1), qc = qm(1, 1);
        const QuadricCoeffs img = quadric_image_coeffs(a0, gamma, qa, qb, qc);

        for (std::size_t s = 0; s < points_per_case; ++s) {
            const double t = 2.0 * kPi * (static_cast<double>(s) + 0.31) /
                             static_cast<double>(points_per_case);
            // Point on the source quadric through its eigenframe.
            const Vec2 unit{std::cos(t), std::sin(t)};
            const Vec2 frame{unit.x / std::sqrt(l1), unit.y / std::sqrt(l2)};
            const Vec2 p{rot(0, 0) * frame.x + rot(0, 1) * frame.y,
                         rot(1, 0) * frame.x + rot(1, 1) * frame.y};
            const Vec2 q = phi_hat(a0, gamma, p);
            const double value = img.a * q.x * q.x + img.b * q.x * q.y + img.c * q.y * q.y;
            track(report, std::abs(value - 1.0), 1e-8);
        }
    }
    finish(report);
    return report;
}

SuiteReport axis_intersection_suite(std::size_t cases, std::uint64_t seed,
                                 const TolerancePolicy& policy) {
    SuiteReport report = make_report("axis_intersection_geometry", cases, seed);
    for (std::size_t trial = 0; trial < cases; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const double r = rng.uniform(1.2, 50.0);
        const double rho_lo = 1.0 / std::sqrt(r);
        const double rho0 = rho_lo + (1.0 - rho_lo) * rng.uniform(0.02, 0.98);

        // Round trip of the Step-7 angle.
        const double phi = phi_for_vertical_intersection(rho0, r);
        track(report, std::abs(vertical_intersection(r, phi) - rho0), 1e-10);

        // Four-ellipse configuration: tangency and axis incidence.
        const double a0 = rng.uniform(1.1, 6.0);
        const double gamma = rng.uniform(0.3, 3.0);
        const auto cfg = four_ellipse_configuration(rho0, r, gamma, a0, policy);
        const Conic2 touching = cfg.touching.conic();
        for (const Conic2& image : cfg.images) {
            expect(report, intersect_concentric(image, touching, policy).relation ==
                               ConicRelation::Touching);
            expect(report, intersect_concentric(image, Conic2::unit_circle(), policy)
                                   .relation == ConicRelation::Touching);
        }

        auto base_residual = [&](const Vec2& p) {
            return std::abs(cfg.base.a * p.x * p.x + cfg.base.b * p.y * p.y - 1.0);
        };
        // Vertical points of E1 and E2; both conics share the q22 entry, so
        // (0, 1/sqrt(q22)) lies on both.
        const ConicIntersection v12 =
            intersect_concentric(cfg.images[0], cfg.images[1], policy);
        expect(report, v12.relation == ConicRelation::Crossing);
        for (const Vec2& p : v12.points)
            if (std::abs(p.x) < 1e-9) track(report, base_residual(p), 1e-7);
        // Horizontal points of E3 and E4.
        const ConicIntersection h34 =
            intersect_concentric(cfg.images[2], cfg.images[3], policy);
        expect(report, h34.relation == ConicRelation::Crossing);
        for (const Vec2& p : h34.points)
            if (std::abs(p.y) < 1e-9) track(report, base_residual(p), 1e-7);
    }
    finish(report);
    return report;
}

SuiteReport coplanarity_suite(std::size_t ambient_dim, std::size_t pairs,
                              std::uint64_t seed, const TolerancePolicy& policy) {
    SuiteReport report = make_report("coplanarity", pairs, seed);
    for (std::size_t trial = 0; trial < pairs; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const bool coplanar = trial % 2 == 0;

        auto random_plane = [&]() {
            for (;;) {
                const DenseMatrix g = random_matrix(rng, ambient_dim, 2);
                const DenseMatrix basis = image_basis(g, policy);
                if (basis.cols() == 2) return basis;
            }
        };
        auto rank_two_on = [&](const DenseMatrix& plane) {
            for (;;) {
                const DenseMatrix g = random_matrix(rng, 2, 2);
                const DenseMatrix m = plane * (g * g.transpose()) * plane.transpose();
                const PsdMatrix cand(m.symmetrized(), policy);
                if (cand.certified_rank() == 2) return cand;
            }
        };

        const DenseMatrix plane1 = random_plane();
        const DenseMatrix plane2 = coplanar ? plane1 : random_plane();
        const PlanarEllipseND e1(rank_two_on(plane1));
        const PlanarEllipseND e2(rank_two_on(plane2));

        const bool by_plane = same_plane(e1, e2, policy);
        const bool by_incidence = coplanarity_by_incidence(e1, e2, policy);
        expect(report, by_plane == by_incidence);
        expect(report, by_plane == coplanar);
    }
    finish(report);
    return report;
}

SuiteReport recovery_suite(std::size_t n, std::size_t maps, std::uint64_t seed,
                           const TolerancePolicy& policy) {
    SuiteReport report = make_report("recovery", maps, seed);
    for (std::size_t trial = 0; trial < maps; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const DenseMatrix s = random_invertible(rng, n);
        const DenseMatrix recovered = recover_congruence(congruence_map(s, policy), n, policy);
        const double gap =
            std::min((recovered - s).max_abs(), (recovered + s).max_abs());
        track(report, gap, 1e-7);
    }
    finish(report);
    return report;
}

}  // namespace minusorder
