#include <doctest.h>

#include <cmath>

#include "minusorder/order.hpp"
#include "minusorder/rng.hpp"
#include "minusorder/suites.hpp"
#include "oracles.hpp"

using namespace minusorder;

namespace {

const TolerancePolicy kPolicy;

DenseMatrix e_k(std::size_t n, std::size_t k) { return DenseMatrix::leading_projector(n, k); }

}  // namespace

TEST_CASE("minus_leq_rank: zero below everything, the E_k chain, rank-gap failure") {
    Rng rng(31);
    const DenseMatrix b = random_psd_matrix(rng, 4, 3);
    CHECK(minus_leq_rank(DenseMatrix(4, 4), b));

    CHECK(minus_leq_rank(e_k(3, 1), e_k(3, 2)));
    CHECK_FALSE(minus_leq_rank(e_k(3, 2), e_k(3, 1)));

    // rank(B - A) = 2 while rank(B) - rank(A) = 0; exact on integers.
    const DenseMatrix a = DenseMatrix::diagonal({1, 1, 0});
    const DenseMatrix b2 = DenseMatrix::diagonal({2, 2, 0});
    CHECK(oracles::bareiss_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}) == 2);
    CHECK_FALSE(minus_leq_rank(a, b2));

    CHECK_THROWS_AS(minus_leq_rank(DenseMatrix(2, 2), DenseMatrix(3, 3)), ShapeMismatch);
}

TEST_CASE("minus_leq_inner: reflexivity with a valid witness") {
    Rng rng(32);
    const DenseMatrix a = random_psd_matrix(rng, 4, 2);
    const OrderVerdict v = minus_leq_inner(a, a);
    CHECK(v.holds);
    REQUIRE(v.witness.has_value());
    const DenseMatrix& x = *v.witness;
    const double scale = 1.0 + 2.0 * a.frobenius_norm();
    CHECK((a * x * a - a).frobenius_norm() < 1e-7 * scale);
    // The minimum-norm solution of A X A = A is the Moore-Penrose inverse.
    CHECK((x - moore_penrose(a)).max_abs() < 1e-8);
}

TEST_CASE("minus_leq_inner: projector below the identity, witness equations") {
    const DenseMatrix e1 = e_k(3, 1);
    const DenseMatrix eye = DenseMatrix::identity(3);
    const OrderVerdict v = minus_leq_inner(e1, eye);
    CHECK(v.holds);
    REQUIRE(v.witness.has_value());
    const DenseMatrix& x = *v.witness;
    CHECK((e1 * x * e1 - e1).frobenius_norm() < 1e-7);
    CHECK((x * e1 - x * eye).frobenius_norm() < 1e-7);
    CHECK((e1 * x - eye * x).frobenius_norm() < 1e-7);
}

TEST_CASE("order predicates agree pairwise on random pairs") {
    Rng rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng.uniform_index(3);
        DenseMatrix a(n, n), b(n, n);
        if (trial % 2 == 0) {
            const DenseMatrix s = random_invertible(rng, n);
            std::size_t i = rng.uniform_index(n + 1);
            std::size_t j = rng.uniform_index(n + 1);
            if (i > j) std::swap(i, j);
            a = congruence(s, e_k(n, i));
            b = congruence(s, e_k(n, j));
        } else {
            a = random_psd_matrix(rng, n, 1 + rng.uniform_index(n));
            b = random_psd_matrix(rng, n, 1 + rng.uniform_index(n));
        }
        const bool by_rank = minus_leq_rank(a, b);
        CHECK(by_rank == minus_leq_image(a, b));
        CHECK(by_rank == minus_leq_inner(a, b).holds);
    }
}

TEST_CASE("minus_leq_image: reflexivity and the E_k chain") {
    Rng rng(34);
    const DenseMatrix a = random_psd_matrix(rng, 3, 2);
    CHECK(minus_leq_image(a, a));
    CHECK(minus_leq_image(e_k(3, 1), e_k(3, 2)));
}

TEST_CASE("minus_lt: strictness and tolerance semantics") {
    Rng rng(35);
    const DenseMatrix a = random_psd_matrix(rng, 3, 2);
    CHECK_FALSE(minus_lt(a, a));
    CHECK(minus_lt(e_k(3, 1), e_k(3, 2)));
    // Within-tolerance perturbations are equality, not strict order.
    const DenseMatrix nudged = e_k(3, 2) + DenseMatrix::unit(3, 0, 0) * 1e-15;
    CHECK_FALSE(minus_lt(e_k(3, 2), nudged));
}

TEST_CASE("rank_one_dominated: unit sphere, the diag(2,3,0) ellipse, off-image") {
    const PsdMatrix eye(DenseMatrix::identity(3));
    CHECK(rank_one_dominated({1, 0, 0}, eye));

    const PsdMatrix a(DenseMatrix::diagonal({2, 3, 0}));
    const std::vector<double> x = {1.0, std::sqrt(1.5), 0.0};
    CHECK(rank_one_dominated(x, a));
    // Rank-subtractivity oracle at A's scale: the dominated difference
    // drops the rank by exactly one.
    CHECK(oracles::rank_at_scale(a.mat() - DenseMatrix::outer(x, x), 3.0,
                                 kPolicy.rank_rel_tol) == 1);

    CHECK_FALSE(rank_one_dominated({0, 0, 1}, a));  // e3 is outside Im A
    CHECK_FALSE(rank_one_dominated(scaled(x, 1.1), a));

    CHECK_THROWS_AS(rank_one_dominated({0, 0, 0}, a), ZeroVector);
    CHECK_THROWS_AS(rank_one_dominated({1.0, 0.0}, PsdMatrix(DenseMatrix(2, 2))),
                    ZeroMatrix);
}

TEST_CASE("dominated_rank_ones_coords: diagonal cases and the rank-one case") {
    const PsdMatrix single(DenseMatrix::diagonal({4.0}));
    const auto beta1 = dominated_rank_ones_coords({2.0}, single);
    REQUIRE(beta1.size() == 1);
    CHECK(std::abs(beta1[0]) == doctest::Approx(2.0));

    const PsdMatrix a(DenseMatrix::diagonal({2, 3, 0}));
    const std::vector<double> x = {1.0, std::sqrt(1.5), 0.0};
    const auto beta = dominated_rank_ones_coords(x, a);
    REQUIRE(beta.size() == 2);
    // Coordinates align with the descending eigenvalues (3, 2).
    CHECK(std::abs(beta[0]) == doctest::Approx(std::sqrt(1.5)));
    CHECK(std::abs(beta[1]) == doctest::Approx(1.0));
    double sum = 0.0;
    for (std::size_t k = 0; k < beta.size(); ++k)
        sum += beta[k] * beta[k] / a.eigenvalues()[k];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));

    // Rank-one matrix: a single coefficient, brute force.
    Rng rng(36);
    std::vector<double> y = random_unit_vector(rng, 4);
    y = scaled(y, 1.7);
    const PsdMatrix rank_one(DenseMatrix::outer(y, y));
    const auto gamma = dominated_rank_ones_coords(y, rank_one);
    REQUIRE(gamma.size() == 1);
    CHECK(gamma[0] * gamma[0] / rank_one.eigenvalues()[0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(dominated_rank_ones_coords({5.0, 0.0, 0.0}, a), NotDominated);
}

TEST_CASE("ellipsoid_of: plane circle, diagonal ellipse, zero rejection") {
    const PsdMatrix plane(DenseMatrix::diagonal({1, 1, 0}));
    const auto circle = ellipsoid_of(plane);
    CHECK(circle.dim == 2);
    const auto pts = sample_ellipsoid(circle, 25, 99);
    for (const auto& p : pts) {
        CHECK(norm2(p) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(p[2]) < 1e-12);
    }

    const PsdMatrix d(DenseMatrix::diagonal({4, 9}));
    const auto ellipse = ellipsoid_of(d);
    for (const auto& p : sample_ellipsoid(ellipse, 25, 7)) {
        // x^2/4 + y^2/9 = 1 is the induced ellipse.
        CHECK(p[0] * p[0] / 4.0 + p[1] * p[1] / 9.0 == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(ellipsoid_of(PsdMatrix(DenseMatrix(3, 3))), ZeroMatrix);
}

TEST_CASE("sample_ellipsoid: eigenbasis identity and determinism") {
    const PsdMatrix a(DenseMatrix::diagonal({2, 3, 0}));
    const auto desc = ellipsoid_of(a);
    const auto pts = sample_ellipsoid(desc, 100, 1234);
    for (const auto& p : pts) {
        const auto beta = dominated_rank_ones_coords(p, a);
        double sum = 0.0;
        for (std::size_t k = 0; k < beta.size(); ++k)
            sum += beta[k] * beta[k] / a.eigenvalues()[k];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    }

    const auto again = sample_ellipsoid(desc, 100, 1234);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[i].size(); ++j) CHECK(pts[i][j] == again[i][j]);
}

TEST_CASE("equal_by_minorants: equality, axis swap, and congruence moves") {
    Rng rng(37);
    const PsdMatrix a(random_psd_matrix(rng, 3, 2));
    CHECK(equal_by_minorants(a, a, 10));

    // Swapped axes induce different ellipsoids: a sampled point of the first
    // fails membership in the second (x = (sqrt(2), 0, 0) has quad 2/3).
    const PsdMatrix lhs(DenseMatrix::diagonal({2, 3, 0}));
    const PsdMatrix rhs(DenseMatrix::diagonal({3, 2, 0}));
    const auto report = equal_by_minorants_report(lhs, rhs, 12);
    CHECK_FALSE(report.verdict);
    CHECK_FALSE(report.exact_equal);
    CHECK_FALSE(report.sampled_equal);

    const DenseMatrix s = random_invertible(rng, 3);
    const PsdMatrix moved(congruence(s, a.mat()));
    CHECK_FALSE(equal_by_minorants(a, moved, 12));

    CHECK_THROWS_AS(equal_by_minorants(a, PsdMatrix(DenseMatrix(3, 3)), 4), ZeroMatrix);
}

TEST_CASE("is_idempotent_below_identity: projectors, scalings, integer conjugates") {
    CHECK(is_idempotent_below_identity(DenseMatrix::diagonal({1, 1, 0})));
    CHECK_FALSE(is_idempotent_below_identity(DenseMatrix::diagonal({2, 0})));

    // Unimodular integer conjugate of E_1: idempotent exactly in integers.
    const DenseMatrix p = DenseMatrix::from_rows({{1, -1, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK((p * p).approx_equal(p, 0.0));
    CHECK(is_idempotent_below_identity(p));

    const DenseMatrix q = DenseMatrix::from_rows({{1, 3, -2}, {0, 0, 0}, {0, 0, 0}});
    CHECK((q * q).approx_equal(q, 0.0));
    CHECK(is_idempotent_below_identity(q));
}

TEST_CASE("OrderVerdict serializes with the documented keys") {
    Rng rng(38);
    const DenseMatrix a = random_psd_matrix(rng, 3, 1);
    const OrderVerdict v = minus_leq_inner(a, a);
    const auto j = to_json(v);
    CHECK(j["holds"].get<bool>());
    CHECK(j["method"].get<std::string>() == "InnerInverseFeasibility");
    CHECK(j.contains("residual"));
    CHECK(j.contains("witness"));
    const OrderVerdict none{false, OrderMethod::RankSubtractivity, 0.25, {}};
    CHECK_FALSE(to_json(none).contains("witness"));
}

TEST_CASE("minus_order property suites pass at unit-test scale") {
    CHECK(partial_order_axioms_suite(4, 100, 41).pass);
    CHECK(congruence_invariance_suite(4, 100, 42).pass);
    CHECK(rank_one_domination_suite(4, 100, 43).pass);
    CHECK(predicate_agreement_suite(4, 100, 44).pass);
}
