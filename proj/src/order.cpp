#include "minusorder/order.hpp"

#include <cmath>

#include "minusorder/matrix_io.hpp"
#include "minusorder/rng.hpp"

namespace minusorder {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch(op);
}

}  // namespace

std::string to_string(OrderMethod m) {
    switch (m) {
        case OrderMethod::RankSubtractivity: return "RankSubtractivity";
        case OrderMethod::ImageDirectSum: return "ImageDirectSum";
        case OrderMethod::InnerInverseFeasibility: return "InnerInverseFeasibility";
    }
    return "?";
}

nlohmann::ordered_json to_json(const OrderVerdict& v) {
    nlohmann::ordered_json j{{"holds", v.holds},
                             {"method", to_string(v.method)},
                             {"residual", v.residual}};
    if (v.witness) j["witness"] = matrix_to_json(*v.witness);
    return j;
}

bool minus_leq_rank(const DenseMatrix& a, const DenseMatrix& b,
                    const TolerancePolicy& policy) {
    require_same_shape(a, b, "minus_leq_rank");
    const std::size_t ra = rank(a, policy);
    const std::size_t rb = rank(b, policy);
    if (ra > rb) return false;
    return rank(b - a, policy) == rb - ra;
}

OrderVerdict minus_leq_inner(const DenseMatrix& a, const DenseMatrix& b,
                             const TolerancePolicy& policy) {
    require_same_shape(a, b, "minus_leq_inner");
    if (!a.is_square()) throw ShapeMismatch("minus_leq_inner: square matrices required");
    const std::size_t n = a.rows();
    const DenseMatrix d = a - b;

    // The constraint set {A X A = A, X(A-B) = 0, (A-B)X = 0} is affine in X,
    // so feasibility is exactly a least-squares residual test on the stacked
    // operator. Build its matrix column by column over the basis E_pq.
    const std::size_t nn = n * n;
    DenseMatrix op(3 * nn, nn);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t col = p * n + q;
            // Block 1: A E_pq A has entries A(i,p) * A(q,j).
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    op(i * n + j, col) = a(i, p) * a(q, j);
            // Block 2: E_pq (A - B) occupies row p of the product.
            for (std::size_t j = 0; j < n; ++j) op(nn + p * n + j, col) = d(q, j);
            // Block 3: (A - B) E_pq occupies column q.
            for (std::size_t i = 0; i < n; ++i) op(2 * nn + i * n + q, col) = d(i, p);
        }
    }
    DenseMatrix target(3 * nn, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) target(i * n + j, 0) = a(i, j);

    const DenseMatrix x_flat = least_squares(op, target, policy);
    const DenseMatrix residual_vec = op * x_flat - target;

    DenseMatrix witness(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) witness(p, q) = x_flat(p * n + q, 0);

    OrderVerdict verdict;
    verdict.method = OrderMethod::InnerInverseFeasibility;
    verdict.residual = residual_vec.frobenius_norm();
    verdict.holds = verdict.residual <
                    kInnerFeasibilityTol * (1.0 + a.frobenius_norm() + b.frobenius_norm());
    if (verdict.holds) verdict.witness = witness;
    return verdict;
}

bool minus_leq_image(const DenseMatrix& a, const DenseMatrix& b,
                     const TolerancePolicy& policy) {
    require_same_shape(a, b, "minus_leq_image");
    if (!a.is_square()) throw ShapeMismatch("minus_leq_image: square matrices required");
    return image_direct_sum(a, b - a, b, policy);
}

bool minus_lt(const DenseMatrix& a, const DenseMatrix& b, const TolerancePolicy& policy) {
    require_same_shape(a, b, "minus_lt");
    if ((a - b).max_abs() <= policy.sym_abs_tol) return false;
    return minus_leq_rank(a, b, policy);
}

bool rank_one_dominated(const std::vector<double>& x, const PsdMatrix& a,
                        const TolerancePolicy& policy) {
    policy.validate();
    const double xn = norm2(x);
    if (xn == 0.0) throw ZeroVector("rank_one_dominated");
    if (a.is_zero()) throw ZeroMatrix("rank_one_dominated");
    if (x.size() != a.dim()) throw ShapeMismatch("rank_one_dominated");

    // x in Im A: projector residual below 1e-8 * ||x||.
    const DenseMatrix& v = a.eigenvectors();
    std::vector<double> projected(x.size(), 0.0);
    for (std::size_t k = 0; k < a.certified_rank(); ++k) {
        const std::vector<double> vk = v.col(k);
        const double c = dot(vk, x);
        for (std::size_t i = 0; i < x.size(); ++i) projected[i] += c * vk[i];
    }
    if (norm2(sub(x, projected)) >= kMembershipTol * xn) return false;

    const DenseMatrix pinv = pinv_psd(a);
    const double quad = dot(x, pinv.apply(x));
    return std::abs(quad - 1.0) < kMembershipTol;
}

std::vector<double> dominated_rank_ones_coords(const std::vector<double>& x,
                                               const PsdMatrix& a,
                                               const TolerancePolicy& policy) {
    if (!rank_one_dominated(x, a, policy)) throw NotDominated();
    std::vector<double> beta(a.certified_rank());
    for (std::size_t k = 0; k < beta.size(); ++k) beta[k] = dot(a.eigenvectors().col(k), x);
    return beta;
}

EllipsoidDescriptor ellipsoid_of(const PsdMatrix& a) {
    if (a.is_zero()) throw ZeroMatrix("ellipsoid_of");
    EllipsoidDescriptor desc{a, pinv_psd(a), DenseMatrix(a.dim(), a.certified_rank()),
                             a.certified_rank()};
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.certified_rank(); ++k)
            desc.image(i, k) = a.eigenvectors()(i, k);
    return desc;
}

std::vector<std::vector<double>> sample_ellipsoid(const EllipsoidDescriptor& desc,
                                                  std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> samples;
    samples.reserve(k);
    for (std::size_t s = 0; s < k; ++s) {
        const std::vector<double> dir = random_unit_vector(rng, desc.dim);
        std::vector<double> x(desc.source.dim(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < desc.dim; ++j) x[i] += desc.image(i, j) * dir[j];
        const double quad = dot(x, desc.pinv.apply(x));
        samples.push_back(scaled(x, 1.0 / std::sqrt(quad)));
    }
    return samples;
}

MinorantEqualityReport equal_by_minorants_report(const PsdMatrix& a, const PsdMatrix& b,
                                                 std::size_t k,
                                                 const TolerancePolicy& policy,
                                                 std::uint64_t seed) {
    if (a.is_zero() || b.is_zero()) throw ZeroMatrix("equal_by_minorants");
    if (a.dim() != b.dim()) throw ShapeMismatch("equal_by_minorants");

    MinorantEqualityReport report;
    report.samples = 2 * k;
    report.exact_equal = (a.mat() - b.mat()).max_abs() < policy.sym_abs_tol;

    const EllipsoidDescriptor ea = ellipsoid_of(a);
    const EllipsoidDescriptor eb = ellipsoid_of(b);
    report.sampled_equal = true;
    auto run_side = [&](const EllipsoidDescriptor& from, const PsdMatrix& against,
                        std::uint64_t stream) {
        const DenseMatrix against_pinv = pinv_psd(against);
        const auto points = sample_ellipsoid(from, k, Rng::substream(seed, stream).next_u64());
        for (const auto& x : points) {
            const bool member = rank_one_dominated(x, against, policy);
            const double gap = std::abs(dot(x, against_pinv.apply(x)) - 1.0);
            report.worst_membership_gap = std::max(report.worst_membership_gap, gap);
            if (!member) report.sampled_equal = false;
        }
    };
    run_side(ea, b, 0);
    run_side(eb, a, 1);

    report.verdict = report.sampled_equal && report.exact_equal;
    return report;
}

bool equal_by_minorants(const PsdMatrix& a, const PsdMatrix& b, std::size_t k,
                        const TolerancePolicy& policy, std::uint64_t seed) {
    return equal_by_minorants_report(a, b, k, policy, seed).verdict;
}

bool is_idempotent_below_identity(const DenseMatrix& p, const TolerancePolicy& policy) {
    if (!p.is_square()) throw ShapeMismatch("is_idempotent_below_identity");
    const bool by_rank = minus_leq_rank(p, DenseMatrix::identity(p.rows()), policy);
    const DenseMatrix gap = p * p - p;
    const bool by_square = gap.frobenius_norm() < 1e-8 * (1.0 + p.frobenius_norm());
    if (by_rank != by_square)
        throw InternalInconsistency("rank route and P^2 = P route disagree");
    return by_rank;
}

}  // namespace minusorder
