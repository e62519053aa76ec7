#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minusorder/psd_matrix.hpp"

namespace minusorder {

// Membership / feasibility tolerances fixed by the module contract (they sit
// about two orders of magnitude above accumulated SVD error at n <= 64).
inline constexpr double kMembershipTol = 1e-8;
inline constexpr double kInnerFeasibilityTol = 1e-7;

enum class OrderMethod { RankSubtractivity, ImageDirectSum, InnerInverseFeasibility };

std::string to_string(OrderMethod m);

/// Result of an order query: which predicate decided, with what residual,
/// and (for the feasibility route) the minimizing inner inverse.
struct OrderVerdict {
    bool holds = false;
    OrderMethod method = OrderMethod::RankSubtractivity;
    double residual = 0.0;
    std::optional<DenseMatrix> witness;
};

nlohmann::ordered_json to_json(const OrderVerdict& v);

/// A <=- B via rank subtractivity: rank(B - A) == rank(B) - rank(A).
bool minus_leq_rank(const DenseMatrix& a, const DenseMatrix& b,
                    const TolerancePolicy& policy = {});

/// A <=- B via feasibility of {A X A = A, X (A - B) = 0, (A - B) X = 0},
/// decided as a linear least-squares residual test in X.
OrderVerdict minus_leq_inner(const DenseMatrix& a, const DenseMatrix& b,
                             const TolerancePolicy& policy = {});

/// A <=- B via Im B = Im A (+) Im(B - A).
bool minus_leq_image(const DenseMatrix& a, const DenseMatrix& b,
                     const TolerancePolicy& policy = {});

/// Strict order: A <=- B and A != B beyond the equality tolerance.
bool minus_lt(const DenseMatrix& a, const DenseMatrix& b,
              const TolerancePolicy& policy = {});

/// x x^T <=- A, decided through x in Im A and x^T pinv(A) x = 1.
bool rank_one_dominated(const std::vector<double>& x, const PsdMatrix& a,
                        const TolerancePolicy& policy = {});

/// Coordinates of x in A's eigenbasis restricted to the nonzero eigenvalues
/// (aligned with PsdMatrix::eigenvalues(), descending order).
std::vector<double> dominated_rank_ones_coords(const std::vector<double>& x,
                                               const PsdMatrix& a,
                                               const TolerancePolicy& policy = {});

/// E_A = { x in Im A : x^T pinv(A) x = 1 }, the locus of rank-one minorants.
struct EllipsoidDescriptor {
    PsdMatrix source;
    DenseMatrix pinv;
    DenseMatrix image;  ///< orthonormal basis of Im A, n x dim
    std::size_t dim = 0;
};

EllipsoidDescriptor ellipsoid_of(const PsdMatrix& a);

/// k points of E_A: uniform directions on the image-space sphere, each
/// radially scaled onto the ellipsoid. Deterministic given the seed.
std::vector<std::vector<double>> sample_ellipsoid(const EllipsoidDescriptor& desc,
                                                  std::size_t k, std::uint64_t seed);

/// Equality through rank-one minorants: the sampled cross-membership
/// falsifier plus the exact comparison that decides.
struct MinorantEqualityReport {
    bool verdict = false;        ///< sampled_equal && exact_equal
    bool sampled_equal = false;  ///< all 2k cross-membership tests passed
    bool exact_equal = false;    ///< max-norm equality within sym_abs_tol
    std::size_t samples = 0;
    double worst_membership_gap = 0.0;
};

MinorantEqualityReport equal_by_minorants_report(const PsdMatrix& a, const PsdMatrix& b,
                                                 std::size_t k,
                                                 const TolerancePolicy& policy = {},
                                                 std::uint64_t seed = 0xC0FFEE);

bool equal_by_minorants(const PsdMatrix& a, const PsdMatrix& b, std::size_t k,
                        const TolerancePolicy& policy = {}, std::uint64_t seed = 0xC0FFEE);

/// P <=- I iff P is idempotent; evaluates both routes and demands agreement.
bool is_idempotent_below_identity(const DenseMatrix& p, const TolerancePolicy& policy = {});

}  // namespace minusorder
