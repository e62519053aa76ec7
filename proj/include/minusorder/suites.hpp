#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "minusorder/dense_matrix.hpp"

namespace minusorder {

/// Outcome of one property suite: trial count, failure count, worst residual.
struct SuiteReport {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::string note;
};

nlohmann::ordered_json to_json(const SuiteReport& r);

/// minus_leq_rank, minus_leq_image and minus_leq_inner must agree on every
/// generated pair (constructed comparable pairs alternating with free ones).
SuiteReport predicate_agreement_suite(std::size_t n, std::size_t pairs, std::uint64_t seed,
                                      const TolerancePolicy& policy = {});

/// Every congruence map passes test_bimonotone with zero violations.
SuiteReport bimonotone_forward_suite(std::size_t n, std::size_t maps,
                                     std::size_t pairs_per_map, std::uint64_t seed,
                                     const TolerancePolicy& policy = {});

/// Points sampled on E_A are dominated and drop the rank by exactly one;
/// points scaled off the ellipsoid (factor 1.1) are not dominated.
SuiteReport rank_one_domination_suite(std::size_t n, std::size_t instances,
                                      std::uint64_t seed,
                                      const TolerancePolicy& policy = {});

/// Reflexivity, antisymmetry, transitivity on constructed chains, and
/// strict-order rank growth.
SuiteReport partial_order_axioms_suite(std::size_t n, std::size_t samples,
                                       std::uint64_t seed,
                                       const TolerancePolicy& policy = {});

/// A <=- B iff S A S^T <=- S B S^T for random invertible S.
SuiteReport congruence_invariance_suite(std::size_t n, std::size_t samples,
                                        std::uint64_t seed,
                                        const TolerancePolicy& policy = {});

/// Tangency solver residuals, closed-form agreement, classification, and the
/// pinned r(4, 9, pi/4) = 59/11 value.
SuiteReport tangency_suite(std::size_t cases, std::uint64_t seed,
                           const TolerancePolicy& policy = {});

/// phi_hat(4, 1, .) is the identity; the surjectivity grid is rigid only
/// at (4, 1).
SuiteReport rigidity_identity_suite(std::size_t points, std::uint64_t seed);

/// Sampled points of random in-range quadrics map onto the eq-of-image
/// quadric.
SuiteReport quadric_transport_suite(std::size_t cases, std::size_t points_per_case,
                                    std::uint64_t seed);

/// Vertical-intersection round trip and four-ellipse incidence/tangency.
SuiteReport axis_intersection_suite(std::size_t cases, std::uint64_t seed,
                                 const TolerancePolicy& policy = {});

/// coplanarity_by_incidence agrees with same_plane on random rank-two pairs.
SuiteReport coplanarity_suite(std::size_t ambient_dim, std::size_t pairs,
                              std::uint64_t seed, const TolerancePolicy& policy = {});

/// recover_congruence returns +-S for random congruence maps.
SuiteReport recovery_suite(std::size_t n, std::size_t maps, std::uint64_t seed,
                           const TolerancePolicy& policy = {});

}  // namespace minusorder
