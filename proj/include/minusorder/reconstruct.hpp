#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minusorder/order.hpp"
#include "minusorder/psd_matrix.hpp"

namespace minusorder {

/// Black-box map on the PSD cone of a fixed dimension. Evaluators must be
/// total on certified PSD inputs and safe to call concurrently (the suites
/// only parallelize across independent trials with per-trial seeds).
struct PsdMap {
    std::size_t n = 0;
    std::function<PsdMatrix(const PsdMatrix&)> eval;

    PsdMatrix operator()(const PsdMatrix& a) const { return eval(a); }
};

/// A |-> S A S^T for invertible S.
PsdMap congruence_map(const DenseMatrix& s, const TolerancePolicy& policy = {});
PsdMap identity_map(std::size_t n, const TolerancePolicy& policy = {});

enum class FaultKind { None, Projector, Rank, Zero };
FaultKind fault_from_string(const std::string& name);

/// Congruence map with an injected defect, for pipeline fault labeling.
PsdMap congruence_map_with_fault(const DenseMatrix& s, FaultKind kind,
                                 const TolerancePolicy& policy = {});

struct OrderViolation {
    DenseMatrix a;
    DenseMatrix b;
    std::string direction;  ///< which implication of the iff broke
};

struct MonotonicityReport {
    std::size_t trials = 0;
    std::vector<OrderViolation> violations;
    std::uint64_t seed = 0;
    bool verdict = false;  ///< violations.empty()
};

nlohmann::ordered_json to_json(const MonotonicityReport& r);

/// Checks A <=- B iff map(A) <=- map(B) on generated pairs: even trials use
/// constructed comparable pairs (S E_i S^T, S E_j S^T), odd trials use
/// incomparable pairs found by rejection (capped, with a constructed
/// fallback). Both orientations of every pair are tested.
MonotonicityReport test_bimonotone(const PsdMap& map, std::size_t trials, std::size_t n,
                                   std::uint64_t seed, const TolerancePolicy& policy = {});

/// ||map(0)||_max below the equality tolerance.
bool check_fixes_zero(const PsdMap& map, const TolerancePolicy& policy = {});

/// rank(map(A)) == rank(A) on seeded PSD samples of every rank 0..n.
bool check_rank_preserving(const PsdMap& map, std::size_t trials, std::size_t n,
                           std::uint64_t seed, const TolerancePolicy& policy = {});

/// Conjugates by map(I)^(-1/2) so the result fixes the identity; preserves
/// bi-monotonicity by congruence invariance of the order.
PsdMap normalize_at_identity(const PsdMap& map, const TolerancePolicy& policy = {});

/// For a canonical projector family (E_k, coordinate lines, diagonal lines,
/// random lines): images are projectors and image containment holds iff
/// source containment does.
bool check_projector_lattice(const PsdMap& map, std::size_t n,
                             const TolerancePolicy& policy = {});

/// Reads the invertible line map T induced by a normalized lattice-passing
/// map from its action on rank-one projectors. First column normalized to
/// unit length; relative column scales fixed through T(e_1 + e_i).
DenseMatrix recover_linear_map_on_lines(const PsdMap& map, std::size_t n,
                                        const TolerancePolicy& policy = {});

/// Extracts S with map(A) = S A S^T (up to global sign) from the images of
/// E_ii and (e_1 + e_i)(e_1 + e_i)^T, then verifies on random PSD inputs.
DenseMatrix recover_congruence(const PsdMap& map, std::size_t n,
                               const TolerancePolicy& policy = {});

struct StageResult {
    std::string stage;
    bool pass = true;
    double max_residual = 0.0;
    std::string note;
};

struct RigidityReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::string failed_stage;  ///< first failing stage label, empty when pass
    std::size_t failed_trials = 0;
    std::vector<StageResult> stages;
};

nlohmann::ordered_json to_json(const RigidityReport& r);

/// End-to-end desk-scale certification: random congruence maps pushed
/// through zero fixing, rank preservation, normalization, the projector
/// lattice, line recovery, the SVD reduction, the planar identity regime,
/// and congruence recovery with a round-trip comparison.
RigidityReport rigidity_suite(std::size_t n, std::size_t trials, std::uint64_t seed,
                              const TolerancePolicy& policy = {},
                              FaultKind fault = FaultKind::None);

}  // namespace minusorder
