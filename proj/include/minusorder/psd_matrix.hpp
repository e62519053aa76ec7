#pragma once

#include <vector>

#include "minusorder/dense_matrix.hpp"
#include "minusorder/linalg.hpp"

namespace minusorder {

/// Symmetric matrix certified positive semidefinite under a tolerance
/// policy. Certification symmetrizes the input, rejects eigenvalues below
/// -psd_eig_tol, clamps the rest to [0, inf) and stores the clamped
/// spectral form; mat() is rebuilt from that form so downstream congruence
/// chains see an exactly-PSD representative.
class PsdMatrix {
public:
    explicit PsdMatrix(const DenseMatrix& m, const TolerancePolicy& policy = {});

    const DenseMatrix& mat() const { return mat_; }
    std::size_t dim() const { return mat_.rows(); }
    std::size_t certified_rank() const { return certified_rank_; }

    /// Clamped eigenvalues, descending.
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    /// Orthonormal eigenvectors as columns, aligned with eigenvalues().
    const DenseMatrix& eigenvectors() const { return eigenvectors_; }

    const TolerancePolicy& policy() const { return policy_; }

    bool is_zero() const { return certified_rank_ == 0; }

private:
    DenseMatrix mat_;
    std::vector<double> eigenvalues_;
    DenseMatrix eigenvectors_;
    std::size_t certified_rank_ = 0;
    TolerancePolicy policy_;
};

/// Symmetric PD square root of a positive definite matrix.
PsdMatrix sqrt_pd(const PsdMatrix& a);

/// Inverse of the PD square root, (A)^(-1/2).
DenseMatrix inv_sqrt_pd(const PsdMatrix& a);

/// V V^T for an orthonormal column set V.
PsdMatrix projector_onto(const DenseMatrix& basis, const TolerancePolicy& policy = {});

/// Moore-Penrose inverse computed from the certified spectral form.
DenseMatrix pinv_psd(const PsdMatrix& a);

class Rng;
/// Certified wrapper around random_psd_matrix (G G^T sampling).
PsdMatrix random_psd(Rng& rng, std::size_t n, std::size_t k,
                     const TolerancePolicy& policy = {});

}  // namespace minusorder
