#include "minusorder/psd_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "minusorder/rng.hpp"

namespace minusorder {

PsdMatrix::PsdMatrix(const DenseMatrix& m, const TolerancePolicy& policy) : policy_(policy) {
    policy.validate();
    if (!m.is_square()) throw NotSymmetric("PsdMatrix: not square");
    if (!m.all_finite()) throw NotPositiveSemidefinite("PsdMatrix: non-finite entries");
    if (!m.is_symmetric(policy.sym_abs_tol)) throw NotSymmetric("PsdMatrix");

    SymEig eig = sym_eig(m, policy);
    for (double lambda : eig.eigenvalues)
        if (lambda < -policy.psd_eig_tol)
            throw NotPositiveSemidefinite("eigenvalue below -psd_eig_tol");

    for (double& lambda : eig.eigenvalues) lambda = std::max(lambda, 0.0);
    eigenvalues_ = std::move(eig.eigenvalues);
    eigenvectors_ = std::move(eig.vectors);

    const double lambda_max = eigenvalues_.empty() ? 0.0 : eigenvalues_.front();
    certified_rank_ = 0;
    for (double lambda : eigenvalues_)
        if (lambda > policy.rank_rel_tol * lambda_max && lambda > 0.0) ++certified_rank_;

    // Rebuild from the clamped spectrum.
    const std::size_t n = m.rows();
    DenseMatrix rebuilt(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eigenvalues_[k];
        if (lambda == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rebuilt(i, j) += lambda * eigenvectors_(i, k) * eigenvectors_(j, k);
    }
    mat_ = rebuilt.symmetrized();
}

PsdMatrix sqrt_pd(const PsdMatrix& a) {
    const auto& lambda = a.eigenvalues();
    const std::size_t n = a.dim();
    for (double v : lambda)
        if (v <= a.policy().psd_eig_tol) throw NotPositiveDefinite("sqrt_pd");
    DenseMatrix root(n, n);
    const DenseMatrix& vecs = a.eigenvectors();
    for (std::size_t k = 0; k < n; ++k) {
        const double s = std::sqrt(lambda[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) root(i, j) += s * vecs(i, k) * vecs(j, k);
    }
    return PsdMatrix(root.symmetrized(), a.policy());
}

DenseMatrix inv_sqrt_pd(const PsdMatrix& a) {
    const auto& lambda = a.eigenvalues();
    const std::size_t n = a.dim();
    for (double v : lambda)
        if (v <= a.policy().psd_eig_tol) throw NotPositiveDefinite("inv_sqrt_pd");
    DenseMatrix inv_root(n, n);
    const DenseMatrix& vecs = a.eigenvectors();
    for (std::size_t k = 0; k < n; ++k) {
        const double s = 1.0 / std::sqrt(lambda[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv_root(i, j) += s * vecs(i, k) * vecs(j, k);
    }
    return inv_root.symmetrized();
}

PsdMatrix projector_onto(const DenseMatrix& basis, const TolerancePolicy& policy) {
    policy.validate();
    const std::size_t r = basis.cols();
    // V^T V = I within 1e-10 is the contract for orthonormal columns.
    const DenseMatrix gram = basis.transpose() * basis;
    if (!gram.approx_equal(DenseMatrix::identity(r), 1e-10)) throw NotOrthonormal();
    return PsdMatrix((basis * basis.transpose()).symmetrized(), policy);
}

DenseMatrix pinv_psd(const PsdMatrix& a) {
    const std::size_t n = a.dim();
    const auto& lambda = a.eigenvalues();
    const double lambda_max = lambda.empty() ? 0.0 : lambda.front();
    const double cutoff = a.policy().rank_rel_tol * lambda_max;
    DenseMatrix pinv(n, n);
    const DenseMatrix& vecs = a.eigenvectors();
    for (std::size_t k = 0; k < n; ++k) {
        if (!(lambda[k] > cutoff && lambda[k] > 0.0)) continue;
        const double s = 1.0 / lambda[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) pinv(i, j) += s * vecs(i, k) * vecs(j, k);
    }
    return pinv.symmetrized();
}

PsdMatrix random_psd(Rng& rng, std::size_t n, std::size_t k, const TolerancePolicy& policy) {
    return PsdMatrix(random_psd_matrix(rng, n, k), policy);
}

}  // namespace minusorder
