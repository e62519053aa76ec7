#pragma once

#include <cstddef>
#include <vector>

#include "minusorder/dense_matrix.hpp"

namespace minusorder {

/// Eigendecomposition of a symmetric matrix, eigenvalues descending,
/// eigenvectors as orthonormal columns of `vectors`.
struct SymEig {
    std::vector<double> eigenvalues;
    DenseMatrix vectors;
};

/// Thin SVD, singular values descending. m = u * diag(sigma) * v^T with
/// u (rows x p), v (cols x p), p = min(rows, cols).
struct Svd {
    DenseMatrix u;
    std::vector<double> sigma;
    DenseMatrix v;
};

SymEig sym_eig(const DenseMatrix& m, const TolerancePolicy& policy = {});
Svd svd(const DenseMatrix& m);

/// Number of singular values above rank_rel_tol * sigma_max (0 for the zero matrix).
std::size_t rank(const DenseMatrix& m, const TolerancePolicy& policy = {});

/// Moore-Penrose inverse via SVD with the same cutoff as rank(), so
/// rank(pinv(m)) == rank(m) by construction.
DenseMatrix moore_penrose(const DenseMatrix& m, const TolerancePolicy& policy = {});

/// Some X with m X m = m. Returns the Moore-Penrose inverse.
DenseMatrix inner_inverse(const DenseMatrix& m, const TolerancePolicy& policy = {});

Inertia inertia_of(const DenseMatrix& m, const TolerancePolicy& policy = {});

/// S A S^T, symmetrized to absorb roundoff. S must be square invertible.
DenseMatrix congruence(const DenseMatrix& s, const DenseMatrix& a,
                       const TolerancePolicy& policy = {});

/// Orthonormal basis of the column space (n x rank matrix; zero columns for
/// the zero matrix means an n x 0 result).
DenseMatrix image_basis(const DenseMatrix& m, const TolerancePolicy& policy = {});

/// True iff Im a (+) Im c = Im b as a *direct* sum:
/// rank(a) + rank(c) = rank([a|c]) = rank(b) = rank([a|c|b]).
bool image_direct_sum(const DenseMatrix& a, const DenseMatrix& c, const DenseMatrix& b,
                      const TolerancePolicy& policy = {});

/// Minimum-norm least-squares solution of a x = b (b may have many columns).
DenseMatrix least_squares(const DenseMatrix& a, const DenseMatrix& b,
                          const TolerancePolicy& policy = {});

}  // namespace minusorder
