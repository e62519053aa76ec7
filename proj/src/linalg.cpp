#include "minusorder/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace minusorder {

namespace {

using EMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const DenseMatrix& m) {
    return Eigen::Map<const EMatrix>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                     static_cast<Eigen::Index>(m.cols()));
}

DenseMatrix from_eigen(const Eigen::Ref<const EMatrix>& e) {
    DenseMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    Eigen::Map<EMatrix>(m.data(), e.rows(), e.cols()) = e;
    return m;
}

}  // namespace

SymEig sym_eig(const DenseMatrix& m, const TolerancePolicy& policy) {
    policy.validate();
    if (!m.is_square()) throw NotSymmetric("matrix is not square");
    if (!m.is_symmetric(policy.sym_abs_tol)) throw NotSymmetric();

    const EMatrix a = to_eigen(m.symmetrized());
    Eigen::SelfAdjointEigenSolver<EMatrix> solver(a);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("symmetric eigensolver");

    // Eigen returns ascending order; flip to descending.
    const std::size_t n = m.rows();
    SymEig out;
    out.eigenvalues.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto src = static_cast<Eigen::Index>(n - 1 - k);
        out.eigenvalues[k] = solver.eigenvalues()(src);
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, k) = solver.eigenvectors()(static_cast<Eigen::Index>(i), src);
    }
    return out;
}

Svd svd(const DenseMatrix& m) {
    const EMatrix a = to_eigen(m);
    Eigen::JacobiSVD<EMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Svd out;
    out.u = from_eigen(solver.matrixU());
    out.v = from_eigen(solver.matrixV());
    out.sigma.assign(solver.singularValues().data(),
                     solver.singularValues().data() + solver.singularValues().size());
    return out;
}

std::size_t rank(const DenseMatrix& m, const TolerancePolicy& policy) {
    policy.validate();
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const EMatrix a = to_eigen(m);
    Eigen::JacobiSVD<EMatrix> solver(a);
    const auto& sv = solver.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cutoff = policy.rank_rel_tol * sv(0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

DenseMatrix moore_penrose(const DenseMatrix& m, const TolerancePolicy& policy) {
    policy.validate();
    const Svd f = svd(m);
    if (f.sigma.empty() || f.sigma[0] == 0.0) return DenseMatrix(m.cols(), m.rows());
    const double cutoff = policy.rank_rel_tol * f.sigma[0];
    const EMatrix u = to_eigen(f.u);
    const EMatrix v = to_eigen(f.v);
    EMatrix pinv = EMatrix::Zero(static_cast<Eigen::Index>(m.cols()),
                                 static_cast<Eigen::Index>(m.rows()));
    for (std::size_t k = 0; k < f.sigma.size(); ++k) {
        if (f.sigma[k] <= cutoff) continue;
        const auto ek = static_cast<Eigen::Index>(k);
        pinv += (1.0 / f.sigma[k]) * v.col(ek) * u.col(ek).transpose();
    }
    return from_eigen(pinv);
}

DenseMatrix inner_inverse(const DenseMatrix& m, const TolerancePolicy& policy) {
    return moore_penrose(m, policy);
}

Inertia inertia_of(const DenseMatrix& m, const TolerancePolicy& policy) {
    const SymEig e = sym_eig(m, policy);
    Inertia result;
    for (double lambda : e.eigenvalues) {
        if (lambda > policy.psd_eig_tol)
            ++result.n_plus;
        else if (lambda < -policy.psd_eig_tol)
            ++result.n_minus;
        else
            ++result.n_zero;
    }
    return result;
}

DenseMatrix congruence(const DenseMatrix& s, const DenseMatrix& a,
                       const TolerancePolicy& policy) {
    policy.validate();
    if (!s.is_square() || s.rows() != a.rows()) throw ShapeMismatch("congruence");
    if (!a.is_symmetric(policy.sym_abs_tol)) throw NotSymmetric("congruence: A not symmetric");
    if (rank(s, policy) != s.rows()) throw SingularTransform();
    return (s * a * s.transpose()).symmetrized();
}

DenseMatrix image_basis(const DenseMatrix& m, const TolerancePolicy& policy) {
    policy.validate();
    const Svd f = svd(m);
    if (f.sigma.empty() || f.sigma[0] == 0.0) return DenseMatrix(m.rows(), 0);
    const double cutoff = policy.rank_rel_tol * f.sigma[0];
    std::size_t r = 0;
    while (r < f.sigma.size() && f.sigma[r] > cutoff) ++r;
    DenseMatrix basis(m.rows(), r);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < r; ++k) basis(i, k) = f.u(i, k);
    return basis;
}

bool image_direct_sum(const DenseMatrix& a, const DenseMatrix& c, const DenseMatrix& b,
                      const TolerancePolicy& policy) {
    if (a.rows() != c.rows() || a.rows() != b.rows()) throw ShapeMismatch("image_direct_sum");
    const std::size_t ra = rank(a, policy);
    const std::size_t rc = rank(c, policy);
    const DenseMatrix ac = hcat(a, c);
    const std::size_t rac = rank(ac, policy);
    if (rac != ra + rc) return false;      // sum not direct
    if (rac != rank(b, policy)) return false;
    return rank(hcat(ac, b), policy) == rac;  // Im b inside Im a + Im c
}

DenseMatrix least_squares(const DenseMatrix& a, const DenseMatrix& b,
                          const TolerancePolicy& policy) {
    if (a.rows() != b.rows()) throw ShapeMismatch("least_squares");
    return moore_penrose(a, policy) * b;
}

}  // namespace minusorder
