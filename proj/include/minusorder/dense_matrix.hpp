#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "minusorder/errors.hpp"

namespace minusorder {

/// Tolerance knobs shared by every rank/symmetry/PSD decision in the library.
struct TolerancePolicy {
    double rank_rel_tol = 1e-10;  ///< relative singular-value cutoff for rank
    double sym_abs_tol = 1e-9;    ///< entrywise symmetry / equality tolerance
    double psd_eig_tol = 1e-9;    ///< eigenvalue negativity allowance

    void validate() const {
        const bool ok = rank_rel_tol > 0 && rank_rel_tol < 1 && sym_abs_tol > 0 &&
                        sym_abs_tol < 1 && psd_eig_tol > 0 && psd_eig_tol < 1;
        if (!ok) throw InvalidTolerance("tolerances must lie in (0, 1)");
    }
};

/// Signature of a symmetric matrix: eigenvalue counts above / below / inside
/// the psd_eig_tol band.
struct Inertia {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    bool operator==(const Inertia&) const = default;
};

/// Dense real matrix, row-major storage, value semantics. The single numeric
/// carrier of the library; all sizes here are desk scale (n <= 64).
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(const std::vector<double>& d);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    /// E_ij: single unit entry at (i, j).
    static DenseMatrix unit(std::size_t n, std::size_t i, std::size_t j);
    /// E_k = E_11 + ... + E_kk.
    static DenseMatrix leading_projector(std::size_t n, std::size_t k);
    static DenseMatrix column_vector(const std::vector<double>& x);
    /// x y^T
    static DenseMatrix outer(const std::vector<double>& x, const std::vector<double>& y);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<double>& entries() const { return entries_; }
    double* data() { return entries_.data(); }
    const double* data() const { return entries_.data(); }

    DenseMatrix transpose() const;
    DenseMatrix symmetrized() const;  ///< (M + M^T) / 2
    DenseMatrix operator+(const DenseMatrix& other) const;
    DenseMatrix operator-(const DenseMatrix& other) const;
    DenseMatrix operator*(const DenseMatrix& other) const;
    DenseMatrix operator*(double s) const;

    std::vector<double> apply(const std::vector<double>& x) const;  ///< M x
    std::vector<double> col(std::size_t j) const;

    double frobenius_norm() const;
    double max_abs() const;
    double trace() const;
    bool all_finite() const;
    bool is_symmetric(double abs_tol) const;

    /// Entrywise closeness in the max norm.
    bool approx_equal(const DenseMatrix& other, double abs_tol) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b);

// Small vector helpers used throughout (vectors are std::vector<double>).
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& x);
std::vector<double> scaled(const std::vector<double>& x, double s);
std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace minusorder
