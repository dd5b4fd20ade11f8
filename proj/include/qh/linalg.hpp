#pragma once

#include <vector>

#include "qh/scalar.hpp"

namespace qh {

/// Dense matrix over Q(zeta_N), row-major. All routines are exact; pivots
/// are chosen deterministically (first nonzero entry scanning down).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(const FieldPtr& f, long rows, long cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(const FieldPtr& f, long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    Scalar& at(long r, long c) { return a_[r * cols_ + c]; }
    const Scalar& at(long r, long c) const { return a_[r * cols_ + c]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_identity() const;
    bool is_zero() const;
    Scalar trace() const;

    /// Kronecker product; index (ra*o.rows+rb, ca*o.cols+cb).
    Matrix kron(const Matrix& o) const;

    long rank() const;
    Matrix inverse() const;  // throws NotInvertible

    /// Solve A x = b for each column of b; throws NotInvertible when A is
    /// not square invertible.
    Matrix solve(const Matrix& b) const;

    /// Basis of { x : A x = 0 }, one column per basis vector, in the
    /// deterministic order of the free columns of the RREF.
    std::vector<std::vector<Scalar>> nullspace() const;

    std::vector<Scalar> mul_vec(const std::vector<Scalar>& v) const;

private:
    FieldPtr field_;
    long rows_, cols_;
    std::vector<Scalar> a_;

    // In-place reduced row echelon form; returns pivot column indices.
    static std::vector<long> rref(Matrix& m);
};

}  // namespace qh
