#include "qh/linalg.hpp"

namespace qh {

Matrix Matrix::identity(const FieldPtr& f, long n) {
    Matrix m(f, n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix dimension mismatch in product");
    Matrix out(field_, rows_, o.cols_);
    for (long i = 0; i < rows_; ++i) {
        for (long k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (long j = 0; j < o.cols_; ++j) {
                const Scalar& bkj = o.at(k, j);
                if (bkj.is_zero()) continue;
                out.at(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix out = *this;
    for (long i = 0; i < rows_ * cols_; ++i) out.a_[i] += o.a_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix out = *this;
    for (long i = 0; i < rows_ * cols_; ++i) out.a_[i] -= o.a_[i];
    return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix out = *this;
    for (auto& x : out.a_) x *= s;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (long i = 0; i < rows_ * cols_; ++i)
        if (!(a_[i] == o.a_[i])) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Scalar Matrix::trace() const {
    Scalar t = Scalar::zero(field_);
    for (long i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

Matrix Matrix::kron(const Matrix& o) const {
    Matrix out(field_, rows_ * o.rows_, cols_ * o.cols_);
    for (long ra = 0; ra < rows_; ++ra)
        for (long ca = 0; ca < cols_; ++ca) {
            const Scalar& a = at(ra, ca);
            if (a.is_zero()) continue;
            for (long rb = 0; rb < o.rows_; ++rb)
                for (long cb = 0; cb < o.cols_; ++cb) {
                    const Scalar& b = o.at(rb, cb);
                    if (b.is_zero()) continue;
                    out.at(ra * o.rows_ + rb, ca * o.cols_ + cb) = a * b;
                }
        }
    return out;
}

std::vector<long> Matrix::rref(Matrix& m) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < m.cols_ && row < m.rows_; ++col) {
        long p = -1;
        for (long r = row; r < m.rows_; ++r) {
            if (!m.at(r, col).is_zero()) {
                p = r;
                break;
            }
        }
        if (p < 0) continue;
        if (p != row)
            for (long c = 0; c < m.cols_; ++c) std::swap(m.at(p, c), m.at(row, c));
        Scalar inv = m.at(row, col).inverse();
        for (long c = col; c < m.cols_; ++c) m.at(row, c) *= inv;
        for (long r = 0; r < m.rows_; ++r) {
            if (r == row) continue;
            Scalar factor = m.at(r, col);
            if (factor.is_zero()) continue;
            for (long c = col; c < m.cols_; ++c) m.at(r, c) -= factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

long Matrix::rank() const {
    Matrix m = *this;
    return static_cast<long>(rref(m).size());
}

Matrix Matrix::solve(const Matrix& b) const {
    if (rows_ != cols_ || b.rows_ != rows_) throw Error("solve: shape mismatch");
    Matrix aug(field_, rows_, cols_ + b.cols_);
    for (long i = 0; i < rows_; ++i) {
        for (long j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (long j = 0; j < b.cols_; ++j) aug.at(i, cols_ + j) = b.at(i, j);
    }
    auto pivots = rref(aug);
    if (static_cast<long>(pivots.size()) != cols_ ||
        (!pivots.empty() && pivots.back() >= cols_))
        throw NotInvertible("singular linear system");
    Matrix x(field_, cols_, b.cols_);
    for (long i = 0; i < cols_; ++i)
        for (long j = 0; j < b.cols_; ++j) x.at(i, j) = aug.at(i, cols_ + j);
    return x;
}

Matrix Matrix::inverse() const {
    return solve(identity(field_, rows_));
}

std::vector<std::vector<Scalar>> Matrix::nullspace() const {
    Matrix m = *this;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols_, false);
    for (long p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (long free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols_, Scalar::zero(field_));
        v[free] = Scalar::one(field_);
        for (size_t k = 0; k < pivots.size(); ++k) {
            // row k has its pivot at column pivots[k]
            v[pivots[k]] = -m.at(static_cast<long>(k), free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Scalar> Matrix::mul_vec(const std::vector<Scalar>& v) const {
    std::vector<Scalar> out(rows_, Scalar::zero(field_));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) {
            const Scalar& a = at(i, j);
            if (a.is_zero() || v[j].is_zero()) continue;
            out[i] += a * v[j];
        }
    return out;
}

}  // namespace qh
