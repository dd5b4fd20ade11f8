#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qh/linalg.hpp"
#include "qh/scalar.hpp"

namespace qh {

using SVec = std::vector<std::pair<long, Scalar>>;  // sparse coefficient vector
using DVec = std::vector<Scalar>;                   // dense coefficient vector

/// Structure constants of a finite-dimensional unital algebra H over
/// Q(zeta_N): unit vector plus the sparse products e_i * e_j.
struct MultTable {
    FieldPtr field;
    long dim = 0;
    DVec unit;
    std::vector<SVec> prod;  // index i*dim + j

    const SVec& basis_prod(long i, long j) const { return prod[i * dim + j]; }

    DVec mul(const DVec& a, const DVec& b) const;
    DVec zero_vec() const { return DVec(dim, Scalar::zero(field)); }
    DVec basis_vec(long i) const;

    static MultTable from_dense(const FieldPtr& f, long dim, DVec unit,
                                const std::vector<DVec>& products);

    /// Matrix of left multiplication by a.
    Matrix left_mult_matrix(const DVec& a) const;
    /// Matrix of right multiplication by a.
    Matrix right_mult_matrix(const DVec& a) const;

    /// Inverse of a in H, via an exact linear solve; throws NotInvertible.
    DVec invert_element(const DVec& a) const;
};

constexpr int kMaxRank = 4;

/// Element of H^{otimes k}, k <= 4, as a dense coefficient array indexed
/// lexicographically by basis tuples (leg 1 most significant).
class Tensor {
public:
    Tensor() : rank_(0), dim_(0) {}
    Tensor(const FieldPtr& f, long dim, int rank);

    int rank() const { return rank_; }
    long dim() const { return dim_; }
    const FieldPtr& field() const { return field_; }
    long size() const { return static_cast<long>(c_.size()); }

    Scalar& at(long flat) { return c_[flat]; }
    const Scalar& at(long flat) const { return c_[flat]; }
    Scalar& at(std::initializer_list<long> legs) { return c_[flatten(legs)]; }
    const Scalar& at(std::initializer_list<long> legs) const { return c_[flatten(legs)]; }

    long flatten(std::initializer_list<long> legs) const;
    void unflatten(long flat, long* legs) const;

    bool is_zero() const;
    bool operator==(const Tensor& o) const;
    bool operator!=(const Tensor& o) const { return !(*this == o); }

    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor operator-() const;
    Tensor scaled(const Scalar& s) const;

    /// Concatenation of legs: (a tensor b)[u,v] = a[u] * b[v].
    Tensor outer(const Tensor& o) const;

    std::vector<std::pair<long, Scalar>> nonzeros() const;

    static Tensor from_vec(const FieldPtr& f, const DVec& v);  // rank 1
    DVec to_vec() const;                                       // rank 1 only

    std::string index_str(long flat) const;  // "(i,j,k)" for witnesses

private:
    FieldPtr field_;
    int rank_;
    long dim_;
    std::vector<Scalar> c_;
};

/// Componentwise product in H^{otimes k}. Throws RankMismatch.
Tensor tensor_mul(const MultTable& H, const Tensor& a, const Tensor& b);

/// Product of several factors, left to right.
Tensor tensor_mul(const MultTable& H, std::initializer_list<const Tensor*> factors);

/// Unit of H^{otimes k}.
Tensor unit_tensor(const MultTable& H, int rank);

/// Two-sided inverse in H^{otimes k} by exact linear solve; both products
/// are verified. Throws NotInvertible.
Tensor tensor_invert(const MultTable& H, const Tensor& a);

/// Leg permutation: src[p] is the input leg displayed at output position p
/// (0-based). flip(R, {1,0}) is R_21.
Tensor flip_legs(const Tensor& a, const std::vector<int>& src);

/// Places the legs of `a` at `positions` (0-based, strictly increasing order
/// not required) inside H^{otimes out_rank}, filling every other leg with
/// the unit of H. embed(R, {0,2}, 3) is R_13.
Tensor embed(const MultTable& H, const Tensor& a, const std::vector<int>& positions,
             int out_rank);

/// Linear map H^{otimes src_rank} -> H^{otimes dst_rank} as a dense matrix
/// with a sparse per-column view. Houses Delta (1->2), epsilon (1->0), S
/// (1->1) and friends.
class LinearMap {
public:
    LinearMap() : src_rank_(0), dst_rank_(0), dim_(0) {}
    LinearMap(const FieldPtr& f, long dim, int src_rank, int dst_rank);

    int src_rank() const { return src_rank_; }
    int dst_rank() const { return dst_rank_; }
    long dim() const { return dim_; }
    const FieldPtr& field() const { return field_; }
    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Scalar& at(long r, long c) { return a_.at(r, c); }
    const Scalar& at(long r, long c) const { return a_.at(r, c); }
    const Matrix& matrix() const { return a_; }

    void finalize();  // builds the sparse column view
    const SVec& col(long c) const { return cols_sparse_[c]; }

    Tensor apply(const Tensor& a) const;  // src_rank legs consumed as a whole
    DVec apply_vec(const DVec& v) const;  // rank 1 -> rank 1 maps

    LinearMap compose(const LinearMap& inner) const;  // this after inner
    LinearMap inverse_map() const;                    // throws NotInvertible

    static LinearMap from_matrix(const FieldPtr& f, long dim, int src_rank, int dst_rank,
                                 Matrix m);

private:
    FieldPtr field_;
    int src_rank_, dst_rank_;
    long dim_;
    long rows_ = 0, cols_ = 0;
    Matrix a_;
    std::vector<SVec> cols_sparse_;
};

/// One slot of apply_legs: identity on a leg or a 1->k map applied to it.
struct LegOp {
    const LinearMap* map = nullptr;  // nullptr = identity
    static LegOp id() { return LegOp{}; }
    static LegOp of(const LinearMap& m) { return LegOp{&m}; }
};

/// Applies one LegOp per input leg; ranks of the results concatenate.
/// Throws RankMismatch when op count or output rank does not fit.
Tensor apply_legs(const std::vector<LegOp>& ops, const Tensor& a);

/// First differing flat index between a and b, if any.
std::optional<long> first_difference(const Tensor& a, const Tensor& b);

}  // namespace qh
