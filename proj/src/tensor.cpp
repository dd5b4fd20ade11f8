#include <sstream>

#include "qh/tensor.hpp"

namespace qh {

DVec MultTable::mul(const DVec& a, const DVec& b) const {
    DVec out = zero_vec();
    for (long i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (long j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            Scalar c = a[i] * b[j];
            for (const auto& [k, s] : basis_prod(i, j)) out[k] += c * s;
        }
    }
    return out;
}

DVec MultTable::basis_vec(long i) const {
    DVec v = zero_vec();
    v[i] = Scalar::one(field);
    return v;
}

MultTable MultTable::from_dense(const FieldPtr& f, long dim, DVec unit,
                                const std::vector<DVec>& products) {
    MultTable t;
    t.field = f;
    t.dim = dim;
    t.unit = std::move(unit);
    t.prod.resize(dim * dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            const DVec& p = products[i * dim + j];
            SVec sv;
            for (long k = 0; k < dim; ++k)
                if (!p[k].is_zero()) sv.emplace_back(k, p[k]);
            t.prod[i * dim + j] = std::move(sv);
        }
    return t;
}

Matrix MultTable::left_mult_matrix(const DVec& a) const {
    Matrix m(field, dim, dim);
    for (long i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (long j = 0; j < dim; ++j)
            for (const auto& [k, s] : basis_prod(i, j)) m.at(k, j) += a[i] * s;
    }
    return m;
}

Matrix MultTable::right_mult_matrix(const DVec& a) const {
    Matrix m(field, dim, dim);
    for (long j = 0; j < dim; ++j) {
        if (a[j].is_zero()) continue;
        for (long i = 0; i < dim; ++i)
            for (const auto& [k, s] : basis_prod(i, j)) m.at(k, i) += a[j] * s;
    }
    return m;
}

DVec MultTable::invert_element(const DVec& a) const {
    Matrix la = left_mult_matrix(a);
    Matrix rhs(field, dim, 1);
    for (long i = 0; i < dim; ++i) rhs.at(i, 0) = unit[i];
    Matrix x = la.solve(rhs);  // throws NotInvertible
    DVec inv(dim, Scalar::zero(field));
    for (long i = 0; i < dim; ++i) inv[i] = x.at(i, 0);
    // two-sided check
    DVec left = mul(inv, a), right = mul(a, inv);
    if (left != unit || right != unit) throw NotInvertible("one-sided inverse only");
    return inv;
}

Tensor::Tensor(const FieldPtr& f, long dim, int rank) : field_(f), rank_(rank), dim_(dim) {
    if (rank < 0 || rank > kMaxRank) throw RankMismatch("tensor rank out of range");
    long n = 1;
    for (int i = 0; i < rank; ++i) {
        n *= dim;
        if (n > 10'000'000) throw Error("tensor too large for dense storage");
    }
    c_.assign(n, Scalar::zero(f));
}

long Tensor::flatten(std::initializer_list<long> legs) const {
    long flat = 0;
    for (long i : legs) flat = flat * dim_ + i;
    return flat;
}

void Tensor::unflatten(long flat, long* legs) const {
    for (int j = rank_ - 1; j >= 0; --j) {
        legs[j] = flat % dim_;
        flat /= dim_;
    }
}

bool Tensor::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Tensor::operator==(const Tensor& o) const {
    if (rank_ != o.rank_ || dim_ != o.dim_) return false;
    return c_ == o.c_;
}

Tensor Tensor::operator+(const Tensor& o) const {
    if (rank_ != o.rank_ || dim_ != o.dim_) throw RankMismatch("tensor sum shape mismatch");
    Tensor out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
    return out;
}

Tensor Tensor::operator-(const Tensor& o) const {
    if (rank_ != o.rank_ || dim_ != o.dim_) throw RankMismatch("tensor diff shape mismatch");
    Tensor out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] -= o.c_[i];
    return out;
}

Tensor Tensor::operator-() const {
    Tensor out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

Tensor Tensor::scaled(const Scalar& s) const {
    Tensor out = *this;
    for (auto& x : out.c_) x *= s;
    return out;
}

Tensor Tensor::outer(const Tensor& o) const {
    Tensor out(field_, dim_, rank_ + o.rank_);
    long stride = o.size();
    for (long i = 0; i < size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (long j = 0; j < o.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            out.c_[i * stride + j] = c_[i] * o.c_[j];
        }
    }
    return out;
}

std::vector<std::pair<long, Scalar>> Tensor::nonzeros() const {
    std::vector<std::pair<long, Scalar>> nz;
    for (long i = 0; i < size(); ++i)
        if (!c_[i].is_zero()) nz.emplace_back(i, c_[i]);
    return nz;
}

Tensor Tensor::from_vec(const FieldPtr& f, const DVec& v) {
    Tensor t(f, static_cast<long>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) t.c_[i] = v[i];
    return t;
}

DVec Tensor::to_vec() const {
    if (rank_ != 1) throw RankMismatch("to_vec needs a rank-1 tensor");
    return c_;
}

std::string Tensor::index_str(long flat) const {
    long legs[kMaxRank] = {0, 0, 0, 0};
    unflatten(flat, legs);
    std::ostringstream os;
    os << "(";
    for (int j = 0; j < rank_; ++j) os << (j ? "," : "") << legs[j];
    os << ")";
    return os.str();
}

namespace {

// Cartesian accumulation of per-leg sparse expansions into `out`.
void expand_legs(Tensor& out, const Scalar& coeff,
                 const std::vector<const SVec*>& legs, long dim) {
    struct Frame {
        size_t idx;
        long flat;
        Scalar c;
    };
    // iterative depth-first product over legs
    std::vector<Frame> stack;
    stack.push_back({0, 0, coeff});
    const size_t k = legs.size();
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.idx == k) {
            out.at(fr.flat) += fr.c;
            continue;
        }
        for (const auto& [b, s] : *legs[fr.idx]) {
            stack.push_back({fr.idx + 1, fr.flat * dim + b, fr.c * s});
        }
    }
}

}  // namespace

Tensor tensor_mul(const MultTable& H, const Tensor& a, const Tensor& b) {
    if (a.rank() != b.rank() || a.dim() != b.dim())
        throw RankMismatch("tensor product requires equal rank and dimension");
    const int k = a.rank();
    const long d = a.dim();
    Tensor out(a.field(), d, k);
    if (k == 0) {
        out.at(0l) = a.at(0l) * b.at(0l);
        return out;
    }
    auto nza = a.nonzeros();
    auto nzb = b.nonzeros();
    long ul[kMaxRank], vl[kMaxRank];
    std::vector<const SVec*> legs(k);
    for (const auto& [ia, ca] : nza) {
        a.unflatten(ia, ul);
        for (const auto& [ib, cb] : nzb) {
            b.unflatten(ib, vl);
            bool dead = false;
            for (int j = 0; j < k; ++j) {
                legs[j] = &H.basis_prod(ul[j], vl[j]);
                if (legs[j]->empty()) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            expand_legs(out, ca * cb, legs, d);
        }
    }
    return out;
}

Tensor tensor_mul(const MultTable& H, std::initializer_list<const Tensor*> factors) {
    auto it = factors.begin();
    Tensor acc = **it;
    for (++it; it != factors.end(); ++it) acc = tensor_mul(H, acc, **it);
    return acc;
}

Tensor unit_tensor(const MultTable& H, int rank) {
    Tensor u = Tensor::from_vec(H.field, H.unit);
    if (rank == 0) {
        Tensor t(H.field, H.dim, 0);
        t.at(0l) = Scalar::one(H.field);
        return t;
    }
    Tensor out = u;
    for (int i = 1; i < rank; ++i) out = out.outer(u);
    return out;
}

Tensor tensor_invert(const MultTable& H, const Tensor& a) {
    const int k = a.rank();
    const long d = a.dim();
    const long n = a.size();
    // left-multiplication matrix of a on H^{otimes k}
    Matrix la(a.field(), n, n);
    auto nza = a.nonzeros();
    long ul[kMaxRank], vl[kMaxRank];
    std::vector<const SVec*> legs(std::max(k, 1));
    for (long col = 0; col < n; ++col) {
        Tensor colt(a.field(), d, k);
        a.unflatten(col, vl);
        for (const auto& [ia, ca] : nza) {
            a.unflatten(ia, ul);
            bool dead = false;
            for (int j = 0; j < k; ++j) {
                legs[j] = &H.basis_prod(ul[j], vl[j]);
                if (legs[j]->empty()) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            expand_legs(colt, ca, legs, d);
        }
        for (long r = 0; r < n; ++r) la.at(r, col) = colt.at(r);
    }
    Tensor unit = unit_tensor(H, k);
    Matrix rhs(a.field(), n, 1);
    for (long i = 0; i < n; ++i) rhs.at(i, 0) = unit.at(i);
    Matrix x = la.solve(rhs);  // throws NotInvertible on singular systems
    Tensor inv(a.field(), d, k);
    for (long i = 0; i < n; ++i) inv.at(i) = x.at(i, 0);
    if (tensor_mul(H, a, inv) != unit || tensor_mul(H, inv, a) != unit)
        throw NotInvertible("element has no two-sided inverse");
    return inv;
}

Tensor flip_legs(const Tensor& a, const std::vector<int>& src) {
    const int k = a.rank();
    if (static_cast<int>(src.size()) != k) throw RankMismatch("flip_legs permutation size");
    Tensor out(a.field(), a.dim(), k);
    long legs[kMaxRank];
    for (const auto& [flat, c] : a.nonzeros()) {
        a.unflatten(flat, legs);
        long nf = 0;
        for (int p = 0; p < k; ++p) nf = nf * a.dim() + legs[src[p]];
        out.at(nf) += c;
    }
    return out;
}

Tensor embed(const MultTable& H, const Tensor& a, const std::vector<int>& positions,
             int out_rank) {
    if (static_cast<int>(positions.size()) != a.rank())
        throw RankMismatch("embed: positions must match tensor rank");
    Tensor out(a.field(), a.dim(), out_rank);
    // per-leg sparse factors: designated legs carry a's indices, others the unit
    SVec unit_sv;
    for (long i = 0; i < H.dim; ++i)
        if (!H.unit[i].is_zero()) unit_sv.emplace_back(i, H.unit[i]);
    long legs[kMaxRank];
    std::vector<SVec> single(a.rank());
    std::vector<const SVec*> fac(out_rank);
    for (const auto& [flat, c] : a.nonzeros()) {
        a.unflatten(flat, legs);
        for (int j = 0; j < a.rank(); ++j)
            single[j] = SVec{{legs[j], Scalar::one(a.field())}};
        for (int p = 0; p < out_rank; ++p) fac[p] = &unit_sv;
        for (int j = 0; j < a.rank(); ++j) fac[positions[j]] = &single[j];
        expand_legs(out, c, fac, a.dim());
    }
    return out;
}

LinearMap::LinearMap(const FieldPtr& f, long dim, int src_rank, int dst_rank)
    : field_(f), src_rank_(src_rank), dst_rank_(dst_rank), dim_(dim) {
    rows_ = 1;
    for (int i = 0; i < dst_rank; ++i) rows_ *= dim;
    cols_ = 1;
    for (int i = 0; i < src_rank; ++i) cols_ *= dim;
    a_ = Matrix(f, rows_, cols_);
}

LinearMap LinearMap::from_matrix(const FieldPtr& f, long dim, int src_rank, int dst_rank,
                                 Matrix m) {
    LinearMap lm(f, dim, src_rank, dst_rank);
    if (m.rows() != lm.rows_ || m.cols() != lm.cols_)
        throw RankMismatch("linear map matrix shape mismatch");
    lm.a_ = std::move(m);
    lm.finalize();
    return lm;
}

void LinearMap::finalize() {
    cols_sparse_.assign(cols_, SVec{});
    for (long c = 0; c < cols_; ++c)
        for (long r = 0; r < rows_; ++r)
            if (!a_.at(r, c).is_zero()) cols_sparse_[c].emplace_back(r, a_.at(r, c));
}

Tensor LinearMap::apply(const Tensor& t) const {
    if (t.rank() != src_rank_ || t.dim() != dim_)
        throw RankMismatch("linear map applied to tensor of wrong shape");
    Tensor out(field_, dim_, dst_rank_);
    for (const auto& [flat, c] : t.nonzeros())
        for (const auto& [r, s] : col(flat)) out.at(r) += c * s;
    return out;
}

DVec LinearMap::apply_vec(const DVec& v) const {
    DVec out(rows_, Scalar::zero(field_));
    for (long c = 0; c < cols_; ++c) {
        if (v[c].is_zero()) continue;
        for (const auto& [r, s] : col(c)) out[r] += v[c] * s;
    }
    return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    if (inner.dst_rank_ != src_rank_) throw RankMismatch("composition rank mismatch");
    return from_matrix(field_, dim_, inner.src_rank_, dst_rank_, a_ * inner.a_);
}

LinearMap LinearMap::inverse_map() const {
    if (rows_ != cols_) throw NotInvertible("non-square linear map");
    return from_matrix(field_, dim_, src_rank_, dst_rank_, a_.inverse());
}

Tensor apply_legs(const std::vector<LegOp>& ops, const Tensor& a) {
    if (static_cast<int>(ops.size()) != a.rank())
        throw RankMismatch("apply_legs: one op per leg required");
    int out_rank = 0;
    for (const auto& op : ops) {
        if (op.map) {
            if (op.map->src_rank() != 1)
                throw RankMismatch("apply_legs: leg maps must consume one leg");
            out_rank += op.map->dst_rank();
        } else {
            out_rank += 1;
        }
    }
    if (out_rank > kMaxRank) throw RankMismatch("apply_legs: output rank exceeds 4");
    const long d = a.dim();
    Tensor out(a.field(), d, out_rank);
    long legs[kMaxRank];
    SVec idleg;
    for (const auto& [flat, c] : a.nonzeros()) {
        a.unflatten(flat, legs);
        // per-leg expansion: (sub-flat, width, coeff)
        struct Part {
            const SVec* sv = nullptr;
            long width = 0;  // d^{dst_rank}
            SVec own;
        };
        std::vector<Part> parts(ops.size());
        bool dead = false;
        for (size_t j = 0; j < ops.size(); ++j) {
            Part& p = parts[j];
            if (ops[j].map) {
                p.width = 1;
                for (int q = 0; q < ops[j].map->dst_rank(); ++q) p.width *= d;
                p.sv = &ops[j].map->col(legs[j]);
                if (p.sv->empty()) {
                    dead = true;
                    break;
                }
            } else {
                p.width = d;
                p.own = SVec{{legs[j], Scalar::one(a.field())}};
                p.sv = &p.own;
            }
        }
        if (dead) continue;
        // depth-first cartesian accumulation
        struct Frame {
            size_t idx;
            long flat;
            Scalar c;
        };
        std::vector<Frame> stack;
        stack.push_back({0, 0, c});
        while (!stack.empty()) {
            Frame fr = stack.back();
            stack.pop_back();
            if (fr.idx == parts.size()) {
                out.at(fr.flat) += fr.c;
                continue;
            }
            const Part& p = parts[fr.idx];
            for (const auto& [b, s] : *p.sv)
                stack.push_back({fr.idx + 1, fr.flat * p.width + b, fr.c * s});
        }
    }
    return out;
}

std::optional<long> first_difference(const Tensor& a, const Tensor& b) {
    if (a.rank() != b.rank() || a.dim() != b.dim()) return 0;
    for (long i = 0; i < a.size(); ++i)
        if (!(a.at(i) == b.at(i))) return i;
    return std::nullopt;
}

}  // namespace qh
