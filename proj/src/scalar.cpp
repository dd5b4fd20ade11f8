#include <sstream>

#include "qh/scalar.hpp"

namespace qh {

Scalar Scalar::zero(const FieldPtr& f) {
    Scalar s;
    s.field_ = f;
    s.c_.assign(f->degree(), Rat(0));
    return s;
}

Scalar Scalar::one(const FieldPtr& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldPtr& f, long v) { return from_rat(f, Rat(v)); }

Scalar Scalar::from_rat(const FieldPtr& f, const Rat& v) {
    Scalar s = zero(f);
    s.c_[0] = v;
    s.c_[0].canonicalize();
    return s;
}

Scalar Scalar::from_coeffs(const FieldPtr& f, std::vector<Rat> c) {
    if (static_cast<long>(c.size()) != f->degree())
        throw FormatError("scalar coefficient vector length does not match phi(N)");
    Scalar s;
    s.field_ = f;
    s.c_ = std::move(c);
    for (auto& x : s.c_) x.canonicalize();
    return s;
}

Scalar Scalar::zeta_pow(const FieldPtr& f, long k) {
    long n = f->order();
    k %= n;
    if (k < 0) k += n;
    Scalar s = one(f);
    Scalar z = zero(f);
    if (f->degree() == 1) {
        // zeta is the root of the linear minpoly x + c0.
        z.c_[0] = -f->minpoly()[0];
    } else {
        z.c_[1] = 1;
    }
    for (long i = 0; i < k; ++i) s *= z;
    return s;
}

bool Scalar::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Scalar::is_one() const {
    if (!field_) return false;
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Scalar::rational_part() const {
    if (!is_rational()) throw Error("scalar is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

const FieldPtr& Scalar::join(const Scalar& a, const Scalar& b) {
    if (a.field_ && b.field_) {
        if (!a.field_->same(*b.field_))
            throw FieldMismatch("scalars from different cyclotomic fields");
        return a.field_;
    }
    return a.field_ ? a.field_ : b.field_;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    const FieldPtr& f = join(*this, o);
    if (!f) return *this;  // zero + zero
    if (!field_) *this = zero(f);
    for (size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    const FieldPtr& f = join(*this, o);
    if (!f) return *this;
    if (!field_) *this = zero(f);
    for (size_t i = 0; i < c_.size() && i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    const FieldPtr& f = join(*this, o);
    if (!f) return *this;
    if (!field_ || !o.field_) {  // one side is an unattached zero
        *this = zero(f);
        return *this;
    }
    const long m = f->degree();
    std::vector<Rat> prod(2 * m - 1, Rat(0));
    for (long i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; j < m; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    // Reduce modulo the monic minimal polynomial.
    const auto& mp = f->minpoly();
    for (long d = 2 * m - 2; d >= m; --d) {
        if (prod[d] == 0) continue;
        Rat c = prod[d];
        for (long i = 0; i < m; ++i) prod[d - m + i] -= c * mp[i];
        prod[d] = 0;
    }
    prod.resize(m);
    c_ = std::move(prod);
    return *this;
}

Scalar Scalar::inverse() const {
    if (!field_ || is_zero()) throw DivisionByZero("inverse of zero scalar");
    const FieldPtr& f = field_;
    const long m = f->degree();
    if (m == 1) {
        Scalar s = zero(f);
        s.c_[0] = 1 / c_[0];
        return s;
    }
    // Extended Euclid in Q[x] against the (irreducible) minimal polynomial:
    // maintains t with t * this == r (mod minpoly) until r is a nonzero
    // constant.
    using Poly = std::vector<Rat>;
    auto deg = [](const Poly& p) {
        long d = static_cast<long>(p.size()) - 1;
        while (d >= 0 && p[d] == 0) --d;
        return d;
    };
    auto submul = [](Poly& a, const Poly& b, const Rat& c, long shift) {
        // a -= c * x^shift * b
        if (static_cast<long>(a.size()) < static_cast<long>(b.size()) + shift)
            a.resize(b.size() + shift, Rat(0));
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    };
    Poly r0 = f->minpoly();
    Poly r1 = c_;
    Poly t0(1, Rat(0)), t1(1, Rat(1));
    while (deg(r1) > 0) {
        long d1 = deg(r1);
        while (deg(r0) >= d1) {
            long d0 = deg(r0);
            Rat c = r0[d0] / r1[d1];
            submul(r0, r1, c, d0 - d1);
            submul(t0, t1, c, d0 - d1);
        }
        std::swap(r0, r1);
        std::swap(t0, t1);
    }
    long dr = deg(r1);
    if (dr != 0) throw DivisionByZero("scalar has no inverse (not coprime to minimal polynomial)");
    Rat lead = r1[0];
    if (deg(t1) >= m) throw Error("euclid cofactor exceeded field degree");
    std::vector<Rat> out(m, Rat(0));
    for (size_t i = 0; i < t1.size() && i < static_cast<size_t>(m); ++i) out[i] = t1[i] / lead;
    Scalar s;
    s.field_ = f;
    s.c_ = std::move(out);
    return s;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    *this *= o.inverse();
    return *this;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!field_ || !o.field_) return is_zero() && o.is_zero();
    if (!field_->same(*o.field_))
        throw FieldMismatch("comparing scalars from different cyclotomic fields");
    return c_ == o.c_;
}

std::string Scalar::str() const {
    if (!field_ || is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat a = c_[i];
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit_coeff = (a == 1) && i > 0;
        if (!unit_coeff) os << a.get_str();
        if (i > 0) {
            if (!unit_coeff) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace qh
