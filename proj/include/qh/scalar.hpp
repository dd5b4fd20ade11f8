#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "qh/error.hpp"

namespace qh {

using Int = mpz_class;
using Rat = mpq_class;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Descriptor of the cyclotomic field Q(zeta_N), represented as
/// Q[x] / (Phi_N(x)) with Phi_N the N-th cyclotomic polynomial.
/// N = 1 gives the rationals (minpoly x - 1).
class Field {
public:
    long order() const { return n_; }              // N
    long degree() const { return degree_; }        // phi(N)
    const std::vector<Rat>& minpoly() const { return minpoly_; }  // monic, size degree+1

    /// Shared, memoized constructor. Degree-phi(N) minimal polynomial is
    /// obtained by exact division of x^N - 1 by Phi_d over all proper
    /// divisors d of N.
    static FieldPtr make(long n);

    bool same(const Field& other) const { return n_ == other.n_; }

private:
    Field(long n, std::vector<Rat> minpoly);
    long n_;
    long degree_;
    std::vector<Rat> minpoly_;
};

/// Element of Q(zeta_N): coefficient vector of length phi(N) in the power
/// basis 1, zeta, ..., zeta^{phi(N)-1}. Immutable value type; all operations
/// are exact. A default-constructed Scalar is the zero with no field
/// attached; it combines with scalars of any field.
class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const FieldPtr& f);
    static Scalar one(const FieldPtr& f);
    static Scalar from_int(const FieldPtr& f, long v);
    static Scalar from_rat(const FieldPtr& f, const Rat& v);
    static Scalar zeta_pow(const FieldPtr& f, long k);  // zeta^k, k may be negative
    static Scalar from_coeffs(const FieldPtr& f, std::vector<Rat> c);  // size phi(N)

    bool is_zero() const;
    bool is_one() const;
    const FieldPtr& field() const { return field_; }
    /// Coefficient vector; empty for an unattached zero.
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_rational() const;   // all coefficients beyond the constant vanish
    Rat rational_part() const;  // requires is_rational()

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);  // throws DivisionByZero

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;  // throws DivisionByZero on zero

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Human-readable form, e.g. "1/2 - z^2" with z = zeta_N.
    std::string str() const;

private:
    FieldPtr field_;       // null only for the unattached zero
    std::vector<Rat> c_;   // size phi(N) when field_ set

    static const FieldPtr& join(const Scalar& a, const Scalar& b);
    void trim_();
};

}  // namespace qh
