#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qh/scalar.hpp"

using namespace qh;

namespace {

// Test-local polynomial division over Q, independent of the library's field
// construction. Returns the quotient and requires zero remainder.
std::vector<Rat> oracle_divide(std::vector<Rat> p, const std::vector<Rat>& q) {
    auto deg = [](const std::vector<Rat>& a) {
        long d = static_cast<long>(a.size()) - 1;
        while (d >= 0 && a[d] == 0) --d;
        return d;
    };
    long dp = deg(p), dq = deg(q);
    REQUIRE(dq >= 0);
    std::vector<Rat> out(dp - dq + 1, Rat(0));
    while (deg(p) >= dq) {
        long d = deg(p);
        Rat c = p[d] / q[dq];
        out[d - dq] = c;
        for (long i = 0; i <= dq; ++i) p[d - dq + i] -= c * q[i];
    }
    for (const auto& r : p) REQUIRE(r == 0);
    return out;
}

Scalar rand_scalar(const FieldPtr& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Rat> c(f->degree());
    for (auto& x : c) {
        x = Rat(num(rng), den(rng));
        x.canonicalize();
    }
    return Scalar::from_coeffs(f, c);
}

}  // namespace

TEST_CASE("cyclotomic minimal polynomials for small orders") {
    auto f1 = Field::make(1);
    CHECK(f1->degree() == 1);
    CHECK(f1->minpoly() == std::vector<Rat>{Rat(-1), Rat(1)});  // x - 1

    auto f2 = Field::make(2);
    CHECK(f2->degree() == 1);
    CHECK(f2->minpoly() == std::vector<Rat>{Rat(1), Rat(1)});  // x + 1
    CHECK(Scalar::zeta_pow(f2, 1) == Scalar::from_int(f2, -1));

    // oracle: divide x^4 - 1 by (x-1)(x+1) = x^2 - 1 by hand division
    std::vector<Rat> x4m1 = {Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)};
    std::vector<Rat> x2m1 = {Rat(-1), Rat(0), Rat(1)};
    auto expected = oracle_divide(x4m1, x2m1);  // x^2 + 1
    auto f4 = Field::make(4);
    CHECK(f4->minpoly() == expected);
    CHECK(f4->degree() == 2);

    // zeta_4^2 = -1
    Scalar i = Scalar::zeta_pow(f4, 1);
    CHECK(i * i == Scalar::from_int(f4, -1));
}

TEST_CASE("phi(N) for composite orders") {
    CHECK(Field::make(3)->degree() == 2);
    CHECK(Field::make(6)->degree() == 2);
    CHECK(Field::make(8)->degree() == 4);
    CHECK(Field::make(12)->degree() == 4);
    // Phi_6 = x^2 - x + 1
    CHECK(Field::make(6)->minpoly() == std::vector<Rat>{Rat(1), Rat(-1), Rat(1)});
}

TEST_CASE("basic rational arithmetic") {
    auto f = Field::make(1);
    Scalar half = Scalar::from_rat(f, Rat(1, 2));
    CHECK(half + half == Scalar::one(f));
    CHECK((half - half).is_zero());
    CHECK(half * Scalar::from_int(f, 4) == Scalar::from_int(f, 2));
    CHECK_THROWS_AS(half / Scalar::zero(f), DivisionByZero);
}

TEST_CASE("inverse in Q(zeta_3) against an extended-Euclid oracle") {
    auto f = Field::make(3);  // minpoly x^2 + x + 1
    CHECK(f->minpoly() == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    Scalar z = Scalar::zeta_pow(f, 1);
    Scalar a = Scalar::one(f) + z;  // 1 + zeta
    // hand Euclid: (1+z)(a+bz) = (a-b) + a z  using z^2 = -1-z, so the
    // inverse is -z.
    Scalar inv = a.inverse();
    CHECK(inv == -z);
    CHECK(a * inv == Scalar::one(f));
}

TEST_CASE("primitivity: zeta_N^N = 1 and zeta_N^m != 1 for 0 < m < N") {
    for (long n : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
        auto f = Field::make(n);
        Scalar z = Scalar::zeta_pow(f, 1);
        Scalar p = Scalar::one(f);
        for (long m = 1; m < n; ++m) {
            p *= z;
            CHECK_FALSE(p.is_one());
        }
        p *= z;
        CHECK(p.is_one());
    }
}

TEST_CASE("field axioms on random samples, exact") {
    std::mt19937 rng(12345);
    for (long n : {4L, 6L, 8L}) {
        auto f = Field::make(n);
        for (int trial = 0; trial < 40; ++trial) {
            Scalar a = rand_scalar(f, rng), b = rand_scalar(f, rng), c = rand_scalar(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == Scalar::one(f));
                CHECK(a.inverse() * a == Scalar::one(f));
            }
        }
    }
}

TEST_CASE("mixing fields is an error") {
    auto f3 = Field::make(3);
    auto f4 = Field::make(4);
    Scalar a = Scalar::zeta_pow(f3, 1);
    Scalar b = Scalar::zeta_pow(f4, 1);
    CHECK_THROWS_AS(a + b, FieldMismatch);
    CHECK_THROWS_AS(a * b, FieldMismatch);
}

TEST_CASE("unattached zero combines with any field") {
    auto f = Field::make(4);
    Scalar z;  // default
    CHECK(z.is_zero());
    Scalar a = Scalar::zeta_pow(f, 1);
    CHECK(z + a == a);
    CHECK((z * a).is_zero());
    CHECK(z == Scalar::zero(f));
}
