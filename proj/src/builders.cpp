#include <numeric>

#include "qh/builders.hpp"

namespace qh {

namespace {

std::string power_label(const std::string& gen, long a) {
    if (a == 0) return "1";
    if (a == 1) return gen;
    return gen + "^" + std::to_string(a);
}

// Group algebra k[C_n] skeleton: multiplication, grouplike coproduct,
// counit 1, antipode g -> g^{-1}.
QuasiBialgebra cyclic_group_bialgebra(const FieldPtr& f, long n) {
    QuasiBialgebra B;
    B.field = f;
    B.dim = n;
    for (long a = 0; a < n; ++a) B.basis.push_back(power_label("g", a));

    DVec unit(n, Scalar::zero(f));
    unit[0] = Scalar::one(f);
    std::vector<DVec> products(n * n, DVec(n, Scalar::zero(f)));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) products[a * n + b][(a + b) % n] = Scalar::one(f);
    B.mult = MultTable::from_dense(f, n, unit, products);

    Matrix dm(f, n * n, n);
    for (long a = 0; a < n; ++a) dm.at(a * n + a, a) = Scalar::one(f);
    B.comult = LinearMap::from_matrix(f, n, 1, 2, std::move(dm));

    Matrix em(f, 1, n);
    for (long a = 0; a < n; ++a) em.at(0, a) = Scalar::one(f);
    B.counit = LinearMap::from_matrix(f, n, 1, 0, std::move(em));
    return B;
}

LinearMap cyclic_antipode(const FieldPtr& f, long n) {
    Matrix sm(f, n, n);
    for (long a = 0; a < n; ++a) sm.at((n - a) % n, a) = Scalar::one(f);
    return LinearMap::from_matrix(f, n, 1, 1, std::move(sm));
}

void require_verified(const Report& rep, const std::string& what) {
    if (!rep.ok()) {
        const CheckEntry* e = rep.first_failure();
        throw InternalIdentityFailure(what + " failed verification: " + e->name +
                                      (e->witness.empty() ? "" : " — " + e->witness));
    }
}

}  // namespace

QuasiHopf cyclic_qha(long n, long s) {
    if (n < 2) throw BadParameters("cyclic quasi-Hopf algebra needs n >= 2");
    if (std::gcd(s % n + n, n) != 1)
        throw BadParameters("root exponent must be coprime to n");

    FieldPtr f = Field::make(n);
    QuasiHopf H;
    H.B = cyclic_group_bialgebra(f, n);
    H.antipode = cyclic_antipode(f, n);
    H.antipode_inv = H.antipode;  // S has order two on the group basis

    // alpha = g^{-1}, beta = 1
    H.alpha = H.B.basis1(n - 1);
    H.beta = H.B.unit1();

    // orthogonal idempotents 1_i = (1/n) sum_a q^{-ia} g^a with q = zeta^s
    std::vector<DVec> idem(n, DVec(n, Scalar::zero(f)));
    Scalar inv_n = Scalar::from_rat(f, Rat(1, n));
    for (long i = 0; i < n; ++i)
        for (long a = 0; a < n; ++a)
            idem[i][a] = inv_n * Scalar::zeta_pow(f, -s * i * a);

    // Phi = sum q^{i [(j+l)/n]} 1_i x 1_j x 1_l; the bracket is 1 iff
    // j + l >= n. Since the idempotent tensors are orthogonal, the inverse
    // has the reciprocal coefficients; both sides are re-verified below.
    Tensor phi(f, n, 3), phi_inv(f, n, 3);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            for (long l = 0; l < n; ++l) {
                long e = (j + l >= n) ? i : 0;
                Scalar c = Scalar::zeta_pow(f, s * e);
                Scalar cinv = Scalar::zeta_pow(f, -s * e);
                for (long a = 0; a < n; ++a) {
                    if (idem[i][a].is_zero()) continue;
                    for (long b = 0; b < n; ++b) {
                        if (idem[j][b].is_zero()) continue;
                        Scalar ab = idem[i][a] * idem[j][b];
                        for (long g = 0; g < n; ++g) {
                            if (idem[l][g].is_zero()) continue;
                            phi.at({a, b, g}) += c * ab * idem[l][g];
                            phi_inv.at({a, b, g}) += cinv * ab * idem[l][g];
                        }
                    }
                }
            }
    H.B.phi = phi;
    H.B.phi_inv = phi_inv;

    require_verified(verify_quasi_bialgebra(H.B), "cyclic quasi-bialgebra");
    require_verified(verify_quasi_hopf(H), "cyclic quasi-Hopf algebra");
    GaugeData G = compute_drinfeld_twist(H);
    require_verified(verify_s_morphism_identities(H, G), "cyclic gauge identities");
    require_verified(verify_involutory(H, G), "cyclic involutory structure");
    return H;
}

GroupHopfResult group_hopf(long n, bool with_r) {
    if (n < 1) throw BadParameters("group algebra needs n >= 1");
    if (with_r && n != 2)
        throw BadParameters("the stock R-matrix is only provided for n = 2");

    FieldPtr f = Field::make(n == 1 ? 1 : n);
    GroupHopfResult out;
    out.H.B = cyclic_group_bialgebra(f, n);
    out.H.antipode = cyclic_antipode(f, n);
    out.H.antipode_inv = out.H.antipode;
    out.H.B.phi = unit_tensor(out.H.B.mult, 3);
    out.H.B.phi_inv = out.H.B.phi;
    out.H.alpha = out.H.B.unit1();
    out.H.beta = out.H.B.unit1();

    require_verified(verify_quasi_bialgebra(out.H.B), "group bialgebra");
    require_verified(verify_quasi_hopf(out.H), "group Hopf algebra");

    if (with_r) {
        Tensor r(f, 2, 2);
        Scalar half = Scalar::from_rat(f, Rat(1, 2));
        r.at({0, 0}) = half;
        r.at({0, 1}) = half;
        r.at({1, 0}) = half;
        r.at({1, 1}) = -half;
        out.R = verify_qt(out.H.B, r);  // throws NotAnRMatrix on failure
    }
    return out;
}

SweedlerResult sweedler(const Rat& r_param) {
    FieldPtr f = Field::make(1);
    const long d = 4;  // basis 1, g, x, gx
    SweedlerResult out;
    QuasiHopf& H = out.H;
    H.B.field = f;
    H.B.dim = d;
    H.B.basis = {"1", "g", "x", "gx"};

    DVec unit(d, Scalar::zero(f));
    unit[0] = Scalar::one(f);
    std::vector<DVec> products(d * d, DVec(d, Scalar::zero(f)));
    auto set = [&](long i, long j, long k, long c) {
        products[i * d + j][k] = Scalar::from_int(f, c);
    };
    // e0 = 1
    for (long j = 0; j < d; ++j) set(0, j, j, 1);
    set(1, 0, 1, 1);
    set(2, 0, 2, 1);
    set(3, 0, 3, 1);
    set(1, 1, 0, 1);   // g g = 1
    set(1, 2, 3, 1);   // g x = gx
    set(1, 3, 2, 1);   // g gx = x
    set(2, 1, 3, -1);  // x g = -gx
    set(3, 1, 2, -1);  // gx g = -x
    // x x = x gx = gx x = gx gx = 0
    H.B.mult = MultTable::from_dense(f, d, unit, products);

    // Delta(g) = g x g, Delta(x) = x x 1 + g x x
    Matrix dm(f, d * d, d);
    auto one = Scalar::one(f);
    dm.at(0 * d + 0, 0) = one;
    dm.at(1 * d + 1, 1) = one;
    dm.at(2 * d + 0, 2) = one;
    dm.at(1 * d + 2, 2) = one;
    dm.at(3 * d + 1, 3) = one;  // Delta(gx) = gx x g + 1 x gx
    dm.at(0 * d + 3, 3) = one;
    H.B.comult = LinearMap::from_matrix(f, d, 1, 2, std::move(dm));

    Matrix em(f, 1, d);
    em.at(0, 0) = one;
    em.at(0, 1) = one;
    H.B.counit = LinearMap::from_matrix(f, d, 1, 0, std::move(em));

    // S(g) = g, S(x) = -gx, S(gx) = x
    Matrix sm(f, d, d);
    sm.at(0, 0) = one;
    sm.at(1, 1) = one;
    sm.at(3, 2) = -one;
    sm.at(2, 3) = one;
    H.antipode = LinearMap::from_matrix(f, d, 1, 1, std::move(sm));
    H.antipode_inv = H.antipode.inverse_map();

    H.B.phi = unit_tensor(H.B.mult, 3);
    H.B.phi_inv = H.B.phi;
    H.alpha = H.B.unit1();
    H.beta = H.B.unit1();

    require_verified(verify_quasi_bialgebra(H.B), "four-dimensional bialgebra");
    require_verified(verify_quasi_hopf(H), "four-dimensional Hopf algebra");

    // R = (1/2)(1x1 + 1xg + gx1 - gxg)
    //   + (lambda/2)(x x x - x x gx + gx x x + gx x gx);
    // the signs of the nilpotent part are forced by the coproduct identities
    // for Delta(x) = x x 1 + g x x, and verify_qt confirms them below.
    Tensor r(f, d, 2);
    Scalar half = Scalar::from_rat(f, Rat(1, 2));
    Rat lh = r_param / 2;
    Scalar lhalf = Scalar::from_rat(f, lh);
    r.at({0, 0}) = half;
    r.at({0, 1}) = half;
    r.at({1, 0}) = half;
    r.at({1, 1}) = -half;
    r.at({2, 2}) = lhalf;
    r.at({2, 3}) = -lhalf;
    r.at({3, 2}) = lhalf;
    r.at({3, 3}) = lhalf;
    out.R = verify_qt(H.B, r);
    return out;
}

}  // namespace qh
