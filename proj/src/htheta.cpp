#include "qh/htheta.hpp"

namespace qh {

namespace {

// Lifts a rank-k tensor on H into the plain block of the 2d-dimensional
// extension.
Tensor lift_tensor(const FieldPtr& f, long d2, const Tensor& t) {
    Tensor out(f, d2, t.rank());
    long legs[kMaxRank];
    for (const auto& [flat, c] : t.nonzeros()) {
        t.unflatten(flat, legs);
        long nf = 0;
        for (int j = 0; j < t.rank(); ++j) nf = nf * d2 + legs[j];
        out.at(nf) = c;
    }
    return out;
}

}  // namespace

Report check_h_theta(const QuasiHopf& H, const RMatrix& R, const UElement& U, HTheta* out) {
    Report rep;
    const auto& M = H.B.mult;
    const long d = H.dim();
    const long D = 2 * d;
    const FieldPtr& f = H.field();

    DVec w = M.mul(U.u.to_vec(), H.s_vec(U.u.to_vec()));  // u S(u)

    HTheta T;
    T.base_dim = d;
    QuasiHopf& A = T.alg;
    A.B.field = f;
    A.B.dim = D;
    A.B.basis = H.B.basis;
    for (long i = 0; i < d; ++i) A.B.basis.push_back(H.B.basis[i] + "·θ");

    // multiplication: (a + b.theta)(c + e.theta) = (ac + be w) + (ae + bc).theta
    {
        DVec unit(D, Scalar::zero(f));
        for (long i = 0; i < d; ++i) unit[i] = M.unit[i];
        std::vector<DVec> products(D * D, DVec(D, Scalar::zero(f)));
        for (long i = 0; i < D; ++i)
            for (long j = 0; j < D; ++j) {
                long bi = i % d, bj = j % d;
                bool ti = i >= d, tj = j >= d;
                DVec p = M.mul(M.basis_vec(bi), M.basis_vec(bj));
                bool out_theta = ti != tj;
                if (ti && tj) p = M.mul(p, w);
                DVec& dst = products[i * D + j];
                for (long k = 0; k < d; ++k) dst[out_theta ? k + d : k] = p[k];
            }
        A.B.mult = MultTable::from_dense(f, D, unit, products);
    }

    // counit: eps(theta) = 1
    {
        Matrix em(f, 1, D);
        for (long i = 0; i < d; ++i) {
            em.at(0, i) = H.B.counit.at(0, i);
            em.at(0, i + d) = H.B.counit.at(0, i);
        }
        A.B.counit = LinearMap::from_matrix(f, D, 1, 0, std::move(em));
    }

    // comultiplication: plain block lifts, theta block twists by (R_21 R)^{-1}
    {
        Tensor r21r = tensor_mul(M, flip_legs(R.r, {1, 0}), R.r);
        Tensor r21r_inv = tensor_invert(M, r21r);
        Matrix dm(f, D * D, D);
        for (long i = 0; i < d; ++i) {
            for (const auto& [flat, c] : H.B.comult.col(i)) {
                long a = flat / d, b = flat % d;
                dm.at(a * D + b, i) = c;
            }
            Tensor twisted = tensor_mul(M, H.B.delta_vec(M.basis_vec(i)), r21r_inv);
            for (const auto& [flat, c] : twisted.nonzeros()) {
                long a = flat / d, b = flat % d;
                dm.at((a + d) * D + (b + d), i + d) = c;
            }
        }
        A.B.comult = LinearMap::from_matrix(f, D, 1, 2, std::move(dm));
    }

    // antipode: S(theta) = theta, so the theta block maps to itself
    {
        Matrix sm(f, D, D);
        for (long j = 0; j < d; ++j)
            for (long i = 0; i < d; ++i) {
                const Scalar& v = H.antipode.at(i, j);
                if (v.is_zero()) continue;
                sm.at(i, j) = v;
                sm.at(i + d, j + d) = v;
            }
        A.antipode = LinearMap::from_matrix(f, D, 1, 1, std::move(sm));
        if (H.antipode_inv) {
            Matrix si(f, D, D);
            for (long j = 0; j < d; ++j)
                for (long i = 0; i < d; ++i) {
                    const Scalar& v = H.antipode_inv->at(i, j);
                    if (v.is_zero()) continue;
                    si.at(i, j) = v;
                    si.at(i + d, j + d) = v;
                }
            A.antipode_inv = LinearMap::from_matrix(f, D, 1, 1, std::move(si));
        }
    }

    A.B.phi = lift_tensor(f, D, H.B.phi);
    A.B.phi_inv = lift_tensor(f, D, H.B.phi_inv);
    A.alpha = lift_tensor(f, D, H.alpha);
    A.beta = lift_tensor(f, D, H.beta);

    // theta and eta = theta^{-1} = theta (u S(u))^{-1}
    {
        T.theta = Tensor(f, D, 1);
        for (long i = 0; i < d; ++i) T.theta.at(i + d) = M.unit[i];
        T.u_norm = Tensor(f, D, 1);
        for (long i = 0; i < d; ++i) T.u_norm.at(i) = w[i];
        DVec w_inv = M.invert_element(w);
        T.eta.eta = Tensor(f, D, 1);
        for (long i = 0; i < d; ++i) T.eta.eta.at(i + d) = w_inv[i];
        T.eta.eta_inv = T.theta;
    }

    rep.merge(verify_quasi_bialgebra(A.B), "htheta");
    rep.merge(verify_quasi_hopf(A), "htheta");

    // theta is central and squares to u S(u)
    {
        bool ok = true;
        std::string wit;
        DVec tv = T.theta.to_vec();
        for (long h = 0; h < D && ok; ++h) {
            if (A.B.mult.mul(tv, A.B.mult.basis_vec(h)) !=
                A.B.mult.mul(A.B.mult.basis_vec(h), tv)) {
                ok = false;
                wit = "theta fails to commute with " + A.B.basis[h];
            }
        }
        rep.add("theta-central", ok, wit);
        DVec sq = A.B.mult.mul(tv, tv);
        bool sq_ok = Tensor::from_vec(f, sq) == T.u_norm;
        rep.add("theta-square-is-u-norm", sq_ok, sq_ok ? "" : "theta^2 != u S(u)");
    }

    // the lifted R is again an R-matrix, and eta = theta^{-1} is ribbon
    {
        Tensor r_lift = lift_tensor(f, D, R.r);
        RMatrix RL;
        Report qt = check_qt(A.B, r_lift, &RL);
        rep.merge(qt, "htheta");
        if (qt.ok()) {
            T.r = RL;
            rep.merge(verify_ribbon_element(A, RL, T.eta.eta, RibbonLevel::ribbon), "htheta");
        }
    }

    if (out && rep.ok()) *out = std::move(T);
    return rep;
}

HTheta build_h_theta(const QuasiHopf& H, const RMatrix& R, const UElement& U) {
    HTheta T;
    Report rep = check_h_theta(H, R, U, &T);
    if (!rep.ok()) {
        const CheckEntry* e = rep.first_failure();
        throw ConstructionFailure(e->name + (e->witness.empty() ? "" : " — " + e->witness));
    }
    return T;
}

Tensor lift_element(const HTheta& T, const Tensor& v) {
    Tensor out(T.alg.field(), 2 * T.base_dim, 1);
    for (const auto& [i, c] : v.nonzeros()) out.at(i) = c;
    return out;
}

}  // namespace qh
