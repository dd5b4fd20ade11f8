#include <sstream>

#include "qh/pivotal.hpp"

namespace qh {

namespace {

void check_equal(Report& rep, const std::string& name, const Tensor& lhs, const Tensor& rhs) {
    auto d = first_difference(lhs, rhs);
    if (!d) {
        rep.add(name, true);
    } else {
        std::ostringstream os;
        os << "first differs at " << lhs.index_str(*d) << ": lhs = " << lhs.at(*d).str()
           << ", rhs = " << rhs.at(*d).str();
        rep.add(name, false, os.str());
    }
}

// (S x S)((f^{-1})_21) f, the coproduct correction shared by the pivotal laws.
Tensor pivotal_correction(const QuasiHopf& H, const GaugeData& G) {
    Tensor f21_inv = flip_legs(G.f_inv, {1, 0});
    Tensor ss = apply_legs({LegOp::of(H.antipode), LegOp::of(H.antipode)}, f21_inv);
    return tensor_mul(H.B.mult, ss, G.f);
}

}  // namespace

Report verify_sovereign(const QuasiHopf& H, const GaugeData& G, const Tensor& g) {
    Report rep;
    const auto& M = H.B.mult;
    const long d = H.dim();
    DVec gv = g.to_vec();

    DVec g_inv;
    try {
        g_inv = M.invert_element(gv);
        rep.add("pivotal-invertible", true);
    } catch (const NotInvertible&) {
        rep.add("pivotal-invertible", false, "candidate has no inverse");
        return rep;
    }

    {
        Scalar e = H.B.eps_vec(gv);
        rep.add("pivotal-counit-one", e.is_one(),
                e.is_one() ? "" : "counit(g) = " + e.str());
    }

    // S^2(h) = g^{-1} h g, checked as g S^2(h) = h g
    {
        bool ok = true;
        std::string wit;
        for (long h = 0; h < d && ok; ++h) {
            DVec s2h = H.s_vec(H.s_vec(M.basis_vec(h)));
            if (M.mul(gv, s2h) != M.mul(M.basis_vec(h), gv)) {
                ok = false;
                wit = "fails on basis element " + H.B.basis[h];
            }
        }
        rep.add("pivotal-conjugates-antipode-square", ok, wit);
    }

    // Delta(g) = (g x g) (S x S)(f_21^{-1}) f
    {
        Tensor lhs = H.B.delta_vec(gv);
        Tensor gg = g.outer(g);
        Tensor rhs = tensor_mul(M, gg, pivotal_correction(H, G));
        check_equal(rep, "pivotal-coproduct", lhs, rhs);
    }

    // consequence: g^{-1} = S(g)
    {
        bool ok = g_inv == H.s_vec(gv);
        rep.add("pivotal-antipode-inverse", ok, ok ? "" : "g^{-1} != S(g)");
    }
    return rep;
}

std::vector<PivotalCandidate> solve_pivotal(const QuasiHopf& H, const GaugeData& G,
                                            long* space_dim, bool* incomplete) {
    const auto& M = H.B.mult;
    const long d = H.dim();

    // linear system: h g - g S^2(h) = 0 for every basis h
    Matrix sys(H.field(), d * d, d);
    for (long h = 0; h < d; ++h) {
        Matrix lh = M.left_mult_matrix(M.basis_vec(h));
        Matrix rs = M.right_mult_matrix(H.s_vec(H.s_vec(M.basis_vec(h))));
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) sys.at(h * d + r, c) = lh.at(r, c) - rs.at(r, c);
    }
    auto basis = sys.nullspace();
    long dim = static_cast<long>(basis.size());
    if (space_dim) *space_dim = dim;
    if (incomplete) *incomplete = dim > 1;

    std::vector<PivotalCandidate> found;
    for (const auto& w : basis) {
        Scalar e = H.B.eps_vec(w);
        if (e.is_zero()) continue;
        DVec cand(d, Scalar::zero(H.field()));
        Scalar einv = e.inverse();
        for (long i = 0; i < d; ++i) cand[i] = w[i] * einv;
        Tensor g = Tensor::from_vec(H.field(), cand);
        Report rep = verify_sovereign(H, G, g);
        if (!rep.ok()) continue;
        found.push_back(PivotalCandidate{
            g, Tensor::from_vec(H.field(), M.invert_element(cand))});
    }
    if (found.empty()) {
        std::ostringstream os;
        os << "no sovereign element among the normalized nullspace basis "
           << "(conjugation-law solution space has dimension " << dim << ")";
        throw NoSolution(os.str(), dim);
    }
    return found;
}

Report verify_involutory(const QuasiHopf& H, const GaugeData& G) {
    Report rep;
    const auto& M = H.B.mult;
    const long d = H.dim();
    const DVec alpha = H.alpha.to_vec();
    const DVec beta = H.beta.to_vec();
    auto S = [&](const DVec& v) { return H.s_vec(v); };

    DVec sb_a = M.mul(S(beta), alpha);   // S(beta) alpha
    DVec b_sa = M.mul(beta, S(alpha));   // beta S(alpha)

    {
        bool ok = true;
        std::string wit;
        for (long h = 0; h < d && ok; ++h) {
            DVec lhs = S(S(M.basis_vec(h)));
            DVec rhs = M.mul(M.mul(sb_a, M.basis_vec(h)), b_sa);
            if (lhs != rhs) {
                ok = false;
                wit = "S^2 is not the alpha/beta inner automorphism on basis element " +
                      H.B.basis[h];
            }
        }
        rep.add("involutory-antipode-square", ok, wit);
        if (!ok) return rep;
    }

    DVec alpha_inv, beta_inv;
    try {
        alpha_inv = M.invert_element(alpha);
        rep.add("alpha-invertible", true);
    } catch (const NotInvertible&) {
        rep.add("alpha-invertible", false, "alpha has no inverse");
    }
    try {
        beta_inv = M.invert_element(beta);
        rep.add("beta-invertible", true);
    } catch (const NotInvertible&) {
        rep.add("beta-invertible", false, "beta has no inverse");
    }

    {
        bool ok = M.mul(b_sa, sb_a) == M.unit && M.mul(sb_a, b_sa) == M.unit;
        rep.add("involutory-inverse-pair", ok,
                ok ? "" : "(beta S(alpha))^{-1} != S(beta) alpha");
    }

    rep.merge(verify_sovereign(H, G, Tensor::from_vec(H.field(), b_sa)), "sovereign");

    // Delta(S(beta) alpha) = f^{-1} (S x S)(f_21) (S(beta) alpha x S(beta) alpha)
    {
        Tensor lhs = H.B.delta_vec(sb_a);
        Tensor f21 = flip_legs(G.f, {1, 0});
        Tensor ss = apply_legs({LegOp::of(H.antipode), LegOp::of(H.antipode)}, f21);
        Tensor gi = Tensor::from_vec(H.field(), sb_a);
        Tensor gg = gi.outer(gi);
        Tensor rhs = tensor_mul(M, {&G.f_inv, &ss, &gg});
        check_equal(rep, "involutory-coproduct-identity", lhs, rhs);
    }
    return rep;
}

IntegralData find_integral(const QuasiHopf& H) {
    const auto& M = H.B.mult;
    const long d = H.dim();

    // h t = eps(h) t for every basis h
    Matrix sys(H.field(), d * d, d);
    for (long h = 0; h < d; ++h) {
        Matrix lh = M.left_mult_matrix(M.basis_vec(h));
        Scalar eh = H.B.eps_vec(M.basis_vec(h));
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) {
                Scalar v = lh.at(r, c);
                if (r == c) v -= eh;
                sys.at(h * d + r, c) = v;
            }
    }
    auto basis = sys.nullspace();
    Tensor t;
    bool ok = false;
    for (const auto& w : basis) {
        Scalar e = H.B.eps_vec(w);
        if (e.is_zero()) continue;
        DVec tv(d, Scalar::zero(H.field()));
        Scalar einv = e.inverse();
        for (long i = 0; i < d; ++i) tv[i] = w[i] * einv;
        t = Tensor::from_vec(H.field(), tv);
        ok = true;
        break;
    }
    if (!ok) {
        std::ostringstream os;
        os << "no left integral with nonzero counit (integral space dimension "
           << basis.size() << ")";
        throw NotSemisimple(os.str());
    }

    const DVec alpha = H.alpha.to_vec();
    const DVec beta = H.beta.to_vec();
    auto S = [&](const DVec& v) { return H.s_vec(v); };
    LinearMap s_inv = H.antipode_inverse();

    // p_R = x^1 x x^2 beta S(x^3)
    Tensor p_r(H.field(), d, 2);
    for (const auto& [flat, c] : H.B.phi_inv.nonzeros()) {
        long x[3];
        H.B.phi_inv.unflatten(flat, x);
        DVec tail = M.mul(M.mul(M.basis_vec(x[1]), beta), S(M.basis_vec(x[2])));
        for (long i = 0; i < d; ++i)
            if (!tail[i].is_zero()) p_r.at({x[0], i}) += c * tail[i];
    }
    // q_R = X^1 x S^{-1}(alpha X^3) X^2
    Tensor q_r(H.field(), d, 2);
    for (const auto& [flat, c] : H.B.phi.nonzeros()) {
        long X[3];
        H.B.phi.unflatten(flat, X);
        DVec head = M.mul(s_inv.apply_vec(M.mul(alpha, M.basis_vec(X[2]))),
                          M.basis_vec(X[1]));
        for (long i = 0; i < d; ++i)
            if (!head[i].is_zero()) q_r.at({X[0], i}) += c * head[i];
    }
    return IntegralData{t, p_r, q_r};
}

PivotalCandidate pivotal_from_integral(const QuasiHopf& H, const GaugeData& G) {
    const auto& M = H.B.mult;
    const long d = H.dim();
    IntegralData I = find_integral(H);

    // w = q_R Delta(t) p_R, so that g = w^2 S(w^1)
    Tensor dt = H.B.delta_vec(I.t.to_vec());
    Tensor w = tensor_mul(M, {&I.q_r, &dt, &I.p_r});

    DVec g(d, Scalar::zero(H.field()));
    for (const auto& [flat, c] : w.nonzeros()) {
        long a = flat / d, b = flat % d;
        DVec term = M.mul(M.basis_vec(b), H.s_vec(M.basis_vec(a)));
        for (long i = 0; i < d; ++i)
            if (!term[i].is_zero()) g[i] += c * term[i];
    }
    Tensor gt = Tensor::from_vec(H.field(), g);
    Report rep = verify_sovereign(H, G, gt);
    if (!rep.ok()) {
        const CheckEntry* e = rep.first_failure();
        throw InternalIdentityFailure("integral-based pivotal element: " + e->name +
                                      (e->witness.empty() ? "" : " — " + e->witness));
    }
    return PivotalCandidate{gt, Tensor::from_vec(H.field(), M.invert_element(g))};
}

Report verify_ribbon_element(const QuasiHopf& H, const RMatrix& R, const Tensor& eta,
                             RibbonLevel level) {
    Report rep;
    const auto& M = H.B.mult;
    const long d = H.dim();
    DVec ev = eta.to_vec();

    try {
        M.invert_element(ev);
        rep.add("ribbon-invertible", true);
    } catch (const NotInvertible&) {
        rep.add("ribbon-invertible", false, "eta has no inverse");
    }

    {
        bool ok = true;
        std::string wit;
        for (long h = 0; h < d && ok; ++h) {
            if (M.mul(ev, M.basis_vec(h)) != M.mul(M.basis_vec(h), ev)) {
                ok = false;
                wit = "eta fails to commute with " + H.B.basis[h];
            }
        }
        rep.add("ribbon-central", ok, wit);
    }

    {
        Tensor lhs = H.B.delta_vec(ev);
        Tensor ee = eta.outer(eta);
        Tensor r21r = tensor_mul(M, flip_legs(R.r, {1, 0}), R.r);
        Tensor rhs = tensor_mul(M, ee, r21r);
        check_equal(rep, "ribbon-coproduct", lhs, rhs);
    }

    if (level == RibbonLevel::ribbon) {
        bool ok = H.s_vec(ev) == ev;
        rep.add("ribbon-antipode-fixed", ok, ok ? "" : "S(eta) != eta");
    }
    return rep;
}

}  // namespace qh
