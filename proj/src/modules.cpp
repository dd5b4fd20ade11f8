#include <sstream>

#include "qh/modules.hpp"

namespace qh {

namespace {

void check_mat_equal(Report& rep, const std::string& name, const Matrix& lhs,
                     const Matrix& rhs, const std::string& context = "") {
    if (lhs == rhs) {
        rep.add(name, true);
        return;
    }
    std::ostringstream os;
    if (!context.empty()) os << context << "; ";
    for (long r = 0; r < lhs.rows(); ++r)
        for (long c = 0; c < lhs.cols(); ++c)
            if (!(lhs.at(r, c) == rhs.at(r, c))) {
                os << "first differs at entry (" << r << "," << c
                   << "): lhs = " << lhs.at(r, c).str() << ", rhs = " << rhs.at(r, c).str();
                rep.add(name, false, os.str());
                return;
            }
    rep.add(name, false, "shape mismatch");
}

}  // namespace

Matrix HModule::act(const QuasiBialgebra& H, const DVec& a) const {
    Matrix m(H.field, n, n);
    for (long i = 0; i < H.dim; ++i) {
        if (a[i].is_zero()) continue;
        m = m + rho[i].scaled(a[i]);
    }
    return m;
}

Report check_module(const QuasiHopf& H, const HModule& V) {
    Report rep;
    const auto& M = H.B.mult;
    {
        bool ok = V.act(H.B, M.unit).is_identity();
        rep.add("module-unit", ok, ok ? "" : "rho(1) != id on " + V.name);
    }
    {
        bool ok = true;
        std::string wit;
        for (long i = 0; i < H.dim() && ok; ++i)
            for (long j = 0; j < H.dim() && ok; ++j) {
                Matrix lhs = V.rho[i] * V.rho[j];
                Matrix rhs(H.field(), V.n, V.n);
                for (const auto& [k, c] : M.basis_prod(i, j)) rhs = rhs + V.rho[k].scaled(c);
                if (lhs != rhs) {
                    ok = false;
                    wit = "action not multiplicative on " + H.B.basis[i] + ", " +
                          H.B.basis[j] + " for " + V.name;
                }
            }
        rep.add("module-action-multiplicative", ok, wit);
    }
    return rep;
}

HModule trivial_module(const QuasiHopf& H) {
    HModule V;
    V.name = "trivial";
    V.n = 1;
    for (long i = 0; i < H.dim(); ++i) {
        Matrix m(H.field(), 1, 1);
        m.at(0, 0) = H.B.eps_vec(H.B.mult.basis_vec(i));
        V.rho.push_back(std::move(m));
    }
    return V;
}

HModule regular_module(const QuasiHopf& H) {
    HModule V;
    V.name = "regular";
    V.n = H.dim();
    for (long i = 0; i < H.dim(); ++i)
        V.rho.push_back(H.B.mult.left_mult_matrix(H.B.mult.basis_vec(i)));
    return V;
}

HModule tensor_module(const QuasiHopf& H, const HModule& V, const HModule& W) {
    HModule T;
    T.name = "(" + V.name + "⊗" + W.name + ")";
    T.n = V.n * W.n;
    for (long i = 0; i < H.dim(); ++i) {
        Matrix m(H.field(), T.n, T.n);
        for (const auto& [flat, c] : H.B.comult.col(i)) {
            long a = flat / H.dim(), b = flat % H.dim();
            m = m + V.rho[a].kron(W.rho[b]).scaled(c);
        }
        T.rho.push_back(std::move(m));
    }
    return T;
}

HModule dual_module(const QuasiHopf& H, const HModule& V) {
    HModule D;
    D.name = V.name + "*";
    D.n = V.n;
    for (long i = 0; i < H.dim(); ++i)
        D.rho.push_back(V.act(H.B, H.s_vec(H.B.mult.basis_vec(i))).transpose());
    return D;
}

bool is_module_map(const QuasiHopf& H, const HModule& V, const HModule& W, const Matrix& T) {
    for (long i = 0; i < H.dim(); ++i)
        if (T * V.rho[i] != W.rho[i] * T) return false;
    return true;
}

Matrix associator(const QuasiHopf& H, const HModule& U, const HModule& V, const HModule& W) {
    Matrix m(H.field(), U.n * V.n * W.n, U.n * V.n * W.n);
    long legs[kMaxRank];
    for (const auto& [flat, c] : H.B.phi.nonzeros()) {
        H.B.phi.unflatten(flat, legs);
        m = m + U.rho[legs[0]].kron(V.rho[legs[1]].kron(W.rho[legs[2]])).scaled(c);
    }
    return m;
}

Matrix associator_inv(const QuasiHopf& H, const HModule& U, const HModule& V,
                      const HModule& W) {
    Matrix m(H.field(), U.n * V.n * W.n, U.n * V.n * W.n);
    long legs[kMaxRank];
    for (const auto& [flat, c] : H.B.phi_inv.nonzeros()) {
        H.B.phi_inv.unflatten(flat, legs);
        m = m + U.rho[legs[0]].kron(V.rho[legs[1]].kron(W.rho[legs[2]])).scaled(c);
    }
    return m;
}

Matrix ev_map(const QuasiHopf& H, const HModule& V) {
    // basis of V* x V ordered (functional index, vector index)
    Matrix alpha_act = V.act(H.B, H.alpha.to_vec());
    Matrix m(H.field(), 1, V.n * V.n);
    for (long i = 0; i < V.n; ++i)
        for (long j = 0; j < V.n; ++j) m.at(0, i * V.n + j) = alpha_act.at(i, j);
    return m;
}

Matrix coev_map(const QuasiHopf& H, const HModule& V) {
    Matrix beta_act = V.act(H.B, H.beta.to_vec());
    Matrix m(H.field(), V.n * V.n, 1);
    for (long r = 0; r < V.n; ++r)
        for (long i = 0; i < V.n; ++i) m.at(r * V.n + i, 0) = beta_act.at(r, i);
    return m;
}

Matrix braiding_map(const QuasiHopf& H, const RMatrix& R, const HModule& V,
                    const HModule& W) {
    const long d = H.dim();
    Matrix sum(H.field(), V.n * W.n, V.n * W.n);
    for (const auto& [flat, c] : R.r.nonzeros()) {
        long a = flat / d, b = flat % d;
        sum = sum + V.rho[a].kron(W.rho[b]).scaled(c);
    }
    // flip V x W -> W x V
    Matrix out(H.field(), W.n * V.n, V.n * W.n);
    for (long v = 0; v < V.n; ++v)
        for (long w = 0; w < W.n; ++w)
            for (long col = 0; col < V.n * W.n; ++col) {
                const Scalar& s = sum.at(v * W.n + w, col);
                if (!s.is_zero()) out.at(w * V.n + v, col) = s;
            }
    return out;
}

Report check_duality_maps(const QuasiHopf& H, const HModule& V) {
    Report rep;
    HModule Vd = dual_module(H, V);
    HModule DV = tensor_module(H, Vd, V);   // V* x V
    HModule VD = tensor_module(H, V, Vd);   // V x V*
    Matrix ev = ev_map(H, V);
    Matrix coev = coev_map(H, V);
    {
        bool ok = true;
        std::string wit;
        for (long i = 0; i < H.dim() && ok; ++i) {
            Scalar e = H.B.eps_vec(H.B.mult.basis_vec(i));
            if (ev * DV.rho[i] != ev.scaled(e)) {
                ok = false;
                wit = "ev not H-linear at " + H.B.basis[i] + " on " + V.name;
            }
        }
        rep.add("ev-h-linear", ok, wit);
    }
    {
        bool ok = true;
        std::string wit;
        for (long i = 0; i < H.dim() && ok; ++i) {
            Scalar e = H.B.eps_vec(H.B.mult.basis_vec(i));
            if (VD.rho[i] * coev != coev.scaled(e)) {
                ok = false;
                wit = "coev not H-linear at " + H.B.basis[i] + " on " + V.name;
            }
        }
        rep.add("coev-h-linear", ok, wit);
    }
    return rep;
}

Report check_snake(const QuasiHopf& H, const HModule& V) {
    Report rep;
    HModule Vd = dual_module(H, V);
    Matrix ev = ev_map(H, V);
    Matrix coev = coev_map(H, V);
    Matrix id_v = Matrix::identity(H.field(), V.n);

    // V -> 1xV -> (V x V*) x V -> V x (V* x V) -> V x 1 -> V
    {
        Matrix a = associator(H, V, Vd, V);
        Matrix lhs = id_v.kron(ev) * a * coev.kron(id_v);
        check_mat_equal(rep, "snake-object", lhs, id_v, "module " + V.name);
    }
    // V* -> V* x 1 -> V* x (V x V*) -> (V* x V) x V* -> 1 x V* -> V*
    {
        Matrix a_inv = associator_inv(H, Vd, V, Vd);
        Matrix lhs = ev.kron(id_v) * a_inv * id_v.kron(coev);
        check_mat_equal(rep, "snake-dual", lhs, id_v, "module " + V.name);
    }
    return rep;
}

Report check_braiding_linear(const QuasiHopf& H, const RMatrix& R, const HModule& V,
                             const HModule& W) {
    Report rep;
    Matrix c = braiding_map(H, R, V, W);
    bool ok = is_module_map(H, tensor_module(H, V, W), tensor_module(H, W, V), c);
    rep.add("braiding-h-linear", ok,
            ok ? "" : "braiding not H-linear on " + V.name + " x " + W.name);
    return rep;
}

Report check_hexagons(const QuasiHopf& H, const RMatrix& R, const HModule& U,
                      const HModule& V, const HModule& W) {
    Report rep;
    HModule VW = tensor_module(H, V, W);
    HModule UV = tensor_module(H, U, V);
    std::string ctx = "(" + U.name + ", " + V.name + ", " + W.name + ")";

    // a_{V,W,U} . c_{U,VxW} . a_{U,V,W} = (id_V x c_{U,W}) . a_{V,U,W} . (c_{U,V} x id_W)
    {
        Matrix lhs = associator(H, V, W, U) * braiding_map(H, R, U, VW) *
                     associator(H, U, V, W);
        Matrix rhs = Matrix::identity(H.field(), V.n).kron(braiding_map(H, R, U, W)) *
                     associator(H, V, U, W) *
                     braiding_map(H, R, U, V).kron(Matrix::identity(H.field(), W.n));
        check_mat_equal(rep, "hexagon-split-left", lhs, rhs, ctx);
    }
    // a^{-1}_{W,U,V} . c_{UxV,W} . a^{-1}_{U,V,W}
    //   = (c_{U,W} x id_V) . a^{-1}_{U,W,V} . (id_U x c_{V,W})
    {
        Matrix lhs = associator_inv(H, W, U, V) * braiding_map(H, R, UV, W) *
                     associator_inv(H, U, V, W);
        Matrix rhs = braiding_map(H, R, U, W).kron(Matrix::identity(H.field(), V.n)) *
                     associator_inv(H, U, W, V) *
                     Matrix::identity(H.field(), U.n).kron(braiding_map(H, R, V, W));
        check_mat_equal(rep, "hexagon-split-right", lhs, rhs, ctx);
    }
    return rep;
}

Report check_yang_baxter(const QuasiHopf& H, const RMatrix& R, const HModule& U,
                         const HModule& V, const HModule& W) {
    Report rep;
    Matrix iu = Matrix::identity(H.field(), U.n);
    Matrix iv = Matrix::identity(H.field(), V.n);
    Matrix iw = Matrix::identity(H.field(), W.n);
    std::string ctx = "(" + U.name + ", " + V.name + ", " + W.name + ")";

    // both composites (U x V) x W -> (W x V) x U with all constraints inserted
    Matrix lhs = braiding_map(H, R, V, W).kron(iu) * associator_inv(H, V, W, U) *
                 iv.kron(braiding_map(H, R, U, W)) * associator(H, V, U, W) *
                 braiding_map(H, R, U, V).kron(iw);
    Matrix rhs = associator_inv(H, W, V, U) * iw.kron(braiding_map(H, R, U, V)) *
                 associator(H, W, U, V) * braiding_map(H, R, U, W).kron(iv) *
                 associator_inv(H, U, W, V) * iu.kron(braiding_map(H, R, V, W)) *
                 associator(H, U, V, W);
    check_mat_equal(rep, "yang-baxter", lhs, rhs, ctx);
    return rep;
}

std::vector<Matrix> end_basis(const QuasiHopf& H, const HModule& V) {
    const long n = V.n;
    Matrix sys(H.field(), H.dim() * n * n, n * n);
    for (long i = 0; i < H.dim(); ++i) {
        const Matrix& rho = V.rho[i];
        // (T rho - rho T)[r][c] = sum_a T[r][a] rho[a][c] - rho[r][a] T[a][c]
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) {
                long row = (i * n + r) * n + c;
                for (long a = 0; a < n; ++a) {
                    sys.at(row, r * n + a) += rho.at(a, c);
                    sys.at(row, a * n + c) -= rho.at(r, a);
                }
            }
    }
    std::vector<Matrix> basis;
    for (const auto& v : sys.nullspace()) {
        Matrix T(H.field(), n, n);
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) T.at(r, c) = v[r * n + c];
        basis.push_back(std::move(T));
    }
    return basis;
}

std::pair<Scalar, Scalar> categorical_traces(const QuasiHopf& H, const PivotalCandidate& g,
                                             const HModule& V, const Matrix& f) {
    const auto& M = H.B.mult;
    DVec gv = g.g.to_vec();
    DVec gi = g.g_inv.to_vec();
    DVec left = M.mul(M.mul(gv, H.s_vec(H.beta.to_vec())), H.alpha.to_vec());
    DVec right = M.mul(M.mul(gi, H.beta.to_vec()), H.s_vec(H.alpha.to_vec()));
    Scalar tl = (f * V.act(H.B, left)).trace();
    Scalar tr = (f * V.act(H.B, right)).trace();
    return {tl, tr};
}

std::pair<Scalar, Scalar> categorical_traces_diagrammatic(const QuasiHopf& H,
                                                          const PivotalCandidate& g,
                                                          const HModule& V,
                                                          const Matrix& f) {
    const auto& M = H.B.mult;
    const long n = V.n;
    Matrix ev = ev_map(H, V);
    Matrix coev = coev_map(H, V);
    Matrix id_n = Matrix::identity(H.field(), n);

    // coev'_V : 1 -> V* x V, 1 -> v^i x g S(beta) . v_i
    Matrix gsb = V.act(H.B, M.mul(g.g.to_vec(), H.s_vec(H.beta.to_vec())));
    Matrix coevp(H.field(), n * n, 1);
    for (long i = 0; i < n; ++i)
        for (long r = 0; r < n; ++r) coevp.at(i * n + r, 0) = gsb.at(r, i);

    // ev'_V : V x V* -> 1, v x v* -> v*(S(alpha) g^{-1} . v)
    Matrix sag = V.act(H.B, M.mul(H.s_vec(H.alpha.to_vec()), g.g_inv.to_vec()));
    Matrix evp(H.field(), 1, n * n);
    for (long r = 0; r < n; ++r)
        for (long i = 0; i < n; ++i) evp.at(0, r * n + i) = sag.at(i, r);

    Scalar tl = (ev * id_n.kron(f) * coevp).at(0, 0);
    Scalar tr = (evp * f.kron(id_n) * coev).at(0, 0);
    return {tl, tr};
}

Report check_spherical(const QuasiHopf& H, const PivotalCandidate& g,
                       const std::vector<HModule>& modules) {
    Report rep;
    rep.info("spherical-scope",
             "trace equality quantified over the regular module and the supplied "
             "modules only");
    std::vector<HModule> all;
    all.push_back(regular_module(H));
    for (const auto& m : modules) all.push_back(m);
    for (const auto& V : all) {
        auto basis = end_basis(H, V);
        bool ok = true;
        std::string wit;
        for (size_t k = 0; k < basis.size() && ok; ++k) {
            auto [tl, tr] = categorical_traces(H, g, V, basis[k]);
            if (!(tl == tr)) {
                ok = false;
                std::ostringstream os;
                os << "endomorphism " << k << " of " << V.name << ": tr_l = " << tl.str()
                   << ", tr_r = " << tr.str();
                wit = os.str();
            }
        }
        rep.add("spherical-traces[" + V.name + "]", ok, wit);
    }
    return rep;
}

Report check_twist_action(const QuasiHopf& H, const RMatrix& R, const Tensor& eta,
                          const std::vector<HModule>& modules, RibbonLevel level) {
    Report rep;
    DVec ev = eta.to_vec();
    for (const auto& V : modules) {
        Matrix tv = V.act(H.B, ev);
        std::string tag = "[" + V.name + "]";
        {
            bool ok = tv.rank() == V.n;
            rep.add("twist-invertible" + tag, ok, ok ? "" : "eta acts singularly");
        }
        {
            bool ok = is_module_map(H, V, V, tv);
            rep.add("twist-h-linear" + tag, ok, ok ? "" : "eta action not H-linear");
        }
        {
            bool ok = true;
            std::string wit;
            auto basis = end_basis(H, V);
            for (size_t k = 0; k < basis.size() && ok; ++k) {
                if (tv * basis[k] != basis[k] * tv) {
                    ok = false;
                    wit = "fails against endomorphism " + std::to_string(k);
                }
            }
            rep.add("twist-natural" + tag, ok, wit);
        }
        if (level == RibbonLevel::ribbon) {
            HModule Vd = dual_module(H, V);
            bool ok = Vd.act(H.B, ev) == tv.transpose();
            rep.add("twist-dual-compat" + tag, ok,
                    ok ? "" : "eta on the dual is not the transpose");
        }
    }
    // balancing on all ordered pairs
    for (const auto& V : modules)
        for (const auto& W : modules) {
            HModule VW = tensor_module(H, V, W);
            Matrix lhs = VW.act(H.B, ev);
            Matrix rhs = V.act(H.B, ev).kron(W.act(H.B, ev)) *
                         braiding_map(H, R, W, V) * braiding_map(H, R, V, W);
            bool ok = lhs == rhs;
            rep.add("twist-balancing[" + V.name + "," + W.name + "]", ok,
                    ok ? "" : "eta_{VxW} != (eta_V x eta_W) c_{W,V} c_{V,W}");
        }
    return rep;
}

Report check_theta_square(const HTheta& T, const HModule& V) {
    Report rep;
    const QuasiHopf& H = T.alg;
    Matrix theta_act = V.act(H.B, T.theta.to_vec());
    Matrix w_act = V.act(H.B, T.u_norm.to_vec());
    {
        bool ok = theta_act * theta_act == w_act;
        rep.add("theta-square-element[" + V.name + "]", ok,
                ok ? "" : "theta^2 and u S(u) act differently");
    }
    {
        // twist-square composite: V -> 1xV -> (VxV*)xV -> (V*xV)xV
        //   -> V*x(VxV) -> V*x(VxV) -> (V*xV)xV -> 1xV -> V
        HModule Vd = dual_module(H, V);
        Matrix id_v = Matrix::identity(H.field(), V.n);
        Matrix c_vvd = braiding_map(H, T.r, V, Vd);
        Matrix c_vv_inv = braiding_map(H, T.r, V, V).inverse();
        Matrix composite = ev_map(H, V).kron(id_v) * associator_inv(H, Vd, V, V) *
                           id_v.kron(c_vv_inv) * associator(H, Vd, V, V) *
                           c_vvd.kron(id_v) * coev_map(H, V).kron(id_v);
        check_mat_equal(rep, "theta-square-categorical[" + V.name + "]", composite, w_act,
                        "twist-square composite vs u S(u) action");
    }
    return rep;
}

}  // namespace qh
