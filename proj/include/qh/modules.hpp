#pragma once

#include "qh/htheta.hpp"

namespace qh {

/// Finite-dimensional left H-module: one action matrix per algebra basis
/// element. rho must be a unital algebra morphism (check_module).
struct HModule {
    std::string name;
    long n = 0;
    std::vector<Matrix> rho;  // size dim(H), each n x n

    Matrix act(const QuasiBialgebra& H, const DVec& a) const;  // rho(a)
};

Report check_module(const QuasiHopf& H, const HModule& V);

HModule trivial_module(const QuasiHopf& H);
HModule regular_module(const QuasiHopf& H);
HModule tensor_module(const QuasiHopf& H, const HModule& V, const HModule& W);
HModule dual_module(const QuasiHopf& H, const HModule& V);

/// True when T intertwines the actions: T rho_V(e_i) = rho_W(e_i) T.
bool is_module_map(const QuasiHopf& H, const HModule& V, const HModule& W, const Matrix& T);

/// Associativity constraint ((U x V) x W -> U x (V x W)) as the action of
/// the reassociator; its inverse uses the stored Phi^{-1}.
Matrix associator(const QuasiHopf& H, const HModule& U, const HModule& V, const HModule& W);
Matrix associator_inv(const QuasiHopf& H, const HModule& U, const HModule& V,
                      const HModule& W);

/// ev: V* x V -> k, v* x v -> v*(alpha . v)   (1 x n^2)
/// coev: k -> V x V*, 1 -> beta v_i x v^i     (n^2 x 1)
Matrix ev_map(const QuasiHopf& H, const HModule& V);
Matrix coev_map(const QuasiHopf& H, const HModule& V);

/// Braiding c_{V,W}: V x W -> W x V, v x w -> R^2 w x R^1 v.
Matrix braiding_map(const QuasiHopf& H, const RMatrix& R, const HModule& V,
                    const HModule& W);

/// Both rigidity composites, built with the explicit associativity and unit
/// constraints, must equal the identity of V and of V*.
Report check_snake(const QuasiHopf& H, const HModule& V);

/// H-linearity of ev and coev.
Report check_duality_maps(const QuasiHopf& H, const HModule& V);

/// H-linearity of the braiding on V x W.
Report check_braiding_linear(const QuasiHopf& H, const RMatrix& R, const HModule& V,
                             const HModule& W);

/// Both hexagon identities with explicit associators on (U, V, W).
Report check_hexagons(const QuasiHopf& H, const RMatrix& R, const HModule& U,
                      const HModule& V, const HModule& W);

/// The Yang-Baxter composite with explicit associators on (U, V, W).
Report check_yang_baxter(const QuasiHopf& H, const RMatrix& R, const HModule& U,
                         const HModule& V, const HModule& W);

/// Exact basis of End_H(V), the commutant of the action.
std::vector<Matrix> end_basis(const QuasiHopf& H, const HModule& V);

/// Left and right categorical traces of f in End_H(V) through the sovereign
/// element g: closed element formulas.
std::pair<Scalar, Scalar> categorical_traces(const QuasiHopf& H, const PivotalCandidate& g,
                                             const HModule& V, const Matrix& f);

/// The same traces evaluated as diagram composites from ev, coev and the
/// g-twisted right duality maps.
std::pair<Scalar, Scalar> categorical_traces_diagrammatic(const QuasiHopf& H,
                                                          const PivotalCandidate& g,
                                                          const HModule& V, const Matrix& f);

/// tr_l(f) = tr_r(f) for every f in an End_H basis of the regular module
/// and of every supplied module; the scope restriction is recorded as an
/// advisory entry.
Report check_spherical(const QuasiHopf& H, const PivotalCandidate& g,
                       const std::vector<HModule>& modules);

/// eta_V(v) = eta . v: invertibility and H-linearity per module, naturality
/// against the End_H bases, the balancing law on all pairs, and at ribbon
/// level compatibility with duals.
Report check_twist_action(const QuasiHopf& H, const RMatrix& R, const Tensor& eta,
                          const std::vector<HModule>& modules, RibbonLevel level);

/// For V over an H(theta) extension: the action of theta^2 equals the
/// action of u S(u), and the categorical twist-square composite (built from
/// ev, coev and the braiding, with explicit constraints) equals the u S(u)
/// action as well.
Report check_theta_square(const HTheta& T, const HModule& V);

}  // namespace qh
