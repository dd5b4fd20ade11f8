#pragma once

#include "qh/algebra.hpp"

namespace qh {

/// gamma, delta and the Drinfeld twist f with its inverse. Invariants
/// (checked at construction): f f^{-1} = f^{-1} f = 1x1 and the counit
/// normalization of f.
struct GaugeData {
    Tensor gamma, delta;  // rank 2
    Tensor f, f_inv;      // rank 2
};

/// A verified R-matrix: R, its inverse, and whether R_21 R = 1x1.
struct RMatrix {
    Tensor r, r_inv;  // rank 2
    bool triangular = false;
};

/// The canonical element u with its inverse. Invariants (checked):
/// u u^{-1} = 1, u S(u) = S(u) u, u S(u) central.
struct UElement {
    Tensor u, u_inv;  // rank 1
};

/// Evaluates both displayed expressions for gamma and for delta and
/// asserts exact agreement (a built-in cross-check); throws
/// InternalIdentityFailure when they disagree.
std::pair<Tensor, Tensor> compute_gamma_delta(const QuasiHopf& H);

/// Builds f and f^{-1} from their closed formulas and verifies:
/// invertibility, counit normalization, that conjugation by f turns
/// Delta(S(h)) into (SxS)(Delta^cop(h)) on every basis element, and the
/// compatibilities f Delta(alpha) = gamma, Delta(beta) f^{-1} = delta.
/// Throws InternalIdentityFailure on any failure.
GaugeData compute_drinfeld_twist(const QuasiHopf& H);

/// Report-returning variant of the twist verification (used by the CLI).
Report check_drinfeld_twist(const QuasiHopf& H, GaugeData* out = nullptr);

/// The reassociator compatibility of f^{-1} in H^{otimes 3} plus the two
/// antipode identities f^1 beta S(f^2) = S(alpha), S(g^1) alpha g^2 = S(beta).
Report verify_s_morphism_identities(const QuasiHopf& H, const GaugeData& G);

/// Quasitriangularity: invertibility of R, both coproduct formulas with the
/// reassociator-permuted legs, and the intertwining law; sets the
/// triangular flag iff R_21 R = 1x1.
Report check_qt(const QuasiBialgebra& H, const Tensor& r, RMatrix* out = nullptr);

/// Throwing variant: NotAnRMatrix with the first failed identity.
RMatrix verify_qt(const QuasiBialgebra& H, const Tensor& r);

/// R~ = (R_21)^{-1}, a candidate second R-matrix. Callers must re-verify it
/// through verify_qt; nothing is assumed here.
Tensor flipped_inverse_candidate(const QuasiBialgebra& H, const RMatrix& R);

/// u = S(R^2 x^2 beta S(x^3)) alpha R^1 x^1 together with its inverse,
/// verifying that conjugation by u implements S^2, the two alpha/beta
/// relations against R, both coproduct identities (which need the Drinfeld
/// twist), and that u S(u) = S(u) u is central.
Report check_u_identities(const QuasiHopf& H, const RMatrix& R, const GaugeData& G,
                          UElement* out = nullptr);

UElement compute_u(const QuasiHopf& H, const RMatrix& R, const GaugeData& G);

/// The H^{otimes 3} identity certifying that the Laurent extension
/// H[theta, theta^{-1}] with Delta(theta^+-) = (R_21 R)^-+ (theta^+- x theta^+-)
/// is quasi-coassociative, checked without materializing the extension.
Report verify_balanced_extension(const QuasiBialgebra& H, const RMatrix& R);

}  // namespace qh
