#pragma once

#include "qh/gauge.hpp"

namespace qh {

/// Invertible element implementing S^2 by conjugation and compatible with
/// the coproduct through the Drinfeld twist.
struct PivotalCandidate {
    Tensor g, g_inv;  // rank 1
};

/// Invertible central element; balanced when Delta(eta) = (eta x eta) R_21 R,
/// ribbon when additionally S(eta) = eta.
struct RibbonCandidate {
    Tensor eta, eta_inv;  // rank 1
};

/// Left integral t with counit 1 plus the auxiliary elements p_R, q_R used
/// by the integral-based pivotal element.
struct IntegralData {
    Tensor t;         // rank 1
    Tensor p_r, q_r;  // rank 2
};

enum class RibbonLevel { balanced, ribbon };

/// Checks: invertibility of the candidate, counit normalization, the
/// conjugation law for S^2, the coproduct law through the twist, and the
/// consequence g^{-1} = S(g).
Report verify_sovereign(const QuasiHopf& H, const GaugeData& G, const Tensor& g);

/// Exact nullspace of the conjugation law h g = g S^2(h), candidates
/// normalized to counit 1 and filtered by the coproduct law. Throws
/// NoSolution (carrying the nullspace dimension) when nothing survives.
/// `incomplete` is set when the solution space has dimension > 1, in which
/// case enumeration over a nullspace basis can miss quadratic solutions.
std::vector<PivotalCandidate> solve_pivotal(const QuasiHopf& H, const GaugeData& G,
                                            long* space_dim = nullptr,
                                            bool* incomplete = nullptr);

/// S^2(h) = S(beta) alpha h beta S(alpha) on every basis element; on
/// success additionally: alpha and beta invertible, the inverse pairing
/// (beta S(alpha))^{-1} = S(beta) alpha, the full sovereign suite for
/// g = beta S(alpha), and the coproduct identity for S(beta) alpha.
Report verify_involutory(const QuasiHopf& H, const GaugeData& G);

/// Solves h t = eps(h) t exactly and normalizes eps(t) = 1; throws
/// NotSemisimple when the counit vanishes on the whole integral space.
IntegralData find_integral(const QuasiHopf& H);

/// The integral-based pivotal element g = q^2 t_2 p^2 S(q^1 t_1 p^1),
/// verified sovereign before being returned. Throws NotSemisimple or
/// InternalIdentityFailure.
PivotalCandidate pivotal_from_integral(const QuasiHopf& H, const GaugeData& G);

Report verify_ribbon_element(const QuasiHopf& H, const RMatrix& R, const Tensor& eta,
                             RibbonLevel level);

}  // namespace qh
