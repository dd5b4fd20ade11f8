#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qh/report.hpp"
#include "qh/tensor.hpp"

namespace qh {

/// Structure constants of a quasi-bialgebra (H, Delta, epsilon, Phi).
struct QuasiBialgebra {
    FieldPtr field;
    long dim = 0;
    std::vector<std::string> basis;  // labels, size dim
    MultTable mult;                  // includes the unit
    LinearMap counit;                // rank 1 -> 0
    LinearMap comult;                // rank 1 -> 2
    Tensor phi, phi_inv;             // rank 3

    Tensor unit1() const { return unit_tensor(mult, 1); }
    Tensor unit2() const { return unit_tensor(mult, 2); }
    Tensor unit3() const { return unit_tensor(mult, 3); }
    Tensor basis1(long i) const;

    Scalar eps_vec(const DVec& v) const;
    Tensor delta_vec(const DVec& v) const;  // rank 2
};

/// Quasi-Hopf layer: antipode S, distinguished elements alpha, beta.
struct QuasiHopf {
    QuasiBialgebra B;
    LinearMap antipode;  // rank 1 -> 1
    Tensor alpha, beta;  // rank 1
    std::optional<LinearMap> antipode_inv;

    const FieldPtr& field() const { return B.field; }
    long dim() const { return B.dim; }

    DVec s_vec(const DVec& v) const { return antipode.apply_vec(v); }
    /// Computes and caches nothing; returns S^{-1} as a map or throws
    /// NotInvertible when the antipode matrix is singular.
    LinearMap antipode_inverse() const;
};

/// Exact elementwise verification of the quasi-bialgebra axioms:
/// associativity and unit, Delta/epsilon algebra morphisms, counit laws,
/// quasi-coassociativity, the pentagon identity for Phi, the counit
/// normalization of Phi, and invertibility of Phi. Never throws on
/// mathematical failure; every identity gets a report entry.
Report verify_quasi_bialgebra(const QuasiBialgebra& H);

/// Antipode layer: anti-multiplicativity, S(1) = 1, the alpha/beta
/// cancellation laws, both zig-zag identities, and (advisory) whether S is
/// bijective.
Report verify_quasi_hopf(const QuasiHopf& H);

/// The same algebra with opposite multiplication and co-opposite
/// comultiplication; reassociator legs reversed, alpha and beta exchanged.
QuasiHopf op_cop(const QuasiHopf& H);

/// Rendering of a tensor mismatch for report witnesses.
std::string diff_witness(const Tensor& lhs, const Tensor& rhs, const std::string& label);

}  // namespace qh
