#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qh/modules.hpp"

namespace qh {

/// On-disk algebra: structure constants with exact rational coefficients,
/// an optional R-matrix candidate and optional named modules. The loader
/// re-derives phi_inv when absent (and always verifies it two-sided).
struct AlgebraFile {
    std::string name;
    QuasiHopf H;
    std::optional<Tensor> r;  // unverified candidate; commands run check_qt
    std::vector<std::pair<std::string, HModule>> modules;
};

AlgebraFile parse_algebra(const std::string& text);  // throws FormatError
AlgebraFile load_algebra(const std::string& path);
std::string serialize_algebra(const AlgebraFile& a);  // canonical, idempotent
void save_algebra(const AlgebraFile& a, const std::string& path);

/// FNV-1a 64-bit content digest, lowercase hex.
std::string digest_hex(const std::string& bytes);

/// Scalar vector in the file encoding, e.g. for --candidate/--eta flags:
/// [{"num":[...],"den":k}, ...] of length dim.
DVec parse_scalar_vector(const FieldPtr& f, long dim, const std::string& text);

enum class VerifyLevel { bialgebra, hopf, qt, ribbon };

VerifyLevel parse_level(const std::string& s);  // throws FormatError

/// Everything a command run produces; rendered deterministically.
struct ToolReport {
    std::string command;
    std::string input;
    std::string input_digest;
    std::string level;
    Report checks;
    std::vector<std::pair<std::string, std::string>> extras;  // ordered key/value
    bool ok() const { return checks.ok(); }
};

std::string render_text(const ToolReport& r);
std::string render_json(const ToolReport& r);

/// The cumulative verification pipeline behind `verify` (and reused on
/// ribbonize output): axioms, then the gauge suite, then quasitriangularity,
/// then the u-element, balanced-extension and ribbon-element layers.
/// A missing R-matrix at qt level or above throws FormatError. When no eta
/// is supplied at ribbon level, candidates are derived from the center and
/// from u and the pivotal elements, then individually verified.
Report run_verify_suite(const AlgebraFile& a, VerifyLevel level,
                        const std::optional<DVec>& eta);

inline const char* kToolName = "qhtool";
inline const char* kToolVersion = "0.1.0";

}  // namespace qh
