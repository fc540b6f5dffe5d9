#pragma once

// Residuals of the classification conditions and the theorem registry.
//
// Every residual below is signed (left side minus right side); reports take
// absolute values. Frame vectors X, Y, Z are constant at the sample point.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acm/connections.hpp"
#include "acm/report.hpp"

namespace acm {

/// (D_X 'F)(Y,Z) - A(Y)(D_X A)(FZ) + A(Z)(D_X A)(FY).
double res_gen_cosymplectic(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);

/// Cyclic sum of (D 'F) minus the six A-weighted (D A) terms.
double res_gen_quasi_sasakian(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);

/// 'N(X,Y,Z) = (D_FX 'F)(Y,Z) - (D_FY 'F)(X,Z) + (D_X 'F)(Y,FZ) - (D_Y 'F)(X,FZ),
/// with D'F from the composed 'F field.
double nijenhuis(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);
/// Same tensor with (D_X 'F)(Y,Z) taken as g((D_X F)Y, Z).
double nijenhuis_via_f(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);

/// d'F(X,Y,Z) = (D_X 'F)(Y,Z) + (D_Y 'F)(Z,X) + (D_Z 'F)(X,Y), no normalization factor.
double d_primeF(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);

/// Normality of a quasi-Sasakian structure:
/// (D_X 'F)(Y,Z) - A(Y)(D_Z A)(FX) - A(Z)(D_FX A)(Y).
double res_normal(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);
/// The same condition written with B:
/// (B_X 'F)(Y,Z) - A(Y)[(B_Z A)(FX) + g(X,Z)] - A(Z)[(B_FX A)(Y) - g(X,Y)].
double res_normal_b(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);
/// Generalized co-symplectic condition written with B:
/// (B_X 'F)(Y,Z) - A(Y)[(B_X A)(FZ) + g(X,Z)] + A(Z)[(B_X A)(FY) + g(X,Y)].
double res_gen_cosymplectic_b(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);

/// First class: (D_X A)(FY) = -(D_FX A)(Y) = (D_Y A)(FX) and D_T F = 0.
/// Returns the largest violation of the chain at this frame.
double res_first_class(const LocalGeometry& geo, const Vector& x, const Vector& y);
/// Second class: (D_X A)(FY) = (D_FX A)(Y) = -(D_Y A)(FX) and D_T F = 0.
double res_second_class(const LocalGeometry& geo, const Vector& x, const Vector& y);

struct Classification {
    bool first_class = false;
    bool second_class = false;
    double first_residual = 0.0;
    double second_residual = 0.0;
    std::size_t points = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;

    /// "first-class", "second-class", "both" or "neither".
    std::string label() const;
};

/// Throws ContractError for an unvalidated structure unless `allow_unvalidated`.
Classification classify_T(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed, double tol,
                          bool allow_unvalidated = false);

struct TheoremCheck {
    std::string id;
    CheckMode mode;
    std::string location;
    std::string description;
};

/// All checks in registry order (the order reports are emitted in).
const std::vector<TheoremCheck>& registry();
/// nullptr when unknown.
const TheoremCheck* find_check(std::string_view id);

/// Number of fuzzed test forms used by T3.1 (the structure form A is added on top).
inline constexpr std::size_t kFuzzedForms = 10;

/// Runs one check. Throws ContractError for an unvalidated structure unless
/// `allow_unvalidated`, in which case the description carries a banner.
CheckReport run_check(const AlmostContactStructure& s, const TheoremCheck& check, std::size_t points,
                      std::uint64_t seed, double tol, bool allow_unvalidated = false);
/// Throws LookupError for an unknown id.
CheckReport run_check(const AlmostContactStructure& s, std::string_view id, std::size_t points, std::uint64_t seed,
                      double tol, bool allow_unvalidated = false);

}  // namespace acm
