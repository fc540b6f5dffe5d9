#pragma once

// Covariant almost analytic 1-forms under D and B.

#include <cstdint>
#include <string>

#include "acm/connections.hpp"

namespace acm {

struct OneFormField {
    TensorField form;        // valence (0,1)
    std::string provenance;  // "user-spec", "structure-form" or "fuzzed(<seed>)"
};

/// Polynomial form of degree <= 2 in every component, coefficients in [-1, 1]
/// drawn from Sampler(seed).
OneFormField fuzz_one_form(const std::shared_ptr<const Chart>& chart, std::uint64_t seed);

/// w = A.
OneFormField structure_form(const AlmostContactStructure& s);

/// A 1-form's value and both covariant derivatives at a LocalGeometry's point.
class FormAt {
public:
    FormAt(const OneFormField& w, const LocalGeometry& geo);

    double w(const Vector& x) const { return values_.dot(x); }
    double d(const Vector& x, const Vector& y) const;  // (D_X w)(Y)
    double b(const Vector& x, const Vector& y) const;  // (B_X w)(Y)

private:
    Vector values_;
    CovariantDerivative d_, b_;
};

/// w((D_X F)Y - (D_Y F)X) - (D_{FX} w)(Y) + (D_X w)(FY).
double caa_residual_D(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y);
/// Same with B in place of D.
double caa_residual_B(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y);
/// Closed form of caa_residual_B - caa_residual_D: -2 w(T) g(FX, FY).
double caa_gap(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y);
/// (caa_B - caa_D) + 2 w(T) g(FX, FY); vanishes on every almost contact metric structure.
double res_theorem_3_1(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y);

struct DAForms {
    double d_a;        // (D_X A)(Y) - (D_Y A)(X)
    double d_tilde_a;  // (B_X A)(Y) - (B_Y A)(X)
    double residual;   // d_tilde_a - d_a - 2 g(X, FY)
};
DAForms dA_forms(const LocalGeometry& geo, const Vector& x, const Vector& y);

// Point-level conveniences.
double caa_residual_D(const AlmostContactStructure& s, const OneFormField& w, const Vector& x, const Vector& y,
                      std::span<const double> point);
double caa_residual_B(const AlmostContactStructure& s, const OneFormField& w, const Vector& x, const Vector& y,
                      std::span<const double> point);
double res_theorem_3_1(const AlmostContactStructure& s, const OneFormField& w, const Vector& x, const Vector& y,
                       std::span<const double> point);
DAForms dA_forms(const AlmostContactStructure& s, const Vector& x, const Vector& y, std::span<const double> point);

}  // namespace acm
