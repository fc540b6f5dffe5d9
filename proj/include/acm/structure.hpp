#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "acm/fields.hpp"
#include "acm/report.hpp"

namespace acm {

/// Manifold classes a structure may be declared to belong to. Condition
/// checks are asserted for claimed classes and only reported otherwise.
enum class StructureClass {
    GeneralizedCosymplectic,
    GeneralizedQuasiSasakian,
    FirstClass,
    SecondClass,
    Normal,
};

std::string_view class_name(StructureClass c);
std::optional<StructureClass> class_from_name(std::string_view name);

struct ValidationCertificate {
    std::size_t points = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<std::pair<std::string, double>> max_residuals;  // per axiom
};

/// The quadruple (F, T, A, g) on one chart.
class AlmostContactStructure {
public:
    AlmostContactStructure(std::string name, TensorField f, TensorField t, TensorField a, TensorField g,
                           std::set<StructureClass> claims = {});

    const std::string& name() const { return name_; }
    const Chart& chart() const { return f_.chart(); }
    const std::shared_ptr<const Chart>& chart_ptr() const { return f_.chart_ptr(); }
    std::size_t dimension() const { return f_.dimension(); }

    const TensorField& f() const { return f_; }
    const TensorField& t() const { return t_; }
    const TensorField& a() const { return a_; }
    const TensorField& g() const { return g_; }
    /// 'F composed from F and g.
    const TensorField& fundamental_form() const { return fundamental_; }

    const std::set<StructureClass>& claims() const { return claims_; }
    bool claims(StructureClass c) const { return claims_.count(c) != 0; }

    const std::optional<ValidationCertificate>& validation() const { return validation_; }
    bool validated() const { return validation_.has_value(); }

    AlmostContactStructure with_certificate(ValidationCertificate cert) const;

private:
    std::string name_;
    TensorField f_, t_, a_, g_;
    TensorField fundamental_;
    std::set<StructureClass> claims_;
    std::optional<ValidationCertificate> validation_;
};

/// Axiom residual reports, ordered by check id:
///   AX1  F^2 X + X - A(X) T
///   AX2  A(FX)
///   AX3  'F(X,Y) + 'F(Y,X)
///   AX4  g(FX,FY) - g(X,Y) + A(X)A(Y)
///   AX5  A(T) - 1
///   AX6  F T
///   AX7  A(X) - g(X,T)
/// Points come from Sampler(seed) in the box [-2,2]^n. A point where the
/// metric is singular or a component cannot be evaluated fails every axiom
/// with that point attached.
std::vector<CheckReport> validate_structure(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed,
                                            double tol);

/// Runs validate_structure and, when every axiom passes, returns the structure
/// carrying its certificate. Otherwise returns nullopt.
std::optional<AlmostContactStructure> certify(const AlmostContactStructure& s, std::size_t points,
                                              std::uint64_t seed, double tol,
                                              std::vector<CheckReport>* reports = nullptr);

/// Audit only: max |'F(X,Y) + 2 dA(X,Y)| with dA(X,Y) = (D_X A)(Y) - (D_Y A)(X).
/// The premise residual carries max |dA(X,Y) + 2 'F(X,Y)|.
CheckReport audit_contact_form(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed);

std::vector<std::string> builtin_names();

/// flat-cosymplectic-{3,5} and sasakian-{3,5}, validated at construction
/// (100 points, seed 42, tol 1e-9). Throws LookupError for unknown names.
AlmostContactStructure builtin(std::string_view name);

/// Sasakian-(2m+1) structure without validation; exposed for tests.
AlmostContactStructure make_sasakian(std::size_t m);
AlmostContactStructure make_flat_cosymplectic(std::size_t m);

/// Max |(D_X F)Y - g(X,Y)T + A(Y)X| over sampled frames.
double sasakian_identity_residual(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed);

// Manifold-spec files.
AlmostContactStructure load_spec(const std::filesystem::path& file);
AlmostContactStructure parse_spec(std::string_view text, std::string name = "spec");
std::string save_spec(const AlmostContactStructure& s);

}  // namespace acm
