#include "acm/identities.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

#include "acm/analytic.hpp"
#include "acm/error.hpp"

namespace acm {

// ---------------------------------------------------------------------------
// Residual evaluators

double res_gen_cosymplectic(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    return geo.d_pf(x, y, z) - geo.a(y) * geo.d_a(x, geo.bar(z)) + geo.a(z) * geo.d_a(x, geo.bar(y));
}

double res_gen_quasi_sasakian(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    const Vector xb = geo.bar(x), yb = geo.bar(y), zb = geo.bar(z);
    const double lhs = d_primeF(geo, x, y, z);
    const double rhs = geo.a(x) * (geo.d_a(y, zb) - geo.d_a(z, yb)) + geo.a(y) * (geo.d_a(z, xb) - geo.d_a(x, zb)) +
                       geo.a(z) * (geo.d_a(x, yb) - geo.d_a(y, xb));
    return lhs - rhs;
}

namespace {

template <class DerivativeOfFprime>
double nijenhuis_with(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z,
                      DerivativeOfFprime dpf) {
    const Vector xb = geo.bar(x), yb = geo.bar(y), zb = geo.bar(z);
    return dpf(xb, y, z) - dpf(yb, x, z) + dpf(x, y, zb) - dpf(y, x, zb);
}

}  // namespace

double nijenhuis(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    return nijenhuis_with(geo, x, y, z,
                          [&](const Vector& a, const Vector& b, const Vector& c) { return geo.d_pf(a, b, c); });
}

double nijenhuis_via_f(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    return nijenhuis_with(geo, x, y, z,
                          [&](const Vector& a, const Vector& b, const Vector& c) { return geo.d_pf_via_f(a, b, c); });
}

double d_primeF(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    return geo.d_pf(x, y, z) + geo.d_pf(y, z, x) + geo.d_pf(z, x, y);
}

double res_normal(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    const Vector xb = geo.bar(x);
    return geo.d_pf(x, y, z) - geo.a(y) * geo.d_a(z, xb) - geo.a(z) * geo.d_a(xb, y);
}

double res_normal_b(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    const Vector xb = geo.bar(x);
    return geo.b_pf(x, y, z) - geo.a(y) * (geo.b_a(z, xb) + geo.g(x, z)) -
           geo.a(z) * (geo.b_a(xb, y) - geo.g(x, y));
}

double res_gen_cosymplectic_b(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
    return geo.b_pf(x, y, z) - geo.a(y) * (geo.b_a(x, geo.bar(z)) + geo.g(x, z)) +
           geo.a(z) * (geo.b_a(x, geo.bar(y)) + geo.g(x, y));
}

namespace {

double max_abs(std::initializer_list<double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double max_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

double res_first_class(const LocalGeometry& geo, const Vector& x, const Vector& y) {
    const double head = geo.d_a(x, geo.bar(y));
    return max_abs({head + geo.d_a(geo.bar(x), y), head - geo.d_a(y, geo.bar(x)),
                    max_entry(geo.d_f(geo.structure_vector()))});
}

double res_second_class(const LocalGeometry& geo, const Vector& x, const Vector& y) {
    const double head = geo.d_a(x, geo.bar(y));
    return max_abs({head - geo.d_a(geo.bar(x), y), head + geo.d_a(y, geo.bar(x)),
                    max_entry(geo.d_f(geo.structure_vector()))});
}

std::string Classification::label() const {
    if (first_class && second_class) return "both";
    if (first_class) return "first-class";
    if (second_class) return "second-class";
    return "neither";
}

namespace {

void require_validated(const AlmostContactStructure& s, bool allow_unvalidated) {
    if (!s.validated() && !allow_unvalidated) throw ContractError("structure not validated");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Classification classify_T(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed, double tol,
                          bool allow_unvalidated) {
    require_validated(s, allow_unvalidated);
    if (points < 1) throw ContractError("classification needs at least one point");
    ResidualTracker first, second;
    Sampler sampler(seed);
    for (std::size_t j = 0; j < points; ++j) {
        const PointFrame fr = sampler.frame(s.dimension(), j);
        try {
            const LocalGeometry geo(s, fr.point);
            first.add(res_first_class(geo, fr.x, fr.y), fr.point);
            second.add(res_second_class(geo, fr.x, fr.y), fr.point);
        } catch (const Error&) {
            first.add(kInf, fr.point);
            second.add(kInf, fr.point);
        }
    }
    Classification c;
    c.first_residual = first.max();
    c.second_residual = second.max();
    c.first_class = c.first_residual <= tol;
    c.second_class = c.second_residual <= tol;
    c.points = points;
    c.seed = seed;
    c.tolerance = tol;
    return c;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

struct Sample {
    double conclusion = 0.0;
    std::optional<double> premise;
};

struct CheckContext {
    const AlmostContactStructure& structure;
    std::vector<OneFormField> forms;  // filled for checks that need test forms
};

using SampleFn = std::function<Sample(const CheckContext&, const LocalGeometry&, const PointFrame&)>;

enum class Condition { None, Claim, FirstClass, CosymplecticPremise };

struct CheckImpl {
    TheoremCheck meta;
    SampleFn sample;
    Condition condition = Condition::None;
    StructureClass claim = StructureClass::GeneralizedCosymplectic;
    bool needs_forms = false;
};

Sample only(double v) { return {v, std::nullopt}; }

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

const std::vector<CheckImpl>& impls() {
    using M = CheckMode;
    using G = const LocalGeometry&;
    using C = const CheckContext&;
    using P = const PointFrame&;
    static const std::vector<CheckImpl> table = [] {
        std::vector<CheckImpl> t;
        auto add = [&](std::string id, M mode, std::string loc, std::string desc, SampleFn fn) -> CheckImpl& {
            t.push_back(CheckImpl{TheoremCheck{std::move(id), mode, std::move(loc), std::move(desc)}, std::move(fn)});
            return t.back();
        };
        auto claim = [](CheckImpl& c, StructureClass cls) {
            c.condition = Condition::Claim;
            c.claim = cls;
        };

        claim(add("E5", M::AssertConditional, "§1 Eq. 5",
                  "generalized co-symplectic: (D_X 'F)(Y,Z) = A(Y)(D_X A)(FZ) - A(Z)(D_X A)(FY)",
                  [](C, G g, P f) { return only(res_gen_cosymplectic(g, f.x, f.y, f.z)); }),
              StructureClass::GeneralizedCosymplectic);
        claim(add("E6", M::AssertConditional, "§1 Eq. 6",
                  "generalized quasi-Sasakian: cyclic (D 'F) sum against the A-weighted (D A) terms",
                  [](C, G g, P f) { return only(res_gen_quasi_sasakian(g, f.x, f.y, f.z)); }),
              StructureClass::GeneralizedQuasiSasakian);
        add("E7", M::Assert, "§1 Eq. 7",
            "Nijenhuis 'N: D'F route vs g((DF)Y,Z) route, and 'N(X,Y,Z) = -'N(Y,X,Z)", [](C, G g, P f) {
                const double n1 = nijenhuis(g, f.x, f.y, f.z);
                return only(max_abs({n1 - nijenhuis_via_f(g, f.x, f.y, f.z), n1 + nijenhuis(g, f.y, f.x, f.z)}));
            });
        claim(add("E8", M::AssertConditional, "§1 Eq. 8",
                  "first class: (D_X A)(FY) = -(D_FX A)(Y) = (D_Y A)(FX), D_T F = 0",
                  [](C, G g, P f) { return only(res_first_class(g, f.x, f.y)); }),
              StructureClass::FirstClass);
        claim(add("E9", M::AssertConditional, "§1 Eq. 9",
                  "second class: (D_X A)(FY) = (D_FX A)(Y) = -(D_Y A)(FX), D_T F = 0",
                  [](C, G g, P f) { return only(res_second_class(g, f.x, f.y)); }),
              StructureClass::SecondClass);
        add("E11", M::Assert, "§2 Eq. 11", "torsion of B from coefficients equals 2'F(X,Y)T",
            [](C, G g, P f) {
                return only(inf_norm(g.torsion(f.x, f.y) - 2.0 * g.fprime(f.x, f.y) * g.structure_vector()));
            });
        add("E12", M::Assert, "§2 Eq. 12", "(B_X g)(Y,Z) = -A(Y)'F(X,Z) - A(Z)'F(X,Y)", [](C, G g, P f) {
            return only(g.b_g(f.x, f.y, f.z) + g.a(f.y) * g.fprime(f.x, f.z) + g.a(f.z) * g.fprime(f.x, f.y));
        });
        add("E13", M::Assert, "§2 Eq. 13", "g(S(X,Y),Z) = 2A(Z)'F(X,Y)", [](C, G g, P f) {
            return only(g.torsion3(f.x, f.y, f.z) - 2.0 * g.a(f.z) * g.fprime(f.x, f.y));
        });
        add("E14", M::Assert, "§2 Eq. 14", "(B_X F)(Y) = (D_X F)(Y) + g(FX,FY)T", [](C, G g, P f) {
            const Vector rhs = g.d_f(f.x, f.y) + g.g(g.bar(f.x), g.bar(f.y)) * g.structure_vector();
            return only(inf_norm(g.b_f(f.x, f.y) - rhs));
        });
        add("E15", M::Assert, "§2 Eq. 15", "(B_X A)(Y) = (D_X A)(Y) - g(FX,Y)", [](C, G g, P f) {
            return only(g.b_a(f.x, f.y) - g.d_a(f.x, f.y) + g.g(g.bar(f.x), f.y));
        });
        add("E22", M::Assert, "§2 Eq. 22", "(D_X 'F)(Y,Z) = (B_X 'F)(Y,Z)",
            [](C, G g, P f) { return only(g.d_pf(f.x, f.y, f.z) - g.b_pf(f.x, f.y, f.z)); });
        claim(add("E25", M::AssertConditional, "§2 Eq. 25",
                  "normal: (D_X 'F)(Y,Z) = A(Y)(D_Z A)(FX) + A(Z)(D_FX A)(Y)",
                  [](C, G g, P f) { return only(res_normal(g, f.x, f.y, f.z)); }),
              StructureClass::Normal);
        claim(add("E26", M::AssertConditional, "§2 Eq. 26",
                  "generalized co-symplectic in B form: (B_X 'F)(Y,Z) = A(Y)[(B_X A)(FZ) + g(X,Z)] - "
                  "A(Z)[(B_X A)(FY) + g(X,Y)]",
                  [](C, G g, P f) { return only(res_gen_cosymplectic_b(g, f.x, f.y, f.z)); }),
              StructureClass::GeneralizedCosymplectic);
        add("E40", M::Assert, "§3 Eq. 40", "dA(X,Y) computed with B equals dA with D plus 2g(X,FY)",
            [](C, G g, P f) { return only(dA_forms(g, f.x, f.y).residual); });
        add("T2.1", M::Assert, "§2 Theorem 2.1", "torsion (0,3) form is hybrid: S(FX,FY,Z) = S(X,Y,Z)",
            [](C, G g, P f) {
                return only(g.torsion3(g.bar(f.x), g.bar(f.y), f.z) - g.torsion3(f.x, f.y, f.z));
            });
        add("T2.2", M::AssertConditional, "§2 Theorem 2.2",
            "first class under B: (B_X A)(FY) = -(B_FX A)(Y) = (B_Y A)(FX) and B_T F = 0",
            [](C, G g, P f) {
                const double head = g.b_a(f.x, g.bar(f.y));
                return only(max_abs({head + g.b_a(g.bar(f.x), f.y), head - g.b_a(f.y, g.bar(f.x)),
                                     max_entry(g.b_f(g.structure_vector()))}));
            })
            .condition = Condition::FirstClass;
        add("T2.3", M::Audit, "§2 Theorem 2.3",
            "premise: cyclic (B 'F) sum = 0; conclusion: generalized quasi-Sasakian residual", [](C, G g, P f) {
                const double cyc = g.b_pf(f.x, f.y, f.z) + g.b_pf(f.y, f.z, f.x) + g.b_pf(f.z, f.x, f.y);
                return Sample{res_gen_quasi_sasakian(g, f.x, f.y, f.z), cyc};
            });
        add("T2.4", M::AssertEquivalence, "§2 Theorem 2.4",
            "normality residual with D equals its B form frame-wise (A(Z) bracket carries -g(X,Y))",
            [](C, G g, P f) { return only(res_normal(g, f.x, f.y, f.z) - res_normal_b(g, f.x, f.y, f.z)); });
        add("T2.5", M::AssertEquivalence, "§2 Theorem 2.5",
            "generalized co-symplectic residual with D equals its B form frame-wise", [](C, G g, P f) {
                return only(res_gen_cosymplectic(g, f.x, f.y, f.z) - res_gen_cosymplectic_b(g, f.x, f.y, f.z));
            });
        add("T2.6", M::Audit, "§2 Theorem 2.6",
            "premise: (B_X 'F)(Y,Z) + (B_Y 'F)(X,Z) = 0; conclusion: (B_X A)(FZ) + g(X,Z) = 0", [](C, G g, P f) {
                return Sample{g.b_a(f.x, g.bar(f.z)) + g.g(f.x, f.z), g.b_pf(f.x, f.y, f.z) + g.b_pf(f.y, f.x, f.z)};
            });
        add("T2.7", M::Audit, "§2 Theorem 2.7",
            "U read as T; premise: (D_X A)(Y) + (D_Y A)(X) = 0; conclusion: 'N(X,Y,Z) - d'F(X,Y,FZ) = "
            "2A(Z)(B_FY A)(FX)",
            [](C, G g, P f) {
                const double lhs = nijenhuis(g, f.x, f.y, f.z) - d_primeF(g, f.x, f.y, g.bar(f.z));
                const double rhs = 2.0 * g.a(f.z) * g.b_a(g.bar(f.y), g.bar(f.x));
                return Sample{lhs - rhs, g.d_a(f.x, f.y) + g.d_a(f.y, f.x)};
            });
        add("C2.1", M::Audit, "§2 Corollary 2.1", "premise: d'F = 0; conclusion: 'N(X,Y,FZ) = 0",
            [](C, G g, P f) {
                return Sample{nijenhuis(g, f.x, f.y, g.bar(f.z)), d_primeF(g, f.x, f.y, f.z)};
            });
        add("T2.8", M::AssertConditional, "§2 Theorem 2.8",
            "premise: (B_X 'F)(Y,T) = (B_Y 'F)(X,T) on a generalized co-symplectic structure; conclusion: d'F = 0",
            [](C, G g, P f) {
                const Vector& t = g.structure_vector();
                const double premise = std::max(std::abs(g.b_pf(f.x, f.y, t) - g.b_pf(f.y, f.x, t)),
                                                std::abs(res_gen_cosymplectic(g, f.x, f.y, f.z)));
                return Sample{d_primeF(g, f.x, f.y, f.z), premise};
            })
            .condition = Condition::CosymplecticPremise;
        add("T3.1", M::Assert, "§3 Theorem 3.1",
            "caa_B(w) - caa_D(w) = -2 w(T) g(FX,FY) for w = A and 10 fuzzed forms (rho read as T)",
            [](C ctx, G g, P f) {
                double worst = 0.0;
                for (const auto& w : ctx.forms) worst = std::max(worst, std::abs(res_theorem_3_1(g, FormAt(w, g), f.x, f.y)));
                return only(worst);
            })
            .needs_forms = true;
        add("T3.2", M::Assert, "§3 Theorem 3.2",
            "dA with B = dA with D + 2g(X,FY), checked without the analyticity premise (premise column: "
            "caa_D(A))",
            [](C ctx, G g, P f) {
                const double premise = caa_residual_D(g, FormAt(structure_form(ctx.structure), g), f.x, f.y);
                return Sample{dA_forms(g, f.x, f.y).residual, premise};
            });
        return t;
    }();
    return table;
}

const CheckImpl* find_impl(std::string_view id) {
    for (const auto& c : impls())
        if (c.meta.id == id) return &c;
    return nullptr;
}

}  // namespace

const std::vector<TheoremCheck>& registry() {
    static const std::vector<TheoremCheck> list = [] {
        std::vector<TheoremCheck> out;
        for (const auto& c : impls()) out.push_back(c.meta);
        return out;
    }();
    return list;
}

const TheoremCheck* find_check(std::string_view id) {
    for (const auto& c : registry())
        if (c.id == id) return &c;
    return nullptr;
}

CheckReport run_check(const AlmostContactStructure& s, const TheoremCheck& check, std::size_t points,
                      std::uint64_t seed, double tol, bool allow_unvalidated) {
    require_validated(s, allow_unvalidated);
    if (points < 1) throw ContractError("a check needs at least one point");
    if (!(tol > 0)) throw ContractError("tolerance must be positive");
    const CheckImpl* impl = find_impl(check.id);
    if (!impl) throw LookupError("unknown check id '" + check.id + "'");

    CheckContext ctx{s, {}};
    if (impl->needs_forms) {
        ctx.forms.push_back(structure_form(s));
        for (std::size_t k = 0; k < kFuzzedForms; ++k)
            ctx.forms.push_back(fuzz_one_form(s.chart_ptr(), seed * 1000003u + k + 1));
    }

    ResidualTracker conclusion, premise;
    bool has_premise = false;
    Sampler sampler(seed);
    for (std::size_t j = 0; j < points; ++j) {
        const PointFrame fr = sampler.frame(s.dimension(), j);
        Sample sample;
        try {
            const LocalGeometry geo(s, fr.point);
            sample = impl->sample(ctx, geo, fr);
        } catch (const Error&) {
            sample = {kInf, kInf};
        }
        conclusion.add(sample.conclusion, fr.point);
        if (sample.premise) {
            has_premise = true;
            premise.add(*sample.premise, fr.point);
        }
    }

    CheckReport rep;
    rep.check_id = check.id;
    rep.mode = check.mode;
    rep.description = check.description;
    rep.points_sampled = points;
    rep.seed = seed;
    rep.max_abs_residual = conclusion.max();
    if (has_premise) rep.premise_residual = premise.max();
    rep.tolerance = tol;
    rep.worst_point = conclusion.worst_point();

    bool asserted = check.mode != CheckMode::Audit;
    switch (impl->condition) {
        case Condition::None: break;
        case Condition::Claim:
            if (!s.claims(impl->claim)) {
                asserted = false;
                rep.description += " [class " + std::string(class_name(impl->claim)) + " not claimed]";
            }
            break;
        case Condition::FirstClass: {
            const Classification cls = classify_T(s, points, seed, tol, true);
            rep.premise_residual = cls.first_residual;
            if (!cls.first_class) {
                asserted = false;
                rep.description += " [not first class]";
            }
            break;
        }
        case Condition::CosymplecticPremise:
            if (!(premise.max() <= tol)) {
                asserted = false;
                rep.description += " [premise does not hold]";
            }
            break;
    }
    rep.verdict = asserted ? verdict_for(rep.max_abs_residual, tol) : Verdict::Reported;
    if (!s.validated()) rep.description = "[structure unvalidated] " + rep.description;
    return rep;
}

CheckReport run_check(const AlmostContactStructure& s, std::string_view id, std::size_t points, std::uint64_t seed,
                      double tol, bool allow_unvalidated) {
    const TheoremCheck* check = find_check(id);
    if (!check) throw LookupError("unknown check id '" + std::string(id) + "'");
    return run_check(s, *check, points, seed, tol, allow_unvalidated);
}

}  // namespace acm
