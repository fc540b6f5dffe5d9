#include "acm/structure.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "acm/connections.hpp"
#include "acm/error.hpp"

namespace acm {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Reported: return "reported";
    }
    return "?";
}

std::string_view mode_name(CheckMode m) {
    switch (m) {
        case CheckMode::Assert: return "assert";
        case CheckMode::AssertEquivalence: return "assert-equivalence";
        case CheckMode::AssertConditional: return "assert-conditional";
        case CheckMode::Audit: return "audit";
    }
    return "?";
}

namespace {

constexpr std::array<std::pair<StructureClass, std::string_view>, 5> kClassNames{{
    {StructureClass::GeneralizedCosymplectic, "generalized-cosymplectic"},
    {StructureClass::GeneralizedQuasiSasakian, "generalized-quasi-sasakian"},
    {StructureClass::FirstClass, "first-class"},
    {StructureClass::SecondClass, "second-class"},
    {StructureClass::Normal, "normal"},
}};

void require_valence(const TensorField& f, Valence v, const char* what) {
    if (f.valence() != v) throw ContractError(std::string(what) + " has the wrong valence");
}

}  // namespace

std::string_view class_name(StructureClass c) {
    for (const auto& [cls, name] : kClassNames)
        if (cls == c) return name;
    return "?";
}

std::optional<StructureClass> class_from_name(std::string_view name) {
    for (const auto& [cls, n] : kClassNames)
        if (n == name) return cls;
    return std::nullopt;
}

AlmostContactStructure::AlmostContactStructure(std::string name, TensorField f, TensorField t, TensorField a,
                                               TensorField g, std::set<StructureClass> claims)
    : name_(std::move(name)),
      f_(std::move(f)),
      t_(std::move(t)),
      a_(std::move(a)),
      g_(std::move(g)),
      fundamental_(TensorField::zero(f_.chart_ptr(), kBilinearForm)),
      claims_(std::move(claims)) {
    require_valence(f_, kEndomorphism, "F");
    require_valence(t_, kVectorField, "T");
    require_valence(a_, kOneForm, "A");
    require_valence(g_, kBilinearForm, "g");
    for (const TensorField* field : {&t_, &a_, &g_})
        if (field->chart().coordinates != f_.chart().coordinates)
            throw ContractError("structure fields live on different charts");
    fundamental_ = acm::fundamental_form(f_, g_);
}

AlmostContactStructure AlmostContactStructure::with_certificate(ValidationCertificate cert) const {
    AlmostContactStructure copy = *this;
    copy.validation_ = std::move(cert);
    return copy;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<CheckReport> validate_structure(const AlmostContactStructure& s, std::size_t points,
                                            std::uint64_t seed, double tol) {
    if (points < 1) throw ContractError("validation needs at least one point");
    if (!(tol > 0)) throw ContractError("tolerance must be positive");

    struct Axiom {
        const char* id;
        const char* description;
    };
    static constexpr std::array<Axiom, 7> kAxioms{{
        {"AX1", "F^2 X + X = A(X) T"},
        {"AX2", "A(FX) = 0"},
        {"AX3", "'F(X,Y) = g(FX,Y) is antisymmetric"},
        {"AX4", "g(FX,FY) = g(X,Y) - A(X)A(Y)"},
        {"AX5", "A(T) = 1"},
        {"AX6", "F T = 0"},
        {"AX7", "A(X) = g(X,T)"},
    }};

    const std::size_t n = s.dimension();
    std::array<ResidualTracker, kAxioms.size()> trackers;
    Sampler sampler(seed);
    for (std::size_t j = 0; j < points; ++j) {
        const PointFrame fr = sampler.frame(n, j);
        std::array<double, kAxioms.size()> r{};
        try {
            const Matrix g = metric_at(s.g(), fr.point).metric;
            const Matrix f = as_matrix(evaluate(s.f(), fr.point), n);
            const Vector t = as_vector(evaluate(s.t(), fr.point));
            const Vector a = as_vector(evaluate(s.a(), fr.point));
            auto ax1 = [&](const Vector& v) { return (f * (f * v) + v - a.dot(v) * t).lpNorm<Eigen::Infinity>(); };
            r[0] = std::max(ax1(fr.x), ax1(fr.y));
            r[1] = std::max(std::abs(a.dot(f * fr.x)), std::abs(a.dot(f * fr.y)));
            r[2] = fprime(g, f, fr.x, fr.y) + fprime(g, f, fr.y, fr.x);
            r[3] = (f * fr.x).dot(g * (f * fr.y)) - fr.x.dot(g * fr.y) + a.dot(fr.x) * a.dot(fr.y);
            r[4] = a.dot(t) - 1.0;
            r[5] = (f * t).lpNorm<Eigen::Infinity>();
            r[6] = std::max(std::abs(a.dot(fr.x) - fr.x.dot(g * t)), std::abs(a.dot(fr.y) - fr.y.dot(g * t)));
        } catch (const Error&) {
            r.fill(std::numeric_limits<double>::infinity());
        }
        for (std::size_t i = 0; i < r.size(); ++i) trackers[i].add(r[i], fr.point);
    }

    std::vector<CheckReport> reports;
    for (std::size_t i = 0; i < kAxioms.size(); ++i) {
        CheckReport rep;
        rep.check_id = kAxioms[i].id;
        rep.mode = CheckMode::Assert;
        rep.description = kAxioms[i].description;
        rep.points_sampled = points;
        rep.seed = seed;
        rep.max_abs_residual = trackers[i].max();
        rep.tolerance = tol;
        rep.verdict = verdict_for(rep.max_abs_residual, tol);
        rep.worst_point = trackers[i].worst_point();
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::optional<AlmostContactStructure> certify(const AlmostContactStructure& s, std::size_t points,
                                              std::uint64_t seed, double tol, std::vector<CheckReport>* reports) {
    auto reps = validate_structure(s, points, seed, tol);
    const bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.verdict == Verdict::Pass; });
    ValidationCertificate cert{points, seed, tol, {}};
    for (const auto& r : reps) cert.max_residuals.emplace_back(r.check_id, r.max_abs_residual);
    if (reports) *reports = std::move(reps);
    if (!ok) return std::nullopt;
    return s.with_certificate(std::move(cert));
}

CheckReport audit_contact_form(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed) {
    const std::size_t n = s.dimension();
    ResidualTracker conclusion, premise;
    Sampler sampler(seed);
    for (std::size_t j = 0; j < points; ++j) {
        const PointFrame fr = sampler.frame(n, j);
        const LocalGeometry geo(s, fr.point);
        const double da = geo.d_a(fr.x, fr.y) - geo.d_a(fr.y, fr.x);
        const double pf = geo.fprime(fr.x, fr.y);
        conclusion.add(pf + 2.0 * da, fr.point);
        premise.add(da + 2.0 * pf, fr.point);
    }
    CheckReport rep;
    rep.check_id = "SDA";
    rep.mode = CheckMode::Audit;
    rep.description =
        "'F versus -2 dA with dA(X,Y) = (D_X A)(Y) - (D_Y A)(X); residual |'F + 2dA|, premise column |dA + 2'F|";
    rep.points_sampled = points;
    rep.seed = seed;
    rep.max_abs_residual = conclusion.max();
    rep.premise_residual = premise.max();
    rep.tolerance = 0.0;
    rep.verdict = Verdict::Reported;
    rep.worst_point = conclusion.worst_point();
    return rep;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

struct ComponentTable {
    std::size_t n;
    std::vector<std::string> text;  // flat, "0" by default

    ComponentTable(std::size_t n_, int rank) : n(n_), text(rank == 1 ? n_ : rank == 2 ? n_ * n_ : 1, "0") {}
    void set(std::size_t i, std::string e) { text[i] = std::move(e); }
    void set(std::size_t i, std::size_t j, std::string e) { text[i * n + j] = std::move(e); }

    TensorField build(const std::shared_ptr<const Chart>& chart, Valence v) const {
        std::vector<expr::Expr> comps;
        comps.reserve(text.size());
        for (const auto& t : text) comps.push_back(expr::parse(t, chart->coordinates));
        return TensorField(chart, v, std::move(comps));
    }
};

std::shared_ptr<const Chart> contact_chart(std::size_t m) {
    std::vector<std::string> names;
    if (m == 1) {
        names = {"x", "y", "z"};
    } else {
        for (std::size_t i = 1; i <= m; ++i) {
            names.push_back("x" + std::to_string(i));
            names.push_back("y" + std::to_string(i));
        }
        names.push_back("z");
    }
    return Chart::make(std::move(names));
}

}  // namespace

AlmostContactStructure make_flat_cosymplectic(std::size_t m) {
    if (m < 1) throw ContractError("flat cosymplectic needs m >= 1");
    const auto chart = contact_chart(m);
    const std::size_t n = 2 * m + 1, z = 2 * m;
    ComponentTable f(n, 2), t(n, 1), a(n, 1), g(n, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t xi = 2 * i, yi = 2 * i + 1;
        f.set(yi, xi, "1");   // F d/dx_i = d/dy_i
        f.set(xi, yi, "-1");  // F d/dy_i = -d/dx_i
    }
    for (std::size_t i = 0; i < n; ++i) g.set(i, i, "1");
    t.set(z, "1");
    a.set(z, "1");
    return AlmostContactStructure("flat-cosymplectic-" + std::to_string(n), f.build(chart, kEndomorphism),
                                  t.build(chart, kVectorField), a.build(chart, kOneForm),
                                  g.build(chart, kBilinearForm),
                                  {StructureClass::GeneralizedCosymplectic, StructureClass::GeneralizedQuasiSasakian,
                                   StructureClass::FirstClass, StructureClass::SecondClass, StructureClass::Normal});
}

AlmostContactStructure make_sasakian(std::size_t m) {
    if (m < 1) throw ContractError("sasakian needs m >= 1");
    const auto chart = contact_chart(m);
    const auto& names = chart->coordinates;
    const std::size_t n = 2 * m + 1, z = 2 * m;
    ComponentTable f(n, 2), t(n, 1), a(n, 1), g(n, 2);
    // A = (dz - sum y_i dx_i)/2, T = 2 d/dz, g = A (x) A + (dx_i^2 + dy_i^2)/4.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t xi = 2 * i, yi = 2 * i + 1;
        const std::string& y = names[yi];
        a.set(xi, "-" + y + "/2");
        f.set(yi, xi, "-1");  // F d/dx_i = -d/dy_i
        f.set(xi, yi, "1");   // F d/dy_i = d/dx_i + y_i d/dz
        f.set(z, yi, y);
        for (std::size_t j = 0; j < m; ++j) {
            const std::string& yj = names[2 * j + 1];
            g.set(xi, 2 * j, i == j ? "(1 + " + y + "^2)/4" : y + "*" + yj + "/4");
        }
        g.set(xi, z, "-" + y + "/4");
        g.set(z, xi, "-" + y + "/4");
        g.set(yi, yi, "1/4");
    }
    g.set(z, z, "1/4");
    a.set(z, "1/2");
    t.set(z, "2");
    return AlmostContactStructure("sasakian-" + std::to_string(n), f.build(chart, kEndomorphism),
                                  t.build(chart, kVectorField), a.build(chart, kOneForm),
                                  g.build(chart, kBilinearForm),
                                  {StructureClass::GeneralizedCosymplectic, StructureClass::GeneralizedQuasiSasakian,
                                   StructureClass::FirstClass, StructureClass::Normal});
}

double sasakian_identity_residual(const AlmostContactStructure& s, std::size_t points, std::uint64_t seed) {
    const std::size_t n = s.dimension();
    ResidualTracker tracker;
    Sampler sampler(seed);
    for (std::size_t j = 0; j < points; ++j) {
        const PointFrame fr = sampler.frame(n, j);
        const LocalGeometry geo(s, fr.point);
        const Vector lhs = geo.d_f(fr.x, fr.y);
        const Vector rhs = geo.g(fr.x, fr.y) * geo.structure_vector() - geo.a(fr.y) * fr.x;
        tracker.add((lhs - rhs).lpNorm<Eigen::Infinity>(), fr.point);
    }
    return tracker.max();
}

std::vector<std::string> builtin_names() {
    return {"flat-cosymplectic-3", "flat-cosymplectic-5", "sasakian-3", "sasakian-5"};
}

AlmostContactStructure builtin(std::string_view name) {
    constexpr std::size_t kPoints = 100;
    constexpr std::uint64_t kSeed = 42;
    constexpr double kTol = 1e-9;

    std::optional<AlmostContactStructure> s;
    if (name == "flat-cosymplectic-3") s = make_flat_cosymplectic(1);
    else if (name == "flat-cosymplectic-5") s = make_flat_cosymplectic(2);
    else if (name == "sasakian-3") s = make_sasakian(1);
    else if (name == "sasakian-5") s = make_sasakian(2);
    if (!s) {
        std::string list;
        for (const auto& b : builtin_names()) list += (list.empty() ? "" : ", ") + b;
        throw LookupError("unknown builtin '" + std::string(name) + "' (available: " + list + ")");
    }
    if (name.starts_with("sasakian") && sasakian_identity_residual(*s, kPoints, kSeed) > kTol)
        throw Error("builtin " + std::string(name) + " violates (D_X F)Y = g(X,Y)T - A(Y)X");
    auto certified = certify(*s, kPoints, kSeed, kTol);
    if (!certified) throw Error("builtin " + std::string(name) + " fails its structure axioms");
    return *certified;
}

}  // namespace acm
