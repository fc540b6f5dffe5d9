#include "acm/analytic.hpp"

#include "acm/error.hpp"

namespace acm {

OneFormField fuzz_one_form(const std::shared_ptr<const Chart>& chart, std::uint64_t seed) {
    using expr::Expr;
    const std::size_t n = chart->dimension();
    Sampler rng(seed);
    auto coeff = [&] { return Expr::constant(rng.uniform(-1.0, 1.0)); };
    std::vector<Expr> comps(n);
    for (auto& c : comps) {
        Expr sum = coeff();
        for (std::size_t i = 0; i < n; ++i) sum = sum + coeff() * Expr::variable(i);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) sum = sum + coeff() * Expr::variable(i) * Expr::variable(j);
        c = sum;
    }
    return {TensorField(chart, kOneForm, std::move(comps)), "fuzzed(" + std::to_string(seed) + ")"};
}

OneFormField structure_form(const AlmostContactStructure& s) { return {s.a(), "structure-form"}; }

FormAt::FormAt(const OneFormField& w, const LocalGeometry& geo) {
    if (w.form.valence() != kOneForm) throw ContractError("test form must have valence (0,1)");
    const auto vals = evaluate(w.form, geo.point());
    const auto parts = partials(w.form, geo.point());
    values_ = as_vector(vals);
    d_ = covariant_derivative(ConnectionKind::Riemannian, kOneForm, vals, parts, geo.coefficients());
    b_ = covariant_derivative(ConnectionKind::SemiSymmetricNonMetric, kOneForm, vals, parts, geo.coefficients());
}

double FormAt::d(const Vector& x, const Vector& y) const { return as_vector(d_.along(x)).dot(y); }
double FormAt::b(const Vector& x, const Vector& y) const { return as_vector(b_.along(x)).dot(y); }

double caa_residual_D(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y) {
    return w.w(geo.d_f(x, y) - geo.d_f(y, x)) - w.d(geo.bar(x), y) + w.d(x, geo.bar(y));
}

double caa_residual_B(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y) {
    return w.w(geo.b_f(x, y) - geo.b_f(y, x)) - w.b(geo.bar(x), y) + w.b(x, geo.bar(y));
}

double caa_gap(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y) {
    return -2.0 * w.w(geo.structure_vector()) * geo.g(geo.bar(x), geo.bar(y));
}

double res_theorem_3_1(const LocalGeometry& geo, const FormAt& w, const Vector& x, const Vector& y) {
    return (caa_residual_B(geo, w, x, y) - caa_residual_D(geo, w, x, y)) - caa_gap(geo, w, x, y);
}

DAForms dA_forms(const LocalGeometry& geo, const Vector& x, const Vector& y) {
    DAForms out;
    out.d_a = geo.d_a(x, y) - geo.d_a(y, x);
    out.d_tilde_a = geo.b_a(x, y) - geo.b_a(y, x);
    out.residual = out.d_tilde_a - out.d_a - 2.0 * geo.g(x, geo.bar(y));
    return out;
}

double caa_residual_D(const AlmostContactStructure& s, const OneFormField& w, const Vector& x, const Vector& y,
                      std::span<const double> point) {
    const LocalGeometry geo(s, point);
    return caa_residual_D(geo, FormAt(w, geo), x, y);
}

double caa_residual_B(const AlmostContactStructure& s, const OneFormField& w, const Vector& x, const Vector& y,
                      std::span<const double> point) {
    const LocalGeometry geo(s, point);
    return caa_residual_B(geo, FormAt(w, geo), x, y);
}

double res_theorem_3_1(const AlmostContactStructure& s, const OneFormField& w, const Vector& x, const Vector& y,
                       std::span<const double> point) {
    const LocalGeometry geo(s, point);
    return res_theorem_3_1(geo, FormAt(w, geo), x, y);
}

DAForms dA_forms(const AlmostContactStructure& s, const Vector& x, const Vector& y, std::span<const double> point) {
    return dA_forms(LocalGeometry(s, point), x, y);
}

}  // namespace acm
