#include "acm/connections.hpp"

#include "acm/error.hpp"

namespace acm {

namespace {

bool supported(Valence v) {
    return v == kVectorField || v == kOneForm || v == kEndomorphism || v == kBilinearForm;
}

double form1(const CovariantDerivative& d, const Vector& x, const Vector& y) {
    const std::size_t n = d.n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) s += d.values[j * n + k] * y(j) * x(k);
    return s;
}

Matrix endo(const CovariantDerivative& d, const Vector& x) { return as_matrix(d.along(x), d.n); }

double form2(const CovariantDerivative& d, const Vector& x, const Vector& y, const Vector& z) {
    return y.dot(as_matrix(d.along(x), d.n) * z);
}

}  // namespace

ConnectionCoefficients christoffel(const TensorField& g, std::span<const double> point) {
    const std::size_t n = g.dimension();
    const MetricAt m = metric_at(g, point);
    const std::vector<double> dg = partials(g, point);  // d_k g_ij at (i*n + j)*n + k
    auto d = [&](std::size_t k, std::size_t i, std::size_t j) { return dg[(i * n + j) * n + k]; };

    // Lowered symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
    Array3 lowered(n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = 0.5 * (d(i, j, l) + d(j, i, l) - d(l, i, j));
                lowered(l, i, j) = v;
                lowered(l, j, i) = v;
            }

    ConnectionCoefficients c{std::vector<double>(point.begin(), point.end()), Array3(n), Array3(n)};
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += m.inverse(k, l) * lowered(l, i, j);
                c.gamma(k, i, j) = s;
                c.gamma(k, j, i) = s;
            }
    return c;
}

ConnectionCoefficients coefficients(const AlmostContactStructure& s, std::span<const double> point) {
    ConnectionCoefficients c = christoffel(s.g(), point);
    const std::size_t n = s.dimension();
    const Matrix pf = as_matrix(evaluate(s.fundamental_form(), point), n);
    const std::vector<double> t = evaluate(s.t(), point);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) c.correction(i, k, l) = pf(k, l) * t[i];
    return c;
}

std::vector<double> CovariantDerivative::along(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != n) throw ContractError("direction vector dimension mismatch");
    std::vector<double> out(values.size() / n, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += values[i * n + k] * x(k);
        out[i] = s;
    }
    return out;
}

CovariantDerivative covariant_derivative(ConnectionKind kind, Valence valence, std::span<const double> values,
                                         std::span<const double> parts, const ConnectionCoefficients& c) {
    if (!supported(valence)) throw ContractError("covariant derivative of unsupported valence");
    const std::size_t n = c.dimension();
    const int rank = valence.rank();
    CovariantDerivative out{kind, valence, n, std::vector<double>(values.size() * n, 0.0)};

    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        const std::vector<std::size_t> idx = unflatten(flat, rank, n);
        for (std::size_t k = 0; k < n; ++k) {
            double v = parts[flat * n + k];
            for (int slot = 0; slot < rank; ++slot) {
                std::vector<std::size_t> moved = idx;
                const std::size_t own = idx[static_cast<std::size_t>(slot)];
                const bool upper = slot < valence.contravariant;
                for (std::size_t l = 0; l < n; ++l) {
                    moved[static_cast<std::size_t>(slot)] = l;
                    std::size_t mflat = 0;
                    for (std::size_t m : moved) mflat = mflat * n + m;
                    if (upper) {
                        v += c.coefficient(kind, own, k, l) * values[mflat];
                    } else {
                        v -= c.coefficient(kind, l, k, own) * values[mflat];
                    }
                }
            }
            out.values[flat * n + k] = v;
        }
    }
    return out;
}

CovariantDerivative covD(const TensorField& field, const ConnectionCoefficients& c) {
    if (!supported(field.valence())) throw ContractError("covD: unsupported valence");
    return covariant_derivative(ConnectionKind::Riemannian, field.valence(), evaluate(field, c.point),
                                partials(field, c.point), c);
}

CovariantDerivative covB(const TensorField& field, const ConnectionCoefficients& c) {
    if (!supported(field.valence())) throw ContractError("covB: unsupported valence");
    return covariant_derivative(ConnectionKind::SemiSymmetricNonMetric, field.valence(), evaluate(field, c.point),
                                partials(field, c.point), c);
}

Vector torsionB(const ConnectionCoefficients& c, const Vector& x, const Vector& y) {
    const std::size_t n = c.dimension();
    Vector s = Vector::Zero(n);
    const auto kind = ConnectionKind::SemiSymmetricNonMetric;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                s(i) += (c.coefficient(kind, i, k, l) - c.coefficient(kind, i, l, k)) * x(k) * y(l);
    return s;
}

double torsionB3(const ConnectionCoefficients& c, const Matrix& g, const Vector& x, const Vector& y,
                 const Vector& z) {
    return torsionB(c, x, y).dot(g * z);
}

double nonmetricityB(const AlmostContactStructure& s, const ConnectionCoefficients& c, const Vector& x,
                     const Vector& y, const Vector& z) {
    return form2(covB(s.g(), c), x, y, z);
}

LocalGeometry::LocalGeometry(const AlmostContactStructure& s, std::span<const double> point)
    : n_(s.dimension()), point_(point.begin(), point.end()), coeffs_(acm::coefficients(s, point)) {
    const auto g_vals = evaluate(s.g(), point);
    const auto f_vals = evaluate(s.f(), point);
    const auto t_vals = evaluate(s.t(), point);
    const auto a_vals = evaluate(s.a(), point);
    const auto pf_vals = evaluate(s.fundamental_form(), point);
    g_ = as_matrix(g_vals, n_);
    f_ = as_matrix(f_vals, n_);
    t_ = as_vector(t_vals);
    a_ = as_vector(a_vals);

    const auto f_parts = partials(s.f(), point);
    const auto a_parts = partials(s.a(), point);
    const auto pf_parts = partials(s.fundamental_form(), point);
    const auto g_parts = partials(s.g(), point);
    using K = ConnectionKind;
    df_ = covariant_derivative(K::Riemannian, kEndomorphism, f_vals, f_parts, coeffs_);
    bf_ = covariant_derivative(K::SemiSymmetricNonMetric, kEndomorphism, f_vals, f_parts, coeffs_);
    da_ = covariant_derivative(K::Riemannian, kOneForm, a_vals, a_parts, coeffs_);
    ba_ = covariant_derivative(K::SemiSymmetricNonMetric, kOneForm, a_vals, a_parts, coeffs_);
    dpf_ = covariant_derivative(K::Riemannian, kBilinearForm, pf_vals, pf_parts, coeffs_);
    bpf_ = covariant_derivative(K::SemiSymmetricNonMetric, kBilinearForm, pf_vals, pf_parts, coeffs_);
    dg_ = covariant_derivative(K::Riemannian, kBilinearForm, g_vals, g_parts, coeffs_);
    bg_ = covariant_derivative(K::SemiSymmetricNonMetric, kBilinearForm, g_vals, g_parts, coeffs_);
}

double LocalGeometry::d_a(const Vector& x, const Vector& y) const { return form1(da_, x, y); }
double LocalGeometry::b_a(const Vector& x, const Vector& y) const { return form1(ba_, x, y); }
Matrix LocalGeometry::d_f(const Vector& x) const { return endo(df_, x); }
Matrix LocalGeometry::b_f(const Vector& x) const { return endo(bf_, x); }
Vector LocalGeometry::d_f(const Vector& x, const Vector& y) const { return d_f(x) * y; }
Vector LocalGeometry::b_f(const Vector& x, const Vector& y) const { return b_f(x) * y; }
double LocalGeometry::d_pf(const Vector& x, const Vector& y, const Vector& z) const { return form2(dpf_, x, y, z); }
double LocalGeometry::b_pf(const Vector& x, const Vector& y, const Vector& z) const { return form2(bpf_, x, y, z); }
double LocalGeometry::d_pf_via_f(const Vector& x, const Vector& y, const Vector& z) const {
    return g(d_f(x, y), z);
}
double LocalGeometry::d_g(const Vector& x, const Vector& y, const Vector& z) const { return form2(dg_, x, y, z); }
double LocalGeometry::b_g(const Vector& x, const Vector& y, const Vector& z) const { return form2(bg_, x, y, z); }

}  // namespace acm
