#include "acm/fields.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include "acm/error.hpp"

namespace acm {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    if (!start(s[0])) return false;
    for (char c : s)
        if (!start(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

std::string index_tag(std::size_t flat, int rank, std::size_t n) {
    std::string tag;
    for (std::size_t i : unflatten(flat, rank, n)) tag += "[" + std::to_string(i + 1) + "]";
    return tag;
}

}  // namespace

std::shared_ptr<const Chart> Chart::make(std::vector<std::string> coordinates) {
    if (coordinates.empty()) throw ContractError("chart needs at least one coordinate");
    std::set<std::string> seen;
    for (const auto& c : coordinates) {
        if (!valid_identifier(c)) throw ContractError("invalid coordinate name '" + c + "'");
        if (expr::function_from_name(c)) throw ContractError("coordinate name '" + c + "' is a function name");
        if (!seen.insert(c).second) throw ContractError("duplicate coordinate '" + c + "'");
    }
    return std::make_shared<const Chart>(Chart{std::move(coordinates)});
}

TensorField::TensorField(std::shared_ptr<const Chart> chart, Valence valence, std::vector<expr::Expr> components)
    : chart_(std::move(chart)), valence_(valence), components_(std::move(components)) {
    if (!chart_) throw ContractError("tensor field without chart");
    if (valence_.contravariant < 0 || valence_.covariant < 0 || valence_.rank() > 3)
        throw ContractError("unsupported valence");
    const std::size_t n = chart_->dimension();
    if (components_.size() != ipow(n, valence_.rank()))
        throw ContractError("component count " + std::to_string(components_.size()) + " does not match valence");
    for (const auto& c : components_)
        if (c.arity() > n) throw ContractError("component references a coordinate outside the chart");
}

TensorField TensorField::zero(std::shared_ptr<const Chart> chart, Valence valence) {
    const std::size_t count = ipow(chart->dimension(), valence.rank());
    return TensorField(std::move(chart), valence, std::vector<expr::Expr>(count));
}

std::size_t TensorField::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != static_cast<std::size_t>(valence_.rank())) throw ContractError("index rank mismatch");
    const std::size_t n = dimension();
    std::size_t flat = 0;
    for (std::size_t i : index) {
        if (i >= n) throw ContractError("index out of range");
        flat = flat * n + i;
    }
    return flat;
}

const expr::Expr& TensorField::component(std::span<const std::size_t> index) const {
    return components_[flat_index(index)];
}

std::vector<std::size_t> unflatten(std::size_t flat, int rank, std::size_t n) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(rank));
    for (int r = rank - 1; r >= 0; --r) {
        idx[static_cast<std::size_t>(r)] = flat % n;
        flat /= n;
    }
    return idx;
}

std::vector<double> evaluate(const TensorField& field, std::span<const double> point) {
    const std::size_t n = field.dimension();
    if (point.size() != n) throw ContractError("point dimension mismatch");
    std::vector<double> out(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        try {
            out[i] = expr::eval(field.components()[i], point);
        } catch (const EvalError& e) {
            throw EvalError("component " + index_tag(i, field.valence().rank(), n) + ": " + e.reason(), e.node());
        }
    }
    return out;
}

std::vector<double> partials(const TensorField& field, std::span<const double> point) {
    const std::size_t n = field.dimension();
    if (point.size() != n) throw ContractError("point dimension mismatch");
    std::vector<double> out(field.size() * n, 0.0);
    for (std::size_t i = 0; i < field.size(); ++i) {
        const auto& c = field.components()[i];
        if (c.arity() == 0 && std::holds_alternative<expr::Constant>(c.node().data)) continue;
        try {
            const auto d = expr::eval_dual(c, point);
            for (std::size_t k = 0; k < n; ++k) out[i * n + k] = d.partials[k];
        } catch (const EvalError& e) {
            throw EvalError("component " + index_tag(i, field.valence().rank(), n) + ": " + e.reason(), e.node());
        }
    }
    return out;
}

MetricAt metric_at(const TensorField& g, std::span<const double> point) {
    if (g.valence() != kBilinearForm) throw ContractError("metric must have valence (0,2)");
    const std::size_t n = g.dimension();
    Matrix m = as_matrix(evaluate(g, point), n);
    Eigen::FullPivLU<Matrix> lu(m);
    if (std::abs(lu.determinant()) < 1e-12) throw SingularMetricError("singular metric (|det g| < 1e-12)");
    return {m, lu.inverse()};
}

Matrix as_matrix(std::span<const double> flat, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = flat[i * n + j];
    return m;
}

Vector as_vector(std::span<const double> flat) {
    Vector v(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) v(i) = flat[i];
    return v;
}

Vector apply11(const Matrix& f, const Vector& v) {
    if (f.cols() != v.size()) throw ContractError("shape mismatch in apply11");
    return f * v;
}

double fprime(const Matrix& g, const Matrix& f, const Vector& x, const Vector& y) {
    return (f * x).dot(g * y);
}

TensorField fundamental_form(const TensorField& f, const TensorField& g) {
    if (f.valence() != kEndomorphism || g.valence() != kBilinearForm) throw ContractError("fundamental_form needs F (1,1) and g (0,2)");
    const std::size_t n = f.dimension();
    std::vector<expr::Expr> comps(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            expr::Expr sum;
            for (std::size_t l = 0; l < n; ++l) sum = sum + f.components()[l * n + i] * g.components()[l * n + j];
            comps[i * n + j] = sum;
        }
    }
    return TensorField(f.chart_ptr(), kBilinearForm, std::move(comps));
}

double Sampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::vector<double> Sampler::point(std::size_t n) {
    std::vector<double> p(n);
    for (auto& c : p) c = uniform(-kBoxHalfWidth, kBoxHalfWidth);
    return p;
}

Vector Sampler::unit_vector(std::size_t n) {
    for (;;) {
        Vector v(n);
        for (std::size_t i = 0; i < n; ++i) v(i) = uniform(-1.0, 1.0);
        const double norm = v.norm();
        if (norm > 1e-3) return v / norm;
    }
}

PointFrame Sampler::frame(std::size_t n, std::size_t index) {
    PointFrame f;
    f.point = point(n);
    if (index < n) {
        f.x = Vector::Unit(n, index);
        f.y = Vector::Unit(n, (index + 1) % n);
        f.z = Vector::Unit(n, (index + 2) % n);
    } else {
        f.x = unit_vector(n);
        f.y = unit_vector(n);
        f.z = unit_vector(n);
    }
    return f;
}

}  // namespace acm
