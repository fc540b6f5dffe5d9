#pragma once

// Tensor fields over a single coordinate chart.
//
// Components are stored densely, contravariant indices first, row-major, all
// indices 0-based. A (1,1) field F therefore keeps F^i_j at i*n + j, and the
// vector FX has components sum_j F^i_j X^j.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acm/expr.hpp"

namespace acm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Chart {
    std::vector<std::string> coordinates;

    std::size_t dimension() const { return coordinates.size(); }

    /// Throws ContractError on an empty list, a malformed name or a duplicate.
    static std::shared_ptr<const Chart> make(std::vector<std::string> coordinates);
};

struct Valence {
    int contravariant = 0;
    int covariant = 0;

    int rank() const { return contravariant + covariant; }
    bool operator==(const Valence&) const = default;
};

inline constexpr Valence kScalar{0, 0};
inline constexpr Valence kVectorField{1, 0};
inline constexpr Valence kOneForm{0, 1};
inline constexpr Valence kEndomorphism{1, 1};
inline constexpr Valence kBilinearForm{0, 2};

class TensorField {
public:
    TensorField(std::shared_ptr<const Chart> chart, Valence valence, std::vector<expr::Expr> components);

    static TensorField zero(std::shared_ptr<const Chart> chart, Valence valence);

    const Chart& chart() const { return *chart_; }
    const std::shared_ptr<const Chart>& chart_ptr() const { return chart_; }
    Valence valence() const { return valence_; }
    std::size_t dimension() const { return chart_->dimension(); }
    std::size_t size() const { return components_.size(); }

    const std::vector<expr::Expr>& components() const { return components_; }
    const expr::Expr& component(std::span<const std::size_t> index) const;
    std::size_t flat_index(std::span<const std::size_t> index) const;

private:
    std::shared_ptr<const Chart> chart_;
    Valence valence_;
    std::vector<expr::Expr> components_;
};

/// Multi-index of flat position `flat` for a tensor of `rank` indices over dimension n.
std::vector<std::size_t> unflatten(std::size_t flat, int rank, std::size_t n);

/// Entry-wise values of all components at `point`.
std::vector<double> evaluate(const TensorField& field, std::span<const double> point);

/// d_k of every component; entry (I, k) lives at I*n + k.
std::vector<double> partials(const TensorField& field, std::span<const double> point);

struct MetricAt {
    Matrix metric;
    Matrix inverse;
};

/// Throws SingularMetricError when |det g| < 1e-12.
MetricAt metric_at(const TensorField& g, std::span<const double> point);

/// Row-major n x n view of a (1,1) or (0,2) component array.
Matrix as_matrix(std::span<const double> flat, std::size_t n);
Vector as_vector(std::span<const double> flat);

/// X -> FX.
Vector apply11(const Matrix& f, const Vector& v);

/// 'F(X, Y) = g(FX, Y).
double fprime(const Matrix& g, const Matrix& f, const Vector& x, const Vector& y);

/// The (0,2) field 'F_ij = sum_l F^l_i g_lj, built by composing component expressions.
TensorField fundamental_form(const TensorField& f, const TensorField& g);

/// A sample point with three frame vectors at it.
struct PointFrame {
    std::vector<double> point;
    Vector x;
    Vector y;
    Vector z;
};

/// Deterministic sampler: std::mt19937_64 with its own mapping to [0, 1), so
/// the sequence is identical across standard library implementations.
class Sampler {
public:
    static constexpr double kBoxHalfWidth = 2.0;

    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform();                     // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    std::vector<double> point(std::size_t n);
    /// Euclidean-unit vector with uniformly drawn direction coefficients.
    Vector unit_vector(std::size_t n);

    /// Frame number `index`: the first n frames cycle through the coordinate
    /// basis (e_j, e_j+1, e_j+2), later frames are random unit vectors.
    PointFrame frame(std::size_t n, std::size_t index);

private:
    std::mt19937_64 engine_;
};

}  // namespace acm
