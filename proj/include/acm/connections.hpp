#pragma once

// The Levi-Civita connection D of g and the semi-symmetric non-metric
// connection B_X Y = D_X Y + 'F(X,Y) T, evaluated pointwise.
//
// Coefficient convention: nabla_{d_k} d_l = c^i_{kl} d_i, the first lower
// index is the differentiation direction. For B the coefficients are
// Gamma^i_{kl} + 'F_{kl} T^i.

#include <span>
#include <vector>

#include "acm/fields.hpp"
#include "acm/structure.hpp"

namespace acm {

enum class ConnectionKind { Riemannian, SemiSymmetricNonMetric };

class Array3 {
public:
    Array3() = default;
    explicit Array3(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

    double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }
    std::size_t dimension() const { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct ConnectionCoefficients {
    std::vector<double> point;
    Array3 gamma;       // Gamma^i_{kl}
    Array3 correction;  // C^i_{kl} = 'F(d_k, d_l) T^i

    std::size_t dimension() const { return gamma.dimension(); }
    double coefficient(ConnectionKind kind, std::size_t i, std::size_t k, std::size_t l) const {
        return kind == ConnectionKind::Riemannian ? gamma(i, k, l) : gamma(i, k, l) + correction(i, k, l);
    }
};

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij); correction left zero.
ConnectionCoefficients christoffel(const TensorField& g, std::span<const double> point);

/// Christoffel symbols of s.g() plus the B correction built from s.
ConnectionCoefficients coefficients(const AlmostContactStructure& s, std::span<const double> point);

/// Covariant derivative of a field at the coefficients' point: the field's
/// valence with one covariant slot appended, entry (I, k) at I*n + k.
struct CovariantDerivative {
    ConnectionKind connection;
    Valence valence;  // of the differentiated field
    std::size_t n;
    std::vector<double> values;

    /// Contracts the derivative slot with X, giving nabla_X of the field.
    std::vector<double> along(const Vector& x) const;
};

/// Same as covD/covB but from already evaluated components and partials.
CovariantDerivative covariant_derivative(ConnectionKind kind, Valence valence, std::span<const double> values,
                                         std::span<const double> partials, const ConnectionCoefficients& c);

/// Supported valences: (1,0), (0,1), (1,1), (0,2). Anything else is a ContractError.
CovariantDerivative covD(const TensorField& field, const ConnectionCoefficients& c);
CovariantDerivative covB(const TensorField& field, const ConnectionCoefficients& c);

/// Torsion of B from its coefficients: S(X,Y)^i = (c^i_kl - c^i_lk) X^k Y^l.
/// Frame vectors are constant at the point, so the bracket term vanishes.
Vector torsionB(const ConnectionCoefficients& c, const Vector& x, const Vector& y);
/// g(S(X,Y), Z).
double torsionB3(const ConnectionCoefficients& c, const Matrix& g, const Vector& x, const Vector& y, const Vector& z);
/// (B_X g)(Y,Z) through covB of g.
double nonmetricityB(const AlmostContactStructure& s, const ConnectionCoefficients& c, const Vector& x,
                     const Vector& y, const Vector& z);

/// Everything the identity checks need at one point, computed once.
/// Accessors taking a direction X return the derivative along X.
class LocalGeometry {
public:
    LocalGeometry(const AlmostContactStructure& s, std::span<const double> point);

    std::size_t dimension() const { return n_; }
    const std::vector<double>& point() const { return point_; }
    const ConnectionCoefficients& coefficients() const { return coeffs_; }

    const Matrix& metric() const { return g_; }
    const Matrix& endomorphism() const { return f_; }
    const Vector& structure_vector() const { return t_; }
    const Vector& structure_form() const { return a_; }

    Vector bar(const Vector& x) const { return f_ * x; }
    double g(const Vector& x, const Vector& y) const { return x.dot(g_ * y); }
    double a(const Vector& x) const { return a_.dot(x); }
    double fprime(const Vector& x, const Vector& y) const { return acm::fprime(g_, f_, x, y); }

    double d_a(const Vector& x, const Vector& y) const;   // (D_X A)(Y)
    double b_a(const Vector& x, const Vector& y) const;   // (B_X A)(Y)
    Vector d_f(const Vector& x, const Vector& y) const;   // (D_X F)(Y)
    Vector b_f(const Vector& x, const Vector& y) const;   // (B_X F)(Y)
    Matrix d_f(const Vector& x) const;                    // D_X F
    Matrix b_f(const Vector& x) const;                    // B_X F
    double d_pf(const Vector& x, const Vector& y, const Vector& z) const;  // (D_X 'F)(Y,Z)
    double b_pf(const Vector& x, const Vector& y, const Vector& z) const;  // (B_X 'F)(Y,Z)
    /// (D_X 'F)(Y,Z) as g((D_X F)Y, Z): the route through covD of F.
    double d_pf_via_f(const Vector& x, const Vector& y, const Vector& z) const;
    double d_g(const Vector& x, const Vector& y, const Vector& z) const;   // (D_X g)(Y,Z)
    double b_g(const Vector& x, const Vector& y, const Vector& z) const;   // (B_X g)(Y,Z)

    Vector torsion(const Vector& x, const Vector& y) const { return torsionB(coeffs_, x, y); }
    double torsion3(const Vector& x, const Vector& y, const Vector& z) const { return torsionB3(coeffs_, g_, x, y, z); }

private:
    std::size_t n_;
    std::vector<double> point_;
    Matrix g_, f_;
    Vector t_, a_;
    ConnectionCoefficients coeffs_;
    CovariantDerivative df_, bf_, da_, ba_, dpf_, bpf_, dg_, bg_;
};

}  // namespace acm
