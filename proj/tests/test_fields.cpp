#include <doctest.h>

#include <cmath>
#include <vector>

#include "acm/error.hpp"
#include "acm/fields.hpp"
#include "acm/structure.hpp"
#include "support.hpp"

using namespace acm;
using acm::testing::xyz;

namespace {

TensorField constant_metric(const std::shared_ptr<const Chart>& chart, double diag) {
    const std::size_t n = chart->dimension();
    std::vector<expr::Expr> c(n * n);
    for (std::size_t i = 0; i < n; ++i) c[i * n + i] = expr::Expr::constant(diag);
    return TensorField(chart, kBilinearForm, c);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("chart names are validated") {
    CHECK(Chart::make({"x", "y", "z"})->dimension() == 3);
    CHECK_THROWS_AS(Chart::make({}), ContractError);
    CHECK_THROWS_AS(Chart::make({"x", "x"}), ContractError);
    CHECK_THROWS_AS(Chart::make({"1x"}), ContractError);
    CHECK_THROWS_AS(Chart::make({"sin"}), ContractError);
}

TEST_CASE("tensor fields check their component count and arity") {
    const auto chart = Chart::make(xyz());
    CHECK_THROWS_AS(TensorField(chart, kVectorField, std::vector<expr::Expr>(2)), ContractError);
    const auto two = Chart::make({"u", "v"});
    std::vector<expr::Expr> comps{expr::parse("z", xyz()), expr::Expr()};
    CHECK_THROWS_AS(TensorField(two, kVectorField, comps), ContractError);
    const auto f = TensorField::zero(chart, kEndomorphism);
    CHECK(f.size() == 9);
    const std::vector<std::size_t> idx{2, 1};
    CHECK(f.flat_index(idx) == 7);
    CHECK(unflatten(7, 2, 3) == idx);
}

TEST_CASE("evaluate") {
    const auto chart = Chart::make(xyz());
    const auto g = constant_metric(chart, 1.0);
    const std::vector<double> p{0.3, -1.0, 2.0};
    CHECK(as_matrix(evaluate(g, p), 3) == Matrix::Identity(3, 3));

    const auto flat = builtin("flat-cosymplectic-3");
    CHECK(evaluate(flat.t(), p) == std::vector<double>{0, 0, 1});

    const auto sas = builtin("sasakian-3");
    const auto a = evaluate(sas.a(), std::vector<double>{0, 4, 0});
    CHECK(a[0] == doctest::Approx(-2.0));
    CHECK(a[1] == 0.0);
    CHECK(a[2] == doctest::Approx(0.5));
}

TEST_CASE("evaluation errors carry the component index") {
    const auto chart = Chart::make(xyz());
    std::vector<expr::Expr> c(3);
    c[1] = expr::parse("ln(x)", xyz());
    const TensorField v(chart, kVectorField, c);
    try {
        evaluate(v, std::vector<double>{-1, 0, 0});
        FAIL("no error");
    } catch (const EvalError& e) {
        CHECK(e.reason().find("component [2]") != std::string::npos);
    }
}

TEST_CASE("partials") {
    const auto chart = Chart::make(xyz());
    const auto g = constant_metric(chart, 3.0);
    for (double d : partials(g, std::vector<double>{1, 2, 3})) CHECK(d == 0.0);

    const auto sas = builtin("sasakian-3");
    const auto dg = partials(sas.g(), std::vector<double>{0.5, 2.0, -1.0});
    CHECK(dg[(0 * 3 + 0) * 3 + 1] == doctest::Approx(1.0));  // d_y g_11 = y/2
}

TEST_CASE("metric_at") {
    const auto chart = Chart::make(xyz());
    const auto id = metric_at(constant_metric(chart, 1.0), std::vector<double>{0, 0, 0});
    CHECK(id.metric == Matrix::Identity(3, 3));
    CHECK(id.inverse == Matrix::Identity(3, 3));

    const auto sas = builtin("sasakian-3");
    const auto m = metric_at(sas.g(), std::vector<double>{1.3, 0.0, -0.4});
    CHECK(max_abs(m.metric - 0.25 * Matrix::Identity(3, 3)) < 1e-15);
    CHECK(max_abs(m.inverse - 4.0 * Matrix::Identity(3, 3)) < 1e-12);

    CHECK_THROWS_AS(metric_at(constant_metric(chart, 0.0), std::vector<double>{0, 0, 0}), SingularMetricError);
}

TEST_CASE("apply11 and the fundamental form") {
    const auto flat = builtin("flat-cosymplectic-3");
    const std::vector<double> p{0.1, 0.2, 0.3};
    const Matrix f = as_matrix(evaluate(flat.f(), p), 3);
    const Matrix g = as_matrix(evaluate(flat.g(), p), 3);
    CHECK(apply11(f, Vector::Unit(3, 0)) == Vector::Unit(3, 1));
    CHECK(apply11(f, Vector::Zero(3)) == Vector::Zero(3));
    CHECK_THROWS_AS(apply11(f, Vector::Zero(2)), ContractError);

    const Vector x = Vector::Unit(3, 0);
    CHECK(fprime(g, f, x, f * x) == doctest::Approx((f * x).dot(g * (f * x))));
    CHECK(fprime(g, f, x, f * x) == doctest::Approx(1.0));

    for (const auto& name : builtin_names()) {
        const auto s = builtin(name);
        const std::size_t n = s.dimension();
        Sampler rng(5);
        for (int i = 0; i < 100; ++i) {
            const auto pf = rng.frame(n, static_cast<std::size_t>(i));
            const Matrix fm = as_matrix(evaluate(s.f(), pf.point), n);
            const Matrix gm = as_matrix(evaluate(s.g(), pf.point), n);
            const Vector t = as_vector(evaluate(s.t(), pf.point));
            CHECK(std::abs(fprime(gm, fm, pf.x, pf.y) + fprime(gm, fm, pf.y, pf.x)) <= 1e-12);
            CHECK(std::abs(fprime(gm, fm, t, pf.y)) <= 1e-12);
            CHECK((fm * t).norm() <= 1e-12);
        }
    }
}

TEST_CASE("composed 'F agrees with pointwise g(FX, Y)") {
    for (const auto& name : builtin_names()) {
        const auto s = builtin(name);
        const std::size_t n = s.dimension();
        Sampler rng(11);
        for (int i = 0; i < 20; ++i) {
            const auto p = rng.point(n);
            const Matrix composed = as_matrix(evaluate(s.fundamental_form(), p), n);
            const Matrix fm = as_matrix(evaluate(s.f(), p), n);
            const Matrix gm = as_matrix(evaluate(s.g(), p), n);
            CHECK(max_abs(composed - fm.transpose() * gm) <= 1e-14);
        }
    }
}

TEST_CASE("composed 'F partials agree with differentiating g(FX, Y)") {
    // d_k 'F_ij = sum_l (d_k F^l_i g_lj + F^l_i d_k g_lj)
    const auto s = builtin("sasakian-5");
    const std::size_t n = s.dimension();
    Sampler rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto p = rng.point(n);
        const auto dpf = partials(s.fundamental_form(), p);
        const auto f = evaluate(s.f(), p);
        const auto g = evaluate(s.g(), p);
        const auto df = partials(s.f(), p);
        const auto dg = partials(s.g(), p);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t k = 0; k < n; ++k) {
                    double want = 0.0;
                    for (std::size_t l = 0; l < n; ++l)
                        want += df[(l * n + a) * n + k] * g[l * n + b] + f[l * n + a] * dg[(l * n + b) * n + k];
                    CHECK(dpf[(a * n + b) * n + k] == doctest::Approx(want).epsilon(1e-12));
                }
    }
}

TEST_CASE("'F is bilinear") {
    const auto s = builtin("sasakian-3");
    Sampler rng(8);
    for (int i = 0; i < 50; ++i) {
        const auto pf = rng.frame(3, 10);
        const Matrix fm = as_matrix(evaluate(s.f(), pf.point), 3);
        const Matrix gm = as_matrix(evaluate(s.g(), pf.point), 3);
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        const double lhs = fprime(gm, fm, a * pf.x + b * pf.z, pf.y);
        const double rhs = a * fprime(gm, fm, pf.x, pf.y) + b * fprime(gm, fm, pf.z, pf.y);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("sampler is deterministic and stays in the box") {
    Sampler a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Sampler c(1);
    for (int i = 0; i < 100; ++i) {
        for (double x : c.point(5)) {
            CHECK(x >= -2.0);
            CHECK(x < 2.0);
        }
        CHECK(c.unit_vector(5).norm() == doctest::Approx(1.0));
    }
    Sampler d(1);
    const auto f0 = d.frame(3, 0);
    CHECK(f0.x == Vector::Unit(3, 0));
    CHECK(f0.y == Vector::Unit(3, 1));
    CHECK(f0.z == Vector::Unit(3, 2));
    const auto f2 = d.frame(3, 2);
    CHECK(f2.y == Vector::Unit(3, 0));
}

TEST_CASE("sampler sequence is pinned") {
    Sampler s(42);
    CHECK(s.uniform() == 0.75515553295453897);
    CHECK(s.uniform() == 0.63903139385469743);
    CHECK(s.uniform() == 0.7521452007480266);
}
