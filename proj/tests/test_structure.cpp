#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "acm/error.hpp"
#include "acm/structure.hpp"

using namespace acm;

namespace {

const std::string kData = ACM_TEST_DATA_DIR;

double worst(const std::vector<CheckReport>& reports) {
    double w = 0.0;
    for (const auto& r : reports) w = std::max(w, r.max_abs_residual);
    return w;
}

const CheckReport& by_id(const std::vector<CheckReport>& reports, const std::string& id) {
    auto it = std::find_if(reports.begin(), reports.end(), [&](const CheckReport& r) { return r.check_id == id; });
    REQUIRE(it != reports.end());
    return *it;
}

bool same_fields(const AlmostContactStructure& a, const AlmostContactStructure& b, std::uint64_t seed) {
    Sampler rng(seed);
    for (int i = 0; i < 10; ++i) {
        const auto p = rng.point(a.dimension());
        if (evaluate(a.f(), p) != evaluate(b.f(), p)) return false;
        if (evaluate(a.t(), p) != evaluate(b.t(), p)) return false;
        if (evaluate(a.a(), p) != evaluate(b.a(), p)) return false;
        if (evaluate(a.g(), p) != evaluate(b.g(), p)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("builtins validate") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        const auto s = builtin(name);
        CHECK(s.validated());
        const auto reports = validate_structure(s, 100, 42, 1e-9);
        CHECK(reports.size() == 7);
        for (const auto& r : reports) {
            CHECK(r.verdict == Verdict::Pass);
            CHECK(r.points_sampled == 100);
        }
        if (name.starts_with("flat")) CHECK(worst(reports) <= 1e-12);
    }
    CHECK(builtin_names().size() == 4);
}

TEST_CASE("unknown builtin") {
    try {
        builtin("nope");
        FAIL("no error");
    } catch (const LookupError& e) {
        CHECK(std::string(e.what()).find("sasakian-3") != std::string::npos);
    }
}

TEST_CASE("sasakian builder identity") {
    CHECK(sasakian_identity_residual(make_sasakian(1), 100, 42) <= 1e-9);
    CHECK(sasakian_identity_residual(make_sasakian(2), 100, 42) <= 1e-9);
}

TEST_CASE("flipping the sign of A breaks the axioms by about 2") {
    const auto s = builtin("sasakian-3");
    std::vector<expr::Expr> neg;
    for (const auto& c : s.a().components()) neg.push_back(-c);
    const AlmostContactStructure bad("bad", s.f(), s.t(), TensorField(s.chart_ptr(), kOneForm, neg), s.g());
    const auto reports = validate_structure(bad, 100, 42, 1e-9);
    const auto& at = by_id(reports, "AX5");
    CHECK(at.verdict == Verdict::Fail);
    CHECK(at.max_abs_residual == doctest::Approx(2.0));
    CHECK_FALSE(certify(bad, 100, 42, 1e-9).has_value());
}

TEST_CASE("a residual equal to the tolerance passes") {
    CHECK(verdict_for(1e-9, 1e-9) == Verdict::Pass);
    CHECK(verdict_for(std::nextafter(1e-9, 1.0), 1e-9) == Verdict::Fail);
    ResidualTracker t;
    t.add(-3.0, {1.0});
    t.add(2.0, {2.0});
    CHECK(t.max() == 3.0);
    CHECK(t.worst_point() == std::vector<double>{1.0});
}

TEST_CASE("validation contracts") {
    const auto s = builtin("flat-cosymplectic-3");
    CHECK_THROWS_AS(validate_structure(s, 0, 42, 1e-9), ContractError);
    CHECK_THROWS_AS(validate_structure(s, 10, 42, 0.0), ContractError);
    CHECK_THROWS_AS(AlmostContactStructure("x", s.g(), s.t(), s.a(), s.g()), ContractError);
}

TEST_CASE("a singular metric fails every axiom at its point") {
    const auto s = builtin("flat-cosymplectic-3");
    const AlmostContactStructure bad("zero-g", s.f(), s.t(), s.a(), TensorField::zero(s.chart_ptr(), kBilinearForm));
    for (const auto& r : validate_structure(bad, 5, 1, 1e-9)) {
        CHECK(r.verdict == Verdict::Fail);
        CHECK_FALSE(r.worst_point.empty());
    }
}

TEST_CASE("spec file reproducing flat-cosymplectic-3") {
    const auto file = load_spec(kData + "/flat-cosymplectic-3.acm");
    CHECK(file.name() == "flat-cosymplectic-3");
    CHECK(same_fields(file, builtin("flat-cosymplectic-3"), 42));
    CHECK(file.claims(StructureClass::SecondClass));
    CHECK(certify(file, 100, 42, 1e-9).has_value());
}

TEST_CASE("conflicting components") {
    try {
        load_spec(kData + "/broken.acm");
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("conflicting component g[1][1]") != std::string::npos);
    }
}

TEST_CASE("missing [T] gives T = 0, which fails A(T) = 1") {
    const auto s = load_spec(kData + "/missing-T.acm");
    for (double v : evaluate(s.t(), std::vector<double>{0, 0, 0})) CHECK(v == 0.0);
    const auto reports = validate_structure(s, 100, 42, 1e-9);
    CHECK(by_id(reports, "AX5").verdict == Verdict::Fail);
    CHECK(by_id(reports, "AX5").max_abs_residual == doctest::Approx(1.0));
}

TEST_CASE("spec format errors") {
    CHECK_THROWS_AS(parse_spec("coordinates = x y z\n"), FormatError);
    CHECK_THROWS_AS(parse_spec("dimension = 3\ncoordinates = x y\n"), FormatError);
    CHECK_THROWS_AS(parse_spec("dimension = 3\ncoordinates = x y z\n[metric]\ng 4 1 = 1\n"), FormatError);
    CHECK_THROWS_AS(parse_spec("dimension = 3\ncoordinates = x y z\n[metric]\ng 1 1 = w\n"), FormatError);
    CHECK_THROWS_AS(parse_spec("dimension = 3\ncoordinates = x y z\n[Q]\n"), FormatError);
    CHECK_THROWS_AS(parse_spec("dimension = 3\ncoordinates = x y z\nclasses = fancy\n"), FormatError);
    try {
        parse_spec("dimension = 3\ncoordinates = x y z\n[metric]\ng 1 2 = 1\ng 2 1 = 3\n");
        FAIL("no error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
}

TEST_CASE("save then load round-trips") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        const auto s = builtin(name);
        const std::string text = save_spec(s);
        const auto back = parse_spec(text, name);
        CHECK(same_fields(s, back, 7));
        CHECK(back.claims() == s.claims());
        for (std::size_t i = 0; i < s.f().size(); ++i) CHECK(back.f().components()[i] == s.f().components()[i]);
        CHECK(save_spec(back) == text);
    }
}

TEST_CASE("contact form audit") {
    const auto sas = audit_contact_form(builtin("sasakian-3"), 100, 42);
    CHECK(sas.verdict == Verdict::Reported);
    REQUIRE(sas.premise_residual.has_value());
    CHECK(*sas.premise_residual <= 1e-9);
}
