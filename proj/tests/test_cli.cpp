#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "acm/cli.hpp"

using nlohmann::json;

namespace {

const std::string kData = ACM_TEST_DATA_DIR;
const std::string kGolden = ACM_GOLDEN_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = acm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> row_ids(const std::string& table) {
    std::vector<std::string> ids;
    std::istringstream in(table);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#' || line.starts_with("id ")) continue;
        std::istringstream words(line);
        std::string id;
        words >> id;
        ids.push_back(id);
    }
    return ids;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("validate") {
    CHECK(run({"validate", "--builtin", "sasakian-3"}).code == 0);
    const auto broken = run({"validate", "--spec", kData + "/broken.acm"});
    CHECK(broken.code == 2);
    CHECK(broken.err.find("conflicting component g[1][1]") != std::string::npos);

    const auto many = run({"validate", "--builtin", "flat-cosymplectic-5", "--points", "500", "--seed", "7"});
    CHECK(many.code == 0);
    CHECK(many.out.find("# points: 500") != std::string::npos);

    const auto missing = run({"validate", "--spec", kData + "/missing-T.acm"});
    CHECK(missing.code == 1);
    CHECK(missing.out.find("AX5") != std::string::npos);

    const auto js = run({"validate", "--builtin", "sasakian-5", "--format", "json"});
    CHECK(js.code == 0);
    const auto doc = json::parse(js.out);
    REQUIRE(doc.is_array());
    for (const auto& r : doc)
        if (r["check_id"].get<std::string>().starts_with("AX")) {
            CHECK(r["verdict"] == "pass");
            CHECK(r["points_sampled"] == 100);
        }
}

TEST_CASE("classify") {
    const auto sas = run({"classify", "--builtin", "sasakian-3"});
    CHECK(sas.code == 0);
    CHECK(sas.out.find("first-class: yes; second-class: no") != std::string::npos);
    const auto flat = run({"classify", "--builtin", "flat-cosymplectic-3"});
    CHECK(flat.out.find("first-class: yes; second-class: yes") != std::string::npos);

    const auto guarded = run({"classify", "--spec", kData + "/unvalidated.acm"});
    CHECK(guarded.code == 2);
    CHECK(guarded.err.find("structure not validated") != std::string::npos);
    const auto forced = run({"classify", "--spec", kData + "/unvalidated.acm", "--force"});
    CHECK(forced.code == 0);
    CHECK(forced.out.find("unvalidated") != std::string::npos);

    const auto js = json::parse(run({"classify", "--builtin", "sasakian-5", "--format", "json"}).out);
    CHECK(js["first_class"] == true);
    CHECK(js["second_class"] == false);
    CHECK(js["label"] == "first-class");
    CHECK(js["second_class_residual"].get<double>() > 0.1);
}

TEST_CASE("verify assert suite") {
    const auto r = run({"verify", "--builtin", "sasakian-3", "--mode", "assert"});
    CHECK(r.code == 0);
    const auto ids = row_ids(r.out);
    for (const char* id : {"E11", "E12", "E13", "E14", "E15", "E22", "T2.1", "T2.2", "T2.4", "T2.5", "E5", "E6",
                           "T3.1", "T3.2"})
        CHECK(contains(ids, id));
    CHECK_FALSE(contains(ids, "T2.7"));
}

TEST_CASE("verify single audit as json") {
    const auto r = run({"verify", "--builtin", "flat-cosymplectic-3", "--check", "T2.7", "--format", "json"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["check_id"] == "T2.7");
    CHECK(doc[0]["mode"] == "audit");
    CHECK(doc[0]["verdict"] == "reported");
    CHECK(doc[0]["premise_residual"].is_number());
    CHECK(doc[0]["max_abs_residual"].is_number());
    CHECK(r.out == slurp(kGolden + "/verify_flat3_T2.7.json"));
}

TEST_CASE("verify with repeated checks keeps registry order") {
    const auto r = run({"verify", "--builtin", "sasakian-3", "--check", "T2.4", "--check", "E11", "--format", "json"});
    const auto doc = json::parse(r.out);
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["check_id"] == "E11");
    CHECK(doc[1]["check_id"] == "T2.4");
}

TEST_CASE("audit command never fails the run") {
    for (const char* name : {"flat-cosymplectic-3", "sasakian-3", "flat-cosymplectic-5", "sasakian-5"}) {
        const auto r = run({"audit", "--builtin", name, "--format", "json"});
        CHECK(r.code == 0);
        const auto doc = json::parse(r.out);
        CHECK(doc.size() == 4);
        for (const auto& rep : doc) CHECK(rep["verdict"] == "reported");
    }
}

TEST_CASE("usage errors") {
    CHECK(run({"verify", "--check", "BOGUS"}).code == 2);
    CHECK(run({"verify", "--builtin", "sasakian-3", "--check", "BOGUS"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"validate", "--builtin", "nope"}).code == 2);
    CHECK(run({"validate", "--builtin", "sasakian-3", "--spec", kData + "/broken.acm"}).code == 2);
    CHECK(run({"validate", "--builtin", "sasakian-3", "--points", "0"}).code == 2);
    CHECK(run({"verify", "--builtin", "sasakian-3", "--format", "yaml"}).code == 2);
}

TEST_CASE("list") {
    const auto r = run({"list"});
    CHECK(r.code == 0);
    const auto ids = row_ids(r.out);
    CHECK(ids.size() >= 20);
    CHECK(r.out.find("T2.4  assert-equivalence  §2 Theorem 2.4") != std::string::npos);

    const auto audit = row_ids(run({"list", "--mode", "audit"}).out);
    CHECK(audit == std::vector<std::string>{"T2.3", "T2.6", "T2.7", "C2.1"});

    const auto js = run({"list", "--format", "json"});
    const auto doc = json::parse(js.out);
    CHECK(doc.size() == ids.size());
    CHECK(doc[0].contains("id"));
    CHECK(doc[0].contains("mode"));
    CHECK(doc[0].contains("location"));
    CHECK(doc[0].contains("description"));
    CHECK(js.out == slurp(kGolden + "/list.json"));
}

TEST_CASE("json output is byte-stable") {
    const std::vector<std::string> args{"verify", "--builtin", "sasakian-5", "--format", "json"};
    CHECK(run(args).out == run(args).out);
}
