#include "doctest.h"

#include "json.hpp"

#include "potts/cli.hpp"

using potts::cli::run;
using json = nlohmann::json;

namespace {

json out_of(const std::vector<std::string>& args, int expect_exit = 0) {
    auto r = run(args);
    CHECK(r.exit_code == expect_exit);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("cli: pgl2") {
    auto o = out_of({"pgl2", "order", "--field", "7", "--matrix", "[[3,0],[0,1]]"});
    CHECK(o["order"] == 6);
    auto c = out_of({"pgl2", "classify", "--field", "5", "--generators", "[[[2,0],[0,1]],[[1,1],[0,1]]]"});
    CHECK(c["size"] == 20);
    auto s = out_of({"--field", "3^2", "pgl2", "survey"});
    CHECK(s["order_p_count"] == 80);
    CHECK(s["fixed_point_union_size"] == 10);
}

TEST_CASE("cli: curves") {
    auto a = out_of({"curve", "aut", "--field", "7", "--N", "3", "--A", "0", "--B", "-1", "--oracle"});
    CHECK(a["class"] == "TwoTimesDihedral2N");
    CHECK(a["order"] == 24);
    CHECK(a["oracle_order"] == 24);
    auto r = run({"curve", "aut", "--field", "7", "--N", "3", "--A", "0", "--B", "-1", "--oracle"});
    CHECK(r.out.find("\"class\"") < r.out.find("\"order\""));
    CHECK(r.out.find("\"order\"") < r.out.find("\"oracle_order\""));

    auto w = out_of({"curve", "iso", "--variant", "wild", "--field", "3", "--A1", "0", "--B1", "2", "--A2", "2", "--B2", "0"});
    CHECK(w["geometric"] == true);
    CHECK(w["witness"].is_object());

    auto i = out_of({"curve", "info", "--field", "7", "--N", "3", "--A", "1", "--B", "3"});
    CHECK(i["genus"] == 2);
    CHECK(i["relations"]["all_pass"] == true);
    CHECK(i["A"] == json::array({1}));
}

TEST_CASE("cli: elements accept coefficient arrays") {
    auto a = out_of({"curve", "info", "--field", "3^2", "--N", "5", "--A", "[0,1]", "--B", "1"});
    CHECK(a["A"] == json::array({0, 1}));
    CHECK(run({"curve", "info", "--field", "3^2", "--N", "5", "--A", "[0,3]", "--B", "1"}).exit_code == 2);
}

TEST_CASE("cli: poly, wildnorm, picard, moduli") {
    CHECK(out_of({"poly", "psi", "--n", "7"})["psi"] == json::array({"-1", "-2", "1", "1"}));
    CHECK(out_of({"poly", "chi", "--n", "5"})["chi"] == json::array({"-1/2^2", "1/2^1", "1"}));
    CHECK(out_of({"poly", "reduce", "--n", "5", "--p", "5"})["equals_v_minus_1_power"] == true);
    auto j = out_of({"wildnorm", "j", "--field", "7", "--p", "3", "--t", "2", "--psi", "1", "--U", "1", "--A", "1",
                     "--B", "3"});
    CHECK(j["j"] == json::array({1}));
    CHECK(j["delta"] == json::array({3}));
    auto v = out_of({"wildnorm", "verify-resultant", "--field", "11", "--p", "5", "--trials", "20"});
    CHECK(v["failures"] == 0);
    CHECK(out_of({"picard", "characters", "--N", "5"})["generated_order"] == 20);
    CHECK(out_of({"picard", "wild", "--p", "5"})["group"] == "Z/2 x (1 + zA)");
    auto c = out_of({"moduli", "census", "--variant", "wild", "--field", "3"});
    CHECK(c["classes"] == 2);
    auto csv = run({"--csv", "moduli", "census", "--variant", "wild", "--field", "3"});
    CHECK(csv.out.rfind("A,B,j,class\n", 0) == 0);
    CHECK(out_of({"moduli", "cusps", "--N", "5"})["cusps"][1]["nodes"] == 1);
    CHECK(out_of({"moduli", "ring", "--N", "5", "--p", "5"})["multiplicity"] == 2);
}

TEST_CASE("cli: exit codes") {
    auto bad = out_of({"pgl2", "order", "--field", "7", "--matrix", "[[3,0],[0,1"}, 2);
    CHECK(bad["error"]["code"] == "MalformedInput");
    out_of({"pgl2", "order", "--matrix", "[[3,0],[0,1]]"}, 2);
    out_of({"curve", "info", "--field", "7", "--N", "4", "--A", "1", "--B", "3"}, 1);
    auto dom = out_of({"curve", "info", "--field", "6", "--N", "3"}, 1);
    CHECK(dom["error"]["code"] == "NotPrime");
    out_of({"nonsense"}, 2);
    out_of({"poly", "phi", "--n", "x"}, 2);
    CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("cli: output is reproducible") {
    const std::vector<std::string> args{"wildnorm", "verify-resultant", "--field", "31", "--p", "3", "--trials", "10",
                                        "--seed", "7"};
    CHECK(run(args).out == run(args).out);
    auto other = args;
    other.back() = "8";
    CHECK(run(args).out != run(other).out);
}
