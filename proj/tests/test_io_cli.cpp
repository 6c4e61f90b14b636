#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "piconn/cli.hpp"
#include "piconn/io.hpp"

#include "fixture_helpers.hpp"

using namespace piconn;
using testutil::fixture_path;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

PiManifoldInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return load_instance(in, "<test>");
}

// A minimal valid three-dimensional document that individual tests corrupt.
std::string minimal_document() {
    return R"({
      "dimension": 3,
      "parameters": ["p"],
      "basis": ["e0", "e1", "e2"],
      "brackets": [],
      "phi": {"e1": {"e2": "1"}, "e2": {"e1": "1"}},
      "xi": {"e0": "1"},
      "eta": {"e0": "1"},
      "metric": {"e0": {"e0": "1"}, "e1": {"e1": "1"}, "e2": {"e2": "1"}}
    })";
}

std::string replaced(std::string text, const std::string& needle, const std::string& with) {
    const size_t at = text.find(needle);
    REQUIRE(at != std::string::npos);
    return text.replace(at, needle.size(), with);
}

}  // namespace

TEST_CASE("well-formed documents load with normalized brackets") {
    const PiManifoldInstance inst = parse_instance(replaced(
        minimal_document(), "\"brackets\": []",
        "\"brackets\": [{\"left\": \"e2\", \"right\": \"e1\", \"result\": {\"e0\": \"p\"}}]"));
    CHECK(inst.dim() == 3);
    // Stored antisymmetrically under the declared order.
    CHECK(inst.algebra().bracket_basis(2, 1)[0] == Scalar::variable(inst.params(), "p"));
    CHECK(inst.algebra().bracket_basis(1, 2)[0] == -Scalar::variable(inst.params(), "p"));
}

TEST_CASE("malformed documents raise input errors that name the problem") {
    CHECK_THROWS_WITH_AS(parse_instance("{"), doctest::Contains("<test>"), InputError);
    CHECK_THROWS_WITH_AS(parse_instance(replaced(minimal_document(), "\"dimension\": 3",
                                                 "\"dimension\": 4")),
                         doctest::Contains("odd"), InputError);
    CHECK_THROWS_WITH_AS(parse_instance(replaced(minimal_document(), "\"xi\": {\"e0\": \"1\"}",
                                                 "\"xi\": {\"e9\": \"1\"}")),
                         doctest::Contains("unknown basis label"), InputError);
    CHECK_THROWS_WITH_AS(parse_instance(replaced(minimal_document(), "\"eta\": {\"e0\": \"1\"},",
                                                 "")),
                         doctest::Contains("missing field"), InputError);
    CHECK_THROWS_WITH_AS(parse_instance(replaced(minimal_document(), "{\"e2\": \"1\"}",
                                                 "{\"e2\": \"1 + \"}")),
                         doctest::Contains("position"), InputError);
    CHECK_THROWS_WITH_AS(
        parse_instance(replaced(minimal_document(), "\"basis\": [\"e0\", \"e1\", \"e2\"]",
                                "\"basis\": [\"e0\", \"e1\", \"e1\"]")),
        doctest::Contains("duplicate basis label"), InputError);

    const std::string diagonal = replaced(
        minimal_document(), "\"brackets\": []",
        "\"brackets\": [{\"left\": \"e1\", \"right\": \"e1\", \"result\": {\"e0\": \"1\"}}]");
    CHECK_THROWS_WITH_AS(parse_instance(diagonal), doctest::Contains("itself"), InputError);

    const std::string duplicate = replaced(
        minimal_document(), "\"brackets\": []",
        "\"brackets\": [{\"left\": \"e1\", \"right\": \"e2\", \"result\": {\"e0\": \"1\"}},"
        " {\"left\": \"e2\", \"right\": \"e1\", \"result\": {\"e0\": \"1\"}}]");
    CHECK_THROWS_WITH_AS(parse_instance(duplicate), doctest::Contains("duplicate bracket"),
                         InputError);
}

TEST_CASE("substitution sources parse and reject undeclared names") {
    const PiManifoldInstance inst = parse_instance(minimal_document());
    {
        std::istringstream in(R"({"p": "2/3"})");
        const Substitution s = load_substitution(in, inst.params(), "<test>");
        CHECK(s.value_of("p") == make_rational(2, 3));
    }
    {
        std::istringstream in(R"({"p": -4})");
        const Substitution s = load_substitution(in, inst.params(), "<test>");
        CHECK(s.value_of("p") == make_rational(-4));
    }
    {
        std::istringstream in(R"({"q": "1"})");
        CHECK_THROWS_AS((void)load_substitution(in, inst.params(), "<test>"), InputError);
    }
    CHECK(parse_substitution_arg("p=-7/2", inst.params()).value_of("p") ==
          make_rational(-7, 2));
    CHECK_THROWS_AS((void)parse_substitution_arg("p", inst.params()), InputError);
    CHECK_THROWS_AS((void)parse_substitution_arg("p=1,p=2", inst.params()), InputError);
    CHECK_THROWS_AS((void)parse_substitution_arg("q=1", inst.params()), InputError);
}

TEST_CASE("tensor serialization is sorted, canonical, and round-trips by eye") {
    const PiManifoldInstance inst = parse_instance(minimal_document());
    Tensor t(3, {Slot::Lower, Slot::Lower});
    t.at(2, 1) = Scalar(2) * Scalar::variable(inst.params(), "p");
    t.at(0, 1) = Scalar(make_rational(-1, 2));
    const auto list = tensor_component_list(t);
    CHECK(list.dump() == R"([{"index":[0,1],"value":"-1/2"},{"index":[2,1],"value":"2*p"}])");
    CHECK(tensor_to_text("T", t) == "T[0,1] = -1/2\nT[2,1] = 2*p\n");
    CHECK(tensor_to_text("T", Tensor(3, {Slot::Lower})) == "T: all components zero\n");
}

TEST_CASE("the command line front end reports and exits as documented") {
    const std::string ex_l = fixture_path("EX-L.json");

    const CliResult validate = run({"validate", fixture_path("EX-0.json")});
    CHECK(validate.exit_code == 0);
    CHECK(validate.out.find("all checks passed") != std::string::npos);

    const CliResult report = run({"report", ex_l});
    CHECK(report.exit_code == 0);
    CHECK(report.out.rfind("class: F7\n") == report.out.size() - 10);

    const CliResult tensor = run({"tensor", ex_l, "--which", "T2", "--subst",
                                  "m1=1,m2=-2,l1=1,l2=2,l3=-1,l4=3", "--format", "json"});
    CHECK(tensor.exit_code == 0);
    CHECK(tensor.out.find(R"({"index":[2,1,0],"value":"2"})") != std::string::npos);

    const CliResult classify = run({"classify", ex_l, "--format", "json"});
    CHECK(classify.exit_code == 0);
    CHECK(classify.out.find("\"F7\": true") != std::string::npos);
    CHECK(classify.out.find("\"U0hat\": true") != std::string::npos);
    CHECK(classify.out.find("\"F0\": false") != std::string::npos);

    const CliResult missing = run({"classify", "/no/such/file.json"});
    CHECK(missing.exit_code == 2);
    CHECK_FALSE(missing.err.empty());

    const CliResult bad_flag = run({"tensor", ex_l, "--which", "bogus"});
    CHECK(bad_flag.exit_code == 2);

    const CliResult bad_subst = run({"check", ex_l, "--subst", "zz=1"});
    CHECK(bad_subst.exit_code == 2);

    const CliResult no_command = run({});
    CHECK(no_command.exit_code == 2);
}

TEST_CASE("a corrupted instance is reported and exits with failure") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "piconn_broken_phi.json").string();
    {
        std::ofstream out(path);
        out << replaced(minimal_document(), "\"phi\": {\"e1\": {\"e2\": \"1\"}, \"e2\": {\"e1\": \"1\"}}",
                        "\"phi\": {\"e1\": {\"e1\": \"1\"}, \"e2\": {\"e1\": \"1\"}}");
    }
    const CliResult broken = run({"validate", path});
    CHECK(broken.exit_code == 1);
    CHECK(broken.out.find("FAIL") != std::string::npos);

    const CliResult gated = run({"classify", path});
    CHECK(gated.exit_code == 1);
    CHECK_FALSE(gated.err.empty());
}

TEST_CASE("repeated runs are byte-identical, including the seeded trials") {
    const std::string ex_l = fixture_path("EX-L.json");
    setenv("PI_CONN_SEED", "12345", 1);
    const CliResult first =
        run({"check", ex_l, "--suite", "coincidence", "--fuzz", "3", "--format", "json"});
    const CliResult second =
        run({"check", ex_l, "--suite", "coincidence", "--fuzz", "3", "--format", "json"});
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("fuzz_trial_01") != std::string::npos);

    setenv("PI_CONN_SEED", "not-a-number", 1);
    const CliResult bad_seed = run({"check", ex_l, "--suite", "coincidence", "--fuzz", "1"});
    CHECK(bad_seed.exit_code == 2);
    unsetenv("PI_CONN_SEED");

    const CliResult report1 = run({"report", ex_l, "--format", "json"});
    const CliResult report2 = run({"report", ex_l, "--format", "json"});
    CHECK(report1.out == report2.out);
}
