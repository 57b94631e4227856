// Golden-file style checks on the CLI: deterministic output for three
// canonical commands and the documented exit-code contract.
#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#ifndef GROUPKIT_CLI
#error "GROUPKIT_CLI must point at the built binary"
#endif

namespace {

struct RunOutput {
    int exit_code;
    std::string out;
};

RunOutput run_cli(const std::string& args) {
    std::string cmd = std::string(GROUPKIT_CLI) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

// the echoed command line contains the binary path; drop it for comparison
std::string strip_command_line(const std::string& s) {
    size_t nl = s.find('\n');
    if (s.rfind("command:", 0) == 0 && nl != std::string::npos) return s.substr(nl + 1);
    return s;
}

}  // namespace

TEST_CASE("golden: hall-paige on an even cyclic group") {
    auto r = run_cli("hall-paige --group cyclic:6");
    CHECK(r.exit_code == 1);
    CHECK(strip_command_line(r.out) ==
          "group: Z6 (order 6)\n"
          "verdict: false\n"
          "product_form: false\n"
          "sylow_form: false\n"
          "nodes: 0\n"
          "params: {\"budget\":10000000,\"seed\":1,\"tau\":0}\n");
}

TEST_CASE("golden: zero-sum decision on the classical counterexample") {
    auto r = run_cli("zero-sum decide --group \"product(cyclic:4,elem2:2)\" --parts 2,2,2,3,3,3");
    CHECK(r.exit_code == 1);
    CHECK(strip_command_line(r.out) ==
          "group: Z4xZ2^2 (order 16)\n"
          "verdict: no\n"
          "f: 4\n"
          "involutions: 7\n"
          "reason: condition (2): max M >= 5 required when f = m2 + 1\n"
          "nodes: 0\n"
          "params: {\"budget\":10000000,\"seed\":1,\"tau\":1}\n");
}

TEST_CASE("golden: word normalization") {
    auto r = run_cli("word normalize --group cyclic:5 --arity 2 --word \"g:3 v1 g:0 v2^-1 v2 g:4\"");
    CHECK(r.exit_code == 0);
    CHECK(strip_command_line(r.out) ==
          "group: Z5 (order 5)\n"
          "verdict: normalized\n"
          "length: 1\n"
          "linear: true\n"
          "normal_form: g:3 v1 g:4\n"
          "nodes: 0\n"
          "params: {\"budget\":10000000,\"seed\":1,\"tau\":0}\n");
}

TEST_CASE("exit code contract") {
    CHECK(run_cli("hall-paige --group cyclic:5").exit_code == 0);       // verified
    CHECK(run_cli("sequencing --group sym:3").exit_code == 1);          // exhaustive none
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);               // usage
    CHECK(run_cli("hall-paige --group nosuch:4").exit_code == 2);       // bad family
    CHECK(run_cli("sequencing --group cyclic:16 --budget 10").exit_code == 3);  // budget
}

TEST_CASE("json output carries the same verdict") {
    auto r = run_cli("hall-paige --group cyclic:6 --format json");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"verdict\": \"false\"") != std::string::npos);
    CHECK(r.out.find("\"product_form\": false") != std::string::npos);
}

TEST_CASE("slice files drive the matching solver") {
    std::string path = "/tmp/groupkit_slice_test.txt";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f);
        fputs("cyclic:3\n0 1 2\n0 1 2\n0 1 2\n", f);
        fclose(f);
    }
    auto r = run_cli("complete-mapping --slice-file " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict: found") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cayley table files load") {
    std::string path = "/tmp/groupkit_table_test.txt";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f);
        fputs("2\n0 1\n1 0\n", f);
        fclose(f);
    }
    auto r = run_cli("group --table " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("order: 2") != std::string::npos);
    std::remove(path.c_str());

    // a broken table is a usage error
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f);
        fputs("2\n0 1\n0 1\n", f);
        fclose(f);
    }
    CHECK(run_cli("group --table " + path).exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("reports are deterministic across runs") {
    std::string cmd = "gadget comparator --group cyclic:101 --kind div --seed 7";
    auto r1 = run_cli(cmd);
    auto r2 = run_cli(cmd);
    CHECK(r1.exit_code == 0);
    CHECK(strip_command_line(r1.out) == strip_command_line(r2.out));
}
