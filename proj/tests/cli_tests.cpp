// End-to-end checks of the census binary: wire formats, exit codes,
// determinism contracts. Takes the binary path as argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int g_failures = 0;

#define EXPECT(cond, msg)                                                          \
    do {                                                                           \
        if (!(cond)) {                                                             \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)  \
                      << "\n";                                                     \
            ++g_failures;                                                          \
        }                                                                          \
    } while (0)

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) {
        r.exit_code = -1;
        return r;
    }
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json(const std::string& text) {
    return nlohmann::json::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <census-binary>\n";
        return 2;
    }
    std::string bin = argv[1];
    std::string tmp = "/tmp/census_cli_test";
    std::system(("rm -rf " + tmp + " && mkdir -p " + tmp).c_str());

    {  // projective count with known value
        RunResult r = run(bin + " count --poly 'x0^4+x1^4-x2^4-x3^4' --bound 1 --projective");
        EXPECT(r.exit_code == 0, "count exit code: " + r.output);
        auto j = parse_json(r.output);
        EXPECT(j["count"] == 32, "Fermat quartic count at B=1");
        EXPECT(j.contains("elapsed_ms") && j.contains("shards"), "count JSON fields");
        EXPECT(j["meta"]["tool"] == "census 0.1.0", "meta tool version");
    }

    {  // antipodal identification halves
        RunResult r = run(bin + " count --poly 'x0^4+x1^4-x2^4-x3^4' --bound 1 --projective --identify-antipodes");
        EXPECT(parse_json(r.output)["count"] == 16, "antipodal identification");
    }

    {  // engine choices agree
        for (std::string e : {"brute", "slice", "sieve"}) {
            RunResult r = run(bin + " count --poly 't1^2+t2^2+t3^2-3' --bound 2 --engine " + e);
            EXPECT(parse_json(r.output)["count"] == 8, "affine sphere count via " + e);
        }
    }

    {  // validation: non-homogeneous form in projective mode names the term, exits 2
        RunResult r = run(bin + " count --poly 'x0^3+x1^2' --bound 5 --projective");
        EXPECT(r.exit_code == 2, "validation exit code");
        EXPECT(r.output.find("x1^2") != std::string::npos, "offending term named: " + r.output);
    }

    {  // parse failure reports a source position, exits 2
        RunResult r = run(bin + " count --poly 't1 + @' --bound 5");
        EXPECT(r.exit_code == 2, "parse failure exit code");
        EXPECT(r.output.find("position") != std::string::npos, "parse position reported");
    }

    {  // grid series: byte-identical CSV across runs and shard counts
        std::string out1 = tmp + "/s1.csv", out2 = tmp + "/s2.csv", out4 = tmp + "/s4.csv";
        std::string base = bin + " count --poly 'x0^5+x1^5-x2^5-x3^5' --projective --engine sieve "
                                 "--grid-start 5 --grid-factor 2 --grid-steps 3 --out ";
        RunResult r1 = run(base + out1);
        RunResult r2 = run(base + out2);
        RunResult r4 = run(bin + " --shards 4 count --poly 'x0^5+x1^5-x2^5-x3^5' "
                           "--projective --engine sieve --grid-start 5 --grid-factor 2 "
                           "--grid-steps 3 --out " + out4);
        EXPECT(r1.exit_code == 0 && r2.exit_code == 0 && r4.exit_code == 0, "grid runs");
        EXPECT(slurp(out1) == slurp(out2), "identical spec gives byte-identical CSV");
        EXPECT(slurp(out1) == slurp(out4), "shard count does not change the CSV");
        EXPECT(slurp(out1).find("# spec ") != std::string::npos, "CSV carries a spec hash header");
    }

    {  // fit and verify round trip through a file
        std::string csv = tmp + "/curve.csv";
        RunResult g = run(bin + " count --poly 't2-t1^3' --grid-start 100 --grid-factor 10 "
                                "--grid-steps 4 --out " + csv);
        EXPECT(g.exit_code == 0, "curve grid run");
        RunResult f = run(bin + " fit --in " + csv);
        auto jf = parse_json(f.output);
        double slope = jf["slope"];
        EXPECT(slope > 0.25 && slope < 0.45, "curve slope near 1/3, got " + f.output);
        RunResult v = run(bin + " verify --in " + csv + " --formula pila --delta 3 --eps 0.1");
        EXPECT(parse_json(v.output)["compliant"] == true, "pila compliance");
    }

    {  // modp summary
        RunResult r = run(bin + " modp --poly 'x0^4+x1^4-x2^4-x3^4' --prime 5");
        auto j = parse_json(r.output);
        EXPECT(j["projective_count"] == 80, "mod-5 projective count");
        EXPECT(j["affine_zero_count"] == 321, "mod-5 affine zeros");
    }

    {  // smooth verdicts
        RunResult r = run(bin + " smooth 'x0^5+x1^5-x2^5-x3^5'");
        EXPECT(parse_json(r.output)["status"] == "certified-smooth-diagonal", "diagonal certificate");
        RunResult s = run(bin + " smooth 'x0^2*x1' --primes 3,5");
        EXPECT(parse_json(s.output)["status"] == "singular-with-witness", "singular witness");
    }

    {  // slice-scan
        RunResult r = run(bin + " slice-scan 't1^4+t2^4+t3^4-1' --direction 1,0,0 --bound 10");
        auto j = parse_json(r.output);
        EXPECT(j["bad_values"].size() == 2, "bad slice count");
        EXPECT(j["bad_values"][0]["kappa"] == -1 && j["bad_values"][0]["reason"] == "singular",
               "bad slice reasons");
        RunResult g = run(bin + " slice-scan 't1^4+t2^4+t3^4-1' --search");
        auto jg = parse_json(g.output);
        EXPECT(jg["good_value"] == 0, "good slice value");
        EXPECT(jg["completion"].size() == 3, "completion matrix emitted");
    }

    {  // lines
        RunResult r = run(bin + " lines --poly 'x0^4+x1^4-x2^4-x3^4' --bound 1");
        auto j = parse_json(r.output);
        EXPECT(j["total"] == 32 && j["on_lines"] == 32 && j["off_lines"] == 0, "quartic line split");
    }

    {  // r3 / r3-batch / equal-sums
        RunResult r = run(bin + " r3 --N 36 --d 3");
        EXPECT(parse_json(r.output)["r"] == 6, "r_3(36)");
        std::string csv = tmp + "/r.csv";
        RunResult b = run(bin + " r3-batch --max 40 --d 3 --out " + csv);
        EXPECT(b.exit_code == 0, "r3-batch");
        std::string data = slurp(csv);
        EXPECT(data.find("36,6") != std::string::npos, "batch CSV rows");
        EXPECT(data.find("\n4,") == std::string::npos, "zero rows omitted");
        RunResult e = run(bin + " equal-sums --poly 't1^3' --s 2 --bound 12");
        EXPECT(parse_json(e.output)["nontrivial"] == 8, "taxicab nontrivial at 12");
    }

    {  // exponents
        RunResult r = run(bin + " exponents --formula theorem1 --d 4 --n 3");
        auto j = parse_json(r.output);
        double v = j["value"];
        EXPECT(std::abs(v - (2.0 + 1.0 / 12)) < 1e-12, "theorem1(4,3) value");
        EXPECT(!j["symbolic"].get<std::string>().empty(), "symbolic form present");
    }

    {  // config file mirrors flags
        std::string cfg = tmp + "/census.cfg";
        std::ofstream(cfg) << "shards = 2\n";
        RunResult r = run(bin + " --config " + cfg + " count --poly 't1^2+t2^2+t3^2-3' --bound 2");
        EXPECT(r.exit_code == 0, "config file accepted");
        EXPECT(parse_json(r.output)["count"] == 8, "config run result");
        EXPECT(parse_json(r.output)["shards"] == 2, "config sets shards");
    }

    {  // resource cap exit code
        RunResult r = run(bin + " --mem-cap 1024 count --poly 'x0^4+x1^4-x2^4-x3^4' --bound 2 "
                                "--projective --engine sieve --shards 1");
        // the default sieve prime for B=2 is tiny; force a big one
        RunResult r2 = run(bin + " --mem-cap 128 count --poly 'x0^4+x1^4-x2^4-x3^4' --bound 10000 "
                                 "--projective --engine sieve");
        EXPECT(r.exit_code == 0 || r.exit_code == 3, "small sieve within cap");
        EXPECT(r2.exit_code == 3, "oversized sieve table aborts with exit 3, got " +
                                      std::to_string(r2.exit_code) + ": " + r2.output);
    }

    if (g_failures == 0) {
        std::cout << "cli_tests: all passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << g_failures << " failure(s)\n";
    return 1;
}
