// End-to-end checks of the command-line tool; takes the binary path as argv[1].
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult res;
    std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) {
        res.output = "popen failed";
        return res;
    }
    std::array<char, 4096> buf;
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) res.output += buf.data();
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

void expect(bool ok, const std::string& what, const RunResult& res) {
    if (!ok) {
        ++failures;
        std::cout << "[FAIL] " << what << "\n  exit=" << res.exit_code << "\n  output: " << res.output
                  << "\n";
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-binary>\n";
        return 2;
    }
    const std::string bin = argv[1];

    RunResult r = run(bin + " cn --montesinos 1/3 --n 3 --route all --format json");
    expect(r.exit_code == 0 && contains(r.output, "\"formula\":9") &&
               contains(r.output, "\"engine\":9") && contains(r.output, "\"oracle\":9") &&
               contains(r.output, "\"agree\":true"),
           "cn all routes on 1/3", r);

    RunResult r2 = run(bin + " cn --montesinos 1/3 --n 3 --route all --format json");
    expect(r2.exit_code == 0 && r.output == r2.output, "byte-identical JSON on repeat", r2);

    r = run(bin + " cn --montesinos 1/3 --n 4");
    expect(r.exit_code == 1, "even n is an input error", r);

    r = run(bin + " cn --word 'rt(3)' --n 5 --route engine --format json");
    expect(r.exit_code == 0 && contains(r.output, "\"engine\":5"), "engine route on rt(3)", r);

    r = run(bin + " cn --word 'rt(3)' --montesinos 1/3 --n 3");
    expect(r.exit_code == 1, "two input forms rejected", r);

    r = run(bin + " cn --n 3 --route all");
    expect(r.exit_code == 1, "missing input rejected", r);

    r = run(bin + " invariant --word 'rt(0*rt(3))' --n 3 --format json");
    expect(r.exit_code == 0 && contains(r.output, "\"value_plus\":9") &&
               contains(r.output, "\"cn\":9"),
           "invariant on the mirror trefoil word", r);

    r = run(bin + " invariant --word 'rt(-3)' --n 3 --format json");
    expect(r.exit_code == 0 && contains(r.output, "\"value_plus\":3") &&
               contains(r.output, "\"writhe_parity\":1"),
           "invariant on the -3 twist closure", r);

    r = run(bin + " invariant --word 0 --n 3");
    expect(r.exit_code == 1 && contains(r.output, "components"),
           "two-component closure rejected by invariant", r);

    r = run(bin + " pd --word 'rt(3)'");
    expect(r.exit_code == 0 && contains(r.output, "\"n_components\":1") &&
               contains(r.output, "\"crossings\""),
           "pd export", r);

    // round-trip: pd output feeds the oracle route
    {
        RunResult pd = run(bin + " pd --montesinos 1/3");
        std::ofstream f("cli_test_pd.json");
        f << pd.output;
        f.close();
        r = run(bin + " cn --pd cli_test_pd.json --n 3 --route oracle --format json");
        expect(r.exit_code == 0 && contains(r.output, "\"oracle\":9"), "oracle route from PD file", r);
        std::remove("cli_test_pd.json");
    }

    r = run(bin + " check --n-list 3");
    expect(r.exit_code == 0 && contains(r.output, "all checks passed"), "minimal check sweep", r);

    r = run(bin + " check");
    expect(r.exit_code == 0 && contains(r.output, "all checks passed"),
           "default check sweep over n=3..15", r);

    r = run(bin + " cn --word zzz --n 3");
    expect(r.exit_code == 1, "syntax errors exit 1", r);

    if (failures) {
        std::cout << failures << " CLI test(s) failed\n";
        return 1;
    }
    std::cout << "all CLI tests passed\n";
    return 0;
}
