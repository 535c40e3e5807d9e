// End-to-end contract test for the rsz_cli binary (path given as argv[1]):
// exit codes, subcommand wiring, byte-stable CSV output, frozen game output.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
int g_failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAIL  " << what << '\n';
    }
}

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    Result r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-rsz_cli>\n";
        return 1;
    }
    g_cli = argv[1];

    // ---- exit-code contract -------------------------------------------
    check(run("").code == 2, "no subcommand exits 2");
    {
        auto r = run("--help");
        check(r.code == 0, "--help exits 0");
        check(r.out.find("bench") != std::string::npos &&
                  r.out.find("verify") != std::string::npos &&
                  r.out.find("game") != std::string::npos,
              "--help lists the subcommands");
    }
    check(run("bench --ops grow:10 --impl bogus").code == 2, "unknown impl exits 2");
    check(run("bench --ops nonsense:10").code == 2, "bad workload exits 2");
    check(run("bench --impl tiered").code == 2, "missing --ops exits 2");
    check(run("bench --ops grow:10 --impl geometric --alpha 0").code == 2,
          "zero alpha exits 2");
    check(run("bench --ops grow:10 --impl tiered --r 1").code == 2,
          "r below 2 exits 2");
    check(run("verify bogus").code == 2, "unknown suite exits 2");
    check(run("game solve --n 7 --k 2 --l 1").code == 2,
          "slack without divisibility exits 2");

    // ---- bench CSV ----------------------------------------------------
    const std::string header =
        "op_index,op_kind,N,live_words,peak_words_since_last_row,assignments_total";
    {
        auto r = run("bench --impl tiered --r 2 --ops grow:100 --sample 10");
        check(r.code == 0, "bench exits 0");
        check(first_line(r.out) == header, "bench CSV header bytes");
        check(count_lines(r.out) == 13, "bench row count (12 rows + header)");
        auto again = run("bench --impl tiered --r 2 --ops grow:100 --sample 10");
        check(r.out == again.out, "bench output is byte-stable");
    }
    {
        auto a = run("bench --impl tiered --ops mix:2000:0.6 --seed 5 --sample 100");
        auto b = run("bench --impl tiered --ops mix:2000:0.6 --seed 5 --sample 100");
        auto c = run("bench --impl tiered --ops mix:2000:0.6 --seed 6 --sample 100");
        check(a.code == 0 && b.code == 0 && c.code == 0, "seeded bench runs exit 0");
        check(a.out == b.out, "equal seeds give identical CSV");
        check(a.out != c.out, "different seeds give different CSV");
    }
    {
        const std::string path = "test_cli_bench.csv";
        auto to_file = run("bench --impl tiered --ops sawtooth:50:2 --sample 25 --csv " + path);
        auto to_stdout = run("bench --impl tiered --ops sawtooth:50:2 --sample 25");
        check(to_file.code == 0, "bench --csv exits 0");
        check(to_file.out.empty(), "bench --csv keeps stdout clean");
        check(slurp(path) == to_stdout.out, "bench --csv file matches stdout bytes");
        std::remove(path.c_str());
    }
    for (const char* impl : {"naive", "geometric", "hat", "brodnik", "deque"}) {
        auto r = run(std::string("bench --impl ") + impl +
                     " --ops grow:200,shrink:150 --sample 100");
        check(r.code == 0, std::string("bench runs impl ") + impl);
        check(first_line(r.out) == header, std::string("CSV header for ") + impl);
    }
    check(run("bench --impl geometric --alpha 3/2 --ops grow:500").code == 0,
          "rational alpha accepted");
    check(run("bench --impl tiered --r 4 --chunk 1 --ops mix:3000:0.55:11").code == 0,
          "auto chunking accepted");

    // ---- verify suites -------------------------------------------------
    for (const char* suite : {"space", "amortized", "oracle", "access"}) {
        auto r = run(std::string("verify ") + suite);
        check(r.code == 0, std::string("verify ") + suite + " exits 0");
        check(!r.out.empty(), std::string("verify ") + suite + " prints checks");
        std::istringstream lines(r.out);
        std::string line;
        bool all_pass = true;
        while (std::getline(lines, line))
            if (line.rfind("PASS", 0) != 0) all_pass = false;
        check(all_pass, std::string("verify ") + suite + " lines all PASS");
    }

    // ---- game subcommands (frozen bytes) --------------------------------
    {
        auto r = run("game solve --n 5 --k 2");
        check(r.code == 0, "game solve exits 0");
        check(r.out ==
                  "N=5 k=2 l=0 n=2 cost=8 amortized=1.600000\n"
                  "optimal state: (2,3)\n",
              "game solve output");
    }
    {
        auto r = run("game solve --n 10 --k 2 --l 1");
        check(r.code == 0, "game solve with slack exits 0");
        check(r.out ==
                  "N=10 k=2 l=1 n=4 cost=16 amortized=1.600000\n"
                  "optimal state: (4,6)\n",
              "game solve output with slack");
    }
    {
        auto r = run("game solve --n 1000000 --k 4");
        check(r.code == 0, "game solve handles large item counts");
        check(r.out ==
                  "N=1000000 k=4 l=0 n=68 cost=54008524 amortized=54.008524\n"
                  "optimal state: (67,2278,52394,945261)\n",
              "large game solve output");
    }
    {
        auto r = run("game replay --n 4 --k 2");
        check(r.code == 0, "game replay exits 0");
        check(r.out ==
                  "   1: subarray 2  cost 1  state (0,1)\n"
                  "   2: subarray 1  cost 1  state (1,1)\n"
                  "   3: subarray 2  cost 3  state (0,3)\n"
                  "   4: subarray 1  cost 1  state (1,3)\n"
                  "total cost 6, final state (1,3)\n",
              "game replay output");
    }
    {
        auto r = run("game counter --k 2 --steps 5");
        check(r.code == 0, "game counter exits 0");
        check(r.out ==
                  "   1: digit 2  cost 1  a=(0,1) b=(0,1)\n"
                  "   2: digit 1  cost 1  a=(1,1) b=(1,1)\n"
                  "   3: digit 2  cost 3  a=(0,3) b=(0,2)\n"
                  "   4: digit 1  cost 1  a=(1,3) b=(1,2)\n"
                  "   5: digit 1  cost 2  a=(2,3) b=(2,2)\n"
                  "total cost 8\n",
              "game counter output");
    }
    {
        auto r = run("game sweep --nmax 20 --kmax 4");
        check(r.code == 0, "game sweep exits 0");
        check(first_line(r.out) == "N,k,l,n,cost,amortized", "sweep CSV header");
        check(count_lines(r.out) == 81, "sweep row count (20*4 + header)");
        check(r.out.find("5,2,0,2,8,1.600000\n") != std::string::npos,
              "sweep contains the k=2 N=5 row");
    }
    {
        auto r = run("game sweep --nmax 10 --kmax 3 --l 1");
        check(r.code == 0, "game sweep with slack exits 0");
        check(count_lines(r.out) == 16, "slack sweep keeps only divisible N");
    }

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << g_failures << " check(s) failed\n";
    return 1;
}
