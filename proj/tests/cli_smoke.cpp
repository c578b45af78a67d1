// End-to-end smoke checks for the installed command-line tool. The binary
// path is injected by the build as AOIMFG_CLI_PATH; every check shells out
// with popen, captures stdout, and inspects the exit status.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <sys/wait.h>

namespace {

int g_failures = 0;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string("\"") + AOIMFG_CLI_PATH + "\" " + args +
                      " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::fprintf(stderr, "FAIL popen: %s\n", cmd.c_str());
        ++g_failures;
        return {-1, ""};
    }
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -2;
    return {code, out};
}

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::fprintf(stderr, "ok: %s\n", what.c_str());
    } else {
        std::fprintf(stderr, "FAIL: %s\n", what.c_str());
        ++g_failures;
    }
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string make_temp_dir() {
    char tmpl[] = "/tmp/aoimfg_cli_XXXXXX";
    char* dir = mkdtemp(tmpl);
    if (!dir) {
        std::fprintf(stderr, "FAIL: mkdtemp\n");
        ++g_failures;
        return "/tmp";
    }
    return dir;
}

void write_text(const std::string& path, const std::string& content) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "FAIL: fopen %s\n", path.c_str());
        ++g_failures;
        return;
    }
    std::fputs(content.c_str(), f);
    std::fclose(f);
}

bool file_exists(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "r");
    if (f) std::fclose(f);
    return f != nullptr;
}

}  // namespace

int main() {
    // Closed-form age in the no-waiting limit: 1/lambda + 1/mu = 2.25.
    RunResult r = run("aoi --scheme wp --lambda 0.8 --mu 1 --k-inf");
    expect(r.exit_code == 0 && contains(r.out, "2.25"), "aoi closed form");

    r = run("mfe --lambda 0.8 --mu 1 --gamma 5 --cs 0.1 --ct 0.2 "
            "--cbudget 0.4");
    expect(r.exit_code == 0 && contains(r.out, "CASE2") &&
               contains(r.out, "0.947656821925") &&
               contains(r.out, "6.31315369735"),
           "mfe classification and equilibrium rate");

    r = run("equilibrium --lambda 0.8 --mu 1 --gamma 2 --w 1");
    expect(r.exit_code == 0 && contains(r.out, "0.239741197865"),
           "equilibrium fractions");

    r = run("aoi --scheme wp --mu 1 --k 2");
    expect(r.exit_code == 2, "aoi without --lambda exits 2");

    r = run("aoi --scheme sideways --lambda 1 --mu 1 --k 2");
    expect(r.exit_code == 2, "invalid --scheme exits 2");

    r = run("frobnicate");
    expect(r.exit_code == 2, "unknown subcommand exits 2");

    r = run("aoi --scheme wp --lambda 1 --mu 1 --k 0");
    expect(r.exit_code == 2, "k = 0 is rejected with exit 2");

    r = run("simulate device --lambda 1 --mu 1 --k 2 --arrivals 2000 "
            "--replications 2 --seed 4");
    expect(r.exit_code == 0 && contains(r.out, "wp") &&
               contains(r.out, "wop"),
           "simulate device reports both schemes");

    r = run("simulate population --lambda 0.8 --mu 1 --gamma 2 --w 1 "
            "--n 20 --horizon 50 --warmup 10 --replications 2 --seed 4");
    expect(r.exit_code == 0 && contains(r.out, "k_measured"),
           "simulate population with derived channel count");

    r = run("simulate density --lambda 0.8 --mu 1 --gamma 2 --w 2 --n 50 "
            "--horizon 5 --seed 4");
    expect(r.exit_code == 0 && contains(r.out, "sim_single"),
           "simulate density trajectory");

    r = run("simulate");
    expect(r.exit_code == 2, "bare simulate exits 2");

    // Experiments: deterministic manifest on stdout, files on disk.
    std::string dir1 = make_temp_dir();
    std::string dir2 = make_temp_dir();
    RunResult e1 = run("experiment fig5 --seed 7 --out " + dir1);
    RunResult e2 = run("experiment fig5 --seed 7 --out " + dir2);
    expect(e1.exit_code == 0 && e1.out == e2.out && !e1.out.empty(),
           "experiment fig5 rerun is byte-identical");
    expect(file_exists(dir1 + "/fig5_7.manifest.txt"),
           "experiment manifest written to disk");

    e1 = run("experiment fig4_table1 --seed 7 --replications 4 --jobs 2 "
             "--out " + dir1);
    e2 = run("experiment fig4_table1 --seed 7 --replications 4 --jobs 1 "
             "--out " + dir2);
    expect(e1.exit_code == 0 && e1.out == e2.out && !e1.out.empty(),
           "experiment fig4_table1 invariant to seed reuse and jobs");

    // Config file: flat name = value pairs; command line wins on conflict.
    std::string cfg = dir1 + "/base.cfg";
    write_text(cfg,
               "# common system parameters\n"
               "lambda = 0.8\n"
               "mu = 1\n"
               "scheme = wp\n");
    r = run("aoi --k 2 --config " + cfg);
    expect(r.exit_code == 0 && contains(r.out, "2.64033189033"),
           "config file supplies parameters");

    std::string bad = dir1 + "/bad.cfg";
    write_text(bad, "bogus_key = 1\n");
    r = run("aoi --lambda 1 --mu 1 --k 2 --config " + bad);
    expect(r.exit_code == 2, "unknown config key exits 2");

    r = run("aoi --k 2 --lambda 1 --config " + cfg);
    expect(r.exit_code == 0 && contains(r.out, "2.36666666667"),
           "command-line flag overrides the config file");

    r = run("iterate --lambda 0.8 --mu 1 --gamma 5 --cs 0.1 --ct 0.2 "
            "--cbudget 0.4");
    expect(r.exit_code == 0 && contains(r.out, "iter,w,theta") &&
               contains(r.out, "6.3131536"),
           "iterate trace converges to the equilibrium rate");

    r = run("check-convergence --lambda 0.8 --mu 1 --gamma 5 --cs 0.1 "
            "--ct 0.2 --cbudget 0.4");
    expect(r.exit_code == 0 && contains(r.out, "false"),
           "check-convergence reports the sufficient condition");

    r = run("integrate --lambda 0.8 --mu 1 --gamma 2 --w 2 --step 0.1 "
            "--horizon 1");
    int lines = 0;
    for (size_t pos = 0; pos < r.out.size(); ++pos)
        if (r.out[pos] == '\n' && pos > 0 && r.out[pos - 1] != '\n') ++lines;
    expect(r.exit_code == 0 && lines == 12,
           "integrate emits a header plus eleven grid samples");

    r = run("--help");
    expect(r.exit_code == 0 && contains(r.out, "aoi"), "--help exits 0");

    if (g_failures > 0) {
        std::fprintf(stderr, "%d smoke check(s) failed\n", g_failures);
        return 1;
    }
    std::fprintf(stderr, "all smoke checks passed\n");
    return 0;
}
