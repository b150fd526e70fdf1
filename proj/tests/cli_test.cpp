#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_binary;
fs::path g_dir;

int run_cli(const std::string& args, const std::string& stdout_path) {
    const std::string cmd = g_binary + " " + args + " > " + stdout_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool report_has(const std::string& report, const std::string& line) {
    return report.find(line) != std::string::npos;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    TestRunner test;
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_test <path-to-binary>\n");
        return 1;
    }
    g_binary = argv[1];
    g_dir = fs::temp_directory_path() / "fracbvp_cli_test";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    const std::string demo_config =
        "# sqrt demo\n"
        "alpha = 1.5\n"
        "beta = 3.5\n"
        "p = 2\n"
        "gamma = 0.5\n"
        "h = 0.5\n"
        "lambda = 0.1\n"
        "mu = 0.1\n"
        "a = 1\n"
        "f = sqrt(u)\n";
    write_text(g_dir / "demo.cfg", demo_config);

    // --- solve ---
    {
        const fs::path out_csv = g_dir / "solve.csv";
        const fs::path rep = g_dir / "solve.txt";
        const int rc = run_cli("solve --config " + (g_dir / "demo.cfg").string() +
                                   " --out " + out_csv.string(),
                               rep.string());
        test.expect_eq(rc, 0, "cli: solve exits 0");
        const std::string report = slurp(rep);
        test.expect_true(report_has(report, "converged = true"), "cli: solve converged");
        test.expect_true(report_has(report, "status = Converged"), "cli: solve status");
        const std::string csv = slurp(out_csv);
        test.expect_eq(count_lines(csv), 259, "cli: solve CSV has 258 rows plus header");
        test.expect_true(csv.rfind("t,u\n", 0) == 0, "cli: solve CSV header");
    }

    // --- solve with overrides ---
    {
        const fs::path rep = g_dir / "solve2.txt";
        const int rc = run_cli("solve --config " + (g_dir / "demo.cfg").string() +
                                   " --grid 128 --tol 1e-9",
                               rep.string());
        test.expect_eq(rc, 0, "cli: solve with flag overrides");
        test.expect_true(report_has(slurp(rep), "grid = 128"), "cli: grid override wins");
    }

    // --- validation failures exit 2 and write nothing ---
    {
        write_text(g_dir / "bad_gamma.cfg",
                   "alpha = 1.5\nbeta = 3.5\np = 2\ngamma = 1.2\nh = 0.5\n"
                   "lambda = 0.1\nmu = 0.1\na = 1\nf = u\n");
        const fs::path out_csv = g_dir / "bad.csv";
        const int rc = run_cli("solve --config " + (g_dir / "bad_gamma.cfg").string() +
                                   " --out " + out_csv.string(),
                               (g_dir / "bad.txt").string());
        test.expect_eq(rc, 2, "cli: bad gamma exits 2");
        test.expect_true(!fs::exists(out_csv), "cli: no partial output on validation error");

        write_text(g_dir / "bad_key.cfg", demo_config + "surprise = 1\n");
        const int rc2 = run_cli("solve --config " + (g_dir / "bad_key.cfg").string(),
                                (g_dir / "bad2.txt").string());
        test.expect_eq(rc2, 2, "cli: unknown key exits 2");

        write_text(g_dir / "bad_f.cfg",
                   "alpha = 1.5\nbeta = 3.5\np = 2\ngamma = 0.5\nh = 0.5\n"
                   "lambda = 0.1\nmu = 0.1\na = 1\nf = u - 100\n");
        const int rc3 = run_cli("solve --config " + (g_dir / "bad_f.cfg").string(),
                                (g_dir / "bad3.txt").string());
        test.expect_eq(rc3, 2, "cli: sign-violating f exits 2");

        write_text(g_dir / "bad_expr.cfg",
                   "alpha = 1.5\nbeta = 3.5\np = 2\ngamma = 0.5\nh = 0.5\n"
                   "lambda = 0.1\nmu = 0.1\na = 1\nf = v + 1\n");
        const int rc4 = run_cli("solve --config " + (g_dir / "bad_expr.cfg").string(),
                                (g_dir / "bad4.txt").string());
        test.expect_eq(rc4, 2, "cli: foreign variable in f exits 2");
    }

    // --- numeric failure exits 3 ---
    {
        write_text(g_dir / "diverge.cfg",
                   "alpha = 1.5\nbeta = 3.5\np = 2\ngamma = 0.5\nh = 0.5\n"
                   "lambda = 10000\nmu = 0.1\na = 1\nf = u^2\n"
                   "grid = 64\nmax_iter = 50\n");
        const fs::path out_csv = g_dir / "diverge.csv";
        const int rc = run_cli("solve --config " + (g_dir / "diverge.cfg").string() +
                                   " --out " + out_csv.string(),
                               (g_dir / "diverge.txt").string());
        test.expect_eq(rc, 3, "cli: divergent solve exits 3");
        test.expect_true(report_has(slurp(g_dir / "diverge.txt"), "status = Diverged"),
                         "cli: divergence reported");
    }

    // --- usage errors exit 1 ---
    {
        const int rc = run_cli("frobnicate", (g_dir / "usage.txt").string());
        test.expect_eq(rc, 1, "cli: unknown command exits 1");
        const int rc2 = run_cli("solve", (g_dir / "usage2.txt").string());
        test.expect_eq(rc2, 1, "cli: missing required --config exits 1");
    }

    // --- classify ---
    {
        write_text(g_dir / "zero.cfg",
                   "alpha = 1.5\nbeta = 3.5\np = 2\ngamma = 0.5\nh = 0.5\n"
                   "lambda = 0.1\nmu = 0.1\na = 1\nf = 0\n");
        const fs::path rep = g_dir / "classify.txt";
        const int rc =
            run_cli("classify --config " + (g_dir / "zero.cfg").string(), rep.string());
        test.expect_eq(rc, 0, "cli: classify exits 0");
        const std::string report = slurp(rep);
        test.expect_true(report_has(report, "h2 = true"),
                         "cli: f = 0 has the (H2) witness");
        test.expect_true(report_has(report, "exist_bound = "),
                         "cli: existence band reported");
        test.expect_true(report_has(report, "verdict = "), "cli: verdict reported");
    }

    // --- green-check ---
    {
        const fs::path rep = g_dir / "green.txt";
        const int rc = run_cli("green-check --grid 60", rep.string());
        test.expect_eq(rc, 0, "cli: green-check exits 0");
        const std::string report = slurp(rep);
        test.expect_true(report_has(report, "beta = 3.1") &&
                             report_has(report, "beta = 4"),
                         "cli: green-check covers the default betas");
        test.expect_true(report_has(report, "pass = true"), "cli: green-check passes");
    }

    // --- poly ---
    {
        const fs::path rep = g_dir / "poly.txt";
        const fs::path out_csv = g_dir / "poly.csv";
        const int rc = run_cli(
            "poly --family bernoulli --m 2 --alpha 0.5 --out " + out_csv.string(),
            rep.string());
        test.expect_eq(rc, 0, "cli: poly exits 0");
        const std::string report = slurp(rep);
        test.expect_true(report_has(report, "terms = 2"), "cli: poly term count");
        test.expect_true(report_has(report, "oracle_max_rel_dev = "),
                         "cli: poly oracle deviation reported");
        const std::string csv = slurp(out_csv);
        test.expect_true(csv.rfind("exponent,coefficient\n", 0) == 0,
                         "cli: poly CSV header");
        test.expect_eq(count_lines(csv), 3, "cli: poly CSV rows");

        const int rc2 =
            run_cli("poly --family nosuch --m 2", (g_dir / "poly2.txt").string());
        test.expect_eq(rc2, 2, "cli: poly rejects unknown family");
    }

    // --- sweep determinism handled by the acceptance suite; smoke test here ---
    {
        write_text(g_dir / "sweep.cfg",
                   demo_config + "lambda_range = 0.05:0.2:3\nmu_range = 0.05:0.1:2\n");
        const fs::path out_csv = g_dir / "sweep.csv";
        const int rc = run_cli("sweep --config " + (g_dir / "sweep.cfg").string() +
                                   " --out " + out_csv.string(),
                               (g_dir / "sweep.txt").string());
        test.expect_eq(rc, 0, "cli: sweep exits 0");
        const std::string csv = slurp(out_csv);
        test.expect_eq(count_lines(csv), 7, "cli: sweep CSV 6 cells plus header");
        test.expect_true(csv.find("verdict") != std::string::npos, "cli: sweep header");
    }

    return test.summary("cli");
}
