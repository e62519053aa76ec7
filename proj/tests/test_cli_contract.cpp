// Exercises the CLI's documented surface through the real binary: exit
// codes (0 order-holds / 1 negative / 2 usage-or-input error), report
// content, the seed environment variable, and the SVG scene path.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int g_failures = 0;
std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string command = env_prefix + g_cli + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    result.exit_code = WEXITSTATUS(pclose(pipe));
    return result;
}

void expect(bool ok, const std::string& label) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", label.c_str());
    if (!ok) ++g_failures;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli_contract <cli-path>\n");
        return 2;
    }
    g_cli = argv[1];

    write_file("/tmp/mo_e1.mat", "3 3\n1 0 0\n0 0 0\n0 0 0\n");
    write_file("/tmp/mo_e2.mat", "3 3\n1 0 0\n0 1 0\n0 0 0\n");
    write_file("/tmp/mo_ragged.mat", "2 2\n1 0\n1\n");
    write_file("/tmp/mo_diag.mat", "3 3\n2 0 0\n0 0 0\n0 0 0\n");
    write_file("/tmp/mo_scene.json", "{}");
    write_file("/tmp/mo_badscene.json", "{\"conics\": [42]}");

    {  // check-order: the E_1 <=- E_2 chain, its reversal, and a ragged file.
        const RunResult holds = run("check-order /tmp/mo_e1.mat /tmp/mo_e2.mat");
        expect(holds.exit_code == 0, "check-order E1 E2 exits 0");
        expect(holds.output.find("agreement") != std::string::npos,
               "check-order reports the agreement flag");

        const RunResult reversed = run("check-order /tmp/mo_e2.mat /tmp/mo_e1.mat");
        expect(reversed.exit_code == 1, "check-order E2 E1 exits 1");

        const RunResult ragged = run("check-order /tmp/mo_ragged.mat /tmp/mo_e1.mat");
        expect(ragged.exit_code == 2, "ragged file exits 2");
        expect(ragged.output.find("mo_ragged.mat:3") != std::string::npos,
               "parse error names the file and line");
    }

    {  // pinv: diag(2,0,0) -> diag(0.5,0,0) with residuals in text mode.
        const RunResult pinv = run("pinv /tmp/mo_diag.mat");
        expect(pinv.exit_code == 0, "pinv exits 0");
        expect(pinv.output.find("0.5") != std::string::npos, "pinv output holds 0.5");
        expect(pinv.output.find("penrose residuals") != std::string::npos,
               "pinv text mode prints Penrose residuals");
        expect(run("pinv /tmp/mo_missing.mat").exit_code == 2, "missing input exits 2");
    }

    {  // touching: the pinned 59/11 case and the open-interval angle domain.
        const RunResult t = run("touching 4 9 0.785398");
        expect(t.exit_code == 0, "touching 4 9 pi/4 exits 0");
        expect(t.output.find("5.3636") != std::string::npos, "touching reports r = 59/11");
        const RunResult circle = run("touching 4 4 0.3");
        expect(circle.output.find("r (closed form):      4") != std::string::npos,
               "touching a=b=4 gives r=4");
        expect(run("touching 4 9 0").exit_code == 2, "phi=0 exits 2");
        expect(run("touching 1 9 0.3").exit_code == 2, "a=1 exits 2");
    }

    {  // phi-hat: identity regime, on-axis value, inverse, out-of-range point.
        const RunResult fixed = run("phi-hat 4 1 0.3 0.4");
        expect(fixed.exit_code == 0 && fixed.output.find("(0.3, 0.4)") != std::string::npos,
               "phi-hat 4 1 is the identity");
        const RunResult axis = run("phi-hat 2 1 0.3 0");
        expect(axis.output.find("0.478344") != std::string::npos,
               "phi-hat 2 1 (0.3, 0) hits the image-of-circle extreme");
        const RunResult inverse = run("phi-hat 2 1 0.4783446031074604 0 --inverse");
        expect(inverse.exit_code == 0 && inverse.output.find("(0.3,") != std::string::npos,
               "--inverse recovers the input");
        const RunResult outside = run("phi-hat 3 1 2 0 --inverse");
        expect(outside.exit_code == 2 && outside.output.find("gamma") != std::string::npos,
               "out-of-range point exits 2 citing the constraint");
    }

    {  // verify: seed precedence between the environment and --seed.
        const RunResult env_seed =
            run("verify --trials 2 --format json", "MINUSORDER_SEED=123 ");
        expect(env_seed.output.find("\"seed\": 123") != std::string::npos,
               "MINUSORDER_SEED overrides the default seed");
        const RunResult flag_seed =
            run("verify --trials 2 --seed 42 --format json", "MINUSORDER_SEED=123 ");
        expect(flag_seed.output.find("\"seed\": 42") != std::string::npos,
               "--seed overrides MINUSORDER_SEED");
        expect(run("verify --trials 2", "MINUSORDER_SEED=nonsense ").exit_code == 2,
               "unparseable MINUSORDER_SEED exits 2");
    }

    {  // svg: empty scenes render, malformed scenes exit 2.
        const RunResult empty = run("svg /tmp/mo_scene.json");
        expect(empty.exit_code == 0 && empty.output.find("<svg") != std::string::npos,
               "empty scene renders valid SVG");
        expect(run("svg /tmp/mo_badscene.json").exit_code == 2, "malformed scene exits 2");
    }

    {  // usage errors exit 2.
        expect(run("no-such-command").exit_code == 2, "unknown subcommand exits 2");
        expect(run("touching 4 9").exit_code == 2, "missing positional exits 2");
    }

    if (g_failures == 0) {
        std::printf("cli contract: all checks passed\n");
        return 0;
    }
    std::printf("cli contract: %d checks FAILED\n", g_failures);
    return 1;
}
