// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.

#include "multiboson/validate.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

using namespace multiboson::validate;

namespace {

struct Line {
    bool pass;
    std::string text;
};

std::string worst(const CheckResult& r)
{
    std::string out;
    for (const Measurement& m : r.measurements)
        if (!m.pass) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s%s = %.6g (need %s %.3g)", out.empty() ? "" : "; ", m.name.c_str(), m.value,
                          to_string(m.relation).c_str(), m.tolerance);
            out += buf;
        }
    return out;
}

Line run_criterion(int id, double time_limit)
{
    const auto start = std::chrono::steady_clock::now();
    const CheckResult r = run_check(id);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = r.status == Status::Pass;
    std::string text = r.name + " (" + std::to_string(r.measurements.size()) + " measurements";
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.2f s", seconds);
    text += buf;
    if (time_limit > 0.0) {
        std::snprintf(buf, sizeof buf, ", limit %.0f s", time_limit);
        text += buf;
        pass = pass && seconds < time_limit;
    }
    text += ")";
    const std::string failed = worst(r);
    if (!failed.empty())
        text += ": " + failed;
    if (!r.detail.empty())
        text += " [" + r.detail + "]";
    return {pass, text};
}

int run_cli(const std::string& out)
{
    const std::string cmd = std::string("\"") + MULTIBOSON_CLI + "\" validate --out \"" + out + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Line cli_criterion()
{
    const std::filesystem::path dir = std::filesystem::temp_directory_path();
    const std::string tag = std::to_string(::getpid());
    const std::string a = (dir / ("multiboson_validate_a_" + tag + ".json")).string();
    const std::string b = (dir / ("multiboson_validate_b_" + tag + ".json")).string();
    const int code_a = run_cli(a);
    const int code_b = run_cli(b);
    const std::string text_a = slurp(a), text_b = slurp(b);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    const bool identical = !text_a.empty() && text_a == text_b;
    const bool pass = code_a == 0 && code_b == 0 && identical;
    return {pass, "CLI validate: exit codes " + std::to_string(code_a) + "/" + std::to_string(code_b) +
                      (identical ? ", outputs byte-identical" : ", outputs differ")};
}

} // namespace

int main()
{
    int failures = 0;
    auto report = [&failures](int id, const Line& line) {
        std::printf("criterion %2d: %s  %s\n", id, line.pass ? "PASS" : "FAIL", line.text.c_str());
        std::fflush(stdout);
        failures += line.pass ? 0 : 1;
    };
    for (int id = 1; id <= check_count; ++id)
        report(id, run_criterion(id, id == 1 ? 5.0 : id == 7 ? 30.0 : 0.0));
    report(12, cli_criterion());
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
