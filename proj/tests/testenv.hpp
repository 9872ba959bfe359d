#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

// Test-process plumbing: location of the CLI binary and the committed data
// directory (from --cli= / --data= arguments or the XSTEREO_BIN /
// XSTEREO_DATA environment), scratch directories, and a CLI runner.
namespace xstest {

namespace fs = std::filesystem;

inline std::string env_or(const char* name, const char* fallback = "")
{
    const char* v = std::getenv(name);
    return v ? v : fallback;
}

inline std::string& cli_path()
{
    static std::string p = env_or("XSTEREO_BIN");
    return p;
}

inline std::string& data_dir()
{
    static std::string p = env_or("XSTEREO_DATA");
    return p;
}

/// Unique scratch directory, removed on destruction.
struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag)
    {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() /
               ("xstereo-" + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path.string(); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

/// Runs the xstereo binary with the given argument string.
inline CliResult run_cli(const std::string& args)
{
    static std::atomic<int> counter{0};
    const int id = counter++;
    const fs::path base = fs::temp_directory_path() /
                          ("xstereo-cli-" + std::to_string(::getpid()) + "-" + std::to_string(id));
    const std::string out_path = base.string() + ".out";
    const std::string err_path = base.string() + ".err";

    const std::string cmd =
        "'" + cli_path() + "' " + args + " >'" + out_path + "' 2>'" + err_path + "'";
    const int status = std::system(cmd.c_str());

    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    std::error_code ec;
    fs::remove(out_path, ec);
    fs::remove(err_path, ec);
    return r;
}

inline CliResult run_cli(const std::vector<std::string>& args)
{
    std::string joined;
    for (const std::string& a : args) {
        if (!joined.empty())
            joined += ' ';
        joined += a;
    }
    return run_cli(joined);
}

} // namespace xstest
