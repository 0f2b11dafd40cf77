#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "imtk/codec.hpp"
#include "imtk/simulate.hpp"
#include "imtk/surface.hpp"

namespace testutil {

/// Relative Approx: |a - b| < eps * max(|a|, |b|). The default doctest
/// scale of 1.0 turns epsilon absolute for small magnitudes, which would
/// make pinned-value checks on ~1e-8 quantities vacuous.
inline doctest::Approx rel(double v, double eps) {
    return doctest::Approx(v).epsilon(eps).scale(0.0);
}

template <typename E, typename F, typename P>
bool throws_matching(F&& f, P&& pred) {
    try {
        f();
    } catch (const E& e) {
        return pred(e);
    } catch (...) {
        return false;
    }
    return false;
}

/// Default plan with a 3-frame vote window. Exercising 30 frames per round
/// trip would add nothing but runtime; the vote logic has its own tests.
inline const imtk::CodePlan& plan_v3() {
    static const imtk::CodePlan p = imtk::plan({}, {}, imtk::default_class_table(), 3);
    return p;
}

/// 16-class model trained once on a small noiseless corpus and shared by
/// every suite that needs a working classifier.
inline const imtk::TextureModel& model16() {
    static const imtk::TextureModel m = [] {
        const auto corpus = imtk::make_training_corpus(
            imtk::default_class_table(), 4, 0.5, std::numeric_limits<double>::infinity(), 77);
        return imtk::train_classifier(corpus, imtk::default_class_table());
    }();
    return m;
}

/// Per-process scratch directory for file round-trip tests.
inline const std::string& scratch_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/imtk_tests_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

inline std::string scratch_path(const std::string& name) {
    static int counter = 0;
    return scratch_dir() + "/" + std::to_string(counter++) + "_" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
}

#ifdef IMTK_CLI_BIN
struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

/// Run the installed CLI binary with a shell-formatted argument string.
inline CliResult run_cli_bin(const std::string& args) {
    const std::string out_path = scratch_path("cli.out");
    const std::string err_path = scratch_path("cli.err");
    const std::string cmd =
        std::string(IMTK_CLI_BIN) + " " + args + " >" + out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    CliResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}
#endif

} // namespace testutil
