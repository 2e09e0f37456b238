// Command-line surface for the exact two-qubit synthesis engine.
//
// Exit codes: 0 success, 2 usage, 3 input validation, 4 resource exhaustion
// (including arithmetic capacity), 5 integrity failure.
//
// Machine-readable output lines are prefixed with "::" and hold
// space-separated key=value pairs; everything else is human text.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "so6synth/mitm.hpp"
#include "so6synth/oracle.hpp"
#include "so6synth/store.hpp"
#include "so6synth/text_io.hpp"

using namespace so6synth;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitResource = 4;
constexpr int kExitIntegrity = 5;

unsigned default_threads() {
    if (const char* env = std::getenv("SO6SYNTH_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// A target is either a path to a matrix text file or an inline word string.
So6Matrix parse_target(const std::string& spec) {
    if (std::ifstream(spec).good()) return parse_matrix(read_file(spec));
    return evaluate_word(parse_word(spec));
}

So6Matrix parse_root(const std::string& spec) {
    if (spec == "identity") return So6Matrix::identity_matrix();
    return parse_matrix(read_file(spec));
}

// Rough live-size estimate: node payload plus hash-index overhead.
uint64_t mem_estimate(const Lut& lut) {
    return lut.total_nodes() * (sizeof(Node) + 48);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_layer(unsigned k, uint64_t reps, uint64_t cum, const LayerStats& s, uint64_t mem) {
    std::printf("layer %u: %llu representatives (%llu cumulative), %.3fs\n", k,
                static_cast<unsigned long long>(reps), static_cast<unsigned long long>(cum),
                s.seconds);
    std::printf("::layer k=%u representatives=%llu cumulative=%llu candidates=%llu "
                "duplicates=%llu time_s=%.6f mem_est_bytes=%llu\n",
                k, static_cast<unsigned long long>(reps), static_cast<unsigned long long>(cum),
                static_cast<unsigned long long>(s.candidates),
                static_cast<unsigned long long>(s.duplicate), s.seconds,
                static_cast<unsigned long long>(mem));
}

int cmd_build_lut(const std::string& root_spec, unsigned depth, const std::string& out,
                  unsigned threads) {
    const So6Matrix root = parse_root(root_spec);
    Lut lut = init_lut(root);
    const auto t0 = std::chrono::steady_clock::now();
    for (unsigned k = 1; k <= depth; ++k) {
        const LayerStats s = extend_one_step(lut, threads);
        print_layer(k, lut.layers.back().size(), lut.total_nodes(), s, mem_estimate(lut));
    }
    std::printf("::build depth=%u total=%llu time_s=%.6f\n", depth,
                static_cast<unsigned long long>(lut.total_nodes()), seconds_since(t0));
    if (!out.empty()) {
        try {
            save_lut(lut, out);
        } catch (...) {
            std::remove(out.c_str());
            throw;
        }
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

// Turns a stored class word into a word for the target itself:
//   target = L^-1 * node.canon * R^-1 with (L, R) = canonicalize(target)
// witnesses, and evaluate_word(class_word) == node.canon for tables whose
// root class is Clifford.
Word fixup_word(Word w, const CanonicalForm& cf) {
    const SignedPerm linv = cf.left.inverse();
    const SignedPerm residue = push_left_through(linv, w.steps);
    w.correction = residue * w.correction * cf.right.inverse();
    return w;
}

int cmd_synth(const std::string& target_spec, const std::string& lut_path, bool force_mitm,
              double probe_budget, unsigned threads, bool count_only) {
    const So6Matrix target = parse_target(target_spec);
    const auto t0 = std::chrono::steady_clock::now();
    Word word;
    std::string source;

    std::optional<Lut> lut;
    if (!lut_path.empty() && !force_mitm) {
        lut = load_lut(lut_path);
        const auto ref = lut_lookup(*lut, target);
        if (ref && as_signed_perm(lut->layers[0][0].canon)) {
            word = fixup_word(reconstruct(*lut, *ref), canonicalize(target));
            source = "lut";
        } else {
            std::printf("table miss; falling back to bidirectional search\n");
        }
    }
    if (source.empty()) {
        MitmOptions opts;
        opts.threads = threads;
        if (probe_budget >= 0.0) {
            opts.use_probe = true;
            opts.probe_budget_ms = probe_budget;
        }
        const MitmResult res = mitm(target, So6Matrix::identity_matrix(), opts);
        // mitm guarantees evaluate_word_on(word, target) == C for a signed
        // perm C, i.e. X1..Xn * corr * target = C. Invert:
        //   target = corr^-1 * Xn..X1 * C
        // and push corr^-1 rightward through the reversed steps.
        Word inv;
        inv.steps.assign(res.word.steps.rbegin(), res.word.steps.rend());
        const So6Matrix c = evaluate_word_on(res.word, target);
        const auto cp = as_signed_perm(c);
        if (!cp) throw integrity_error("synth: search result is not Clifford-exact");
        const SignedPerm residue =
            push_left_through(res.word.correction.inverse(), inv.steps);
        inv.correction = residue * *cp;
        word = inv;
        source = "mitm";
    }
    if (evaluate_word(word) != target)
        throw integrity_error("synth: final word verification failed");
    if (count_only) {
        std::printf("%zu\n", word.tcount());
        return 0;
    }
    std::printf("::synth tcount=%zu source=%s time_s=%.6f\n", word.tcount(), source.c_str(),
                seconds_since(t0));
    std::printf("%s\n", format_word(word).c_str());
    return 0;
}

int cmd_verify(const std::string& lut_path, bool deep) {
    const auto t0 = std::chrono::steady_clock::now();
    const Lut lut = load_lut(lut_path, deep ? 1.0 : 0.01);
    uint64_t layer = 0;
    for (const auto& l : lut.layers) {
        if (layer > 0 && l.empty())
            throw integrity_error("lut file: empty layer " + std::to_string(layer));
        ++layer;
    }
    std::printf("::verify layers=%zu total=%llu deep=%d time_s=%.6f\n", lut.layers.size(),
                static_cast<unsigned long long>(lut.total_nodes()), deep ? 1 : 0,
                seconds_since(t0));
    std::printf("ok\n");
    return 0;
}

int cmd_bench(unsigned depth, const std::string& out, unsigned threads) {
    Lut lut = init_lut(So6Matrix::identity_matrix());
    std::ostringstream csv;
    csv << "k,representatives,cumulative,time_s,mem_est_bytes\n";
    for (unsigned k = 1; k <= depth; ++k) {
        const LayerStats s = extend_one_step(lut, threads);
        csv << k << ',' << lut.layers.back().size() << ',' << lut.total_nodes() << ','
            << s.seconds << ',' << mem_estimate(lut) << '\n';
        std::fprintf(stderr, "layer %u done in %.3fs\n", k, s.seconds);
    }
    if (out.empty()) {
        std::fputs(csv.str().c_str(), stdout);
    } else {
        std::ofstream f(out, std::ios::trunc);
        if (!f) throw parse_error("cannot open for writing: " + out);
        f << csv.str();
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact T-count-optimal synthesis for two-qubit Clifford+T operators"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads, "worker threads (env SO6SYNTH_THREADS)")
        ->check(CLI::PositiveNumber);

    auto* build = app.add_subcommand("build-lut", "generate a lookup table by layered BFS");
    std::string root_spec = "identity", out_path;
    unsigned depth = 0;
    build->add_option("--root", root_spec, "'identity' or a matrix text file");
    build->add_option("--depth", depth, "number of layers to generate")->required();
    build->add_option("--out", out_path, "output table path");

    auto* synth = app.add_subcommand("synth", "synthesize an optimal word for a target");
    std::string target_spec, lut_path;
    bool force_mitm = false;
    double probe_budget = -1.0;
    synth->add_option("--target", target_spec, "matrix text file or inline word string")
        ->required();
    synth->add_option("--lut", lut_path, "lookup table to answer from");
    synth->add_flag("--mitm", force_mitm, "force bidirectional search");
    synth->add_option("--probe-budget", probe_budget, "meet-probe budget in ms");

    auto* tcount = app.add_subcommand("tcount", "print only the optimal T-count");
    std::string tc_target, tc_lut;
    tcount->add_option("--target", tc_target, "matrix text file or inline word string")
        ->required();
    tcount->add_option("--lut", tc_lut, "lookup table to answer from");

    auto* verify = app.add_subcommand("verify", "re-check a stored table's invariants");
    std::string verify_path;
    bool deep = false;
    verify->add_option("--lut", verify_path, "table path")->required();
    verify->add_flag("--deep", deep, "verify every record, not a 1% sample");

    auto* bench = app.add_subcommand("bench", "per-layer build statistics as CSV");
    unsigned bench_depth = 8;
    std::string bench_out;
    bench->add_option("--depth", bench_depth, "layers to build");
    bench->add_option("--out", bench_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build_lut(root_spec, depth, out_path, threads);
        if (synth->parsed())
            return cmd_synth(target_spec, lut_path, force_mitm, probe_budget, threads, false);
        if (tcount->parsed()) return cmd_synth(tc_target, tc_lut, false, -1.0, threads, true);
        if (verify->parsed()) return cmd_verify(verify_path, deep);
        if (bench->parsed()) return cmd_bench(bench_depth, bench_out, threads);
    } catch (const parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const integrity_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIntegrity;
    } catch (const resource_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResource;
    } catch (const overflow_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::fprintf(stderr, "error: out of memory\n");
        return kExitResource;
    }
    return kExitUsage;
}
