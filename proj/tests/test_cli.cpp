#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("lid-cli-" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct WorkDirCleanup {
    ~WorkDirCleanup() {
        std::error_code ec;
        fs::remove_all(work_dir(), ec);
    }
} cleanup_on_exit;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string path_in(const std::string& name) { return (work_dir() / name).string(); }

// Runs the binary through the shell with stdin, stdout and stderr all
// redirected to files under the scratch directory.
CmdResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    static int counter = 0;
    ++counter;
    fs::path out_path = work_dir() / ("stdout." + std::to_string(counter));
    fs::path err_path = work_dir() / ("stderr." + std::to_string(counter));
    fs::path in_path = work_dir() / ("stdin." + std::to_string(counter));
    std::ofstream(in_path) << stdin_text;

    std::string cmd = std::string(LID_CLI_PATH) + " " + args + " >" + out_path.string() +
                      " 2>" + err_path.string() + " <" + in_path.string();
    int status = std::system(cmd.c_str());
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::stringstream in(line);
    for (std::string f; std::getline(in, f, sep);) fields.push_back(f);
    return fields;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("bad invocations come back as usage errors") {
    CHECK(run_cli("").code == 64);
    CHECK(run_cli("encode --bogus-flag 3").code == 64);
    CHECK(run_cli("evaluate").code == 64); // neither --cm nor --model/--manifest
    CHECK(run_cli("frobnicate").code == 64);
}

TEST_CASE("help exits cleanly") {
    CmdResult r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "encode"));
    CHECK(contains(r.out, "predict"));
}

TEST_CASE("encode prints the published index sequences") {
    CmdResult r = run_cli("encode --scheme phonetic --word khabar");
    CHECK(r.code == 0);
    CHECK(r.out == "khabar\t10 24 4\n");

    CHECK(run_cli("encode --scheme phonetic --word korchi").out == "korchi\t9 7 4 14 2\n");
    CHECK(run_cli("encode --scheme char --word good").out == "good\t7 15 15 4\n");

    CmdResult traced = run_cli("encode --scheme phonetic --trace --word khabar");
    CHECK(traced.out == "khabar\tkha:10 ba:24 r:4\n");

    CmdResult padded = run_cli("encode --scheme char --pad --word good");
    CHECK(padded.out == "good\t0 0 0 0 0 0 0 0 0 0 0 7 15 15 4\n");
}

TEST_CASE("encode normalizes input and rejects the unusable") {
    CmdResult r = run_cli("encode --scheme char --word GOOOD");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "good\t"));

    CHECK(run_cli("encode --scheme char --word a1").code == 65);
    CHECK(run_cli("encode --scheme char --word ab").code == 65);
    CHECK(run_cli("encode --word khabar --input /nonexistent/words.txt").code == 66);
    CHECK(run_cli("encode").code == 66); // nothing to encode
}

TEST_CASE("evaluate reproduces metrics from confusion counts") {
    CmdResult r = run_cli("evaluate --cm 641,59,57,643");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "91.71"));
    CHECK(contains(r.out, "given-cm"));

    CmdResult flipped = run_cli("evaluate --cm 641,59,57,643 --positive-class BN");
    CHECK(flipped.code == 0);
    CHECK(contains(flipped.out, "91.83")); // BN precision 641/698

    CHECK(run_cli("evaluate --cm 1,2,3").code == 65);
    CHECK(run_cli("evaluate --cm 1,2,3,x").code == 65);
    CHECK(run_cli("evaluate --cm 1,2,3,4 --positive-class XX").code == 65);
}

TEST_CASE("end-to-end pipeline on a small synthetic corpus") {
    std::string manifest = path_in("manifest.tsv");
    CmdResult synth = run_cli("synth --seed 11 --per-label 60 --train 40 --dev 10 --test 10 --out " +
                              manifest);
    REQUIRE(synth.code == 0);
    CHECK(contains(synth.out, "generated 120 words"));

    std::string common = " --manifest " + manifest +
                         " --epochs 3 --batch 32 --lr 0.01 --hidden1 6 --hidden2 4";
    std::string char_model = path_in("char.json");
    CmdResult tc = run_cli("train --model lstm --scheme char --seed 42 --out " + char_model + common);
    REQUIRE(tc.code == 0);
    CHECK(contains(tc.out, "lstm-char"));

    std::string phon_model = path_in("phonetic.json");
    CmdResult tp =
        run_cli("train --model lstm --scheme phonetic --seed 43 --out " + phon_model + common);
    REQUIRE(tp.code == 0);
    CHECK(contains(tp.out, "lstm-phonetic"));

    std::string char_tuned = path_in("char_tuned.json");
    CmdResult tune = run_cli("tune --model " + char_model + " --manifest " + manifest +
                             " --out " + char_tuned);
    REQUIRE(tune.code == 0);
    CHECK(contains(tune.out, "theta"));

    std::string phon_tuned = path_in("phonetic_tuned.json");
    REQUIRE(run_cli("tune --model " + phon_model + " --manifest " + manifest + " --out " +
                    phon_tuned).code == 0);

    std::string stack = path_in("stack.json");
    CmdResult ens = run_cli("ensemble --char " + char_tuned + " --phonetic " + phon_tuned +
                            " --manifest " + manifest + " --out " + stack);
    REQUIRE(ens.code == 0);
    CHECK(contains(ens.out, "stacker"));

    std::string mean = path_in("mean.json");
    CmdResult ens2 = run_cli("ensemble --method mean-threshold --char " + char_tuned +
                             " --phonetic " + phon_tuned + " --manifest " + manifest +
                             " --out " + mean);
    REQUIRE(ens2.code == 0);
    CHECK(contains(ens2.out, "mean threshold"));

    std::string svm = path_in("svm.json");
    CmdResult ts = run_cli("train --model svm --manifest " + manifest + " --epochs 5 --out " + svm);
    REQUIRE(ts.code == 0);
    CHECK(contains(ts.out, "n-gram features"));

    // every artifact evaluates on the test split under its own row name
    for (const auto& [path, name] : std::vector<std::pair<std::string, std::string>>{
             {char_tuned, "lstm-char"},
             {phon_tuned, "lstm-phonetic"},
             {stack, "ensemble-stack"},
             {mean, "ensemble-mean-threshold"},
             {svm, "svm"}}) {
        CmdResult ev = run_cli("evaluate --model " + path + " --manifest " + manifest);
        CHECK(ev.code == 0);
        CHECK(contains(ev.out, name));
    }

    // scatter export
    std::string scatter = path_in("scatter.csv");
    REQUIRE(run_cli("evaluate --model " + char_tuned + " --manifest " + manifest +
                    " --scatter " + scatter).code == 0);
    CHECK(contains(slurp(scatter), "index,score,label"));

    // identical configuration and seed give identical bytes
    std::string again = path_in("char_again.json");
    REQUIRE(run_cli("train --model lstm --scheme char --seed 42 --out " + again + common).code == 0);
    CHECK(slurp(char_model) == slurp(again));

    // mixed-up ensemble inputs are a scheme mismatch
    CHECK(run_cli("ensemble --char " + phon_tuned + " --phonetic " + char_tuned +
                  " --manifest " + manifest + " --out " + path_in("bad.json")).code == 67);

    // predict: usable words get word<TAB>label<TAB>score, garbage is skipped
    CmdResult pred = run_cli("predict --model " + char_tuned, "khabar\nnot a word\ngood\n");
    REQUIRE(pred.code == 0);
    CHECK(contains(pred.err, "skipping"));
    std::stringstream lines(pred.out);
    int n_lines = 0;
    for (std::string line; std::getline(lines, line); ++n_lines) {
        auto fields = split_fields(line, '\t');
        REQUIRE(fields.size() == 3);
        CHECK((fields[1] == "BN" || fields[1] == "EN"));
        double score = std::stod(fields[2]);
        CHECK(score >= 0.0);
        CHECK(score <= 1.0);
    }
    CHECK(n_lines == 2);

    CHECK(run_cli("predict --model " + char_tuned, "!!\n").code == 66);
    CHECK(run_cli("predict --model " + path_in("no-such-model.json"), "good\n").code == 66);

    // loss curve export
    std::string losses = path_in("loss.csv");
    REQUIRE(run_cli("train --model lstm --scheme char --seed 42 --loss-out " + losses +
                    " --out " + path_in("char3.json") + common).code == 0);
    std::string curve = slurp(losses);
    CHECK(contains(curve, "epoch,train_loss,dev_loss"));
    CHECK(split_fields(curve, '\n').size() == 4); // header + 3 epochs
}

TEST_CASE("stats writes the root-phone frequency profile") {
    std::string manifest = path_in("stats_manifest.tsv");
    REQUIRE(run_cli("synth --seed 5 --per-label 30 --train 20 --dev 5 --test 5 --out " +
                    manifest).code == 0);
    CmdResult r = run_cli("stats --manifest " + manifest);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "slot,phone,frequency"));
    CHECK(contains(r.out, ",OOV,"));
    CHECK(contains(r.err, "words"));

    CHECK(run_cli("stats --manifest /nonexistent/manifest.tsv").code == 66);
    CHECK(run_cli("stats --manifest " + manifest + " --split bogus").code == 64);
}

TEST_CASE("record-run writes a config that reproduces the run") {
    std::string rec = path_in("run.ini");
    CmdResult r = run_cli("--record-run " + rec + " encode --scheme char --word good");
    CHECK(r.code == 0);
    std::string ini = slurp(rec);
    CHECK(contains(ini, "encode.scheme=\"char\""));
    CHECK(contains(ini, "encode.word=\"good\""));

    CmdResult replay = run_cli("--config " + rec + " encode");
    CHECK(replay.code == 0);
    CHECK(replay.out == r.out);
}

TEST_SUITE_END();
