// End-to-end tests driving the real binary. SMERC_BIN is injected by the
// build as the path to the smerc executable.

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "smerc/corpus_io.hpp"
#include "test_support.hpp"

using namespace smerc;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
    std::string command = std::string(SMERC_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_cli_stdout(const std::string& args, int* exit_code = nullptr) {
    auto out_file = testing::temp_dir("cli_stdout") / "stdout.txt";
    std::string command =
        std::string(SMERC_BIN) + " " + args + " >" + out_file.string() + " 2>/dev/null";
    int status = std::system(command.c_str());
    if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::set<std::string> csv_cluster_ids(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // header
    std::set<std::string> ids;
    while (std::getline(in, line)) ids.insert(line.substr(0, line.find(',')));
    return ids;
}

std::filesystem::path write_eddie(const std::filesystem::path& dir) {
    auto path = dir / "eddie.jsonl";
    save_corpus(testing::eddie_fixture(), path);
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("missing input file exits 1") {
    auto dir = testing::temp_dir("cli_missing");
    CHECK(run_cli("cluster " + (dir / "nope.jsonl").string() + " --out " +
                  (dir / "out").string()) == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unknown flags are rejected") {
    auto dir = testing::temp_dir("cli_unknown");
    auto input = write_eddie(dir);
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "out").string() +
                  " --frobnicate 3") == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cluster separates the bursts with decay and merges without") {
    auto dir = testing::temp_dir("cli_eddie");
    auto input = write_eddie(dir);

    int code = 0;
    std::string line =
        run_cli_stdout("cluster " + input.string() + " --out " + (dir / "decay").string(), &code);
    CHECK(code == 0);
    CHECK(line.find("manifest.json") != std::string::npos);  // stdout carries the manifest path
    CHECK(csv_cluster_ids(dir / "decay" / "clusters.csv").size() == 2);

    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "flat").string() +
                  " --no-decay") == 0);
    CHECK(csv_cluster_ids(dir / "flat" / "clusters.csv").size() == 1);

    json summary = json::parse(slurp(dir / "decay" / "summary.json"));
    CHECK(summary["windows"] == 1);
    CHECK(summary["config"]["t_p"] == 120.0);
    CHECK(summary["config"]["delta"] == 0.25);
    std::filesystem::remove_all(dir);
}

TEST_CASE("windowing is reported in the summary") {
    auto dir = testing::temp_dir("cli_window");
    Corpus corpus;
    for (int i = 0; i < 40; ++i) {
        Tweet tweet;
        tweet.id = "w" + std::to_string(i);
        tweet.timestamp = i < 20 ? 100 + i : 100 + 3700 + i;  // two hours apart
        tweet.text = "window words number" + std::to_string(i % 5) + " filler" +
                     std::to_string(i % 7);
        corpus.tweets.push_back(tweet);
    }
    auto input = dir / "two_hours.jsonl";
    save_corpus(corpus, input);

    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "out").string() +
                  " --window 3600") == 0);
    json summary = json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary["windows"] == 2);
    CHECK(summary["per_window"].size() == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("synth is deterministic per seed and validates its spec") {
    auto dir = testing::temp_dir("cli_synth");
    CHECK(run_cli("synth --out " + (dir / "a").string() +
                  " --events 2 --tweets-per-event 30 --background-rate 0.05 --seed 77") == 0);
    CHECK(run_cli("synth --out " + (dir / "b").string() +
                  " --events 2 --tweets-per-event 30 --background-rate 0.05 --seed 77") == 0);
    CHECK(slurp(dir / "a" / "corpus.jsonl") == slurp(dir / "b" / "corpus.jsonl"));
    CHECK(!slurp(dir / "a" / "corpus.jsonl").empty());

    CHECK(run_cli("synth --out " + (dir / "c").string() + " --events 0") == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("analyze-gaps fits a planted decay and writes plot-ready files") {
    auto dir = testing::temp_dir("cli_gaps");
    CHECK(run_cli("synth --out " + dir.string() +
                  " --events 2 --tweets-per-event 60 --spacing 700 --span-padding 450"
                  " --background-rate 0.7027 --lambda 0.01 --seed 6") == 0);
    CHECK(run_cli("analyze-gaps " + (dir / "corpus.jsonl").string() + " --out " +
                  (dir / "gaps").string() + " --max-gap 300 --bucket-width 20") == 0);

    json fit = json::parse(slurp(dir / "gaps" / "fit.json"));
    double slope = fit["slope"];
    CHECK(slope > -0.0115);
    CHECK(slope < -0.0085);
    CHECK(fit["recommended_tp"].is_number());
    double tp = fit["recommended_tp"];
    CHECK(tp == doctest::Approx(-1.0 / slope));

    std::ifstream density(dir / "gaps" / "density.csv");
    std::string line;
    int rows = -1;
    while (std::getline(density, line)) ++rows;
    CHECK(rows == 512);

    std::ifstream curve(dir / "gaps" / "gap_curve.csv");
    std::getline(curve, line);
    CHECK(line == "bucket_center,related,unrelated,p_related,ln_p");
    std::filesystem::remove_all(dir);
}

TEST_CASE("analyze-gaps surfaces a flat corpus as a warning, not an error") {
    auto dir = testing::temp_dir("cli_flat");
    Corpus corpus;
    for (int i = 0; i <= 120; ++i) {
        Tweet labeled;
        labeled.id = "l" + std::to_string(i);
        labeled.timestamp = 10 * i;
        labeled.text = "steady labeled stream";
        labeled.event_label = "E";
        corpus.tweets.push_back(labeled);
        Tweet plain;
        plain.id = "u" + std::to_string(i);
        plain.timestamp = 10 * i + 1;
        plain.text = "steady unlabeled stream";
        corpus.tweets.push_back(plain);
    }
    std::stable_sort(corpus.tweets.begin(), corpus.tweets.end(),
                     [](const Tweet& a, const Tweet& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    auto input = dir / "flat.jsonl";
    save_corpus(corpus, input);

    CHECK(run_cli("analyze-gaps " + input.string() + " --out " + (dir / "gaps").string()) == 0);
    json fit = json::parse(slurp(dir / "gaps" / "fit.json"));
    CHECK(std::abs(static_cast<double>(fit["slope"])) < 1e-4);
    CHECK(fit["recommended_tp"].is_null());
    CHECK(fit.contains("warning"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("analyze-gaps on an unlabeled corpus exits 1") {
    auto dir = testing::temp_dir("cli_unlabeled");
    Corpus corpus;
    for (int i = 0; i < 10; ++i)
        corpus.tweets.push_back({"u" + std::to_string(i), 10 * i,
                                 "unlabeled text " + std::to_string(i), std::nullopt});
    auto input = dir / "plain.jsonl";
    save_corpus(corpus, input);
    CHECK(run_cli("analyze-gaps " + input.string() + " --out " + (dir / "gaps").string()) == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("evaluate reaches full precision on a separable corpus") {
    auto dir = testing::temp_dir("cli_eval");
    CHECK(run_cli("synth --out " + dir.string() +
                  " --events 3 --tweets-per-event 40 --overlap 0 --spacing 2400 --seed 15") == 0);
    CHECK(run_cli("evaluate " + (dir / "corpus.jsonl").string() + " --out " +
                  (dir / "eval").string()) == 0);
    json eval = json::parse(slurp(dir / "eval" / "eval.json"));
    CHECK(eval["precision"] == 1.0);
    CHECK(eval["events_missed"] == 0);
    CHECK(eval["quality_mean"] == 1.0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("evaluate writes a monotone sweep") {
    auto dir = testing::temp_dir("cli_sweep");
    CHECK(run_cli("synth --out " + dir.string() +
                  " --events 2 --tweets-per-event 40 --overlap 0.5 --spacing 900 "
                  "--background-rate 0.02 --seed 3") == 0);
    CHECK(run_cli("evaluate " + (dir / "corpus.jsonl").string() + " --out " +
                  (dir / "eval").string() + " --sweep-deltas 0,0.2,0.4,0.6,0.8") == 0);
    std::ifstream sweep(dir / "eval" / "sweep.csv");
    std::string line;
    std::getline(sweep, line);  // header
    int previous = 1 << 30;
    int rows = 0;
    while (std::getline(sweep, line)) {
        ++rows;
        std::stringstream fields(line);
        std::string field;
        std::getline(fields, field, ',');  // delta
        std::getline(fields, field, ',');  // clusters_total
        int survivors = std::stoi(field);
        CHECK(survivors <= previous);
        previous = survivors;
    }
    CHECK(rows == 5);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config file values apply under flags") {
    auto dir = testing::temp_dir("cli_config");
    auto input = write_eddie(dir);
    auto config_path = dir / "run.cfg";
    {
        std::ofstream out(config_path);
        out << "delta=0.4\n";
        out << "tp=90\n";
    }
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "a").string() +
                  " --config " + config_path.string()) == 0);
    json a = json::parse(slurp(dir / "a" / "summary.json"));
    CHECK(a["config"]["delta"] == 0.4);
    CHECK(a["config"]["t_p"] == 90.0);

    // Flags override the file.
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "b").string() +
                  " --config " + config_path.string() + " --delta 0.1") == 0);
    json b = json::parse(slurp(dir / "b" / "summary.json"));
    CHECK(b["config"]["delta"] == 0.1);
    CHECK(b["config"]["t_p"] == 90.0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("invalid config values name the field and exit 1") {
    auto dir = testing::temp_dir("cli_badcfg");
    auto input = write_eddie(dir);
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "out").string() +
                  " --delta 1.5") == 1);
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "out").string() +
                  " --damping 0.3") == 1);
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "out").string() +
                  " --preference sideways") == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("end-to-end determinism: identical runs write identical bytes") {
    auto dir = testing::temp_dir("cli_det");
    auto input = write_eddie(dir);
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "clusters.csv") == slurp(dir / "b" / "clusters.csv"));
    CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("affinity dump is indexed by tweet id") {
    auto dir = testing::temp_dir("cli_dump");
    auto input = write_eddie(dir);
    auto dump = dir / "affinity.csv";
    CHECK(run_cli("cluster " + input.string() + " --out " + (dir / "out").string() +
                  " --dump-affinity " + dump.string()) == 0);
    std::ifstream in(dump);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("tweet_id,", 0) == 0);
    CHECK(header.find("t1") != std::string::npos);
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 35);  // one per clustered tweet
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
