// smerc: cluster timestamped short messages around real-world events by
// combining TF-IDF/cosine textual affinity with exponential temporal decay.
//
// Subcommands: cluster, analyze-gaps, evaluate, synth. All outputs land
// under --out; stdout carries only the manifest path, progress goes to
// stderr. Exit codes: 0 success, 1 input error, 2 internal failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smerc/corpus_io.hpp"
#include "smerc/evaluation.hpp"
#include "smerc/gap_analysis.hpp"
#include "smerc/pipeline.hpp"
#include "smerc/stopwords.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smerc;

namespace {

struct CommonOptions {
    std::string input;
    std::string out_dir;
    std::string stopwords_file;
    std::string preference_text = "median";
    std::string dump_affinity;
    RunConfig config;
    bool window_set = false;
    std::int64_t window_seconds = 0;
};

std::string current_stage;

void stage(const std::string& name) {
    current_stage = name;
    std::cerr << "smerc: " << name << "\n";
}

StopwordSet resolve_stopwords(const CommonOptions& options) {
    if (options.stopwords_file.empty()) return default_stopwords();
    return load_stopwords(options.stopwords_file);
}

RunConfig resolve_config(CommonOptions& options) {
    RunConfig config = options.config;
    if (options.window_set) config.window_seconds = options.window_seconds;
    if (options.preference_text == "median") {
        config.preference.reset();
    } else {
        try {
            config.preference = std::stod(options.preference_text);
        } catch (const std::exception&) {
            throw input_error("preference must be a number or 'median', got '" +
                              options.preference_text + "'");
        }
    }
    validate(config);
    return config;
}

json config_json(const RunConfig& config) {
    json out;
    out["t_p"] = config.t_p;
    out["delta"] = config.delta;
    out["preference"] = config.preference ? json(*config.preference) : json("median");
    out["damping"] = config.damping;
    out["max_iterations"] = config.max_iterations;
    out["stable_iterations"] = config.stable_iterations;
    out["window_seconds"] =
        config.window_seconds ? json(*config.window_seconds) : json(nullptr);
    out["bucket_width"] = config.bucket_width;
    out["max_gap"] = config.max_gap;
    out["min_pairs_per_bucket"] = config.min_pairs_per_bucket;
    out["spam_duplicate_threshold"] = config.spam_duplicate_threshold;
    out["rng_seed"] = config.rng_seed;
    out["min_cluster_size"] = config.min_cluster_size;
    out["purity_floor"] = config.purity_floor;
    out["no_decay"] = config.no_decay;
    return out;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path.string());
    out << content;
    if (!out) throw input_error("failed writing " + path.string());
}

void write_manifest(const fs::path& dir, std::vector<std::string> files) {
    json listing;
    listing["files"] = files;
    write_text_file(dir / "manifest.json", listing.dump(2) + "\n");
    std::cout << (dir / "manifest.json").string() << "\n";
}

void dump_affinity_csv(const PipelineResult& result, const fs::path& base) {
    for (std::size_t w = 0; w < result.windows.size(); ++w) {
        const WindowResult& window = result.windows[w];
        if (window.corpus.empty()) continue;
        fs::path path = base;
        if (result.windows.size() > 1) {
            fs::path with_window = base;
            with_window.replace_extension();
            path = with_window.string() + ".w" + std::to_string(w) +
                   base.extension().string();
        }
        std::ostringstream out;
        out << "tweet_id";
        for (const Tweet& tweet : window.corpus.tweets) out << ',' << csv_escape(tweet.id);
        out << '\n';
        for (Index i = 0; i < window.combined.order(); ++i) {
            out << csv_escape(window.corpus.tweets[static_cast<std::size_t>(i)].id);
            for (Index j = 0; j < window.combined.order(); ++j)
                out << ',' << window.combined.values(i, j);
            out << '\n';
        }
        write_text_file(path, out.str());
    }
}

json pipeline_summary(const PipelineResult& result) {
    json extra;
    extra["config"] = config_json(result.config);
    extra["converged"] = result.merged.converged;
    extra["iterations_used"] = result.merged.iterations_used;

    json excluded = json::array();
    for (const ExcludedTweet& tweet : result.excluded)
        excluded.push_back({{"id", tweet.id}, {"reason", tweet.reason}});
    extra["excluded_tweet_list"] = excluded;
    extra["spam_example_texts"] = result.totals.spam_example_texts;

    json removed = json::array();
    for (const RemovedCluster& cluster : result.totals.removed_clusters)
        removed.push_back({{"cluster_id", cluster.cluster_id},
                           {"average_affinity", cluster.average_affinity},
                           {"reason", cluster.reason}});
    extra["removed_clusters"] = removed;

    json windows = json::array();
    for (const WindowResult& window : result.windows) {
        windows.push_back({{"window_start", window.window_start},
                           {"window_end", window.window_end},
                           {"tweets", window.corpus.size()},
                           {"clusters_before", window.filter_report.clusters_before},
                           {"clusters_after", window.filter_report.clusters_after},
                           {"converged", window.filtered.converged},
                           {"iterations_used", window.filtered.iterations_used}});
    }
    extra["per_window"] = windows;
    return extra;
}

ReportCounters pipeline_counters(const PipelineResult& result) {
    ReportCounters counters;
    counters.collected_tweets = result.collected_tweets;
    counters.spam_tweets_removed = result.totals.spam_tweets_removed;
    counters.excluded_tweets = static_cast<int>(result.excluded.size());
    counters.clusters_before = result.totals.clusters_before;
    counters.clusters_after = result.totals.clusters_after;
    counters.windows = static_cast<int>(result.windows.size());
    return counters;
}

PipelineResult cluster_run(CommonOptions& options, const RunConfig& config) {
    stage("load");
    Corpus corpus = load_corpus(options.input);
    std::cerr << "smerc: loaded " << corpus.size() << " tweets from " << options.input << "\n";

    stage("cluster");
    PipelineResult result = run_cluster_pipeline(corpus, config, resolve_stopwords(options));
    std::cerr << "smerc: " << result.totals.clusters_before << " clusters before filtering, "
              << result.totals.clusters_after << " after\n";

    if (!options.dump_affinity.empty()) {
        stage("dump-affinity");
        dump_affinity_csv(result, options.dump_affinity);
    }
    return result;
}

int run_cluster(CommonOptions& options) {
    RunConfig config = resolve_config(options);
    PipelineResult result = cluster_run(options, config);

    stage("report");
    fs::path dir(options.out_dir);
    write_report(result.merged, result.clustered_corpus, dir, pipeline_counters(result),
                 pipeline_summary(result), &result.merged_cluster_ids);
    std::vector<std::string> files = {"clusters.csv", "summary.json"};
    if (!options.dump_affinity.empty()) files.push_back(options.dump_affinity);
    write_manifest(dir, files);
    return 0;
}

int run_analyze_gaps(CommonOptions& options) {
    RunConfig config = resolve_config(options);
    stage("load");
    Corpus corpus = load_corpus(options.input);

    stage("extract-gaps");
    GapSample sample = extract_gaps(corpus, config.max_gap);
    std::cerr << "smerc: " << sample.related_gaps.size() << " related and "
              << sample.unrelated_gaps.size() << " unrelated pairs within "
              << config.max_gap << " s\n";

    stage("bucketize");
    BucketCurve curve = bucketize(sample, config.bucket_width, config.max_gap);

    stage("fit");
    DecayFit fit = fit_loglinear(curve, config.min_pairs_per_bucket);
    std::optional<double> recommended;
    std::string warning;
    if (fit.slope < 0.0) {
        recommended = calibrate_tp(fit);
        std::cerr << "smerc: fitted slope " << fit.slope << " per second; recommended t_p = "
                  << *recommended << " s\n";
    } else {
        warning = "no decay detected: fitted slope is non-negative";
        std::cerr << "smerc: warning: " << warning << "\n";
    }

    stage("density");
    DensityCurve related = kde_density(sample.related_gaps, std::nullopt, config.max_gap);
    DensityCurve unrelated = kde_density(sample.unrelated_gaps, std::nullopt, config.max_gap);

    stage("report");
    fs::path dir(options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    std::ostringstream gap_csv;
    gap_csv << "bucket_center,related,unrelated,p_related,ln_p\n";
    for (const Bucket& bucket : curve.buckets) {
        gap_csv << bucket.center << ',' << bucket.related_count << ',' << bucket.unrelated_count
                << ',';
        if (bucket.p_related) {
            gap_csv << *bucket.p_related << ',';
            if (*bucket.p_related > 0.0) gap_csv << std::log(*bucket.p_related);
        } else {
            gap_csv << ',';
        }
        gap_csv << '\n';
    }
    write_text_file(dir / "gap_curve.csv", gap_csv.str());

    std::ostringstream density_csv;
    density_csv << "t,related_density,unrelated_density\n";
    for (std::size_t g = 0; g < related.t.size(); ++g)
        density_csv << related.t[g] << ',' << related.density[g] << ','
                    << unrelated.density[g] << '\n';
    write_text_file(dir / "density.csv", density_csv.str());

    json fit_json;
    fit_json["slope"] = fit.slope;
    fit_json["intercept"] = fit.intercept;
    fit_json["r_squared"] = fit.r_squared;
    fit_json["buckets_used"] = fit.buckets_used;
    fit_json["related_pairs"] = sample.related_gaps.size();
    fit_json["unrelated_pairs"] = sample.unrelated_gaps.size();
    fit_json["recommended_tp"] = recommended ? json(*recommended) : json(nullptr);
    if (!warning.empty()) fit_json["warning"] = warning;
    fit_json["config"] = config_json(config);
    write_text_file(dir / "fit.json", fit_json.dump(2) + "\n");

    write_manifest(dir, {"gap_curve.csv", "density.csv", "fit.json"});
    return 0;
}

int run_evaluate(CommonOptions& options, const std::string& sweep_text) {
    RunConfig config = resolve_config(options);
    PipelineResult result = cluster_run(options, config);

    stage("evaluate");
    EventGroundTruth truth = EventGroundTruth::from_corpus(result.clustered_corpus);
    if (truth.events.empty()) throw input_error("evaluation needs a labeled corpus");
    auto links = link_clusters_to_events(result.merged, result.clustered_corpus,
                                         config.purity_floor);
    EvalResult eval = precision_recall(links, truth);

    json eval_json;
    eval_json["precision"] = eval.precision_defined ? json(eval.precision) : json(nullptr);
    eval_json["recall"] = eval.recall;
    eval_json["f1"] = eval.f1;
    eval_json["clusters_linked"] = eval.clusters_linked;
    eval_json["clusters_total"] = eval.clusters_total;
    eval_json["events_detected"] = eval.events_detected;
    eval_json["events_missed"] = eval.events_missed;
    bool has_labeled_cluster = false;
    for (const auto& group : result.merged.clusters)
        for (Index member : group.members)
            has_labeled_cluster |=
                result.clustered_corpus.tweets[static_cast<std::size_t>(member)]
                    .event_label.has_value();
    if (has_labeled_cluster) {
        QualityResult quality = cluster_quality(result.merged, result.clustered_corpus);
        eval_json["quality_mean"] = quality.mean;
    } else {
        eval_json["quality_mean"] = nullptr;
    }
    eval_json["config"] = config_json(config);

    stage("report");
    fs::path dir(options.out_dir);
    write_report(result.merged, result.clustered_corpus, dir, pipeline_counters(result),
                 pipeline_summary(result), &result.merged_cluster_ids);
    write_text_file(dir / "eval.json", eval_json.dump(2) + "\n");
    std::vector<std::string> files = {"clusters.csv", "summary.json", "eval.json"};

    if (!sweep_text.empty()) {
        stage("sweep");
        std::vector<double> deltas;
        std::stringstream parts(sweep_text);
        std::string part;
        while (std::getline(parts, part, ',')) {
            try {
                deltas.push_back(std::stod(part));
            } catch (const std::exception&) {
                throw input_error("bad delta in --sweep-deltas: '" + part + "'");
            }
        }
        Corpus corpus = load_corpus(options.input);
        auto rows = sweep_delta(corpus, config, deltas, resolve_stopwords(options));
        std::ostringstream sweep_csv;
        sweep_csv << "delta,clusters_total,clusters_linked,events_detected,events_missed,"
                     "precision,recall,f1\n";
        for (const SweepRow& row : rows)
            sweep_csv << row.delta << ',' << row.clusters_total << ',' << row.clusters_linked
                      << ',' << row.events_detected << ',' << row.events_missed << ','
                      << row.precision << ',' << row.recall << ',' << row.f1 << '\n';
        write_text_file(dir / "sweep.csv", sweep_csv.str());
        files.push_back("sweep.csv");
    }

    write_manifest(dir, files);
    return 0;
}

int run_synth(const SynthSpec& spec, const std::string& out_dir) {
    stage("generate");
    Corpus corpus = generate_synthetic(spec);
    std::cerr << "smerc: generated " << corpus.size() << " tweets\n";

    stage("report");
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    save_corpus(corpus, dir / "corpus.jsonl");
    write_manifest(dir, {"corpus.jsonl"});
    return 0;
}

void add_common_flags(CLI::App* cmd, CommonOptions& options, bool clustering_flags) {
    cmd->add_option("input", options.input, "input corpus (JSON Lines)")->required();
    cmd->add_option("--out", options.out_dir, "output directory")->required();
    cmd->set_config("--config", "", "key=value config file; flags override it");
    cmd->add_option("--stopwords", options.stopwords_file,
                    "stop word file, one word per line, # comments");
    cmd->add_option("--bucket-width", options.config.bucket_width,
                    "gap histogram bucket width, seconds");
    cmd->add_option("--max-gap", options.config.max_gap, "largest analyzed gap, seconds");
    cmd->add_option("--min-pairs", options.config.min_pairs_per_bucket,
                    "minimum pairs per bucket used in the fit");
    cmd->add_option("--seed", options.config.rng_seed, "random seed");
    if (!clustering_flags) return;
    cmd->add_option("--tp", options.config.t_p, "decay time constant, seconds");
    cmd->add_option("--delta", options.config.delta, "minimum average internal affinity");
    cmd->add_flag("--no-decay", options.config.no_decay, "disable the temporal decay");
    cmd->add_option("--preference", options.preference_text,
                    "affinity propagation preference: a number or 'median'");
    cmd->add_option("--damping", options.config.damping, "message damping in [0.5, 1)");
    cmd->add_option("--max-iter", options.config.max_iterations, "iteration cap");
    cmd->add_option("--stable-iter", options.config.stable_iterations,
                    "iterations the exemplar set must hold to converge");
    cmd->add_option("--window", options.window_seconds, "window width in seconds")
        ->check(CLI::PositiveNumber)
        ->each([&options](const std::string&) { options.window_set = true; });
    cmd->add_option("--spam-threshold", options.config.spam_duplicate_threshold,
                    "duplicate count that marks a text as spam");
    cmd->add_option("--min-cluster-size", options.config.min_cluster_size,
                    "smallest surviving cluster");
    cmd->add_option("--purity-floor", options.config.purity_floor,
                    "labeled-member share needed to link a cluster to an event");
    cmd->add_option("--dump-affinity", options.dump_affinity,
                    "write the combined affinity matrix to this CSV path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-response clustering for timestamped short messages"};
    app.require_subcommand(1);

    CommonOptions cluster_options;
    CLI::App* cluster_cmd = app.add_subcommand("cluster", "cluster a corpus around events");
    add_common_flags(cluster_cmd, cluster_options, true);

    CommonOptions gap_options;
    CLI::App* gaps_cmd =
        app.add_subcommand("analyze-gaps", "fit the relatedness decay of a labeled corpus");
    add_common_flags(gaps_cmd, gap_options, false);

    CommonOptions eval_options;
    std::string sweep_text;
    CLI::App* eval_cmd =
        app.add_subcommand("evaluate", "cluster a labeled corpus and score the clusters");
    add_common_flags(eval_cmd, eval_options, true);
    eval_cmd->add_option("--sweep-deltas", sweep_text,
                         "comma-separated delta grid; writes sweep.csv");

    SynthSpec synth_spec;
    std::string synth_out;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth_cmd->add_option("--out", synth_out, "output directory")->required();
    synth_cmd->add_option("--events", synth_spec.event_count, "number of events");
    synth_cmd->add_option("--tweets-per-event", synth_spec.tweets_per_event,
                          "responses per event");
    synth_cmd->add_option("--overlap", synth_spec.vocab_overlap,
                          "fraction of each event pool shared with all events");
    synth_cmd->add_option("--spacing", synth_spec.inter_event_spacing,
                          "seconds between events");
    synth_cmd->add_option("--background-rate", synth_spec.background_rate,
                          "unlabeled tweets per second");
    synth_cmd->add_option("--lambda", synth_spec.lambda_response,
                          "response delay rate per second");
    synth_cmd->add_option("--seed", synth_spec.seed, "random seed");
    synth_cmd->add_option("--pool-size", synth_spec.pool_size, "stems per keyword pool");
    synth_cmd->add_option("--span-padding", synth_spec.span_padding,
                          "extra background span past the last event, seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cluster_cmd->parsed()) return run_cluster(cluster_options);
        if (gaps_cmd->parsed()) return run_analyze_gaps(gap_options);
        if (eval_cmd->parsed()) return run_evaluate(eval_options, sweep_text);
        if (synth_cmd->parsed()) return run_synth(synth_spec, synth_out);
    } catch (const input_error& e) {
        std::cerr << "smerc: error in stage '" << current_stage << "': " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "smerc: internal failure in stage '" << current_stage << "': " << e.what()
                  << "\n";
        return 2;
    }
    return 2;
}
