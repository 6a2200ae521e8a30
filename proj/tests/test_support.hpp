#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "smerc/evaluation.hpp"
#include "smerc/types.hpp"

namespace smerc::testing {

// Two bursts of interchangeable goal tweets 20 minutes apart, plus
// mutually dissimilar background chatter. Burst tweets t1..t6 carry label
// "goal-1", t7..t17 "goal-2"; background tweets bg1..bg18 are unlabeled.
inline Corpus eddie_fixture() {
    const char* texts[] = {
        "Eddie Betts goal, you beauty!!! #AFLCrowsCats",
        "goal for Eddie Betts, crows up #AFLCrowsCats",
        "Betts! beauty of a goal, crows #AFLCrowsCats",
        "crows beauty! Eddie with the goal #AFLCrowsCats",
        "Eddie Betts beauty, crows roar #AFLCrowsCats",
        "what a goal Betts, crows beauty #AFLCrowsCats",
        "beauty goal from Eddie Betts #AFLCrowsCats",
        "crows goal! Eddie you beauty #AFLCrowsCats",
        "Betts goal, crows beauty again #AFLCrowsCats",
        "Eddie goal, Betts for the crows #AFLCrowsCats",
        "beauty Eddie, Betts of the crows #AFLCrowsCats",
        "goal Eddie goal! Betts beauty #AFLCrowsCats",
        "crows Betts beauty goal again #AFLCrowsCats",
        "Eddie the beauty, goal for crows #AFLCrowsCats",
        "Betts crows Eddie, what a goal #AFLCrowsCats",
        "goal beauty goal, Eddie crows #AFLCrowsCats",
        "Eddie beauty, Betts goal crows #AFLCrowsCats",
    };
    const char* bg_texts[] = {
        "match tonight siren echoing loud",
        "match pies parking nightmare outside",
        "match grabbing chips before bounce",
        "match umpire holding whistle early",
        "match scarf weather turning cold",
        "match radio commentary crackling static",
        "match banner unfurled cheer squad",
        "match queue snaking membership gate",
        "match pastie sauce dropped everywhere",
        "match lights towering over oval",
        "match tram packed heading home",
        "match seagulls circling empty stands",
        "match scoreboard flickering between quarters",
        "match anthem singer nervous tonight",
        "match rain holding off luckily",
        "match jumper clash confusing commentators",
        "match footy record sold out",
        "match curtain raiser finished earlier",
    };
    const std::int64_t base = 1506074051;  // 2017-09-22T09:54:11Z
    const std::int64_t offsets[] = {0,    6,    9,    21,   40,   111,  1223, 1225, 1226,
                                    1227, 1228, 1234, 1234, 1236, 1237, 1243, 1279};
    Corpus corpus;
    corpus.source_name = "eddie";
    for (int i = 0; i < 17; ++i) {
        Tweet tweet;
        tweet.id = "t" + std::to_string(i + 1);
        tweet.timestamp = base + offsets[i];
        tweet.text = texts[i];
        tweet.event_label = i < 6 ? "goal-1" : "goal-2";
        corpus.tweets.push_back(tweet);
    }
    for (int i = 0; i < 18; ++i) {
        Tweet tweet;
        tweet.id = "bg" + std::to_string(i + 1);
        tweet.timestamp = base + 30 + 70 * i;
        tweet.text = bg_texts[i];
        corpus.tweets.push_back(tweet);
    }
    std::stable_sort(corpus.tweets.begin(), corpus.tweets.end(),
                     [](const Tweet& a, const Tweet& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    return corpus;
}

// Corpus with a planted exponential relatedness decay; the relatedness
// probability per gap bucket falls off with rate lambda 0.01058/s.
inline Corpus slope_recovery_corpus(std::uint64_t seed) {
    SynthSpec spec;
    spec.event_count = 2;
    spec.tweets_per_event = 70;
    spec.vocab_overlap = 0.0;
    spec.inter_event_spacing = 700.0;
    spec.span_padding = 450.0;
    spec.background_rate = 1300.0 / 1850.0;
    spec.lambda_response = 0.01058;
    spec.seed = seed;
    return generate_synthetic(spec);
}

// Two textually indistinguishable events far apart in time.
inline Corpus two_burst_corpus(std::uint64_t seed, double spacing = 2400.0) {
    SynthSpec spec;
    spec.event_count = 2;
    spec.tweets_per_event = 250;
    spec.vocab_overlap = 1.0;
    spec.inter_event_spacing = spacing;
    spec.background_rate = 0.0;
    spec.lambda_response = 0.02;
    spec.seed = seed;
    return generate_synthetic(spec);
}

// Unique scratch directory under the build tree.
inline std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() /
               ("smerc_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Random corpus of stem-stable words for matrix fuzzing: every tweet gets
// a private marker stem, so TF-IDF rows are never all-zero.
inline Corpus random_stem_corpus(std::mt19937_64& rng, int max_tweets = 10, int vocab = 20) {
    static const char* words[] = {"bat",  "dog",  "gum",  "kit",  "mat",  "pod",  "tub",
                                  "zag",  "bid",  "dot",  "gap",  "kid",  "mop",  "pit",
                                  "tag",  "zip",  "bud",  "dip",  "got",  "kat"};
    const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_tweets - 1));
    Corpus corpus;
    corpus.source_name = "fuzz";
    for (int i = 0; i < m; ++i) {
        Tweet tweet;
        tweet.id = "f" + std::to_string(i);
        tweet.timestamp = 1000 + static_cast<std::int64_t>(rng() % 600);
        const int count = 1 + static_cast<int>(rng() % 6);
        std::string text = "marker" + std::to_string(i);  // private stem
        for (int w = 0; w < count; ++w) {
            text += ' ';
            text += words[rng() % static_cast<std::uint64_t>(vocab)];
        }
        tweet.text = text;
        corpus.tweets.push_back(tweet);
    }
    std::stable_sort(corpus.tweets.begin(), corpus.tweets.end(),
                     [](const Tweet& a, const Tweet& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.id < b.id;
                     });
    return corpus;
}

}  // namespace smerc::testing
