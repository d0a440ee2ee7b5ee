#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "chronovec/util.hpp"

namespace chronovec {

// One weighted corpus line: an n-gram (or whole sentence) with the calendar
// year it was observed in and how many times it occurred.
struct NgramRecord {
    std::vector<std::string> tokens;
    int year = 0;
    std::int64_t match_count = 1;
};

// Uniform split of [start_year, end_year) into periods of period_length years.
struct PeriodSpec {
    int start_year = 1900;
    int end_year = 2000;
    int period_length = 10;

    void validate() const;
    int num_periods() const { return (end_year - start_year) / period_length; }
    bool contains(int year) const { return year >= start_year && year < end_year; }
    int period_of(int year) const { return (year - start_year) / period_length; }
    std::string label(int t) const;  // "1991" for 1-year periods, "1990-1999" otherwise
};

// Token normalization applied before a record is stored. A token that fails
// the alpha filter is removed from the record (remaining tokens close ranks).
struct TokenFilter {
    bool lowercase = true;
    bool strip_pos_tags = true;  // "cat_NOUN" -> "cat"
    bool alpha_only = true;      // drop tokens with non-ASCII-letter characters
    // Returns false when the token should be dropped.
    bool apply(std::string& token) const;
};

struct PeriodizedCorpus {
    PeriodSpec spec;
    std::vector<std::string> periods;                // labels, size T
    std::vector<std::vector<NgramRecord>> segments;  // size T

    int num_periods() const { return static_cast<int>(periods.size()); }
    int period_index(const std::string& label) const;  // throws LookupError
    std::int64_t total_weighted_tokens() const;
    std::size_t total_records() const;
    std::uint64_t content_hash() const;
};

enum class CorpusFormat { ngram_tsv, plain_text };
enum class ParsePolicy { skip_and_count, abort_on_error };

struct LoadStats {
    std::size_t lines_read = 0;
    std::size_t parse_errors = 0;
    std::size_t dropped_year = 0;    // year outside the configured range
    std::size_t dropped_empty = 0;   // all tokens removed by the filter
};

// "ngram TAB year TAB match_count TAB volume_count"; volume_count is ignored.
NgramRecord parse_ngram_line(std::string_view line, std::size_t line_no);
// "YEAR TAB sentence", weight 1.
NgramRecord parse_plain_line(std::string_view line, std::size_t line_no);

// Reads the given files (gzip-compressed when the name ends in .gz), buckets
// records by year and applies the token filter. Files are parsed in parallel
// when workers > 1; the merged corpus is independent of the merge order.
PeriodizedCorpus load_corpus(const std::vector<std::string>& paths, const PeriodSpec& spec,
                             const TokenFilter& filter, CorpusFormat format = CorpusFormat::ngram_tsv,
                             ParsePolicy policy = ParsePolicy::skip_and_count,
                             LoadStats* stats = nullptr, int workers = 1);

struct Vocabulary {
    std::vector<std::string> words;  // descending count, ties lexicographic
    std::vector<std::int64_t> counts;
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(words.size()); }
    bool contains(const std::string& w) const { return index.count(w) > 0; }
    int index_of(const std::string& w) const;  // throws LookupError
    // -1 when absent; the hot path for counting.
    int find(const std::string& w) const {
        auto it = index.find(w);
        return it == index.end() ? -1 : it->second;
    }
};

// Aggregates match_count-weighted token occurrences over all periods.
// max_size == 0 means unbounded.
Vocabulary build_vocabulary(const PeriodizedCorpus& corpus, std::int64_t min_count,
                            std::int64_t max_size = 0);

// Per-period weighted occurrence counts for vocabulary words, plus per-period
// weighted token totals. Used for observedness flags and the norms benchmark.
struct PeriodWordStats {
    std::vector<std::vector<std::int64_t>> counts;  // T x |V|
    std::vector<std::int64_t> totals;               // T
};
PeriodWordStats per_period_word_stats(const PeriodizedCorpus& corpus, const Vocabulary& vocab);

}  // namespace chronovec
