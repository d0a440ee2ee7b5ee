#include "chronovec/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <future>

namespace chronovec {

void PeriodSpec::validate() const {
    if (end_year <= start_year)
        throw ValidationError("period spec: end_year must be greater than start_year");
    if (period_length < 1) throw ValidationError("period spec: period_length must be >= 1");
    if ((end_year - start_year) % period_length != 0)
        throw ValidationError("period spec: year span must be divisible by period_length");
    if (num_periods() < 2) throw ValidationError("period spec: need at least 2 periods");
}

std::string PeriodSpec::label(int t) const {
    int a = start_year + t * period_length;
    if (period_length == 1) return std::to_string(a);
    return std::to_string(a) + "-" + std::to_string(a + period_length - 1);
}

bool TokenFilter::apply(std::string& token) const {
    if (strip_pos_tags) {
        // Google annotates tokens as "word_TAG" with an all-caps tag.
        auto pos = token.rfind('_');
        if (pos != std::string::npos && pos > 0 && pos + 1 < token.size()) {
            bool tag = true;
            for (std::size_t i = pos + 1; i < token.size(); ++i) {
                char c = token[i];
                if (!(std::isupper(static_cast<unsigned char>(c)) || c == '.')) {
                    tag = false;
                    break;
                }
            }
            if (tag) token.resize(pos);
        }
    }
    if (token.empty()) return false;
    if (alpha_only) {
        for (char c : token)
            if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    }
    if (lowercase) {
        for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return true;
}

int PeriodizedCorpus::period_index(const std::string& label) const {
    for (std::size_t t = 0; t < periods.size(); ++t)
        if (periods[t] == label) return static_cast<int>(t);
    throw LookupError("unknown period label: " + label);
}

std::int64_t PeriodizedCorpus::total_weighted_tokens() const {
    std::int64_t n = 0;
    for (const auto& seg : segments)
        for (const auto& rec : seg) n += rec.match_count * static_cast<std::int64_t>(rec.tokens.size());
    return n;
}

std::size_t PeriodizedCorpus::total_records() const {
    std::size_t n = 0;
    for (const auto& seg : segments) n += seg.size();
    return n;
}

std::uint64_t PeriodizedCorpus::content_hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t t = 0; t < segments.size(); ++t) {
        h = fnv1a64(periods[t], h);
        for (const auto& rec : segments[t]) {
            h = fnv1a64_u64(static_cast<std::uint64_t>(rec.year), h);
            h = fnv1a64_u64(static_cast<std::uint64_t>(rec.match_count), h);
            for (const auto& tok : rec.tokens) h = fnv1a64(tok, fnv1a64_u64(0x1f, h));
        }
    }
    return h;
}

NgramRecord parse_ngram_line(std::string_view line, std::size_t line_no) {
    auto fields = split_char(line, '\t');
    if (fields.size() < 3) throw ParseError(line_no, "expected at least 3 tab-separated fields");
    NgramRecord rec;
    rec.tokens = split_ws(fields[0]);
    if (rec.tokens.empty()) throw ParseError(line_no, "empty ngram field");
    std::int64_t year = 0, count = 0;
    if (!parse_i64(fields[1], year)) throw ParseError(line_no, "year is not an integer");
    if (!parse_i64(fields[2], count)) throw ParseError(line_no, "match_count is not an integer");
    if (count < 1) throw ParseError(line_no, "match_count must be >= 1");
    rec.year = static_cast<int>(year);
    rec.match_count = count;
    return rec;
}

NgramRecord parse_plain_line(std::string_view line, std::size_t line_no) {
    auto pos = line.find('\t');
    if (pos == std::string_view::npos) throw ParseError(line_no, "expected \"YEAR<TAB>sentence\"");
    std::int64_t year = 0;
    if (!parse_i64(line.substr(0, pos), year)) throw ParseError(line_no, "year is not an integer");
    NgramRecord rec;
    rec.tokens = split_ws(line.substr(pos + 1));
    if (rec.tokens.empty()) throw ParseError(line_no, "empty sentence");
    rec.year = static_cast<int>(year);
    rec.match_count = 1;
    return rec;
}

namespace {

// Line-by-line reader over plain or gzip files.
class LineReader {
public:
    explicit LineReader(const std::string& path) {
        gz_ = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
        if (gz_) {
            gzf_ = gzopen(path.c_str(), "rb");
            if (!gzf_) throw IoError("cannot open file: " + path);
        } else {
            file_.open(path);
            if (!file_) throw IoError("cannot open file: " + path);
        }
    }
    ~LineReader() {
        if (gzf_) gzclose(gzf_);
    }
    bool next(std::string& line) {
        if (!gz_) {
            if (!std::getline(file_, line)) return false;
        } else {
            line.clear();
            char buf[1 << 14];
            bool got = false;
            while (true) {
                if (!gzgets(gzf_, buf, sizeof(buf))) break;
                got = true;
                line += buf;
                if (!line.empty() && line.back() == '\n') {
                    line.pop_back();
                    break;
                }
            }
            if (!got) return false;
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

private:
    bool gz_ = false;
    std::ifstream file_;
    gzFile gzf_ = nullptr;
};

struct FileResult {
    std::vector<std::vector<NgramRecord>> segments;
    LoadStats stats;
};

FileResult load_one_file(const std::string& path, const PeriodSpec& spec, const TokenFilter& filter,
                         CorpusFormat format, ParsePolicy policy) {
    FileResult out;
    out.segments.resize(spec.num_periods());
    LineReader reader(path);
    std::string line;
    std::size_t line_no = 0;
    while (reader.next(line)) {
        ++line_no;
        ++out.stats.lines_read;
        if (line.empty()) continue;
        NgramRecord rec;
        try {
            rec = format == CorpusFormat::ngram_tsv ? parse_ngram_line(line, line_no)
                                                    : parse_plain_line(line, line_no);
        } catch (const ParseError& e) {
            if (policy == ParsePolicy::abort_on_error)
                throw ParseError(e.line_no, path + ": " + e.what());
            ++out.stats.parse_errors;
            continue;
        }
        if (!spec.contains(rec.year)) {
            ++out.stats.dropped_year;
            continue;
        }
        std::vector<std::string> kept;
        kept.reserve(rec.tokens.size());
        for (auto& tok : rec.tokens)
            if (filter.apply(tok)) kept.push_back(std::move(tok));
        if (kept.empty()) {
            ++out.stats.dropped_empty;
            continue;
        }
        rec.tokens = std::move(kept);
        out.segments[spec.period_of(rec.year)].push_back(std::move(rec));
    }
    return out;
}

}  // namespace

PeriodizedCorpus load_corpus(const std::vector<std::string>& paths, const PeriodSpec& spec,
                             const TokenFilter& filter, CorpusFormat format, ParsePolicy policy,
                             LoadStats* stats, int workers) {
    spec.validate();
    if (paths.empty()) throw ValidationError("no input files given");

    PeriodizedCorpus corpus;
    corpus.spec = spec;
    corpus.segments.resize(spec.num_periods());
    for (int t = 0; t < spec.num_periods(); ++t) corpus.periods.push_back(spec.label(t));

    std::vector<FileResult> results(paths.size());
    if (workers > 1 && paths.size() > 1) {
        std::vector<std::future<FileResult>> futs;
        for (const auto& p : paths)
            futs.push_back(std::async(std::launch::async, load_one_file, p, spec, filter, format, policy));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < paths.size(); ++i)
            results[i] = load_one_file(paths[i], spec, filter, format, policy);
    }

    LoadStats total;
    for (auto& r : results) {
        total.lines_read += r.stats.lines_read;
        total.parse_errors += r.stats.parse_errors;
        total.dropped_year += r.stats.dropped_year;
        total.dropped_empty += r.stats.dropped_empty;
        for (int t = 0; t < spec.num_periods(); ++t) {
            auto& dst = corpus.segments[t];
            auto& src = r.segments[t];
            dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
        }
    }
    if (stats) *stats = total;
    if (total.parse_errors > 0)
        log_warn("skipped " + std::to_string(total.parse_errors) + " malformed lines");

    if (corpus.total_records() == 0) throw ValidationError("empty corpus: no records in the configured year range");
    return corpus;
}

int Vocabulary::index_of(const std::string& w) const {
    auto it = index.find(w);
    if (it == index.end()) throw LookupError("word not in vocabulary: " + w);
    return it->second;
}

Vocabulary build_vocabulary(const PeriodizedCorpus& corpus, std::int64_t min_count,
                            std::int64_t max_size) {
    if (corpus.total_records() == 0) throw ValidationError("cannot build vocabulary from an empty corpus");
    std::unordered_map<std::string, std::int64_t> tally;
    for (const auto& seg : corpus.segments)
        for (const auto& rec : seg)
            for (const auto& tok : rec.tokens) tally[tok] += rec.match_count;

    std::vector<std::pair<std::string, std::int64_t>> items;
    items.reserve(tally.size());
    for (auto& kv : tally)
        if (kv.second >= min_count) items.emplace_back(kv.first, kv.second);
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (max_size > 0 && static_cast<std::int64_t>(items.size()) > max_size) items.resize(max_size);
    if (items.empty()) throw ValidationError("vocabulary is empty after applying min_count");

    Vocabulary vocab;
    vocab.words.reserve(items.size());
    vocab.counts.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        vocab.words.push_back(items[i].first);
        vocab.counts.push_back(items[i].second);
        vocab.index.emplace(items[i].first, static_cast<int>(i));
    }
    return vocab;
}

PeriodWordStats per_period_word_stats(const PeriodizedCorpus& corpus, const Vocabulary& vocab) {
    PeriodWordStats stats;
    stats.counts.assign(corpus.num_periods(), std::vector<std::int64_t>(vocab.size(), 0));
    stats.totals.assign(corpus.num_periods(), 0);
    for (int t = 0; t < corpus.num_periods(); ++t) {
        for (const auto& rec : corpus.segments[t]) {
            stats.totals[t] += rec.match_count * static_cast<std::int64_t>(rec.tokens.size());
            for (const auto& tok : rec.tokens) {
                int i = vocab.find(tok);
                if (i >= 0) stats.counts[t][i] += rec.match_count;
            }
        }
    }
    return stats;
}

}  // namespace chronovec
