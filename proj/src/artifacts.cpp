#include "chronovec/artifacts.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chronovec {

namespace {

void write_prov(std::ostream& os, const Provenance& prov) {
    os << "config " << (prov.config_hash.empty() ? "none" : prov.config_hash) << "\n";
    os << "seed " << prov.seed << "\n";
    os << "corpus " << to_hex16(prov.corpus_hash) << "\n";
    if (!prov.command.empty()) os << "command " << prov.command << "\n";
}

// Reads "key value" provenance lines; stops at the first unknown key and
// reports it back so the caller can continue parsing.
bool read_prov_line(const std::string& line, Provenance& prov) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "config") {
        ls >> prov.config_hash;
    } else if (key == "seed") {
        ls >> prov.seed;
    } else if (key == "corpus") {
        std::string hex;
        ls >> hex;
        prov.corpus_hash = std::strtoull(hex.c_str(), nullptr, 16);
    } else if (key == "command") {
        prov.command = line.size() > 8 ? line.substr(8) : "";
    } else {
        return false;
    }
    return true;
}

}  // namespace

void write_corpus(const PeriodizedCorpus& corpus, const std::string& path, const Provenance& prov) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write corpus artifact: " + path);
    os << "chronovec-corpus v1\n";
    os << "spec " << corpus.spec.start_year << ' ' << corpus.spec.end_year << ' '
       << corpus.spec.period_length << "\n";
    write_prov(os, prov);
    os << "records " << corpus.total_records() << "\n";
    for (const auto& seg : corpus.segments) {
        for (const auto& rec : seg) {
            os << rec.year << '\t' << rec.match_count << '\t';
            for (std::size_t i = 0; i < rec.tokens.size(); ++i)
                os << (i ? " " : "") << rec.tokens[i];
            os << "\n";
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

PeriodizedCorpus read_corpus(const std::string& path, Provenance* prov_out) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read corpus artifact: " + path);
    std::string line;
    std::getline(is, line);
    if (line != "chronovec-corpus v1") throw ValidationError(path + ": not a corpus artifact");
    PeriodSpec spec;
    Provenance prov;
    std::int64_t n_records = -1;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "spec") {
            ls >> spec.start_year >> spec.end_year >> spec.period_length;
        } else if (key == "records") {
            ls >> n_records;
            break;
        } else if (!read_prov_line(line, prov)) {
            throw ValidationError(path + ": unknown header line \"" + line + "\"");
        }
    }
    if (n_records < 0) throw ValidationError(path + ": missing records header");
    spec.validate();
    PeriodizedCorpus corpus;
    corpus.spec = spec;
    corpus.segments.resize(spec.num_periods());
    for (int t = 0; t < spec.num_periods(); ++t) corpus.periods.push_back(spec.label(t));
    for (std::int64_t r = 0; r < n_records; ++r) {
        if (!std::getline(is, line)) throw ValidationError(path + ": truncated record block");
        auto fields = split_char(line, '\t');
        if (fields.size() != 3) throw ValidationError(path + ": bad record line");
        NgramRecord rec;
        std::int64_t year;
        if (!parse_i64(fields[0], year) || !parse_i64(fields[1], rec.match_count))
            throw ValidationError(path + ": bad record numbers");
        rec.year = static_cast<int>(year);
        rec.tokens = split_ws(fields[2]);
        if (!spec.contains(rec.year)) throw ValidationError(path + ": record year outside the spec range");
        corpus.segments[spec.period_of(rec.year)].push_back(std::move(rec));
    }
    if (prov_out) *prov_out = prov;
    return corpus;
}

void write_vocab(const Vocabulary& vocab, const std::string& path, const Provenance& prov) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write vocabulary: " + path);
    os << "chronovec-vocab v1\n";
    write_prov(os, prov);
    os << "words " << vocab.size() << "\n";
    for (int i = 0; i < vocab.size(); ++i) os << vocab.words[i] << '\t' << vocab.counts[i] << "\n";
    if (!os) throw IoError("write failed: " + path);
}

Vocabulary read_vocab(const std::string& path, Provenance* prov_out) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read vocabulary: " + path);
    std::string line;
    std::getline(is, line);
    if (line != "chronovec-vocab v1") throw ValidationError(path + ": not a vocabulary artifact");
    Provenance prov;
    std::int64_t n_words = -1;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "words") {
            ls >> n_words;
            break;
        } else if (!read_prov_line(line, prov)) {
            throw ValidationError(path + ": unknown header line \"" + line + "\"");
        }
    }
    if (n_words < 0) throw ValidationError(path + ": missing words header");
    Vocabulary vocab;
    for (std::int64_t i = 0; i < n_words; ++i) {
        if (!std::getline(is, line)) throw ValidationError(path + ": truncated word list");
        auto fields = split_char(line, '\t');
        std::int64_t count;
        if (fields.size() != 2 || !parse_i64(fields[1], count))
            throw ValidationError(path + ": bad vocabulary line");
        vocab.words.emplace_back(fields[0]);
        vocab.counts.push_back(count);
        vocab.index.emplace(std::string(fields[0]), static_cast<int>(i));
    }
    if (prov_out) *prov_out = prov;
    return vocab;
}

void write_counts(const CoocCounts& counts, const Vocabulary& vocab, const std::string& path,
                  const Provenance& prov) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write counts: " + path);
    os << "chronovec-cooc v1\n";
    write_prov(os, prov);
    os << counts.to_text(vocab);
    if (!os) throw IoError("write failed: " + path);
}

Provenance read_provenance(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open artifact: " + path);
    std::string first;
    if (!std::getline(is, first)) throw ValidationError(path + ": empty file");
    Provenance prov;
    if (!first.empty() && first[0] == '{') {  // report JSON
        std::stringstream buf;
        buf << first << "\n" << is.rdbuf();
        auto j = nlohmann::json::parse(buf.str());
        if (j.contains("params")) {
            const auto& p = j["params"];
            if (p.contains("config_hash")) prov.config_hash = p["config_hash"].get<std::string>();
            if (p.contains("command")) prov.command = p["command"].get<std::string>();
            if (p.contains("seed")) prov.seed = p["seed"].get<std::uint64_t>();
            if (p.contains("train_seed")) prov.seed = p["train_seed"].get<std::uint64_t>();
            if (p.contains("corpus_hash"))
                prov.corpus_hash = std::strtoull(p["corpus_hash"].get<std::string>().c_str(), nullptr, 16);
        }
        return prov;
    }
    std::string line;
    while (std::getline(is, line)) {
        if (read_prov_line(line, prov)) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "records" || key == "words" || line.rfind("# cooc", 0) == 0) break;
    }
    return prov;
}

}  // namespace chronovec
