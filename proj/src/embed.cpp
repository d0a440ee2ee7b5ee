#include "chronovec/embed.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chronovec {

int EmbeddingSet::period_index(const std::string& label) const {
    for (std::size_t t = 0; t < periods.size(); ++t)
        if (periods[t] == label) return static_cast<int>(t);
    throw LookupError("embedding set has no period \"" + label + "\"");
}

int EmbeddingSet::word_index(const std::string& word) const {
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i] == word) return static_cast<int>(i);
    throw LookupError("embedding set has no word \"" + word + "\"");
}

int EmbeddingSet::key_index(const std::string& word, const std::string& period) const {
    return period_index(period) * num_words() + word_index(word);
}

void EmbeddingSet::validate() const {
    const std::int64_t expect = static_cast<std::int64_t>(words.size()) * periods.size();
    if (rows.rows() != expect)
        throw ValidationError("embedding set: row count " + std::to_string(rows.rows()) +
                              " does not match |V| * T = " + std::to_string(expect));
    if (rows.cols() != dim) throw ValidationError("embedding set: dimension mismatch");
    if (!observed.empty() && static_cast<std::int64_t>(observed.size()) != expect)
        throw ValidationError("embedding set: observed flag count mismatch");
}

double cosine_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                         const Eigen::Ref<const Eigen::RowVectorXd>& v) {
    if (u.size() != v.size()) throw ValidationError("cosine: vector lengths differ");
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw DegenerateError("cosine of a zero vector is undefined");
    return u.dot(v) / (nu * nv);
}

namespace {

constexpr const char* kFormatTag = "chronovec-emb v1";

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Word index map shared by the reader; embedding sets can be large enough
// that the linear word_index lookup is too slow for a full file.
struct KeyIndex {
    std::unordered_map<std::string, int> words;
    std::unordered_map<std::string, int> periods;
};

}  // namespace

void write_embeddings(const EmbeddingSet& set, const std::string& path) {
    set.validate();
    std::ofstream os(path);
    if (!os) throw IoError("cannot write embeddings: " + path);
    os << kFormatTag << "\n";
    os << "method " << set.method << "\n";
    os << "dim " << set.dim << "\n";
    os << "vocab " << set.words.size() << "\n";
    os << "periods " << set.periods.size();
    for (const auto& p : set.periods) os << ' ' << p;
    os << "\n";
    os << "seed " << set.prov.seed << "\n";
    os << "config " << (set.prov.config_hash.empty() ? "none" : set.prov.config_hash) << "\n";
    os << "corpus " << to_hex16(set.prov.corpus_hash) << "\n";
    if (!set.prov.command.empty()) os << "command " << set.prov.command << "\n";
    std::size_t n_unobserved = 0;
    for (auto f : set.observed)
        if (!f) ++n_unobserved;
    if (n_unobserved > 0) {
        os << "unobserved " << n_unobserved << "\n";
        for (int t = 0; t < set.num_periods(); ++t)
            for (int i = 0; i < set.num_words(); ++i)
                if (!set.observed[static_cast<std::size_t>(t) * set.num_words() + i])
                    os << set.words[i] << '\t' << set.periods[t] << "\n";
    }
    os << "records " << set.rows.rows() << "\n";
    std::string line;
    for (int t = 0; t < set.num_periods(); ++t) {
        for (int i = 0; i < set.num_words(); ++i) {
            line.clear();
            line += set.words[i];
            line += '\t';
            line += set.periods[t];
            line += '\t';
            const auto row = set.rows.row(static_cast<std::int64_t>(t) * set.num_words() + i);
            for (int j = 0; j < set.dim; ++j) {
                if (j) line += ' ';
                line += format_value(row[j]);
            }
            line += '\n';
            os << line;
        }
    }
    if (!os) throw IoError("write failed: " + path);
}

EmbeddingSet read_embeddings(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read embeddings: " + path);
    std::string line;
    if (!std::getline(is, line)) throw FileTruncatedError(path + ": empty file");
    if (line != kFormatTag) throw FileVersionError(path + ": unsupported format tag \"" + line + "\"");

    EmbeddingSet set;
    std::size_t n_unobserved = 0;
    std::int64_t n_records = -1;
    std::int64_t n_vocab = -1;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "method") {
            ls >> set.method;
        } else if (key == "dim") {
            ls >> set.dim;
        } else if (key == "vocab") {
            ls >> n_vocab;
        } else if (key == "periods") {
            std::size_t t = 0;
            ls >> t;
            std::string p;
            while (ls >> p) set.periods.push_back(p);
            if (set.periods.size() != t)
                throw FileTruncatedError(path + ": periods header lists " + std::to_string(set.periods.size()) +
                                         " labels, expected " + std::to_string(t));
        } else if (key == "seed") {
            ls >> set.prov.seed;
        } else if (key == "config") {
            ls >> set.prov.config_hash;
        } else if (key == "corpus") {
            std::string hex;
            ls >> hex;
            set.prov.corpus_hash = std::strtoull(hex.c_str(), nullptr, 16);
        } else if (key == "command") {
            set.prov.command = line.size() > 8 ? line.substr(8) : "";
        } else if (key == "unobserved") {
            ls >> n_unobserved;
            break;
        } else if (key == "records") {
            ls >> n_records;
            break;
        } else {
            throw ValidationError(path + ": unknown header line \"" + line + "\"");
        }
    }
    if (set.dim <= 0) throw FileDimensionError(path + ": missing or invalid dim header");
    if (set.periods.empty()) throw FileTruncatedError(path + ": missing periods header");

    std::vector<std::pair<std::string, std::string>> unobserved_keys;
    if (n_records < 0) {  // we stopped at "unobserved"
        for (std::size_t k = 0; k < n_unobserved; ++k) {
            if (!std::getline(is, line)) throw FileTruncatedError(path + ": truncated unobserved list");
            auto fields = split_char(line, '\t');
            if (fields.size() != 2) throw ValidationError(path + ": bad unobserved entry \"" + line + "\"");
            unobserved_keys.emplace_back(std::string(fields[0]), std::string(fields[1]));
        }
        if (!std::getline(is, line)) throw FileTruncatedError(path + ": missing records header");
        std::istringstream ls(line);
        std::string key;
        ls >> key >> n_records;
        if (key != "records") throw ValidationError(path + ": expected records header, got \"" + line + "\"");
    }
    if (n_records < 0) throw FileTruncatedError(path + ": missing records header");

    KeyIndex idx;
    for (std::size_t t = 0; t < set.periods.size(); ++t) idx.periods.emplace(set.periods[t], static_cast<int>(t));

    std::vector<std::string> words;
    std::vector<std::vector<double>> values;
    std::vector<std::pair<int, int>> keys;  // (word, period) per record
    keys.reserve(n_records);
    for (std::int64_t r = 0; r < n_records; ++r) {
        if (!std::getline(is, line))
            throw FileTruncatedError(path + ": expected " + std::to_string(n_records) + " records, got " +
                                     std::to_string(r));
        auto fields = split_char(line, '\t');
        if (fields.size() != 3) throw ValidationError(path + ": bad record \"" + line.substr(0, 60) + "\"");
        std::string word(fields[0]);
        std::string period(fields[1]);
        auto pit = idx.periods.find(period);
        if (pit == idx.periods.end())
            throw ValidationError(path + ": record period \"" + period + "\" not in the header period list");
        int wi;
        auto wit = idx.words.find(word);
        if (wit == idx.words.end()) {
            wi = static_cast<int>(words.size());
            idx.words.emplace(word, wi);
            words.push_back(word);
        } else {
            wi = wit->second;
        }
        std::vector<double> vals;
        vals.reserve(set.dim);
        std::size_t start = 0;
        std::string_view body = fields[2];
        while (start < body.size()) {
            while (start < body.size() && body[start] == ' ') ++start;
            std::size_t end = start;
            while (end < body.size() && body[end] != ' ') ++end;
            if (end > start) {
                double v;
                if (!parse_double(body.substr(start, end - start), v))
                    throw ValidationError(path + ": non-numeric value in record for " + word);
                vals.push_back(v);
            }
            start = end;
        }
        if (static_cast<int>(vals.size()) != set.dim)
            throw FileDimensionError(path + ": record for " + word + " has " + std::to_string(vals.size()) +
                                     " values, header says dim=" + std::to_string(set.dim));
        keys.emplace_back(wi, pit->second);
        values.push_back(std::move(vals));
    }
    if (n_vocab >= 0 && static_cast<std::int64_t>(words.size()) != n_vocab)
        throw ValidationError(path + ": header vocab=" + std::to_string(n_vocab) + " but records cover " +
                              std::to_string(words.size()) + " words");
    const std::int64_t expect = static_cast<std::int64_t>(words.size()) * set.periods.size();
    if (n_records != expect)
        throw ValidationError(path + ": record count " + std::to_string(n_records) +
                              " does not cover every (word, period) pair (expected " + std::to_string(expect) + ")");

    set.words = std::move(words);
    set.rows.resize(expect, set.dim);
    std::vector<std::uint8_t> seen(expect, 0);
    for (std::int64_t r = 0; r < n_records; ++r) {
        std::int64_t k = static_cast<std::int64_t>(keys[r].second) * set.words.size() + keys[r].first;
        if (seen[k]) throw ValidationError(path + ": duplicate record for a (word, period) key");
        seen[k] = 1;
        for (int j = 0; j < set.dim; ++j) set.rows(k, j) = values[r][j];
    }
    if (!unobserved_keys.empty()) {
        set.observed.assign(expect, 1);
        for (const auto& [w, p] : unobserved_keys) {
            auto wit = idx.words.find(w);
            auto pit = idx.periods.find(p);
            if (wit == idx.words.end() || pit == idx.periods.end())
                throw ValidationError(path + ": unobserved entry references unknown key " + w + "/" + p);
            set.observed[static_cast<std::size_t>(pit->second) * set.words.size() + wit->second] = 0;
        }
    }
    set.validate();
    return set;
}

}  // namespace chronovec
