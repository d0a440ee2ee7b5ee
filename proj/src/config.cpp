#include "chronovec/config.hpp"

#include <fstream>
#include <sstream>

namespace chronovec {

namespace {

using nlohmann::json;

json parse_toml_subset(const std::string& text) {
    json root = json::object();
    std::string section;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    auto parse_scalar = [&](std::string v) -> json {
        v = trim(v);
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
        if (v == "true") return true;
        if (v == "false") return false;
        std::int64_t i;
        if (parse_i64(v, i)) return i;
        double d;
        if (parse_double(v, d)) return d;
        return v;  // bare string
    };
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!root.contains(section)) root[section] = json::object();
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        json parsed;
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') throw ParseError(line_no, "unterminated array value");
            parsed = json::array();
            for (auto part : split_char(value.substr(1, value.size() - 2), ',')) {
                std::string s(part);
                if (trim(s).empty()) continue;
                parsed.push_back(parse_scalar(s));
            }
        } else {
            parsed = parse_scalar(value);
        }
        if (section.empty()) throw ParseError(line_no, "key outside of a [section]");
        root[section][key] = parsed;
    }
    return root;
}

template <typename T>
void assign(const json& j, const char* key, T& out);

template <>
void assign<std::string>(const json& j, const char* key, std::string& out) {
    if (!j.is_string()) throw ValidationError(std::string("config: ") + key + " must be a string");
    out = j.get<std::string>();
}
template <>
void assign<bool>(const json& j, const char* key, bool& out) {
    if (!j.is_boolean()) throw ValidationError(std::string("config: ") + key + " must be true/false");
    out = j.get<bool>();
}
template <>
void assign<int>(const json& j, const char* key, int& out) {
    if (!j.is_number_integer()) throw ValidationError(std::string("config: ") + key + " must be an integer");
    out = j.get<int>();
}
template <>
void assign<std::int64_t>(const json& j, const char* key, std::int64_t& out) {
    if (!j.is_number_integer()) throw ValidationError(std::string("config: ") + key + " must be an integer");
    out = j.get<std::int64_t>();
}
template <>
void assign<std::uint64_t>(const json& j, const char* key, std::uint64_t& out) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ValidationError(std::string("config: ") + key + " must be an integer");
    out = j.get<std::uint64_t>();
}
template <>
void assign<double>(const json& j, const char* key, double& out) {
    if (!j.is_number()) throw ValidationError(std::string("config: ") + key + " must be a number");
    out = j.get<double>();
}
template <>
void assign<std::vector<double>>(const json& j, const char* key, std::vector<double>& out) {
    if (!j.is_array()) throw ValidationError(std::string("config: ") + key + " must be an array");
    out.clear();
    for (const auto& v : j) {
        if (!v.is_number()) throw ValidationError(std::string("config: ") + key + " must hold numbers");
        out.push_back(v.get<double>());
    }
}
template <>
void assign<std::vector<std::string>>(const json& j, const char* key, std::vector<std::string>& out) {
    if (!j.is_array()) throw ValidationError(std::string("config: ") + key + " must be an array");
    out.clear();
    for (const auto& v : j) {
        if (!v.is_string()) throw ValidationError(std::string("config: ") + key + " must hold strings");
        out.push_back(v.get<std::string>());
    }
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& root) {
    RunConfig c;
    if (!root.is_object()) throw ValidationError("config: top level must be an object of sections");
    for (auto sec = root.begin(); sec != root.end(); ++sec) {
        const std::string& s = sec.key();
        if (!sec.value().is_object()) throw ValidationError("config: section " + s + " must be a table");
        for (auto kv = sec.value().begin(); kv != sec.value().end(); ++kv) {
            const std::string full = s + "." + kv.key();
            const json& v = kv.value();
            if (full == "ingest.format") assign(v, full.c_str(), c.format);
            else if (full == "ingest.min_count") assign(v, full.c_str(), c.min_count);
            else if (full == "ingest.max_vocab") assign(v, full.c_str(), c.max_vocab);
            else if (full == "ingest.lowercase") assign(v, full.c_str(), c.lowercase);
            else if (full == "ingest.strip_pos_tags") assign(v, full.c_str(), c.strip_pos_tags);
            else if (full == "ingest.alpha_only") assign(v, full.c_str(), c.alpha_only);
            else if (full == "ingest.year_start") assign(v, full.c_str(), c.year_start);
            else if (full == "ingest.year_end") assign(v, full.c_str(), c.year_end);
            else if (full == "ingest.period_length") assign(v, full.c_str(), c.period_length);
            else if (full == "ingest.parse_policy") assign(v, full.c_str(), c.parse_policy);
            else if (full == "cooc.window") assign(v, full.c_str(), c.window);
            else if (full == "cooc.tagged_contexts") assign(v, full.c_str(), c.tagged_contexts);
            else if (full == "cooc.subsample_threshold") assign(v, full.c_str(), c.subsample_threshold);
            else if (full == "train.dim") assign(v, full.c_str(), c.dim);
            else if (full == "train.epochs") assign(v, full.c_str(), c.epochs);
            else if (full == "train.learning_rate") assign(v, full.c_str(), c.learning_rate);
            else if (full == "train.negatives") assign(v, full.c_str(), c.negatives);
            else if (full == "train.noise_exponent") assign(v, full.c_str(), c.noise_exponent);
            else if (full == "train.seed") assign(v, full.c_str(), c.seed);
            else if (full == "train.workers") assign(v, full.c_str(), c.workers);
            else if (full == "svd.sigma_exponent") assign(v, full.c_str(), c.sigma_exponent);
            else if (full == "svd.tol") assign(v, full.c_str(), c.svd_tol);
            else if (full == "svd.max_iters") assign(v, full.c_str(), c.svd_max_iters);
            else if (full == "dw2v.lambda") assign(v, full.c_str(), c.dw2v_lambda);
            else if (full == "dw2v.tau") assign(v, full.c_str(), c.dw2v_tau);
            else if (full == "dw2v.max_steps") assign(v, full.c_str(), c.dw2v_max_steps);
            else if (full == "dw2v.grad_tol") assign(v, full.c_str(), c.dw2v_grad_tol);
            else if (full == "dw2v.vocab_cap") assign(v, full.c_str(), c.dw2v_vocab_cap);
            else if (full == "eval.alpha_grid") assign(v, full.c_str(), c.alpha_grid);
            else if (full == "eval.probes") assign(v, full.c_str(), c.probes);
            else if (full == "eval.period_t") assign(v, full.c_str(), c.period_t);
            else if (full == "eval.period_t1") assign(v, full.c_str(), c.period_t1);
            else if (full == "eval.top_k") assign(v, full.c_str(), c.top_k);
            else throw ValidationError("config: unknown key \"" + full + "\"");
        }
    }
    if (c.format != "ngram" && c.format != "plain")
        throw ValidationError("config: ingest.format must be \"ngram\" or \"plain\"");
    if (c.parse_policy != "skip" && c.parse_policy != "abort")
        throw ValidationError("config: ingest.parse_policy must be \"skip\" or \"abort\"");
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    const std::string text = buf.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    nlohmann::json root;
    if (first != std::string::npos && text[first] == '{') {
        root = nlohmann::json::parse(text, nullptr, true, true);  // JSON with comments
    } else {
        root = parse_toml_subset(text);
    }
    return from_json(root);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["ingest"] = {{"format", format},          {"min_count", min_count},
                   {"max_vocab", max_vocab},    {"lowercase", lowercase},
                   {"strip_pos_tags", strip_pos_tags}, {"alpha_only", alpha_only},
                   {"year_start", year_start},  {"year_end", year_end},
                   {"period_length", period_length}, {"parse_policy", parse_policy}};
    j["cooc"] = {{"window", window},
                 {"tagged_contexts", tagged_contexts},
                 {"subsample_threshold", subsample_threshold}};
    j["train"] = {{"dim", dim},           {"epochs", epochs},
                  {"learning_rate", learning_rate}, {"negatives", negatives},
                  {"noise_exponent", noise_exponent}, {"seed", seed},
                  {"workers", workers}};
    j["svd"] = {{"sigma_exponent", sigma_exponent}, {"tol", svd_tol}, {"max_iters", svd_max_iters}};
    j["dw2v"] = {{"lambda", dw2v_lambda},
                 {"tau", dw2v_tau},
                 {"max_steps", dw2v_max_steps},
                 {"grad_tol", dw2v_grad_tol},
                 {"vocab_cap", dw2v_vocab_cap}};
    j["eval"] = {{"alpha_grid", alpha_grid}, {"probes", probes},       {"period_t", period_t},
                 {"period_t1", period_t1},   {"top_k", top_k}};
    return j;
}

std::string RunConfig::hash() const { return to_hex16(fnv1a64(to_json().dump())); }

PeriodSpec RunConfig::period_spec() const {
    PeriodSpec spec;
    spec.start_year = year_start;
    spec.end_year = year_end;
    spec.period_length = period_length;
    return spec;
}

TokenFilter RunConfig::token_filter() const {
    TokenFilter f;
    f.lowercase = lowercase;
    f.strip_pos_tags = strip_pos_tags;
    f.alpha_only = alpha_only;
    return f;
}

CorpusFormat RunConfig::corpus_format() const {
    return format == "plain" ? CorpusFormat::plain_text : CorpusFormat::ngram_tsv;
}

ParsePolicy RunConfig::policy() const {
    return parse_policy == "abort" ? ParsePolicy::abort_on_error : ParsePolicy::skip_and_count;
}

MethodOptions RunConfig::method_options() const {
    MethodOptions opts;
    opts.window = window;
    opts.dim = dim;
    opts.sigma_exponent = sigma_exponent;
    opts.train.epochs = epochs;
    opts.train.learning_rate = learning_rate;
    opts.train.negatives = negatives;
    opts.train.noise_exponent = noise_exponent;
    opts.train.seed = seed;
    opts.train.workers = workers;
    opts.stream.subsample_threshold = subsample_threshold;
    opts.stream.seed = seed;
    opts.stream.tagged_contexts = tagged_contexts;
    opts.svd.tol = svd_tol;
    opts.svd.max_iters = svd_max_iters;
    opts.svd.seed = seed;
    opts.dw2v_lambda = dw2v_lambda;
    opts.dw2v_tau = dw2v_tau;
    opts.dw2v.max_steps = dw2v_max_steps;
    opts.dw2v.grad_tol_rel = dw2v_grad_tol;
    opts.dw2v.vocab_cap = dw2v_vocab_cap;
    opts.dw2v.seed = seed;
    return opts;
}

}  // namespace chronovec
