#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chronovec/corpus.hpp"

namespace chronovec {

using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Provenance {
    std::string config_hash = "none";
    std::uint64_t seed = 0;
    std::uint64_t corpus_hash = 0;
    std::string command;  // exact command line that produced the artifact
};

// Dense row vectors keyed by (word, period), laid out period-major:
// row(t * |V| + i) is word i in period t. Every (word, period) pair has a
// row; `observed` marks whether the word actually occurred in that period.
struct EmbeddingSet {
    std::string method;  // ppmi | svd | tsvd | sgns | tsgns | dw2v
    int dim = 0;
    std::vector<std::string> periods;
    std::vector<std::string> words;
    MatrixRM rows;
    std::vector<std::uint8_t> observed;
    Provenance prov;

    int num_words() const { return static_cast<int>(words.size()); }
    int num_periods() const { return static_cast<int>(periods.size()); }
    // Whether cross-period cosines are meaningful without an alignment map.
    bool aligned() const { return method == "ppmi" || method == "tsvd" || method == "tsgns" || method == "dw2v"; }

    int period_index(const std::string& label) const;
    int word_index(const std::string& word) const;
    int key_index(const std::string& word, const std::string& period) const;
    Eigen::Map<const Eigen::RowVectorXd> vector_of(int word, int period) const {
        return Eigen::Map<const Eigen::RowVectorXd>(rows.row(period * num_words() + word).data(), dim);
    }
    bool is_observed(int word, int period) const {
        return observed.empty() || observed[static_cast<std::size_t>(period) * num_words() + word] != 0;
    }
    void validate() const;
};

double cosine_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& u,
                         const Eigen::Ref<const Eigen::RowVectorXd>& v);

// Distinct failure modes of the embedding file reader.
struct FileVersionError : Error {
    using Error::Error;
};
struct FileTruncatedError : Error {
    using Error::Error;
};
struct FileDimensionError : Error {
    using Error::Error;
};

// "chronovec-emb v1" text format. Values are printed with 9 significant
// digits; read(write(E)) reproduces the same bytes on a rewrite.
void write_embeddings(const EmbeddingSet& set, const std::string& path);
EmbeddingSet read_embeddings(const std::string& path);

}  // namespace chronovec
