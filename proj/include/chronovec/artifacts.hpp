#pragma once

#include <string>

#include "chronovec/cooc.hpp"
#include "chronovec/corpus.hpp"
#include "chronovec/embed.hpp"

namespace chronovec {

// Text snapshots of intermediate pipeline artifacts. Each carries the
// config hash, seed and exact command line of the producing run.

void write_corpus(const PeriodizedCorpus& corpus, const std::string& path, const Provenance& prov);
PeriodizedCorpus read_corpus(const std::string& path, Provenance* prov = nullptr);

void write_vocab(const Vocabulary& vocab, const std::string& path, const Provenance& prov);
Vocabulary read_vocab(const std::string& path, Provenance* prov = nullptr);

void write_counts(const CoocCounts& counts, const Vocabulary& vocab, const std::string& path,
                  const Provenance& prov);

// Reads the provenance block of any chronovec artifact (corpus, vocab,
// counts, embeddings, report JSON).
Provenance read_provenance(const std::string& path);

}  // namespace chronovec
