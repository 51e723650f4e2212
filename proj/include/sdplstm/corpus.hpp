#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdplstm {

inline constexpr std::string_view kProt1Token = "PROT1";
inline constexpr std::string_view kProt2Token = "PROT2";
inline constexpr std::string_view kOtherProtToken = "PROTX";
/// PoS tag given to a collapsed entity mention.
inline constexpr std::string_view kEntityTag = "NN";

/// Protein mention covering tokens [token_start, token_end] (inclusive).
struct Entity {
  std::string entity_id;
  std::size_t token_start = 0;
  std::size_t token_end = 0;

  bool operator==(const Entity&) const = default;
};

struct SentenceRecord {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> pos_tags;
  std::vector<Entity> entities;
  /// Unordered pairs of entity ids that are annotated as interacting.
  std::vector<std::pair<std::string, std::string>> interactions;

  const Entity* find_entity(std::string_view entity_id) const;
  bool interacts(std::string_view a, std::string_view b) const;

  bool operator==(const SentenceRecord&) const = default;
};

enum class Label : std::uint8_t { NonInteracting = 0, Interacting = 1 };

/// One unordered protein pair; prot1 is the entity whose span starts first.
struct CandidatePair {
  std::string sentence_id;
  std::string prot1;
  std::string prot2;
  Label label = Label::NonInteracting;

  bool operator==(const CandidatePair&) const = default;
};

/// Stable identifier "<sentence_id>:<prot1>-<prot2>" used for folds and reports.
std::string candidate_id(const CandidatePair& pair);

struct FoldAssignment {
  std::size_t k = 0;
  std::map<std::string, std::size_t> assignments;

  std::size_t fold_of(const std::string& instance_id) const;
  std::vector<std::size_t> fold_sizes() const;
};

struct ClassStats {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  /// negatives / positives rounded to one decimal; 0 when there are no positives.
  double ratio = 0.0;
};

/// Checks every SentenceRecord invariant; throws InputError describing the first violation.
void validate(const SentenceRecord& s);

/// Parses the tab-separated corpus format, one sentence per line. Empty lines are skipped.
std::vector<SentenceRecord> parse_corpus(std::istream& in);
std::vector<SentenceRecord> load_corpus(const std::filesystem::path& path);

/// Serializes back to the corpus line format (no trailing newline).
std::string format_corpus_line(const SentenceRecord& s);
void write_corpus(std::ostream& out, const std::vector<SentenceRecord>& corpus);

std::vector<CandidatePair> generate_candidates(const SentenceRecord& s);

/// Replaces the pair's mentions by PROT1 / PROT2 and every other mention by PROTX,
/// collapsing multi-token spans to a single noun-tagged token.
SentenceRecord generalize(const SentenceRecord& s, const CandidatePair& pair);

FoldAssignment split_folds(const std::vector<std::string>& instance_ids, std::size_t k,
                           std::uint64_t seed);

ClassStats class_stats(const std::vector<CandidatePair>& pairs);

}  // namespace sdplstm
