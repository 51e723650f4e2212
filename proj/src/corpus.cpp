#include "sdplstm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sdplstm/error.hpp"
#include "sdplstm/rng.hpp"
#include "text_util.hpp"

namespace sdplstm {

namespace {

bool is_reserved(std::string_view token) {
  return token == kProt1Token || token == kProt2Token || token == kOtherProtToken;
}

bool valid_entity_id(std::string_view id) {
  if (id.empty()) return false;
  return id.find_first_of(":;-| \t") == std::string_view::npos;
}

// Entity indices ordered by span start.
std::vector<std::size_t> entities_by_start(const SentenceRecord& s) {
  std::vector<std::size_t> order(s.entities.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.entities[a].token_start < s.entities[b].token_start;
  });
  return order;
}

SentenceRecord parse_line(std::string_view line, std::size_t line_no) {
  auto fields = detail::split(line, '\t');
  if (fields.size() != 3 && fields.size() != 4) {
    throw ParseError(line_no, "expected 3 or 4 tab-separated fields, got " +
                                  std::to_string(fields.size()));
  }
  SentenceRecord s;
  s.id = std::string(fields[0]);
  if (s.id.empty()) throw ParseError(line_no, "empty sentence id");

  if (fields[1].empty()) throw ParseError(line_no, "sentence has no tokens");
  for (std::string_view item : detail::split(fields[1], ' ')) {
    if (item.empty()) throw ParseError(line_no, "empty token|pos item (double space?)");
    auto tp = detail::split(item, '|');
    if (tp.size() != 2 || tp[0].empty() || tp[1].empty()) {
      throw ParseError(line_no, "token item '" + std::string(item) + "' is not token|pos");
    }
    if (item.find_first_of(";:") != std::string_view::npos) {
      throw ParseError(line_no, "token item '" + std::string(item) + "' contains ';' or ':'");
    }
    s.tokens.emplace_back(tp[0]);
    s.pos_tags.emplace_back(tp[1]);
  }

  if (!fields[2].empty()) {
    for (std::string_view item : detail::split(fields[2], ';')) {
      auto parts = detail::split(item, ':');
      if (parts.size() != 3) {
        throw ParseError(line_no, "entity '" + std::string(item) + "' is not id:start:end");
      }
      auto start = detail::parse_number<std::size_t>(parts[1]);
      auto end = detail::parse_number<std::size_t>(parts[2]);
      if (!valid_entity_id(parts[0]) || !start || !end) {
        throw ParseError(line_no, "malformed entity '" + std::string(item) + "'");
      }
      s.entities.push_back(Entity{std::string(parts[0]), *start, *end});
    }
  }

  if (fields.size() == 4 && !fields[3].empty()) {
    for (std::string_view item : detail::split(fields[3], ';')) {
      auto parts = detail::split(item, '-');
      if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
        throw ParseError(line_no, "interaction '" + std::string(item) + "' is not idA-idB");
      }
      s.interactions.emplace_back(std::string(parts[0]), std::string(parts[1]));
    }
  }

  try {
    validate(s);
  } catch (const InputError& e) {
    throw ParseError(line_no, e.what());
  }
  for (const auto& token : s.tokens) {
    if (is_reserved(token)) {
      throw ParseError(line_no, "reserved token '" + token + "' in input corpus");
    }
  }
  return s;
}

}  // namespace

const Entity* SentenceRecord::find_entity(std::string_view entity_id) const {
  for (const auto& e : entities) {
    if (e.entity_id == entity_id) return &e;
  }
  return nullptr;
}

bool SentenceRecord::interacts(std::string_view a, std::string_view b) const {
  return std::any_of(interactions.begin(), interactions.end(), [&](const auto& p) {
    return (p.first == a && p.second == b) || (p.first == b && p.second == a);
  });
}

std::string candidate_id(const CandidatePair& pair) {
  return pair.sentence_id + ":" + pair.prot1 + "-" + pair.prot2;
}

std::size_t FoldAssignment::fold_of(const std::string& instance_id) const {
  auto it = assignments.find(instance_id);
  if (it == assignments.end()) throw InputError("instance '" + instance_id + "' has no fold");
  return it->second;
}

std::vector<std::size_t> FoldAssignment::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (const auto& [id, fold] : assignments) ++sizes[fold];
  return sizes;
}

void validate(const SentenceRecord& s) {
  if (s.pos_tags.size() != s.tokens.size()) {
    throw InputError("sentence '" + s.id + "': " + std::to_string(s.tokens.size()) +
                     " tokens but " + std::to_string(s.pos_tags.size()) + " PoS tags");
  }
  std::set<std::string> ids;
  for (const auto& e : s.entities) {
    if (e.token_start > e.token_end || e.token_end >= s.tokens.size()) {
      throw InputError("entity '" + e.entity_id + "' span " + std::to_string(e.token_start) +
                       ":" + std::to_string(e.token_end) + " outside " +
                       std::to_string(s.tokens.size()) + " tokens");
    }
    if (!ids.insert(e.entity_id).second) {
      throw InputError("entity id '" + e.entity_id + "' declared twice");
    }
  }
  auto order = entities_by_start(s);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Entity& prev = s.entities[order[i - 1]];
    const Entity& cur = s.entities[order[i]];
    if (cur.token_start <= prev.token_end) {
      throw InputError("entities '" + prev.entity_id + "' and '" + cur.entity_id +
                       "' overlap");
    }
  }
  for (const auto& [a, b] : s.interactions) {
    if (a == b) throw InputError("interaction " + a + "-" + b + " pairs an entity with itself");
    if (!ids.count(a) || !ids.count(b)) {
      throw InputError("interaction " + a + "-" + b + " references an undeclared entity");
    }
  }
}

std::vector<SentenceRecord> parse_corpus(std::istream& in) {
  std::vector<SentenceRecord> corpus;
  std::unordered_set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    SentenceRecord s = parse_line(line, line_no);
    if (!seen.insert(s.id).second) {
      throw DuplicateSentenceId("'" + s.id + "' at line " + std::to_string(line_no));
    }
    corpus.push_back(std::move(s));
  }
  return corpus;
}

std::vector<SentenceRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  return parse_corpus(in);
}

std::string format_corpus_line(const SentenceRecord& s) {
  std::ostringstream out;
  out << s.id << '\t';
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i) out << ' ';
    out << s.tokens[i] << '|' << s.pos_tags[i];
  }
  out << '\t';
  for (std::size_t i = 0; i < s.entities.size(); ++i) {
    if (i) out << ';';
    const auto& e = s.entities[i];
    out << e.entity_id << ':' << e.token_start << ':' << e.token_end;
  }
  out << '\t';
  for (std::size_t i = 0; i < s.interactions.size(); ++i) {
    if (i) out << ';';
    out << s.interactions[i].first << '-' << s.interactions[i].second;
  }
  return out.str();
}

void write_corpus(std::ostream& out, const std::vector<SentenceRecord>& corpus) {
  for (const auto& s : corpus) out << format_corpus_line(s) << '\n';
}

std::vector<CandidatePair> generate_candidates(const SentenceRecord& s) {
  std::vector<CandidatePair> pairs;
  auto order = entities_by_start(s);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& a = s.entities[order[i]].entity_id;
      const auto& b = s.entities[order[j]].entity_id;
      pairs.push_back(CandidatePair{
          s.id, a, b, s.interacts(a, b) ? Label::Interacting : Label::NonInteracting});
    }
  }
  return pairs;
}

SentenceRecord generalize(const SentenceRecord& s, const CandidatePair& pair) {
  if (pair.sentence_id != s.id) {
    throw EntityNotInSentence("pair belongs to sentence '" + pair.sentence_id + "', not '" +
                              s.id + "'");
  }
  for (const auto* id : {&pair.prot1, &pair.prot2}) {
    if (!s.find_entity(*id)) {
      throw EntityNotInSentence("'" + *id + "' in sentence '" + s.id + "'");
    }
  }

  // owner[i] = index of the entity covering token i, or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(s.tokens.size(), npos);
  for (std::size_t e = 0; e < s.entities.size(); ++e) {
    for (std::size_t t = s.entities[e].token_start; t <= s.entities[e].token_end; ++t) {
      owner[t] = e;
    }
  }

  SentenceRecord out;
  out.id = s.id;
  out.interactions = s.interactions;
  out.entities = s.entities;
  for (std::size_t t = 0; t < s.tokens.size(); ++t) {
    std::size_t e = owner[t];
    if (e == npos) {
      out.tokens.push_back(s.tokens[t]);
      out.pos_tags.push_back(s.pos_tags[t]);
      continue;
    }
    if (t != s.entities[e].token_start) continue;
    const auto& id = s.entities[e].entity_id;
    std::string_view replacement = id == pair.prot1   ? kProt1Token
                                   : id == pair.prot2 ? kProt2Token
                                                      : kOtherProtToken;
    out.entities[e].token_start = out.entities[e].token_end = out.tokens.size();
    out.tokens.emplace_back(replacement);
    out.pos_tags.emplace_back(kEntityTag);
  }
  return out;
}

FoldAssignment split_folds(const std::vector<std::string>& instance_ids, std::size_t k,
                           std::uint64_t seed) {
  if (k < 2) throw BadK("k must be at least 2, got " + std::to_string(k));
  if (k > instance_ids.size()) {
    throw BadK("k = " + std::to_string(k) + " exceeds " +
               std::to_string(instance_ids.size()) + " instances");
  }
  // Sorting first makes the assignment depend on the id set, not the caller's order.
  std::vector<std::string> ids = instance_ids;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError("duplicate instance id in fold split");
  }
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(ids));

  FoldAssignment folds;
  folds.k = k;
  for (std::size_t i = 0; i < ids.size(); ++i) folds.assignments.emplace(ids[i], i % k);
  return folds;
}

ClassStats class_stats(const std::vector<CandidatePair>& pairs) {
  ClassStats stats;
  for (const auto& p : pairs) {
    if (p.label == Label::Interacting) {
      ++stats.positives;
    } else {
      ++stats.negatives;
    }
  }
  if (stats.positives > 0) {
    double raw = static_cast<double>(stats.negatives) / static_cast<double>(stats.positives);
    stats.ratio = std::round(raw * 10.0) / 10.0;
  }
  return stats;
}

}  // namespace sdplstm
