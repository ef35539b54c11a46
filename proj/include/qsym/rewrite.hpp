#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qsym/ncpoly.hpp"
#include "qsym/poly_text.hpp"

namespace qsym {

/// Dense encoding of a fixed, sorted letter set. Ids increase with the
/// canonical generator order, so lexicographic comparison of encoded words
/// agrees with letterwise generator comparison.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::set<Generator>& letters)
      : letters_(letters.begin(), letters.end()) {
    if (letters_.size() >= 0xFFFF) throw std::invalid_argument("alphabet too large");
    for (size_t i = 0; i < letters_.size(); ++i)
      ids_.emplace(letters_[i], static_cast<char16_t>(i));
  }

  size_t size() const { return letters_.size(); }
  bool contains(const Generator& g) const { return ids_.count(g) != 0; }

  char16_t id(const Generator& g) const {
    auto it = ids_.find(g);
    if (it == ids_.end())
      throw std::out_of_range("alphabet: unknown letter " + generator_to_string(g));
    return it->second;
  }
  const Generator& letter(char16_t i) const { return letters_.at(i); }

  std::u16string encode(const Word& w) const {
    std::u16string s;
    s.reserve(w.size());
    for (const Generator& g : w) s.push_back(id(g));
    return s;
  }
  Word decode(const std::u16string& s) const {
    Word w;
    w.reserve(s.size());
    for (char16_t c : s) w.push_back(letter(c));
    return w;
  }

 private:
  std::vector<Generator> letters_;
  std::map<Generator, char16_t> ids_;
};

using EWord = std::u16string;

struct EMono {
  EWord w;
  Scalar c;
};

/// Encoded polynomial: strictly descending deg-lex, no zero coefficients.
using EPoly = std::vector<EMono>;

/// Deg-lex: length first, then code-unit lexicographic.
inline int eword_cmp(const EWord& a, const EWord& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b);
}

inline bool epoly_equal(const EPoly& a, const EPoly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].w != b[i].w || !(a[i].c == b[i].c)) return false;
  return true;
}

/// a + k * pre.b.suf, merged. Affixing a fixed prefix/suffix preserves the
/// deg-lex order of b, so this is a plain two-way merge.
inline EPoly epoly_add_scaled(const EPoly& a, const EPoly& b, const Scalar& k,
                              const EWord& pre = {}, const EWord& suf = {}) {
  EPoly out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  auto emit = [&](const EWord& w, const Scalar& c) {
    if (!c.is_zero()) out.push_back(EMono{w, c});
  };
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      emit(a[i].w, a[i].c);
      ++i;
      continue;
    }
    EWord bw = pre + b[j].w + suf;
    if (i == a.size()) {
      emit(std::move(bw), k * b[j].c);
      ++j;
      continue;
    }
    int cmp = eword_cmp(a[i].w, bw);
    if (cmp > 0) {
      emit(a[i].w, a[i].c);
      ++i;
    } else if (cmp < 0) {
      emit(std::move(bw), k * b[j].c);
      ++j;
    } else {
      emit(a[i].w, a[i].c + k * b[j].c);
      ++i;
      ++j;
    }
  }
  return out;
}

struct Rule {
  EWord lhs;
  EPoly rhs;  // replacement; every word strictly below lhs in deg-lex
  uint32_t id = 0;
  bool active = true;
};

struct ReductionStep {
  uint32_t rule_id;
  uint32_t pos;
  friend bool operator==(const ReductionStep& a, const ReductionStep& b) {
    return a.rule_id == b.rule_id && a.pos == b.pos;
  }
};

struct CompletionConfig {
  size_t max_degree = 8;      // ambiguity words longer than this are skipped
  size_t max_steps = 200000;  // total ambiguities processed
  size_t max_rules = 20000;
};

enum class CompletionStatus { Pending, Complete, DegreeCapped, StepCapped, RuleCapped };

inline const char* to_string(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::Pending: return "pending";
    case CompletionStatus::Complete: return "complete";
    case CompletionStatus::DegreeCapped: return "degree-capped";
    case CompletionStatus::StepCapped: return "step-capped";
    case CompletionStatus::RuleCapped: return "rule-capped";
  }
  return "?";
}

/// Degree-truncated completion of a two-sided *-ideal presentation into a
/// rewriting system, with replayable reduction traces.
///
/// Invariants: active left-hand sides form an antichain under the subword
/// order (inclusions trigger a collapse at insert time), rules are monic,
/// and all processing is strictly sequential, so identical inputs yield
/// byte-identical systems and traces.
///
/// If completion drains every ambiguity without hitting a cap the system is
/// confluent (all overlap ambiguities resolve), so a nonzero normal form
/// then certifies non-membership in the ideal, not merely "unknown".
class RewriteSystem {
 public:
  explicit RewriteSystem(Alphabet a)
      : alpha_(std::move(a)), by_first_(alpha_.size()) {}

  /// Letters are gathered from the relations (plus extras), both plain and
  /// starred. With star_close, star(r) is inserted alongside each r, since
  /// relation ideals of *-presentations are *-ideals.
  static RewriteSystem from_relations(const std::vector<NcPoly>& rels, bool star_close = true,
                                      const std::vector<Generator>& extra_letters = {}) {
    std::set<Generator> letters;
    auto collect = [&letters](const NcPoly& p) {
      for (const auto& [w, c] : p.terms())
        for (const Generator& g : w) {
          letters.insert(g);
          letters.insert(g.starred());
          letters.insert(g.unstarred());
        }
    };
    for (const NcPoly& r : rels) collect(r);
    for (const Generator& g : extra_letters) {
      letters.insert(g);
      letters.insert(g.starred());
      letters.insert(g.unstarred());
    }
    RewriteSystem rs{Alphabet(letters)};
    for (const NcPoly& r : rels) {
      rs.insert_poly(rs.encode_poly(r));
      if (star_close) rs.insert_poly(rs.encode_poly(star(r)));
      rs.drain_pending();
    }
    return rs;
  }

  const Alphabet& alphabet() const { return alpha_; }
  CompletionStatus status() const { return status_; }
  bool is_confluent() const { return status_ == CompletionStatus::Complete; }
  size_t skipped_ambiguities() const { return skipped_; }
  bool is_trivial() const { return trivial_; }
  const std::vector<Rule>& rules() const { return rules_; }

  size_t active_rule_count() const {
    size_t n = 0;
    for (const Rule& r : rules_)
      if (r.active) ++n;
    return n;
  }

  CompletionStatus complete(const CompletionConfig& cfg = {}) {
    drain_pending();
    size_t processed = 0;
    while (!queue_.empty()) {
      if (rules_.size() > cfg.max_rules) return status_ = CompletionStatus::RuleCapped;
      if (++processed > cfg.max_steps) return status_ = CompletionStatus::StepCapped;
      auto [len, w, i, j, k] = *queue_.begin();
      queue_.erase(queue_.begin());
      if (!rules_[i].active || !rules_[j].active) continue;
      if (len > cfg.max_degree) {
        ++skipped_;
        continue;
      }
      // S-polynomial of the overlap w = lhs_i . tail = head . lhs_j
      const EWord& A = rules_[i].lhs;
      const EWord& B = rules_[j].lhs;
      EWord tail = B.substr(k);
      EWord head = A.substr(0, A.size() - k);
      EPoly s = epoly_add_scaled(EPoly{}, rules_[i].rhs, Scalar::one(), EWord{}, tail);
      s = epoly_add_scaled(s, rules_[j].rhs, Scalar(-1), head, EWord{});
      insert_poly(reduce_epoly(s).nf);
      drain_pending();
    }
    inter_reduce();
    return status_ = skipped_ ? CompletionStatus::DegreeCapped : CompletionStatus::Complete;
  }

  struct Reduction {
    NcPoly normal_form;
    std::vector<ReductionStep> steps;
  };

  Reduction reduce(const NcPoly& p) const {
    auto r = reduce_epoly(encode_poly(p));
    return Reduction{decode_poly(r.nf), std::move(r.steps)};
  }

  /// Checks a reduction certificate without searching: each step must be a
  /// legal application of the named rule at the named position to the
  /// current working monomial (skipping past smaller claimed-irreducible
  /// terms), and the final polynomial must equal the claimed normal form.
  /// Success certifies input == claimed modulo the relation ideal.
  bool replay(const NcPoly& input, const std::vector<ReductionStep>& steps,
              const NcPoly& claimed) const {
    EPoly p;
    try {
      p = encode_poly(input);
    } catch (const std::out_of_range&) {
      return false;
    }
    size_t idx = 0;
    for (const ReductionStep& st : steps) {
      for (;;) {
        if (idx >= p.size()) return false;
        if (st.rule_id >= rules_.size()) return false;
        const Rule& r = rules_[st.rule_id];
        const EWord& w = p[idx].w;
        if (r.active && st.pos + r.lhs.size() <= w.size() &&
            w.compare(st.pos, r.lhs.size(), r.lhs) == 0) {
          apply_at(p, idx, r, st.pos);
          break;
        }
        ++idx;  // claimed irreducible here; retry this step on the next term
      }
    }
    EPoly want;
    try {
      want = encode_poly(claimed);
    } catch (const std::out_of_range&) {
      return false;
    }
    return epoly_equal(p, want);
  }

  /// Stable content digest (FNV-1a over the sorted active rule text).
  std::string digest() const {
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
      for (unsigned char b : s) {
        h ^= b;
        h *= 1099511628211ULL;
      }
    };
    for (const std::string& line : rule_strings()) mix(line + "\n");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
  }

  /// Active rules as "lhs -> rhs" lines, sorted by ascending deg-lex of lhs.
  std::vector<std::string> rule_strings() const {
    std::vector<const Rule*> act;
    for (const Rule& r : rules_)
      if (r.active) act.push_back(&r);
    std::sort(act.begin(), act.end(),
              [](const Rule* a, const Rule* b) { return eword_cmp(a->lhs, b->lhs) < 0; });
    std::vector<std::string> out;
    out.reserve(act.size());
    for (const Rule* r : act)
      out.push_back(poly_to_string(NcPoly(alpha_.decode(r->lhs))) + " -> " +
                    poly_to_string(decode_poly(r->rhs)));
    return out;
  }

  EPoly encode_poly(const NcPoly& p) const {
    EPoly out;
    out.reserve(p.terms().size());
    // NcPoly iterates ascending deg-lex; EPoly wants descending.
    for (const auto& [w, c] : p.terms()) out.push_back(EMono{alpha_.encode(w), c});
    std::reverse(out.begin(), out.end());
    return out;
  }

  NcPoly decode_poly(const EPoly& p) const {
    NcPoly out;
    for (const EMono& m : p) out.add_term(alpha_.decode(m.w), m.c);
    return out;
  }

 private:
  struct EReduction {
    EPoly nf;
    std::vector<ReductionStep> steps;
  };

  void apply_at(EPoly& p, size_t idx, const Rule& r, size_t pos) const {
    const EWord w = p[idx].w;
    const Scalar c = p[idx].c;
    EWord pre = w.substr(0, pos);
    EWord suf = w.substr(pos + r.lhs.size());
    EPoly tail(p.begin() + static_cast<long>(idx) + 1, p.end());
    EPoly merged = epoly_add_scaled(tail, r.rhs, c, pre, suf);
    p.resize(idx);
    p.insert(p.end(), merged.begin(), merged.end());
  }

  EReduction reduce_epoly(EPoly p) const {
    EReduction out;
    size_t idx = 0;
    while (idx < p.size()) {
      const EWord& w = p[idx].w;
      const Rule* hit = nullptr;
      size_t hit_pos = 0;
      for (size_t pos = 0; pos <= w.size() && !hit; ++pos) {
        if (trivial_rule_ != kNoRule && rules_[trivial_rule_].active) {
          hit = &rules_[trivial_rule_];
          hit_pos = pos;
          break;
        }
        if (pos == w.size()) break;
        for (uint32_t rid : by_first_[w[pos]]) {
          const Rule& r = rules_[rid];
          if (!r.active || pos + r.lhs.size() > w.size()) continue;
          if (w.compare(pos, r.lhs.size(), r.lhs) == 0) {
            hit = &r;
            hit_pos = pos;
            break;
          }
        }
      }
      if (!hit) {
        ++idx;
        continue;
      }
      out.steps.push_back(ReductionStep{hit->id, static_cast<uint32_t>(hit_pos)});
      apply_at(p, idx, *hit, hit_pos);
    }
    out.nf = std::move(p);
    return out;
  }

  void insert_poly(EPoly p) {
    p = reduce_epoly(std::move(p)).nf;
    if (p.empty()) return;
    Scalar lead = p[0].c;
    Rule r;
    r.lhs = p[0].w;
    for (size_t t = 1; t < p.size(); ++t)
      r.rhs.push_back(EMono{p[t].w, -(p[t].c / lead)});
    r.id = static_cast<uint32_t>(rules_.size());
    if (r.lhs.empty()) {
      trivial_ = true;
      trivial_rule_ = r.id;
      r.rhs.clear();  // 1 -> 0: the quotient algebra collapses
    }
    rules_.push_back(std::move(r));
    const Rule& n = rules_.back();
    if (!n.lhs.empty()) by_first_.at(n.lhs[0]).push_back(n.id);

    for (uint32_t rid = 0; rid + 1 < rules_.size(); ++rid) {
      Rule& old = rules_[rid];
      if (!old.active) continue;
      if (old.lhs.find(n.lhs) != EWord::npos) {
        old.active = false;
        EPoly full = epoly_add_scaled(EPoly{EMono{old.lhs, Scalar::one()}}, old.rhs, Scalar(-1));
        pending_.push_back(std::move(full));
      }
    }
    for (const Rule& other : rules_) {
      if (!other.active) continue;
      enqueue_overlaps(n, other);
      if (other.id != n.id) enqueue_overlaps(other, n);
    }
  }

  void enqueue_overlaps(const Rule& x, const Rule& y) {
    size_t maxk = std::min(x.lhs.size(), y.lhs.size());
    for (size_t k = 1; k < maxk; ++k) {
      if (x.lhs.compare(x.lhs.size() - k, k, y.lhs, 0, k) == 0) {
        EWord w = x.lhs + y.lhs.substr(k);
        size_t len = w.size();
        queue_.emplace(len, std::move(w), x.id, y.id, static_cast<uint32_t>(k));
      }
    }
  }

  void drain_pending() {
    while (!pending_.empty()) {
      EPoly p = std::move(pending_.front());
      pending_.erase(pending_.begin());
      insert_poly(std::move(p));
    }
  }

  void inter_reduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Rule& r : rules_) {
        if (!r.active) continue;
        EPoly nf = reduce_epoly(r.rhs).nf;
        if (!epoly_equal(nf, r.rhs)) {
          r.rhs = std::move(nf);
          changed = true;
        }
      }
    }
  }

  static constexpr uint32_t kNoRule = 0xFFFFFFFFu;

  Alphabet alpha_;
  std::vector<Rule> rules_;
  std::vector<std::vector<uint32_t>> by_first_;  // rule ids by first letter of lhs
  std::vector<EPoly> pending_;
  std::set<std::tuple<size_t, EWord, uint32_t, uint32_t, uint32_t>> queue_;
  CompletionStatus status_ = CompletionStatus::Pending;
  size_t skipped_ = 0;
  bool trivial_ = false;
  uint32_t trivial_rule_ = kNoRule;
};

enum class Verdict { Proven, NotInIdeal, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Proven: return "proven";
    case Verdict::NotInIdeal: return "not-in-ideal";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ImpliesResult {
  Verdict verdict = Verdict::Inconclusive;
  NcPoly normal_form;
  std::vector<ReductionStep> steps;
  CompletionStatus completion = CompletionStatus::Pending;
};

/// Does the two-sided *-ideal generated by `source` contain `target`?
inline ImpliesResult implies(const std::vector<NcPoly>& source, const NcPoly& target,
                             const CompletionConfig& cfg = {},
                             std::vector<Generator> extra_letters = {}) {
  for (const auto& [w, c] : target.terms())
    for (const Generator& g : w) extra_letters.push_back(g);
  RewriteSystem rs = RewriteSystem::from_relations(source, true, extra_letters);
  rs.complete(cfg);
  auto red = rs.reduce(target);
  ImpliesResult out;
  out.completion = rs.status();
  out.normal_form = red.normal_form;
  out.steps = std::move(red.steps);
  if (out.normal_form.is_zero())
    out.verdict = Verdict::Proven;
  else
    out.verdict = rs.is_confluent() ? Verdict::NotInIdeal : Verdict::Inconclusive;
  return out;
}

}  // namespace qsym
