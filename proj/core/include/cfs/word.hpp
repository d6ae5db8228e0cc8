#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cfs {

// Finite admissible word: partial quotients in [1, N] for some alphabet
// bound N fixed by the caller.
struct Word {
  std::vector<int> syms;

  Word() = default;
  Word(std::initializer_list<int> list) : syms(list) {}
  explicit Word(std::vector<int> v) : syms(std::move(v)) {}

  size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
  int operator[](size_t i) const { return syms[i]; }
  int& operator[](size_t i) { return syms[i]; }
  auto begin() const { return syms.begin(); }
  auto end() const { return syms.end(); }
  void push_back(int s) { syms.push_back(s); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.syms <=> b.syms;
  }

  Word reversed() const { return Word(std::vector<int>(syms.rbegin(), syms.rend())); }
  Word rotated_left(size_t k) const;
  Word concat(const Word& other) const;
  std::string str() const;  // "(2,1,1,2)"

  // Symbols all >= 1 and, when bound > 0, <= bound.
  bool valid(int bound = 0) const;
};

// Bi-infinite eventually periodic symbol data: ...period period | preperiod-
// style on the forward side only; the backward side is determined by the
// period. preperiod may be empty (pure periodicity), period may not.
struct PeriodicSeq {
  Word preperiod;
  Word period;

  bool valid(int bound = 0) const {
    return !period.empty() && period.valid(bound) &&
           (preperiod.empty() || preperiod.valid(bound));
  }
};

}  // namespace cfs
