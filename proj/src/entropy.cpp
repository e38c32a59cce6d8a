#include "ordstruct/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ordstruct {

MatchLengths match_lengths_naive(std::u32string_view seq) {
  if (seq.empty()) throw std::invalid_argument("match lengths need a nonempty sequence");
  const std::size_t n = seq.size();
  MatchLengths ml;
  ml.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::u32string_view past = seq.substr(0, i);
    const std::size_t available = n - i;
    std::size_t length = 1;
    std::size_t from = 0;
    // An occurrence of a longer pattern is an occurrence of every shorter
    // one, so the search can resume where the previous length was found.
    while (length <= available) {
      auto at = past.find(seq.substr(i, length), from);
      if (at == std::u32string_view::npos) break;
      from = at;
      ++length;
    }
    ml.values[i] = static_cast<std::uint32_t>(length);
  }
  return ml;
}

namespace {

// Suffix automaton over dense symbol ids. The root keeps a dense transition
// table; all other states keep a singly linked edge list in a shared pool.
class SuffixAutomaton {
 public:
  struct Extension {
    int split = -1;  // state that was split, or -1
    int clone = -1;
  };

  explicit SuffixAutomaton(std::size_t alphabet, std::size_t expected_length)
      : root_edges_(alphabet, -1) {
    states_.reserve(2 * expected_length + 1);
    edges_.reserve(3 * expected_length);
    states_.push_back({0, -1, -1});
  }

  int len(int s) const { return states_[s].len; }
  int link(int s) const { return states_[s].link; }

  int next(int s, std::uint32_t sym) const {
    if (s == 0) return root_edges_[sym];
    for (int e = states_[s].head; e != -1; e = edges_[e].next) {
      if (edges_[e].sym == sym) return edges_[e].to;
    }
    return -1;
  }

  Extension extend(std::uint32_t sym) {
    Extension ext;
    const int cur = add_state(len(last_) + 1, -1);
    int p = last_;
    while (p != -1 && next(p, sym) == -1) {
      set(p, sym, cur);
      p = link(p);
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      const int q = next(p, sym);
      if (len(p) + 1 == len(q)) {
        states_[cur].link = q;
      } else {
        const int clone = add_state(len(p) + 1, link(q));
        for (int e = states_[q].head; e != -1; e = edges_[e].next) {
          push_edge(clone, edges_[e].sym, edges_[e].to);
        }
        while (p != -1 && next(p, sym) == q) {
          set(p, sym, clone);
          p = link(p);
        }
        states_[q].link = clone;
        states_[cur].link = clone;
        ext = {q, clone};
      }
    }
    last_ = cur;
    return ext;
  }

 private:
  struct State {
    int len;
    int link;
    int head;
  };
  struct Edge {
    std::uint32_t sym;
    int to;
    int next;
  };

  int add_state(int length, int link) {
    states_.push_back({length, link, -1});
    return static_cast<int>(states_.size()) - 1;
  }

  void push_edge(int s, std::uint32_t sym, int to) {
    edges_.push_back({sym, to, states_[s].head});
    states_[s].head = static_cast<int>(edges_.size()) - 1;
  }

  void set(int s, std::uint32_t sym, int to) {
    if (s == 0) {
      root_edges_[sym] = to;
      return;
    }
    for (int e = states_[s].head; e != -1; e = edges_[e].next) {
      if (edges_[e].sym == sym) {
        edges_[e].to = to;
        return;
      }
    }
    push_edge(s, sym, to);
  }

  std::vector<State> states_;
  std::vector<Edge> edges_;
  std::vector<int> root_edges_;
  int last_ = 0;
};

}  // namespace

MatchLengths match_lengths(std::u32string_view seq) {
  if (seq.empty()) throw std::invalid_argument("match lengths need a nonempty sequence");
  const std::size_t n = seq.size();

  std::vector<char32_t> symbols(seq.begin(), seq.end());
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  std::vector<std::uint32_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = static_cast<std::uint32_t>(
        std::lower_bound(symbols.begin(), symbols.end(), seq[i]) - symbols.begin());
  }

  SuffixAutomaton sam(symbols.size(), n);
  MatchLengths ml;
  ml.values.resize(n);

  // (state, matched) locate seq[i, i + matched) inside the automaton of
  // seq[0, i).
  int state = 0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (i + matched < n) {
      const int to = sam.next(state, ids[i + matched]);
      if (to == -1) break;
      state = to;
      ++matched;
    }
    ml.values[i] = static_cast<std::uint32_t>(matched + 1);

    if (matched > 0) {
      --matched;
      if (static_cast<int>(matched) <= sam.len(sam.link(state))) state = sam.link(state);
    }
    const auto ext = sam.extend(ids[i]);
    if (ext.split == state && static_cast<int>(matched) <= sam.len(ext.clone)) state = ext.clone;
  }
  return ml;
}

EntropyEstimate entropy_rate(const MatchLengths& ml) {
  if (ml.values.empty()) throw std::invalid_argument("entropy rate needs N >= 1");
  EntropyEstimate est;
  est.n = ml.values.size();
  for (std::size_t i = 1; i <= est.n; ++i) {
    est.sum_term += ml.values[i - 1] / std::log2(static_cast<double>(i + 1));
  }
  est.h_bpc = static_cast<double>(est.n) / est.sum_term;
  return est;
}

std::string match_lengths_csv(const MatchLengths& ml) {
  std::string out = "index,l\n";
  for (std::size_t i = 0; i < ml.values.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += std::to_string(ml.values[i]);
    out += '\n';
  }
  return out;
}

}  // namespace ordstruct
