#pragma once

// Weak deterministic Buchi automata over k-track base-r encodings of real
// vectors. A word is: one letter of sign digits (each 0 or r-1), integer digit
// letters, the separator, fractional digit letters forever. Letters are
// tuples packed as sum d_i r^i (track 0 least significant); the separator is
// the extra letter r^k.

#include "cantor/exact/expansion.hpp"
#include "cantor/exact/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cantor::automata {

using State = std::uint32_t;
using Letter = std::uint32_t;

class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A relation that no weak deterministic automaton recognizes.
class NonWeakError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Upper bound on states created by any single construction (default 2e6).
void set_state_cap(std::size_t cap);
std::size_t state_cap();

/// Cooperative wall-clock limit for long constructions; 0 disables.
void set_deadline_seconds(double seconds);
void check_deadline();

Letter pack_letter(int base, const std::vector<int>& digits);
std::vector<int> unpack_letter(int base, int arity, Letter a);
Letter letter_count(int base, int arity);  ///< r^k + 1, the separator included
std::string letter_str(int base, int arity, Letter a);

class Automaton {
public:
    /// The empty language: a single rejecting sink.
    Automaton(int base, int arity);
    Automaton(int base, int arity, std::vector<State> delta, std::vector<std::uint8_t> accepting, State initial);

    int base() const { return base_; }
    int arity() const { return arity_; }
    Letter letters() const { return letters_; }
    Letter star() const { return letters_ - 1; }
    State size() const { return static_cast<State>(accepting_.size()); }
    State initial() const { return initial_; }
    State next(State q, Letter a) const { return delta_[static_cast<std::size_t>(q) * letters_ + a]; }
    bool accepting(State q) const { return accepting_[q] != 0; }
    const std::vector<State>& table() const { return delta_; }
    const std::vector<std::uint8_t>& acceptance() const { return accepting_; }

private:
    int base_;
    int arity_;
    Letter letters_;
    std::vector<State> delta_;
    std::vector<std::uint8_t> accepting_;
    State initial_;
};

/// Nondeterministic automaton given lazily by an edge generator. Must be
/// weak: every strongly connected component entirely accepting or entirely
/// rejecting. State numbers are opaque to the determinizer.
struct WeakNba {
    int base;
    int arity;
    std::vector<State> initial;
    std::function<bool(State)> accepting;
    /// Appends (letter, successor) pairs of state q.
    std::function<void(State, std::vector<std::pair<Letter, State>>&)> edges;
};

/// Breakpoint determinization followed by weak relabeling of the components.
/// Throws NonWeakError if a component holds both an accepting and a rejecting
/// cycle; `context` names the relation in the message.
Automaton determinize(const WeakNba& nba, const std::string& context);

/// Words with exactly one separator after a sign letter.
Automaton valid_words(int base, int arity);
Automaton universal(int base, int arity);
inline Automaton empty_automaton(int base, int arity) { return Automaton(base, arity); }

enum class BoolOp { And, Or, Xor, Minus };

Automaton product(const Automaton& A, const Automaton& B, BoolOp op);
Automaton complement(const Automaton& A);

/// Reinterpret over `new_arity` tracks: old track i reads new track where[i].
Automaton cylindrify(const Automaton& A, int new_arity, const std::vector<int>& where);

/// Existential projection of one track, closed under extra sign padding.
Automaton project(const Automaton& A, int track);

Automaton minimize(const Automaton& A);
Automaton trim_unreachable(const Automaton& A);

bool is_weak(const Automaton& A);

struct Lasso {
    std::vector<Letter> stem;
    std::vector<Letter> loop;
};

std::optional<Lasso> find_witness(const Automaton& A);
inline bool is_empty(const Automaton& A) { return !find_witness(A).has_value(); }
bool equivalent(const Automaton& A, const Automaton& B);

bool accepts_encoding(const Automaton& A, const Lasso& w);
/// Encodes each coordinate canonically with aligned integer parts.
Lasso encode(int base, const std::vector<Rational>& v, int extra_padding = 0);
/// Same, from explicitly chosen expansions (one per track).
Lasso encode_words(int base, const std::vector<exact::PeriodicReal>& words, int extra_padding = 0);
std::vector<Rational> decode(int base, int arity, const Lasso& w);
bool accepts_real(const Automaton& A, const std::vector<Rational>& v);

/// "0*1(0)" style for one track; multi-track letters as "d0,d1" separated by spaces.
std::string lasso_str(int base, int arity, const Lasso& w);
Lasso parse_lasso(int base, int arity, const std::string& text);

std::string to_text(const Automaton& A);
Automaton from_text(const std::string& text);
std::string to_dot(const Automaton& A);

/// Reads base t words for an automaton over base t^a.
Automaton expand_base(const Automaton& A, int t, int a);

}  // namespace cantor::automata
