#pragma once

// Staged check that the digit predicate W_r is definable from <, + and a
// generalized Cantor set: each stage compiles a formula that mentions only
// <, + and C[r,K] (through macros) and compares it with a direct automaton.

#include "cantor/automata/automaton.hpp"
#include "cantor/cset/cantor_set.hpp"
#include "cantor/logic/compiler.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cantor::logic {

enum class Stage { RPowFromC, MuGraph, ZEqualsUOnC, WFromC };

std::string stage_name(Stage s);
std::optional<Stage> parse_stage(const std::string& name);
const std::vector<Stage>& all_stages();

/// Macro definitions (one "let" per line) for the Cantor set P, built from
/// C[r,K] alone. Defines Cs, Gap, Len, Rec, RPow, PPow, R, Mu, Z, UC, VC, E1,
/// LGrid, Trunc, DigitTr, LeftDeep, T, L21, WC.
std::string cantor_macros(const cset::CantorParams& P);

/// The formula side of a stage as program text, and its free variables.
std::string stage_program(Stage s, const cset::CantorParams& P);

/// Graph of mu on r^-N x C from the digit description (maximum over the
/// K-avoiding expansions), tracks (s, c, y).
automata::Automaton mu_direct(const cset::CantorParams& P);

struct StageReport {
    Stage stage;
    bool passed = false;
    std::string detail;  ///< counterexample or error text
    double seconds = 0;
};

/// Smallest t with r a power of t; stages compile over it (a base-4 letter on
/// five tracks has 1025 values, a base-2 one 33).
int stage_base(const cset::CantorParams& P);

/// Runs one stage. Resource and weakness errors are reported, not thrown. The
/// compiler's working base may be any root of r; the direct side is regrouped
/// to match.
StageReport run_stage(Stage s, const cset::CantorParams& P, Compiler& compiler);
/// Same with a fresh compiler over stage_base(P).
StageReport run_stage(Stage s, const cset::CantorParams& P);

}  // namespace cantor::logic
