#pragma once

#include "fusebench/annotation/types.hpp"

namespace fusebench::annotation {

inline constexpr int kOpenRounds = 3;

// Pass: OpenRound(k) -> OpenRound(k+1); OpenRound(3) -> ClosedRound(1) if
// the tutorial is done, else sets awaiting_tutorial; ClosedRound(k) ->
// ClosedRound(k+1) or, after the last closed round, Qualified.
// Fail: Rejected. Throws TerminalState from Qualified/Rejected and
// TutorialRequired while awaiting the tutorial.
QualificationState apply_round_result(const QualificationState& state, bool passed,
                                      int closed_rounds);

// Marks the tutorial done; releases a worker awaiting it into
// ClosedRound(1). Throws TerminalState.
QualificationState apply_tutorial(const QualificationState& state);

}  // namespace fusebench::annotation
