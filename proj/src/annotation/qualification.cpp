#include "fusebench/annotation/qualification.hpp"

namespace fusebench::annotation {

std::string stage_label(const QualificationState& state) {
  switch (state.stage) {
    case Stage::OpenRound: return "open-" + std::to_string(state.round);
    case Stage::ClosedRound: return "closed-" + std::to_string(state.round);
    case Stage::Qualified: return "qualified";
    case Stage::Rejected: return "rejected";
  }
  return "rejected";
}

QualificationState apply_round_result(const QualificationState& state, bool passed,
                                      int closed_rounds) {
  if (closed_rounds < 1) {
    throw AnnotationError(AnnotationErrc::InvalidArgument, "at least one closed round is required");
  }
  if (state.terminal()) {
    throw AnnotationError(AnnotationErrc::TerminalState,
                          "worker is already " + stage_label(state));
  }
  if (state.awaiting_tutorial) {
    throw AnnotationError(AnnotationErrc::TutorialRequired,
                          "open rounds passed; the tutorial must be completed first");
  }
  QualificationState next = state;
  if (!passed) {
    next.stage = Stage::Rejected;
    next.round = 0;
    return next;
  }
  if (state.stage == Stage::OpenRound) {
    if (state.round < kOpenRounds) {
      ++next.round;
    } else if (state.tutorial_completed) {
      next.stage = Stage::ClosedRound;
      next.round = 1;
    } else {
      next.awaiting_tutorial = true;
    }
  } else if (state.round < closed_rounds) {
    ++next.round;
  } else {
    next.stage = Stage::Qualified;
    next.round = 0;
  }
  return next;
}

QualificationState apply_tutorial(const QualificationState& state) {
  if (state.terminal()) {
    throw AnnotationError(AnnotationErrc::TerminalState,
                          "worker is already " + stage_label(state));
  }
  QualificationState next = state;
  next.tutorial_completed = true;
  if (next.awaiting_tutorial) {
    next.awaiting_tutorial = false;
    next.stage = Stage::ClosedRound;
    next.round = 1;
  }
  return next;
}

}  // namespace fusebench::annotation
