#include "dendro/error.hpp"

namespace dendro {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kWrongVariant: return "wrong-variant";
    case ErrorKind::kLeafNotFound: return "leaf-not-found";
    case ErrorKind::kNotInnerEdge: return "not-an-inner-edge";
    case ErrorKind::kMismatch: return "mismatch";
    case ErrorKind::kInvalidMap: return "invalid-map";
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kWindowTooSmall: return "window-too-small";
    case ErrorKind::kEvaluationAboveTruncation: return "evaluation-above-truncation";
    case ErrorKind::kNonEquivariant: return "non-equivariant";
    case ErrorKind::kColourNotFound: return "colour-not-found";
    case ErrorKind::kIncompatibleAttach: return "incompatible-attach";
    case ErrorKind::kNonMonotoneIndexing: return "non-monotone-indexing";
    case ErrorKind::kIncompatibleFamily: return "incompatible-family";
    case ErrorKind::kWrongSubcategory: return "wrong-subcategory";
    case ErrorKind::kNotDegreewiseFinite: return "not-degreewise-finite";
  }
  return "unknown";
}

}  // namespace dendro
