"""Error types shared by every module.

Each error carries a stable ``code`` string, used by the CLI envelope.
"""


class ChevalleyError(Exception):
    code = "ERROR"


def _make(name, code, *bases):
    return type(name, bases or (ChevalleyError,), {"code": code})


DomainMismatch = _make("DomainMismatch", "DOMAIN_MISMATCH")
DivisionByZero = _make("DivisionByZero", "DIVISION_BY_ZERO", ChevalleyError, ZeroDivisionError)
NonInvertible = _make("NonInvertible", "NON_INVERTIBLE")
ZeroInput = _make("ZeroInput", "ZERO_INPUT")
NotPrime = _make("NotPrime", "NOT_PRIME")
ParseError = _make("ParseError", "PARSE_ERROR")

NonSquare = _make("NonSquare", "NON_SQUARE")
NotNilpotent = _make("NotNilpotent", "NOT_NILPOTENT")
CharacteristicTooSmall = _make("CharacteristicTooSmall", "CHARACTERISTIC_TOO_SMALL")
Singular = _make("Singular", "SINGULAR")

DeterminantNotOne = _make("DeterminantNotOne", "DETERMINANT_NOT_ONE")
NonMember = _make("NonMember", "NON_MEMBER")

InvalidSpec = _make("InvalidSpec", "INVALID_SPEC")
TooLarge = _make("TooLarge", "TOO_LARGE")

NonSplitCharPoly = _make("NonSplitCharPoly", "NON_SPLIT_CHAR_POLY")

SizeMismatch = _make("SizeMismatch", "SIZE_MISMATCH")
BadIndex = _make("BadIndex", "INDEX_ERROR", ChevalleyError, IndexError)
NotSimilitude = _make("NotSimilitude", "NOT_SIMILITUDE")

InvalidRank = _make("InvalidRank", "INVALID_RANK")
ClosureBoundExceeded = _make("ClosureBoundExceeded", "CLOSURE_BOUND_EXCEEDED")
NotSimpleSystem = _make("NotSimpleSystem", "NOT_SIMPLE_SYSTEM")
WeightExtractionFailure = _make("WeightExtractionFailure", "WEIGHT_EXTRACTION_FAILURE")

AlgebraMismatch = _make("AlgebraMismatch", "ALGEBRA_MISMATCH")
InvalidParameters = _make("InvalidParameters", "INVALID_PARAMETERS")
UnsupportedBase = _make("UnsupportedBase", "UNSUPPORTED_BASE")
NotPure = _make("NotPure", "NOT_PURE")
NotOddPrime = _make("NotOddPrime", "NOT_ODD_PRIME")
NotUnit = _make("NotUnit", "NOT_UNIT")

NotUpperHalfPlane = _make("NotUpperHalfPlane", "NOT_UPPER_HALF_PLANE")

DimensionMismatch = _make("DimensionMismatch", "DIMENSION_MISMATCH")
ZeroVector = _make("ZeroVector", "ZERO_VECTOR")
NotOrthogonal = _make("NotOrthogonal", "NOT_ORTHOGONAL")

UsageError = _make("UsageError", "USAGE_ERROR")
