"""Exception hierarchy shared by every module."""


class GeneraError(Exception):
    """Base class; ``code`` is the stable machine-readable name."""

    code = "GeneraError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


def _make(name: str, doc: str) -> type:
    return type(name, (GeneraError,), {"code": name, "__doc__": doc})


UnsupportedRankOne = _make("UnsupportedRankOne", "Twisting of an even split GSO/GSpin Levi with base rank one.")
NotSimilitude = _make("NotSimilitude", "Operation only defined for similitude or general spin families.")
InvalidParabolic = _make("InvalidParabolic", "Levi index outside the family's maximal parabolics.")
InvalidExponent = _make("InvalidExponent", "An exponent failed a lattice or range requirement.")
InvalidAtom = _make("InvalidAtom", "Inconsistent cuspidal atom attributes.")
InvalidBase = _make("InvalidBase", "Inconsistent base representation attributes.")
NotDualPair = _make("NotDualPair", "Second segment is not the dual of the first.")
UnlinkedPair = _make("UnlinkedPair", "Dual pair is not linked; nothing to resolve.")
ParseError = _make("ParseError", "Malformed textual or JSON input.")
RankMismatch = _make("RankMismatch", "Ranks of the inducing data do not add up.")
UnknownFamilyRow = _make("UnknownFamilyRow", "No pairing rule for this family.")
InvalidSteinbergRange = _make("InvalidSteinbergRange", "Steinberg segment outside the reducibility range.")
InvalidDatum = _make("InvalidDatum", "Datum failed validation.")
MissingTableEntry = _make("MissingTableEntry", "No reducibility entry for an (atom, base) pair.")
InvalidTableEntry = _make("InvalidTableEntry", "Reducibility entry inconsistent with atom or family.")
OrderViolation = _make("OrderViolation", "Standard segments are not in Langlands order.")
BoundaryCase = _make("BoundaryCase", "A standard segment is centred exactly at beta.")
ShiftedSummand = _make("ShiftedSummand", "Pole type requested for a summand with nonzero shift.")
InvalidParameter = _make("InvalidParameter", "Parameter fails dimension, determinant or parity checks.")
UnpairedShiftedSummand = _make("UnpairedShiftedSummand", "A shifted summand has no dual partner.")
InvalidProfile = _make("InvalidProfile", "Malformed H_N datum or pole profile.")
BaseLiftMismatch = _make("BaseLiftMismatch", "Segment or atom set does not match the declared base lift.")
ParityViolation = _make("ParityViolation", "Tempered H_N datum fails a multiplicity parity condition.")
GenericSequenceViolation = _make("GenericSequenceViolation", "Standard part is not a generic sequence.")
UnsupportedFamily = _make("UnsupportedFamily", "Lifting is only defined for the six classical families.")
NonNormalizable = _make("NonNormalizable", "Gamma bag rewriting failed to terminate.")
